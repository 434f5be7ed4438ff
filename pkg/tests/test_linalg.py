import json
import random

import pytest

from gabidulin_fx import KMatrix, RatFunc, rank_over_K
from gabidulin_fx.code import random_ratfunc
from gabidulin_fx.linalg import kernel_basis, rref


def rand_matrix(F, rng, r, c, deg=2):
    return KMatrix([[random_ratfunc(F, rng, deg) for _ in range(c)] for _ in range(r)], F)


def low_rank(F, rng, r, c, k):
    A = rand_matrix(F, rng, r, k)
    B = rand_matrix(F, rng, k, c)
    return KMatrix([[sum((A[i, t] * B[t, j] for t in range(k)), RatFunc(F, 0))
                     for j in range(c)] for i in range(r)], F)


def eval_rank(rows, F):
    R, piv = rref([[v for v in row] for row in rows], len(rows[0]))
    return len(piv)


def test_trivial_ranks(F16):
    Z = KMatrix([[RatFunc(F16, 0)] * 3 for _ in range(3)], F16)
    assert rank_over_K(Z) == 0
    I = KMatrix([[RatFunc(F16, int(i == j)) for j in range(4)] for i in range(4)], F16)
    assert rank_over_K(I) == 4


@pytest.mark.parametrize("field", ["F16", "F5"])
def test_rank_matches_rref_and_evaluation(field, request):
    F = request.getfixturevalue(field)
    rng = random.Random(1)
    for _ in range(60):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        k = rng.randint(0, min(r, c))
        M = low_rank(F, rng, r, c, k) if k else rand_matrix(F, rng, r, c)
        rank = M.rank()
        assert rank == M.rank_by_rref()
        # evaluating at a point never raises the rank, and some point attains it
        pts = [F.random_element(rng) for _ in range(5)]
        for a in pts:
            Ma = M.evaluate(a)
            if Ma is not None:
                er = eval_rank(Ma, F)
                assert er <= rank
        if k:
            assert rank <= k


def test_rank_evaluation_oracle_attained(F5):
    rng = random.Random(2)
    hits = 0
    for _ in range(50):
        M = rand_matrix(F5, rng, 4, 4)
        rank = M.rank()
        vals = [M.evaluate(a) for a in F5.elements()]
        best = max((eval_rank(v, F5) for v in vals if v is not None), default=0)
        assert best <= rank
        hits += best == rank
    assert hits > 0


def test_kernel_basis(F5):
    rng = random.Random(3)
    for _ in range(30):
        M = low_rank(F5, rng, 4, 6, rng.randint(1, 4))
        basis = kernel_basis(M.entries, 6, RatFunc(F5, 0), RatFunc(F5, 1))
        assert len(basis) == 6 - M.rank()
        for v in basis:
            for row in M.entries:
                assert sum((a * b for a, b in zip(row, v)), RatFunc(F5, 0)).is_zero()
        R, piv = rref(M.entries, 6)
        free = [j for j in range(6) if j not in piv]
        # one vector per free column, with the identity pattern on free columns
        for f, v in zip(free, basis):
            assert [v[g] == (1 if g == f else 0) for g in free] == [True] * len(free)


def test_json_round_trip(F16):
    rng = random.Random(4)
    M = rand_matrix(F16, rng, 3, 4)
    obj = json.loads(M.dumps())
    assert obj["rows"] == 3 and obj["cols"] == 4
    assert KMatrix.from_json(F16, obj) == M
    with pytest.raises(ValueError):
        KMatrix.from_json(F16, {"rows": 2, "cols": 4, "entries": obj["entries"]})
    assert len(M.to_text().splitlines()) == 3


def test_ragged_rejected(F5):
    with pytest.raises(ValueError):
        KMatrix([[RatFunc(F5, 1)], []], F5)

import random

import pytest

from gabidulin_fx import (
    DecodingFailure,
    ValidationError,
    build_code,
    decode,
    encode,
    expand_matrix,
    random_error,
    random_message,
    rank_distance,
    rank_weight,
    unique_radius,
)
from gabidulin_fx.code import random_element, random_ratfunc


def test_parameters(kummer_code, kummer):
    assert (kummer_code.n, kummer_code.k, kummer_code.d, kummer_code.t) == (5, 3, 3, 1)
    assert unique_radius(build_code(kummer, 1)) == 2
    assert unique_radius(build_code(kummer, 5)) == 0
    assert kummer_code.summary() == "n=5 k=3 d=3 t=1"


def test_generator_matrices(kummer_code, artin_code, examples):
    K = [[str(a) for a in row] for row in kummer_code.G]
    assert K == examples["kummer_generator"]
    assert K[1] == ["1", "β^3*y", "β^6*y^2", "β^9*y^3", "β^12*y^4"]
    A = [[str(a) for a in row] for row in artin_code.G]
    assert A == examples["as_generator"]
    assert A[2][3] == "y^3 + y^2 + 2*y + 3"


def test_full_conjugate_matrix(kummer, examples):
    code = build_code(kummer, 5)
    assert [[str(a) for a in row] for row in code.G] == examples["kummer_conjugates"]


def test_build_code_validation(kummer):
    with pytest.raises(ValidationError):
        build_code(kummer, 0)
    with pytest.raises(ValidationError):
        build_code(kummer, 6)
    with pytest.raises(ValidationError):
        build_code(kummer, 2, [kummer.one, kummer.x, kummer.y])
    short = build_code(kummer, 2, [kummer.one, kummer.y, kummer.parse("y^2 + x")])
    assert short.n == 3 and short.d == 2


def test_rank_weight_examples(kummer):
    z = kummer.zero
    assert rank_weight([z] * 5) == 0
    assert rank_weight(kummer.basis, verify=True) == 5
    assert rank_weight([kummer.one, kummer.x, kummer.y, z, z], verify=True) == 2


def test_encode_examples(kummer_code, artin_code, examples):
    for code, pre in [(kummer_code, "kummer"), (artin_code, "as")]:
        m = [code.ext.parse(s) for s in examples[f"{pre}_message"]]
        c = encode(code, m, verify=True)
        assert [str(a) for a in c] == examples[f"{pre}_codeword"]
        M = expand_matrix(c)
        assert [[str(e) for e in row] for row in M.entries] == examples[f"{pre}_matrix"]
        assert M.rank() >= 3
    assert encode(kummer_code, [kummer_code.ext.zero] * 3) == [kummer_code.ext.zero] * 5


def test_matrix_top_left_entries(kummer_code, artin_code, examples):
    for code, pre, expected in [
        (kummer_code, "kummer", "(β^11*x^3 + β^13*x^2 + β^3*x + β^9)/(x^3 + β^12*x^2 + β^8*x + β^7)"),
        (artin_code, "as", "(4*x + 1)/(x^2 + x)"),
    ]:
        m = [code.ext.parse(s) for s in examples[f"{pre}_message"]]
        assert str(expand_matrix(encode(code, m))[0, 0]) == expected


def test_distance_axioms(ext):
    rng = random.Random(1)
    for _ in range(15):
        a, b, c = ([random_element(ext, rng) for _ in range(3)] for _ in range(3))
        assert rank_distance(a, a) == 0
        assert rank_distance(a, b) == rank_distance(b, a)
        assert rank_distance(a, c) <= rank_distance(a, b) + rank_distance(b, c)


def test_random_error_rank(ext):
    assert random_error(ext, 5, 0, seed=1) == [ext.zero] * 5
    for s in range(100):
        assert rank_weight(random_error(ext, 5, 1, seed=s)) == 1
    assert rank_weight(random_error(ext, 5, 2, seed=0)) == 2
    with pytest.raises(ValueError):
        random_error(ext, 5, 6)


def test_decode_clean_and_corrupted(kummer_code, artin_code, examples):
    for code, pre in [(kummer_code, "kummer"), (artin_code, "as")]:
        m = [code.ext.parse(s) for s in examples[f"{pre}_message"]]
        c = encode(code, m)
        res = decode(code, c)
        assert res.message == m and res.error_rank == 0
        for seed in range(5):
            e = random_error(code.ext, 5, 1, seed=seed)
            res = decode(code, [a + b for a, b in zip(c, e)])
            assert res.message == m and res.error == e and res.error_rank == 1
            assert res.W.is_monic() and res.W.degree <= 1
            assert res.W * res.info_poly == res.N


def test_decode_beyond_radius_is_self_consistent(kummer_code):
    rng = random.Random(7)
    code = kummer_code
    for trial in range(6):
        m = random_message(code, rng)
        c = encode(code, m)
        e = random_error(code.ext, 5, 2, seed=rng)
        y = [a + b for a, b in zip(c, e)]
        try:
            res = decode(code, y)
        except DecodingFailure as exc:
            assert exc.reason in {"kernel-trivial", "all-W-zero", "nonzero-remainder",
                                  "degree-exceeds-k", "weight-exceeds-t"}
            continue
        c2 = encode(code, res.message)
        assert rank_weight([a - b for a, b in zip(y, c2)]) <= code.t


def test_decode_garbage(kummer_code):
    rng = random.Random(8)
    failures = 0
    for _ in range(5):
        y = [random_element(kummer_code.ext, rng) for _ in range(5)]
        try:
            res = decode(kummer_code, y)
            c = encode(kummer_code, res.message)
            assert rank_weight([a - b for a, b in zip(y, c)]) <= 1
        except DecodingFailure:
            failures += 1
    assert failures >= 4


def test_polynomial_messages_give_polynomial_codewords(ext):
    code = build_code(ext, 3)
    rng = random.Random(9)
    for _ in range(10):
        m = random_message(code, rng, polynomial=True)
        c = encode(code, m)
        assert all(a.is_integral() for a in c)
        assert expand_matrix(c).is_polynomial()


def test_k_equals_n_decodes_only_clean_words(kummer):
    code = build_code(kummer, 5)
    rng = random.Random(10)
    m = random_message(code, rng)
    assert decode(code, encode(code, m)).message == m


def test_length_checks(kummer_code):
    with pytest.raises(ValueError):
        encode(kummer_code, [kummer_code.ext.one])
    with pytest.raises(ValueError):
        decode(kummer_code, [kummer_code.ext.one])
    assert random_ratfunc(kummer_code.ext.ctx, random.Random(0), 2, polynomial=True).is_polynomial()

"""Rank weight, generalized Gabidulin codes and their decoder.

The decoder solves the linearized reconstruction system
``W(y_i) = N(g_i)`` (``deg W <= t``, ``deg N < k + t``) by Gaussian
elimination over L and recovers the information polynomial by left division
``N = W·f``.  This is the cubic-cost route; no structured solver is used.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import DecodingFailure, FieldMismatchError, ValidationError
from .extension import LElement
from .linalg import KMatrix, kernel_basis
from .ratfunc import RatFunc, p_trim
from .skew import ThetaPoly, min_ideal_generator

__all__ = [
    "GabCode",
    "DecodeResult",
    "expand_matrix",
    "rank_weight",
    "rank_distance",
    "build_code",
    "encode",
    "decode",
    "unique_radius",
    "random_ratfunc",
    "random_element",
    "random_message",
    "random_error",
]


def expand_matrix(c):
    """Coordinate matrix of ``c``: row i is ``c_i`` over ``(1, y, ..., y^{n-1})``."""
    c = list(c)
    if not c:
        raise ValueError("empty vector")
    ext = c[0].ext
    for a in c:
        if a.ext is not ext:
            raise FieldMismatchError("vector entries from different extensions")
    return KMatrix([a.coords for a in c], ext.ctx)


def rank_weight(c, verify=False):
    """Rank over K of the coordinate matrix of ``c``.

    With ``verify=True`` the result is also checked against the θ-degree of
    the minimal generator of the vanishing ideal of ``c``.
    """
    w = expand_matrix(c).rank()
    if verify:
        alt = min_ideal_generator(c).degree
        alt = 0 if alt == float("-inf") else alt
        assert alt == w, f"rank weight {w} but minimal θ-polynomial degree {alt}"
    return w


def rank_distance(a, b):
    return rank_weight([x - y for x, y in zip(a, b)])


@dataclass(frozen=True)
class GabCode:
    """Generalized Gabidulin code Gab_{θ,k}(g) over a cyclic extension."""

    ext: object
    g: tuple
    k: int
    G: tuple = field(repr=False)

    @property
    def n(self):
        return len(self.g)

    @property
    def d(self):
        return self.n - self.k + 1

    @property
    def t(self):
        return unique_radius(self)

    def generator_rows(self):
        return [list(row) for row in self.G]

    def evaluation_poly(self, message):
        """``sum_i m_i Z^{θ^i}``, whose evaluation at g is the codeword."""
        return ThetaPoly(self.ext, list(message))

    def summary(self):
        return f"n={self.n} k={self.k} d={self.d} t={self.t}"


@dataclass
class DecodeResult:
    message: list
    info_poly: ThetaPoly
    error: list
    error_rank: int
    W: ThetaPoly = None
    N: ThetaPoly = None


def unique_radius(code):
    return (code.n - code.k) // 2


def build_code(ext, k, g=None):
    """Code of dimension ``k`` with evaluation points ``g`` (default: the basis)."""
    g = tuple(ext.basis if g is None else g)
    for a in g:
        if not isinstance(a, LElement) or a.ext is not ext:
            raise FieldMismatchError("evaluation points must lie in the extension")
    if not g or len(g) > ext.n:
        raise ValidationError(f"code length must be between 1 and {ext.n}")
    if not 1 <= k <= len(g):
        raise ValidationError(f"dimension k = {k} out of range 1..{len(g)}")
    if rank_weight(g) != len(g):
        raise ValidationError("evaluation points are not K-linearly independent")
    G = tuple(tuple(gj.theta(i) for gj in g) for i in range(k))
    return GabCode(ext, g, k, G)


def encode(code, message, verify=False):
    """Codeword ``m · G``; with ``verify=True`` also cross-checks ``ev_g(P)``."""
    m = list(message)
    if len(m) != code.k:
        raise ValueError(f"message length {len(m)} != k = {code.k}")
    ext = code.ext
    m = [a if isinstance(a, LElement) else ext.from_k(a) for a in m]
    c = []
    for j in range(code.n):
        acc = ext.zero
        for i in range(code.k):
            if m[i]:
                acc = acc + m[i] * code.G[i][j]
        c.append(acc)
    if verify:
        P = code.evaluation_poly(m)
        alt = [P.evaluate(gj) for gj in code.g]
        assert alt == c, "m·G and ev_g(P) disagree"
    return c


def decode(code, received):
    """Unique decoding up to rank ``t = (n - k) // 2``.

    Raises :class:`DecodingFailure` when no consistent codeword within
    distance ``t`` is found.
    """
    ext = code.ext
    y = list(received)
    if len(y) != code.n:
        raise ValueError(f"received length {len(y)} != n = {code.n}")
    n, k, t = code.n, code.k, code.t
    nN = k + t
    ncols = nN + t + 1
    # unknowns: N_0 .. N_{k+t-1}, then W_0 .. W_t
    rows = []
    for i in range(n):
        row = [-code.g[i].theta(j) for j in range(nN)]
        row += [y[i].theta(j) for j in range(t + 1)]
        rows.append(row)
    basis = kernel_basis(rows, ncols, ext.zero, ext.one)
    if not basis:
        raise DecodingFailure("kernel-trivial")
    chosen = next((v for v in basis if any(v[nN:])), None)
    if chosen is None:
        for a in range(len(basis)):
            for b in range(a + 1, len(basis)):
                v = [p + q for p, q in zip(basis[a], basis[b])]
                if any(v[nN:]):
                    chosen = v
                    break
            if chosen is not None:
                break
    if chosen is None:
        raise DecodingFailure("all-W-zero")
    W = ThetaPoly(ext, chosen[nN:])
    Nn = ThetaPoly(ext, chosen[:nN])
    lead_inv = W.leading().inverse()
    W = ThetaPoly(ext, [lead_inv * c for c in W.coeffs])
    Nn = ThetaPoly(ext, [lead_inv * c for c in Nn.coeffs])
    f, R = Nn.left_divmod(W)
    if R:
        raise DecodingFailure("nonzero-remainder")
    if f.degree >= k:
        raise DecodingFailure("degree-exceeds-k", f"deg f = {f.degree}")
    message = [f.coeff(i) for i in range(k)]
    c = encode(code, message)
    e = [a - b for a, b in zip(y, c)]
    w = rank_weight(e)
    if w > t:
        raise DecodingFailure("weight-exceeds-t", f"residual rank {w} > {t}")
    return DecodeResult(message, f, e, w, W, Nn)


# -- randomness ---------------------------------------------------------------------

def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_ratfunc(ctx, rng, deg_bound=2, polynomial=False):
    """Random element of K with numerator and denominator degree <= ``deg_bound``."""
    num = p_trim([rng.randrange(ctx.q) for _ in range(deg_bound + 1)])
    if polynomial or not num:
        return RatFunc._raw(ctx, tuple(num), (1,))
    dd = rng.randint(0, deg_bound)
    den = [rng.randrange(ctx.q) for _ in range(dd)] + [1]
    return RatFunc.from_raw(ctx, num, den)


def random_element(ext, rng, deg_bound=2, polynomial=False):
    rng = _rng(rng)
    return ext.element([random_ratfunc(ext.ctx, rng, deg_bound, polynomial)
                        for _ in range(ext.n)])


def random_message(code, rng, deg_bound=2, polynomial=False):
    rng = _rng(rng)
    return [random_element(code.ext, rng, deg_bound, polynomial) for _ in range(code.k)]


def random_error(ext, n, t, deg_bound=2, seed=None):
    """Vector of length ``n`` whose rank weight is exactly ``t``.

    ``e_i = sum_j a_ij ε_j`` for random ``a_ij`` in K and K-independent random
    ``ε_1..ε_t`` in L; draws are repeated on the (rare) rank deficiency.
    """
    if t < 0 or t > min(n, ext.n):
        raise ValueError(f"error rank {t} out of range 0..{min(n, ext.n)}")
    rng = _rng(seed)
    if t == 0:
        return [ext.zero] * n
    while True:
        eps = [random_element(ext, rng, deg_bound) for _ in range(t)]
        if expand_matrix(eps).rank() != t:
            continue
        e = []
        for _ in range(n):
            acc = ext.zero
            for ej in eps:
                a = random_ratfunc(ext.ctx, rng, deg_bound)
                if a:
                    acc = acc + ej * ext.from_k(a)
            e.append(acc)
        if rank_weight(e) == t:
            return e

"""The skew polynomial ring L[Z; θ] (θ-polynomials without derivation).

A θ-polynomial ``P = sum_i p_i Z^i`` acts on L by ``P(g) = sum_i p_i θ^i(g)``
and multiplies by the rule ``Z^i · q = θ^i(q) Z^i``.  Coefficients sit on the
left, so ``ev(P·Q, g) = ev(P, ev(Q, g))``.
"""

from __future__ import annotations

from .errors import FieldMismatchError
from .extension import LElement
from .linalg import KMatrix, kernel_basis
from .ratfunc import NEG_INF, RatFunc, p_exact_div, p_gcd, p_mul

__all__ = ["ThetaPoly", "annihilator", "min_ideal_generator"]


class ThetaPoly:
    """Element of L[Z; θ]; coefficient ``coeffs[i]`` multiplies ``Z^{θ^i}``."""

    __slots__ = ("ext", "coeffs")

    def __init__(self, ext, coeffs=()):
        self.ext = ext
        cs = []
        for c in coeffs:
            if not isinstance(c, LElement):
                c = ext.from_k(c)
            elif c.ext is not ext:
                raise FieldMismatchError("coefficient from another extension")
            cs.append(c)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, ext, i=1, coeff=None):
        c = ext.one if coeff is None else coeff
        return cls(ext, [ext.zero] * i + [c])

    @classmethod
    def one(cls, ext):
        return cls(ext, [ext.one])

    @property
    def degree(self):
        """θ-degree; ``NEG_INF`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1] if self.coeffs else self.ext.zero

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.ext.one

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ext.zero

    def _coerce(self, other):
        if isinstance(other, ThetaPoly):
            if other.ext is not self.ext:
                raise FieldMismatchError("θ-polynomials over different extensions")
            return other
        if isinstance(other, LElement):
            if other.ext is not self.ext:
                raise FieldMismatchError("coefficient from another extension")
            return ThetaPoly(self.ext, [other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return ThetaPoly(self.ext, [self.coeff(i) + o.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return ThetaPoly(self.ext, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return ThetaPoly(self.ext)
        out = [self.ext.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, p in enumerate(self.coeffs):
            if not p:
                continue
            for j, q in enumerate(o.coeffs):
                if q:
                    out[i + j] = out[i + j] + p * q.theta(i)
        return ThetaPoly(self.ext, out)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def left_divmod(self, divisor):
        """``(Q, R)`` with ``self = divisor·Q + R`` and ``deg R < deg divisor``."""
        B = self._coerce(divisor)
        if B is None or B.is_zero():
            raise ZeroDivisionError("division by the zero θ-polynomial")
        s = B.degree
        lead_inv = B.leading().inverse()
        R = list(self.coeffs)
        Q = [self.ext.zero] * max(len(R) - s, 0)
        for d in range(len(R) - 1, s - 1, -1):
            r = R[d]
            if not r:
                continue
            j = d - s
            # b_s θ^s(q) = r  =>  q = θ^{-s}(r / b_s)
            q = (lead_inv * r).theta(-s)
            Q[j] = q
            for i, b in enumerate(B.coeffs):
                if b:
                    R[i + j] = R[i + j] - b * q.theta(i)
        return ThetaPoly(self.ext, Q), ThetaPoly(self.ext, R[:s])

    def right_divmod(self, divisor):
        """``(Q, R)`` with ``self = Q·divisor + R`` and ``deg R < deg divisor``."""
        B = self._coerce(divisor)
        if B is None or B.is_zero():
            raise ZeroDivisionError("division by the zero θ-polynomial")
        s = B.degree
        lead = B.leading()
        R = list(self.coeffs)
        Q = [self.ext.zero] * max(len(R) - s, 0)
        for d in range(len(R) - 1, s - 1, -1):
            r = R[d]
            if not r:
                continue
            j = d - s
            # q θ^j(b_s) = r
            q = r / lead.theta(j)
            Q[j] = q
            for i, b in enumerate(B.coeffs):
                if b:
                    R[i + j] = R[i + j] - q * b.theta(j)
        return ThetaPoly(self.ext, Q), ThetaPoly(self.ext, R[:s])

    def monic(self):
        """Left-normalized copy: ``lc^{-1} · P``."""
        if not self.coeffs:
            raise ZeroDivisionError("the zero θ-polynomial has no monic associate")
        lead = self.coeffs[-1]
        if all(c._base_ratio(lead) is not None for c in self.coeffs[:-1]):
            return ThetaPoly(self.ext, [c / lead for c in self.coeffs])
        inv = lead.inverse()
        return ThetaPoly(self.ext, [inv * c for c in self.coeffs])

    def __call__(self, g):
        return self.evaluate(g)

    def evaluate(self, g):
        """``sum_i p_i θ^i(g)``."""
        if not isinstance(g, LElement):
            g = self.ext.from_k(g)
        elif g.ext is not self.ext:
            raise FieldMismatchError("evaluation point from another extension")
        acc = self.ext.zero
        if not g:
            return acc
        for i, p in enumerate(self.coeffs):
            if p:
                acc = acc + p * g.theta(i)
        return acc

    def operator_matrix(self):
        """Matrix over K of g ↦ P(g); row j holds the coordinates of P(y^j)."""
        return KMatrix([self.evaluate(b).coords for b in self.ext.basis], self.ext.ctx)

    def root_space_dim(self):
        """Dimension over K of ``{g in L : P(g) = 0}``."""
        if self.is_zero():
            raise ValueError("every element of L is a root of the zero polynomial")
        dim = self.ext.n - self.operator_matrix().rank()
        assert dim <= self.degree, "root space larger than the θ-degree"
        return dim

    def __eq__(self, other):
        if not isinstance(other, ThetaPoly):
            return NotImplemented
        return self.ext is other.ext and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = [f"({c})*Z^{i}" for i, c in reversed(list(enumerate(self.coeffs))) if c]
        return " + ".join(terms)

    def __repr__(self):
        return f"ThetaPoly({self})"


def _strip_content(ext, elems):
    """The elements scaled by one common factor in K to coprime polynomial coordinates."""
    F = ext.ctx
    lcm = [1]
    for a in elems:
        if len(a.den) > 1:
            lcm = p_mul(F, lcm, p_exact_div(F, lcm and list(a.den), p_gcd(F, lcm, a.den)))
    nums = []
    for a in elems:
        f = p_exact_div(F, lcm, list(a.den))
        nums.append([p_mul(F, c, f) if c else [] for c in a.nums])
    g = []
    for row in nums:
        for c in row:
            if c:
                g = p_gcd(F, g, c)
                if len(g) == 1:
                    break
    if len(g) > 1:
        nums = [[p_exact_div(F, c, g) if c else [] for c in row] for row in nums]
    return [ext._make(row, (1,)) if any(row) else ext.zero for row in nums]


def _hyperplane_annihilator(ext, V):
    """Annihilator of a span of dimension n - 1, from the trace form.

    The span is ``{g : Tr(h g) = 0}`` for some nonzero h, and
    ``Tr(h g) / θ^{-1}(h)`` is monic of θ-degree n - 1 with exactly that kernel.
    """
    F, n = ext.ctx, ext.n
    G = ext.trace_form
    rows = []
    for v in V:
        c = v.coords
        row = []
        for j in range(n):
            acc = RatFunc.constant(F, 0)
            for k in range(n):
                if c[k] and G[k][j]:
                    acc = acc + c[k] * G[k][j]
            row.append(acc)
        rows.append(row)
    (h,) = kernel_basis(rows, n, RatFunc.constant(F, 0), RatFunc.constant(F, 1))
    g = _strip_content(ext, [ext.element(h)])[0].theta(-1)
    inv = g.inverse()
    return ThetaPoly(ext, [g.theta(i + 1) * inv for i in range(n - 1)] + [ext.one])


def annihilator(ext, V):
    """Monic θ-polynomial of least degree vanishing on ``span_K(V)``.

    Its degree is ``r = dim_K span(V)``.  For r = n the answer is ``Z^n - 1``
    (θ^n = id) and for r = n - 1 it comes from the trace form.  Otherwise
    each ``v`` not already a root contributes the factor ``w·Z - θ(w)`` with
    ``w = P(v)``.  Left factors from L and scalars from K leave the root space
    unchanged, so ``P`` is kept free of K-content and made monic at the end.
    """
    V = [v for v in V if v]
    P = ThetaPoly.one(ext)
    if not V:
        return P
    n = ext.n
    r = KMatrix([v.coords for v in V], ext.ctx).rank()
    if r == n:
        return ThetaPoly(ext, [-ext.one] + [ext.zero] * (n - 1) + [ext.one])
    if r == n - 1 and r > 1:
        return _hyperplane_annihilator(ext, V)
    return _product_annihilator(ext, V, r)


def _product_annihilator(ext, V, r):
    """Annihilator built one linear factor at a time; ``r`` is the span's dimension."""
    P = ThetaPoly.one(ext)
    for v in V:
        if P.degree == r:
            break
        w = P.evaluate(_strip_content(ext, [v])[0])
        if not w:
            continue
        w = _strip_content(ext, [w])[0]
        P = ThetaPoly(ext, [-w.theta(1), w]) * P
        P = ThetaPoly(ext, _strip_content(ext, P.coeffs))
    return P.monic()


def min_ideal_generator(c):
    """Right generator of ``{P : P(c_i) = 0 for all i}``."""
    c = list(c)
    if not c:
        raise ValueError("empty vector")
    return annihilator(c[0].ext, c)

"""Cyclic extensions L = K[y]/(f) of K = F_q(x).

Two families are supported:

* Kummer, ``f = Y^n - u`` with ``n | q - 1`` and θ(y) = αy for a primitive
  n-th root of unity α in F_q;
* Artin-Schreier, ``f = Y^p - Y - u`` in characteristic p with θ(y) = y + 1.

In both cases θ maps the basis ``(1, y, ..., y^{n-1})`` to F_q-combinations
of itself, so θ never touches denominators.  An :class:`LElement` is kept as
``(N_0 + N_1 y + ... + N_{n-1} y^{n-1}) / D`` with ``N_i, D`` in F_q[x],
``D`` monic and ``gcd(N_0, ..., N_{n-1}, D) = 1``; this form is unique, and
the coordinates ``N_i / D`` are exposed as reduced :class:`RatFunc` values.
"""

from __future__ import annotations

from functools import cached_property
from math import comb, gcd

from . import _parse
from .errors import FieldMismatchError, ParseError, ValidationError
from .field import FqElement, is_prime
from .ratfunc import (
    Poly,
    RatFunc,
    _as_raw,
    p_add,
    p_mul_rows,
    p_divmod,
    p_exact_div,
    p_gcd,
    p_mul,
    p_neg,
    p_pow,
    p_scale,
    p_sub,
    p_trim,
    rf_format,
)

__all__ = ["CyclicExtension", "LElement", "build_kummer", "build_artin_schreier"]


# -- validity tests --------------------------------------------------------------

def _prime_divisors(n):
    return [d for d in range(2, n + 1) if n % d == 0 and is_prime(d)]


def _poly_root(F, f, d):
    """Monic ``h`` with ``h^d == f`` for monic ``f``, or ``None``.

    ``d`` must be invertible in F_q.  Coefficients of ``h`` are solved from
    the top down; the final power check makes the answer exact.
    """
    D = len(f) - 1
    if D % d:
        return None
    e = D // d
    d_inv = F.inv_table[d % F.p]
    h = [0] * e + [1]
    for k in range(1, e + 1):
        cur = p_pow(F, list(h), d)
        cur = cur + [0] * (D + 1 - len(cur))
        diff = F.sub_table[f[D - k]][cur[D - k]]
        h[e - k] = F.mul_table[diff][d_inv]
    return h if p_pow(F, list(h), d) == list(f) else None


def _is_dth_power_const(F, c, d):
    # F_q^x is cyclic of order q-1; c is a d-th power iff c^((q-1)/gcd(d,q-1)) = 1
    e = (F.q - 1) // gcd(d, F.q - 1)
    return (FqElement(F, c) ** e).value == 1


def kummer_power_witness(u, n):
    """Smallest prime ``d | n`` with ``u = w^d`` for some ``w`` in K, else ``None``."""
    F = u.ctx
    if not u.n:
        raise ValidationError("u must be nonzero")
    lc = u.n[-1]
    num = p_scale(F, u.n, F.inv_table[lc])
    for d in _prime_divisors(n):
        if (_is_dth_power_const(F, lc, d)
                and _poly_root(F, num, d) is not None
                and _poly_root(F, list(u.d), d) is not None):
            return d
    return None


def artin_schreier_check(u):
    """Return ``(ok, reason)`` for the sufficient test ``u != w^p - w``.

    Accepts when ``u`` has a pole of order prime to p (a finite pole, seen as
    a denominator factor whose multiplicity is prime to p, or the pole at
    infinity).  A polynomial ``u`` is decided completely by stripping
    ``c^p x^{pj} - c x^j`` terms off its top degree.
    """
    F = u.ctx
    p = F.p
    if not u.n:
        return False, "u = 0 = w^p - w for w = 0"
    den = list(u.d)
    if len(den) > 1:
        # den is a p-th power iff its formal derivative vanishes
        deriv = p_trim([F.mul_table[c][i % p] for i, c in enumerate(den)][1:])
        if deriv:
            return True, "finite pole of order prime to p"
        inf_order = (len(u.n) - 1) - (len(den) - 1)
        if inf_order > 0 and inf_order % p:
            return True, "pole at infinity of order prime to p"
        return False, "validity test inconclusive: every pole of u has order divisible by p"
    num = list(u.n)
    w_terms = []
    while len(num) - 1 > 0 and (len(num) - 1) % p == 0:
        top = len(num) - 1
        c = FqElement(F, num[-1]) ** (F.q // p)  # p-th root in a perfect field
        j = top // p
        mono_p = [0] * top + [num[-1]]
        mono = [0] * j + [c.value]
        num = p_add(F, p_sub(F, num, mono_p), mono)
        w_terms.append((c, j))
    if len(num) - 1 > 0:
        return True, "pole at infinity of order prime to p"
    # constant remainder: in the image iff X^p - X = c has a root in F_q
    c = num[0] if num else 0
    for v in range(F.q):
        z = FqElement(F, v)
        if (z**p - z).value == c:
            return False, f"u = w^{p} - w for a polynomial w (degree {w_terms[0][1] if w_terms else 0})"
    return True, "u is not of the form w^p - w (constant obstruction)"


# -- the extension -----------------------------------------------------------------

class CyclicExtension:
    """L = K[y] with a cyclic Galois group generated by θ.

    Use :func:`build_kummer` or :func:`build_artin_schreier` to construct one.
    """

    def __init__(self, ctx, kind, n, u, alpha, rel_num, rel_den, theta):
        self.ctx = ctx
        self.kind = kind
        self.n = n
        self.u = u
        self.alpha = alpha
        # y^n = (sum_i rel_num[i] y^i) / rel_den
        self._rel = [(i, tuple(r)) for i, r in enumerate(rel_num) if r]
        self._rel_den = tuple(rel_den)
        self._theta = [self._identity()]
        for _ in range(1, n):
            self._theta.append(self._matmul(self._theta[-1], theta))
        if self._matmul(self._theta[-1], theta) != self._identity():
            raise ValidationError("θ does not have order n on the basis")
        self._diagonal = all(
            T[j][l] == 0 for T in self._theta for j in range(n) for l in range(n) if j != l
        )

    def _identity(self):
        return [[1 if i == j else 0 for j in range(self.n)] for i in range(self.n)]

    def _matmul(self, A, B):
        F = self.ctx
        add, mul = F.add_table, F.mul_table
        n = self.n
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for k in range(n):
                a = A[i][k]
                if a:
                    row = mul[a]
                    for j in range(n):
                        out[i][j] = add[out[i][j]][row[B[k][j]]]
        return out

    # -- structure ------------------------------------------------------------------
    @property
    def degree(self):
        return self.n

    def theta_power_matrix(self, i):
        """Matrix over F_q of θ^i; row j holds the coordinates of θ^i(y^j)."""
        T = self._theta[i % self.n]
        return [[FqElement(self.ctx, v) for v in row] for row in T]

    @cached_property
    def theta_matrix(self):
        """θ on the basis as a :class:`~gabidulin_fx.linalg.KMatrix` (row j = θ(y^j))."""
        from .linalg import KMatrix
        return KMatrix([[RatFunc.constant(self.ctx, v) for v in row]
                        for row in self.theta_power_matrix(1)])

    @cached_property
    def trace_form(self):
        """Gram matrix ``Tr(y^i y^j)`` of the trace form, as rows of RatFunc."""
        b = self.basis
        return tuple(tuple((b[i] * b[j]).trace() for j in range(self.n)) for i in range(self.n))

    def minimal_polynomial_str(self):
        u = str(self.u)
        if " " in u and not u.startswith("("):
            u = f"({u})"
        if self.kind == "kummer":
            return f"Y^{self.n} - {u}"
        return f"Y^{self.n} - Y - {u}"

    # -- elements -------------------------------------------------------------------
    def _make(self, nums, den):
        return LElement._raw(self, *_canon(self.ctx, nums, den))

    def element(self, coords):
        """Element with the given coordinates over ``(1, y, ..., y^{n-1})``."""
        coords = list(coords)
        if len(coords) > self.n:
            raise ValidationError(f"at most {self.n} coordinates expected")
        coords += [0] * (self.n - len(coords))
        out = self.zero
        for j, c in enumerate(coords):
            if not isinstance(c, RatFunc):
                c = RatFunc(self.ctx, _as_raw(self.ctx, c))
            if c:
                nums = [()] * self.n
                nums[j] = c.n
                out = out + LElement._raw(self, tuple(nums), c.d)
        return out

    def from_k(self, f):
        if not isinstance(f, RatFunc):
            f = RatFunc(self.ctx, _as_raw(self.ctx, f))
        nums = [()] * self.n
        nums[0] = f.n
        return LElement._raw(self, tuple(nums), f.d)

    @cached_property
    def zero(self):
        return LElement._raw(self, ((),) * self.n, (1,))

    @cached_property
    def one(self):
        return self.from_k(RatFunc.constant(self.ctx, 1))

    @cached_property
    def y(self):
        return self.monomial(1)

    @cached_property
    def x(self):
        return self.from_k(RatFunc.x(self.ctx))

    def monomial(self, j, coeff=1):
        """``coeff * y^j`` for ``0 <= j < n`` and ``coeff`` in F_q."""
        v = self.ctx(coeff).value
        nums = [()] * self.n
        if v:
            nums[j] = (v,)
        return LElement._raw(self, tuple(nums), (1,))

    @cached_property
    def basis(self):
        return tuple(self.monomial(j) for j in range(self.n))

    def parse(self, text):
        F = self.ctx
        names = {"x": self.x, "y": self.y}
        if F.symbol is not None:
            names[F.symbol] = self.from_k(RatFunc.constant(F, F.gen))
        val = _parse.evaluate(text, names, lambda k: self.from_k(RatFunc.constant(F, k)),
                              max_power={"y": self.n - 1})
        if not isinstance(val, LElement):  # pragma: no cover
            raise ParseError(f"{text!r} is not an element of L")
        return val

    def _check(self, other):
        if other.ext is not self:
            raise FieldMismatchError("elements belong to different extensions")

    def __repr__(self):
        return (f"CyclicExtension({self.kind}, n={self.n}, "
                f"{self.minimal_polynomial_str()} over {self.ctx!r})")


def _canon(F, nums, den):
    den = list(den)
    if not any(nums):
        return ((),) * len(nums), (1,)
    if len(den) > 1:
        g = den
        for a in nums:
            if a:
                g = p_gcd(F, g, a)
                if len(g) == 1:
                    break
        if len(g) > 1:
            nums = [p_exact_div(F, a, g) if a else a for a in nums]
            den = p_exact_div(F, den, g)
    lc = den[-1]
    if lc != 1:
        inv = F.inv_table[lc]
        nums = [p_scale(F, a, inv) for a in nums]
        den = p_scale(F, den, inv)
    return tuple(tuple(a) for a in nums), tuple(den)


def build_kummer(ctx, u, n, alpha=None):
    """Kummer extension ``K[y]/(Y^n - u)`` with θ(y) = αy.

    ``alpha`` defaults to ``γ^((q-1)/n)`` for the least-index primitive
    element γ of F_q.
    """
    if isinstance(u, str):
        u = RatFunc.parse(ctx, u)
    elif not isinstance(u, RatFunc):
        u = RatFunc(ctx, _as_raw(ctx, u))
    if n < 2:
        raise ValidationError("extension degree n must be at least 2")
    if (ctx.q - 1) % n:
        raise ValidationError(f"n = {n} does not divide q - 1 = {ctx.q - 1}")
    if not u:
        raise ValidationError("u must be nonzero")
    if alpha is None:
        alpha = ctx.primitive_element ** ((ctx.q - 1) // n)
    else:
        alpha = ctx(alpha)
        if not alpha or alpha.order() != n:
            raise ValidationError(f"α = {alpha} is not a primitive {n}-th root of unity")
    d = kummer_power_witness(u, n)
    if d is not None:
        suffix = {2: "nd", 3: "rd"}.get(d, "th")
        raise ValidationError(f"u = {u} is a {d}{suffix} power in K (witness d = {d})")
    theta = [[0] * n for _ in range(n)]
    for j in range(n):
        theta[j][j] = (alpha**j).value
    rel_num = [[] for _ in range(n)]
    rel_num[0] = list(u.n)
    return CyclicExtension(ctx, "kummer", n, u, alpha, rel_num, u.d, theta)


def build_artin_schreier(ctx, u):
    """Artin-Schreier extension ``K[y]/(Y^p - Y - u)`` with θ(y) = y + 1."""
    if isinstance(u, str):
        u = RatFunc.parse(ctx, u)
    elif not isinstance(u, RatFunc):
        u = RatFunc(ctx, _as_raw(ctx, u))
    if not u:
        raise ValidationError("u must be nonzero")
    ok, reason = artin_schreier_check(u)
    if not ok:
        raise ValidationError(f"u = {u} rejected: {reason}")
    p = ctx.p
    theta = [[comb(j, i) % p for i in range(p)] for j in range(p)]
    rel_num = [[] for _ in range(p)]
    rel_num[0] = list(u.n)
    rel_num[1] = list(u.d)
    return CyclicExtension(ctx, "artin-schreier", p, u, None, rel_num, u.d, theta)


# -- elements -----------------------------------------------------------------------

class LElement:
    """Element of a :class:`CyclicExtension`; immutable value type."""

    __slots__ = ("ext", "nums", "den")

    @classmethod
    def _raw(cls, ext, nums, den):
        obj = object.__new__(cls)
        obj.ext = ext
        obj.nums = nums
        obj.den = den
        return obj

    @property
    def coords(self):
        F = self.ext.ctx
        return tuple(RatFunc.from_raw(F, a, self.den) for a in self.nums)

    def is_zero(self):
        return not any(self.nums)

    def in_base(self):
        """True when the element lies in K (only the y^0 coordinate is nonzero)."""
        return not any(self.nums[1:])

    def size(self):
        """Rough cost of arithmetic with this element: (nonzero coordinates, total length)."""
        return (sum(1 for a in self.nums if a), sum(map(len, self.nums)) + len(self.den))

    def is_integral(self):
        """All coordinates are polynomials in x."""
        return self.den == (1,)

    def _coerce(self, other):
        if isinstance(other, LElement):
            if other.ext is not self.ext:
                raise FieldMismatchError("elements belong to different extensions")
            return other
        if isinstance(other, (RatFunc, Poly, FqElement, int)):
            return self.ext.from_k(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.ext.ctx
        if not any(self.nums):
            return o
        if not any(o.nums):
            return self
        ad, bd = self.den, o.den
        if ad == bd:
            nums = [p_add(F, a, b) for a, b in zip(self.nums, o.nums)]
            if len(ad) == 1:
                return LElement._raw(self.ext, tuple(tuple(a) for a in nums), ad) \
                    if any(nums) else self.ext.zero
            return self.ext._make(nums, ad)
        g = p_gcd(F, ad, bd)
        ma = p_exact_div(F, bd, g) if len(g) > 1 else list(bd)
        mb = p_exact_div(F, ad, g) if len(g) > 1 else list(ad)
        nums = [p_add(F, p_mul(F, a, ma), p_mul(F, b, mb)) for a, b in zip(self.nums, o.nums)]
        return self.ext._make(nums, p_mul(F, ad, ma))

    __radd__ = __add__

    def __neg__(self):
        F = self.ext.ctx
        return LElement._raw(self.ext, tuple(tuple(p_neg(F, a)) for a in self.nums), self.den)

    def __pos__(self):
        return self

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

    def _scalar_mul(self, sn, sd):
        F = self.ext.ctx
        if not sn:
            return self.ext.zero
        nums = [p_mul(F, a, sn) for a in self.nums]
        return self.ext._make(nums, p_mul(F, self.den, sd))

    def _mul_parts(self, o):
        """Unreduced ``(nums, den)`` of ``self * o``."""
        ext = self.ext
        F = ext.ctx
        if o.in_base() or self.in_base():
            a, s = (self, o) if o.in_base() else (o, self)
            sn = s.nums[0]
            return [p_mul(F, x, sn) if x else [] for x in a.nums], p_mul(F, a.den, s.den)
        n = ext.n
        prod = p_mul_rows(F, self.nums, o.nums)
        den = p_mul(F, self.den, o.den)
        rel, rel_den = ext._rel, ext._rel_den
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if not c:
                continue
            prod[k] = []
            if len(rel_den) > 1:
                for idx in range(k):
                    if prod[idx]:
                        prod[idx] = p_mul(F, prod[idx], rel_den)
                den = p_mul(F, den, rel_den)
            for i, r in rel:
                prod[k - n + i] = p_add(F, prod[k - n + i], p_mul(F, c, r))
        return prod[:n], den

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not any(self.nums) or not any(o.nums):
            return self.ext.zero
        return self.ext._make(*self._mul_parts(o))

    def sub_mul(self, f, b):
        """``self - f * b`` with a single canonicalization."""
        ext = self.ext
        F = ext.ctx
        if not f or not b:
            return self
        pn, pd = f._mul_parts(b)
        if not any(self.nums):
            return ext._make([p_neg(F, a) for a in pn], pd)
        sd = self.den
        if list(sd) == pd:
            nums = [p_sub(F, a, c) for a, c in zip(self.nums, pn)]
            return ext._make(nums, pd)
        g = p_gcd(F, sd, pd)
        ms = p_exact_div(F, pd, g) if len(g) > 1 else pd
        mp = p_exact_div(F, sd, g) if len(g) > 1 else list(sd)
        nums = [p_sub(F, p_mul(F, a, ms), p_mul(F, c, mp)) for a, c in zip(self.nums, pn)]
        return ext._make(nums, p_mul(F, sd, ms))

    __rmul__ = __mul__

    def theta(self, i=1):
        """θ^i applied to this element (``i`` is taken mod n)."""
        ext = self.ext
        i %= ext.n
        if i == 0:
            return self
        F = ext.ctx
        T = ext._theta[i]
        if ext._diagonal:
            nums = tuple(tuple(p_scale(F, a, T[j][j])) for j, a in enumerate(self.nums))
            return LElement._raw(ext, nums, self.den)
        n = ext.n
        out = [[] for _ in range(n)]
        for j, a in enumerate(self.nums):
            if a:
                row = T[j]
                for l in range(n):
                    if row[l]:
                        out[l] = p_add(F, out[l], p_scale(F, a, row[l]))
        return LElement._raw(ext, tuple(tuple(a) for a in out), self.den)

    def trace(self):
        """Tr_{L/K}(a) = sum_i θ^i(a), returned as a :class:`RatFunc`."""
        acc = self
        for i in range(1, self.ext.n):
            acc = acc + self.theta(i)
        if not acc.in_base():
            raise ArithmeticError("trace left K; θ is not an automorphism of order n")
        return RatFunc._raw(self.ext.ctx, acc.nums[0], acc.den)

    def norm(self):
        """N_{L/K}(a) = prod_i θ^i(a), returned as a :class:`RatFunc`."""
        prod = self
        for i in range(1, self.ext.n):
            prod = prod * self.theta(i)
        if not prod.in_base():
            raise ArithmeticError("norm left K; θ is not an automorphism of order n")
        return RatFunc._raw(self.ext.ctx, prod.nums[0], prod.den)

    def inverse(self):
        """Inverse via the norm: a^{-1} = θ(a)···θ^{n-1}(a) / N(a)."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in L")
        ext = self.ext
        if self.in_base():
            F = ext.ctx
            inv = RatFunc._raw(F, self.nums[0], self.den).inverse()
            return ext.from_k(inv)
        conj = self.theta(1)
        for i in range(2, ext.n):
            conj = conj * self.theta(i)
        nrm = self * conj
        if not nrm.in_base():
            raise ArithmeticError("norm left K; θ is not an automorphism of order n")
        return conj._scalar_mul(nrm.den, nrm.nums[0])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.in_base():
            if not any(o.nums):
                raise ZeroDivisionError("division by zero in L")
            return self._scalar_mul(o.den, o.nums[0])
        r = self._base_ratio(o)
        if r is not None:
            return r
        return self * o.inverse()

    def _base_ratio(self, o):
        """``self / o`` when it lies in K (checked by cross-multiplication), else None."""
        F = self.ext.ctx
        if not any(self.nums):
            return self.ext.zero
        j = next(i for i, a in enumerate(o.nums) if a)
        sj, oj = self.nums[j], o.nums[j]
        for a, b in zip(self.nums, o.nums):
            if bool(a) != bool(b):
                return None
            if a and p_mul(F, a, oj) != p_mul(F, b, sj):
                return None
        num = p_mul(F, sj, o.den)
        return self.ext._make([num] + [[]] * (self.ext.n - 1), p_mul(F, oj, self.den))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        base = self
        if e < 0:
            base, e = self.inverse(), -e
        result = self.ext.one
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, LElement):
            return self.ext is other.ext and self.nums == other.nums and self.den == other.den
        if isinstance(other, (RatFunc, Poly, FqElement, int)):
            return self == self.ext.from_k(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nums, self.den))

    def __bool__(self):
        return any(self.nums)

    def __str__(self):
        F = self.ext.ctx
        terms = []
        for j in range(self.ext.n - 1, -1, -1):
            a = self.nums[j]
            if not a:
                continue
            cs = rf_format(F, *_reduce_pair(F, a, self.den))
            if j == 0:
                terms.append(cs)
                continue
            mono = "y" if j == 1 else f"y^{j}"
            if cs == "1":
                terms.append(mono)
            else:
                if _top_level_sum(cs):
                    cs = f"({cs})"
                terms.append(f"{cs}*{mono}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"LElement({self})"


def _reduce_pair(F, a, d):
    r = RatFunc.from_raw(F, a, d)
    return r.n, r.d


def _top_level_sum(s):
    depth = 0
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "+" and depth == 0:
            return True
    return False

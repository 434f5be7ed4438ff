"""Dense polynomials over F_q and the rational function field K = F_q(x).

The module-level ``p_*`` helpers work on raw coefficient lists of integer
field codes (lowest degree first, no trailing zeros, ``[]`` is zero) and are
what the extension and linear-algebra layers call in their inner loops.
:class:`Poly` and :class:`RatFunc` wrap them as value types.
"""

from __future__ import annotations

import sys
from array import array
from itertools import chain

from . import _parse
from .errors import FieldMismatchError, ParseError
from .field import FqContext, FqElement

__all__ = ["Poly", "RatFunc", "NEG_INF"]

NEG_INF = float("-inf")
"""Degree of the zero polynomial; compares below every integer."""


# -- raw polynomial kernels -------------------------------------------------------

def p_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def p_add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    add = F.add_table
    r = list(a)
    for i, c in enumerate(b):
        if c:
            r[i] = add[r[i]][c]
    if len(a) == len(b):
        p_trim(r)
    return r


def p_sub(F, a, b):
    sub = F.sub_table
    neg = F.neg_table
    n = max(len(a), len(b))
    r = list(a) + [0] * (n - len(a))
    for i, c in enumerate(b):
        if c:
            r[i] = sub[r[i]][c]
    return p_trim(r)


def p_neg(F, a):
    neg = F.neg_table
    return [neg[c] for c in a]


def p_scale(F, a, c):
    if c == 0:
        return []
    if c == 1:
        return list(a)
    row = F.mul_table[c]
    return [row[v] for v in a]


# shorter operands use the schoolbook loop (prime fields, extension fields)
_KRON_MIN = (6, 30)


def _kron_setup(F):
    """Slot layout for multiplying polynomials through one big-integer product.

    Each coefficient becomes ``2m - 1`` slots holding its power-basis digits,
    so digit products of degree up to ``2m - 2`` in β stay in their slot.
    """
    s = 2 * F.m - 1
    digits = [F._to_vec(v) + [0] * (F.m - 1) for v in range(F.q)]
    fold = None
    if F.m > 1:
        beta_pow = [1]
        for _ in range(s - 1):
            beta_pow.append(F.mul_table[beta_pow[-1]][F.p])
        fold = []
        for idx in range(F.p ** s):
            acc, k = 0, 0
            while idx:
                idx, r = divmod(idx, F.p)
                if r:
                    acc = F.add_table[acc][F.mul_table[r][beta_pow[k]]]
                k += 1
            fold.append(acc)
    F._kron = (s, digits, fold)
    return F._kron


def _slot_type(bound):
    if bound < 1 << 16:
        return "H"
    if bound < 1 << 32:
        return "L" if array("L").itemsize == 4 else "I"
    return None


def _kron_pack(F, polys, stride, tc):
    s, digits, _ = F._kron
    flat = []
    for a in polys:
        flat.extend(a)
        flat.extend([0] * (stride - len(a)))
    if s == 1:
        arr = array(tc, flat)
    else:
        arr = array(tc, chain.from_iterable(digits[c] for c in flat))
    return int.from_bytes(arr.tobytes(), sys.byteorder)


def _kron_unpack(F, value, count, tc):
    s, _, fold = F._kron
    raw = array(tc)
    raw.frombytes(value.to_bytes(count * s * raw.itemsize, sys.byteorder))
    p = F.p
    res = [v & 1 for v in raw] if p == 2 else [v % p for v in raw]
    if s == 1:
        return res
    acc = res[s - 1::s]
    for k in range(s - 2, -1, -1):
        acc = [x * p + y for x, y in zip(acc, res[k::s])]
    return [fold[i] for i in acc]


def _kron_mul(F, a, b):
    if getattr(F, "_kron", None) is None:
        _kron_setup(F)
    tc = _slot_type((F.p - 1) ** 2 * F.m * min(len(a), len(b)))
    if tc is None:  # pragma: no cover - far beyond the degrees met in practice
        return None
    n = len(a) + len(b) - 1
    prod = _kron_pack(F, [a], len(a), tc) * _kron_pack(F, [b], len(b), tc)
    return _kron_unpack(F, prod, n, tc)


def p_mul_rows(F, A, B):
    """``C[k] = sum_{i+j=k} A[i]·B[j]`` for lists of polynomials (a bivariate product)."""
    la = max((len(a) for a in A), default=0)
    lb = max((len(b) for b in B), default=0)
    if not la or not lb:
        return [[] for _ in range(len(A) + len(B) - 1)]
    tc = _slot_type((F.p - 1) ** 2 * F.m * min(la, lb) * min(len(A), len(B)))
    if min(la, lb) < _KRON_MIN[F.m > 1] or tc is None:
        out = [[] for _ in range(len(A) + len(B) - 1)]
        for i, a in enumerate(A):
            if a:
                for j, b in enumerate(B):
                    if b:
                        out[i + j] = p_add(F, out[i + j], p_mul(F, a, b))
        return out
    if getattr(F, "_kron", None) is None:
        _kron_setup(F)
    stride = la + lb - 1
    prod = _kron_pack(F, A, stride, tc) * _kron_pack(F, B, stride, tc)
    count = (len(A) + len(B) - 1) * stride
    flat = _kron_unpack(F, prod, count, tc)
    return [p_trim(flat[k:k + stride]) for k in range(0, count, stride)]


def p_mul(F, a, b):
    if not a or not b:
        return []
    if len(a) == 1:
        return p_scale(F, b, a[0])
    if len(b) == 1:
        return p_scale(F, a, b[0])
    if len(a) < len(b):
        a, b = b, a
    if len(b) >= _KRON_MIN[F.m > 1]:
        r = _kron_mul(F, a, b)
        if r is not None:
            return r
    mul = F.mul_table
    r = [0] * (len(a) + len(b) - 1)
    bnz = [(j, bj) for j, bj in enumerate(b) if bj]
    if F.p == 2:
        for i, ai in enumerate(a):
            if ai:
                row = mul[ai]
                for j, bj in bnz:
                    r[i + j] ^= row[bj]
        return r
    add = F.add_table
    for i, ai in enumerate(a):
        if ai:
            row = mul[ai]
            for j, bj in bnz:
                k = i + j
                r[k] = add[r[k]][row[bj]]
    return r


def p_divmod(F, a, b):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], list(a)
    sub, mul = F.sub_table, F.mul_table
    lead_inv = F.inv_table[b[-1]]
    r = list(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c:
            c = mul[c][lead_inv]
            q[i - db] = c
            row = mul[c]
            off = i - db
            for j in range(db):
                bj = b[j]
                if bj:
                    r[off + j] = sub[r[off + j]][row[bj]]
            r[i] = 0
    return q, p_trim(r[:db])


def p_rem(F, a, b):
    """Remainder only; the hot path of every gcd."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    db = len(b) - 1
    if len(a) - 1 < db:
        return list(a)
    mul = F.mul_table
    lead_inv = F.inv_table[b[-1]]
    bnz = [(j, bj) for j, bj in enumerate(b[:-1]) if bj]
    r = list(a)
    if F.p == 2:
        for i in range(len(a) - 1, db - 1, -1):
            c = r[i]
            if c:
                row = mul[mul[c][lead_inv]] if lead_inv != 1 else mul[c]
                off = i - db
                for j, bj in bnz:
                    r[off + j] ^= row[bj]
    else:
        sub = F.sub_table
        for i in range(len(a) - 1, db - 1, -1):
            c = r[i]
            if c:
                row = mul[mul[c][lead_inv]]
                off = i - db
                for j, bj in bnz:
                    k = off + j
                    r[k] = sub[r[k]][row[bj]]
    del r[db:]
    return p_trim(r)


def p_exact_div(F, a, b):
    q, r = p_divmod(F, a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def p_monic(F, a):
    if not a or a[-1] == 1:
        return list(a)
    return p_scale(F, a, F.inv_table[a[-1]])


def p_gcd(F, a, b):
    """Monic gcd; ``p_gcd(F, [], [])`` is ``[]``."""
    a, b = list(a), list(b)
    while b:
        a, b = b, p_rem(F, a, b)
    return p_monic(F, a)


def p_eval(F, a, x):
    add, mul = F.add_table, F.mul_table
    acc = 0
    for c in reversed(a):
        acc = add[mul[acc][x]][c]
    return acc


def p_pow(F, a, e):
    result = [1]
    while e:
        if e & 1:
            result = p_mul(F, result, a)
        a = p_mul(F, a, a)
        e >>= 1
    return result


def p_format(F, a, var="x"):
    if not a:
        return "0"
    terms = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        cs = F.format(c)
        if k == 0:
            terms.append(cs)
            continue
        mono = var if k == 1 else f"{var}^{k}"
        if c == 1:
            terms.append(mono)
        else:
            if " " in cs:
                cs = f"({cs})"
            terms.append(f"{cs}*{mono}")
    return " + ".join(terms)


def _degree(a):
    return len(a) - 1 if a else NEG_INF


# -- Poly -------------------------------------------------------------------------

class Poly:
    """Polynomial in ``x`` over F_q (immutable)."""

    __slots__ = ("ctx", "c")

    def __init__(self, ctx, coeffs=()):
        self.ctx = ctx
        vals = []
        for v in coeffs:
            if isinstance(v, FqElement):
                ctx._check(v)
                vals.append(v.value)
            else:
                vals.append(int(v) % ctx.p)
        self.c = tuple(p_trim(vals))

    @classmethod
    def _raw(cls, ctx, coeffs):
        obj = object.__new__(cls)
        obj.ctx = ctx
        obj.c = tuple(coeffs)
        return obj

    @classmethod
    def x(cls, ctx):
        return cls._raw(ctx, (0, 1))

    @property
    def coeffs(self):
        return tuple(FqElement(self.ctx, v) for v in self.c)

    @property
    def degree(self):
        return _degree(self.c)

    def is_zero(self):
        return not self.c

    def leading(self):
        return FqElement(self.ctx, self.c[-1]) if self.c else self.ctx.zero

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise FieldMismatchError("polynomials over different fields")
            return other.c
        if isinstance(other, FqElement):
            self.ctx._check(other)
            return (other.value,) if other.value else ()
        if isinstance(other, int):
            v = other % self.ctx.p
            return (v,) if v else ()
        return None

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return Poly._raw(self.ctx, p_add(self.ctx, self.c, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return Poly._raw(self.ctx, p_sub(self.ctx, self.c, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return Poly._raw(self.ctx, p_sub(self.ctx, b, self.c))

    def __neg__(self):
        return Poly._raw(self.ctx, p_neg(self.ctx, self.c))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return Poly._raw(self.ctx, p_mul(self.ctx, self.c, b))

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        return Poly._raw(self.ctx, p_pow(self.ctx, list(self.c), e))

    def __divmod__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        q, r = p_divmod(self.ctx, self.c, b)
        return Poly._raw(self.ctx, q), Poly._raw(self.ctx, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        return RatFunc(self.ctx, self, other)

    def gcd(self, other):
        b = self._coerce(other)
        if not self.c and not b:
            raise ValueError("gcd(0, 0) is undefined")
        return Poly._raw(self.ctx, p_gcd(self.ctx, self.c, b))

    def monic(self):
        return Poly._raw(self.ctx, p_monic(self.ctx, self.c))

    def __call__(self, point):
        point = self.ctx(point)
        return FqElement(self.ctx, p_eval(self.ctx, self.c, point.value))

    def __eq__(self, other):
        b = self._coerce(other) if isinstance(other, (Poly, FqElement, int)) else None
        if b is None:
            return NotImplemented
        return self.c == tuple(b)

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return bool(self.c)

    def __str__(self):
        return p_format(self.ctx, self.c)

    def __repr__(self):
        return f"Poly({self})"


# -- RatFunc ----------------------------------------------------------------------

class RatFunc:
    """Reduced fraction num/den with monic den; an element of F_q(x)."""

    __slots__ = ("ctx", "n", "d")

    def __init__(self, ctx, num, den=1):
        self.ctx = ctx
        num = _as_raw(ctx, num)
        den = _as_raw(ctx, den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        self.n, self.d = _reduce(ctx, num, den)

    @classmethod
    def _raw(cls, ctx, num, den):
        """Wrap an already reduced pair."""
        obj = object.__new__(cls)
        obj.ctx = ctx
        obj.n = tuple(num)
        obj.d = tuple(den)
        return obj

    @classmethod
    def from_raw(cls, ctx, num, den):
        obj = object.__new__(cls)
        obj.ctx = ctx
        obj.n, obj.d = _reduce(ctx, num, den)
        return obj

    @classmethod
    def x(cls, ctx):
        return cls._raw(ctx, (0, 1), (1,))

    @classmethod
    def constant(cls, ctx, value):
        v = ctx(value).value
        return cls._raw(ctx, (v,) if v else (), (1,))

    @property
    def num(self):
        return Poly._raw(self.ctx, self.n)

    @property
    def den(self):
        return Poly._raw(self.ctx, self.d)

    def is_zero(self):
        return not self.n

    def is_polynomial(self):
        return self.d == (1,)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise FieldMismatchError("rational functions over different fields")
            return other
        if isinstance(other, (Poly, FqElement, int)):
            return RatFunc._raw(self.ctx, _as_raw(self.ctx, other), (1,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n, d = rf_add(self.ctx, self.n, self.d, o.n, o.d)
        return RatFunc._raw(self.ctx, n, d)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(self.ctx, p_neg(self.ctx, self.n), self.d)

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

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n, d = rf_mul(self.ctx, self.n, self.d, o.n, o.d)
        return RatFunc._raw(self.ctx, n, d)

    __rmul__ = __mul__

    def inverse(self):
        if not self.n:
            raise ZeroDivisionError("inverse of the zero rational function")
        F = self.ctx
        lc = F.inv_table[self.n[-1]]
        return RatFunc._raw(F, p_scale(F, self.d, lc), p_scale(F, self.n, lc))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        base = self
        if e < 0:
            base, e = self.inverse(), -e
        F = self.ctx
        return RatFunc._raw(F, p_pow(F, list(base.n), e), p_pow(F, list(base.d), e))

    def __call__(self, point):
        """Evaluate at ``x = point``; raises ``ZeroDivisionError`` at a pole."""
        F = self.ctx
        a = F(point).value
        dv = p_eval(F, self.d, a)
        if dv == 0:
            raise ZeroDivisionError(f"evaluation at a pole x = {F.format(a)}")
        return FqElement(F, F.mul_table[p_eval(F, self.n, a)][F.inv_table[dv]])

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.n == other.n and self.d == other.d and (
                self.ctx is other.ctx or self.ctx == other.ctx)
        if isinstance(other, (Poly, FqElement, int)):
            return self.d == (1,) and self.n == tuple(_as_raw(self.ctx, other))
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.d))

    def __bool__(self):
        return bool(self.n)

    def __str__(self):
        return rf_format(self.ctx, self.n, self.d)

    def __repr__(self):
        return f"RatFunc({self})"

    @classmethod
    def parse(cls, ctx, text):
        return parse_ratfunc(ctx, text)


def _as_raw(ctx, v):
    if isinstance(v, Poly):
        return list(v.c)
    if isinstance(v, FqElement):
        ctx._check(v)
        return [v.value] if v.value else []
    if isinstance(v, int):
        r = v % ctx.p
        return [r] if r else []
    if isinstance(v, (list, tuple)):
        return p_trim([c.value if isinstance(c, FqElement) else int(c) % ctx.p for c in v])
    raise TypeError(f"cannot interpret {v!r} as a polynomial")


def _reduce(F, num, den):
    num, den = list(num), list(den)
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return (), (1,)
    if len(den) > 1:
        g = p_gcd(F, num, den)
        if len(g) > 1:
            num = p_exact_div(F, num, g)
            den = p_exact_div(F, den, g)
    lc = den[-1]
    if lc != 1:
        inv = F.inv_table[lc]
        num = p_scale(F, num, inv)
        den = p_scale(F, den, inv)
    return tuple(num), tuple(den)


def rf_add(F, an, ad, bn, bd):
    if not an:
        return bn, bd
    if not bn:
        return an, ad
    if ad == bd:
        return _reduce(F, p_add(F, an, bn), ad)
    if len(ad) == 1:  # ad == (1,)
        return tuple(p_add(F, p_mul(F, an, bd), bn)), bd
    if len(bd) == 1:
        return tuple(p_add(F, an, p_mul(F, bn, ad))), ad
    g = p_gcd(F, ad, bd)
    if len(g) == 1:
        num = p_add(F, p_mul(F, an, bd), p_mul(F, bn, ad))
        # gcd(num, ad*bd) = 1 automatically when the inputs are reduced
        return tuple(num), tuple(p_mul(F, ad, bd))
    ad_g = p_exact_div(F, ad, g)
    bd_g = p_exact_div(F, bd, g)
    num = p_add(F, p_mul(F, an, bd_g), p_mul(F, bn, ad_g))
    return _reduce(F, num, p_mul(F, ad, bd_g))


def rf_mul(F, an, ad, bn, bd):
    if not an or not bn:
        return (), (1,)
    # cross-cancel: gcd(an, bd) and gcd(bn, ad)
    if len(bd) > 1 and len(an) > 1:
        g = p_gcd(F, an, bd)
        if len(g) > 1:
            an, bd = p_exact_div(F, an, g), p_exact_div(F, bd, g)
    if len(ad) > 1 and len(bn) > 1:
        g = p_gcd(F, bn, ad)
        if len(g) > 1:
            bn, ad = p_exact_div(F, bn, g), p_exact_div(F, ad, g)
    return tuple(p_mul(F, an, bn)), tuple(p_mul(F, ad, bd))


def rf_format(F, n, d):
    ns = p_format(F, n)
    if d == (1,) or not n:
        return ns
    return f"({ns})/({p_format(F, d)})"


def parse_ratfunc(ctx, text):
    names = {"x": RatFunc.x(ctx)}
    if ctx.symbol is not None:
        names[ctx.symbol] = RatFunc.constant(ctx, ctx.gen)
    val = _parse.evaluate(text, names, lambda k: RatFunc.constant(ctx, k))
    if not isinstance(val, RatFunc):  # pragma: no cover
        raise ParseError(f"{text!r} is not a rational function")
    return val

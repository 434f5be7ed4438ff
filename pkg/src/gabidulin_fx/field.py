"""Finite fields F_q = F_p[β]/(m(β)) in the power basis of β.

An element is stored as the integer ``sum(c_i * p**i)`` built from its
power-basis coefficients ``c_0 + c_1 β + ... + c_{m-1} β^{m-1}``.  Addition
and multiplication tables over these integers are derived once per context
by reducing modulo the defining polynomial, so the hot loops in the
polynomial layers are plain list lookups.
"""

from __future__ import annotations

import itertools
from functools import cached_property

from . import _parse
from .errors import FieldMismatchError, ParseError, ValidationError

__all__ = ["FqContext", "FqElement", "is_prime"]


def is_prime(p):
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def _poly_mod_p(a, b, p):
    """Remainder of ``a`` modulo monic ``b`` over F_p (lists, lowest first)."""
    a = list(a)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return [c % p for c in a[:db]]


def _is_irreducible(modulus, p):
    m = len(modulus) - 1
    for d in range(1, m // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not any(_poly_mod_p(modulus, divisor, p)):
                return False
    return True


class FqContext:
    """The finite field F_p[β]/(modulus).

    Parameters
    ----------
    p : int
        Prime characteristic.
    modulus : sequence of int, optional
        Monic irreducible polynomial over F_p, lowest degree first
        (``[1, 1, 0, 0, 1]`` is β⁴ + β + 1).  Omit for the prime field F_p.
    symbol : str
        Display name of the generator β.  Ignored for prime fields.
    """

    def __init__(self, p, modulus=None, symbol="β"):
        if not is_prime(p):
            raise ValidationError(f"characteristic {p} is not prime")
        if modulus is None:
            modulus = (0, 1)
            symbol = None
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) < 2 or modulus[-1] != 1:
            raise ValidationError(f"modulus {list(modulus)} must be monic of degree >= 1")
        self.p = p
        self.m = len(modulus) - 1
        self.modulus = modulus
        self.q = p**self.m
        if self.m > 1 and not _is_irreducible(modulus, p):
            raise ValidationError(f"modulus {list(modulus)} is reducible over F_{p}")
        self.symbol = symbol if self.m > 1 else None
        self._build_tables()

    def _build_tables(self):
        p, m, q = self.p, self.m, self.q
        vecs = [self._to_vec(v) for v in range(q)]
        self.add_table = [[self._from_vec([(x + y) % p for x, y in zip(vecs[a], vecs[b])])
                           for b in range(q)] for a in range(q)]
        self.neg_table = [self._from_vec([(-x) % p for x in vecs[a]]) for a in range(q)]
        self.sub_table = [[self.add_table[a][self.neg_table[b]] for b in range(q)]
                          for a in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(1, q):
            for b in range(a, q):
                prod = [0] * (2 * m - 1)
                for i, x in enumerate(vecs[a]):
                    if x:
                        for j, y in enumerate(vecs[b]):
                            prod[i + j] += x * y
                r = self._from_vec(_poly_mod_p(prod, self.modulus, p) if m > 1 else [prod[0] % p])
                mul[a][b] = mul[b][a] = r
        self.mul_table = mul
        inv = [0] * q
        for a in range(1, q):
            inv[a] = mul[a].index(1)
        self.inv_table = inv
        # discrete logs to base β, present only when β is primitive
        self._log = None
        if m > 1:
            beta = p  # the vector (0, 1, 0, ...)
            exp, cur = [], 1
            for _ in range(q - 1):
                exp.append(cur)
                cur = mul[cur][beta]
            if len(set(exp)) == q - 1:
                self._log = {v: e for e, v in enumerate(exp)}

    def _to_vec(self, v):
        out = []
        for _ in range(self.m):
            v, r = divmod(v, self.p)
            out.append(r)
        return out

    def _from_vec(self, vec):
        v = 0
        for c in reversed(vec):
            v = v * self.p + c
        return v

    # -- element construction ---------------------------------------------
    def __call__(self, value):
        if isinstance(value, FqElement):
            self._check(value)
            return value
        if isinstance(value, int):
            return FqElement(self, value % self.p)
        return self.parse(value)

    def from_coeffs(self, coeffs):
        coeffs = list(coeffs) + [0] * (self.m - len(coeffs))
        if len(coeffs) > self.m:
            raise ValidationError("too many power-basis coefficients")
        return FqElement(self, self._from_vec([c % self.p for c in coeffs]))

    @property
    def zero(self):
        return FqElement(self, 0)

    @property
    def one(self):
        return FqElement(self, 1)

    @property
    def gen(self):
        """β itself (for prime fields, a multiplicative generator)."""
        if self.m > 1:
            return FqElement(self, self.p)
        return self.primitive_element

    @cached_property
    def primitive_element(self):
        """Least-index generator of the multiplicative group."""
        for v in range(1, self.q):
            if self.order_of(v) == self.q - 1:
                return FqElement(self, v)
        raise AssertionError("no primitive element")  # pragma: no cover

    def order_of(self, v):
        if isinstance(v, FqElement):
            v = v.value
        if v == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        cur, k = v, 1
        while cur != 1:
            cur = self.mul_table[cur][v]
            k += 1
        return k

    def elements(self):
        return [FqElement(self, v) for v in range(self.q)]

    def random_element(self, rng, nonzero=False):
        lo = 1 if nonzero else 0
        return FqElement(self, rng.randrange(lo, self.q))

    def _check(self, a):
        if a.ctx is not self and a.ctx != self:
            raise FieldMismatchError("elements belong to different fields")

    # -- text -----------------------------------------------------------------
    def format(self, v):
        """Print the element with integer code ``v``."""
        if self.m == 1:
            return str(v)
        if v in (0, 1):
            return str(v)
        if self._log is not None:
            e = self._log[v]
            return self.symbol if e == 1 else f"{self.symbol}^{e}"
        terms = []
        for i, c in reversed(list(enumerate(self._to_vec(v)))):
            if not c:
                continue
            mono = "" if i == 0 else (self.symbol if i == 1 else f"{self.symbol}^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)

    def parse(self, text):
        names = {}
        if self.symbol is not None:
            names[self.symbol] = FqElement(self, self.p)
        try:
            val = _parse.evaluate(text, names, lambda k: FqElement(self, k % self.p))
        except ParseError:
            raise
        if not isinstance(val, FqElement):  # pragma: no cover - evaluate only yields field values
            raise ParseError(f"{text!r} is not a field element")
        return val

    # -- identity ---------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, FqContext):
            return NotImplemented
        return self.p == other.p and self.modulus == other.modulus

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        if self.m == 1:
            return f"FqContext(F_{self.p})"
        return f"FqContext(F_{self.q}, modulus={list(self.modulus)}, symbol={self.symbol!r})"


class FqElement:
    """An element of F_q; immutable value type."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx, value):
        self.ctx = ctx
        self.value = value

    @property
    def coeffs(self):
        """Power-basis coefficients (c_0, ..., c_{m-1})."""
        return tuple(self.ctx._to_vec(self.value))

    def _other(self, other):
        if isinstance(other, FqElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise FieldMismatchError("elements belong to different fields")
            return other.value
        if isinstance(other, int):
            return other % self.ctx.p
        return None

    def __add__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FqElement(self.ctx, self.ctx.add_table[self.value][b])

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FqElement(self.ctx, self.ctx.sub_table[self.value][b])

    def __rsub__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FqElement(self.ctx, self.ctx.sub_table[b][self.value])

    def __neg__(self):
        return FqElement(self.ctx, self.ctx.neg_table[self.value])

    def __pos__(self):
        return self

    def __mul__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FqElement(self.ctx, self.ctx.mul_table[self.value][b])

    __rmul__ = __mul__

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        return FqElement(self.ctx, self.ctx.inv_table[self.value])

    def __truediv__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        if b == 0:
            raise ZeroDivisionError("division by zero in F_q")
        return FqElement(self.ctx, self.ctx.mul_table[self.value][self.ctx.inv_table[b]])

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FqElement(self.ctx, b) / self

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        base = self
        if e < 0:
            base, e = self.inverse(), -e
        result = 1
        mul = self.ctx.mul_table
        b = base.value
        while e:
            if e & 1:
                result = mul[result][b]
            b = mul[b][b]
            e >>= 1
        return FqElement(self.ctx, result)

    def order(self):
        return self.ctx.order_of(self.value)

    def __eq__(self, other):
        if isinstance(other, FqElement):
            return self.value == other.value and (self.ctx is other.ctx or self.ctx == other.ctx)
        if isinstance(other, int):
            return self.value == other % self.ctx.p
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.ctx.format(self.value)

    def __repr__(self):
        return f"FqElement({self})"

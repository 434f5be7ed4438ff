"""Exact linear algebra: generic elimination over a field and K-matrices."""

from __future__ import annotations

import json

from .errors import FieldMismatchError
from .ratfunc import RatFunc, p_exact_div, p_gcd, p_mul, p_sub

__all__ = ["KMatrix", "rref", "kernel_basis", "rank_over_K"]


def _nonzero(v):
    return bool(v)


def rref(rows, ncols=None):
    """Reduced row echelon form over any exact field.

    Pivots are taken as the first nonzero entry in column order.  Returns
    ``(R, pivots)`` where ``R`` holds only the nonzero rows.
    """
    M = [list(r) for r in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = _inverse(M[r][c])
        M[r] = [v * inv if v else v for v in M[r]]
        pivot_row = M[r]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b if b else a for a, b in zip(M[i], pivot_row)]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def _echelon(rows, ncols):
    """Forward elimination without pivot normalization."""
    M = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        cands = [i for i in range(r, len(M)) if M[i][c]]
        if not cands:
            continue
        # the cheapest pivot; the pivot columns, hence the kernel basis, do not depend on it
        piv = min(cands, key=lambda i: _size(M[i][c]))
        M[r], M[piv] = M[piv], M[r]
        prow = M[r]
        inv = _inverse(prow[c])
        for i in range(r + 1, len(M)):
            e = M[i][c]
            if e:
                f = e * inv
                M[i] = [_sub_mul(a, f, b) if b else a for a, b in zip(M[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def _size(v):
    return v.size() if hasattr(v, "size") else 0


def _sub_mul(a, f, b):
    return a.sub_mul(f, b) if hasattr(a, "sub_mul") else a - f * b


def _inverse(v):
    return v.inverse() if hasattr(v, "inverse") else 1 / v


def kernel_basis(rows, ncols, zero, one):
    """Basis of ``{v : rows · v = 0}``, one vector per free column.

    Vector ``f`` has a 1 in free column ``f`` and 0 in the other free
    columns, so the basis equals the one read off the reduced echelon form;
    it is computed by back substitution to avoid clearing above pivots.
    """
    R, pivots = _echelon(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    inv = [_inverse(R[i][pc]) for i, pc in enumerate(pivots)]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            acc = zero
            row = R[i]
            for j in range(pc + 1, ncols):
                if row[j] and v[j]:
                    acc = acc + row[j] * v[j]
            if acc:
                v[pc] = -(acc * inv[i])
        basis.append(v)
    return basis


def _poly_rank(F, rows):
    """Rank of a matrix over F_q[x] by fraction-free (Bareiss) elimination."""
    M = [list(r) for r in rows]
    if not M:
        return 0
    nrows, ncols = len(M), len(M[0])
    prev = [1]
    rank = 0
    for c in range(ncols):
        piv = None
        best = None
        for i in range(rank, nrows):
            if M[i][c] and (best is None or len(M[i][c]) < best):
                piv, best = i, len(M[i][c])
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][c]
        prow = M[rank]
        for i in range(rank + 1, nrows):
            row = M[i]
            e = row[c]
            for j in range(c + 1, ncols):
                v = p_sub(F, p_mul(F, p, row[j]), p_mul(F, e, prow[j]))
                row[j] = p_exact_div(F, v, prev) if len(prev) > 1 and v else v
            row[c] = []
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


class KMatrix:
    """Rectangular matrix with entries in K = F_q(x) (immutable)."""

    __slots__ = ("entries", "rows", "cols", "ctx")

    def __init__(self, entries, ctx=None):
        self.entries = tuple(tuple(row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        if any(len(r) != self.cols for r in self.entries):
            raise ValueError("ragged matrix")
        if ctx is None:
            ctx = self.entries[0][0].ctx if self.rows and self.cols else None
        self.ctx = ctx

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rank(self):
        """Rank over K (row rank; rows are cleared of denominators first)."""
        if not self.rows or not self.cols:
            return 0
        F = self.ctx
        cleared = []
        for row in self.entries:
            lcm = [1]
            for e in row:
                if len(e.d) > 1:
                    g = p_gcd(F, lcm, e.d)
                    lcm = p_mul(F, lcm, p_exact_div(F, list(e.d), g))
            cleared.append([p_mul(F, e.n, p_exact_div(F, lcm, list(e.d))) if e.n else []
                            for e in row])
        return _poly_rank(F, cleared)

    def rank_by_rref(self):
        """Rank computed with plain field elimination; an independent cross-check."""
        if not self.rows or not self.cols:
            return 0
        return len(rref(self.entries, self.cols)[1])

    def evaluate(self, point):
        """Entries evaluated at ``x = point`` as F_q values; ``None`` at a pole."""
        try:
            return [[e(point) for e in row] for row in self.entries]
        except ZeroDivisionError:
            return None

    def is_polynomial(self):
        return all(e.is_polynomial() for row in self.entries for e in row)

    def __add__(self, other):
        if not isinstance(other, KMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise FieldMismatchError("matrix shapes differ")
        return KMatrix([[a + b for a, b in zip(r, s)]
                        for r, s in zip(self.entries, other.entries)], self.ctx)

    def scale(self, f):
        return KMatrix([[f * a for a in row] for row in self.entries], self.ctx)

    def __eq__(self, other):
        if not isinstance(other, KMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def to_json(self):
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[str(e) for e in row] for row in self.entries]}

    @classmethod
    def from_json(cls, ctx, obj):
        entries = [[RatFunc.parse(ctx, s) for s in row] for row in obj["entries"]]
        if len(entries) != obj["rows"] or any(len(r) != obj["cols"] for r in entries):
            raise ValueError("matrix dimensions do not match the entries")
        return cls(entries, ctx)

    def dumps(self):
        return json.dumps(self.to_json(), ensure_ascii=False, indent=2) + "\n"

    def to_text(self):
        cells = [[str(e) for e in row] for row in self.entries]
        widths = [max(len(cells[i][j]) for i in range(self.rows)) for j in range(self.cols)]
        return "\n".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip()
                         for row in cells) + "\n"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"KMatrix({self.rows}x{self.cols})"


def rank_over_K(M):
    """Rank of a :class:`KMatrix` over K."""
    return M.rank()

"""Exact linear algebra over F_q on int-coded vectors.

Two layers:

* RankEngine -- incremental rank under vector appends (columns or rows,
  the engine does not care).  Over F_2 the basis lives in machine-word
  bitsets and reduction is XOR; over general F_q it is table-driven
  elimination.  Appends never rescan earlier vectors.
* dense helpers -- RREF, solving, null spaces, and the lexicographically
  smallest nonzero null vector, used where an actual vector is needed
  rather than just a rank.

Vectors are sequences of field element codes; "first nonzero position"
always means the lowest index, and lexicographic order compares positions
left to right using the int code order (0 is smallest).
"""

from __future__ import annotations

from typing import Sequence

from .field import Field

__all__ = ["RankEngine", "rref", "rank_dense", "solve", "nullspace",
           "left_null_lexmin"]


class _Gf2Engine:
    """XOR basis over F_2; vectors packed as int bitsets (bit i = entry i)."""

    __slots__ = ("rank", "_pivots")

    def __init__(self):
        self.rank = 0
        self._pivots: dict[int, int] = {}

    @staticmethod
    def _pack(codes: Sequence[int]) -> int:
        v = 0
        for i, c in enumerate(codes):
            if c:
                v |= 1 << i
        return v

    def _reduce(self, v: int) -> int:
        pivots = self._pivots
        while v:
            p = (v & -v).bit_length() - 1
            row = pivots.get(p)
            if row is None:
                return v
            v ^= row
        return 0

    def add(self, codes: Sequence[int]) -> bool:
        v = self._reduce(self._pack(codes))
        if not v:
            return False
        self._pivots[(v & -v).bit_length() - 1] = v
        self.rank += 1
        return True

    def contains(self, codes: Sequence[int]) -> bool:
        return self._reduce(self._pack(codes)) == 0


class _GfqEngine:
    """Table-driven elimination basis; each stored vector has a distinct
    first-nonzero position normalized to 1."""

    __slots__ = ("rank", "_field", "_pivots")

    def __init__(self, field: Field):
        self.rank = 0
        self._field = field
        self._pivots: dict[int, list[int]] = {}

    def _reduce(self, v: list[int]) -> tuple[int, list[int]]:
        f = self._field
        add, neg, mul = f._add, f._neg, f._mul
        pivots = self._pivots
        i = 0
        n = len(v)
        while i < n:
            c = v[i]
            if c == 0:
                i += 1
                continue
            row = pivots.get(i)
            if row is None:
                return i, v
            mc = mul[c]
            nrow = neg
            for k in range(i, n):
                rk = row[k]
                if rk:
                    v[k] = add[v[k]][nrow[mc[rk]]]
            i += 1
        return -1, v

    def add(self, codes: Sequence[int]) -> bool:
        p, v = self._reduce(list(codes))
        if p < 0:
            return False
        inv = self._field._inv[v[p]]
        mi = self._field._mul[inv]
        self._pivots[p] = [mi[x] for x in v]
        self.rank += 1
        return True

    def contains(self, codes: Sequence[int]) -> bool:
        return self._reduce(list(codes))[0] < 0


class RankEngine:
    """Incremental rank of the span of appended vectors over F_q."""

    def __init__(self, field: Field):
        self.field = field
        self._impl = _Gf2Engine() if field.q == 2 else _GfqEngine(field)

    @property
    def rank(self) -> int:
        return self._impl.rank

    def add(self, codes: Sequence[int]) -> bool:
        """Append a vector; True iff the rank grew."""
        return self._impl.add(codes)

    def contains(self, codes: Sequence[int]) -> bool:
        """Is the vector already in the span (without inserting it)?"""
        return self._impl.contains(codes)


# ---------------------------------------------------------------------------
# Dense routines
# ---------------------------------------------------------------------------

def rref(field: Field, rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (reduced rows, pivot column list)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    f = field
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        sel = None
        for r in range(row, len(m)):
            if m[r][col]:
                sel = r
                break
        if sel is None:
            continue
        m[row], m[sel] = m[sel], m[row]
        inv = f.inv(m[row][col])
        m[row] = [f.mul(inv, x) for x in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col]:
                c = m[r][col]
                m[r] = [f.sub(x, f.mul(c, y)) for x, y in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    return m, pivots


def rank_dense(field: Field, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(field, rows)[1])


def solve(field: Field, rows: Sequence[Sequence[int]],
          rhs: Sequence[int]) -> list[int] | None:
    """One solution x of rows*x = rhs (free variables set to 0), or None."""
    if not rows:
        return None if any(rhs) else []
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(field, aug)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for r, col in enumerate(pivots):
        x[col] = red[r][ncols]
    return x


def nullspace(field: Field, rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of {x : rows*x = 0} via the standard free-variable method."""
    red, pivots = rref(field, rows) if rows else ([], [])
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [0] * ncols
        v[free] = 1
        for r, col in enumerate(pivots):
            if free < len(red[r]):
                v[col] = field.neg(red[r][free])
        basis.append(v)
    return basis


def left_null_lexmin(field: Field, rows: Sequence[Sequence[int]],
                     nrows: int) -> list[int] | None:
    """Lexicographically smallest nonzero b with b^T * rows = 0.

    Works on the row list of an nrows x ncols matrix (ncols may be 0).
    The left null space is the null space of the transpose; after putting
    a basis of it in RREF, the basis row with the largest pivot position
    is the lex-minimal nonzero vector (most leading zeros, then leading
    coefficient normalized to 1, remaining coordinates forced).
    Returns None when the rows are linearly independent.
    """
    ncols = len(rows[0]) if rows else 0
    transpose = [[rows[r][c] for r in range(nrows)] for c in range(ncols)]
    basis = nullspace(field, transpose, nrows)
    if not basis:
        return None
    red, pivots = rref(field, basis)
    best = max(range(len(pivots)), key=lambda r: pivots[r])
    return red[best]

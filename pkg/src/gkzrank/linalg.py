"""Exact sparse linear algebra over the rationals.

Everything here works with ``fractions.Fraction`` entries; no floating point
is used anywhere.  Elimination picks pivots Markowitz-style (sparsest row,
then least-populated column) which keeps fill-in modest on the block
matrices produced by the Koszul and de Rham complexes.
"""

from __future__ import annotations

from fractions import Fraction


class SparseRationalMatrix:
    """Sparse matrix over Q stored as a map (row, col) -> nonzero Fraction."""

    def __init__(self, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        self.entries: dict[tuple[int, int], Fraction] = {}
        if entries:
            for (i, j), v in entries.items():
                self.set(i, j, v)

    @classmethod
    def from_dense(cls, rows_list):
        rows_list = [list(r) for r in rows_list]
        m = cls(len(rows_list), len(rows_list[0]) if rows_list else 0)
        for i, row in enumerate(rows_list):
            if len(row) != m.cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                m.set(i, j, v)
        return m

    def set(self, i, j, value):
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        value = Fraction(value)
        if value == 0:
            self.entries.pop((i, j), None)
        else:
            self.entries[(i, j)] = value

    def get(self, i, j) -> Fraction:
        return self.entries.get((i, j), Fraction(0))

    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def copy(self) -> "SparseRationalMatrix":
        m = SparseRationalMatrix(self.rows, self.cols)
        m.entries = dict(self.entries)
        return m

    def column(self, j) -> dict[int, Fraction]:
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def matmul(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matmul")
        out = SparseRationalMatrix(self.rows, other.cols)
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, k), u in self.entries.items():
            for j, v in by_row.get(k, ()):
                key = (i, j)
                acc[key] = acc.get(key, Fraction(0)) + u * v
        for key, v in acc.items():
            if v != 0:
                out.entries[key] = v
        return out

    def triplets(self):
        """Sorted (row, col, value) triplets, for serialization."""
        return [(i, j, self.entries[(i, j)]) for (i, j) in sorted(self.entries)]

    def to_dense(self):
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def __repr__(self):
        return f"SparseRationalMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


def _to_row_dicts(m: SparseRationalMatrix) -> list[dict[int, Fraction]]:
    rows: list[dict[int, Fraction]] = [dict() for _ in range(m.rows)]
    for (i, j), v in m.entries.items():
        rows[i][j] = v
    return rows


def _eliminate(rows: list[dict[int, Fraction]]) -> list[dict[int, Fraction]]:
    """Row echelon reduction in place; returns the nonzero pivot rows."""
    live = [r for r in rows if r]
    pivots: list[dict[int, Fraction]] = []
    col_count: dict[int, int] = {}
    for r in live:
        for j in r:
            col_count[j] = col_count.get(j, 0) + 1
    while live:
        # Markowitz-style choice: sparsest row, then its rarest column.
        best = min(live, key=len)
        pj = min(best, key=lambda j: (col_count.get(j, 0), j))
        pv = best[pj]
        live.remove(best)
        for j in best:
            col_count[j] -= 1
        nxt = []
        for r in live:
            c = r.get(pj)
            if c is not None:
                factor = c / pv
                for j, v in best.items():
                    old = r.get(j)
                    if old is None:
                        r[j] = -factor * v
                        col_count[j] = col_count.get(j, 0) + 1
                    else:
                        new = old - factor * v
                        if new == 0:
                            del r[j]
                            col_count[j] -= 1
                        else:
                            r[j] = new
            if r:
                nxt.append(r)
        live = nxt
        pivots.append(best)
    return pivots


def rank(m: SparseRationalMatrix) -> int:
    """Exact rank over Q."""
    return len(_eliminate(_to_row_dicts(m)))


def rank_and_kernel(m: SparseRationalMatrix) -> tuple[int, int]:
    """(rank, kernel dimension); the two always add up to the column count."""
    r = rank(m)
    return r, m.cols - r


class RationalSpan:
    """Row space maintained incrementally in echelon form.

    ``add`` reduces the candidate against the current pivots and reports
    whether the rank grew.  Vectors are sparse dicts col -> Fraction.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self._pivots: dict[int, dict[int, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def residue(self, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        v = {j: Fraction(c) for j, c in vec.items() if c != 0}
        for pj in sorted(self._pivots):
            c = v.get(pj)
            if c is None:
                continue
            row = self._pivots[pj]
            for j, w in row.items():
                new = v.get(j, Fraction(0)) - c * w
                if new == 0:
                    v.pop(j, None)
                else:
                    v[j] = new
        return v

    def contains(self, vec) -> bool:
        return not self.residue(vec)

    def add(self, vec) -> bool:
        v = self.residue(vec)
        if not v:
            return False
        pj = min(v)
        pv = v[pj]
        self._pivots[pj] = {j: c / pv for j, c in v.items()}
        return True


def solve(m: SparseRationalMatrix, rhs) -> list[Fraction] | None:
    """One exact solution x of m @ x = rhs, or None if inconsistent.

    ``rhs`` is a dense list or a sparse dict row -> value.  Free variables
    are set to zero.
    """
    if isinstance(rhs, dict):
        b = {i: Fraction(v) for i, v in rhs.items() if v != 0}
    else:
        b = {i: Fraction(v) for i, v in enumerate(rhs) if v != 0}
    rows = _to_row_dicts(m)
    aug = m.cols  # column index reserved for the right-hand side
    for i, r in enumerate(rows):
        if i in b:
            r[aug] = b[i]
    # Forward elimination keeping track of pivot columns (never the rhs).
    live = [r for r in rows if r]
    pivot_rows: list[tuple[int, dict[int, Fraction]]] = []
    while live:
        best = None
        for r in live:
            cand = [j for j in r if j != aug]
            if cand:
                if best is None or len(r) < len(best[1]):
                    best = (min(cand), r)
        if best is None:
            # Only rhs entries remain: inconsistent unless all are zero.
            for r in live:
                if r.get(aug, Fraction(0)) != 0:
                    return None
            break
        live.remove(best[1])
        pj = min(j for j in best[1] if j != aug)
        pv = best[1][pj]
        row = best[1]
        nxt = []
        for r in live:
            c = r.get(pj)
            if c is not None:
                factor = c / pv
                for j, v in row.items():
                    new = r.get(j, Fraction(0)) - factor * v
                    if new == 0:
                        r.pop(j, None)
                    else:
                        r[j] = new
            if r:
                nxt.append(r)
        live = nxt
        pivot_rows.append((pj, row))
    x = [Fraction(0)] * m.cols
    for pj, row in reversed(pivot_rows):
        s = row.get(aug, Fraction(0))
        for j, v in row.items():
            if j != pj and j != aug:
                s -= v * x[j]
        x[pj] = s / row[pj]
    # Verify (cheap insurance against a missed inconsistency).
    check: dict[int, Fraction] = {}
    for (i, j), v in m.entries.items():
        if x[j] != 0:
            check[i] = check.get(i, Fraction(0)) + v * x[j]
    for i in set(check) | set(b):
        if check.get(i, Fraction(0)) != b.get(i, Fraction(0)):
            return None
    return x

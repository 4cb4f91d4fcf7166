"""Smith normal form over the integers.

Elimination keeps the matrix in a sparse row/column index so that boundary
matrices (3-4 entries per column) stay cheap.  Pivots of magnitude 1 are
preferred with a minimal fill-in heuristic; once no unit entries remain the
smallest-magnitude entry is chosen and reduced by gcd steps.  Each recorded
invariant factor is forced to divide everything that remains, so the returned
diagonal is a divisibility chain.  Python integers never overflow, so no
precision escalation is needed anywhere.
"""

from __future__ import annotations

from typing import Sequence


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Invariant factors (d_1 | d_2 | ... , all positive) of an integer matrix.

    The number of factors is the rank; zero rows and columns of the normal form
    are omitted.
    """
    rows: dict[int, dict[int, int]] = {}
    for i, row in enumerate(matrix):
        r = {j: int(v) for j, v in enumerate(row) if v}
        if r:
            rows[i] = r
    return invariant_factors(rows)


def rank(matrix: Sequence[Sequence[int]]) -> int:
    return len(smith_normal_form(matrix))


def invariant_factors(rows: dict[int, dict[int, int]]) -> tuple[int, ...]:
    """Invariant factors of a sparse matrix given as {row: {col: value}}."""
    m = _Sparse(rows)
    out: list[int] = []
    while m.rows:
        i, j = m.pick_pivot()
        i, j = m.clear(i, j)
        p = m.rows[i][j]
        if abs(p) != 1:
            # force divisibility: fold in any offending row and re-clear
            while True:
                bad = m.find_nondivisible(abs(p), i, j)
                if bad is None:
                    break
                m.add_row(i, bad, 1)
                i, j = m.clear(i, j)
                p = m.rows[i][j]
        out.append(abs(p))
        m.drop(i, j)
    return tuple(out)


class _Sparse:
    def __init__(self, rows: dict[int, dict[int, int]]):
        self.rows: dict[int, dict[int, int]] = {
            i: {j: v for j, v in r.items() if v} for i, r in rows.items()
        }
        self.rows = {i: r for i, r in self.rows.items() if r}
        self.cols: dict[int, set[int]] = {}
        for i, r in self.rows.items():
            for j in r:
                self.cols.setdefault(j, set()).add(i)

    def add_row(self, dst: int, src: int, factor: int) -> None:
        """row_dst += factor * row_src (dst != src)."""
        rdst = self.rows[dst]
        for j, v in list(self.rows[src].items()):
            nv = rdst.get(j, 0) + factor * v
            if nv:
                if j not in rdst:
                    self.cols.setdefault(j, set()).add(dst)
                rdst[j] = nv
            elif j in rdst:
                del rdst[j]
                self.cols[j].discard(dst)
        if not rdst:
            del self.rows[dst]

    def add_col(self, dst: int, src: int, factor: int) -> None:
        """col_dst += factor * col_src (dst != src)."""
        for i in list(self.cols.get(src, ())):
            r = self.rows[i]
            nv = r.get(dst, 0) + factor * r[src]
            if nv:
                if dst not in r:
                    self.cols.setdefault(dst, set()).add(i)
                r[dst] = nv
            elif dst in r:
                del r[dst]
                self.cols[dst].discard(i)

    def pick_pivot(self) -> tuple[int, int]:
        best = None
        best_key = None
        for i, r in self.rows.items():
            ncols_i = len(r)
            for j, v in r.items():
                a = abs(v)
                fill = (ncols_i - 1) * (len(self.cols[j]) - 1)
                key = (a != 1, a, fill, i, j)
                if best_key is None or key < best_key:
                    best_key = key
                    best = (i, j)
                    if key[:3] == (False, 1, 0):
                        return best
        assert best is not None
        return best

    def clear(self, i: int, j: int) -> tuple[int, int]:
        """Make (i, j) the only entry in its row and column; may move the pivot."""
        while True:
            # clear the column with row operations
            moved = True
            while moved:
                moved = False
                p = self.rows[i][j]
                for i2 in list(self.cols[j]):
                    if i2 == i:
                        continue
                    v = self.rows[i2][j]
                    q = v // p
                    if q:
                        self.add_row(i2, i, -q)
                    if self.rows.get(i2, {}).get(j):
                        # remainder smaller than |p|: it becomes the pivot
                        i = i2
                        moved = True
                        break
            # clear the row with column operations; the column stays clean
            # because only row i still meets column j
            p = self.rows[i][j]
            done = True
            for j2 in list(self.rows[i]):
                if j2 == j:
                    continue
                v = self.rows[i][j2]
                q = v // p
                if q:
                    self.add_col(j2, j, -q)
                if self.rows[i].get(j2):
                    j = j2
                    done = False
                    break
            if done:
                return i, j

    def find_nondivisible(self, p: int, i0: int, j0: int):
        for i, r in self.rows.items():
            if i == i0:
                continue
            for v in r.values():
                if v % p:
                    return i
        return None

    def drop(self, i: int, j: int) -> None:
        for j2 in self.rows.pop(i):
            s = self.cols[j2]
            s.discard(i)
            if not s:
                del self.cols[j2]
        for i2 in list(self.cols.get(j, ())):
            r = self.rows[i2]
            del r[j]
            if not r:
                del self.rows[i2]
        self.cols.pop(j, None)

"""Exact linear algebra over Z and Z/m.

Two engines:

* :func:`smith_normal_form` — textbook dense Smith normal form with
  unimodular transforms, for small matrices and the public API.
* :class:`SparseElimination` — sparse fraction-free diagonalization with
  operation logs, the workhorse behind every coboundary / lift / kernel
  computation.  Row and column operations are recorded and replayed on
  vectors, so no dense transform matrices are ever materialized.

"No solution" is a verdict (``None``), not an exception: the diagonal form
fully decouples the system, so the verdict is definitive over the stated
ring.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import gcd


# -- sparse integer matrices -------------------------------------------------


@dataclass(frozen=True)
class IntMatrix:
    """Sparse integer matrix; optional modulus for Z/m entries."""

    rows: int
    cols: int
    entries: dict = field(default_factory=dict)  # (r, c) -> nonzero int
    modulus: int | None = None

    def __post_init__(self):
        m = self.modulus
        cleaned = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry ({r}, {c}) out of range")
            if m is not None:
                v %= m
            if v:
                cleaned[(r, c)] = v
        object.__setattr__(self, "entries", cleaned)

    @staticmethod
    def from_rows(row_dicts, cols, modulus=None):
        entries = {}
        for r, row in enumerate(row_dicts):
            for c, v in row.items():
                if v:
                    entries[(r, c)] = v
        return IntMatrix(len(row_dicts), cols, entries, modulus)

    @staticmethod
    def from_dense(rows_of_values, modulus=None):
        nrows = len(rows_of_values)
        ncols = len(rows_of_values[0]) if nrows else 0
        entries = {
            (r, c): v
            for r, row in enumerate(rows_of_values)
            for c, v in enumerate(row)
            if v
        }
        return IntMatrix(nrows, ncols, entries, modulus)

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def to_dense(self):
        dense = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            dense[r][c] = v
        return dense

    def apply(self, x):
        """Matrix-vector product (entries of x are integers)."""
        out = [0] * self.rows
        for (r, c), v in self.entries.items():
            out[r] += v * x[c]
        if self.modulus is not None:
            out = [v % self.modulus for v in out]
        return out


# -- dense Smith normal form --------------------------------------------------


def _dense_mat_identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(matrix):
    """Smith normal form over Z.

    Returns (factors, U, V, D) where U*matrix*V = D, U and V are unimodular,
    D is diagonal with d_1 | d_2 | ... and d_i >= 0, and ``factors`` is the
    diagonal of D (length min(rows, cols)).
    """
    if isinstance(matrix, IntMatrix):
        if matrix.modulus is not None:
            raise ValueError("Smith normal form is computed over Z")
        a = matrix.to_dense()
        nr, nc = matrix.rows, matrix.cols
    else:
        a = [list(row) for row in matrix]
        nr = len(a)
        nc = len(a[0]) if nr else 0
    u = _dense_mat_identity(nr)
    v = _dense_mat_identity(nc)

    def row_add(i, j, q):  # row_i += q * row_j
        ai, aj = a[i], a[j]
        ui, uj = u[i], u[j]
        for k in range(nc):
            ai[k] += q * aj[k]
        for k in range(nr):
            ui[k] += q * uj[k]

    def col_add(i, j, q):  # col_i += q * col_j
        for r in range(nr):
            a[r][i] += q * a[r][j]
        for r in range(nc):
            v[r][i] += q * v[r][j]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in range(nr):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(nc):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    def col_negate(i):
        for r in range(nr):
            a[r][i] = -a[r][i]
        for r in range(nc):
            v[r][i] = -v[r][i]

    n = min(nr, nc)
    for t in range(n):
        # find a pivot of minimal absolute value in the trailing block
        while True:
            pivot = None
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    val = abs(a[i][j])
                    if val and (best is None or val < best):
                        best, pivot = val, (i, j)
            if pivot is None:
                break
            pi, pj = pivot
            if pi != t:
                row_swap(t, pi)
            if pj != t:
                col_swap(t, pj)
            p = a[t][t]
            clean = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // p
                    row_add(i, t, -q)
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // p
                    col_add(j, t, -q)
                    if a[t][j]:
                        clean = False
            if clean:
                # ensure the pivot divides the rest of the block
                p = a[t][t]
                offender = None
                for i in range(t + 1, nr):
                    for j in range(t + 1, nc):
                        if a[i][j] % p:
                            offender = i
                            break
                    if offender is not None:
                        break
                if offender is None:
                    break
                row_add(t, offender, 1)
        if a[t][t] < 0:
            col_negate(t)

    factors = [a[i][i] for i in range(n)]
    d = IntMatrix.from_dense(a) if a else IntMatrix(0, 0, {})
    return factors, u, v, d


# -- sparse elimination with op logs ------------------------------------------


def _modinv(a, m):
    g, x = _ext_gcd(a % m, m)
    if g != 1:
        raise ValueError("not invertible")
    return x % m


def _ext_gcd(a, b):
    """Return (g, x) with a*x = g (mod b) and g = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    return old_r, old_s


class SparseElimination:
    """Diagonalize a sparse integer matrix by logged row/column operations.

    Solves A x = b over Z, or A x = b (mod m) when a modulus is given; the
    elimination is shared across right-hand sides.  Column operations are
    replayed on coordinate vectors instead of materializing the transform.
    """

    def __init__(self, row_dicts, ncols, modulus=None):
        if modulus is not None and modulus < 1:
            raise ValueError("modulus must be positive")
        self.ncols = ncols
        self.modulus = modulus
        self.rows = [dict(r) for r in row_dicts]
        self.nrows = len(self.rows)
        self.colrows = [set() for _ in range(ncols)]
        for r, row in enumerate(self.rows):
            for c in list(row):
                row[c] = self._red(row[c])
                if row[c]:
                    self.colrows[c].add(r)
                else:
                    del row[c]
        self.row_ops = []  # ("a", i, j, q): row_i += q * row_j
        self.col_ops = []  # ("a", i, j, q): col_i += q * col_j
        self.pivots = []  # (row, col, value)
        self.pivot_rows = set()
        self.pivot_cols = set()
        self._done = False

    # balanced residue, to keep magnitudes small in the modular case
    def _red(self, v):
        m = self.modulus
        if m is None:
            return v
        v %= m
        if 2 * v > m:
            v -= m
        return v

    def _row_add(self, i, j, q):
        """row_i += q * row_j."""
        self.row_ops.append((i, j, q))
        ri = self.rows[i]
        for c, v in self.rows[j].items():
            nv = self._red(ri.get(c, 0) + q * v)
            if nv:
                if c not in ri:
                    self.colrows[c].add(i)
                ri[c] = nv
            elif c in ri:
                del ri[c]
                self.colrows[c].discard(i)

    def _col_add(self, i, j, q):
        """col_i += q * col_j."""
        self.col_ops.append((i, j, q))
        for r in list(self.colrows[j]):
            row = self.rows[r]
            nv = self._red(row.get(i, 0) + q * row[j])
            if nv:
                if i not in row:
                    self.colrows[i].add(r)
                row[i] = nv
            elif i in row:
                del row[i]
                self.colrows[i].discard(r)

    @staticmethod
    def _balanced_quot(v, p):
        """q minimizing |v - q*p|."""
        q, rem = divmod(v, p)
        if 2 * abs(rem) > abs(p):
            q += 1
        return q

    def eliminate(self):
        if self._done:
            return self
        # columns ordered by fill (lazy heap)
        heap = [(len(rc), c) for c, rc in enumerate(self.colrows) if rc]
        heapq.heapify(heap)
        while heap:
            sz, c = heapq.heappop(heap)
            if c in self.pivot_cols or not self.colrows[c]:
                continue
            if len(self.colrows[c]) != sz:
                heapq.heappush(heap, (len(self.colrows[c]), c))
                continue
            self._pivot_on_column(c)
            # new fill may have revived columns never pushed as nonempty
            for c2 in self.rows_touched:
                if c2 not in self.pivot_cols and self.colrows[c2]:
                    heapq.heappush(heap, (len(self.colrows[c2]), c2))
        # anything left (late fill) gets a final sweep
        for c in range(self.ncols):
            if c not in self.pivot_cols and self.colrows[c]:
                self._pivot_on_column(c)
        self.free_cols = [
            c for c in range(self.ncols) if c not in self.pivot_cols
        ]
        self._done = True
        return self

    def _pivot_on_column(self, c):
        self.rows_touched = set()
        r = min(
            self.colrows[c],
            key=lambda rr: (abs(self.rows[rr][c]) != 1, len(self.rows[rr])),
        )
        while True:
            # clear column c by row operations
            moved = False
            p = self.rows[r][c]
            for r2 in list(self.colrows[c]):
                if r2 == r:
                    continue
                q = self._balanced_quot(self.rows[r2][c], p)
                if q:
                    self._row_add(r2, r, -q)
                    self.rows_touched.update(self.rows[r2])
                if c in self.rows[r2]:
                    # remainder is strictly smaller: better pivot
                    r = r2
                    moved = True
                    break
            if moved:
                continue
            # clear row r by column operations (column c is now exclusive
            # to row r, so each column op touches only row r)
            p = self.rows[r][c]
            moved = False
            for c2 in list(self.rows[r]):
                if c2 == c:
                    continue
                q = self._balanced_quot(self.rows[r][c2], p)
                if q:
                    self._col_add(c2, c, -q)
                if c2 in self.rows[r]:
                    c = c2
                    moved = True
                    break
            if moved:
                continue
            break
        d = self.rows[r][c]
        self.pivots.append((r, c, d))
        self.pivot_rows.add(r)
        self.pivot_cols.add(c)
        # retire the pivot entry
        del self.rows[r][c]
        self.colrows[c].discard(r)

    # -- replay helpers ------------------------------------------------------

    def apply_row_ops(self, b):
        """U b for the accumulated row transform."""
        b = list(b)
        for i, j, q in self.row_ops:
            b[i] += q * b[j]
        return b

    def unapply_row_ops(self, b):
        """U^{-1} b."""
        b = list(b)
        for i, j, q in reversed(self.row_ops):
            b[i] -= q * b[j]
        return b

    def apply_col_ops(self, x):
        """V x (x given in post-elimination coordinates)."""
        x = list(x)
        for i, j, q in reversed(self.col_ops):
            x[j] += q * x[i]
        return x

    def col_coords(self, v):
        """V^{-1} v."""
        v = list(v)
        for i, j, q in self.col_ops:
            v[j] -= q * v[i]
        return v

    # -- solving ---------------------------------------------------------------

    def solve(self, b):
        """One solution of A x = b (or = b mod m), or None."""
        self.eliminate()
        m = self.modulus
        bt = self.apply_row_ops(b)
        x = [0] * self.ncols
        for r, c, d in self.pivots:
            val = bt[r]
            if m is None:
                if val % d:
                    return None
                x[c] = val // d
            else:
                val %= m
                g = gcd(d % m, m)
                if val % g:
                    return None
                mm = m // g
                if mm == 1:
                    x[c] = 0
                else:
                    x[c] = ((val // g) % mm) * _modinv(d // g, mm) % mm
        for r in range(self.nrows):
            if r not in self.pivot_rows:
                if m is None:
                    if bt[r]:
                        return None
                elif bt[r] % m:
                    return None
        x = self.apply_col_ops(x)
        if m is not None:
            x = [v % m for v in x]
        return x

    def kernel(self):
        """Vectors spanning all solutions of A x = 0 over the ring."""
        self.eliminate()
        m = self.modulus
        basis = []
        for f in self.free_cols:
            e = [0] * self.ncols
            e[f] = 1
            v = self.apply_col_ops(e)
            if m is not None:
                v = [w % m for w in v]
            basis.append(v)
        if m is not None:
            for r, c, d in self.pivots:
                g = gcd(d % m, m)
                if g > 1:
                    e = [0] * self.ncols
                    e[c] = m // g
                    basis.append([w % m for w in self.apply_col_ops(e)])
        return basis


def solve_linear(matrix, b, modulus=None):
    """Solve matrix * x = b over Z (modulus None) or Z/m.

    Returns (x, kernel_generators) or None.  The verdict is definitive: the
    system is brought to an equivalent diagonal form, not searched.
    """
    if isinstance(matrix, IntMatrix):
        if modulus is None:
            modulus = matrix.modulus
        rows = matrix.row_dicts()
        ncols = matrix.cols
    else:
        rows = [dict(r) for r in matrix]
        ncols = max((c for r in rows for c in r), default=-1) + 1
    elim = SparseElimination(rows, ncols, modulus=modulus)
    x = elim.solve(list(b))
    if x is None:
        return None
    return x, elim.kernel()

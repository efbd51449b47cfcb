"""Exact dense linear algebra over Gaussian rationals (and eps-scalars).

Row reduction is fraction-free (Bareiss) after clearing row denominators,
with largest-numerator pivoting to control coefficient growth.  Kernel and
solve run an exact back-substitution pass on the echelon form.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import SingularMatrix
from .scalars import GR_ONE, GR_ZERO, EpsilonScalar, GaussianRational


class ExactMatrix:
    """Immutable rectangular matrix with exact entries.

    Entries are GaussianRational for everything rank-related; EpsilonScalar
    instantiations are used by the contraction machinery (determinant and
    adjugate only).
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence], cols: int | None = None):
        rows = tuple(tuple(row) for row in entries)
        ncols = len(rows[0]) if rows else (cols or 0)
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def identity(cls, n: int, one=GR_ONE, zero=GR_ZERO) -> "ExactMatrix":
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int, zero=GR_ZERO) -> "ExactMatrix":
        return cls([[zero] * cols for _ in range(rows)], cols=cols)

    def __getitem__(self, pos):
        i, j = pos
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(str(e) for e in row) for row in self.entries)
        return f"ExactMatrix[{self.rows}x{self.cols}: {body}]"

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch in matrix product")
            return ExactMatrix(
                [
                    [
                        _dot(self.entries[i], other.column(j))
                        for j in range(other.cols)
                    ]
                    for i in range(self.rows)
                ]
            )
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, ExactMatrix):
            if (self.rows, self.cols) != (other.rows, other.cols):
                raise ValueError("dimension mismatch in matrix sum")
            return ExactMatrix(
                [
                    [self.entries[i][j] + other.entries[i][j] for j in range(self.cols)]
                    for i in range(self.rows)
                ]
            )
        return NotImplemented

    def scale(self, scalar) -> "ExactMatrix":
        return ExactMatrix([[scalar * e for e in row] for row in self.entries])

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([self.column(j) for j in range(self.cols)], cols=self.rows)

    def apply(self, vector: Sequence) -> tuple:
        if len(vector) != self.cols:
            raise ValueError("dimension mismatch in matrix-vector product")
        return tuple(_dot(row, vector) for row in self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def determinant(self):
        """Fraction-free (Bareiss) determinant; exact over any integral domain."""
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return GR_ONE
        a = [list(row) for row in self.entries]
        zero = _zero_like(a[0][0])
        sign = 1
        prev = None
        for k in range(n - 1):
            if not a[k][k] or a[k][k] == zero:
                pivot_row = next(
                    (r for r in range(k + 1, n) if a[r][k] and a[r][k] != zero), None
                )
                if pivot_row is None:
                    return zero
                a[k], a[pivot_row] = a[pivot_row], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                    a[i][j] = num if prev is None else num / prev
                a[i][k] = zero
            prev = a[k][k]
        det = a[n - 1][n - 1]
        return -det if sign < 0 else det

    def adjugate(self) -> "ExactMatrix":
        """Transpose of the cofactor matrix: self * adj == det * identity."""
        if not self.is_square():
            raise ValueError("adjugate of a non-square matrix")
        n = self.rows
        if n == 0:
            return self
        if n == 1:
            one = _one_like(self.entries[0][0])
            return ExactMatrix([[one]])
        cof = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = ExactMatrix(
                    [
                        [self.entries[r][c] for c in range(n) if c != j]
                        for r in range(n)
                        if r != i
                    ]
                )
                d = minor.determinant()
                cof[i][j] = -d if (i + j) % 2 else d
        return ExactMatrix(cof).transpose()

    def inverse(self) -> "ExactMatrix":
        """Exact inverse over GaussianRational; SingularMatrix if det == 0."""
        det = self.determinant()
        if not det:
            raise SingularMatrix("matrix is not invertible")
        return self.adjugate().scale(GR_ONE / det)


def _dot(u, v):
    acc = None
    for a, b in zip(u, v):
        term = a * b
        acc = term if acc is None else acc + term
    if acc is None:
        return GR_ZERO
    return acc


def _zero_like(x):
    if isinstance(x, EpsilonScalar):
        return EpsilonScalar.zero()
    return GR_ZERO


def _one_like(x):
    if isinstance(x, EpsilonScalar):
        return EpsilonScalar.one()
    return GR_ONE


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _cleared_int_rows(m: ExactMatrix):
    """Rows scaled to Gaussian-integer entries (row scaling is kernel-safe).

    Returns (real, rows): plain int entries when every imaginary part is
    zero, else (re, im) int pairs.
    """
    real = True
    rows = []
    for row in m.entries:
        lcm = 1
        for e in row:
            for part in (e.re, e.im):
                if part.denominator != 1:
                    lcm = lcm * part.denominator // _gcd(lcm, part.denominator)
            if e.im:
                real = False
        cleared = []
        for e in row:
            re = e.re.numerator * (lcm // e.re.denominator)
            im = e.im.numerator * (lcm // e.im.denominator)
            cleared.append((re, im))
        rows.append(cleared)
    if real:
        return True, [[re for re, _ in row] for row in rows]
    return False, rows


def _eliminate_real(rows):
    """Fraction-free forward elimination on plain int rows (in place)."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        best, best_size = None, -1
        for i in range(r, nrows):
            entry = rows[i][c]
            if entry:
                size = abs(entry)
                if size > best_size:
                    best, best_size = i, size
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        pivot_row = rows[r]
        pivot = pivot_row[c]
        for i in range(r + 1, nrows):
            row = rows[i]
            head = row[c]
            if head:
                for j in range(c, ncols):
                    row[j] = (row[j] * pivot - head * pivot_row[j]) // prev
            elif pivot != prev:
                for j in range(c, ncols):
                    row[j] = row[j] * pivot // prev
        pivots.append((r, c))
        prev = pivot
        r += 1
    return rows, pivots


def _eliminate_complex(rows):
    """Fraction-free forward elimination on (re, im) Gaussian-integer rows."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    prev = (1, 0)
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        best, best_size = None, -1
        for i in range(r, nrows):
            re, im = rows[i][c]
            if re or im:
                size = max(abs(re), abs(im))
                if size > best_size:
                    best, best_size = i, size
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        pivot_row = rows[r]
        pr, pi = pivot_row[c]
        qr, qi = prev
        norm = qr * qr + qi * qi
        for i in range(r + 1, nrows):
            row = rows[i]
            hr, hi = row[c]
            for j in range(c, ncols):
                ar, ai = row[j]
                br, bi = pivot_row[j]
                # (a * pivot - head * b) / prev in Z[i]; division is exact
                nr = ar * pr - ai * pi - (hr * br - hi * bi)
                ni = ar * pi + ai * pr - (hr * bi + hi * br)
                row[j] = (
                    (nr * qr + ni * qi) // norm,
                    (ni * qr - nr * qi) // norm,
                )
        pivots.append((r, c))
        prev = (pr, pi)
        r += 1
    return rows, pivots


def _forward_eliminate(rows):
    """Fraction-free forward elimination over GaussianRational rows.

    Used by the RREF path, where the echelon entries are consumed as exact
    field elements afterwards.
    """
    real, int_rows = _cleared_int_rows(ExactMatrix(rows))
    if real:
        reduced, pivots = _eliminate_real(int_rows)
        out = [[GaussianRational(e) for e in row] for row in reduced]
    else:
        reduced, pivots = _eliminate_complex(int_rows)
        out = [[GaussianRational(re, im) for re, im in row] for row in reduced]
    return out, pivots


def rank(m: ExactMatrix) -> int:
    """Rank of a GaussianRational matrix; the empty matrix has rank 0."""
    if m.rows == 0 or m.cols == 0:
        return 0
    real, int_rows = _cleared_int_rows(m)
    if real:
        _, pivots = _eliminate_real(int_rows)
    else:
        _, pivots = _eliminate_complex(int_rows)
    return len(pivots)


def _rref(m: ExactMatrix):
    """Reduced row echelon form; returns (rows, pivot_cols)."""
    if m.rows == 0 or m.cols == 0:
        return [], []
    rows, pivots = _forward_eliminate([list(row) for row in m.entries])
    pivot_cols = []
    for r, c in pivots:
        pivot_cols.append(c)
        inv = GR_ONE / rows[r][c]
        rows[r] = [inv * e for e in rows[r]]
    for idx in range(len(pivots) - 1, -1, -1):
        r, c = pivots[idx]
        for above in range(r):
            factor = rows[above][c]
            if factor:
                rows[above] = [
                    rows[above][j] - factor * rows[r][j] for j in range(m.cols)
                ]
    return rows[: len(pivots)], pivot_cols


def kernel_basis(m: ExactMatrix) -> list:
    """Basis of the right null space as a list of tuples.

    rank(m) + len(kernel_basis(m)) == m.cols always holds.
    """
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [_unit_vector(m.cols, j) for j in range(m.cols)]
    rows, pivot_cols = _rref(m)
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for free in free_cols:
        vec = [GR_ZERO] * m.cols
        vec[free] = GR_ONE
        for r, c in enumerate(pivot_cols):
            vec[c] = -rows[r][free]
        basis.append(tuple(vec))
    return basis


def solve(m: ExactMatrix, b: Sequence) -> tuple | None:
    """Any particular solution of m x == b, or None when inconsistent."""
    if len(b) != m.rows:
        raise ValueError("right-hand side length mismatch")
    if m.cols == 0:
        return () if all(not e for e in b) else None
    if m.rows == 0:
        return tuple([GR_ZERO] * m.cols)
    aug = ExactMatrix([list(row) + [b[i]] for i, row in enumerate(m.entries)])
    rows, pivot_cols = _rref(aug)
    if m.cols in pivot_cols:
        return None
    x = [GR_ZERO] * m.cols
    for r, c in enumerate(pivot_cols):
        x[c] = rows[r][m.cols]
    return tuple(x)


def _unit_vector(n: int, j: int) -> tuple:
    return tuple(GR_ONE if k == j else GR_ZERO for k in range(n))


def span_rank(vectors) -> int:
    """Dimension of the span of coordinate vectors (possibly empty)."""
    vecs = [v for v in vectors]
    if not vecs:
        return 0
    return rank(ExactMatrix(vecs))


def span_basis(vectors) -> list:
    """RREF basis rows spanning the same space as the input vectors."""
    vecs = [list(v) for v in vectors]
    if not vecs:
        return []
    rows, _ = _rref(ExactMatrix(vecs))
    return [tuple(row) for row in rows]


def vector_in_span(vectors, target) -> bool:
    """True when target is a linear combination of the given vectors."""
    vecs = [list(v) for v in vectors]
    if not vecs:
        return all(not e for e in target)
    m = ExactMatrix(vecs).transpose()
    return solve(m, list(target)) is not None

"""Lie algebra laws as structure constants, with the core structural toolkit.

A law stores only the strictly-upper-triangular entries C^k_{ij} (i < j);
antisymmetry is applied by the accessors, so it cannot be violated by
construction.  All indices are 0-based internally; reports convert to the
1-based e1..en convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg
from .errors import NotADerivation, SingularMatrix
from .linalg import ExactMatrix
from .scalars import GR_ONE, GR_ZERO, EpsilonScalar, GaussianRational


def _as_scalar(value, epsilon: bool):
    if epsilon:
        if isinstance(value, EpsilonScalar):
            return value
        if isinstance(value, GaussianRational):
            return EpsilonScalar.from_const(value)
        return EpsilonScalar.from_const(GaussianRational(value))
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, EpsilonScalar):
        raise TypeError("eps-scalar coefficient in a constant law")
    return GaussianRational(value)


class StructureConstants:
    """The tensor C^k_{ij} of a bilinear antisymmetric law on an n-space.

    Coefficients are GaussianRational by default; laws over the Laurent ring
    (used by perturbations and symbolic contractions) carry EpsilonScalar
    entries and set `epsilon=True`.
    """

    __slots__ = ("dim", "epsilon", "_c", "jacobi_verified")

    def __init__(self, dim: int, entries=None, epsilon: bool = False):
        if dim < 0:
            raise ValueError("negative dimension")
        clean = {}
        for (i, j, k), value in (entries or {}).items():
            if not (0 <= i < j < dim and 0 <= k < dim):
                raise ValueError(f"bad structure index ({i},{j},{k}) for dim {dim}")
            value = _as_scalar(value, epsilon)
            if value:
                clean[(i, j, k)] = value
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "epsilon", epsilon)
        object.__setattr__(self, "_c", clean)
        object.__setattr__(self, "jacobi_verified", False)

    def __setattr__(self, name, value):
        if name == "jacobi_verified":
            object.__setattr__(self, name, value)
            return
        raise AttributeError("StructureConstants is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_brackets(cls, dim: int, brackets, epsilon: bool = False):
        """Build from {(i, j): {k: coeff}} with i < j, all 0-based."""
        entries = {}
        for (i, j), vec in brackets.items():
            for k, coeff in vec.items():
                entries[(i, j, k)] = coeff
        return cls(dim, entries, epsilon=epsilon)

    @classmethod
    def abelian(cls, dim: int):
        return cls(dim, {})

    def lift_to_epsilon(self) -> "StructureConstants":
        if self.epsilon:
            return self
        return StructureConstants(
            self.dim,
            {key: EpsilonScalar.from_const(c) for key, c in self._c.items()},
            epsilon=True,
        )

    # -- scalar plumbing -----------------------------------------------------

    @property
    def zero(self):
        return EpsilonScalar.zero() if self.epsilon else GR_ZERO

    def items(self):
        """Stored (i, j, k, coeff) with i < j, deterministic order."""
        for (i, j, k) in sorted(self._c):
            yield i, j, k, self._c[(i, j, k)]

    def c(self, i: int, j: int, k: int):
        """Signed accessor: antisymmetry in (i, j) applied on the fly."""
        if i == j:
            return self.zero
        if i < j:
            return self._c.get((i, j, k), self.zero)
        val = self._c.get((j, i, k))
        return -val if val is not None else self.zero

    def bracket_basis(self, i: int, j: int) -> tuple:
        """mu(e_i, e_j) as a coefficient vector."""
        vec = [self.zero] * self.dim
        if i == j:
            return tuple(vec)
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        for k in range(self.dim):
            val = self._c.get((i, j, k))
            if val is not None:
                vec[k] = -val if sign < 0 else val
        return tuple(vec)

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        """Bilinear extension mu(x, y) for coefficient vectors x, y."""
        n = self.dim
        out = [self.zero] * n
        for i in range(n):
            xi = x[i]
            if not xi:
                continue
            for j in range(n):
                yj = y[j]
                if not yj or i == j:
                    continue
                coeff = xi * yj
                for k, c in enumerate(self.bracket_basis(i, j)):
                    if c:
                        out[k] = out[k] + coeff * c
        return tuple(out)

    def is_abelian(self) -> bool:
        return not self._c

    # -- equality ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, StructureConstants):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.epsilon == other.epsilon
            and self._c == other._c
        )

    def __hash__(self):
        return hash((self.dim, self.epsilon, frozenset(self._c.items())))

    def __repr__(self):
        parts = [
            f"[e{i + 1},e{j + 1}]={val}*e{k + 1}" for i, j, k, val in self.items()
        ]
        inner = ", ".join(parts) if parts else "abelian"
        return f"StructureConstants(dim={self.dim}: {inner})"

    def canonical_key(self):
        return (self.dim, self.epsilon, tuple(sorted(self._c.items())))


@dataclass(frozen=True)
class JacobiViolation:
    triple: tuple  # (i, j, k), 0-based, i < j < k
    component: int  # s, 0-based
    residual: object  # scalar


@dataclass(frozen=True)
class ValidationReport:
    dim: int
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations

    def residual_vector(self, triple) -> tuple:
        out = {}
        for v in self.violations:
            if v.triple == triple:
                out[v.component] = v.residual
        return tuple(out.get(k) for k in sorted(out))


def jacobi_residual(sc: StructureConstants, i: int, j: int, k: int) -> tuple:
    """Cyclic sum mu(mu(ei,ej),ek) + mu(mu(ej,ek),ei) + mu(mu(ek,ei),ej)."""
    n = sc.dim
    out = [sc.zero] * n
    for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
        inner = sc.bracket_basis(a, b)
        for l in range(n):
            if not inner[l]:
                continue
            for s, coeff in enumerate(sc.bracket_basis(l, c)):
                if coeff:
                    out[s] = out[s] + inner[l] * coeff
    return tuple(out)


def validate_law(sc: StructureConstants) -> ValidationReport:
    """List every violated Jacobi scalar equation; empty list <=> Lie law.

    On success the law's `jacobi_verified` flag is set.
    """
    violations = []
    for (i, j, k) in combinations(range(sc.dim), 3):
        residual = jacobi_residual(sc, i, j, k)
        for s, value in enumerate(residual):
            if value:
                violations.append(JacobiViolation((i, j, k), s, value))
    report = ValidationReport(sc.dim, tuple(violations))
    if report.ok:
        sc.jacobi_verified = True
    return report


class BasisChange:
    """An invertible constant basis change f acting by f*mu = f^-1 mu(f., f.)."""

    __slots__ = ("matrix", "_inverse")

    def __init__(self, matrix: ExactMatrix):
        if not matrix.is_square():
            raise ValueError("basis change must be square")
        det = matrix.determinant()
        if not det:
            raise SingularMatrix("basis change is singular")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "_inverse", None)

    def __setattr__(self, name, value):
        if name == "_inverse":
            object.__setattr__(self, name, value)
            return
        raise AttributeError("BasisChange is immutable")

    @classmethod
    def from_rows(cls, rows) -> "BasisChange":
        return cls(ExactMatrix([[_as_scalar(e, False) for e in row] for row in rows]))

    @classmethod
    def from_images(cls, images: Iterable[Sequence]) -> "BasisChange":
        """Columns are the images f(e_j) expressed in the ambient basis."""
        cols = [list(img) for img in images]
        n = len(cols)
        rows = [[_as_scalar(cols[j][i], False) for j in range(n)] for i in range(n)]
        return cls(ExactMatrix(rows))

    @classmethod
    def identity(cls, n: int) -> "BasisChange":
        return cls(ExactMatrix.identity(n))

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def inverse_matrix(self) -> ExactMatrix:
        if self._inverse is None:
            self._inverse = self.matrix.inverse()
        return self._inverse

    def image(self, j: int) -> tuple:
        return self.matrix.column(j)


def apply_basis_change(sc: StructureConstants, f: BasisChange) -> StructureConstants:
    """f*mu with (f*mu)(X, Y) = f^-1(mu(f X, f Y)).  Lie laws stay Lie."""
    if sc.epsilon:
        raise TypeError("use the contraction module for eps-parametric changes")
    if f.dim != sc.dim:
        raise ValueError("basis change dimension mismatch")
    inv = f.inverse_matrix()
    entries = {}
    for i, j in combinations(range(sc.dim), 2):
        transported = sc.bracket(f.image(i), f.image(j))
        vec = inv.apply(transported)
        for k, val in enumerate(vec):
            if val:
                entries[(i, j, k)] = val
    return StructureConstants(sc.dim, entries)


def direct_sum(a: StructureConstants, b: StructureConstants) -> StructureConstants:
    """Block law on dim a.dim + b.dim with all cross brackets zero."""
    entries = {}
    for i, j, k, val in a.items():
        entries[(i, j, k)] = val
    off = a.dim
    for i, j, k, val in b.items():
        entries[(i + off, j + off, k + off)] = val
    return StructureConstants(a.dim + b.dim, entries)


@dataclass(frozen=True)
class SeriesProfile:
    kind: str  # "lower_central" | "derived"
    dims: tuple

    @property
    def terminates(self) -> bool:
        return self.dims[-1] == 0

    @property
    def index(self):
        """Nilindex / solvindex: steps until the series hits 0, else None."""
        if not self.terminates:
            return None
        return len(self.dims) - 1


def _bracket_span(sc: StructureConstants, left_basis, right_basis):
    products = []
    for x in left_basis:
        for y in right_basis:
            v = sc.bracket(x, y)
            if any(v):
                products.append(v)
    return linalg.span_basis(products)


def _full_basis(n: int):
    return [tuple(GR_ONE if i == j else GR_ZERO for j in range(n)) for i in range(n)]


def _series(sc: StructureConstants, kind: str) -> SeriesProfile:
    current = _full_basis(sc.dim)
    dims = [sc.dim]
    while True:
        if kind == "lower_central":
            nxt = _bracket_span(sc, current, _full_basis(sc.dim))
        else:
            nxt = _bracket_span(sc, current, current)
        dims.append(len(nxt))
        if dims[-1] == 0 or dims[-1] == dims[-2]:
            return SeriesProfile(kind, tuple(dims))
        current = nxt


def lower_central_series(sc: StructureConstants) -> SeriesProfile:
    return _series(sc, "lower_central")


def derived_series(sc: StructureConstants) -> SeriesProfile:
    return _series(sc, "derived")


@dataclass(frozen=True)
class ClassificationReport:
    kind: str  # "abelian" | "nilpotent" | "solvable" | "neither"
    nilindex: object  # int | None
    solvindex: object  # int | None
    filiform: bool
    lower_central: SeriesProfile
    derived: SeriesProfile


def classify_structure(sc: StructureConstants) -> ClassificationReport:
    """Structural tags from both series (both are always computed)."""
    lc = lower_central_series(sc)
    dv = derived_series(sc)
    nilindex = lc.index
    solvindex = dv.index
    filiform = nilindex is not None and sc.dim >= 2 and nilindex == sc.dim - 1
    if sc.is_abelian():
        kind = "abelian"
    elif nilindex is not None:
        kind = "nilpotent"
        # nilindex <= n-1 for non-abelian nilpotent laws
        assert nilindex <= sc.dim - 1
    elif solvindex is not None:
        kind = "solvable"
    else:
        kind = "neither"
    return ClassificationReport(kind, nilindex, solvindex, filiform, lc, dv)


def center(sc: StructureConstants) -> list:
    """Basis of {X : mu(X, e_j) = 0 for all j} (kernel of the joint adjoint)."""
    n = sc.dim
    if n == 0:
        return []
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append([sc.c(i, j, k) for i in range(n)])
    return linalg.kernel_basis(ExactMatrix(rows))


def adjoint(sc: StructureConstants, x: Sequence) -> ExactMatrix:
    """Matrix of ad x: y -> mu(x, y) in the ambient basis."""
    n = sc.dim
    cols = [sc.bracket(x, basis_vector(n, j)) for j in range(n)]
    return ExactMatrix([[cols[j][i] for j in range(n)] for i in range(n)])


def basis_vector(n: int, j: int) -> tuple:
    return tuple(GR_ONE if i == j else GR_ZERO for i in range(n))


def derivations(sc: StructureConstants) -> list:
    """Basis of Der(mu) as n x n matrices.

    Solves mu(f ei, ej) + mu(ei, f ej) - f(mu(ei, ej)) = 0 over all basis
    pairs; the unknowns are the n^2 matrix entries f[a][b].
    """
    n = sc.dim
    if n == 0:
        return []
    rows = []
    for i, j in combinations(range(n), 2):
        for k in range(n):
            row = [GR_ZERO] * (n * n)
            for a in range(n):
                # f(e_i) contributes f[a][i] * mu(e_a, e_j)
                row[a * n + i] = row[a * n + i] + sc.c(a, j, k)
                # f(e_j) contributes f[a][j] * mu(e_i, e_a)
                row[a * n + j] = row[a * n + j] + sc.c(i, a, k)
            for l in range(n):
                cl = sc.c(i, j, l)
                if cl:
                    row[k * n + l] = row[k * n + l] - cl
            rows.append(row)
    if not rows:
        kernel = [basis_vector(n * n, t) for t in range(n * n)]
    else:
        kernel = linalg.kernel_basis(ExactMatrix(rows))
    return [
        ExactMatrix([[vec[a * n + b] for b in range(n)] for a in range(n)])
        for vec in kernel
    ]


def is_derivation(sc: StructureConstants, f: ExactMatrix) -> bool:
    n = sc.dim
    for i, j in combinations(range(n), 2):
        fi = f.column(i)
        fj = f.column(j)
        lhs = tuple(
            a + b for a, b in zip(sc.bracket(fi, basis_vector(n, j)), sc.bracket(basis_vector(n, i), fj))
        )
        rhs = f.apply(sc.bracket_basis(i, j))
        if lhs != rhs:
            return False
    return True


def solvable_extension(sc: StructureConstants, f: ExactMatrix) -> StructureConstants:
    """Adjoin e_{n+1} acting on the old space through the derivation f.

    mu'(X, e_{n+1}) = f(X), mu' restricted to the old space is mu.
    """
    n = sc.dim
    if not (f.is_square() and f.rows == n):
        raise ValueError("derivation matrix has wrong shape")
    if not is_derivation(sc, f):
        raise NotADerivation("matrix does not satisfy the derivation identity")
    entries = {}
    for i, j, k, val in sc.items():
        entries[(i, j, k)] = val
    for i in range(n):
        for k in range(n):
            val = f[k, i]
            if val:
                entries[(i, n, k)] = val
    return StructureConstants(n + 1, entries)


@dataclass(frozen=True)
class TwoDimNormalForm:
    kind: str  # "abelian" | "r2"
    witness: object  # BasisChange | None


def normalize_2dim(sc: StructureConstants) -> TwoDimNormalForm:
    """Every 2-dimensional law is abelian or isomorphic to [e1,e2] = e2.

    In the r2 case the returned witness f satisfies f*mu == r2 exactly.
    """
    if sc.dim != 2:
        raise ValueError("normalize_2dim needs a 2-dimensional law")
    a = sc.c(0, 1, 0)
    b = sc.c(0, 1, 1)
    if not a and not b:
        return TwoDimNormalForm("abelian", None)
    if b:
        f = BasisChange.from_images([(GR_ONE / b, GR_ZERO), (a / b, GR_ONE)])
    else:
        # a != 0, b == 0: swap the basis first, then apply the b != 0 recipe.
        swap = ExactMatrix([[GR_ZERO, GR_ONE], [GR_ONE, GR_ZERO]])
        a2, b2 = GR_ZERO, -a  # mu(e2, e1) = -(a e1) read in the swapped basis
        recipe = ExactMatrix(
            [[GR_ONE / b2, a2 / b2], [GR_ZERO, GR_ONE]]
        )
        f = BasisChange(swap * recipe)
    return TwoDimNormalForm("r2", f)


def fingerprint_structural(sc: StructureConstants) -> tuple:
    """Isomorphism-invariant tags computable without cohomology."""
    lc = lower_central_series(sc)
    dv = derived_series(sc)
    return (
        sc.dim,
        lc.dims,
        dv.dims,
        len(center(sc)),
        len(derivations(sc)),
    )

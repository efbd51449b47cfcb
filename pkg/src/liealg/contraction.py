"""Symbolic one-parameter contractions: apply an eps-parametric basis family,
take the eps -> 0 limit entrywise, and build the classical families.

Families are matrices over Laurent polynomials; inverses are adjugate over
determinant, so transported structure entries are exact Laurent fractions.
A limit exists exactly when every entry has nonnegative valuation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .cohomology import cohomology_report, fingerprint
from .errors import (
    DimensionMismatch,
    DivergentEntry,
    NotASubalgebra,
    SaletanRequiresSingular,
    SingularMatrix,
)
from .linalg import ExactMatrix
from .scalars import EPS_ONE, GR_ONE, GR_ZERO, EpsilonScalar, laurent_gcd
from .structure import (
    StructureConstants,
    apply_basis_change,
    center,
    derivations,
    derived_series,
    lower_central_series,
    validate_law,
)


class LaurentFraction:
    """num/den with Laurent-polynomial parts, kept gcd-reduced.

    Normal form: den has valuation 0 and lowest coefficient 1 (monomial
    content and units are pushed into num), so den(0) = 1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: EpsilonScalar, den: EpsilonScalar = EPS_ONE):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = EPS_ONE
        else:
            g = laurent_gcd(num, den)
            num = num.exact_div(g)
            den = den.exact_div(g)
            shift = den.valuation()
            if shift:
                num = num.shift(-shift)
                den = den.shift(-shift)
            lead = den.coefficient(0)
            if lead != GR_ONE:
                inv = GR_ONE / lead
                num = num * EpsilonScalar.from_const(inv)
                den = den * EpsilonScalar.from_const(inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentFraction is immutable")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == EPS_ONE

    def valuation(self):
        return self.num.valuation() - self.den.valuation()

    def limit_at_zero(self):
        v = self.valuation()
        if v < 0:
            raise DivergentEntry(f"{self} has negative valuation")
        if v > 0:
            return GR_ZERO
        return self.num.coefficient(0) / self.den.coefficient(0)

    def __add__(self, other):
        other = _as_fraction(other)
        if other is None:
            return NotImplemented
        return LaurentFraction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __mul__(self, other):
        other = _as_fraction(other)
        if other is None:
            return NotImplemented
        return LaurentFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __neg__(self):
        return LaurentFraction(-self.num, self.den)

    def __sub__(self, other):
        other = _as_fraction(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __eq__(self, other):
        other = _as_fraction(other)
        if other is None:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        if self.is_polynomial():
            return f"({self.num})"
        return f"({self.num})/({self.den})"


def _as_fraction(value):
    if isinstance(value, LaurentFraction):
        return value
    if isinstance(value, EpsilonScalar):
        return LaurentFraction(value)
    coerced = EpsilonScalar._coerce(value)
    if coerced is None:
        return None
    return LaurentFraction(coerced)


class ParametricFamily:
    """An invertible eps-parametric basis change (matrix over Laurent
    polynomials with nonzero determinant)."""

    __slots__ = ("matrix", "_det", "_inverse")

    def __init__(self, matrix: ExactMatrix):
        if not matrix.is_square():
            raise ValueError("family matrix must be square")
        det = matrix.determinant()
        if det.is_zero():
            raise SingularMatrix("family determinant is identically zero")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "_det", det)
        object.__setattr__(self, "_inverse", None)

    def __setattr__(self, name, value):
        if name == "_inverse":
            object.__setattr__(self, name, value)
            return
        raise AttributeError("ParametricFamily is immutable")

    @classmethod
    def from_rows(cls, rows) -> "ParametricFamily":
        return cls(ExactMatrix([[_eps(e) for e in row] for row in rows]))

    @classmethod
    def from_images(cls, images) -> "ParametricFamily":
        cols = [list(img) for img in images]
        n = len(cols)
        return cls(
            ExactMatrix([[_eps(cols[j][i]) for j in range(n)] for i in range(n)])
        )

    @classmethod
    def diagonal(cls, scalars) -> "ParametricFamily":
        scalars = [_eps(s) for s in scalars]
        n = len(scalars)
        return cls(
            ExactMatrix(
                [
                    [scalars[i] if i == j else EpsilonScalar.zero() for j in range(n)]
                    for i in range(n)
                ]
            )
        )

    @classmethod
    def from_constant(cls, matrix: ExactMatrix) -> "ParametricFamily":
        return cls.from_rows(matrix.entries)

    @property
    def dim(self) -> int:
        return self.matrix.rows

    @property
    def determinant(self) -> EpsilonScalar:
        return self._det

    def inverse_rows(self):
        """Inverse as LaurentFraction entries: adjugate over determinant."""
        if self._inverse is None:
            adj = self.matrix.adjugate()
            det = self._det
            self._inverse = tuple(
                tuple(LaurentFraction(adj[i, j], det) for j in range(self.dim))
                for i in range(self.dim)
            )
        return self._inverse

    def verify_inverse(self) -> bool:
        """matrix * inverse == identity, exactly."""
        inv = self.inverse_rows()
        n = self.dim
        for i in range(n):
            for j in range(n):
                acc = LaurentFraction(EpsilonScalar.zero())
                for l in range(n):
                    acc = acc + LaurentFraction(self.matrix[i, l]) * inv[l][j]
                expected = LaurentFraction(EPS_ONE if i == j else EpsilonScalar.zero())
                if acc != expected:
                    return False
        return True


def _eps(value) -> EpsilonScalar:
    if isinstance(value, EpsilonScalar):
        return value
    coerced = EpsilonScalar._coerce(value)
    if coerced is None:
        raise TypeError(f"cannot use {value!r} as a family entry")
    return coerced


def transported_law(sc: StructureConstants, family: ParametricFamily):
    """F*mu as a table of LaurentFraction vectors indexed by pairs i < j."""
    if family.dim != sc.dim:
        raise ValueError("family dimension mismatch")
    mu = sc if sc.epsilon else sc.lift_to_epsilon()
    n = sc.dim
    inv = family.inverse_rows()
    table = {}
    for i, j in combinations(range(n), 2):
        transported = mu.bracket(family.matrix.column(i), family.matrix.column(j))
        vec = []
        for k in range(n):
            acc = LaurentFraction(EpsilonScalar.zero())
            for l in range(n):
                if transported[l].is_zero():
                    continue
                acc = acc + inv[k][l] * LaurentFraction(transported[l])
            vec.append(acc)
        table[(i, j)] = tuple(vec)
    return table


def contract(sc: StructureConstants, family: ParametricFamily) -> StructureConstants:
    """Entrywise eps -> 0 limit of F*mu; the limit of a Lie law is Lie.

    Raises DivergentEntry when some transported entry has negative
    valuation (no limit exists).
    """
    if not sc.jacobi_verified:
        report = validate_law(sc)
        if not report.ok:
            raise ValueError("contract needs a valid Lie law")
    table = transported_law(sc, family)
    entries = {}
    for (i, j), vec in table.items():
        for k, fraction in enumerate(vec):
            if fraction.is_zero():
                continue
            if fraction.valuation() < 0:
                raise DivergentEntry(
                    f"entry C^{k + 1}_{i + 1}{j + 1} = {fraction} diverges as eps -> 0"
                )
            value = fraction.limit_at_zero()
            if value:
                entries[(i, j, k)] = value
    limit = StructureConstants(sc.dim, entries)
    report = validate_law(limit)
    assert report.ok, "limit of a Lie law failed the Jacobi check"
    return limit


def contract_constant(sc: StructureConstants, matrix: ExactMatrix) -> StructureConstants:
    """Consistency path: a constant family is an ordinary basis change."""
    from .structure import BasisChange

    return apply_basis_change(sc, BasisChange(matrix))


def iw_family(sc: StructureConstants, subalgebra_size: int) -> ParametricFamily:
    """(1+eps) on the first p basis lines, eps on the complement.

    The flagged indices must span a subalgebra; the contraction limit then
    splits as that subalgebra plus an abelian ideal.
    """
    p = subalgebra_size
    n = sc.dim
    if not (0 <= p <= n):
        raise ValueError("subalgebra size out of range")
    for i, j in combinations(range(p), 2):
        for k in range(p, n):
            if sc.c(i, j, k):
                raise NotASubalgebra(
                    f"[e{i + 1},e{j + 1}] leaves the flagged span (component e{k + 1})"
                )
    one_plus = EPS_ONE + EpsilonScalar.eps(1)
    diag = [one_plus] * p + [EpsilonScalar.eps(1)] * (n - p)
    return ParametricFamily.diagonal(diag)


def ww_family(weights) -> ParametricFamily:
    """Diagonal family eps^{n_i} with integer exponents."""
    return ParametricFamily.diagonal(
        [EpsilonScalar.eps(int(w)) for w in weights]
    )


def saletan_family(g: ExactMatrix) -> ParametricFamily:
    """eps Id + (1 - eps) g for a singular endomorphism g."""
    if not g.is_square():
        raise ValueError("saletan operator must be square")
    if g.determinant():
        raise SaletanRequiresSingular("saletan family needs det(g) == 0")
    n = g.rows
    one_minus = EPS_ONE - EpsilonScalar.eps(1)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = one_minus * EpsilonScalar.from_const(g[i, j])
            if i == j:
                entry = entry + EpsilonScalar.eps(1)
            row.append(entry)
        rows.append(row)
    return ParametricFamily(ExactMatrix(rows))


def saletan_sequence(sc: StructureConstants, g: ExactMatrix) -> list:
    """Iterate the Saletan contraction until two consecutive laws agree."""
    family = saletan_family(g)
    chain = [sc]
    for _ in range(sc.dim + 2):
        nxt = contract(chain[-1], family)
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)
    raise RuntimeError("saletan sequence failed to become stationary")


@dataclass(frozen=True)
class Condition:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class NecessaryConditionsReport:
    conditions: tuple

    @property
    def possible(self) -> bool:
        return all(c.passed for c in self.conditions)


def _padded(dims_a, dims_b):
    length = max(len(dims_a), len(dims_b))
    pad = lambda d: d + (d[-1],) * (length - len(d))
    return pad(dims_a), pad(dims_b)


def contraction_invariant_check(
    source: StructureConstants, target: StructureConstants
) -> NecessaryConditionsReport:
    """Necessary conditions for `target` to be a contraction of `source`.

    Advisory only: a passing report never claims a contraction exists.
    Degenerations can only grow stabilizer-type invariants (derivations,
    center) and shrink bracket-span invariants (both series).
    """
    if source.dim != target.dim:
        raise DimensionMismatch("contraction preserves the dimension")
    conditions = []

    der_s = len(derivations(source))
    der_t = len(derivations(target))
    conditions.append(
        Condition(
            "derivation dimension grows",
            der_t >= der_s,
            f"dim Der: {der_s} -> {der_t}",
        )
    )

    fp_s = fingerprint(source)
    fp_t = fingerprint(target)
    if der_t == der_s:
        conditions.append(
            Condition(
                "equal derivation dimension forces equal fingerprints",
                fp_s == fp_t,
                "orbit dimensions agree, so a proper degeneration is excluded",
            )
        )

    for kind, series in (
        ("lower central", lower_central_series),
        ("derived", derived_series),
    ):
        ds, dt = _padded(series(source).dims, series(target).dims)
        conditions.append(
            Condition(
                f"{kind} series dims shrink",
                all(t <= s for s, t in zip(ds, dt)),
                f"{kind}: {list(ds)} -> {list(dt)}",
            )
        )

    cen_s, cen_t = len(center(source)), len(center(target))
    conditions.append(
        Condition(
            "center dimension grows",
            cen_t >= cen_s,
            f"dim center: {cen_s} -> {cen_t}",
        )
    )

    h1_t = cohomology_report(target).h(1)
    if h1_t == 0:
        conditions.append(
            Condition(
                "H1(target) = 0 pins the orbit",
                fp_s == fp_t,
                "a contraction onto a law with H1 = 0 is an isomorphism",
            )
        )

    return NecessaryConditionsReport(tuple(conditions))

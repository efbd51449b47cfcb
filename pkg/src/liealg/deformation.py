"""Formal deformations: degree-wise Jacobi residuals, step-wise integration
with obstruction classes, equivalence reduction, and the valued (flag)
decomposition of Laurent-parametrized perturbations.

Deformations are finitely truncated objects; there is no infinite formal
power series anywhere.  eps plays the role of the deformation parameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import linalg
from .cochains import Cochain, alternating_circle, graded_bracket
from .cohomology import coboundary, is_coboundary
from .errors import (
    FirstTermNotCocycle,
    NegativeValuation,
    NotACocycle,
    NotDecomposable,
)
from .linalg import ExactMatrix
from .scalars import EPS_ONE, GR_ONE, GR_ZERO, EpsilonScalar, laurent_gcd
from .structure import StructureConstants


@dataclass(frozen=True)
class FormalDeformation:
    """mu_0 plus finitely many 2-cochain coefficients with their degrees."""

    base: StructureConstants
    terms: tuple  # ((degree, Cochain), ...) with strictly increasing degrees
    truncation_order: int

    def __post_init__(self):
        if self.base.epsilon:
            raise ValueError("the base law must be constant")
        degrees = [d for d, _ in self.terms]
        if any(d < 1 for d in degrees):
            raise ValueError("term degrees must be positive")
        if any(a >= b for a, b in zip(degrees, degrees[1:])):
            raise ValueError("term degrees must be strictly increasing")
        for _, phi in self.terms:
            if phi.dim != self.base.dim or phi.arity != 2 or not phi.alternating:
                raise ValueError("terms must be alternating bilinear cochains")
            if phi.is_zero():
                raise ValueError("zero coefficients are not stored")
        if degrees and self.truncation_order < degrees[-1]:
            raise ValueError("truncation order below the highest term degree")

    @classmethod
    def build(cls, base, term_list, truncation_order) -> "FormalDeformation":
        """Normalize a {degree: cochain} mapping, dropping zero coefficients."""
        terms = tuple(
            (d, phi)
            for d, phi in sorted(dict(term_list).items())
            if not phi.is_zero()
        )
        return cls(base, terms, truncation_order)

    def coefficient(self, degree: int):
        for d, phi in self.terms:
            if d == degree:
                return phi
        return None

    @property
    def degrees(self) -> tuple:
        return tuple(d for d, _ in self.terms)

    def epsilon_law(self) -> StructureConstants:
        """mu_0 + sum eps^d phi_d as a law over the Laurent scalars."""
        entries = {}
        for i, j, k, val in self.base.items():
            entries[(i, j, k)] = EpsilonScalar.from_const(val)
        for d, phi in self.terms:
            for (i, j), vec in phi.table.items():
                for k, c in enumerate(vec):
                    if not c:
                        continue
                    cur = entries.get((i, j, k), EpsilonScalar.zero())
                    entries[(i, j, k)] = cur + EpsilonScalar.eps(d, c)
        return StructureConstants(self.base.dim, entries, epsilon=True)


def deformation_residual(d: FormalDeformation, degree: int) -> Cochain:
    """Coefficient of eps^degree in mu_t o mu_t (cyclic product).

    Assembled directly from the expansion: delta(phi_degree) plus all cross
    products phi_i o phi_j with i + j = degree.
    """
    if degree > d.truncation_order:
        raise ValueError("degree beyond the truncation order")
    n = d.base.dim
    acc = Cochain.zero(n, 3, True)
    own = d.coefficient(degree)
    if own is not None:
        acc = acc + coboundary(d.base, own, 3)
    for i, phi_i in d.terms:
        if i >= degree:
            break
        phi_j = d.coefficient(degree - i)
        if phi_j is not None:
            acc = acc + alternating_circle(phi_i, phi_j)
    return acc


def epsilon_jacobi_coefficient(law_eps: StructureConstants, degree: int) -> Cochain:
    """Independent cross-check: eps^degree coefficient of the cyclic Jacobi
    sum of an eps-law, evaluated on basis triples."""
    from .structure import jacobi_residual

    n = law_eps.dim
    table = {}
    for key in combinations(range(n), 3):
        res = jacobi_residual(law_eps, *key)
        vec = tuple(s.coefficient(degree) for s in res)
        if any(vec):
            table[key] = vec
    return Cochain(n, 3, True, table)


@dataclass(frozen=True)
class ObstructionClass:
    """A degree-p obstruction: a 3-cocycle representative and its class."""

    representative: Cochain
    vanishes: bool
    preimage: object  # Cochain | None

    def __post_init__(self):
        assert self.vanishes == (self.preimage is not None)


def integrate_step(base: StructureConstants, established):
    """Solve the next equation of the deformation system.

    established holds phi_1..phi_{p-1} (contiguous degrees); the degree-p
    right-hand side is checked to be a 3-cocycle, then either some phi_p
    with delta(phi_p) = rhs is returned or the nonvanishing obstruction.
    """
    established = list(established)
    p = len(established) + 1
    n = base.dim
    rhs = Cochain.zero(n, 3, True)
    for i in range(1, p):
        j = p - i
        if 1 <= j <= len(established):
            rhs = rhs + alternating_circle(established[i - 1], established[j - 1])
    rhs = -rhs
    if not coboundary(base, rhs, 4).is_zero():
        raise NotACocycle(
            "right-hand side is not a 3-cocycle; the established terms do not "
            "solve the lower-degree system"
        )
    preimage = is_coboundary(base, rhs)
    if preimage is not None:
        return preimage
    return ObstructionClass(rhs, False, None)


def rim_square(base: StructureConstants, phi: Cochain) -> ObstructionClass:
    """Quadratic obstruction class of [phi o phi] for a 2-cocycle phi."""
    if not coboundary(base, phi, 3).is_zero():
        raise NotACocycle("rim square needs a 2-cocycle")
    rep = alternating_circle(phi, phi)
    preimage = is_coboundary(base, rep)
    return ObstructionClass(rep, preimage is not None, preimage)


@dataclass(frozen=True)
class IntegrationResult:
    deformation: FormalDeformation
    obstruction: object  # ObstructionClass | None
    failed_degree: object  # int | None

    @property
    def ok(self) -> bool:
        return self.obstruction is None


def integrate(base: StructureConstants, phi1: Cochain, order: int) -> IntegrationResult:
    """Order-by-order integration of an infinitesimal term up to a degree."""
    if not coboundary(base, phi1, 3).is_zero():
        raise NotACocycle("the infinitesimal term must be a 2-cocycle")
    established = [phi1]
    for p in range(2, order + 1):
        step = integrate_step(base, established)
        if isinstance(step, ObstructionClass):
            terms = {d + 1: phi for d, phi in enumerate(established)}
            return IntegrationResult(
                FormalDeformation.build(base, terms, order), step, p
            )
        established.append(step)
    terms = {d + 1: phi for d, phi in enumerate(established)}
    return IntegrationResult(FormalDeformation.build(base, terms, order), None, None)


# -- formal equivalence -----------------------------------------------------


def _truncated_inverse(matrix, n, order):
    """(Id + N)^-1 mod eps^(order+1) for N of positive valuation."""
    ident = ExactMatrix.identity(
        n, one=EpsilonScalar.one(), zero=EpsilonScalar.zero()
    )
    nil = ExactMatrix(
        [
            [matrix[i, j] - ident[i, j] for j in range(n)]
            for i in range(n)
        ]
    )
    acc = ident
    power = ident
    sign = 1
    for _ in range(order):
        power = _truncate_matrix(power * nil, order)
        sign = -sign
        if all(not power[i, j] for i in range(n) for j in range(n)):
            break
        acc = acc + (power if sign > 0 else power.scale(-1))
    return acc


def _truncate_matrix(matrix, order):
    return ExactMatrix(
        [[e.truncate(order) for e in row] for row in matrix.entries]
    )


def _conjugate_epsilon_law(law_eps, phi_matrix, order):
    """phi^-1(mu(phi X, phi Y)) truncated to the given eps-order."""
    n = law_eps.dim
    inv = _truncated_inverse(phi_matrix, n, order)
    entries = {}
    for i, j in combinations(range(n), 2):
        transported = law_eps.bracket(phi_matrix.column(i), phi_matrix.column(j))
        transported = [e.truncate(order) for e in transported]
        vec = inv.apply(transported)
        for k, val in enumerate(vec):
            val = val.truncate(order)
            if val:
                entries[(i, j, k)] = val
    return StructureConstants(n, entries, epsilon=True)


def _terms_from_epsilon_law(law_eps, base, order):
    n = base.dim
    terms = {}
    for deg in range(1, order + 1):
        table = {}
        for i, j in combinations(range(n), 2):
            vec = tuple(
                law_eps.c(i, j, k).coefficient(deg) for k in range(n)
            )
            if any(vec):
                table[(i, j)] = vec
        phi = Cochain(n, 2, True, table)
        if not phi.is_zero():
            terms[deg] = phi
    constant = {
        (i, j, k): val.constant_coefficient()
        for i, j, k, val in law_eps.items()
        if val.constant_coefficient()
    }
    assert StructureConstants(n, constant) == base, "conjugation moved the base law"
    return terms


def equivalence_reduce(d: FormalDeformation) -> FormalDeformation:
    """Strip leading coboundary terms by conjugating with Id - eps^k g.

    Repeats while the lowest-degree coefficient is exact; the result either
    has no terms up to the truncation order or leads with a non-coboundary
    cocycle.
    """
    base = d.base
    n = base.dim
    order = d.truncation_order
    current = d
    while current.terms:
        degree, phi = current.terms[0]
        g = is_coboundary(base, phi)
        if g is None:
            return current
        g_matrix = ExactMatrix(
            [
                [
                    (EpsilonScalar.one() if i == j else EpsilonScalar.zero())
                    - EpsilonScalar.eps(degree, g.value_at((j,))[i])
                    for j in range(n)
                ]
                for i in range(n)
            ]
        )
        conjugated = _conjugate_epsilon_law(current.epsilon_law(), g_matrix, order)
        current = FormalDeformation.build(
            base, _terms_from_epsilon_law(conjugated, base, order), order
        )
    return current


# -- valued decomposition ---------------------------------------------------


@dataclass(frozen=True)
class FlagDecomposition:
    """v = b1 V1 + b1 b2 V2 + ... + b1..bh Vh with independent constant Vi."""

    multipliers: tuple  # EpsilonScalar, positive valuation each
    vectors: tuple  # tuples of GaussianRational

    @property
    def length(self) -> int:
        return len(self.vectors)

    def prefix_products(self) -> list:
        out = []
        acc = EPS_ONE
        for b in self.multipliers:
            acc = acc * b
            out.append(acc)
        return out

    def reconstruct(self, width: int) -> tuple:
        entries = [EpsilonScalar.zero()] * width
        for prefix, vec in zip(self.prefix_products(), self.vectors):
            for t, coord in enumerate(vec):
                if coord:
                    entries[t] = entries[t] + prefix * EpsilonScalar.from_const(coord)
        return tuple(entries)

    def flag(self) -> list:
        """Nested spans span(V1..Vi) as RREF bases (the invariant of the
        decomposition: only these flags are unique, not the Vi themselves)."""
        return [
            linalg.span_basis(self.vectors[: i + 1]) for i in range(len(self.vectors))
        ]


def valued_decompose(entries) -> FlagDecomposition:
    """Exact flag decomposition of a vector with entries in the maximal ideal.

    Greedy content extraction: peel off the gcd of the entries, read the
    constant-term vector, recurse on the remainder.  The result reconstructs
    the input exactly; its length equals the dimension of the coefficient
    span.  Inputs whose exact decomposition would need power-series
    multipliers (they exist: the Laurent model is not a valuation ring)
    raise NotDecomposable.
    """
    entries = [e if isinstance(e, EpsilonScalar) else EpsilonScalar.from_const(e) for e in entries]
    width = len(entries)
    for e in entries:
        if not e.is_zero() and e.valuation() < 1:
            raise NegativeValuation(f"entry {e} has valuation < 1")
    multipliers = []
    vectors = []
    current = list(entries)
    while any(not e.is_zero() for e in current):
        content = EpsilonScalar.zero()
        for e in current:
            if not e.is_zero():
                content = laurent_gcd(content, e)
        peeled = [e.exact_div(content) if not e.is_zero() else e for e in current]
        lead = tuple(e.constant_coefficient() for e in peeled)
        multipliers.append(content)
        vectors.append(lead)
        current = [
            p - EpsilonScalar.from_const(c) for p, c in zip(peeled, lead)
        ]
    if vectors and linalg.span_rank(vectors) != len(vectors):
        raise NotDecomposable(
            "no exact flag decomposition with Laurent-polynomial multipliers; "
            "the extracted directions are dependent"
        )
    decomposition = FlagDecomposition(tuple(multipliers), tuple(vectors))
    assert decomposition.reconstruct(width) == tuple(entries)
    return decomposition


@dataclass(frozen=True)
class PerturbationDecomposition:
    multipliers: tuple  # EpsilonScalar
    cochains: tuple  # alternating bilinear Cochain

    @property
    def length(self) -> int:
        return len(self.cochains)


def _flat_keys(n: int):
    return [(i, j, k) for i, j in combinations(range(n), 2) for k in range(n)]


def perturbation_decompose(
    perturbed: StructureConstants, base: StructureConstants
) -> PerturbationDecomposition:
    """Flag-decompose mu' - mu_0 into independent bilinear directions.

    The difference tensor must have entries of positive valuation.  The
    leading cochain is checked to be a 2-cocycle of the base law; failure
    indicates the perturbed law does not satisfy Jacobi over the Laurent
    field.
    """
    if base.epsilon:
        raise ValueError("base law must be constant")
    if perturbed.dim != base.dim:
        raise ValueError("dimension mismatch")
    mu_eps = perturbed if perturbed.epsilon else perturbed.lift_to_epsilon()
    n = base.dim
    keys = _flat_keys(n)
    diff = []
    for (i, j, k) in keys:
        delta = mu_eps.c(i, j, k) - EpsilonScalar.from_const(base.c(i, j, k))
        if not delta.is_zero() and delta.valuation() < 1:
            raise NegativeValuation(
                f"difference entry C^{k + 1}_{i + 1}{j + 1} = {delta} is not in the maximal ideal"
            )
        diff.append(delta)
    flag = valued_decompose(diff)
    cochains = []
    for vec in flag.vectors:
        table = {}
        for (i, j, k), value in zip(keys, vec):
            if value:
                cur = list(table.get((i, j), (GR_ZERO,) * n))
                cur[k] = value
                table[(i, j)] = tuple(cur)
        cochains.append(Cochain(n, 2, True, table))
    if cochains:
        first = cochains[0]
        if not coboundary(base, first, 3).is_zero():
            raise FirstTermNotCocycle(
                "leading decomposition term is not a 2-cocycle of the base law"
            )
    return PerturbationDecomposition(tuple(flag.multipliers), tuple(cochains))


@dataclass(frozen=True)
class MaxRankReport:
    span_dim: int
    bound: int
    maximal: bool


def max_rank_check(base: StructureConstants, phis) -> MaxRankReport:
    """Span of the bracket/coboundary system attached to phi_1..phi_k.

    Generators: [phi_i, phi_j] for 1 <= i <= j <= k-1 and delta(phi_i) for
    2 <= i <= k-1; the bound is k(k-1)/2.
    """
    phis = list(phis)
    k = len(phis)
    generators = []
    for i in range(1, k):
        for j in range(i, k):
            generators.append(graded_bracket(phis[i - 1], phis[j - 1]))
    for i in range(2, k):
        generators.append(coboundary(base, phis[i - 1], 3))
    vecs = [g.coordinates() for g in generators if not g.is_zero()]
    span_dim = linalg.span_rank(vecs)
    bound = k * (k - 1) // 2
    return MaxRankReport(span_dim, bound, span_dim == bound)

"""The variety viewpoint: Jacobi polynomial generators, orbit dimension,
tangent-space dimensions and the cohomological rigidity certificate."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .cohomology import NORMALIZATION_NOTE, cohomology_report
from .scalars import GR_ZERO
from .structure import StructureConstants, derivations


def _canon(i: int, j: int, k: int):
    """Canonical variable C^k_{ij} with i < j; returns (var, sign) or None."""
    if i == j:
        return None
    if i < j:
        return (i, j, k), 1
    return (j, i, k), -1


@dataclass(frozen=True)
class JacobiPolynomial:
    """One scalar Jacobi generator, tagged by its triple and component.

    terms maps unordered variable pairs (var_a, var_b), each variable a
    canonical index triple of a structure constant, to integer coefficients.
    """

    triple: tuple  # (i, j, k), 0-based, i < j < k
    component: int  # s, 0-based
    terms: tuple  # ((pair, coeff), ...) sorted

    def evaluate(self, sc: StructureConstants):
        acc = GR_ZERO
        for (va, vb), coeff in self.terms:
            prod = sc.c(*va) * sc.c(*vb)
            if coeff != 1:
                prod = prod * coeff
            acc = acc + prod
        return acc


@dataclass(frozen=True)
class JacobiSystem:
    dim: int
    generators: tuple

    def evaluate(self, sc: StructureConstants) -> dict:
        """Nonzero residuals indexed by (triple, component)."""
        out = {}
        for gen in self.generators:
            value = gen.evaluate(sc)
            if value:
                out[(gen.triple, gen.component)] = value
        return out


def jacobi_polynomials(n: int) -> JacobiSystem:
    """The binomial(n,3) * n scalar generators cutting out the Lie laws.

    For the triple i < j < k and component s the generator is
    sum_l C^l_{ij} C^s_{lk} + C^l_{jk} C^s_{li} + C^l_{ki} C^s_{lj};
    evaluating at a law reproduces the Jacobi residuals exactly.
    """
    if n < 1:
        raise ValueError("dimension must be positive")
    generators = []
    for (i, j, k) in combinations(range(n), 3):
        for s in range(n):
            terms: dict = {}
            for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                for l in range(n):
                    first = _canon(a, b, l)
                    if first is None:
                        continue
                    second = _canon(l, c, s)
                    if second is None:
                        continue
                    (v1, s1), (v2, s2) = first, second
                    pair = (v1, v2) if v1 <= v2 else (v2, v1)
                    terms[pair] = terms.get(pair, 0) + s1 * s2
            cleaned = tuple(
                sorted((pair, coeff) for pair, coeff in terms.items() if coeff)
            )
            generators.append(JacobiPolynomial((i, j, k), s, cleaned))
    return JacobiSystem(n, tuple(generators))


def orbit_dimension(sc: StructureConstants) -> int:
    """dim of the isomorphism orbit: n^2 - dim Der(mu)."""
    return sc.dim * sc.dim - len(derivations(sc))


@dataclass(frozen=True)
class TangentReport:
    orbit_tangent: int  # dim B^2
    variety_tangent: int  # dim Z^2
    scheme_tangent: int  # dim Z^2 (scheme and variety tangents agree)


def tangent_dims(sc: StructureConstants) -> TangentReport:
    """Tangent dimensions at the law; checks B^2 against the orbit dimension
    computed through the independent derivation solver."""
    report = cohomology_report(sc)
    b2, z2 = report.b(2), report.z(2)
    assert b2 == orbit_dimension(sc), "orbit tangent disagrees with n^2 - dim Der"
    return TangentReport(b2, z2, z2)


@dataclass(frozen=True)
class RigidityVerdict:
    status: str  # "Rigid" | "Inconclusive"
    dim_b2: int
    dim_z2: int
    dim_h2: int
    orbit_dim: int
    ambient_dim: int
    note: str

    @property
    def rigid(self) -> bool:
        return self.status == "Rigid"


def rigidity_verdict(sc: StructureConstants) -> RigidityVerdict:
    """H^2 = 0 certifies an open orbit; anything else stays inconclusive.

    Rigidity with H^2 != 0 does occur (it forces a non-reduced scheme
    point), so a nonzero H^2 never justifies claiming non-rigidity.
    """
    report = cohomology_report(sc)
    b2, z2, h2 = report.b(2), report.z(2), report.h(2)
    orbit = orbit_dimension(sc)
    if h2 == 0:
        status, note = "Rigid", "H2 = 0: the orbit is open (open-orbit criterion)"
    else:
        status, note = (
            "Inconclusive",
            f"H2 = {h2} != 0: rigidity would force a non-reduced scheme point; "
            "no verdict either way",
        )
    return RigidityVerdict(status, b2, z2, h2, orbit, sc.dim * sc.dim, note)

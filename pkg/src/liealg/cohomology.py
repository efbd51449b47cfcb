"""Chevalley-Eilenberg cohomology of a Lie law acting on itself.

Cochain spaces C^p (alternating p-linear maps with values in the algebra)
are materialized as coordinate spaces over increasing index tuples, so the
coboundaries become explicit exact matrices and every dimension is a rank.

Normalization: on bilinear cochains the coboundary is delta(phi) =
mu o phi + phi o mu with the cyclic three-term product; on endomorphisms it
is the classical delta(g)(X,Y) = -g(mu(X,Y)) + mu(g X, Y) + mu(X, g Y).
Every report states this convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from . import linalg
from .cochains import Cochain
from .errors import DegreeOutOfRange
from .linalg import ExactMatrix
from .scalars import GR_ZERO
from .structure import StructureConstants

NORMALIZATION_NOTE = (
    "coboundary normalization: delta(g)(X,Y) = -g(mu(X,Y)) + mu(gX,Y) + mu(X,gY); "
    "on 2-cochains delta(phi) = mu o phi + phi o mu (cyclic products)"
)

MAX_DEGREE = 3  # reports cover H^0..H^3; obstructions live in H^3


def cochain_space_dim(n: int, p: int) -> int:
    return comb(n, p) * n


def coboundary(sc: StructureConstants, phi: Cochain, p: int) -> Cochain:
    """The differential C^{p-1} -> C^p; phi must be alternating of arity p-1.

    Signs are fixed so that (a) p=2 reproduces the classical endomorphism
    formula, (b) p=3 equals mu o phi + phi o mu, and (c) delta о delta = 0.
    """
    if p < 1 or p > MAX_DEGREE + 1:
        raise DegreeOutOfRange(f"coboundary degree {p} not in 1..{MAX_DEGREE + 1}")
    if phi.arity != p - 1:
        raise DegreeOutOfRange(
            f"expected a cochain with {p - 1} inputs, got {phi.arity}"
        )
    if not phi.alternating:
        raise DegreeOutOfRange("coboundary needs an alternating cochain")
    if phi.dim != sc.dim:
        raise ValueError("cochain dimension mismatch")
    n = sc.dim
    table = {}
    for key in combinations(range(n), p):
        acc = [GR_ZERO] * n
        # sum_i (-1)^i mu(e_{t_i}, phi(... t_i dropped ...))
        for pos in range(p):
            rest = key[:pos] + key[pos + 1 :]
            inner = phi.value_at(rest)
            if not any(inner):
                continue
            vec = sc.bracket(_basis(n, key[pos]), inner)
            if pos % 2 == 0:
                for t in range(n):
                    acc[t] = acc[t] + vec[t]
            else:
                for t in range(n):
                    acc[t] = acc[t] - vec[t]
        # sum_{i<j} (-1)^{i+j} phi(mu(e_{t_i}, e_{t_j}), ... both dropped ...)
        for a in range(p):
            for b in range(a + 1, p):
                bracket = sc.bracket_basis(key[a], key[b])
                if not any(bracket):
                    continue
                rest = tuple(key[t] for t in range(p) if t != a and t != b)
                sign = (-1) ** (a + b)
                for l, coeff in enumerate(bracket):
                    if not coeff:
                        continue
                    vec = phi.value_at((l,) + rest)
                    for t in range(n):
                        term = coeff * vec[t]
                        acc[t] = acc[t] + (term if sign > 0 else -term)
        if any(acc):
            table[key] = tuple(acc)
    result = Cochain(n, p, True, table)
    if p == 3:
        # global sign flip: matches mu o phi + phi o mu exactly
        result = -result
    return result


_matrix_cache: dict = {}


def coboundary_matrix(sc: StructureConstants, p: int) -> ExactMatrix:
    """Matrix of delta: C^p -> C^{p+1} in the canonical coordinates."""
    cache_key = (sc.canonical_key(), p)
    hit = _matrix_cache.get(cache_key)
    if hit is not None:
        return hit
    if len(_matrix_cache) > 512:
        _matrix_cache.clear()
    n = sc.dim
    src = [(key, k) for key in combinations(range(n), p) for k in range(n)]
    cols = []
    for key, k in src:
        vec = [GR_ZERO] * n
        vec[k] = _one()
        basis_cochain = Cochain(n, p, True, {key: tuple(vec)} if p else {(): tuple(vec)})
        image = coboundary(sc, basis_cochain, p + 1)
        cols.append(image.coordinates())
    rows = cochain_space_dim(n, p + 1)
    if not cols:
        matrix = ExactMatrix.zero(rows, 0)
    else:
        matrix = ExactMatrix(cols).transpose()
    _matrix_cache[cache_key] = matrix
    return matrix


def _one():
    from .scalars import GR_ONE

    return GR_ONE


def _basis(n: int, j: int) -> tuple:
    return tuple(_one() if t == j else GR_ZERO for t in range(n))


@dataclass(frozen=True)
class DegreeReport:
    degree: int
    dim_cochains: int
    dim_cocycles: int
    dim_coboundaries: int

    @property
    def dim_h(self) -> int:
        return self.dim_cocycles - self.dim_coboundaries


@dataclass(frozen=True)
class CohomologyReport:
    dim: int
    degrees: tuple  # DegreeReport for p = 0..3

    def h(self, p: int) -> int:
        return self.degrees[p].dim_h

    def z(self, p: int) -> int:
        return self.degrees[p].dim_cocycles

    def b(self, p: int) -> int:
        return self.degrees[p].dim_coboundaries

    @property
    def h_dims(self) -> tuple:
        return tuple(d.dim_h for d in self.degrees)


def cohomology_report(sc: StructureConstants) -> CohomologyReport:
    """Exact dims of C/Z/B/H for p = 0..3 via ranks of the coboundaries."""
    n = sc.dim
    ranks = {}
    for p in range(0, MAX_DEGREE + 1):
        ranks[p] = linalg.rank(coboundary_matrix(sc, p))
    degrees = []
    for p in range(0, MAX_DEGREE + 1):
        dim_c = cochain_space_dim(n, p)
        dim_z = dim_c - ranks[p]
        dim_b = ranks[p - 1] if p > 0 else 0
        assert dim_b <= dim_z <= dim_c
        degrees.append(DegreeReport(p, dim_c, dim_z, dim_b))
    return CohomologyReport(n, tuple(degrees))


def cocycle_basis(sc: StructureConstants, p: int) -> list:
    """Basis of Z^p = ker(delta_p) as alternating cochains."""
    if p < 0 or p > MAX_DEGREE:
        raise DegreeOutOfRange(f"cocycle degree {p} not in 0..{MAX_DEGREE}")
    matrix = coboundary_matrix(sc, p)
    return [
        Cochain.from_coordinates(sc.dim, p, True, vec)
        for vec in linalg.kernel_basis(matrix)
    ]


def is_coboundary(sc: StructureConstants, psi: Cochain):
    """A preimage g with delta(g) == psi, or None when psi is not exact."""
    p = psi.arity
    if p < 1 or p > MAX_DEGREE + 1:
        raise DegreeOutOfRange(f"degree {p} not in 1..{MAX_DEGREE + 1}")
    if not psi.alternating:
        raise DegreeOutOfRange("membership test needs an alternating cochain")
    matrix = coboundary_matrix(sc, p - 1)
    solution = linalg.solve(matrix, psi.coordinates())
    if solution is None:
        return None
    return Cochain.from_coordinates(sc.dim, p - 1, True, solution)


def is_cocycle(sc: StructureConstants, phi: Cochain) -> bool:
    return coboundary(sc, phi, phi.arity + 1).is_zero()


def fingerprint(sc: StructureConstants) -> tuple:
    """Necessary-condition isomorphism fingerprint.

    (dim, series dims, center dim, dim Der, H^0..H^3); equal laws get equal
    fingerprints under any basis change, so differing fingerprints certify
    non-isomorphism.  The converse is not claimed.
    """
    from .structure import fingerprint_structural

    return fingerprint_structural(sc) + (cohomology_report(sc).h_dims,)

"""Multilinear maps and the insertion-product calculus on them.

Degrees follow the graded convention: a map with p+1 inputs has degree p,
so endomorphisms sit in degree 0, bilinear maps in degree 1, and plain
vectors in degree -1.  Alternating cochains store only strictly increasing
index tuples; evaluation applies permutation signs.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

from .errors import (
    IndexOutOfRange,
    NilindexTooLarge,
    NotAlternating,
    NotLieAdmissible,
)
from .scalars import GR_ONE, GR_ZERO, GaussianRational
from .structure import StructureConstants, classify_structure


def _perm_sign_and_sorted(indices):
    """(sign, sorted tuple) of an index tuple; sign 0 on repeats."""
    order = sorted(range(len(indices)), key=lambda t: indices[t])
    sorted_ix = tuple(indices[t] for t in order)
    for a, b in zip(sorted_ix, sorted_ix[1:]):
        if a == b:
            return 0, sorted_ix
    sign = 1
    seen = list(order)
    for start in range(len(seen)):
        while seen[start] != start:
            tgt = seen[start]
            seen[start], seen[tgt] = seen[tgt], seen[start]
            sign = -sign
    return sign, sorted_ix


class Cochain:
    """A p-multilinear map on basis vectors with vector values."""

    __slots__ = ("dim", "arity", "alternating", "table")

    def __init__(self, dim: int, arity: int, alternating: bool, table=None):
        if arity < 0:
            raise ValueError("negative arity")
        clean = {}
        zero_vec = (GR_ZERO,) * dim
        for key, vec in (table or {}).items():
            key = tuple(key)
            vec = tuple(
                v if isinstance(v, GaussianRational) else GaussianRational(v)
                for v in vec
            )
            if len(key) != arity or len(vec) != dim:
                raise ValueError("malformed cochain table")
            if alternating and any(a >= b for a, b in zip(key, key[1:])):
                raise ValueError("alternating tables are indexed by increasing tuples")
            if vec != zero_vec:
                clean[key] = vec
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "alternating", alternating)
        object.__setattr__(self, "table", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Cochain is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, dim: int, arity: int, alternating: bool = False) -> "Cochain":
        return cls(dim, arity, alternating)

    @classmethod
    def from_law(cls, sc: StructureConstants) -> "Cochain":
        """The law's bilinear map as an alternating 2-cochain."""
        if sc.epsilon:
            raise TypeError("eps-laws cannot be turned into constant cochains")
        table = {}
        for i, j, k, val in sc.items():
            vec = list(table.get((i, j), (GR_ZERO,) * sc.dim))
            vec[k] = val
            table[(i, j)] = tuple(vec)
        return cls(sc.dim, 2, True, table)

    @classmethod
    def from_endomorphism(cls, matrix) -> "Cochain":
        table = {}
        for j in range(matrix.cols):
            col = matrix.column(j)
            table[(j,)] = col
        return cls(matrix.rows, 1, True, table)

    @classmethod
    def from_vector(cls, vec) -> "Cochain":
        """Degree -1 cochain: a plain vector (zero inputs)."""
        return cls(len(vec), 0, True, {(): tuple(vec)})

    # -- structure -----------------------------------------------------------

    @property
    def degree(self) -> int:
        return self.arity - 1

    def zero_vector(self) -> tuple:
        return (GR_ZERO,) * self.dim

    def value_at(self, indices) -> tuple:
        """Value on a basis tuple, applying alternating signs when needed."""
        indices = tuple(indices)
        if not self.alternating:
            return self.table.get(indices, self.zero_vector())
        sign, key = _perm_sign_and_sorted(indices)
        if sign == 0:
            return self.zero_vector()
        vec = self.table.get(key)
        if vec is None:
            return self.zero_vector()
        if sign < 0:
            return tuple(-v for v in vec)
        return vec

    def to_law(self) -> StructureConstants:
        if self.arity != 2 or not self.alternating:
            raise ValueError("only alternating 2-cochains define a candidate law")
        entries = {}
        for (i, j), vec in self.table.items():
            for k, val in enumerate(vec):
                if val:
                    entries[(i, j, k)] = val
        return StructureConstants(self.dim, entries)

    def basis_keys(self):
        """Canonical ordered index tuples for the coordinate projection."""
        if self.alternating:
            return list(combinations(range(self.dim), self.arity))
        return list(product(range(self.dim), repeat=self.arity))

    def coordinates(self) -> tuple:
        """Flatten to the canonical coordinate vector (tuples x target index)."""
        coords = []
        for key in self.basis_keys():
            vec = self.table.get(key, self.zero_vector())
            coords.extend(vec)
        return tuple(coords)

    @classmethod
    def from_coordinates(
        cls, dim: int, arity: int, alternating: bool, coords
    ) -> "Cochain":
        keys = (
            list(combinations(range(dim), arity))
            if alternating
            else list(product(range(dim), repeat=arity))
        )
        table = {}
        it = iter(coords)
        for key in keys:
            vec = tuple(next(it) for _ in range(dim))
            table[key] = vec
        return cls(dim, arity, alternating, table)

    # -- linear structure ----------------------------------------------------

    def _compatible(self, other: "Cochain"):
        if self.dim != other.dim or self.arity != other.arity:
            raise ValueError("cochain shape mismatch")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        if self.alternating == other.alternating:
            table = dict(self.table)
            for key, vec in other.table.items():
                cur = table.get(key, self.zero_vector())
                table[key] = tuple(a + b for a, b in zip(cur, vec))
            return Cochain(self.dim, self.arity, self.alternating, table)
        left, right = self.densify(), other.densify()
        return left + right

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + other.scale(GaussianRational(-1))

    def scale(self, scalar) -> "Cochain":
        if not isinstance(scalar, GaussianRational):
            scalar = GaussianRational(scalar)
        return Cochain(
            self.dim,
            self.arity,
            self.alternating,
            {key: tuple(scalar * v for v in vec) for key, vec in self.table.items()},
        )

    def __neg__(self) -> "Cochain":
        return self.scale(GaussianRational(-1))

    def densify(self) -> "Cochain":
        """Non-alternating dense copy (expands signs onto all tuples)."""
        if not self.alternating:
            return self
        table = {}
        for key in product(range(self.dim), repeat=self.arity):
            vec = self.value_at(key)
            if any(vec):
                table[key] = vec
        return Cochain(self.dim, self.arity, False, table)

    def alternate_part(self) -> "Cochain":
        """Restriction to increasing tuples, stored alternating.

        Only valid when the dense map is genuinely alternating; raises
        NotAlternating otherwise.
        """
        if self.alternating:
            return self
        for key in product(range(self.dim), repeat=self.arity):
            sign, sorted_key = _perm_sign_and_sorted(key)
            expected = (
                self.zero_vector()
                if sign == 0
                else tuple(
                    (v if sign > 0 else -v)
                    for v in self.table.get(sorted_key, self.zero_vector())
                )
            )
            if self.table.get(key, self.zero_vector()) != expected:
                raise NotAlternating(f"map is not alternating at {key}")
        table = {
            key: vec
            for key, vec in self.table.items()
            if all(a < b for a, b in zip(key, key[1:]))
        }
        return Cochain(self.dim, self.arity, True, table)

    def is_zero(self) -> bool:
        return not self.table

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        if self.dim != other.dim or self.arity != other.arity:
            return False
        if self.alternating == other.alternating:
            return self.table == other.table
        return self.densify().table == other.densify().table

    def __hash__(self):
        return hash((self.dim, self.arity, frozenset(self.densify().table.items())))

    def __repr__(self):
        flavor = "alt" if self.alternating else "full"
        return f"Cochain(dim={self.dim}, arity={self.arity}, {flavor}, {len(self.table)} entries)"


def comp_i(phi: Cochain, i: int, psi: Cochain) -> Cochain:
    """Insertion phi o_i psi: feed psi's output into slot i of phi."""
    if phi.dim != psi.dim:
        raise ValueError("cochain dimension mismatch")
    if not (0 <= i <= phi.degree):
        raise IndexOutOfRange(f"slot {i} not in 0..{phi.degree}")
    n = phi.dim
    res_arity = phi.arity + psi.arity - 1
    table = {}
    for key in product(range(n), repeat=res_arity):
        left = key[:i]
        mid = key[i : i + psi.arity]
        right = key[i + psi.arity :]
        inner = psi.value_at(mid)
        acc = None
        for k, coeff in enumerate(inner):
            if not coeff:
                continue
            outer = phi.value_at(left + (k,) + right)
            if acc is None:
                acc = [coeff * v for v in outer]
            else:
                for t in range(n):
                    acc[t] = acc[t] + coeff * outer[t]
        if acc and any(acc):
            table[key] = tuple(acc)
    return Cochain(n, res_arity, False, table)


def circle(phi: Cochain, psi: Cochain) -> Cochain:
    """Signed sum of all insertions: signs (-1)^i exactly when deg(psi) is odd."""
    if phi.dim != psi.dim:
        raise ValueError("cochain dimension mismatch")
    n = phi.dim
    q_odd = psi.degree % 2 != 0
    result = Cochain.zero(n, phi.arity + psi.arity - 1, False)
    for i in range(phi.degree + 1):
        term = comp_i(phi, i, psi)
        if q_odd and i % 2 == 1:
            term = -term
        result = result + term
    return result


def alternating_circle(phi: Cochain, psi: Cochain) -> Cochain:
    """Cyclic three-term product of alternating bilinear maps.

    (phi o psi)(X,Y,Z) = phi(psi(X,Y),Z) + phi(psi(Y,Z),X) + phi(psi(Z,X),Y);
    an alternating mu satisfies Jacobi exactly when mu o mu == 0.
    """
    if phi.dim != psi.dim:
        raise ValueError("cochain dimension mismatch")
    if phi.arity != 2 or psi.arity != 2:
        raise ValueError("cyclic product is defined for bilinear cochains")
    if not (phi.alternating and psi.alternating):
        raise NotAlternating("cyclic product needs alternating inputs")
    n = phi.dim
    table = {}
    for key in combinations(range(n), 3):
        x, y, z = key
        acc = [GR_ZERO] * n
        for (a, b, c) in ((x, y, z), (y, z, x), (z, x, y)):
            inner = psi.value_at((a, b))
            for k, coeff in enumerate(inner):
                if not coeff:
                    continue
                outer = phi.value_at((k, c))
                for t in range(n):
                    acc[t] = acc[t] + coeff * outer[t]
        if any(acc):
            table[key] = tuple(acc)
    return Cochain(n, 3, True, table)


def graded_bracket(phi: Cochain, psi: Cochain) -> Cochain:
    """Symmetrized product [phi, psi] = phi o psi + psi o phi on bilinear maps.

    For alternating inputs the cyclic product is used, so [mu, phi] equals
    the coboundary of phi under this package's normalization.
    """
    if phi.arity != 2 or psi.arity != 2:
        raise ValueError("graded bracket is defined for bilinear cochains")
    if phi.alternating and psi.alternating:
        return alternating_circle(phi, psi) + alternating_circle(psi, phi)
    return circle(phi.densify(), psi.densify()) + circle(psi.densify(), phi.densify())


# Subgroups of the permutations of three letters, as position images,
# in the numbering used for the shuffle products G1..G6.
_ID = (0, 1, 2)
SIGMA3_SUBGROUPS = {
    "G1": (_ID,),
    "G2": (_ID, (1, 0, 2)),
    "G3": (_ID, (0, 2, 1)),
    "G4": (_ID, (2, 1, 0)),
    "G5": (_ID, (1, 2, 0), (2, 0, 1)),
    "G6": (_ID, (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)),
}

_PERM_SIGNS = {
    _ID: 1,
    (1, 0, 2): -1,
    (0, 2, 1): -1,
    (2, 1, 0): -1,
    (1, 2, 0): 1,
    (2, 0, 1): 1,
}


def circle_group(phi: Cochain, psi: Cochain, group: str) -> Cochain:
    """Signed shuffle-sum of phi o psi over a subgroup of Sigma_3.

    G1 reduces to the plain product; on alternating inputs G5 equals twice
    the cyclic product; G6 == 0 characterizes Lie-admissibility.
    """
    if phi.arity != 2 or psi.arity != 2:
        raise ValueError("shuffle products are defined for bilinear cochains")
    if group not in SIGMA3_SUBGROUPS:
        raise ValueError(f"unknown subgroup {group!r}")
    base = circle(phi.densify(), psi.densify())
    n = phi.dim
    table = {}
    for key in product(range(n), repeat=3):
        acc = [GR_ZERO] * n
        for perm in SIGMA3_SUBGROUPS[group]:
            sign = _PERM_SIGNS[perm]
            vec = base.value_at(tuple(key[perm[t]] for t in range(3)))
            for t in range(n):
                acc[t] = acc[t] + (vec[t] if sign > 0 else -vec[t])
        if any(acc):
            table[key] = tuple(acc)
    return Cochain(n, 3, False, table)


class NonassociativeProduct:
    """A plain bilinear product without symmetry assumptions."""

    __slots__ = ("dim", "table")

    def __init__(self, dim: int, table=None):
        clean = {}
        for (i, j), vec in (table or {}).items():
            vec = tuple(
                v if isinstance(v, GaussianRational) else GaussianRational(v)
                for v in vec
            )
            if not (0 <= i < dim and 0 <= j < dim) or len(vec) != dim:
                raise ValueError("malformed product table")
            if any(vec):
                clean[(i, j)] = vec
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "table", clean)

    def __setattr__(self, name, value):
        raise AttributeError("NonassociativeProduct is immutable")

    def to_cochain(self) -> Cochain:
        return Cochain(self.dim, 2, False, dict(self.table))

    def product(self, i: int, j: int) -> tuple:
        return self.table.get((i, j), (GR_ZERO,) * self.dim)


_CLASS_GROUPS = {
    "associative": "G1",
    "vinberg": "G2",
    "pre_lie": "G3",
    "lie_admissible": "G6",
}


def algebra_class_check(m: NonassociativeProduct, algebra_class: str) -> bool:
    """True iff m o_G m == 0 for the subgroup matching the class."""
    if algebra_class not in _CLASS_GROUPS:
        raise ValueError(f"unknown algebra class {algebra_class!r}")
    phi = m.to_cochain()
    return circle_group(phi, phi, _CLASS_GROUPS[algebra_class]).is_zero()


def commutator_law(m: NonassociativeProduct) -> StructureConstants:
    """[A,B] = AB - BA; defined exactly on Lie-admissible products."""
    if not algebra_class_check(m, "lie_admissible"):
        raise NotLieAdmissible("product fails the Lie-admissible identity")
    entries = {}
    for i in range(m.dim):
        for j in range(i + 1, m.dim):
            fwd = m.product(i, j)
            bwd = m.product(j, i)
            for k in range(m.dim):
                val = fwd[k] - bwd[k]
                if val:
                    entries[(i, j, k)] = val
    return StructureConstants(m.dim, entries)


def bch_product(sc: StructureConstants, x, y) -> tuple:
    """Truncated group product X.Y = X+Y+[X,Y]/2+[[X,Y],Y]/12-[[X,Y],X]/12.

    Exact for nilpotent laws of nilindex <= 3, where all longer brackets
    vanish; larger nilindex raises NilindexTooLarge.
    """
    report = classify_structure(sc)
    if report.nilindex is None or report.nilindex > 3:
        raise NilindexTooLarge("truncated product needs nilindex <= 3")
    x = tuple(x)
    y = tuple(y)
    half = GaussianRational(Fraction(1, 2))
    twelfth = GaussianRational(Fraction(1, 12))
    xy = sc.bracket(x, y)
    xyy = sc.bracket(xy, y)
    xyx = sc.bracket(xy, x)
    return tuple(
        xv + yv + half * b1 + twelfth * b2 - twelfth * b3
        for xv, yv, b1, b2, b3 in zip(x, y, xy, xyy, xyx)
    )


def cochain_span_dim(cochains) -> int:
    """Dimension of the span of same-shape cochains."""
    from . import linalg

    vecs = [c.coordinates() for c in cochains]
    vecs = [v for v in vecs if any(v)]
    if not vecs:
        return 0
    return linalg.rank(linalg.ExactMatrix(vecs))

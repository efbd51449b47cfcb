"""Named constructors for the concrete algebras used across the test suite
and the command line.

Catalog names and their parameter grammars are stable public identifiers.
Basis conventions are part of each entry's contract and documented on the
builder.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParams, UnknownName
from .scalars import GR_ONE, GaussianRational
from .structure import StructureConstants, validate_law


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: tuple  # sorted (key, value) pairs
    law: StructureConstants
    provenance: str  # basis convention / origin note


def _coeff(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    if isinstance(value, str):
        return GaussianRational(Fraction(value))
    raise BadParams(f"expected an exact rational parameter, got {value!r}")


def _int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise BadParams(f"parameter {name} must be an integer")
    return value


def _build_abelian(params):
    n = _int(params.get("n", 2), "n")
    if n < 0:
        raise BadParams("abelian needs n >= 0")
    return StructureConstants.abelian(n), f"zero law on dimension {n}"


def _build_two_dim(params):
    a = _coeff(params.get("a", 0))
    b = _coeff(params.get("b", 0))
    law = StructureConstants(2, {(0, 1, 0): a, (0, 1, 1): b})
    return law, "two-dimensional law [e1,e2] = a e1 + b e2"


def _build_r2(params):
    law = StructureConstants(2, {(0, 1, 1): GR_ONE})
    return law, "the non-abelian two-dimensional law [e1,e2] = e2"


def _build_heisenberg(params):
    p = _int(params.get("p", 1), "p")
    if p < 1:
        raise BadParams("heisenberg needs p >= 1")
    n = 2 * p + 1
    entries = {}
    for i in range(p):
        entries[(2 * i, 2 * i + 1, n - 1)] = GR_ONE
    law = StructureConstants(n, entries)
    return law, f"[e(2i+1),e(2i+2)] = e{n}; the center is the last basis line"


def _build_sl2(params):
    law = StructureConstants(
        3,
        {
            (0, 1, 1): GaussianRational(2),
            (0, 2, 2): GaussianRational(-2),
            (1, 2, 0): GR_ONE,
        },
    )
    return law, "simple 3-dimensional law in the (h, e, f) eigenbasis"


def _build_filiform_model(params):
    n = _int(params.get("n", 4), "n")
    if n < 3:
        raise BadParams("filiform_model needs n >= 3")
    entries = {(0, i, i + 1): GR_ONE for i in range(1, n - 1)}
    law = StructureConstants(n, entries)
    return law, "model filiform law [e1,ei] = e(i+1), i = 2..n-1"


def _build_filiform4(params):
    law = StructureConstants(4, {(0, 1, 2): GR_ONE, (0, 2, 3): GR_ONE})
    return law, "4-dimensional filiform law [e1,e2] = e3, [e1,e3] = e4"


def _build_double_r2(params):
    law = StructureConstants(4, {(0, 1, 1): GR_ONE, (2, 3, 3): GR_ONE})
    return law, "direct sum of two copies of r2: [e1,e2] = e2, [e3,e4] = e4"


def _build_frobenius_model(params):
    p = _int(params.get("p", 2), "p")
    if p < 2:
        raise BadParams("frobenius_model needs p >= 2")
    phi = params.get("phi", (0,) * (p - 1))
    if isinstance(phi, (int, Fraction, str)):
        phi = (phi,)
    phi = tuple(_coeff(v) for v in phi)
    if len(phi) != p - 1:
        raise BadParams(f"frobenius_model with p={p} needs a phi vector of length {p - 1}")
    # Dual convention d w(X, Y) = -w([X, Y]): d w_k = -sum C^k_{ij} w_i ^ w_j.
    # With the displayed Cartan-Maurer system this yields the brackets below;
    # the opposite convention differs by the isomorphism X2 -> -X2 only.
    entries = {(0, 1, 0): -GR_ONE}  # [X1, X2] = -X1
    for k in range(1, p):
        i, j = 2 * k, 2 * k + 1  # X_{2k+1}, X_{2k+2}, 0-based
        entries[(i, j, 0)] = -GR_ONE  # [X_{2k+1}, X_{2k+2}] = -X1
        if phi[k - 1]:
            entries[(1, i, i)] = -phi[k - 1]  # [X2, X_{2k+1}] = -phi_k X_{2k+1}
        entries[(1, j, j)] = GR_ONE + phi[k - 1]  # [X2, X_{2k+2}] = (1+phi_k) X_{2k+2}
    law = StructureConstants(2 * p, entries)
    return law, "frobeniusian model family in the graded basis (X2 | X3..X2p | X1)"


def _build_contact5(params):
    # sl2 (+) r2 written in a basis adapted to the contact form: the first
    # basis vector spans the X1-line dual to the contact form, and the
    # X1-components of the brackets are exactly the symplectic pairs
    # (e2,e3) and (e4,e5).
    two = GaussianRational(2)
    law = StructureConstants(
        5,
        {
            (0, 1, 1): two,
            (0, 2, 2): -two,
            (1, 2, 0): GR_ONE,
            (1, 3, 1): -two,
            (2, 3, 2): two,
            (3, 4, 0): GR_ONE,
            (3, 4, 3): -GR_ONE,
        },
    )
    return law, "5-dimensional contact algebra (sl2 (+) r2) in a contact-adapted basis"


_BUILDERS = {
    "abelian": (_build_abelian, ("n",)),
    "two_dim": (_build_two_dim, ("a", "b")),
    "r2": (_build_r2, ()),
    "heisenberg": (_build_heisenberg, ("p",)),
    "sl2": (_build_sl2, ()),
    "filiform_model": (_build_filiform_model, ("n",)),
    "filiform4": (_build_filiform4, ()),
    "double_r2": (_build_double_r2, ()),
    "frobenius_model": (_build_frobenius_model, ("p", "phi")),
    "contact5": (_build_contact5, ()),
}


def catalog_names() -> list:
    return sorted(_BUILDERS)


def catalog_build(name: str, params=None) -> CatalogEntry:
    """Build and validate a named algebra; every entry is Jacobi-checked."""
    if name not in _BUILDERS:
        raise UnknownName(f"unknown catalog name {name!r} (have: {', '.join(catalog_names())})")
    builder, allowed = _BUILDERS[name]
    params = dict(params or {})
    for key in params:
        if key not in allowed:
            raise BadParams(f"{name} does not take parameter {key!r}")
    law, provenance = builder(params)
    report = validate_law(law)
    if not report.ok:
        raise AssertionError(f"catalog law {name} failed the Jacobi check")
    frozen = tuple(sorted((k, _freeze(v)) for k, v in params.items()))
    return CatalogEntry(name, frozen, law, provenance)


def _freeze(value):
    if isinstance(value, list):
        return tuple(value)
    return value


def standard_battery() -> list:
    """Representative entries of dimension <= 6 used by tests and checks."""
    specs = [
        ("abelian", {"n": 1}),
        ("abelian", {"n": 2}),
        ("abelian", {"n": 3}),
        ("abelian", {"n": 6}),
        ("r2", {}),
        ("two_dim", {"a": 1, "b": -2}),
        ("heisenberg", {"p": 1}),
        ("heisenberg", {"p": 2}),
        ("sl2", {}),
        ("filiform_model", {"n": 4}),
        ("filiform_model", {"n": 5}),
        ("filiform_model", {"n": 6}),
        ("filiform4", {}),
        ("double_r2", {}),
        ("frobenius_model", {"p": 2, "phi": (0,)}),
        ("frobenius_model", {"p": 3, "phi": (1, -2)}),
        ("contact5", {}),
    ]
    return [catalog_build(name, params) for name, params in specs]

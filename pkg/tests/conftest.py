"""Shared helpers for the suite: random generators over exact scalars."""

import random
from fractions import Fraction

import pytest

from liealg.catalog import standard_battery
from liealg.linalg import ExactMatrix
from liealg.scalars import EpsilonScalar, GaussianRational, gr
from liealg.structure import BasisChange, StructureConstants, validate_law


def random_gaussian(rng, scale=3):
    return GaussianRational(
        Fraction(rng.randint(-scale, scale), rng.choice([1, 1, 2])),
        Fraction(rng.randint(-scale, scale), rng.choice([1, 1, 2]))
        if rng.random() < 0.3
        else 0,
    )


def random_skew_law(rng, n, scale=2, sparsity=0.5):
    """A random alternating bilinear map (not necessarily Lie)."""
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                if rng.random() < sparsity:
                    val = gr(rng.randint(-scale, scale))
                    if val:
                        entries[(i, j, k)] = val
    return StructureConstants(n, entries)


def random_lie_law(rng, n):
    """A random Lie law: a catalog-flavored seed conjugated randomly."""
    seeds = [law for law in _SEED_LAWS if law.dim == n]
    law = rng.choice(seeds)
    return apply_random_change(rng, law)


def random_basis_change(rng, n, scale=2):
    while True:
        rows = [
            [gr(rng.randint(-scale, scale)) for _ in range(n)] for _ in range(n)
        ]
        m = ExactMatrix(rows)
        if m.determinant():
            return BasisChange(m)


def apply_random_change(rng, law):
    from liealg.structure import apply_basis_change

    return apply_basis_change(law, random_basis_change(rng, law.dim))


def _seed_laws():
    from liealg import catalog_build, direct_sum

    laws = []
    for name, params in [
        ("abelian", {"n": 2}),
        ("abelian", {"n": 3}),
        ("abelian", {"n": 4}),
        ("abelian", {"n": 5}),
        ("r2", {}),
        ("heisenberg", {"p": 1}),
        ("heisenberg", {"p": 2}),
        ("sl2", {}),
        ("filiform_model", {"n": 4}),
        ("filiform_model", {"n": 5}),
        ("filiform4", {}),
        ("double_r2", {}),
        ("frobenius_model", {"p": 2, "phi": (1,)}),
    ]:
        laws.append(catalog_build(name, params).law)
    laws.append(
        direct_sum(catalog_build("r2", {}).law, catalog_build("abelian", {"n": 1}).law)
    )
    laws.append(
        direct_sum(catalog_build("sl2", {}).law, catalog_build("abelian", {"n": 2}).law)
    )
    return laws


_SEED_LAWS = _seed_laws()


@pytest.fixture(scope="session")
def battery():
    return standard_battery()


@pytest.fixture
def rng():
    return random.Random(20260810)

"""Symbolic contractions: limits, classical families, necessary conditions."""

import itertools
import random

import pytest

from conftest import random_basis_change
from liealg.catalog import catalog_build
from liealg.contraction import (
    LaurentFraction,
    ParametricFamily,
    contract,
    contraction_invariant_check,
    iw_family,
    saletan_family,
    saletan_sequence,
    transported_law,
    ww_family,
)
from liealg.errors import (
    DimensionMismatch,
    DivergentEntry,
    NotASubalgebra,
    SaletanRequiresSingular,
    SingularMatrix,
)
from liealg.linalg import ExactMatrix
from liealg.scalars import EpsilonScalar, gr
from liealg.structure import (
    BasisChange,
    apply_basis_change,
    classify_structure,
    validate_law,
)


def law(name, **params):
    return catalog_build(name, params).law


def eps(power=1, coeff=gr(1)):
    return EpsilonScalar.eps(power, coeff)


# -- LaurentFraction ----------------------------------------------------------


def test_fraction_normalization_and_limit():
    f = LaurentFraction(eps(2) + eps(3), eps(1) + eps(2))
    # (e^2(1+e)) / (e(1+e)) = e
    assert f.is_polynomial() and f.num == eps(1)
    g = LaurentFraction(EpsilonScalar.one(), EpsilonScalar.one() + eps(1))
    assert not g.is_polynomial()
    assert g.limit_at_zero() == gr(1)
    with pytest.raises(DivergentEntry):
        LaurentFraction(EpsilonScalar.one(), eps(1)).limit_at_zero()


def test_fraction_arithmetic():
    a = LaurentFraction(EpsilonScalar.one(), EpsilonScalar.one() + eps(1))
    b = LaurentFraction(eps(1), EpsilonScalar.one() + eps(1))
    assert a + b == LaurentFraction(EpsilonScalar.one())
    assert (a * (EpsilonScalar.one() + eps(1))) == LaurentFraction(EpsilonScalar.one())


# -- families ------------------------------------------------------------------


def test_family_inverse_is_exact():
    family = ParametricFamily.from_rows(
        [[eps(1), EpsilonScalar.one()], [EpsilonScalar.zero(), eps(2)]]
    )
    assert family.verify_inverse()


def test_family_rejects_singular():
    with pytest.raises(SingularMatrix):
        ParametricFamily.from_rows(
            [[eps(1), eps(1)], [eps(1), eps(1)]]
        )


# -- contract ------------------------------------------------------------------


def test_scaling_family_contracts_to_abelian(battery):
    for entry in battery:
        n = entry.law.dim
        limit = contract(entry.law, ww_family([1] * n))
        assert limit.is_abelian(), entry.name


def test_divergent_entry_witness():
    # law [e1,e2] = e1 with e1 -> e1, e2 -> e2/eps transports to eps^-1 e1
    bad = law("two_dim", a=1, b=0)
    family = ParametricFamily.diagonal([EpsilonScalar.one(), eps(-1)])
    with pytest.raises(DivergentEntry):
        contract(bad, family)


def test_r2_rescaling_limit_is_r2_itself():
    r2 = law("r2")
    family = ParametricFamily.diagonal([EpsilonScalar.one(), eps(-1)])
    assert contract(r2, family) == r2


def test_contract_constant_family_matches_basis_change(rng):
    for _ in range(20):
        sc = catalog_build("sl2").law
        f = random_basis_change(rng, 3)
        family = ParametricFamily.from_constant(f.matrix)
        assert contract(sc, family) == apply_basis_change(sc, f)


def test_contract_limits_always_lie(battery, rng):
    for entry in battery:
        n = entry.law.dim
        weights = [rng.randint(0, 2) for _ in range(n)]
        try:
            limit = contract(entry.law, ww_family(weights))
        except DivergentEntry:
            continue
        assert validate_law(limit).ok


def test_ww_weight_additivity(rng):
    sl2 = law("sl2")
    for _ in range(10):
        w1 = [rng.randint(0, 2) for _ in range(3)]
        w2 = [rng.randint(0, 2) for _ in range(3)]
        combined = ww_family([a + b for a, b in zip(w1, w2)])
        table1 = transported_law(sl2, combined)
        # applying sequentially in the symbolic ring: transported law of the
        # product family equals transported law of the summed weights
        prod_matrix = ww_family(w1).matrix * ww_family(w2).matrix
        table2 = transported_law(sl2, ParametricFamily(prod_matrix))
        assert table1 == table2


# -- Inonu-Wigner ---------------------------------------------------------------


def test_iw_requires_subalgebra():
    h1 = law("heisenberg", p=1)
    with pytest.raises(NotASubalgebra):
        iw_family(h1, 2)  # span{e1,e2} has [e1,e2] = e3 outside


def test_iw_sl2_cartan_line():
    sl2 = law("sl2")
    limit = contract(sl2, iw_family(sl2, 1))
    expected = {(0, 1, 1): gr(2), (0, 2, 2): gr(-2)}
    assert limit == type(limit)(3, expected)


def test_iw_center_of_h1_gives_abelian():
    h1 = law("heisenberg", p=1)
    # reorder so the center e3 comes first: f(e1)=e3, f(e2)=e1, f(e3)=e2
    reordered = apply_basis_change(
        h1, BasisChange.from_images([(0, 0, 1), (1, 0, 0), (0, 1, 0)])
    )
    limit = contract(reordered, iw_family(reordered, 1))
    assert limit.is_abelian()


def test_iw_whole_algebra_is_isomorphic():
    sl2 = law("sl2")
    assert contract(sl2, iw_family(sl2, 3)) == sl2


def iw_cases(battery):
    for entry in battery:
        sc = entry.law
        for p in range(1, sc.dim):
            try:
                family = iw_family(sc, p)
            except NotASubalgebra:
                continue
            yield entry.name, sc, p, family


def test_iw_structure_theorem_many_cases(battery):
    cases = 0
    for name, sc, p, family in iw_cases(battery):
        limit = contract(sc, family)
        n = sc.dim
        # complement brackets vanish
        for l, m in itertools.combinations(range(p, n), 2):
            assert limit.bracket_basis(l, m) == (gr(0),) * n, (name, p)
        # complement is an ideal: bracket with the subalgebra stays inside
        for i in range(p):
            for l in range(p, n):
                vec = limit.bracket_basis(i, l)
                assert all(not vec[k] for k in range(p)), (name, p)
        # subalgebra law is unchanged
        for i, j in itertools.combinations(range(p), 2):
            assert limit.bracket_basis(i, j) == sc.bracket_basis(i, j), (name, p)
        cases += 1
    assert cases >= 25, f"only {cases} (algebra, subalgebra) cases exercised"


# -- Weimar-Woods / Saletan -----------------------------------------------------


def test_ww_all_ones_is_scaling():
    fam = ww_family([1, 1])
    assert fam.matrix == ExactMatrix(
        [[eps(1), EpsilonScalar.zero()], [EpsilonScalar.zero(), eps(1)]]
    )


def test_saletan_zero_operator_collapses_to_scaling():
    g = ExactMatrix.zero(3, 3)
    fam = saletan_family(g)
    assert fam.matrix == ww_family([1, 1, 1]).matrix


def test_saletan_requires_singular():
    with pytest.raises(SaletanRequiresSingular):
        saletan_family(ExactMatrix.identity(2))


def test_saletan_projection_stationary_step1():
    h1 = law("heisenberg", p=1)
    g = ExactMatrix(
        [[gr(1), gr(0), gr(0)], [gr(0), gr(0), gr(0)], [gr(0), gr(0), gr(1)]]
    )
    chain = saletan_sequence(h1, g)
    assert chain == [h1, law("abelian", n=3)]
    # idempotent part only: the next step reproduces the last law
    assert contract(chain[-1], saletan_family(g)) == chain[-1]


def test_saletan_nilpotent_block_stationary_step2():
    rr = law("double_r2")
    g = ExactMatrix.zero(4, 4).entries
    g = [list(row) for row in g]
    g[0][1] = gr(1)  # g(e2) = e1, g^2 = 0: nilindex 2
    g = ExactMatrix(g)
    chain = saletan_sequence(rr, g)
    assert len(chain) == 3  # two proper steps, stationary afterwards
    assert chain[-1].is_abelian()
    assert contract(chain[-1], saletan_family(g)) == chain[-1]


def test_saletan_zero_g_chain():
    sl2 = law("sl2")
    chain = saletan_sequence(sl2, ExactMatrix.zero(3, 3))
    assert chain == [sl2, law("abelian", n=3)]


# -- necessary conditions --------------------------------------------------------


def test_invariant_check_r2_to_abelian():
    report = contraction_invariant_check(law("r2"), law("abelian", n=2))
    assert report.possible


def test_invariant_check_abelian_to_r2_fails():
    report = contraction_invariant_check(law("abelian", n=2), law("r2"))
    assert not report.possible
    failed = [c.name for c in report.conditions if not c.passed]
    assert "derivation dimension grows" in failed


def test_invariant_check_identity_case():
    sl2 = law("sl2")
    assert contraction_invariant_check(sl2, sl2).possible


def test_invariant_check_dimension_guard():
    with pytest.raises(DimensionMismatch):
        contraction_invariant_check(law("sl2"), law("abelian", n=2))


def test_realized_contractions_pass_check(battery):
    for entry in battery:
        if entry.law.dim > 4 or entry.law.is_abelian():
            continue
        target = contract(entry.law, ww_family([1] * entry.law.dim))
        report = contraction_invariant_check(entry.law, target)
        assert report.possible, entry.name

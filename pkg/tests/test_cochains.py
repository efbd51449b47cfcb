"""Insertion products, shuffle products, class checks, truncated group law."""

import itertools
import random

import pytest

from conftest import random_skew_law
from liealg.catalog import catalog_build
from liealg.cochains import (
    Cochain,
    NonassociativeProduct,
    algebra_class_check,
    alternating_circle,
    bch_product,
    circle,
    circle_group,
    commutator_law,
    comp_i,
    graded_bracket,
)
from liealg.cohomology import coboundary
from liealg.errors import IndexOutOfRange, NilindexTooLarge, NotLieAdmissible
from liealg.linalg import ExactMatrix
from liealg.scalars import gr
from liealg.structure import StructureConstants, validate_law


def law(name, **params):
    return catalog_build(name, params).law


def random_cochain(rng, n, arity):
    table = {}
    for key in itertools.product(range(n), repeat=arity):
        vec = tuple(gr(rng.randint(-2, 2)) for _ in range(n))
        if any(vec):
            table[key] = vec
    return Cochain(n, arity, False, table)


def test_comp_i_dim1_idempotent_product():
    f = Cochain(1, 2, False, {(0, 0): (gr(1),)})
    ff = comp_i(f, 0, f)
    assert ff.value_at((0, 0, 0)) == (gr(1),)


def test_comp_i_endomorphism_precomposition():
    # phi o_0 g == phi(g., .)
    g = Cochain.from_endomorphism(ExactMatrix([[gr(0), gr(1)], [gr(1), gr(0)]]))
    phi = Cochain(2, 2, False, {(0, 1): (gr(1), gr(0))})
    composed = comp_i(phi, 0, g)
    assert composed.value_at((1, 1)) == (gr(1), gr(0))
    assert composed.value_at((0, 1)) == (gr(0), gr(0))


def test_comp_i_r2_insertion():
    mu = Cochain.from_law(law("r2")).densify()
    nested = comp_i(mu, 1, mu)
    # mu(e1, mu(e1, e2)) = mu(e1, e2) = e2
    assert nested.value_at((0, 0, 1)) == (gr(0), gr(1))


def test_comp_i_slot_range():
    mu = Cochain.from_law(law("r2"))
    with pytest.raises(IndexOutOfRange):
        comp_i(mu, 2, mu)


def test_circle_is_associator_defect():
    rng = random.Random(5)
    m = random_cochain(rng, 2, 2)
    cc = circle(m, m)
    for key in itertools.product(range(2), repeat=3):
        x, y, z = key
        left = [gr(0), gr(0)]
        right = [gr(0), gr(0)]
        for k, c in enumerate(m.value_at((x, y))):
            for t, v in enumerate(m.value_at((k, z))):
                left[t] = left[t] + c * v
        for k, c in enumerate(m.value_at((y, z))):
            for t, v in enumerate(m.value_at((x, k))):
                right[t] = right[t] + c * v
        assert cc.value_at(key) == tuple(a - b for a, b in zip(left, right))


def test_circle_with_zero():
    mu = Cochain.from_law(law("r2")).densify()
    zero = Cochain.zero(2, 2)
    assert circle(mu, zero).is_zero()
    assert circle(zero, mu).is_zero()


def test_circle_of_endomorphisms_is_composition():
    a = ExactMatrix([[gr(1), gr(2)], [gr(0), gr(1)]])
    b = ExactMatrix([[gr(0), gr(1)], [gr(1), gr(3)]])
    ga = Cochain.from_endomorphism(a)
    gb = Cochain.from_endomorphism(b)
    assert circle(ga, gb) == Cochain.from_endomorphism(a * b).densify()


def test_graded_bracket_square_is_twice_circle():
    rng = random.Random(6)
    phi = random_cochain(rng, 2, 2)
    assert graded_bracket(phi, phi) == circle(phi, phi).scale(2)
    mu = Cochain.from_law(random_skew_law(rng, 3))
    assert graded_bracket(mu, mu) == alternating_circle(mu, mu).scale(2)


def test_graded_bracket_with_law_is_coboundary():
    sl2 = law("sl2")
    mu = Cochain.from_law(sl2)
    rng = random.Random(8)
    phi = Cochain.from_law(random_skew_law(rng, 3))
    assert graded_bracket(mu, phi) == coboundary(sl2, phi, 3)


def test_graded_bracket_r2_vanishes():
    mu = Cochain.from_law(law("r2"))
    assert graded_bracket(mu, mu).is_zero()


def test_alternating_circle_examples():
    sl2 = Cochain.from_law(law("sl2"))
    assert alternating_circle(sl2, sl2).is_zero()
    ab = Cochain.from_law(law("abelian", n=3))
    assert alternating_circle(ab, sl2).is_zero()
    broken = Cochain.from_law(
        StructureConstants(3, {(0, 1, 2): gr(1), (0, 2, 2): gr(1), (1, 2, 0): gr(1)})
    )
    square = alternating_circle(broken, broken)
    assert square.value_at((0, 1, 2)) == (gr(1), gr(0), gr(0))


def test_jacobi_iff_alternating_square_small():
    rng = random.Random(9)
    for _ in range(100):
        sc = random_skew_law(rng, rng.choice([3, 4]))
        mu = Cochain.from_law(sc)
        assert validate_law(sc).ok == alternating_circle(mu, mu).is_zero()


def test_circle_group_g1_is_circle():
    rng = random.Random(10)
    phi = random_cochain(rng, 2, 2)
    psi = random_cochain(rng, 2, 2)
    assert circle_group(phi, psi, "G1") == circle(phi, psi)


def test_circle_group_g5_on_alternating():
    mu = Cochain.from_law(law("sl2"))
    phi = Cochain.from_law(random_skew_law(random.Random(11), 3))
    assert circle_group(mu, phi, "G5") == alternating_circle(mu, phi).scale(2).densify()


COMMUTATIVE_2DIM = NonassociativeProduct(
    2,
    {
        (0, 0): (gr(1), gr(0)),
        (0, 1): (gr(0), gr(1)),
        (1, 0): (gr(0), gr(1)),
        (1, 1): (gr(0), gr(1)),
    },
)


def test_circle_group_g6_on_associative_product():
    phi = COMMUTATIVE_2DIM.to_cochain()
    assert circle_group(phi, phi, "G6").is_zero()


def test_algebra_class_checks():
    assert algebra_class_check(COMMUTATIVE_2DIM, "associative")
    assert algebra_class_check(COMMUTATIVE_2DIM, "vinberg")
    assert algebra_class_check(COMMUTATIVE_2DIM, "pre_lie")
    assert algebra_class_check(COMMUTATIVE_2DIM, "lie_admissible")
    zero = NonassociativeProduct(2, {})
    for cls in ("associative", "vinberg", "pre_lie", "lie_admissible"):
        assert algebra_class_check(zero, cls)
    # e1*e2 = e1: (e1*e2)*e2 = e1 but e1*(e2*e2) = 0
    skewed = NonassociativeProduct(2, {(0, 1): (gr(1), gr(0))})
    assert not algebra_class_check(skewed, "associative")


def test_commutator_law_examples():
    assert commutator_law(COMMUTATIVE_2DIM).is_abelian()
    assert commutator_law(NonassociativeProduct(2, {})).is_abelian()
    upper = NonassociativeProduct(2, {(0, 1): (gr(0), gr(1))})
    assert commutator_law(upper) == law("r2")


def test_every_2dim_product_is_lie_admissible(rng):
    # alternating trilinear maps on a 2-dim space vanish, so the G6
    # alternation of any associator is zero there
    for _ in range(20):
        table = {}
        for key in itertools.product(range(2), repeat=2):
            vec = tuple(gr(rng.randint(-2, 2)) for _ in range(2))
            if any(vec):
                table[key] = vec
        assert algebra_class_check(NonassociativeProduct(2, table), "lie_admissible")


def test_commutator_rejects_non_admissible():
    # e1*e2 = e3, e1*e3 = e3, e2*e3 = e1 (one-sided): the skew bracket is
    # the broken law whose Jacobi sum is nonzero
    m = NonassociativeProduct(
        3,
        {
            (0, 1): (gr(0), gr(0), gr(1)),
            (0, 2): (gr(0), gr(0), gr(1)),
            (1, 2): (gr(1), gr(0), gr(0)),
        },
    )
    assert not algebra_class_check(m, "lie_admissible")
    with pytest.raises(NotLieAdmissible):
        commutator_law(m)


def test_lie_admissible_products_give_lie_laws(rng):
    for _ in range(40):
        table = {}
        for key in itertools.product(range(3), repeat=2):
            vec = tuple(gr(rng.randint(-1, 1)) for _ in range(3))
            if any(vec):
                table[key] = vec
        m = NonassociativeProduct(3, table)
        if algebra_class_check(m, "lie_admissible"):
            assert validate_law(commutator_law(m)).ok


def test_bch_examples():
    h1 = law("heisenberg", p=1)
    x = (gr(1), gr(0), gr(0))
    y = (gr(0), gr(1), gr(0))
    assert bch_product(h1, x, y) == (gr(1), gr(1), gr("1/2"))
    ab = law("abelian", n=3)
    assert bch_product(ab, x, y) == (gr(1), gr(1), gr(0))
    assert bch_product(h1, x, x) == (gr(2), gr(0), gr(0))


def test_bch_rejects_large_nilindex():
    with pytest.raises(NilindexTooLarge):
        bch_product(law("sl2"), (gr(1),) * 3, (gr(1),) * 3)
    with pytest.raises(NilindexTooLarge):
        bch_product(
            law("filiform_model", n=5), (gr(1),) * 5, (gr(0),) * 5
        )


def test_bch_exact_on_nilindex3():
    f4 = law("filiform4")  # nilindex 3: the printed terms are the whole series
    x = (gr(1), gr(0), gr(0), gr(0))
    y = (gr(0), gr(1), gr(0), gr(0))
    out = bch_product(f4, x, y)
    # [X,Y] = e3, [[X,Y],Y] = 0, [[X,Y],X] = [e3,e1] = -e4, so the last
    # term contributes -(1/12)(-e4) = +e4/12
    assert out == (gr(1), gr(1), gr("1/2"), gr("1/12"))


def test_bch_associative_on_h1(rng):
    h1 = law("heisenberg", p=1)
    for _ in range(40):
        x, y, z = (
            tuple(gr(rng.randint(-3, 3)) for _ in range(3)) for _ in range(3)
        )
        left = bch_product(h1, bch_product(h1, x, y), z)
        right = bch_product(h1, x, bch_product(h1, y, z))
        assert left == right


def test_right_pre_lie_system_300(rng):
    checked = 0
    while checked < 300:
        n = rng.choice([2, 3])
        p, q, r = (rng.choice([0, 1, 2]) for _ in range(3))
        phi = random_cochain(rng, n, p + 1)
        psi = random_cochain(rng, n, q + 1)
        rho = random_cochain(rng, n, r + 1)
        i = rng.randint(0, p)
        j = rng.randint(0, p + q)
        lhs = comp_i(comp_i(phi, i, psi), j, rho)
        if j <= i - 1:
            rhs = comp_i(comp_i(phi, j, rho), i + r, psi)
        elif j <= i + q:
            rhs = comp_i(phi, i, comp_i(psi, j - i, rho))
        else:
            rhs = comp_i(comp_i(phi, j - q, rho), i, psi)
        assert lhs == rhs
        checked += 1


def test_graded_pre_lie_identity(rng):
    for _ in range(60):
        n = 2
        p, q, r = (rng.choice([0, 1, 2]) for _ in range(3))
        phi = random_cochain(rng, n, p + 1)
        psi = random_cochain(rng, n, q + 1)
        rho = random_cochain(rng, n, r + 1)
        sign = (-1) ** (q * r)
        lhs = circle(circle(phi, psi), rho) - circle(circle(phi, rho), psi).scale(sign)
        rhs = circle(phi, circle(psi, rho)) - circle(phi, circle(rho, psi)).scale(sign)
        assert lhs == rhs

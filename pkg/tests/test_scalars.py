"""Field operations and Laurent arithmetic."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liealg.errors import DivergentEntry, DivisionByZero, NonPolynomialQuotient
from liealg.scalars import (
    EpsilonScalar,
    GaussianRational,
    as_epsilon,
    gr,
    laurent_gcd,
)

rationals = st.builds(
    Fraction, st.integers(-50, 50), st.integers(1, 9)
)
gaussians = st.builds(GaussianRational, rationals, rationals)
laurents = st.builds(
    lambda terms: EpsilonScalar(terms),
    st.dictionaries(st.integers(-4, 4), st.builds(GaussianRational, rationals), max_size=4),
)


def test_half_plus_i_cancellation():
    a = gr(Fraction(1, 2), 1)
    b = gr(Fraction(1, 2), -1)
    assert a + b == gr(1)


def test_division_by_conjugate():
    z = gr(1, 1)
    assert z / z == gr(1)
    assert gr(1) / gr(0, 1) == gr(0, -1)


def test_division_by_zero_raises():
    with pytest.raises(DivisionByZero):
        gr(1) / gr(0)


@given(gaussians, gaussians, gaussians)
def test_field_identities(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if not b.is_zero():
        assert (a / b) * b == a


@given(st.data())
@settings(max_examples=120)
def test_random_expression_reassociation(data):
    # depth <= 6 expression evaluated with two random parenthesizations
    ops = data.draw(st.lists(st.sampled_from(["+", "-", "*"]), min_size=1, max_size=6))
    leaves = data.draw(
        st.lists(gaussians, min_size=len(ops) + 1, max_size=len(ops) + 1)
    )

    def fold(seq, values):
        acc = values[0]
        for op, val in zip(seq, values[1:]):
            acc = acc + val if op == "+" else acc - val if op == "-" else acc * val
        return acc

    # multiplication-only segments commute, so a global reversal of a
    # commutative chain must agree
    if all(op == "*" for op in ops) or all(op == "+" for op in ops):
        assert fold(ops, leaves) == fold(ops, [leaves[0]] + leaves[1:][::-1])
    assert fold(ops, leaves) == fold(list(ops), list(leaves))


def test_eps_times_inverse_monomial():
    s = EpsilonScalar.eps(1) + EpsilonScalar.eps(2)
    assert s * EpsilonScalar.eps(-1) == EpsilonScalar.one() + EpsilonScalar.eps(1)


def test_monomial_quotient():
    assert EpsilonScalar.eps(2) / EpsilonScalar.eps(1) == EpsilonScalar.eps(1)


def test_nonpolynomial_quotient_raises():
    one = EpsilonScalar.one()
    with pytest.raises(NonPolynomialQuotient):
        one / (one + EpsilonScalar.eps(1))


def test_eps_division_by_zero():
    with pytest.raises(DivisionByZero):
        EpsilonScalar.one() / EpsilonScalar.zero()


def test_valuation_examples():
    assert (EpsilonScalar.eps(1) + EpsilonScalar.eps(2)).valuation() == 1
    assert EpsilonScalar.from_const(3).valuation() == 0
    assert EpsilonScalar.zero().valuation() == math.inf


@given(laurents, laurents)
def test_valuation_multiplicative(a, b):
    if a.is_zero() or b.is_zero():
        assert (a * b).is_zero()
    else:
        assert (a * b).valuation() == a.valuation() + b.valuation()


def test_limit_examples():
    assert (EpsilonScalar.from_const(2) + EpsilonScalar.eps(1)).limit_at_zero() == gr(2)
    assert EpsilonScalar.eps(3).limit_at_zero() == gr(0)
    with pytest.raises(DivergentEntry):
        EpsilonScalar.eps(-1).limit_at_zero()


@given(laurents, laurents)
@settings(max_examples=100)
def test_exact_division_roundtrip(a, b):
    if b.is_zero():
        return
    prod = a * b
    assert prod / b == a


@given(laurents, laurents)
@settings(max_examples=100)
def test_gcd_divides_both(a, b):
    g = laurent_gcd(a, b)
    if g.is_zero():
        assert a.is_zero() and b.is_zero()
        return
    assert g.divides(a) and g.divides(b)
    # normalization: lowest coefficient is 1
    assert g.leading_coefficient() == gr(1)


def test_truncate_and_shift():
    s = EpsilonScalar.one() + EpsilonScalar.eps(2) + EpsilonScalar.eps(5)
    assert s.truncate(3) == EpsilonScalar.one() + EpsilonScalar.eps(2)
    assert s.shift(1).valuation() == 1


def test_as_epsilon_coercion():
    assert as_epsilon(3) == EpsilonScalar.from_const(3)
    assert as_epsilon(gr(1, 2)) == EpsilonScalar.from_const(gr(1, 2))
    with pytest.raises(TypeError):
        as_epsilon("nope")

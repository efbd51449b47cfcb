"""Exact scalars: Gaussian rationals and Laurent polynomials in a formal eps.

All coefficient arithmetic in the package happens here.  There is no floating
point anywhere: rank computations downstream are only meaningful with exact
equality.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DivergentEntry, DivisionByZero, NonPolynomialQuotient

INFINITY = math.inf

_RationalLike = (int, Fraction)


class GaussianRational:
    """A complex number a + b*i with rational a, b in lowest terms.

    Instances are immutable and hashable; equality is canonical-form equality
    (Fraction keeps denominators positive and reduced).
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_rational(self) -> bool:
        return not self.im

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, _RationalLike):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        norm = other.re * other.re + other.im * other.im
        if not norm:
            raise DivisionByZero("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    # -- display ------------------------------------------------------------

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im} i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)} i"


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


def gr(re=0, im=0) -> GaussianRational:
    """Shorthand constructor; accepts ints, Fractions or 'p/q' strings."""
    if isinstance(re, str):
        re = Fraction(re)
    if isinstance(im, str):
        im = Fraction(im)
    return GaussianRational(re, im)


class EpsilonScalar:
    """Laurent polynomial in the formal parameter eps over GaussianRational.

    Stored as a finite exponent -> coefficient map with no zero coefficients.
    Laurent *polynomials*, not series: every operation either terminates with
    finite support or raises.  The valuation of 0 is +infinity.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for exp, coeff in terms.items():
                if not isinstance(coeff, GaussianRational):
                    coeff = GaussianRational(coeff)
                if not coeff.is_zero():
                    clean[int(exp)] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("EpsilonScalar is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "EpsilonScalar":
        return cls({})

    @classmethod
    def one(cls) -> "EpsilonScalar":
        return cls({0: GR_ONE})

    @classmethod
    def from_const(cls, value) -> "EpsilonScalar":
        if not isinstance(value, GaussianRational):
            value = GaussianRational(value)
        return cls({0: value})

    @classmethod
    def eps(cls, power: int = 1, coeff=GR_ONE) -> "EpsilonScalar":
        if not isinstance(coeff, GaussianRational):
            coeff = GaussianRational(coeff)
        return cls({power: coeff})

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {0}

    def valuation(self):
        """Least exponent with nonzero coefficient; +inf for the zero scalar."""
        if not self.terms:
            return INFINITY
        return min(self.terms)

    def degree(self):
        if not self.terms:
            return -INFINITY
        return max(self.terms)

    def coefficient(self, exp: int) -> GaussianRational:
        return self.terms.get(exp, GR_ZERO)

    def constant_coefficient(self) -> GaussianRational:
        return self.coefficient(0)

    def leading_coefficient(self) -> GaussianRational:
        """Coefficient at the valuation exponent (lowest term)."""
        if not self.terms:
            return GR_ZERO
        return self.terms[min(self.terms)]

    def limit_at_zero(self) -> GaussianRational:
        if self.valuation() < 0:
            raise DivergentEntry(f"negative valuation in {self}")
        return self.constant_coefficient()

    def truncate(self, order: int) -> "EpsilonScalar":
        """Drop all terms of exponent > order."""
        return EpsilonScalar({e: c for e, c in self.terms.items() if e <= order})

    def shift(self, k: int) -> "EpsilonScalar":
        """Multiply by eps**k."""
        return EpsilonScalar({e + k: c for e, c in self.terms.items()})

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, EpsilonScalar):
            return other
        if isinstance(other, GaussianRational):
            return EpsilonScalar({0: other})
        if isinstance(other, _RationalLike):
            return EpsilonScalar({0: GaussianRational(other)})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, GR_ZERO) + c
            if s.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = s
        return EpsilonScalar(terms)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = terms.get(e, GR_ZERO) + c1 * c2
                if s.is_zero():
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return EpsilonScalar(terms)

    __rmul__ = __mul__

    def __neg__(self):
        return EpsilonScalar({e: -c for e, c in self.terms.items()})

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.exact_div(other)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def exact_div(self, other: "EpsilonScalar") -> "EpsilonScalar":
        """Exact Laurent quotient.

        Raises NonPolynomialQuotient when the true quotient is a power series
        with infinite support, DivisionByZero on a zero divisor.
        """
        if other.is_zero():
            raise DivisionByZero("division by zero eps-scalar")
        if self.is_zero():
            return EpsilonScalar.zero()
        quot, rem = _poly_divmod(self, other)
        if not rem.is_zero():
            raise NonPolynomialQuotient(f"{self} is not divisible by {other}")
        return quot

    def divides(self, other: "EpsilonScalar") -> bool:
        """True when other/self is again a Laurent polynomial."""
        if self.is_zero():
            return other.is_zero()
        if other.is_zero():
            return True
        _, rem = _poly_divmod(other, self)
        return rem.is_zero()

    # -- display ------------------------------------------------------------

    def __repr__(self):
        return f"EpsilonScalar({self.terms!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                parts.append(f"({c})")
            elif e == 1:
                parts.append(f"({c})*eps")
            else:
                parts.append(f"({c})*eps^{e}")
        return " + ".join(parts)


EPS_ZERO = EpsilonScalar.zero()
EPS_ONE = EpsilonScalar.one()


def _coeff_list(s: EpsilonScalar):
    """Dense coefficient list from the valuation upward, plus the valuation."""
    v = min(s.terms)
    d = max(s.terms)
    return [s.terms.get(e, GR_ZERO) for e in range(v, d + 1)], v


def _poly_divmod(num: EpsilonScalar, den: EpsilonScalar):
    """Long division of Laurent polynomials; remainder has degree < divisor.

    num = quot * den + rem * eps**(shared shift); rem is returned already
    re-shifted so that num == quot*den + rem holds exactly.
    """
    ncoeffs, nval = _coeff_list(num)
    dcoeffs, dval = _coeff_list(den)
    lead = dcoeffs[-1]
    quot = [GR_ZERO] * max(len(ncoeffs) - len(dcoeffs) + 1, 0)
    rem = list(ncoeffs)
    for k in range(len(ncoeffs) - len(dcoeffs), -1, -1):
        factor = rem[k + len(dcoeffs) - 1] / lead
        quot[k] = factor
        if not factor.is_zero():
            for j, dc in enumerate(dcoeffs):
                rem[k + j] = rem[k + j] - factor * dc
    q = EpsilonScalar({k + nval - dval: c for k, c in enumerate(quot)})
    r = EpsilonScalar({k + nval: c for k, c in enumerate(rem[: len(dcoeffs) - 1])})
    return q, r


def laurent_gcd(a: EpsilonScalar, b: EpsilonScalar) -> EpsilonScalar:
    """Monic-normalized gcd; the monomial part carries min(valuation).

    Normalization: the lowest-exponent coefficient of the result is 1, and
    its valuation is min over the inputs, so that gcd(x, 0) == x up to the
    leading-unit.  gcd(0, 0) == 0.
    """
    if a.is_zero() and b.is_zero():
        return EPS_ZERO
    if a.is_zero():
        return _monic(b)
    if b.is_zero():
        return _monic(a)
    va, vb = a.valuation(), b.valuation()
    x, y = a.shift(-va), b.shift(-vb)
    # Euclid on the polynomial parts (valuation 0, so ordinary polynomials).
    while not y.is_zero():
        _, r = _poly_divmod(x, y)
        x, y = y, r
    return _monic(x).shift(min(va, vb))


def _monic(s: EpsilonScalar) -> EpsilonScalar:
    lead = s.terms[min(s.terms)]
    return EpsilonScalar({e: c / lead for e, c in s.terms.items()})


def as_epsilon(value) -> EpsilonScalar:
    """Coerce a GaussianRational / int / Fraction / EpsilonScalar to eps-form."""
    out = EpsilonScalar._coerce(value)
    if out is None:
        raise TypeError(f"cannot interpret {value!r} as an eps-scalar")
    return out

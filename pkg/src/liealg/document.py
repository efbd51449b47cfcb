"""Line-oriented algebra files.

Grammar (one declaration per line, '#' starts a comment):

    dim N
    name LABEL
    bracket eI eJ = COEFF [eps[^M]] eK [+ ...]

with I < J, 1-based indices, and COEFF one of `p/q`, `p/q i`, `p/q+r/s i`
(integers allowed for p, q).  eps factors carry the formal parameter for
perturbed laws.  Family files use `map eJ = ...` lines with the same term
grammar.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DuplicateBracket, IndexOutOfRange, ParseError
from .scalars import EpsilonScalar, GaussianRational
from .structure import StructureConstants

_RAT = r"[+-]?\d+(?:/\d+)?"
_RAT_RE = re.compile(rf"^{_RAT}$")
_COMPLEX_RE = re.compile(rf"^({_RAT})([+-]\d+(?:/\d+)?)$")
_BASIS_RE = re.compile(r"^e(\d+)$")
_EPS_RE = re.compile(r"^eps(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class BracketDecl:
    i: int  # 0-based, i < j
    j: int
    coeffs: tuple  # ((k, EpsilonScalar), ...) sorted by k


@dataclass(frozen=True)
class AlgebraDocument:
    dim: int
    name: object  # str | None
    brackets: tuple  # BracketDecl in declaration order

    def is_constant(self) -> bool:
        return all(
            c.is_constant() for decl in self.brackets for _, c in decl.coeffs
        )

    def to_law(self) -> StructureConstants:
        """StructureConstants over GaussianRational when possible, else over
        the Laurent scalars."""
        constant = self.is_constant()
        entries = {}
        for decl in self.brackets:
            for k, coeff in decl.coeffs:
                entries[(decl.i, decl.j, k)] = (
                    coeff.constant_coefficient() if constant else coeff
                )
        return StructureConstants(self.dim, entries, epsilon=not constant)

    @classmethod
    def from_law(cls, sc: StructureConstants, name=None) -> "AlgebraDocument":
        grouped: dict = {}
        for i, j, k, val in sc.items():
            eps_val = val if sc.epsilon else EpsilonScalar.from_const(val)
            grouped.setdefault((i, j), []).append((k, eps_val))
        brackets = tuple(
            BracketDecl(i, j, tuple(sorted(grouped[(i, j)])))
            for (i, j) in sorted(grouped)
        )
        return cls(sc.dim, name, brackets)


def _parse_coeff_tokens(tokens, line_no):
    """Consume coefficient [+ optional eps factor] from the token stream."""
    if not tokens:
        raise ParseError("missing coefficient", line_no)
    tok = tokens.pop(0)
    complex_match = _COMPLEX_RE.match(tok)
    if complex_match and tokens and tokens[0] == "i":
        tokens.pop(0)
        value = GaussianRational(
            Fraction(complex_match.group(1)), Fraction(complex_match.group(2))
        )
    elif _RAT_RE.match(tok):
        if tokens and tokens[0] == "i":
            tokens.pop(0)
            value = GaussianRational(0, Fraction(tok))
        else:
            value = GaussianRational(Fraction(tok))
    else:
        raise ParseError(f"bad coefficient {tok!r}", line_no)
    exponent = 0
    if tokens:
        eps_match = _EPS_RE.match(tokens[0])
        if eps_match:
            tokens.pop(0)
            exponent = int(eps_match.group(1)) if eps_match.group(1) else 1
    return EpsilonScalar.eps(exponent, value) if exponent else EpsilonScalar.from_const(value)


def _parse_terms(rhs_tokens, dim, line_no):
    """RHS of a bracket/map declaration: a vector of eps-coefficients."""
    vector = {}
    tokens = list(rhs_tokens)
    sign = 1
    while tokens:
        if tokens[0] == "+":
            tokens.pop(0)
            sign = 1
            continue
        if tokens[0] == "-":
            tokens.pop(0)
            sign = -1
            continue
        coeff = _parse_coeff_tokens(tokens, line_no)
        if sign < 0:
            coeff = -coeff
        if not tokens:
            raise ParseError("term is missing its basis vector", line_no)
        basis_tok = tokens.pop(0)
        basis_match = _BASIS_RE.match(basis_tok)
        if not basis_match:
            raise ParseError(f"expected a basis vector, got {basis_tok!r}", line_no)
        k = int(basis_match.group(1))
        if not (1 <= k <= dim):
            raise IndexOutOfRange(f"line {line_no}: e{k} outside dim {dim}")
        cur = vector.get(k - 1, EpsilonScalar.zero())
        vector[k - 1] = cur + coeff
        sign = 1
    return vector


def _logical_lines(text):
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            yield line_no, stripped


def parse(text: str) -> AlgebraDocument:
    dim = None
    name = None
    brackets = []
    seen_pairs = set()
    for line_no, line in _logical_lines(text):
        tokens = line.split()
        head = tokens[0]
        if head == "dim":
            if dim is not None:
                raise ParseError("duplicate dim declaration", line_no)
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise ParseError("dim needs a single nonnegative integer", line_no)
            dim = int(tokens[1])
        elif head == "name":
            if len(tokens) < 2:
                raise ParseError("name needs a label", line_no)
            name = " ".join(tokens[1:])
        elif head == "bracket":
            if dim is None:
                raise ParseError("dim must come before brackets", line_no)
            if len(tokens) < 5 or "=" not in tokens:
                raise ParseError("malformed bracket declaration", line_no)
            eq = tokens.index("=")
            if eq != 3:
                raise ParseError("bracket takes exactly two basis vectors", line_no)
            mi = _BASIS_RE.match(tokens[1])
            mj = _BASIS_RE.match(tokens[2])
            if not mi or not mj:
                raise ParseError("bracket arguments must be basis vectors", line_no)
            i, j = int(mi.group(1)), int(mj.group(1))
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise IndexOutOfRange(
                    f"line {line_no}: bracket indices e{i}, e{j} outside dim {dim}"
                )
            if i >= j:
                raise ParseError(
                    "bracket indices must be strictly ascending (antisymmetry "
                    "determines the rest)",
                    line_no,
                )
            if (i, j) in seen_pairs:
                raise DuplicateBracket(f"line {line_no}: duplicate bracket e{i} e{j}")
            seen_pairs.add((i, j))
            vector = _parse_terms(tokens[eq + 1 :], dim, line_no)
            coeffs = tuple(
                (k, coeff) for k, coeff in sorted(vector.items()) if not coeff.is_zero()
            )
            if coeffs:
                brackets.append(BracketDecl(i - 1, j - 1, coeffs))
        else:
            raise ParseError(f"unknown declaration {head!r}", line_no)
    if dim is None:
        raise ParseError("missing dim declaration", 1)
    return AlgebraDocument(dim, name, tuple(brackets))


def _coeff_str(value: GaussianRational) -> str:
    if not value.im:
        return str(value.re)
    if not value.re:
        return f"{value.im} i"
    sign = "+" if value.im > 0 else "-"
    return f"{value.re}{sign}{abs(value.im)} i"


def _term_strs(k: int, coeff: EpsilonScalar):
    for exp in sorted(coeff.terms):
        c = coeff.terms[exp]
        if exp == 0:
            yield f"{_coeff_str(c)} e{k + 1}"
        elif exp == 1:
            yield f"{_coeff_str(c)} eps e{k + 1}"
        else:
            yield f"{_coeff_str(c)} eps^{exp} e{k + 1}"


def serialize(doc: AlgebraDocument) -> str:
    lines = [f"dim {doc.dim}"]
    if doc.name:
        lines.append(f"name {doc.name}")
    for decl in doc.brackets:
        terms = []
        for k, coeff in decl.coeffs:
            terms.extend(_term_strs(k, coeff))
        lines.append(f"bracket e{decl.i + 1} e{decl.j + 1} = " + " + ".join(terms))
    return "\n".join(lines) + "\n"


def parse_family(text: str):
    """Family files: `dim N` then `map eJ = terms` for every column."""
    dim = None
    images = {}
    for line_no, line in _logical_lines(text):
        tokens = line.split()
        head = tokens[0]
        if head == "dim":
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise ParseError("dim needs a single nonnegative integer", line_no)
            dim = int(tokens[1])
        elif head == "map":
            if dim is None:
                raise ParseError("dim must come before map lines", line_no)
            if len(tokens) < 4 or tokens[2] != "=":
                raise ParseError("malformed map declaration", line_no)
            mj = _BASIS_RE.match(tokens[1])
            if not mj:
                raise ParseError("map argument must be a basis vector", line_no)
            j = int(mj.group(1))
            if not (1 <= j <= dim):
                raise IndexOutOfRange(f"line {line_no}: e{j} outside dim {dim}")
            if j in images:
                raise DuplicateBracket(f"line {line_no}: duplicate map for e{j}")
            vector = _parse_terms(tokens[3:], dim, line_no)
            images[j] = vector
        else:
            raise ParseError(f"unknown declaration {head!r}", line_no)
    if dim is None:
        raise ParseError("missing dim declaration", 1)
    missing = [j for j in range(1, dim + 1) if j not in images]
    if missing:
        raise ParseError(f"missing map for e{missing[0]}", 1)
    columns = []
    for j in range(1, dim + 1):
        vec = [images[j].get(t, EpsilonScalar.zero()) for t in range(dim)]
        columns.append(vec)
    return dim, columns

"""Algebra file parsing and canonical serialization."""

import pytest

from liealg.catalog import catalog_build
from liealg.document import AlgebraDocument, parse, parse_family, serialize
from liealg.errors import DuplicateBracket, IndexOutOfRange, ParseError
from liealg.scalars import EpsilonScalar, gr


def test_parse_r2():
    doc = parse("dim 2\nbracket e1 e2 = 1 e2\n")
    assert doc.dim == 2
    assert doc.to_law() == catalog_build("r2").law


def test_parse_sl2_with_name():
    text = "dim 3\nname sl2\nbracket e1 e2 = 2 e2\nbracket e1 e3 = -2 e3\nbracket e2 e3 = 1 e1\n"
    doc = parse(text)
    assert doc.name == "sl2"
    assert doc.to_law() == catalog_build("sl2").law
    assert serialize(doc) == text


def test_parse_errors():
    with pytest.raises(IndexOutOfRange):
        parse("dim 3\nbracket e1 e5 = 1 e1\n")
    with pytest.raises(ParseError):
        parse("bracket e1 e2 = 1 e2\n")  # dim must come first
    with pytest.raises(ParseError):
        parse("dim 2\nbracket e2 e1 = 1 e2\n")  # ascending indices required
    with pytest.raises(DuplicateBracket):
        parse("dim 2\nbracket e1 e2 = 1 e2\nbracket e1 e2 = 1 e1\n")
    with pytest.raises(ParseError):
        parse("dim 2\nbracket e1 e2 = huh e2\n")
    err = None
    try:
        parse("dim 2\nbracket e1 e2 = 1\n")
    except ParseError as exc:
        err = exc
    assert err is not None and err.line == 2


def test_coefficient_forms_roundtrip():
    text = (
        "dim 3\n"
        "bracket e1 e2 = 1/2 e1 + -3 i e2 + 1/2+3/4 i e3\n"
        "bracket e1 e3 = 2 eps e1 + -1/2 eps^3 e2\n"
    )
    doc = parse(text)
    assert serialize(doc) == text
    law = doc.to_law()
    assert law.epsilon
    assert law.c(0, 1, 0) == EpsilonScalar.from_const(gr("1/2"))
    assert law.c(0, 2, 0) == EpsilonScalar.eps(1, gr(2))


def test_term_signs_and_merging():
    doc = parse("dim 2\nbracket e1 e2 = 1 e1 - 2 e1 + 1 e2\n")
    law = doc.to_law()
    assert law.c(0, 1, 0) == gr(-1)
    assert law.c(0, 1, 1) == gr(1)


def test_comments_and_blank_lines():
    doc = parse("# header\n\ndim 2\n# brackets\nbracket e1 e2 = 1 e2  # r2\n")
    assert doc.to_law() == catalog_build("r2").law


def test_serialize_parse_identity_on_catalog(battery):
    for entry in battery:
        doc = AlgebraDocument.from_law(entry.law, name=entry.name)
        again = parse(serialize(doc))
        assert again == doc
        assert again.to_law() == entry.law


def test_serialize_idempotent():
    messy = "dim 2\n\n# comment\nbracket   e1   e2 =   2/4 e2\n"
    once = serialize(parse(messy))
    assert serialize(parse(once)) == once
    assert once == "dim 2\nbracket e1 e2 = 1/2 e2\n"


def test_parse_family():
    text = "dim 2\nmap e1 = 1 eps e1\nmap e2 = 1 e2 + 1 eps^2 e1\n"
    dim, columns = parse_family(text)
    assert dim == 2
    assert columns[0][0] == EpsilonScalar.eps(1)
    assert columns[1][0] == EpsilonScalar.eps(2)
    with pytest.raises(ParseError):
        parse_family("dim 2\nmap e1 = 1 e1\n")  # missing map for e2

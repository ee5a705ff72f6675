import pytest

from adrtools.formats import (
    FormatError,
    format_algebra_file,
    format_module_file,
    parse_algebra_file,
    parse_module_file,
    read_algebra,
)
from adrtools.modules import regular_module
from adrtools.strat import build_T


def test_algebra_roundtrip(a2, adr):
    for a in (a2, adr.algebra):
        text = format_algebra_file(a)
        b = parse_algebra_file(text)
        assert b.table == a.table and b.unit == a.unit and b.labels == a.labels
        assert format_algebra_file(b) == text


def test_vertex_idempotents_survive(a2):
    b = parse_algebra_file(format_algebra_file(a2))
    assert b.vertex_idempotents == a2.vertex_idempotents


def test_read_either_format(a2):
    assert read_algebra("vertex a b\narrow f a b\n").table == a2.table
    assert read_algebra(format_algebra_file(a2)).table == a2.table


def test_module_roundtrip(a2, adr):
    for m in (regular_module(a2), build_T(adr).module_A):
        back = parse_module_file(format_module_file(m), m.algebra)
        assert back.action == m.action


@pytest.mark.parametrize(
    "text",
    [
        "algebra dim=2\nunit 1\n",
        "algebra dim=x\n",
        "algebra dim=1\nunit 1\nmul 0 3 1\n",
        "algebra dim=1\nunit 1\nfrob 0\n",
        "algebra dim=1\n",
        "",
    ],
)
def test_algebra_errors(text):
    with pytest.raises(FormatError):
        parse_algebra_file(text)


def test_module_errors(a2):
    with pytest.raises(FormatError):
        parse_module_file("module dim=1\nact 0 1\n", a2)

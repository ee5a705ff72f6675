import pytest

from adrtools.quiver import (
    QuiverParseError,
    a2_presentation,
    build_path_algebra,
    format_quiver_file,
    linear_quiver,
    parse_quiver_file,
    Presentation,
)
from adrtools.reports import InfiniteDimensional

from conftest import TRUNCATED_POLY


def test_a2_basis_labels():
    a = build_path_algebra(a2_presentation())
    assert a.labels == ("e_a", "e_b", "f")
    f, ea, eb = (a.basis(a.labels.index(x)) for x in ("f", "e_a", "e_b"))
    assert a.mul(f, ea) == f and a.mul(eb, f) == f
    assert not any(a.mul(ea, f))


def test_roundtrip():
    text = "vertex a b c\narrow g a b\narrow h b c\nrelation h*g = 0\n"
    p = parse_quiver_file(text)
    assert format_quiver_file(p) == text
    assert parse_quiver_file(format_quiver_file(p)) == p


def test_relation_with_coefficients():
    p = parse_quiver_file("vertex a b\narrow x a b\narrow y a b\nrelation 2 x - 1/3 y = 0\n")
    a = build_path_algebra(p)
    assert a.dim == 3


def test_loop_needs_relation():
    with pytest.raises(InfiniteDimensional):
        build_path_algebra(parse_quiver_file("vertex v\narrow x v v\n"), max_path_len=6)
    assert build_path_algebra(parse_quiver_file(TRUNCATED_POLY)).dim == 3


@pytest.mark.parametrize(
    "text, line",
    [
        ("vertex a\narrow f a b\n", 2),
        ("vertex a b\narrow f a b\nrelation f*f = 0\n", 3),
        ("vertex a b\nedge f a b\n", 2),
        ("vertex a b\narrow f a b\nrelation f = 1\n", 3),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(QuiverParseError) as exc:
        parse_quiver_file(text)
    assert exc.value.line == line


def test_linear_quiver_dims():
    for n in range(1, 5):
        a = build_path_algebra(Presentation(linear_quiver(n)))
        assert a.dim == n * (n + 1) // 2

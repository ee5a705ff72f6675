from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from adrtools.linalg import (
    Matrix,
    Subspace,
    determinant,
    inverse,
    kernel,
    quotient_map,
    rank,
    rref,
    solve,
)

entries = st.integers(-4, 4).map(Fraction)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return Matrix([[draw(entries) for _ in range(c)] for _ in range(r)], c)


@st.composite
def square(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    return Matrix([[draw(entries) for _ in range(n)] for _ in range(n)], n)


def to_sympy(m):
    return sympy.Matrix(m.nrows, m.ncols, [sympy.Rational(x.numerator, x.denominator) for x in m.flat()])


@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == to_sympy(m).rank()


@given(matrices())
def test_kernel_is_annihilated_and_has_right_dimension(m):
    k = kernel(m)
    assert all(not any(m.apply(v)) for v in k.basis)
    assert k.dim + rank(m) == m.ncols


@given(matrices())
def test_rref_is_idempotent(m):
    red, rk, piv = rref(m)
    assert rref(red)[0] == red
    assert len(piv) == rk


@given(square())
def test_determinant_and_inverse(m):
    det = determinant(m)
    assert det == to_sympy(m).det()
    inv = inverse(m)
    if det == 0:
        assert inv is None
    else:
        assert inv @ m == Matrix.identity(m.nrows)


@given(matrices(), st.data())
def test_solve_consistent_systems(m, data):
    x = [data.draw(entries) for _ in range(m.ncols)]
    b = m.apply(x)
    y = solve(m, b)
    assert y is not None and m.apply(y) == b


def test_solve_reports_inconsistency():
    m = Matrix([[1, 0], [1, 0]], 2)
    assert solve(m, [1, 2]) is None


@st.composite
def subspace_pairs(draw, n=4):
    def vecs():
        k = draw(st.integers(0, 3))
        return [tuple(draw(entries) for _ in range(n)) for _ in range(k)]

    return Subspace.span(vecs(), n), Subspace.span(vecs(), n)


@settings(max_examples=60)
@given(subspace_pairs())
def test_grassmann_formula(pair):
    u, v = pair
    assert (u + v).dim + (u & v).dim == u.dim + v.dim
    assert (u & v) <= u and (u & v) <= v


@given(subspace_pairs(), st.data())
def test_quotient_project_lift(pair, data):
    u, _ = pair
    q = quotient_map(4, u)
    assert q.dim == 4 - u.dim
    x = tuple(data.draw(entries) for _ in range(4))
    y = q.lift(q.project(x))
    assert u.contains(tuple(a - b for a, b in zip(x, y)))
    assert q.preimage(Subspace.zero(q.dim)) == u


def test_coordinates_reject_outside_vectors():
    s = Subspace.span([(1, 0, 0)], 3)
    assert s.coordinates((2, 0, 0)) == (2,)
    with pytest.raises(ValueError):
        s.coordinates((0, 1, 0))


def test_canonical_basis_equality():
    a = Subspace.span([(1, 1, 0), (0, 1, 1)], 3)
    b = Subspace.span([(1, 0, -1), (1, 2, 1), (0, 2, 2)], 3)
    assert a == b and hash(a) == hash(b)

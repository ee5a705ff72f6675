from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from adrtools.algebra import (
    FDAlgebra,
    algebra_from_matrices,
    basic_algebra,
    center,
    gabriel_quiver,
    ideal_from_generators,
    idempotent_classes,
    is_rigid,
    is_semisimple,
    jacobson_radical,
    left_annihilator,
    loewy_length,
    opposite,
    primitive_orthogonal_idempotents,
    quotient_algebra,
    radical_series,
    socle_series,
    transporter,
    validate_algebra,
)
from adrtools.linalg import Matrix, Subspace
from adrtools.quiver import Arrow, Presentation, Quiver, Relation, build_path_algebra


def unit_matrix(n, i, j):
    return Matrix([[1 if (r, c) == (i, j) else 0 for c in range(n)] for r in range(n)], n)


def matrix_algebra(n, upper=False):
    mats = [unit_matrix(n, i, j) for i in range(n) for j in range(n) if not upper or i <= j]
    return algebra_from_matrices(mats)[0]


def labelled(a, *names):
    return Subspace.span([a.basis(a.labels.index(x)) for x in names], a.dim)


def test_a2_base_data(a2):
    assert a2.dim == 3
    assert validate_algebra(a2).ok
    rad = jacobson_radical(a2)
    assert rad.space == labelled(a2, "f")
    assert loewy_length(a2) == 2
    assert not is_rigid(a2)


def test_a2_is_self_opposite_up_to_swap(a2):
    op = opposite(a2)
    assert validate_algebra(op).ok
    assert gabriel_quiver(a2).is_isomorphic(gabriel_quiver(op))


def test_matrix_algebra_is_semisimple_and_simple():
    m2 = matrix_algebra(2)
    assert is_semisimple(m2)
    assert center(m2).dim == 1
    idems = primitive_orthogonal_idempotents(m2)
    assert len(idems) == 2
    assert len(idempotent_classes(m2, idems)) == 1
    basic, _ = basic_algebra(m2)
    assert basic.dim == 1


def test_upper_triangular_radical_is_strictly_upper():
    t3 = matrix_algebra(3, upper=True)
    rad = jacobson_radical(t3)
    assert rad.dim == 3
    assert loewy_length(t3) == 3
    q = gabriel_quiver(t3)
    assert q.vertices == 3 and q.arrow_count == 2


def test_rigidity_of_truncated_polynomial(kx3):
    assert kx3.dim == 3
    assert is_rigid(kx3)
    assert [s.dim for s in radical_series(kx3)] == [3, 2, 1, 0]
    assert [s.dim for s in socle_series(kx3)] == [0, 1, 2, 3]


def test_corrupted_structure_constant_is_caught(a2):
    table = [list(row) for row in a2.table]
    i, j = a2.labels.index("f"), a2.labels.index("e_a")
    table[i][j] = tuple(2 * x for x in table[i][j])
    bad = FDAlgebra(table, a2.unit, a2.labels)
    rep = validate_algebra(bad)
    assert not rep.ok


def test_quotient_by_radical(a2):
    q, pi = quotient_algebra(a2, jacobson_radical(a2))
    assert q.dim == 2 and is_semisimple(q)
    assert pi.verify(unital=True).ok


def test_transporter_and_annihilator(a2):
    f = labelled(a2, "f")
    zero = Subspace.zero(3)
    assert left_annihilator(a2, f) == transporter(a2, f, zero, "left")
    assert left_annihilator(a2, f) == labelled(a2, "e_a", "f")


@st.composite
def linear_presentations(draw):
    n = draw(st.integers(1, 4))
    names = tuple(f"v{k}" for k in range(n))
    arrows = tuple(Arrow(f"x{k}", names[k], names[k + 1]) for k in range(n - 1))
    zero_at = [k for k in range(n - 2) if draw(st.booleans())]
    rels = tuple(Relation(((Fraction(1), (f"x{k + 1}", f"x{k}")),)) for k in zero_at)
    return Presentation(Quiver(names, arrows), rels), n, zero_at


def surviving_paths(n, zero_at):
    """Paths from i to j (i <= j) avoiding every killed composite."""
    return [(i, j) for i in range(n) for j in range(i, n) if not any(i <= k and k + 2 <= j for k in zero_at)]


@settings(max_examples=30, deadline=None)
@given(linear_presentations())
def test_linear_quivers_against_path_count(data):
    p, n, zero_at = data
    a = build_path_algebra(p)
    paths = surviving_paths(n, zero_at)
    assert a.dim == len(paths)
    assert jacobson_radical(a).dim == len(paths) - n
    assert loewy_length(a) == max(j - i for i, j in paths) + 1
    q = gabriel_quiver(a)
    assert q.vertices == n and q.arrow_count == n - 1
    assert validate_algebra(a).ok


def test_ideal_generated_by_vertex(a2):
    ideal = ideal_from_generators(a2, [a2.basis(a2.labels.index("e_a"))])
    assert ideal.space == labelled(a2, "e_a", "f")

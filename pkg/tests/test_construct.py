from hypothesis import given, settings
from hypothesis import strategies as st

from adrtools.a2cases import a2_ideal, dimension_oracle
from adrtools.algebra import (
    gabriel_quiver,
    basic_algebra,
    quotient_algebra,
    span_of_products,
    validate_algebra,
)
from adrtools.construct import (
    adr_algebra,
    build_A,
    check_block_grading,
    check_representative_independence,
    delta_module,
    ideal_chain,
    projective_space,
    verify_chain_theorem,
    verify_ses_delta,
)
from adrtools.systems import IdealSystem


def test_adr_dimensions(adr):
    assert adr.dim == 9
    assert validate_algebra(adr.algebra).ok
    assert ideal_chain(adr).dims() == [9, 8, 0]


def test_first_chain_ideal_by_brute_force(adr):
    a = adr.algebra
    basis = [a.basis(k) for k in range(a.dim)]
    left = [a.mul(x, adr.e(2)) for x in basis]
    assert span_of_products(a, left, basis) == ideal_chain(adr)[1].space
    # two copies of A e_2
    assert ideal_chain(adr)[1].dim == 2 * projective_space(adr, 2).dim


def test_chain_theorem_on_adr(adr):
    rep = verify_chain_theorem(adr)
    assert rep.ok, rep.failures


def test_ses_on_adr(adr):
    for k in (1, 2):
        rep = verify_ses_delta(adr, k)
        assert rep.ok, rep.failures
    assert (projective_space(adr, 1).dim, projective_space(adr, 2).dim, delta_module(adr, 1).dim) == (5, 4, 1)


def test_block_grading(adr, kx3_adr):
    assert check_block_grading(adr).ok
    assert check_block_grading(kx3_adr).ok


def test_d1_gives_quotient(a2):
    for name in ("Rea", "ebR", "J", "R"):
        ideal = a2_ideal(a2, name)
        c = build_A(a2, IdealSystem.from_ideal(a2, ideal))
        q, _ = quotient_algebra(a2, ideal)
        assert c.dim == q.dim


def test_corpus_dimensions_and_chain(a2_built):
    for c in a2_built:
        assert c.dim == dimension_oracle(c.system)
        rep = verify_chain_theorem(c)
        assert rep.ok, rep.failures


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_representative_independence_random_seeds(adr, seed):
    assert check_representative_independence(adr, trials=25, seed=seed).ok


def test_adr_comparison(a2, kx3):
    end, phi, c = adr_algebra(a2)
    assert end.dim == 9 and c.dim == 9
    assert phi.verify(bijective=True).ok
    end, phi, c = adr_algebra(kx3)
    # End of k[x]/x ⊕ k[x]/x^2 ⊕ k[x]/x^3 has dimension sum of min(a, b)
    assert end.dim == sum(min(p, q) for p in (1, 2, 3) for q in (1, 2, 3)) == c.dim


def test_adr_basic_quiver(adr):
    basic, _ = basic_algebra(adr.algebra)
    assert basic.dim == 5
    q = gabriel_quiver(basic)
    assert q.vertices == 3 and q.arrow_count == 2


def test_truncated_polynomial_construction(kx3_adr):
    assert kx3_adr.dim == 14 == dimension_oracle(kx3_adr.system)
    rep = verify_chain_theorem(kx3_adr)
    assert rep.ok, rep.failures
    for k in (1, 2, 3):
        assert verify_ses_delta(kx3_adr, k).ok


def test_element_rejects_outside_ideal(a2, adr):
    import pytest

    f = a2.basis(a2.labels.index("e_b"))
    with pytest.raises(ValueError):
        adr.element(1, 2, f)

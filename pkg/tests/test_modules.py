from hypothesis import given, settings
from hypothesis import strategies as st

from adrtools.modules import (
    AModule,
    SimpleLabel,
    composition_multiplicities,
    direct_sum,
    hom_space,
    idempotent_image,
    indecomposable_decomposition,
    is_isomorphic,
    is_projective,
    projective_cover_map,
    regular_module,
    representations,
    simples_with_labels,
    validate_module,
)


def test_regular_module_is_a_module(a2, adr):
    for a in (a2, adr.algebra):
        assert validate_module(regular_module(a)).ok


def test_broken_action_is_caught(a2):
    reg = regular_module(a2)
    action = list(reg.action)
    action[0] = action[0].scaled(2)
    assert not validate_module(AModule(a2, action)).ok


def test_yoneda_dimensions(adr):
    """dim Hom(A e, M) = dim e M on every regular summand."""
    a = adr.algebra
    reps = representations(a)
    reg = regular_module(a)
    for e, p in zip(reps.idempotents, reps.projectives):
        for m in list(reps.projectives) + list(reps.simples) + [reg]:
            assert len(hom_space(p, m)) == idempotent_image(m, e).dim


def test_multiplicities_add_up(adr):
    reps = representations(adr.algebra)
    for m in reps.projectives:
        mults = composition_multiplicities(m, reps)
        assert sum(mults[n] * s.dim for n, s in zip(reps.names, reps.simples)) == m.dim
        assert is_projective(m, reps)
    assert not all(is_projective(s, reps) for s in reps.simples)


def test_projective_cover_is_onto(adr):
    reps = representations(adr.algebra)
    for s in reps.simples:
        cover = projective_cover_map(s, reps)
        assert cover.is_homomorphism() and cover.is_surjective()


def test_decomposition_of_regular_module(adr):
    reg = regular_module(adr.algebra)
    pieces = indecomposable_decomposition(reg)
    assert sum(p.module.dim for p in pieces) == adr.dim
    for p in pieces:
        assert p.inclusion.is_homomorphism() and p.projection.is_homomorphism()
        assert len(indecomposable_decomposition(p.module)) == 1


@settings(max_examples=15, deadline=None)
@given(st.permutations(range(3)))
def test_direct_sums_up_to_order(adr, perm):
    reps = representations(adr.algebra)
    mods = list(reps.projectives)
    left, _, _ = direct_sum(mods)
    right, _, _ = direct_sum([mods[k] for k in perm])
    res = is_isomorphic(left, right, reps)
    assert res.isomorphic
    assert res.certificate.is_homomorphism() and res.certificate.is_isomorphism()


def test_non_isomorphic_simples(adr):
    reps = representations(adr.algebra)
    s = reps.simples
    for i in range(len(s)):
        for j in range(len(s)):
            assert is_isomorphic(s[i], s[j], reps).isomorphic == (i == j)


def test_labels_of_adr(adr):
    labelled = simples_with_labels(adr)
    assert [str(x) for x in labelled.names] == ["(1,b)", "(2,a)", "(2,b)"]
    assert SimpleLabel(1, "b").below(SimpleLabel(2, "a"))
    assert not SimpleLabel(2, "a").below(SimpleLabel(2, "b"))


def test_labels_of_dual_case(a2):
    from adrtools.a2cases import case_system
    from adrtools.construct import build_A

    c = build_A(a2, case_system(a2, "jacobson_dual"))
    assert sorted(str(x) for x in simples_with_labels(c).names) == ["(1,a)", "(1,b)", "(2,a)"]

import pytest

from adrtools.a2cases import a2_ideal
from adrtools.algebra import is_semisimple
from adrtools.construct import build_A, delta_module
from adrtools.modules import SimpleLabel, composition_multiplicities, simples_with_labels
from adrtools.reports import NotDeltaFiltered
from adrtools.strat import (
    build_T,
    delta_layer_check,
    double_dual_check,
    ext1_dim,
    ext_criterion,
    quotient_action,
    ringel_dual_report,
    standard_modules,
    stratified_report,
    verify_T_structure,
    verify_bimodule,
    verify_double_centralizer,
    verify_faithful,
    verify_quasi_hereditary,
)
from adrtools.systems import IdealSystem

L = SimpleLabel


@pytest.fixture(scope="module")
def adr_T(adr):
    return build_T(adr)


@pytest.fixture(scope="module")
def nontrivial(a2_built):
    return [c for c in a2_built if c.dim and not is_semisimple(c.algebra)]


def test_standard_modules_of_adr(adr):
    stds = standard_modules(adr)
    labelled = simples_with_labels(adr)
    assert {str(k): v.module.dim for k, v in stds.items()} == {"(1,b)": 1, "(2,a)": 3, "(2,b)": 1}
    for lab, std in stds.items():
        assert composition_multiplicities(std.module, labelled)[lab] == 1
        if lab.level == adr.d:
            assert std.module.dim == std.projective.dim


def test_delta_layer_check(adr):
    labelled = simples_with_labels(adr)
    stds = standard_modules(adr)
    for lab, p in zip(labelled.names, labelled.projectives):
        table = delta_layer_check(adr, p)
        assert table[lab] == 1
        assert all(nu.level >= lab.level for nu in table)
        assert delta_layer_check(adr, stds[lab].module) == {lab: 1}
    simple = labelled.simples[labelled.index(L(2, "a"))]
    with pytest.raises(NotDeltaFiltered):
        delta_layer_check(adr, simple)


def test_quasi_hereditary_adr(adr):
    cert = verify_quasi_hereditary(adr)
    assert cert.ok, cert.report.failures
    order = cert.order_pairs()
    assert ("(1,b)", "(2,a)") in order and ("(1,b)", "(2,b)") in order
    assert ("(2,a)", "(2,b)") not in order
    assert cert.delta_decompositions == {1: ["(1,b)"], 2: ["(2,a)", "(2,b)"]}


def test_quasi_hereditary_corpus(nontrivial, kx3_adr):
    assert len(nontrivial) == 11
    for c in nontrivial + [kx3_adr]:
        cert = verify_quasi_hereditary(c)
        assert cert.ok, cert.report.failures


def test_T_blocks(adr, adr_T):
    assert adr_T.block_dims() == {(1, 1): 3, (1, 2): 1, (2, 1): 2, (2, 2): 0}
    assert adr_T.dim == 6 and adr_T.b.dim == 6
    assert verify_bimodule(adr_T).ok


def test_d1_zero_ideal(a2):
    c = build_A(a2, IdealSystem.from_ideal(a2, a2_ideal(a2, "0")))
    t = build_T(c)
    assert t.dim == 3
    dc = verify_double_centralizer(t)
    assert dc.ok and dc.dims["End_A(T)"] == 3
    assert verify_faithful(t).ok
    with pytest.raises(ValueError):
        verify_quasi_hereditary(c)
    rep = stratified_report(c, t)
    assert rep.ok, rep.report.failures


def test_faithful_and_mutation(adr_T):
    assert verify_faithful(adr_T).ok
    bad = quotient_action(adr_T, 1)
    rep = verify_faithful(bad)
    assert not rep.ok and rep.dims["ann_A"] > 0


def test_double_centralizer(adr_T, a2_built):
    rep = verify_double_centralizer(adr_T)
    assert rep.ok
    assert rep.dims["End_A(T)"] == rep.dims["B"] == 6
    assert rep.dims["End_B(T)"] == rep.dims["A"] == 9
    for c in a2_built:
        assert verify_double_centralizer(build_T(c)).ok


def test_ext_criterion_against_presentation(nontrivial):
    """Both routes to Ext^1(Δ_i, M) = 0 agree; nonzero groups do occur."""
    nonzero = 0
    for c in nontrivial:
        t = build_T(c)
        labelled = simples_with_labels(c)
        mods = list(labelled.simples) + [delta_module(c, k) for k in range(1, c.d + 1)]
        mods += [t.column_module(j) for j in range(1, c.d + 1)]
        for m in mods:
            for i in range(1, c.d):
                dim = ext1_dim(c, i, m)
                nonzero += dim > 0
                assert (dim == 0) == ext_criterion(c, m, i)
    assert nonzero > 0


def test_T_structure(adr, adr_T, a2_built, kx3_adr):
    assert verify_T_structure(adr, adr_T).ok
    for c in a2_built + [kx3_adr]:
        rep = verify_T_structure(c, build_T(c))
        assert rep.ok, rep.failures


def test_ringel_report_adr(adr, adr_T):
    r = ringel_dual_report(adr, adr_T)
    assert r.ok, r.report.failures
    assert r.basic_end_op.dim == 6
    q = r.quiver_end_op
    assert q.vertices == 3 and q.arrow_count == 2
    assert sorted(sum(row) for row in q.arrows) == [0, 1, 1]
    assert {str(s.label): s.column for s in r.summands} == {"(1,b)": 2, "(2,a)": 1, "(2,b)": 1}
    assert r.iso.verify(bijective=True).ok


def test_double_dual(nontrivial, kx3_adr):
    for c in nontrivial[:4] + [kx3_adr]:
        rep = double_dual_check(c)
        assert rep.ok, rep.failures

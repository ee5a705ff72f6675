
from adrtools.a2cases import (
    case_system,
    check_case,
    load_cases,
    swap_isomorphism,
    triple_name,
    verify_swap_duality,
)
from adrtools.construct import build_A
from adrtools.strat import labelled_quiver


def test_swap_is_an_isomorphism(a2):
    assert swap_isomorphism(a2).verify(bijective=True).ok


def test_each_named_case(a2):
    for entry in load_cases()["cases"]:
        rep = check_case(a2, entry["name"])
        assert rep.ok, (entry["name"], rep.failures)


def test_named_cases_are_distinct_and_enumerated(a2, a2_corpus):
    names = {triple_name(a2, s) for s in a2_corpus}
    triples = [tuple(e["triple"]) for e in load_cases()["cases"]]
    assert len(set(triples)) == 9
    assert set(triples) <= names


def test_adr_labelled_arrows(a2):
    c = build_A(a2, case_system(a2, "jacobson"))
    arrows = {(str(s), str(t)) for s, t, _ in labelled_quiver(c).arrow_list()}
    assert arrows == {("(2,a)", "(1,b)"), ("(1,b)", "(2,b)")}


def test_swap_duality(a2):
    rep = verify_swap_duality(a2)
    assert rep.ok, rep.failures

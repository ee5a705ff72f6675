import itertools

import pytest

from adrtools.a2cases import a2_ideal, triple_name
from adrtools.algebra import ideal_product, jacobson_radical, left_annihilator
from adrtools.systems import (
    IdealSystem,
    check_power_inclusions,
    default_ideal_pool,
    dual_system,
    dump_system,
    enumerate_semisimple_systems,
    is_semisimple_system,
    jacobson_system,
    parse_system,
    truncate,
    validate_system,
    verify_rigid_duality,
)

NAMES = ["R", "Rea", "ebR", "J", "0"]


def test_jacobson_system_grid(a2):
    s = jacobson_system(a2)
    assert s.d == 2
    assert triple_name(a2, s) == ("Rea", "0", "J")
    assert validate_system(s).ok
    assert is_semisimple_system(s)


def test_power_inclusions(a2, kx3):
    for a in (a2, kx3):
        rad = jacobson_radical(a)
        s = jacobson_system(a)
        rep = check_power_inclusions(s, rad)
        assert rep.ok, rep.failures
        d = s.d
        for i in range(1, d + 2):
            assert s.space(i, d + 1) == _power(rad, d + 1 - i).space
            assert s.space(1, d + 2 - i) == left_annihilator(a, _power(rad, i - 1).space)


def _power(i, n):
    from adrtools.algebra import ideal_power

    return ideal_power(i, n)


def test_kx3_jacobson_dims(kx3):
    s = jacobson_system(kx3)
    assert s.d == 3
    assert s.dims() == (2, 1, 0, 2, 1, 2)


def test_rigid_duality(a2, kx3):
    assert verify_rigid_duality(a2) == (False, False)
    assert verify_rigid_duality(kx3) == (True, True)


def test_dual_is_an_involution(a2_corpus):
    for s in a2_corpus:
        dd = dual_system(dual_system(s))
        assert dd.same_grid(s)
        assert validate_system(dual_system(s)).ok


def test_pool_has_five_ideals(a2):
    assert len(default_ideal_pool(a2)) == 5


def brute_force_triples(a):
    """Triples (K, I, L) with K ⊇ J ⊆ L, K ⊇ I ⊆ L and KL ⊆ I, from the five ideals."""
    ideals = {n: a2_ideal(a, n) for n in NAMES}
    rad = ideals["J"]
    out = set()
    for k, i, l in itertools.product(NAMES, repeat=3):
        K, I, L = ideals[k], ideals[i], ideals[l]
        if rad <= K and rad <= L and I <= K and I <= L and ideal_product(K, L) <= I:
            out.add((k, i, l))
    return out


def test_enumeration_matches_triple_condition(a2, a2_corpus):
    found = {triple_name(a2, s) for s in a2_corpus}
    assert len(found) == len(a2_corpus)
    assert found == brute_force_triples(a2)
    assert len(found) == 20


def test_enumeration_d1(a2):
    assert len(enumerate_semisimple_systems(a2, 1)) == 4


def test_grid_mutation_trips_validation(a2):
    s = jacobson_system(a2)
    bad = s.with_entry((1, 3), a2_ideal(a2, "R").space)
    rep = validate_system(bad)
    assert not rep.ok
    bad = s.with_entry((2, 1), a2_ideal(a2, "J").space)
    assert validate_system(bad).certificates["first_failure"][0] == "b"


def test_truncate(a2):
    t = truncate(jacobson_system(a2))
    assert t.d == 1 and t.space(1, 2) == a2_ideal(a2, "Rea").space


def test_parse_dump_roundtrip(a2, a2_corpus):
    for s in a2_corpus:
        assert parse_system(dump_system(s), a2).same_grid(s)


@pytest.mark.parametrize(
    "text",
    [
        '{"d": 2, "ideals": {"1,2": ["e_a"], "1,3": []}}',
        '{"d": 2, "ideals": {"1,2": ["zz"], "1,3": [], "2,3": "*"}}',
        '{"d": 0, "ideals": {}}',
        "not json",
        '{"d": 1, "ideals": {"2,1": []}}',
    ],
)
def test_parse_errors(a2, text):
    with pytest.raises(ValueError):
        parse_system(text, a2)


def test_non_semisimple_system_is_flagged(a2):
    zero = a2_ideal(a2, "0")
    s = IdealSystem.from_ideal(a2, zero)
    assert validate_system(s).ok
    assert not is_semisimple_system(s)

"""The hereditary algebra ``R = k(a --f--> b)`` and its named 2-systems.

Ideals of ``R`` are written ``R``, ``Rea = <e_a, f>``, ``ebR = <e_b, f>``,
``J = <f>`` and ``0``. A 2-system is the triple ``(I[1,2], I[1,3], I[2,3])``.
Reference quivers live in ``data/a2_cases.json``; vertex ``v2a`` stands for
the simple labelled ``(2, a)``.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .algebra import (
    AlgebraMorphism,
    FDAlgebra,
    basic_algebra,
    gabriel_quiver,
    ideal_from_generators,
    opposite,
)
from .construct import build_A, induced_isomorphism
from .linalg import Matrix, unit_vector
from .quiver import build_path_algebra, parse_quiver_file
from .reports import CheckReport
from .strat import build_T, labelled_quiver, verify_quasi_hereditary
from .systems import (
    IdealSystem,
    dual_system,
    is_semisimple_system,
    jacobson_system,
    transport_system,
    validate_system,
)


def read_data(name: str) -> str:
    return resources.files("adrtools").joinpath("data", name).read_text()


@lru_cache(maxsize=None)
def a2_algebra() -> FDAlgebra:
    return build_path_algebra(parse_quiver_file(read_data("a2.quiver")))


@lru_cache(maxsize=None)
def load_cases() -> dict:
    return json.loads(read_data("a2_cases.json"))


def a2_ideal(a: FDAlgebra, name: str):
    labels = load_cases()["ideals"][name]
    return ideal_from_generators(a, [a.basis(a.labels.index(x)) for x in labels])


def triple_system(a: FDAlgebra, triple) -> IdealSystem:
    k, i, l = (a2_ideal(a, x) for x in triple)
    return IdealSystem.from_triple(a, k, i, l)


def case(name: str) -> dict:
    for entry in load_cases()["cases"]:
        if entry["name"] == name:
            return entry
    raise KeyError(name)


def case_system(a: FDAlgebra, name: str) -> IdealSystem:
    return triple_system(a, case(name)["triple"])


def triple_name(a: FDAlgebra, s: IdealSystem) -> tuple:
    """Names of ``(I[1,2], I[1,3], I[2,3])`` for a 2-system over ``a``."""
    names = {a2_ideal(a, x).space: x for x in load_cases()["ideals"]}
    return tuple(names[s.space(*key)] for key in [(1, 2), (1, 3), (2, 3)])


def swap_isomorphism(a: FDAlgebra) -> AlgebraMorphism:
    """``R^op -> R`` with ``e_a <-> e_b`` and ``f -> f``."""
    src = opposite(a)
    image = {"e_a": "e_b", "e_b": "e_a", "f": "f"}
    cols = [unit_vector(a.dim, a.labels.index(image[x])) for x in src.labels]
    sigma = AlgebraMorphism(src, a, Matrix.from_columns(cols, a.dim))
    sigma.verify("swap", unital=True, bijective=True).raise_if_failed()
    return sigma


def dimension_oracle(s: IdealSystem) -> int:
    """``dim A(R, I) = sum over i, j <= d of dim I[i,j] - dim I[i,d+1]``."""
    d = s.d
    return sum(s.space(i, j).dim - s.space(i, d + 1).dim for i in range(1, d + 1) for j in range(1, d + 1))


def _vertex_name(label) -> str:
    return f"v{label.level}{label.kappa}"


def check_case(a: FDAlgebra, name: str) -> CheckReport:
    entry = case(name)
    rep = CheckReport(f"case {name}")
    s = case_system(a, name)
    rep.absorb(validate_system(s))
    rep.require(bool(is_semisimple_system(s)), "system is not semisimple")
    c = build_A(a, s)
    ref = parse_quiver_file(entry["quiver"])
    ref_alg = build_path_algebra(ref)
    basic, _ = basic_algebra(c.algebra)
    rep.dims.update({"A": c.dim, "basic": basic.dim, "reference": ref_alg.dim})
    rep.require(c.dim == dimension_oracle(s), "dimension differs from the block count")
    rep.require(basic.dim == ref_alg.dim, "basic algebra and reference path algebra differ in dimension")
    if entry["relation"] == "isomorphic":
        rep.require(c.dim == ref_alg.dim, "algebra is not basic of the reference dimension")
    q, ref_q = gabriel_quiver(basic), gabriel_quiver(ref_alg)
    rep.require(q.is_isomorphic(ref_q), "Gabriel quiver differs from the reference")
    qh = verify_quasi_hereditary(c)
    rep.absorb(qh.report)
    if entry["labelled"]:
        lq = labelled_quiver(c)
        got = sorted((_vertex_name(s_), _vertex_name(t_), m) for s_, t_, m in lq.arrow_list())
        want = {}
        for arr in ref.quiver.arrows:
            key = (arr.source, arr.target)
            want[key] = want.get(key, 0) + 1
        rep.require(sorted(_vertex_name(x) for x in lq.labels) == sorted(ref.quiver.vertices),
                    "vertex labels differ from the reference")
        rep.require(got == sorted((s_, t_, m) for (s_, t_), m in want.items()), "labelled arrows differ from the reference")
        rep.certificates["arrows"] = [list(x) for x in got]
    rep.certificates["quiver"] = q.to_dict()
    return rep


def check_all_cases(a: FDAlgebra | None = None) -> list[CheckReport]:
    a = a or a2_algebra()
    return [check_case(a, entry["name"]) for entry in load_cases()["cases"]]


def verify_swap_duality(a: FDAlgebra | None = None) -> CheckReport:
    """The dual of the Jacobson system, moved along the swap ``R^op -> R``, is
    the named ``jacobson_dual`` system, and the induced map of algebras is an
    isomorphism from ``B = A(R^op, I°)``."""
    a = a or a2_algebra()
    rep = CheckReport("swap_duality")
    s = jacobson_system(a)
    c = build_A(a, s)
    t = build_T(c)
    sigma = swap_isomorphism(a)
    moved = transport_system(dual_system(s), sigma)
    target = case_system(a, "jacobson_dual")
    rep.require(moved.same_grid(target), "transported dual system differs from the named one")
    c2 = build_A(a, target)
    iso = induced_isomorphism(t.b, c2, sigma)
    rep.absorb(iso.verify("B -> A(R, swapped dual)", unital=True, bijective=True))
    rep.dims.update({"B": t.b.dim, "target": c2.dim})
    return rep

"""d-systems of ideals: validation, power/Jacobson systems, duality, truncation
and pool-relative enumeration.

A d-system is a grid ``I[i, j]`` (``1 <= i, j <= d+1``) of two-sided ideals
with ``I[i,j] I[j,k] ⊆ I[i,k]`` and ``I[i,j] = R`` whenever ``i >= j``. The
full grid is stored, lower triangle included.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Sequence

from .algebra import (
    FDAlgebra,
    Ideal,
    ideal_from_generators,
    ideal_power,
    is_rigid,
    is_semisimple,
    is_two_sided_ideal,
    jacobson_radical,
    opposite,
    quotient_algebra,
    radical_series,
    span_of_products,
    transporter,
    whole,
)
from .linalg import Subspace, format_fraction, to_fraction
from .reports import CheckReport, InternalInconsistency


class IdealSystem:
    def __init__(self, parent: FDAlgebra, d: int, grid: dict):
        if d < 1:
            raise ValueError("d must be at least 1")
        self.parent = parent
        self.d = d
        full = Subspace.full(parent.dim)
        self._grid = {}
        for i in range(1, d + 2):
            for j in range(1, d + 2):
                entry = grid.get((i, j))
                if entry is None:
                    if i < j:
                        raise ValueError(f"missing grid entry ({i},{j})")
                    entry = full
                space = entry.space if isinstance(entry, Ideal) else entry
                self._grid[(i, j)] = space

    @classmethod
    def from_upper(cls, parent: FDAlgebra, d: int, upper: dict) -> "IdealSystem":
        return cls(parent, d, dict(upper))

    @classmethod
    def from_ideal(cls, parent: FDAlgebra, ideal: Ideal | Subspace) -> "IdealSystem":
        """The 1-system with ``I[1,2] = ideal``."""
        return cls(parent, 1, {(1, 2): ideal})

    @classmethod
    def from_triple(cls, parent: FDAlgebra, k, i, l) -> "IdealSystem":
        """The 2-system ``I[1,2] = K, I[1,3] = I, I[2,3] = L``."""
        return cls(parent, 2, {(1, 2): k, (1, 3): i, (2, 3): l})

    def __getitem__(self, key: tuple[int, int]) -> Ideal:
        return Ideal(self.parent, self._grid[key], check=False)

    def space(self, i: int, j: int) -> Subspace:
        return self._grid[(i, j)]

    def upper_keys(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(1, self.d + 2) for j in range(i + 1, self.d + 2)]

    def with_entry(self, key: tuple[int, int], space: Subspace | Ideal) -> "IdealSystem":
        """Copy with one grid entry replaced (no validation)."""
        grid = dict(self._grid)
        grid[key] = space.space if isinstance(space, Ideal) else space
        out = IdealSystem.__new__(IdealSystem)
        out.parent, out.d, out._grid = self.parent, self.d, grid
        return out

    def dims(self) -> tuple:
        return tuple(self._grid[k].dim for k in self.upper_keys())

    def sort_key(self) -> tuple:
        return (self.dims(), tuple(repr(self._grid[k].basis) for k in self.upper_keys()))

    def same_grid(self, other: "IdealSystem") -> bool:
        return self.d == other.d and self._grid == other._grid

    def __eq__(self, other) -> bool:
        return isinstance(other, IdealSystem) and self.same_grid(other) and self.parent == other.parent

    def __hash__(self) -> int:
        return hash((self.d, tuple(self._grid[k] for k in self.upper_keys())))

    def __repr__(self) -> str:
        return f"IdealSystem(d={self.d}, upper dims={self.dims()})"


def validate_system(s: IdealSystem) -> CheckReport:
    """Axioms (a), (b) plus the derived inclusions ``I[i,j] ⊆ I[i,k]`` (j >= k)
    and ``I[j,k] ⊆ I[i,k]`` (j <= i)."""
    rep = CheckReport("validate_system", dims={"d": s.d, "upper": list(s.dims())})
    a = s.parent
    n = s.d + 1
    rng = range(1, n + 1)
    for key, space in s._grid.items():
        if not is_two_sided_ideal(a, space):
            rep.fail(f"entry {key} is not a two-sided ideal")
            return rep
    for i in rng:
        for j in rng:
            if i >= j and not s.space(i, j).is_full():
                rep.fail(f"axiom (b) fails: I[{i},{j}] != R")
                rep.certificates["first_failure"] = ["b", i, j]
                return rep
    for i, j, k in itertools.product(rng, repeat=3):
        prod = span_of_products(a, s.space(i, j).basis, s.space(j, k).basis)
        if not prod <= s.space(i, k):
            rep.fail(f"axiom (a) fails on triple ({i},{j},{k})")
            rep.certificates["first_failure"] = ["a", i, j, k]
            return rep
    for i, j, k in itertools.product(rng, repeat=3):
        if j >= k and not s.space(i, j) <= s.space(i, k):
            rep.fail(f"inclusion I[{i},{j}] ⊆ I[{i},{k}] fails")
            return rep
        if j <= i and not s.space(j, k) <= s.space(i, k):
            rep.fail(f"inclusion I[{j},{k}] ⊆ I[{i},{k}] fails")
            return rep
    return rep


@dataclass(frozen=True)
class SemisimpleFlags:
    levels: tuple

    def __bool__(self) -> bool:
        return all(self.levels)


def is_semisimple_system(s: IdealSystem) -> SemisimpleFlags:
    flags = []
    for k in range(1, s.d + 1):
        q, _ = quotient_algebra(s.parent, s.space(k, k + 1))
        flags.append(is_semisimple(q))
    return SemisimpleFlags(tuple(flags))


def nilpotency_index(ideal: Ideal) -> int:
    power = whole(ideal.parent)
    for n in range(ideal.parent.dim + 2):
        if power.is_zero():
            return n
        power = power * ideal
    raise ValueError("ideal is not nilpotent")


def power_system(a: FDAlgebra, l: Ideal) -> IdealSystem:
    """``I[i,j] = {x : x L^{d+1-j} ⊆ L^{d+1-i}}`` with ``d`` the nilpotency index of ``L``."""
    d = max(nilpotency_index(l), 1)
    powers = [ideal_power(l, k).space for k in range(d + 1)]
    grid = {}
    for i in range(1, d + 2):
        for j in range(1, d + 2):
            grid[(i, j)] = transporter(a, powers[d + 1 - j], powers[d + 1 - i], "left")
    s = IdealSystem(a, d, grid)
    validate_system(s).raise_if_failed()
    check_power_inclusions(s, l).raise_if_failed()
    return s


def check_power_inclusions(s: IdealSystem, l: Ideal) -> CheckReport:
    """``L^{d+1-i} = I[i,d+1] ⊆ I[i-1,d] ⊆ ... ⊆ I[1,d+2-i] = {x : x L^{i-1} = 0}``."""
    from .algebra import left_annihilator

    a, d = s.parent, s.d
    rep = CheckReport("power_system_inclusions", dims={"d": d})
    for i in range(1, d + 2):
        chain = [s.space(i - t, d + 1 - t) for t in range(i)]
        rep.require(chain[0] == ideal_power(l, d + 1 - i).space, f"I[{i},{d+1}] != L^{d+1-i}")
        for lo, hi in zip(chain, chain[1:]):
            rep.require(lo <= hi, f"chain inclusion fails at i={i}")
        rep.require(chain[-1] == left_annihilator(a, ideal_power(l, i - 1).space), f"I[1,{d+2-i}] is not the annihilator of L^{i-1}")
    return rep


def jacobson_system(a: FDAlgebra) -> IdealSystem:
    return power_system(a, jacobson_radical(a))


def dual_system(s: IdealSystem) -> IdealSystem:
    """``I°[i,j] = I[d+2-j, d+2-i]`` read as ideals of the opposite algebra."""
    d = s.d
    grid = {(i, j): s.space(d + 2 - j, d + 2 - i) for i in range(1, d + 2) for j in range(1, d + 2)}
    return IdealSystem(opposite(s.parent), d, grid)


def transport_system(s: IdealSystem, sigma) -> IdealSystem:
    """Image of ``s`` under an algebra isomorphism ``σ: s.parent -> R'``."""
    n = sigma.target.dim
    grid = {key: Subspace.span((sigma(v) for v in s.space(*key).basis), n)
            for key in itertools.product(range(1, s.d + 2), repeat=2)}
    return IdealSystem(sigma.target, s.d, grid)


def truncate(s: IdealSystem) -> IdealSystem:
    if s.d < 2:
        raise ValueError("truncation needs d >= 2")
    grid = {(i, j): s.space(i, j) for i in range(1, s.d + 1) for j in range(1, s.d + 1)}
    return IdealSystem(s.parent, s.d - 1, grid)


def verify_rigid_duality(a: FDAlgebra) -> tuple[bool, bool]:
    """(is_rigid, dual of the Jacobson system is the Jacobson system of the opposite).

    Both sides are computed independently and must agree.
    """
    rigid = bool(is_rigid(a))
    dual = dual_system(jacobson_system(a))
    other = jacobson_system(opposite(a))
    dual_is_jacobson = dual.same_grid(other)
    if rigid != dual_is_jacobson:
        raise InternalInconsistency(f"rigid={rigid} but dual-is-Jacobson={dual_is_jacobson}")
    return rigid, dual_is_jacobson


def default_ideal_pool(a: FDAlgebra, max_subset_dim: int = 10) -> list[Ideal]:
    """Ideals generated by subsets of the basis, plus the radical powers."""
    if a.dim > max_subset_dim:
        raise ValueError(f"basis-subset pool is limited to dimension {max_subset_dim}")
    seen: dict = {}
    for r in range(a.dim + 1):
        for subset in itertools.combinations(range(a.dim), r):
            ideal = ideal_from_generators(a, [a.basis(k) for k in subset])
            seen.setdefault(ideal.space, ideal)
    for space in radical_series(a):
        seen.setdefault(space, Ideal(a, space, check=False))
    return sorted(seen.values(), key=lambda x: (x.dim, repr(x.space.basis)))


def enumerate_semisimple_systems(a: FDAlgebra, d: int, ideal_pool: Sequence[Ideal] | None = None) -> list[IdealSystem]:
    """All semisimple d-systems with upper-triangle entries drawn from the pool."""
    pool = list(default_ideal_pool(a) if ideal_pool is None else ideal_pool)
    if not pool:
        raise ValueError("ideal pool is empty")
    spaces = []
    for ideal in pool:
        if ideal.space not in spaces:
            spaces.append(ideal.space)
    full = Subspace.full(a.dim)
    if full not in spaces:
        spaces.append(full)
    r_index = spaces.index(full)
    m = len(spaces)
    prod = [[span_of_products(a, spaces[p].basis, spaces[q].basis) for q in range(m)] for p in range(m)]
    prod_in = [[[prod[p][q] <= spaces[r] for r in range(m)] for q in range(m)] for p in range(m)]
    semisimple_quot = []
    for sp in spaces:
        q, _ = quotient_algebra(a, sp)
        semisimple_quot.append(is_semisimple(q))
    allowed = [p for p in range(m) if any(spaces[p] == i.space for i in pool)]

    n = d + 1
    upper = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    # fill longest-range entries last so that triple checks fire early
    upper.sort(key=lambda ij: (ij[1] - ij[0], ij))
    triples = list(itertools.product(range(1, n + 1), repeat=3))
    results = []
    assign: dict = {(i, j): r_index for i in range(1, n + 1) for j in range(1, i + 1)}

    def consistent(key) -> bool:
        for i, j, k in triples:
            if key not in ((i, j), (j, k), (i, k)):
                continue
            if (i, j) in assign and (j, k) in assign and (i, k) in assign:
                if not prod_in[assign[(i, j)]][assign[(j, k)]][assign[(i, k)]]:
                    return False
        return True

    def backtrack(pos: int) -> None:
        if pos == len(upper):
            results.append(IdealSystem(a, d, {key: spaces[p] for key, p in assign.items()}))
            return
        key = upper[pos]
        for p in allowed:
            if key[1] == key[0] + 1 and not semisimple_quot[p]:
                continue
            assign[key] = p
            if consistent(key):
                backtrack(pos + 1)
            del assign[key]

    backtrack(0)
    results.sort(key=IdealSystem.sort_key)
    return results


# system file format ---------------------------------------------------------

def _generator_vector(a: FDAlgebra, g, key: str):
    if isinstance(g, str):
        if g not in a.labels:
            raise ValueError(f"entry {key}: unknown basis label {g!r}")
        return a.basis(a.labels.index(g))
    if isinstance(g, dict):
        out = [to_fraction(0)] * a.dim
        for lab, c in g.items():
            if lab not in a.labels:
                raise ValueError(f"entry {key}: unknown basis label {lab!r}")
            out[a.labels.index(lab)] += to_fraction(c if not isinstance(c, float) else str(c))
        return tuple(out)
    raise ValueError(f"entry {key}: generator must be a label or a {{label: coefficient}} map")


def parse_system(text: str, a: FDAlgebra) -> IdealSystem:
    """Read ``{"d": 2, "ideals": {"1,2": ["e_a", "f"], "1,3": [], "2,3": "*"}}``.

    Every upper entry must be present; ``"*"`` stands for the whole algebra.
    Each listed entry is the ideal generated by its generators.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"system file is not valid JSON: {exc}") from None
    if not isinstance(data, dict) or "d" not in data or "ideals" not in data:
        raise ValueError("system file needs keys 'd' and 'ideals'")
    d = data["d"]
    if not isinstance(d, int) or d < 1:
        raise ValueError("'d' must be a positive integer")
    grid = {}
    for key, gens in data["ideals"].items():
        try:
            i, j = (int(x) for x in key.split(","))
        except ValueError:
            raise ValueError(f"bad grid key {key!r}; expected 'i,j'") from None
        if not (1 <= i < j <= d + 1):
            raise ValueError(f"grid key {key!r} is not an upper-triangle entry for d={d}")
        if gens == "*":
            grid[(i, j)] = Subspace.full(a.dim)
        else:
            if not isinstance(gens, list):
                raise ValueError(f"entry {key}: expected a generator list or '*'")
            grid[(i, j)] = ideal_from_generators(a, [_generator_vector(a, g, key) for g in gens]).space
    missing = [f"{i},{j}" for i in range(1, d + 2) for j in range(i + 1, d + 2) if (i, j) not in grid]
    if missing:
        raise ValueError(f"missing grid entries {missing}; write \"*\" for the whole algebra")
    return IdealSystem(a, d, grid)


def dump_system(s: IdealSystem) -> str:
    a = s.parent
    ideals = {}
    for i, j in s.upper_keys():
        space = s.space(i, j)
        if space.is_full():
            ideals[f"{i},{j}"] = "*"
            continue
        gens = []
        for v in space.basis:
            nz = [(k, c) for k, c in enumerate(v) if c]
            if len(nz) == 1 and nz[0][1] == 1:
                gens.append(a.labels[nz[0][0]])
            else:
                gens.append({a.labels[k]: format_fraction(c) for k, c in nz})
        ideals[f"{i},{j}"] = gens
    return json.dumps({"d": s.d, "ideals": ideals}, indent=2, ensure_ascii=False) + "\n"

"""Finite-dimensional left modules given by action matrices.

A module over ``a`` stores one ``dim x dim`` matrix per basis element of
``a``. Right modules are handled as left modules over ``opposite(a)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import (
    FDAlgebra,
    AlgebraMorphism,
    _coefficient_schedule,
    algebra_from_matrices,
    generators,
    idempotent_classes,
    jacobson_radical,
    primitive_orthogonal_idempotents,
)
from .linalg import (
    ZERO,
    Matrix,
    Subspace,
    Vector,
    _Echelon,
    _sparse,
    determinant,
    kernel,
    kernel_of_rows,
    linear_combination,
    quotient_map,
    unit_vector,
)
from .reports import CheckReport, VerificationError


class AModule:
    def __init__(self, algebra: FDAlgebra, action: Sequence[Matrix], check: bool = False):
        if len(action) != algebra.dim:
            raise ValueError(f"need {algebra.dim} action matrices, got {len(action)}")
        self.algebra = algebra
        self.action = tuple(action)
        dims = {m.shape for m in self.action}
        if len(dims) > 1:
            raise ValueError("action matrices have different shapes")
        if self.action:
            n, m = self.action[0].shape
            if n != m:
                raise ValueError("action matrices must be square")
            self.dim = n
        else:
            self.dim = 0
        self._cache: dict = {}
        if check:
            validate_module(self).raise_if_failed()

    def act(self, x: Sequence, v: Sequence) -> Vector:
        return self.action_of(x).apply(v)

    def action_of(self, x: Sequence) -> Matrix:
        return linear_combination(x, self.action, self.dim, self.dim)

    def generator_actions(self) -> list[Matrix]:
        if "gens" not in self._cache:
            self._cache["gens"] = [self.action_of(g) for g in generators(self.algebra)]
        return self._cache["gens"]

    def __repr__(self) -> str:
        return f"AModule(dim={self.dim} over dim {self.algebra.dim})"


def validate_module(m: AModule) -> CheckReport:
    rep = CheckReport("validate_module", dims={"dim": m.dim})
    a = m.algebra
    if m.action_of(a.unit) != Matrix.identity(m.dim):
        rep.fail("unit does not act as the identity")
        return rep
    for i, j in itertools.product(range(a.dim), repeat=2):
        if m.action_of(a.table[i][j]) != m.action[i] @ m.action[j]:
            rep.fail(f"action is not multiplicative on basis pair ({i}, {j})")
            return rep
    return rep


@dataclass(frozen=True)
class ModuleMorphism:
    source: AModule
    target: AModule
    matrix: Matrix

    def __call__(self, v: Sequence) -> Vector:
        return self.matrix.apply(v)

    def is_homomorphism(self) -> bool:
        return all(
            self.matrix @ self.source.action[k] == self.target.action[k] @ self.matrix
            for k in range(self.source.algebra.dim)
        )

    def kernel(self) -> Subspace:
        return kernel(self.matrix)

    def image(self) -> Subspace:
        return Subspace.span(self.matrix.columns(), self.target.dim)

    def is_injective(self) -> bool:
        return self.kernel().is_zero()

    def is_surjective(self) -> bool:
        return self.image().dim == self.target.dim

    def is_isomorphism(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()

    def compose(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """``self ∘ other``."""
        return ModuleMorphism(other.source, self.target, self.matrix @ other.matrix)


# constructions -----------------------------------------------------------

def regular_module(a: FDAlgebra) -> AModule:
    return AModule(a, [a.left_matrix(a.basis(k)) for k in range(a.dim)])


def right_regular_module(a: FDAlgebra) -> AModule:
    """``a`` as a right module, i.e. a left module over ``opposite(a)``."""
    from .algebra import opposite

    return AModule(opposite(a), [a.right_matrix(a.basis(k)) for k in range(a.dim)])


def submodule(m: AModule, space: Subspace) -> tuple[AModule, ModuleMorphism]:
    """The submodule on ``space`` (must be stable) with its inclusion."""
    basis = space.basis
    action = []
    for mat in m.action:
        cols = []
        for b in basis:
            w = mat.apply(b)
            if not space.contains(w):
                raise ValueError("subspace is not a submodule")
            cols.append(space.coordinates(w))
        action.append(Matrix.from_columns(cols, space.dim))
    sub = AModule(m.algebra, action)
    return sub, ModuleMorphism(sub, m, Matrix.from_columns(list(basis), m.dim))


def quotient_module(m: AModule, space: Subspace) -> tuple[AModule, ModuleMorphism]:
    """``m / space`` (space must be stable) with its projection."""
    q = quotient_map(m.dim, space)
    action = []
    for mat in m.action:
        cols = [q.project(mat.apply(r)) for r in q.reps]
        action.append(Matrix.from_columns(cols, q.dim))
    for mat in m.generator_actions():
        for b in space.basis:
            if not space.contains(mat.apply(b)):
                raise ValueError("subspace is not a submodule")
    quot = AModule(m.algebra, action)
    return quot, ModuleMorphism(m, quot, q.matrix())


def subquotient(m: AModule, upper: Subspace, lower: Subspace) -> AModule:
    """``upper / lower`` for submodules ``lower ⊆ upper``."""
    sub, inc = submodule(m, upper)
    inner = Subspace.span((upper.coordinates(v) for v in lower.basis), upper.dim)
    quot, _ = quotient_module(sub, inner)
    return quot


def direct_sum(mods: Sequence[AModule]) -> tuple[AModule, list[ModuleMorphism], list[ModuleMorphism]]:
    if not mods:
        raise ValueError("empty direct sum")
    a = mods[0].algebra
    total = sum(x.dim for x in mods)
    offsets = list(itertools.accumulate([0] + [x.dim for x in mods]))
    action = []
    for k in range(a.dim):
        rows = [[ZERO] * total for _ in range(total)]
        for x, off in zip(mods, offsets):
            mat = x.action[k]
            for r in range(x.dim):
                for c in range(x.dim):
                    rows[off + r][off + c] = mat.rows[r][c]
        action.append(Matrix(rows, total))
    s = AModule(a, action)
    incs, projs = [], []
    for x, off in zip(mods, offsets):
        inc = Matrix.from_columns([unit_vector(total, off + c) for c in range(x.dim)], total)
        incs.append(ModuleMorphism(x, s, inc))
        projs.append(ModuleMorphism(s, x, inc.transpose()))
    return s, incs, projs


def generated_submodule(m: AModule, vectors: Sequence[Sequence]) -> Subspace:
    ech = _Echelon(m.dim)
    queue = []
    for v in vectors:
        if ech.insert(_sparse(v)):
            queue.append(tuple(v))
    gens = m.generator_actions()
    while queue:
        v = queue.pop()
        for g in gens:
            w = g.apply(v)
            if ech.insert(_sparse(w)):
                queue.append(w)
    return Subspace(m.dim, ech.basis(), ech.pivots())


def ideal_times_module(m: AModule, space: Subspace) -> Subspace:
    """``I·M`` for a two-sided ideal ``I`` of the algebra (given as a subspace)."""
    mats = [m.action_of(x) for x in space.basis]
    return Subspace.span((mat.column(c) for mat in mats for c in range(m.dim)), m.dim)


def annihilated_by(m: AModule, space: Subspace) -> Subspace:
    """``{v : x v = 0 for all x in space}``."""
    rows = []
    for x in space.basis:
        rows.extend(m.action_of(x).rows)
    return kernel_of_rows(rows, m.dim)


def idempotent_image(m: AModule, e: Sequence) -> Subspace:
    """``e M`` as a subspace of ``M``."""
    return Subspace.span(m.action_of(e).columns(), m.dim)


def module_over_quotient(m: AModule, proj: AlgebraMorphism) -> AModule:
    """Regard ``m`` (annihilated by the kernel of ``proj``) as a module over the quotient."""
    q = proj.qmap
    if q is None:
        raise ValueError("projection carries no quotient map")
    for v in q.subspace.basis:
        if not m.action_of(v).is_zero():
            raise ValueError("module is not annihilated by the kernel")
    return AModule(proj.target, [m.action_of(r) for r in q.reps])


def left_ideal_module(a: FDAlgebra, space: Subspace) -> AModule:
    """A left ideal (e.g. ``A e``) as a submodule of the regular module."""
    return submodule(regular_module(a), space)[0]


def projective_module(a: FDAlgebra, e: Sequence) -> tuple[AModule, Subspace]:
    """``A e`` with its carrier subspace inside ``a``."""
    space = Subspace.span((a.mul(a.basis(k), e) for k in range(a.dim)), a.dim)
    return left_ideal_module(a, space), space


# radical, socle, top -----------------------------------------------------

def radical_of_module(m: AModule) -> tuple[AModule, ModuleMorphism]:
    space = ideal_times_module(m, jacobson_radical(m.algebra).space)
    return submodule(m, space)


def socle_of_module(m: AModule) -> tuple[AModule, ModuleMorphism]:
    space = annihilated_by(m, jacobson_radical(m.algebra).space)
    return submodule(m, space)


def top(m: AModule) -> tuple[AModule, ModuleMorphism]:
    space = ideal_times_module(m, jacobson_radical(m.algebra).space)
    return quotient_module(m, space)


# hom spaces ---------------------------------------------------------------

def hom_space(m: AModule, n: AModule, check: bool = True) -> list[ModuleMorphism]:
    """Basis of ``Hom_A(m, n)``, solving ``X ρ_m(g) = ρ_n(g) X`` over algebra generators."""
    if m.algebra is not n.algebra and m.algebra != n.algebra:
        raise ValueError("modules over different algebras")
    p, q = n.dim, m.dim
    nvars = p * q
    if nvars == 0:
        return []
    rows = []
    for gm, gn in zip(m.generator_actions(), n.generator_actions()):
        gm_cols = [_sparse(gm.column(c)) for c in range(q)]
        gn_rows = [_sparse(gn.rows[r]) for r in range(p)]
        for r in range(p):
            for c in range(q):
                row: dict = {}
                for k, v in gm_cols[c].items():
                    idx = r * q + k
                    row[idx] = row.get(idx, ZERO) + v
                for k, v in gn_rows[r].items():
                    idx = k * q + c
                    row[idx] = row.get(idx, ZERO) - v
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    sol = kernel_of_rows(rows, nvars)
    out = [ModuleMorphism(m, n, Matrix([b[r * q:(r + 1) * q] for r in range(p)], q)) for b in sol.basis]
    if check:
        for f in out:
            if not f.is_homomorphism():
                raise VerificationError("hom_space produced a non-intertwining map")
    return out


def end_algebra(m: AModule) -> tuple[FDAlgebra, list[Matrix]]:
    """``End_A(m)`` with composition as product, and its basis matrices."""
    maps = hom_space(m, m)
    if not maps:
        return FDAlgebra.zero_algebra(), []
    return algebra_from_matrices([f.matrix for f in maps])


# representation data -------------------------------------------------------

@dataclass
class Representations:
    """One primitive idempotent per simple, with ``P = A e`` and ``L = top P``."""

    algebra: FDAlgebra
    names: list
    idempotents: list
    projectives: list = field(default_factory=list)
    simples: list = field(default_factory=list)

    def index(self, name) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown simple label {name!r}") from None


def representations(a: FDAlgebra, names: Sequence | None = None, idempotents: Sequence | None = None) -> Representations:
    key = ("reps", tuple(names) if names is not None else None)
    cacheable = idempotents is None
    if cacheable and key in a._cache:
        return a._cache[key]
    if idempotents is None:
        idems = primitive_orthogonal_idempotents(a)
        idempotents = [idems[c[0]] for c in idempotent_classes(a, idems)]
    idempotents = list(idempotents)
    names = list(names) if names is not None else [str(k) for k in range(len(idempotents))]
    out = Representations(a, names, idempotents)
    for e in idempotents:
        p, _ = projective_module(a, e)
        out.projectives.append(p)
        out.simples.append(top(p)[0])
    if cacheable:
        a._cache[key] = out
    return out


def composition_multiplicities(m: AModule, reps: Representations) -> dict:
    """``[m : L(λ)] = dim ε_λ m`` (split case, ``ε_λ`` primitive)."""
    return {name: idempotent_image(m, e).dim for name, e in zip(reps.names, reps.idempotents)}


def composition_multiplicity(m: AModule, name, reps: Representations | None = None) -> int:
    reps = reps or representations(m.algebra)
    k = reps.index(name)
    return idempotent_image(m, reps.idempotents[k]).dim


def top_multiplicities(m: AModule, reps: Representations) -> dict:
    return composition_multiplicities(top(m)[0], reps)


def is_projective(m: AModule, reps: Representations | None = None) -> bool:
    """``dim m = Σ [top m : L(λ)] dim P(λ)``; the projective cover of the top maps onto ``m``."""
    reps = reps or representations(m.algebra)
    tops = top_multiplicities(m, reps)
    return m.dim == sum(tops[name] * p.dim for name, p in zip(reps.names, reps.projectives))


def projective_cover_map(m: AModule, reps: Representations | None = None) -> ModuleMorphism:
    """A surjection ``⊕ P(λ)^{[top m : L(λ)]} -> m`` built by lifting top generators."""
    reps = reps or representations(m.algebra)
    a = m.algebra
    rad = ideal_times_module(m, jacobson_radical(a).space)
    q = quotient_map(m.dim, rad)
    pieces, cols = [], []
    for e in reps.idempotents:
        emat = m.action_of(e)
        chosen = _Echelon(q.dim)
        p, space = projective_module(a, e)
        for c in range(m.dim):
            v = emat.column(c)
            if chosen.insert(_sparse(q.project(v))):
                pieces.append(p)
                # x in A e  |->  x v
                cols.append([m.act(b, v) for b in space.basis])
    if not pieces:
        return ModuleMorphism(AModule(a, [Matrix.zeros(0, 0)] * a.dim), m, Matrix.zeros(m.dim, 0))
    src, _, _ = direct_sum(pieces)
    mat = Matrix.from_columns([c for block in cols for c in block], m.dim)
    return ModuleMorphism(src, m, mat)


# decomposition and isomorphism ---------------------------------------------

@dataclass(frozen=True)
class Summand:
    module: AModule
    inclusion: ModuleMorphism
    projection: ModuleMorphism


def indecomposable_decomposition(m: AModule) -> list[Summand]:
    """Split ``m`` along primitive orthogonal idempotents of ``End(m)``."""
    if m.dim == 0:
        return []
    end, mats = end_algebra(m)
    idems = primitive_orthogonal_idempotents(end)
    out = []
    for e in idems:
        pmat = linear_combination(e, mats, m.dim, m.dim)
        space = Subspace.span(pmat.columns(), m.dim)
        piece, inc = submodule(m, space)
        proj_cols = [space.coordinates(pmat.apply(unit_vector(m.dim, c))) for c in range(m.dim)]
        proj = ModuleMorphism(m, piece, Matrix.from_columns(proj_cols, space.dim))
        out.append(Summand(piece, inc, proj))
    if sum(s.module.dim for s in out) != m.dim:
        raise VerificationError("decomposition pieces do not add up to the module")
    return out


class Undecided:
    def __bool__(self):
        raise TypeError("isomorphism is undecided")

    def __repr__(self) -> str:
        return "Undecided"


UNDECIDED = Undecided()


@dataclass(frozen=True)
class IsoResult:
    value: object  # True, False or UNDECIDED
    certificate: ModuleMorphism | None = None
    reason: str = ""

    @property
    def decided(self) -> bool:
        return self.value is not UNDECIDED

    @property
    def isomorphic(self) -> bool:
        return self.value is True


def _invariants_differ(m: AModule, n: AModule, reps: Representations | None) -> str | None:
    if m.dim != n.dim:
        return "dimensions differ"
    if reps is not None:
        if composition_multiplicities(m, reps) != composition_multiplicities(n, reps):
            return "composition multiplicities differ"
        if top_multiplicities(m, reps) != top_multiplicities(n, reps):
            return "tops differ"
        if composition_multiplicities(socle_of_module(m)[0], reps) != composition_multiplicities(socle_of_module(n)[0], reps):
            return "socles differ"
    return None


def is_isomorphic(m: AModule, n: AModule, reps: Representations | None = None, limit: int = 400) -> IsoResult:
    """Three-valued isomorphism test with an invertible intertwiner as certificate."""
    reason = _invariants_differ(m, n, reps)
    if reason:
        return IsoResult(False, reason=reason)
    if m.dim == 0:
        return IsoResult(True, ModuleMorphism(m, n, Matrix.zeros(0, 0)))
    mn = hom_space(m, n)
    nm = hom_space(n, m)
    if len(mn) != len(nm):
        return IsoResult(False, reason="hom dimensions differ")
    if len(mn) != len(hom_space(m, m)):
        return IsoResult(False, reason="hom dimension differs from the endomorphism dimension")
    if not mn:
        return IsoResult(False, reason="no nonzero homomorphisms")
    for coeffs in _coefficient_schedule(len(mn), limit):
        mat = linear_combination(coeffs, [f.matrix for f in mn], n.dim, m.dim)
        if determinant(mat) != 0:
            cert = ModuleMorphism(m, n, mat)
            if not cert.is_homomorphism():
                raise VerificationError("isomorphism certificate is not a homomorphism")
            return IsoResult(True, cert)
    return IsoResult(UNDECIDED, reason="no invertible combination found in the search schedule")


# labelled simples of constructed algebras ----------------------------------

@dataclass(frozen=True, order=True)
class SimpleLabel:
    """``(level, κ)`` with ``κ`` a simple of the parent ring."""

    level: int
    kappa: str

    def __str__(self) -> str:
        return f"({self.level},{self.kappa})"

    def below(self, other: "SimpleLabel") -> bool:
        """The poset order: strictly lower level."""
        return self.level < other.level


def _ring_simples(r: FDAlgebra) -> dict:
    from .algebra import simple_idempotents

    return simple_idempotents(r)


def simples_with_labels(c) -> Representations:
    """Simples of a constructed algebra labelled ``(i, κ)``.

    The level ``i`` is the least ``l`` with ``J_l L = 0``; ``κ`` is the vertex of
    the parent ring whose idempotent, placed in block ``(i, i)``, acts nonzero.
    Returned in label order with ``names`` the :class:`SimpleLabel` values.
    """
    from .construct import ideal_chain
    from .reports import NonSplitSemisimpleQuotient

    if "labelled" in c._cache:
        return c._cache["labelled"]
    a = c.algebra
    chain = ideal_chain(c)
    base = representations(a)
    ring_simples = _ring_simples(c.ring)
    found = []
    for e, p, simple in zip(base.idempotents, base.projectives, base.simples):
        level = None
        for l in range(1, c.d + 1):
            if ideal_times_module(simple, chain[l].space).is_zero():
                level = l
                break
        if level is None:
            raise VerificationError("simple module not annihilated by J_d")
        hits = [name for name, v in ring_simples.items() if not simple.action_of(c.element(level, level, v)).is_zero()]
        if len(hits) != 1:
            raise NonSplitSemisimpleQuotient(f"cannot match a simple of level {level} to a single vertex of the ring")
        found.append((SimpleLabel(level, str(hits[0])), e, p, simple))
    found.sort(key=lambda t: (t[0].level, list(map(str, ring_simples)).index(t[0].kappa)))
    labels = [t[0] for t in found]
    if len(set(labels)) != len(labels):
        raise VerificationError("two simples received the same label")
    out = Representations(a, labels, [t[1] for t in found], [t[2] for t in found], [t[3] for t in found])
    c._cache["labelled"] = out
    return out

"""The block algebras A(R, I), their idempotent chain, Δ-modules and the
comparison with the classical ADR algebra.

Block ``(i, j)`` (``1 <= i, j <= d``) is ``X[i,j] = I[i,j] / I[i,d+1]``,
realised inside ``R / I[i,d+1]`` with canonical coset representatives. The
product of ``x ∈ X[i,j]`` and ``y ∈ X[k,l]`` is ``δ_jk (x y mod I[i,d+1])``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import (
    AlgebraMorphism,
    FDAlgebra,
    Ideal,
    algebra_from_matrices,
    corner_algebra,
    ideal_from_generators,
    ideal_power,
    jacobson_radical,
    opposite,
    quotient_algebra,
    span_of_products,
    validate_algebra,
)
from .linalg import (
    ZERO,
    Matrix,
    QuotientMap,
    Subspace,
    Vector,
    add,
    combine,
    is_zero_vector,
    quotient_map,
    scale,
    zero_vector,
)
from .modules import (
    AModule,
    ModuleMorphism,
    direct_sum,
    hom_space,
    is_projective,
    left_ideal_module,
    module_over_quotient,
    regular_module,
    submodule,
    subquotient,
)
from .reports import CheckReport, VerificationError
from .systems import IdealSystem, jacobson_system, truncate, validate_system


@dataclass(frozen=True)
class Block:
    i: int
    j: int
    qmap: QuotientMap  # R -> R / I[i,d+1]
    space: Subspace  # X[i,j] inside R / I[i,d+1]
    reps: tuple  # representatives in R, one per basis vector of ``space``
    offset: int

    @property
    def dim(self) -> int:
        return self.space.dim


@dataclass
class ConstructedAlgebra:
    ring: FDAlgebra
    system: IdealSystem
    algebra: FDAlgebra
    blocks: dict
    grading: list  # (i, j, k) per basis element
    block_idempotents: list
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def d(self) -> int:
        return self.system.d

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def element(self, i: int, j: int, r: Sequence) -> Vector:
        """The class of ``r ∈ I[i,j]`` in block ``(i, j)``."""
        b = self.blocks[(i, j)]
        if not self.system.space(i, j).contains(r):
            raise ValueError(f"element does not lie in I[{i},{j}]")
        coords = b.space.coordinates(b.qmap.project(r))
        out = [ZERO] * self.dim
        for k, c in enumerate(coords):
            out[b.offset + k] = c
        return tuple(out)

    def block_component(self, x: Sequence, i: int, j: int) -> Vector:
        b = self.blocks[(i, j)]
        return tuple(x[b.offset:b.offset + b.dim])

    def block_rep(self, x: Sequence, i: int, j: int) -> Vector:
        """A representative in ``R`` of the ``(i, j)`` component of ``x``."""
        b = self.blocks[(i, j)]
        return combine(self.block_component(x, i, j), b.reps, self.ring.dim)

    def f(self, j: int) -> Vector:
        """``f_j = Σ_{k>j} e_k``."""
        out = zero_vector(self.dim)
        for k in range(j + 1, self.d + 1):
            out = add(out, self.block_idempotents[k - 1])
        return out

    def e(self, k: int) -> Vector:
        return self.block_idempotents[k - 1]


def _block_product(ring: FDAlgebra, blocks: dict, i: int, j: int, l: int, x: Sequence, y: Sequence) -> Vector:
    """Coordinates in X[i,l] of ``x y`` for ``x ∈ I[i,j]``, ``y ∈ I[j,l]`` given in ``R``."""
    b = blocks[(i, l)]
    return b.space.coordinates(b.qmap.project(ring.mul(x, y)))


def _assemble_blocks(ring: FDAlgebra, s: IdealSystem) -> tuple[dict, list]:
    d = s.d
    blocks, grading = {}, []
    offset = 0
    qmaps = {i: quotient_map(ring.dim, s.space(i, d + 1)) for i in range(1, d + 1)}
    for i in range(1, d + 1):
        q = qmaps[i]
        for j in range(1, d + 1):
            space = q.image(s.space(i, j))
            reps = tuple(q.lift(v) for v in space.basis)
            blocks[(i, j)] = Block(i, j, q, space, reps, offset)
            grading.extend((i, j, k) for k in range(space.dim))
            offset += space.dim
    return blocks, grading


def _rep_label(ring: FDAlgebra, r: Sequence) -> str:
    nz = [(k, c) for k, c in enumerate(r) if c]
    if len(nz) == 1 and nz[0][1] == 1:
        return ring.labels[nz[0][0]]
    return "+".join(f"{c}{ring.labels[k]}" for k, c in nz)


def build_A(r: FDAlgebra, s: IdealSystem, check: bool = True) -> ConstructedAlgebra:
    """The algebra ``A(r, s) = ⊕ X[i,j]`` with the block product."""
    if check:
        validate_system(s).raise_if_failed()
    d = s.d
    blocks, grading = _assemble_blocks(r, s)
    n = len(grading)
    table = [[None] * n for _ in range(n)]
    for p, (i, j, kp) in enumerate(grading):
        x = blocks[(i, j)].reps[kp]
        for q, (j2, l, kq) in enumerate(grading):
            out = [ZERO] * n
            if j2 == j:
                y = blocks[(j2, l)].reps[kq]
                target = blocks[(i, l)]
                for k, c in enumerate(_block_product(r, blocks, i, j, l, x, y)):
                    out[target.offset + k] = c
            table[p][q] = tuple(out)
    idems = []
    for k in range(1, d + 1):
        b = blocks[(k, k)]
        e = [ZERO] * n
        for t, c in enumerate(b.space.coordinates(b.qmap.project(r.unit)) if b.dim else ()):
            e[b.offset + t] = c
        idems.append(tuple(e))
    unit = zero_vector(n)
    for e in idems:
        unit = add(unit, e)
    labels = [f"{_rep_label(r, blocks[(i, j)].reps[k])}@{i}{j}" for i, j, k in grading]
    alg = FDAlgebra(table, unit, labels)
    c = ConstructedAlgebra(r, s, alg, blocks, grading, idems)
    if check:
        validate_algebra(alg).raise_if_failed()
        for k, e in enumerate(idems, start=1):
            if not alg.is_idempotent(e):
                raise VerificationError(f"e_{k} is not idempotent")
            for l, e2 in enumerate(idems, start=1):
                if k != l and not is_zero_vector(alg.mul(e, e2)):
                    raise VerificationError(f"e_{k} e_{l} != 0")
    return c


def check_block_grading(c: ConstructedAlgebra) -> CheckReport:
    rep = CheckReport("block_grading", dims={"dim": c.dim})
    a = c.algebra
    for p, (i, j, _) in enumerate(c.grading):
        for q, (k, l, _) in enumerate(c.grading):
            prod = a.table[p][q]
            support = {c.grading[t][:2] for t, v in enumerate(prod) if v}
            if j != k and support:
                rep.fail(f"block ({i},{j}) times ({k},{l}) is nonzero")
                return rep
            if j == k and not support <= {(i, l)}:
                rep.fail(f"block ({i},{j}) times ({k},{l}) leaves block ({i},{l})")
                return rep
    return rep


def check_representative_independence(c: ConstructedAlgebra, trials: int = 200, seed: int = 0) -> CheckReport:
    """Recompute block products with randomly perturbed coset representatives.

    Each trial adds a random element of ``I[i,d+1]`` (resp. ``I[j,d+1]``) to
    the representatives of a random pair of basis elements.
    """
    rng = random.Random(seed)
    rep = CheckReport("representative_independence", dims={"trials": trials})
    r, s, d = c.ring, c.system, c.d
    n = c.dim
    if n == 0:
        return rep
    kill = {i: s.space(i, d + 1).basis for i in range(1, d + 1)}

    def perturb(i: int, x: Vector) -> Vector:
        for b in kill[i]:
            x = add(x, scale(rng.randint(-5, 5), b))
        return x

    for t in range(trials):
        p = rng.randrange(n)
        q = rng.randrange(n)
        i, j, kp = c.grading[p]
        j2, l, kq = c.grading[q]
        x = perturb(i, c.blocks[(i, j)].reps[kp])
        y = perturb(j2, c.blocks[(j2, l)].reps[kq])
        expected = c.algebra.table[p][q]
        if j != j2:
            got = zero_vector(n)
        else:
            got = [ZERO] * n
            target = c.blocks[(i, l)]
            for k, v in enumerate(_block_product(r, c.blocks, i, j, l, x, y)):
                got[target.offset + k] = v
            got = tuple(got)
        if got != tuple(expected):
            rep.fail(f"trial {t}: product of basis {p} and {q} depends on the representative")
            return rep
    return rep


# chain of idempotent ideals ------------------------------------------------

@dataclass(frozen=True)
class IdealChain:
    ideals: tuple  # J_0, ..., J_d as Ideals of c.algebra

    def __getitem__(self, j: int) -> Ideal:
        return self.ideals[j]

    def dims(self) -> list[int]:
        return [x.dim for x in self.ideals]


def ideal_chain(c: ConstructedAlgebra, check: bool = True) -> IdealChain:
    if "chain" in c._cache:
        return c._cache["chain"]
    a = c.algebra
    ideals = tuple(ideal_from_generators(a, [c.f(j)]) for j in range(c.d + 1))
    chain = IdealChain(ideals)
    if check:
        verify_chain_shape(c, chain).raise_if_failed()
    c._cache["chain"] = chain
    return chain


def _column_blocks_space(c: ConstructedAlgebra, cols: Sequence[int]) -> Subspace:
    """Span of the basis elements in blocks ``(i, m)`` with ``m`` in ``cols``."""
    vecs = []
    for t, (i, m, _) in enumerate(c.grading):
        if m in cols:
            v = [ZERO] * c.dim
            v[t] = 1
            vecs.append(tuple(v))
    return Subspace.span(vecs, c.dim)


def _right_ideal_times_basis(a: FDAlgebra, space: Subspace) -> Subspace:
    return span_of_products(a, space.basis, [a.basis(k) for k in range(a.dim)])


def _left_times_e(a: FDAlgebra, space: Subspace, e: Vector) -> Subspace:
    return Subspace.span((a.mul(x, e) for x in space.basis), a.dim)


def verify_chain_shape(c: ConstructedAlgebra, chain: IdealChain) -> CheckReport:
    rep = CheckReport("ideal_chain", dims={"J": chain.dims()})
    a, d = c.algebra, c.d
    rep.require(chain[0].is_whole(), "J_0 != A")
    rep.require(chain[d].is_zero(), "J_d != 0")
    for j in range(d):
        rep.require(chain[j + 1] <= chain[j], f"J_{j+1} is not inside J_{j}")
    # J_j = (A f_j) A, with A f_j the span of the blocks in columns > j
    for j in range(d + 1):
        left = _column_blocks_space(c, list(range(j + 1, d + 1)))
        rep.require(_right_ideal_times_basis(a, left) == chain[j].space, f"J_{j} differs from the block closure")
    # A f_l A e_k = A e_{l+1} A e_k for 1 <= k <= l < d
    for k in range(1, d + 1):
        for l in range(k, d):
            lhs = _left_times_e(a, chain[l].space, c.e(k))
            rhs = _left_times_e(a, ideal_from_generators(a, [c.e(l + 1)]).space, c.e(k))
            rep.require(lhs == rhs, f"A f_{l} A e_{k} != A e_{l+1} A e_{k}")
    return rep


# chain theorem -------------------------------------------------------------

def _corner_iso(c: ConstructedAlgebra, i: int, chain: IdealChain) -> tuple[AlgebraMorphism, CheckReport]:
    """``R/I[i,i+1] -> e_i (A/J_i) e_i``, ``r ↦ class of r in X[i,i]``."""
    rep = CheckReport(f"corner_iso_{i}")
    a, r = c.algebra, c.ring
    quot, proj = quotient_algebra(a, chain[i])
    ebar = proj(c.e(i))
    corner = corner_algebra(quot, ebar)
    src, sproj = quotient_algebra(r, c.system.space(i, i + 1))
    for v in c.system.space(i, i + 1).basis:
        rep.require(is_zero_vector(proj(c.element(i, i, v))), "I[i,i+1] does not map to zero")
    cols = [corner.coords(proj(c.element(i, i, x))) for x in sproj.qmap.reps]
    phi = AlgebraMorphism(src, corner.algebra, Matrix.from_columns(cols, corner.algebra.dim) if cols else Matrix.zeros(corner.algebra.dim, 0))
    rep.absorb(phi.verify("corner iso", unital=True, bijective=True))
    rep.dims = {"R/I": src.dim, "corner": corner.algebra.dim}
    return phi, rep


def _layer_module(c: ConstructedAlgebra, chain: IdealChain, i: int) -> AModule:
    """``J_{i-1}/J_i`` as a left module over ``A/J_i``."""
    a = c.algebra
    reg = regular_module(a)
    layer = subquotient(reg, chain[i - 1].space, chain[i].space)
    _, proj = quotient_algebra(a, chain[i])
    return module_over_quotient(layer, proj)


def verify_prop_iter(c: ConstructedAlgebra) -> CheckReport:
    """``J_{d-1} ≅ (A e_d)^d`` by the explicit maps, and ``A/(A e_d A) ≅ A(R, I')``."""
    rep = CheckReport("prop_iter", dims={"d": c.d})
    a, d = c.algebra, c.d
    chain = ideal_chain(c)
    reg = regular_module(a)
    ed = c.e(d)
    aed = Subspace.span((a.mul(a.basis(k), ed) for k in range(a.dim)), a.dim)
    # (i): A e_d A e_j ≅ A e_d via x e_d ↦ x e_d · (1 + I[d,d+1] ∈ X[d,j])
    jd1 = chain[d - 1].space
    pieces, cols = [], []
    if aed.is_zero():
        rep.require(jd1.is_zero(), "A e_d = 0 but J_{d-1} != 0")
    for j in range(1, d + 1):
        if aed.is_zero():
            break
        g = c.element(d, j, c.ring.unit)
        pieces.append(left_ideal_module(a, aed))
        cols.extend(a.mul(x, g) for x in aed.basis)
    if pieces:
        img = Subspace.span(cols, a.dim)
        src, _, _ = direct_sum(pieces)
        jmod, inc = submodule(reg, jd1)
        coords = Matrix.from_columns([jd1.coordinates(v) for v in cols], jd1.dim) if img <= jd1 else None
        rep.require(coords is not None, "image leaves J_{d-1}")
        if coords is not None:
            phi = ModuleMorphism(src, jmod, coords)
            rep.require(phi.is_homomorphism(), "map (A e_d)^d -> J_{d-1} is not A-linear")
            rep.require(phi.is_isomorphism() and src.dim == jd1.dim, "map (A e_d)^d -> J_{d-1} is not bijective")
    # (ii): e_d A e_d = X[d,d] ≅ R/I[d,d+1]
    corner = corner_algebra(a, ed)
    src, sproj = quotient_algebra(c.ring, c.system.space(d, d + 1))
    cols2 = [corner.coords(c.element(d, d, x)) for x in sproj.qmap.reps]
    phi2 = AlgebraMorphism(src, corner.algebra, Matrix.from_columns(cols2, corner.algebra.dim) if cols2 else Matrix.zeros(corner.algebra.dim, 0))
    rep.absorb(phi2.verify("e_d A e_d ≅ R/I[d,d+1]", unital=True, bijective=True))
    # (iii)
    if d >= 2:
        rep.absorb(verify_truncation_iso(c))
    return rep


def verify_truncation_iso(c: ConstructedAlgebra) -> CheckReport:
    """``A(R, I') -> A/(A e_d A)`` block-wise: ``x + I[i,d] ↦ x + I[i,d+1] + J_{d-1}``."""
    rep = CheckReport("truncation_iso")
    a, d = c.algebra, c.d
    chain = ideal_chain(c)
    small = build_A(c.ring, truncate(c.system))
    quot, proj = quotient_algebra(a, chain[d - 1])
    cols = []
    for i, j, k in small.grading:
        x = small.blocks[(i, j)].reps[k]
        cols.append(proj(c.element(i, j, x)))
    mat = Matrix.from_columns(cols, quot.dim) if cols else Matrix.zeros(quot.dim, 0)
    phi = AlgebraMorphism(small.algebra, quot, mat)
    rep.absorb(phi.verify("A(R,I') ≅ A/(A e_d A)", unital=True, bijective=True))
    rep.dims = {"truncated": small.dim, "quotient": quot.dim}
    return rep


def verify_chain_theorem(c: ConstructedAlgebra) -> CheckReport:
    rep = CheckReport("chain_theorem", dims={"d": c.d, "dim": c.dim})
    chain = ideal_chain(c)
    rep.dims["J"] = chain.dims()
    for i in range(1, c.d + 1):
        layer = _layer_module(c, chain, i)
        rep.require(is_projective(layer), f"J_{i-1}/J_{i} is not a projective A/J_{i}-module")
        _, corner_rep = _corner_iso(c, i, chain)
        rep.absorb(corner_rep)
    rep.absorb(verify_prop_iter(c))
    return rep


# Δ-modules ------------------------------------------------------------------

def projective_space(c: ConstructedAlgebra, k: int) -> Subspace:
    """``A e_k`` as a subspace of ``A`` (the blocks in column ``k``)."""
    return _column_blocks_space(c, [k])


def delta_module(c: ConstructedAlgebra, k: int) -> AModule:
    """``Δ_k = A e_k / J_k e_k``."""
    a = c.algebra
    chain = ideal_chain(c)
    aek = projective_space(c, k)
    jk = _left_times_e(a, chain[k].space, c.e(k))
    return subquotient(regular_module(a), aek, jk)


def verify_ses_delta(c: ConstructedAlgebra, k: int) -> CheckReport:
    """``0 -> A e_{k+1} -ψ-> A e_k -> Δ_k -> 0`` with ψ the block-wise inclusion."""
    rep = CheckReport(f"ses_delta_{k}", dims={"k": k})
    a, d = c.algebra, c.d
    chain = ideal_chain(c)
    reg = regular_module(a)
    aek = projective_space(c, k)
    pk, _ = submodule(reg, aek)
    jk = _left_times_e(a, chain[k].space, c.e(k))
    delta = delta_module(c, k)
    if k == d:
        rep.require(jk.is_zero(), "J_d e_d != 0")
        rep.require(delta.dim == pk.dim, "Δ_d != A e_d")
        return rep
    aek1 = projective_space(c, k + 1)
    pk1, _ = submodule(reg, aek1)
    cols = []
    for i, j, t in [g for g in c.grading if g[1] == k + 1]:
        x = c.blocks[(i, j)].reps[t]
        cols.append(aek.coordinates(c.element(i, k, x)))
    psi = ModuleMorphism(pk1, pk, Matrix.from_columns(cols, aek.dim) if cols else Matrix.zeros(aek.dim, 0))
    rep.require(psi.is_homomorphism(), "ψ is not A-linear")
    rep.require(psi.is_injective(), "ψ is not injective")
    image = Subspace.span((combine(col, aek.basis, a.dim) for col in psi.matrix.columns()), a.dim)
    rep.require(image == jk, "image of ψ differs from the kernel of A e_k -> Δ_k")
    rep.require(pk1.dim + delta.dim == pk.dim, "dimensions do not add up")
    rep.dims.update({"Ae_k": pk.dim, "Ae_k+1": pk1.dim, "Delta_k": delta.dim})
    return rep


def right_projectivity_probe(c: ConstructedAlgebra) -> bool:
    """Whether ``A e_d A`` is projective as a right module (reported, never asserted)."""
    a = c.algebra
    chain = ideal_chain(c)
    aop = opposite(a)
    rmod = AModule(aop, [a.right_matrix(a.basis(k)) for k in range(a.dim)])
    sub_mod, _ = submodule(rmod, chain[c.d - 1].space)
    return is_projective(sub_mod)


# the classical ADR algebra --------------------------------------------------

def adr_algebra(r: FDAlgebra) -> tuple[FDAlgebra, AlgebraMorphism, ConstructedAlgebra]:
    """``End_R(⊕_{i=1}^d R/J^i)`` and its isomorphism onto ``A(r, I^J)``.

    Right ``R``-modules are left modules over ``opposite(r)``. Summand ``j``
    is ``R/J^{d+1-j}`` and ``α ↦ α(1 + J^{d+1-j})`` lands in ``X[i,j]``.
    """
    s = jacobson_system(r)
    d = s.d
    c = build_A(r, s)
    rop = opposite(r)
    rad = jacobson_radical(r)
    qmaps, mods = [], []
    for j in range(1, d + 1):
        q = quotient_map(r.dim, ideal_power(rad, d + 1 - j).space)
        action = [Matrix.from_columns([q.project(r.mul(x, r.basis(k))) for x in q.reps], q.dim) for k in range(r.dim)]
        qmaps.append(q)
        mods.append(AModule(rop, action))
    total, incs, projs = direct_sum(mods)
    end, mats = algebra_from_matrices([f.matrix for f in hom_space(total, total)])
    offsets = [0]
    for m in mods:
        offsets.append(offsets[-1] + m.dim)
    cols = []
    for mat in mats:
        img = zero_vector(c.dim)
        for j in range(1, d + 1):
            qj = qmaps[j - 1]
            one = qj.project(r.unit)
            src = [ZERO] * total.dim
            for t, v in enumerate(one):
                src[offsets[j - 1] + t] = v
            out = mat.apply(src)
            for i in range(1, d + 1):
                comp = out[offsets[i - 1]:offsets[i]]
                if not any(comp):
                    continue
                x = qmaps[i - 1].lift(comp)
                img = add(img, c.element(i, j, x))
        cols.append(img)
    phi = AlgebraMorphism(end, c.algebra, Matrix.from_columns(cols, c.dim) if cols else Matrix.zeros(c.dim, 0))
    phi.verify("ADR comparison", unital=True, bijective=True).raise_if_failed()
    return end, phi, c


# transport along algebra isomorphisms ---------------------------------------

def induced_isomorphism(c1: ConstructedAlgebra, c2: ConstructedAlgebra, sigma: AlgebraMorphism) -> AlgebraMorphism:
    """``A(R1, I1) -> A(R2, I2)`` induced block-wise by an isomorphism ``σ: R1 -> R2``
    carrying each ``I1[i,j]`` onto ``I2[i,j]``."""
    cols = []
    for i, j, k in c1.grading:
        x = c1.blocks[(i, j)].reps[k]
        cols.append(c2.element(i, j, sigma(x)))
    return AlgebraMorphism(c1.algebra, c2.algebra, Matrix.from_columns(cols, c2.dim) if cols else Matrix.zeros(c2.dim, 0))

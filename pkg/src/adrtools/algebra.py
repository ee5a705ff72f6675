"""Finite-dimensional associative unital algebras over Q by structure constants.

An :class:`FDAlgebra` of dimension ``n`` stores ``table[i][j]``, the product
of basis elements ``b_i * b_j`` as a coordinate vector, together with the
coordinates of the unit. Elements are plain coordinate tuples.

Ideals, quotients, the Jacobson radical (trace form, characteristic 0),
Loewy series, rigidity, primitive idempotents, basic algebras and Gabriel
quivers live here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import (
    ONE,
    ZERO,
    Matrix,
    QuotientMap,
    Subspace,
    Vector,
    combine,
    is_zero_vector,
    kernel_of_rows,
    quotient_map,
    scale,
    solve,
    sub,
    add,
    unit_vector,
    vec,
    zero_vector,
)
from .reports import CheckReport, NonSplitSemisimpleQuotient, VerificationError


class FDAlgebra:
    """Finite-dimensional algebra given by structure constants.

    ``vertex_idempotents`` optionally names one primitive idempotent per
    simple module (path algebras carry their trivial paths here); simple
    labels in constructed algebras are read off it.
    """

    def __init__(
        self,
        table: Sequence[Sequence[Sequence]],
        unit: Sequence,
        labels: Sequence[str] | None = None,
        vertex_idempotents: dict | None = None,
    ):
        n = len(unit)
        self.dim = n
        self.unit: Vector = vec(unit)
        if len(table) != n or any(len(row) != n for row in table):
            raise ValueError(f"structure table must be {n}x{n}")
        self.table = tuple(tuple(vec(v) for v in row) for row in table)
        for row in self.table:
            for v in row:
                if len(v) != n:
                    raise ValueError(f"product vector of length {len(v)} in dimension {n}")
        self._sparse = tuple(
            tuple(tuple((k, c) for k, c in enumerate(v) if c) for v in row) for row in self.table
        )
        self.labels = tuple(labels) if labels is not None else tuple(f"b{k}" for k in range(n))
        if len(self.labels) != n:
            raise ValueError("one label per basis element is required")
        self.vertex_idempotents = {k: vec(v) for k, v in (vertex_idempotents or {}).items()}
        self._cache: dict = {}

    # elements -----------------------------------------------------------
    def basis(self, k: int) -> Vector:
        return unit_vector(self.dim, k)

    def zero(self) -> Vector:
        return zero_vector(self.dim)

    def element(self, coeffs: dict) -> Vector:
        """Element from ``{label: coefficient}``."""
        out = [ZERO] * self.dim
        for lab, c in coeffs.items():
            out[self.labels.index(lab)] += Fraction(c)
        return tuple(out)

    def mul(self, x: Sequence, y: Sequence) -> Vector:
        out = [ZERO] * self.dim
        ynz = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            row = self._sparse[i]
            for j, b in ynz:
                ab = a * b
                for k, c in row[j]:
                    out[k] += ab * c
        return tuple(out)

    def mul_many(self, *xs: Sequence) -> Vector:
        out = xs[0]
        for x in xs[1:]:
            out = self.mul(out, x)
        return tuple(out)

    def power(self, x: Sequence, n: int) -> Vector:
        out = self.unit
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def left_matrix(self, x: Sequence) -> Matrix:
        """Matrix of ``y -> x y``."""
        return Matrix.from_columns([self.mul(x, self.basis(j)) for j in range(self.dim)], self.dim)

    def right_matrix(self, x: Sequence) -> Matrix:
        """Matrix of ``y -> y x``."""
        return Matrix.from_columns([self.mul(self.basis(j), x) for j in range(self.dim)], self.dim)

    def is_idempotent(self, e: Sequence) -> bool:
        return self.mul(e, e) == tuple(e)

    def __eq__(self, other) -> bool:
        return isinstance(other, FDAlgebra) and self.table == other.table and self.unit == other.unit

    def __hash__(self) -> int:
        return hash((self.unit, self.table))

    def __repr__(self) -> str:
        return f"FDAlgebra(dim={self.dim})"

    @classmethod
    def zero_algebra(cls) -> "FDAlgebra":
        return cls([], [], [])

    @classmethod
    def ground_field(cls) -> "FDAlgebra":
        return cls([[[1]]], [1], ["1"])


@dataclass(frozen=True)
class AlgebraMorphism:
    """Linear map between algebras given by a ``target.dim x source.dim`` matrix."""

    source: FDAlgebra
    target: FDAlgebra
    matrix: Matrix
    qmap: QuotientMap | None = None

    def __call__(self, x: Sequence) -> Vector:
        return self.matrix.apply(x)

    def failures(self, unital: bool = True) -> list[str]:
        out = []
        if self.matrix.shape != (self.target.dim, self.source.dim):
            return [f"matrix shape {self.matrix.shape} for {self.source.dim} -> {self.target.dim}"]
        if unital and self(self.source.unit) != self.target.unit:
            out.append("unit is not preserved")
        imgs = [self(self.source.basis(k)) for k in range(self.source.dim)]
        for i in range(self.source.dim):
            for j in range(self.source.dim):
                lhs = self(self.source.table[i][j])
                rhs = self.target.mul(imgs[i], imgs[j])
                if lhs != rhs:
                    out.append(f"not multiplicative on basis pair ({i}, {j})")
                    return out
        return out

    def is_bijective(self) -> bool:
        if self.source.dim != self.target.dim:
            return False
        return Subspace.span(self.matrix.columns(), self.target.dim).dim == self.source.dim

    def is_surjective(self) -> bool:
        return Subspace.span(self.matrix.columns(), self.target.dim).dim == self.target.dim

    def verify(self, name: str = "algebra morphism", unital: bool = True, bijective: bool = False) -> CheckReport:
        rep = CheckReport(name, dims={"source": self.source.dim, "target": self.target.dim})
        for f in self.failures(unital):
            rep.fail(f)
        if bijective:
            rep.require(self.is_bijective(), "map is not bijective")
        return rep


def validate_algebra(a: FDAlgebra) -> CheckReport:
    """Check associativity on all basis triples and the unit axioms."""
    rep = CheckReport("validate_algebra", dims={"dim": a.dim})
    n = a.dim
    for i in range(n):
        b = a.basis(i)
        if a.mul(a.unit, b) != b or a.mul(b, a.unit) != b:
            rep.fail(f"unit axiom fails on basis element {i} ({a.labels[i]})")
            return rep
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = a.mul(a.table[i][j], a.basis(k))
        rhs = a.mul(a.basis(i), a.table[j][k])
        if lhs != rhs:
            rep.fail(f"associativity fails on basis triple ({i}, {j}, {k})")
            rep.certificates["first_failing_triple"] = [i, j, k]
            return rep
    return rep


def opposite(a: FDAlgebra) -> FDAlgebra:
    n = a.dim
    table = [[a.table[j][i] for j in range(n)] for i in range(n)]
    return FDAlgebra(table, a.unit, a.labels, a.vertex_idempotents)


def algebra_from_matrices(mats: Sequence[Matrix]) -> tuple[FDAlgebra, list[Matrix]]:
    """Algebra spanned by square matrices closed under products.

    Returns the algebra and its basis matrices (the RREF basis of the span),
    product being matrix multiplication.
    """
    if not mats:
        return FDAlgebra.zero_algebra(), []
    size = mats[0].nrows
    span = Subspace.span([m.flat() for m in mats], size * size)
    basis = [Matrix([b[r * size:(r + 1) * size] for r in range(size)], size) for b in span.basis]
    table = [[span.coordinates((x @ y).flat()) for y in basis] for x in basis]
    unit = span.coordinates(Matrix.identity(size).flat())
    return FDAlgebra(table, unit, [f"m{k}" for k in range(len(basis))]), basis


# subspaces and ideals -----------------------------------------------------

def span_of_products(a: FDAlgebra, left: Iterable[Sequence], right: Iterable[Sequence]) -> Subspace:
    right = list(right)
    return Subspace.span((a.mul(x, y) for x in left for y in right), a.dim)


def is_two_sided_ideal(a: FDAlgebra, space: Subspace) -> bool:
    for v in space.basis:
        for k in range(a.dim):
            b = a.basis(k)
            if not space.contains(a.mul(b, v)) or not space.contains(a.mul(v, b)):
                return False
    return True


class Ideal:
    """A two-sided ideal of ``parent``, stored as a subspace."""

    __slots__ = ("parent", "space")

    def __init__(self, parent: FDAlgebra, space: Subspace, check: bool = True):
        if space.ambient != parent.dim:
            raise ValueError("ideal subspace lives in the wrong ambient dimension")
        if check and not is_two_sided_ideal(parent, space):
            raise ValueError("subspace is not a two-sided ideal")
        self.parent = parent
        self.space = space

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> tuple:
        return self.space.basis

    def contains(self, x: Sequence) -> bool:
        return self.space.contains(x)

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def __le__(self, other: "Ideal") -> bool:
        return self.space <= other.space

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.space == other.space and (self.parent is other.parent or self.parent == other.parent)

    def __hash__(self) -> int:
        return hash(self.space)

    def is_zero(self) -> bool:
        return self.space.is_zero()

    def is_whole(self) -> bool:
        return self.space.is_full()

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_product(self, other)

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __and__(self, other: "Ideal") -> "Ideal":
        _same_parent(self, other)
        return Ideal(self.parent, self.space & other.space, check=False)

    def __repr__(self) -> str:
        return f"Ideal(dim={self.dim} in dim {self.parent.dim})"


def _same_parent(i: Ideal, j: Ideal) -> None:
    if not (i.parent is j.parent or i.parent == j.parent):
        raise ValueError("ideals live in different algebras")


def whole(a: FDAlgebra) -> Ideal:
    return Ideal(a, Subspace.full(a.dim), check=False)


def zero_ideal(a: FDAlgebra) -> Ideal:
    return Ideal(a, Subspace.zero(a.dim), check=False)


def ideal_from_generators(a: FDAlgebra, gens: Iterable[Sequence]) -> Ideal:
    """Smallest two-sided ideal containing ``gens`` (saturation)."""
    from .linalg import _Echelon, _sparse

    ech = _Echelon(a.dim)
    queue = []
    for g in gens:
        g = vec(g)
        if ech.insert(_sparse(g)):
            queue.append(g)
    while queue:
        v = queue.pop()
        for k in range(a.dim):
            b = a.basis(k)
            for w in (a.mul(b, v), a.mul(v, b)):
                if ech.insert(_sparse(w)):
                    queue.append(w)
    return Ideal(a, Subspace(a.dim, ech.basis(), ech.pivots()), check=False)


def ideal_product(i: Ideal, j: Ideal) -> Ideal:
    _same_parent(i, j)
    space = span_of_products(i.parent, i.basis, j.basis)
    return Ideal(i.parent, space)


def ideal_sum(i: Ideal, j: Ideal) -> Ideal:
    _same_parent(i, j)
    return Ideal(i.parent, i.space + j.space, check=False)


def ideal_power(i: Ideal, n: int) -> Ideal:
    out = whole(i.parent)
    for _ in range(n):
        out = ideal_product(out, i)
    return out


def transporter(a: FDAlgebra, s: Subspace, w: Subspace, side: str = "left") -> Subspace:
    """``{x : x s ⊆ w}`` for ``side='left'``, ``{x : s x ⊆ w}`` for ``side='right'``."""
    q = quotient_map(a.dim, w)
    rows = []
    for v in s.basis:
        m = a.right_matrix(v) if side == "left" else a.left_matrix(v)
        proj = q.matrix() @ m
        rows.extend(proj.rows)
    return kernel_of_rows(rows, a.dim)


def left_annihilator(a: FDAlgebra, s: Subspace) -> Subspace:
    """``{x : x s = 0}``."""
    return transporter(a, s, Subspace.zero(a.dim), "left")


def right_annihilator(a: FDAlgebra, s: Subspace) -> Subspace:
    """``{x : s x = 0}``."""
    return transporter(a, s, Subspace.zero(a.dim), "right")


def center(a: FDAlgebra) -> Subspace:
    # x k - k x as a linear map in x is R_k - L_k
    rows = []
    for k in generators(a):
        rows.extend((a.right_matrix(k) - a.left_matrix(k)).rows)
    return kernel_of_rows(rows, a.dim)


def subalgebra_closure(a: FDAlgebra, elements: Iterable[Sequence]) -> Subspace:
    from .linalg import _Echelon, _sparse

    ech = _Echelon(a.dim)
    members = []
    for v in [a.unit, *elements]:
        v = vec(v)
        if ech.insert(_sparse(v)):
            members.append(v)
    frontier = list(members)
    while frontier:
        new = []
        for x in frontier:
            for y in list(members):
                for w in (a.mul(x, y), a.mul(y, x)):
                    if ech.insert(_sparse(w)):
                        new.append(w)
                        members.append(w)
        frontier = new
    return Subspace(a.dim, ech.basis(), ech.pivots())


def generators(a: FDAlgebra) -> tuple:
    """A small generating set of ``a`` picked greedily from the basis."""
    if "generators" not in a._cache:
        gens: list = []
        current = subalgebra_closure(a, [])
        for k in range(a.dim):
            if current.is_full():
                break
            b = a.basis(k)
            if not current.contains(b):
                gens.append(b)
                current = subalgebra_closure(a, gens)
        a._cache["generators"] = tuple(gens)
    return a._cache["generators"]


# radical and quotients ----------------------------------------------------

def _trace_form_radical(a: FDAlgebra) -> Subspace:
    traces = [sum((a.table[k][j][j] for j in range(a.dim)), ZERO) for k in range(a.dim)]
    # form[i][j] = tr(L_{b_i b_j}); radical is the left kernel of the form
    rows = []
    for j in range(a.dim):
        rows.append(tuple(sum((c * traces[k] for k, c in enumerate(a.table[i][j]) if c), ZERO) for i in range(a.dim)))
    return kernel_of_rows(rows, a.dim)


def _nilpotency_index(a: FDAlgebra, i: Ideal) -> int | None:
    power = whole(a)
    for n in range(a.dim + 2):
        if power.is_zero():
            return n
        power = ideal_product(power, i)
    return None


def jacobson_radical(a: FDAlgebra) -> Ideal:
    """Radical via the trace form ``tr(L_x L_y)`` (valid in characteristic 0).

    The result is checked to be a nilpotent ideal with semisimple quotient.
    """
    if "radical" in a._cache:
        return a._cache["radical"]
    space = _trace_form_radical(a)
    if not is_two_sided_ideal(a, space):
        raise VerificationError("trace-form radical is not an ideal")
    rad = Ideal(a, space, check=False)
    if _nilpotency_index(a, rad) is None:
        raise VerificationError("trace-form radical is not nilpotent")
    if not rad.is_zero():
        q, _ = quotient_algebra(a, rad)
        if not _trace_form_radical(q).is_zero():
            raise VerificationError("quotient by the trace-form radical is not semisimple")
    a._cache["radical"] = rad
    return rad


def quotient_algebra(a: FDAlgebra, i: Ideal | Subspace) -> tuple[FDAlgebra, AlgebraMorphism]:
    """``a / i`` with canonical coset representatives, and the projection.

    Dividing by the whole algebra yields the zero algebra (dim 0).
    """
    space = i.space if isinstance(i, Ideal) else i
    q = quotient_map(a.dim, space)
    reps = q.reps
    table = [[q.project(a.mul(x, y)) for y in reps] for x in reps]
    unit = q.project(a.unit)
    labels = [a.labels[k] for k in q.free]
    vids = {}
    for name, e in a.vertex_idempotents.items():
        pe = q.project(e)
        if not is_zero_vector(pe):
            vids[name] = pe
    quot = FDAlgebra(table, unit, labels, vids)
    return quot, AlgebraMorphism(a, quot, q.matrix(), q)


def is_semisimple(a: FDAlgebra) -> bool:
    return jacobson_radical(a).is_zero()


def loewy_length(a: FDAlgebra) -> int:
    """Least ``n`` with ``J^n = 0``; 0 for the zero algebra."""
    if a.dim == 0:
        return 0
    n = _nilpotency_index(a, jacobson_radical(a))
    assert n is not None
    return n


def radical_series(a: FDAlgebra) -> list[Subspace]:
    """``[J^0 = a, J, J^2, ..., J^l = 0]``."""
    rad = jacobson_radical(a)
    out = [Subspace.full(a.dim)]
    power = whole(a)
    while not power.is_zero():
        power = ideal_product(power, rad)
        out.append(power.space)
    return out


def socle_series(a: FDAlgebra) -> list[Subspace]:
    """Socle series of the right regular module: ``soc_k = {x : x J^k = 0}``."""
    series = radical_series(a)
    return [left_annihilator(a, s) for s in series]


@dataclass(frozen=True)
class Rigidity:
    rigid: bool
    level: int | None = None
    dims: tuple | None = None

    def __bool__(self) -> bool:
        return self.rigid


def is_rigid(a: FDAlgebra) -> Rigidity:
    """Compare ``{x : J^{l-i} x = 0}``, ``J^i`` and ``{x : x J^{l-i} = 0}`` for ``1 <= i <= l``."""
    series = radical_series(a)
    ll = len(series) - 1
    for i in range(1, ll + 1):
        s = series[ll - i]
        left = right_annihilator(a, s)
        right = left_annihilator(a, s)
        if not (left == series[i] == right):
            return Rigidity(False, i, (left.dim, series[i].dim, right.dim))
    return Rigidity(True)


# corners, idempotents ------------------------------------------------------

@dataclass(frozen=True)
class Corner:
    """The corner algebra ``e a e`` with its embedding into ``a``."""

    parent: FDAlgebra
    idempotent: Vector
    space: Subspace
    algebra: FDAlgebra

    def embed(self, coords: Sequence) -> Vector:
        return combine(coords, self.space.basis, self.parent.dim)

    def coords(self, x: Sequence) -> Vector:
        return self.space.coordinates(x)


def corner_space(a: FDAlgebra, e: Sequence, f: Sequence | None = None) -> Subspace:
    f = e if f is None else f
    return Subspace.span((a.mul_many(e, a.basis(k), f) for k in range(a.dim)), a.dim)


def corner_algebra(a: FDAlgebra, e: Sequence) -> Corner:
    e = vec(e)
    space = corner_space(a, e)
    basis = space.basis
    table = [[space.coordinates(a.mul(x, y)) for y in basis] for x in basis]
    unit = space.coordinates(e) if space.dim else ()
    labels = [f"c{k}" for k in range(space.dim)]
    vids = {}
    for name, v in a.vertex_idempotents.items():
        w = a.mul_many(e, v, e)
        if not is_zero_vector(w) and a.is_idempotent(w):
            vids[name] = space.coordinates(w)
    return Corner(a, e, space, FDAlgebra(table, unit, labels, vids))


def minimal_polynomial(a: FDAlgebra, x: Sequence, unit: Sequence | None = None) -> list[Fraction]:
    """Monic minimal polynomial of ``x`` (coefficients low to high).

    ``unit`` overrides the identity, for elements of a corner ``e a e``.
    """
    unit = a.unit if unit is None else vec(unit)
    powers = [unit]
    while True:
        nxt = a.mul(powers[-1], x)
        m = Matrix.from_columns(powers, a.dim)
        sol = solve(m, nxt)
        if sol is not None:
            return [-c for c in sol] + [ONE]
        powers.append(nxt)
        if len(powers) > a.dim + 1:
            raise VerificationError("minimal polynomial degree exceeds the dimension")


def _factor(poly: list[Fraction]):
    import sympy

    t = sympy.Symbol("t")
    p = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(poly)], t, domain="QQ")
    _, factors = p.factor_list()
    return [([Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())], m) for f, m in factors]


def rational_roots(poly: list[Fraction]) -> list[Fraction]:
    roots = []
    for f, _ in _factor(poly):
        if len(f) == 2:
            roots.append(-f[0] / f[1])
    return sorted(roots)


def _coefficient_schedule(n: int, limit: int = 400):
    """Deterministic coefficient vectors: unit vectors, pairs, then weighted sums."""
    for k in range(n):
        yield [ONE if j == k else ZERO for j in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        for s in (1, -1):
            v = [ZERO] * n
            v[i] = ONE
            v[j] = Fraction(s)
            yield v
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    count = 0
    for t in itertools.count(2):
        for shift in range(3):
            yield [Fraction(primes[(k + shift) % len(primes)] * (t ** k) % 97 - 48) for k in range(n)]
            count += 1
            if count >= limit:
                return


def _idempotent_generator(a: FDAlgebra, left_ideal: Subspace) -> Vector | None:
    """An idempotent ``g`` of the left ideal ``L`` with ``l g = l`` for all ``l``."""
    basis = left_ideal.basis
    n = a.dim
    cols = []
    for lk in basis:
        cols.append(tuple(c for lm in basis for c in a.mul(lm, lk)))
    rhs = tuple(c for lm in basis for c in lm)
    m = Matrix.from_columns(cols, len(rhs))
    sol = solve(m, rhs)
    if sol is None:
        return None
    return combine(sol, basis, n)


def _proper_idempotent(a: FDAlgebra, e: Vector, corner: Subspace) -> Vector:
    """A nonzero idempotent ``g != e`` inside the corner of ``e`` (semisimple ``a``)."""
    for coeffs in _coefficient_schedule(corner.dim):
        x = combine(coeffs, corner.basis, a.dim)
        if is_zero_vector(x):
            continue
        candidates = [x]
        lx = Subspace.span((a.mul(c, x) for c in corner.basis), a.dim)
        if lx.dim == corner.dim:
            poly = minimal_polynomial(a, x, e)
            if len(poly) <= 2:
                continue
            candidates = [sub(x, scale(r, e)) for r in rational_roots(poly)]
        for y in candidates:
            ly = Subspace.span((a.mul(c, y) for c in corner.basis), a.dim)
            if 0 < ly.dim < corner.dim:
                g = _idempotent_generator(a, ly)
                if g is not None and a.is_idempotent(g) and g != e and not is_zero_vector(g):
                    return g
    raise NonSplitSemisimpleQuotient("no splitting element found in a simple component of dimension %d" % corner.dim)


def _check_center_splits(s: FDAlgebra) -> None:
    z = center(s)
    if z.dim <= 1:
        return
    for coeffs in _coefficient_schedule(z.dim, limit=60):
        x = combine(coeffs, z.basis, s.dim)
        poly = minimal_polynomial(s, x)
        for f, mult in _factor(poly):
            if len(f) > 2:
                raise NonSplitSemisimpleQuotient("the center of the semisimple quotient is not split over Q")
        if len(poly) - 1 == z.dim:
            return


def _split_semisimple(s: FDAlgebra) -> list[Vector]:
    if s.dim == 0:
        return []
    _check_center_splits(s)
    out = []

    def split(e: Vector) -> None:
        corner = corner_space(s, e)
        if corner.dim == 1:
            out.append(e)
            return
        g = _proper_idempotent(s, e, corner)
        split(g)
        split(sub(e, g))

    split(s.unit)
    return out


def _lift_idempotent(a: FDAlgebra, x: Vector) -> Vector:
    for _ in range(a.dim + 1):
        x2 = a.mul(x, x)
        if x2 == x:
            return x
        x3 = a.mul(x2, x)
        x = sub(scale(3, x2), scale(2, x3))
    raise VerificationError("idempotent lifting did not converge within the dimension bound")


def primitive_orthogonal_idempotents(a: FDAlgebra) -> list[Vector]:
    """Complete set of primitive orthogonal idempotents summing to 1.

    Idempotents of the semisimple quotient are found by splitting along
    zero divisors, then lifted through the radical with ``e <- 3e^2 - 2e^3``.
    """
    if "primitive" in a._cache:
        return a._cache["primitive"]
    if a.dim == 0:
        return []
    rad = jacobson_radical(a)
    if rad.is_zero():
        result = _split_semisimple(a)
    else:
        s, proj = quotient_algebra(a, rad)
        bars = _split_semisimple(s)
        result = []
        rest = a.unit
        for ebar in bars[:-1]:
            y = a.mul_many(rest, proj.qmap.lift(ebar), rest)
            e = _lift_idempotent(a, y)
            result.append(e)
            rest = sub(rest, e)
        result.append(rest)
    _check_complete_set(a, result)
    a._cache["primitive"] = result
    return result


def _check_complete_set(a: FDAlgebra, idems: list[Vector]) -> None:
    total = zero_vector(a.dim)
    for i, e in enumerate(idems):
        if not a.is_idempotent(e) or is_zero_vector(e):
            raise VerificationError(f"idempotent {i} is not a nonzero idempotent")
        for j, f in enumerate(idems):
            if i != j and not is_zero_vector(a.mul(e, f)):
                raise VerificationError(f"idempotents {i} and {j} are not orthogonal")
        total = add(total, e)
    if total != a.unit:
        raise VerificationError("idempotents do not sum to the unit")


def is_primitive_idempotent(a: FDAlgebra, e: Sequence) -> bool:
    rad = jacobson_radical(a)
    c = corner_space(a, e)
    return c.dim - (c & rad.space).dim == 1


def idempotent_classes(a: FDAlgebra, idems: Sequence[Vector]) -> list[list[int]]:
    """Group primitive idempotents by isomorphism class of ``a e``.

    ``a e ≅ a f`` iff ``e a f`` is not inside the radical.
    """
    rad = jacobson_radical(a)
    classes: list[list[int]] = []
    for i, e in enumerate(idems):
        for cls in classes:
            f = idems[cls[0]]
            if not corner_space(a, e, f) <= rad.space:
                cls.append(i)
                break
        else:
            classes.append([i])
    return classes


def basic_algebra(a: FDAlgebra) -> tuple[FDAlgebra, Vector]:
    """``e a e`` for ``e`` a sum of one primitive idempotent per class."""
    idems = primitive_orthogonal_idempotents(a)
    classes = idempotent_classes(a, idems)
    e = zero_vector(a.dim)
    for cls in classes:
        e = add(e, idems[cls[0]])
    if a.dim == 0:
        return a, e
    return corner_algebra(a, e).algebra, e


@dataclass(frozen=True)
class GabrielQuiver:
    """Vertex count and arrow multiplicities ``arrows[i][j]`` for arrows i -> j."""

    vertices: int
    arrows: tuple
    labels: tuple | None = None

    @property
    def arrow_count(self) -> int:
        return sum(sum(r) for r in self.arrows)

    def arrow_list(self) -> list[tuple]:
        names = self.labels or tuple(range(self.vertices))
        return [(names[i], names[j], m) for i in range(self.vertices) for j in range(self.vertices)
                if (m := self.arrows[i][j])]

    def permuted(self, perm: Sequence[int]) -> tuple:
        return tuple(tuple(self.arrows[perm[i]][perm[j]] for j in range(self.vertices)) for i in range(self.vertices))

    def is_isomorphic(self, other: "GabrielQuiver") -> bool:
        if self.vertices != other.vertices or self.arrow_count != other.arrow_count:
            return False
        return any(self.permuted(p) == other.arrows for p in itertools.permutations(range(self.vertices)))

    def opposite(self) -> "GabrielQuiver":
        n = self.vertices
        return GabrielQuiver(n, tuple(tuple(self.arrows[j][i] for j in range(n)) for i in range(n)), self.labels)

    def to_dict(self) -> dict:
        out = {"vertices": self.vertices, "arrows": [list(r) for r in self.arrows]}
        if self.labels is not None:
            out["labels"] = [str(x) for x in self.labels]
            out["arrow_list"] = [[str(s), str(t), m] for s, t, m in self.arrow_list()]
        return out


def gabriel_quiver(a: FDAlgebra, idempotents: Sequence[Vector] | None = None, labels: Sequence | None = None) -> GabrielQuiver:
    """Arrows ``i -> j`` counted by ``dim e_j (J/J^2) e_i``.

    Without ``idempotents`` the algebra must be basic.
    """
    if idempotents is None:
        idempotents = primitive_orthogonal_idempotents(a)
        if any(len(c) > 1 for c in idempotent_classes(a, idempotents)):
            raise ValueError("algebra is not basic; pass one idempotent per simple")
    rad = jacobson_radical(a)
    rad2 = ideal_product(rad, rad)
    n = len(idempotents)
    arrows = []
    for i in range(n):
        row = []
        for j in range(n):
            ej, ei = idempotents[j], idempotents[i]
            top = Subspace.span((a.mul_many(ej, v, ei) for v in rad.basis), a.dim).dim
            low = Subspace.span((a.mul_many(ej, v, ei) for v in rad2.basis), a.dim).dim
            row.append(top - low)
        arrows.append(tuple(row))
    return GabrielQuiver(n, tuple(arrows), tuple(labels) if labels is not None else None)


def simple_idempotents(a: FDAlgebra) -> dict:
    """Named primitive idempotents, one per simple module.

    Uses ``vertex_idempotents`` when present, otherwise class representatives
    of :func:`primitive_orthogonal_idempotents` named ``"0", "1", ...``.
    """
    if a.vertex_idempotents:
        return dict(a.vertex_idempotents)
    idems = primitive_orthogonal_idempotents(a)
    return {str(k): idems[c[0]] for k, c in enumerate(idempotent_classes(a, idems))}

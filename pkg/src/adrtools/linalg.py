"""Exact dense linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`. Matrices are immutable
row-major grids. Subspaces are stored by their reduced row-echelon basis, so
two subspaces are equal exactly when their stored bases are equal.

Elimination runs on sparse dict rows internally; the structure-constant and
commutation systems met in practice are mostly zeros.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionMismatch(ValueError):
    pass


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, str or Fraction")
    return Fraction(x)


def vec(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, k: int) -> Vector:
    v = [ZERO] * n
    v[k] = ONE
    return tuple(v)


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> Vector:
    c = to_fraction(c)
    return tuple(c * a for a in v)


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


def combine(coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    """Return sum(coeffs[k] * vectors[k]) in dimension ``n``."""
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for k, a in enumerate(v):
            if a:
                out[k] += c * a
    return tuple(out)


def _sparse(v: Sequence) -> dict:
    return {k: a for k, a in enumerate(v) if a}


def _dense(d: dict, n: int) -> Vector:
    out = [ZERO] * n
    for k, a in d.items():
        out[k] = a
    return tuple(out)


class Matrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("nrows", "ncols", "rows", "_hash")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(vec(r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch(f"row of length {len(r)} in a matrix with {ncols} columns")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self._hash = None

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls([zero_vector(ncols)] * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([unit_vector(n, k) for k in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        if not columns:
            return cls.zeros(nrows, 0)
        return cls([[c[r] for c in columns] for r in range(nrows)], len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix.from_columns(self.rows, self.ncols)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def flat(self) -> Vector:
        return tuple(a for r in self.rows for a in r)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} against {self.ncols} columns")
        nz = [(k, a) for k, a in enumerate(v) if a]
        return tuple(sum((r[k] * a for k, a in nz), ZERO) for r in self.rows)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"{self.shape} @ {other.shape}")
            orows = [_sparse(r) for r in other.rows]
            out = []
            for r in self.rows:
                acc: dict = {}
                for k, a in enumerate(r):
                    if not a:
                        continue
                    for j, b in orows[k].items():
                        acc[j] = acc.get(j, ZERO) + a * b
                out.append(_dense(acc, other.ncols))
            return Matrix(out, other.ncols)
        return self.apply(other)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return Matrix([add(a, b) for a, b in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return Matrix([sub(a, b) for a, b in zip(self.rows, other.rows)], self.ncols)

    def scaled(self, c) -> "Matrix":
        return Matrix([scale(c, r) for r in self.rows], self.ncols)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nrows, self.ncols, self.rows))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(a) for a in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"


def linear_combination(coeffs: Sequence, mats: Sequence[Matrix], nrows: int, ncols: int) -> Matrix:
    flat = combine(coeffs, [m.flat() for m in mats], nrows * ncols)
    return Matrix([flat[r * ncols:(r + 1) * ncols] for r in range(nrows)], ncols)


class _Echelon:
    """Incrementally maintained reduced row-echelon basis (sparse rows)."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict] = {}  # pivot column -> row with 1 at pivot

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        for p in [p for p in v if p in self.rows]:
            c = v.get(p)
            if not c:
                continue
            for k, a in self.rows[p].items():
                nv = v.get(k, ZERO) - c * a
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def insert(self, v: dict) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        p = min(v)
        inv = ONE / v[p]
        if inv != 1:
            v = {k: a * inv for k, a in v.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                for k, a in v.items():
                    nv = row.get(k, ZERO) - c * a
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self.rows[p] = v
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> tuple[int, ...]:
        return tuple(sorted(self.rows))

    def basis(self) -> tuple[Vector, ...]:
        return tuple(_dense(self.rows[p], self.ncols) for p in self.pivots())


def rref(m: Matrix) -> tuple[Matrix, int, tuple[int, ...]]:
    """Reduced row-echelon form, rank and pivot columns of ``m``.

    The returned matrix has the same shape as ``m``; zero rows trail.
    """
    ech = _Echelon(m.ncols)
    for r in m.rows:
        ech.insert(_sparse(r))
    basis = list(ech.basis())
    rank = len(basis)
    basis += [zero_vector(m.ncols)] * (m.nrows - rank)
    return Matrix(basis, m.ncols), rank, ech.pivots()


def rank(m: Matrix) -> int:
    return rref(m)[1]


def _rank_of_vectors(vectors: Iterable[Sequence], n: int) -> int:
    ech = _Echelon(n)
    for v in vectors:
        ech.insert(_sparse(v))
    return ech.rank


def determinant(m: Matrix) -> Fraction:
    if m.nrows != m.ncols:
        raise DimensionMismatch("determinant of a non-square matrix")
    a = [list(r) for r in m.rows]
    n = m.nrows
    det = ONE
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        inv = ONE / a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


def inverse(m: Matrix) -> Matrix | None:
    n = m.nrows
    if n != m.ncols:
        raise DimensionMismatch("inverse of a non-square matrix")
    aug = Matrix([r + unit_vector(n, k) for k, r in enumerate(m.rows)], 2 * n)
    red, _, piv = rref(aug)
    if piv[:n] != tuple(range(n)):
        return None
    return Matrix([r[n:] for r in red.rows[:n]], n)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient, stored by its RREF basis."""

    ambient: int
    basis: tuple
    pivots: tuple

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient: int) -> "Subspace":
        ech = _Echelon(ambient)
        for v in vectors:
            if len(v) != ambient:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient {ambient}")
            ech.insert(_sparse(v))
        return cls(ambient, ech.basis(), ech.pivots())

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, (), ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, tuple(unit_vector(ambient, k) for k in range(ambient)), tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient

    def _echelon(self) -> _Echelon:
        ech = _Echelon(self.ambient)
        for p, b in zip(self.pivots, self.basis):
            ech.rows[p] = _sparse(b)
        return ech

    def reduce(self, v: Sequence) -> Vector:
        """Canonical representative of ``v`` modulo this subspace."""
        if len(v) != self.ambient:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient {self.ambient}")
        return _dense(self._echelon().reduce(_sparse(v)), self.ambient)

    def contains(self, v: Sequence) -> bool:
        return is_zero_vector(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in the stored basis; ``v`` must lie in the subspace."""
        coords = tuple(v[p] for p in self.pivots)
        if tuple(combine(coords, self.basis, self.ambient)) != tuple(v):
            raise ValueError("vector does not lie in the subspace")
        return coords

    def issubspace(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(other.contains(b) for b in self.basis)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubspace(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersect(self, other)

    def image(self, m: Matrix) -> "Subspace":
        return Subspace.span((m.apply(b) for b in self.basis), m.nrows)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def _check_ambient(u: Subspace, v: Subspace) -> None:
    if u.ambient != v.ambient:
        raise DimensionMismatch(f"ambient {u.ambient} vs {v.ambient}")


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(u, v)
    return Subspace.span(u.basis + v.basis, u.ambient)


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(u, v)
    n = u.ambient
    if u.is_zero() or v.is_zero():
        return Subspace.zero(n)
    # (a, b) with sum a_k u_k - sum b_k v_k = 0
    cols = list(u.basis) + [scale(-1, b) for b in v.basis]
    ker = kernel(Matrix.from_columns(cols, n))
    return Subspace.span((combine(k[:u.dim], u.basis, n) for k in ker.basis), n)


def subspace_equal(u: Subspace, v: Subspace) -> bool:
    _check_ambient(u, v)
    return u == v


def contains(u: Subspace, x: Sequence) -> bool:
    return u.contains(x)


def kernel(m: Matrix) -> Subspace:
    """Null space {v : m v = 0}."""
    ech = _Echelon(m.ncols)
    for r in m.rows:
        ech.insert(_sparse(r))
    pivots = set(ech.rows)
    out = []
    for f in range(m.ncols):
        if f in pivots:
            continue
        v = {f: ONE}
        for p, row in ech.rows.items():
            c = row.get(f)
            if c:
                v[p] = -c
        out.append(_dense(v, m.ncols))
    return Subspace.span(out, m.ncols)


def kernel_of_rows(rows: Iterable[dict | Sequence], ncols: int) -> Subspace:
    """Null space of a system given row by row (sparse dicts accepted)."""
    ech = _Echelon(ncols)
    for r in rows:
        ech.insert(r if isinstance(r, dict) else _sparse(r))
    pivots = set(ech.rows)
    out = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = {f: ONE}
        for p, row in ech.rows.items():
            c = row.get(f)
            if c:
                v[p] = -c
        out.append(_dense(v, ncols))
    return Subspace.span(out, ncols)


def solve(m: Matrix, b: Sequence) -> Vector | None:
    """Some ``x`` with ``m x = b``, or ``None`` if the system is inconsistent."""
    if len(b) != m.nrows:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {m.nrows} rows")
    b = vec(b)
    aug = Matrix([r + (c,) for r, c in zip(m.rows, b)], m.ncols + 1)
    red, rk, piv = rref(aug)
    if piv and piv[-1] == m.ncols:
        return None
    x = [ZERO] * m.ncols
    for row, p in zip(red.rows, piv):
        x[p] = row[-1]
    return tuple(x)


@dataclass(frozen=True)
class QuotientMap:
    """The projection Q^ambient -> Q^ambient / w in canonical coordinates.

    Coset representatives are the standard basis vectors at the non-pivot
    coordinates of ``w``.
    """

    ambient: int
    subspace: Subspace
    free: tuple

    @property
    def dim(self) -> int:
        return len(self.free)

    @property
    def reps(self) -> tuple:
        return tuple(unit_vector(self.ambient, k) for k in self.free)

    def project(self, v: Sequence) -> Vector:
        r = self.subspace.reduce(v)
        return tuple(r[k] for k in self.free)

    def lift(self, coords: Sequence) -> Vector:
        out = [ZERO] * self.ambient
        for k, c in zip(self.free, coords):
            out[k] = to_fraction(c)
        return tuple(out)

    def matrix(self) -> Matrix:
        return Matrix.from_columns([self.project(unit_vector(self.ambient, k)) for k in range(self.ambient)], self.dim)

    def image(self, u: Subspace) -> Subspace:
        return Subspace.span((self.project(b) for b in u.basis), self.dim)

    def preimage(self, u: Subspace) -> Subspace:
        return Subspace.span([self.lift(b) for b in u.basis] + list(self.subspace.basis), self.ambient)


def quotient_map(ambient: int, w: Subspace) -> QuotientMap:
    if w.ambient != ambient:
        raise DimensionMismatch(f"subspace of ambient {w.ambient} in ambient {ambient}")
    piv = set(w.pivots)
    return QuotientMap(ambient, w, tuple(k for k in range(ambient) if k not in piv))


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

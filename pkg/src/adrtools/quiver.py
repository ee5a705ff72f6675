"""Path algebras of quivers with relations.

Paths compose right to left: ``h*g`` means ``g`` first, then ``h``. A path is
stored in written order, so ``("h", "g")`` is ``h∘g``.

Text format::

    vertex a b c
    arrow g a b
    arrow h b c
    relation h*g = 0
    relation 2 x*y - 1/3 z*w = 0
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import FDAlgebra, ideal_from_generators, quotient_algebra
from .linalg import ONE, ZERO, Subspace, format_fraction, unit_vector
from .reports import InfiniteDimensional


class QuiverParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass(frozen=True)
class Arrow:
    label: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple = ()

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex names must be distinct")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise ValueError("arrow labels must be distinct")
        if set(labels) & set(self.vertices):
            raise ValueError("arrow labels must differ from vertex names")
        for a in self.arrows:
            if a.source not in self.vertices or a.target not in self.vertices:
                raise ValueError(f"arrow {a.label} has an undeclared endpoint")

    def arrow(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise KeyError(label)

    def path_ends(self, path: tuple) -> tuple[str, str]:
        """(source, target) of a nonempty written path; raises if not composable."""
        arrows = [self.arrow(x) for x in path]
        for later, earlier in zip(arrows, arrows[1:]):
            if earlier.target != later.source:
                raise ValueError(f"path {'*'.join(path)} is not composable at {later.label}*{earlier.label}")
        return arrows[-1].source, arrows[0].target


@dataclass(frozen=True)
class Relation:
    """Linear combination of parallel paths set to zero: ``((coef, path), ...)``."""

    terms: tuple

    def format(self) -> str:
        parts = []
        for k, (c, path) in enumerate(self.terms):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coef = "" if mag == 1 else format_fraction(mag) + " "
            body = coef + "*".join(path)
            if k == 0:
                parts.append(("-" if sign == "-" else "") + body)
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts) + " = 0"


@dataclass(frozen=True)
class Presentation:
    quiver: Quiver
    relations: tuple = field(default=())

    def __post_init__(self):
        for rel in self.relations:
            ends = {self.quiver.path_ends(path) for _, path in rel.terms}
            if len(ends) > 1:
                raise ValueError(f"relation '{rel.format()}' mixes non-parallel paths")


def _composable_extensions(q: Quiver, path: tuple, target: str) -> list[tuple]:
    return [(a.label,) + path for a in q.arrows if a.source == target]


def enumerate_paths(q: Quiver, max_len: int) -> list[tuple]:
    """All nonempty paths of length <= max_len in written order, by length then name."""
    out = []
    layer = [((a.label,), a.target) for a in q.arrows]
    for _ in range(max_len):
        if not layer:
            break
        layer.sort()
        out.extend(p for p, _ in layer)
        layer = [((a.label,) + p, a.target) for p, t in layer for a in q.arrows if a.source == t]
    return out


def default_path_bound(q: Quiver) -> int:
    return 2 * (len(q.arrows) + len(q.vertices))


def build_path_algebra(p: Presentation, max_path_len: int | None = None) -> FDAlgebra:
    """``kQ / (relations)`` with basis of trivial paths and surviving paths.

    The path algebra is truncated at ``max_path_len``; the quotient is
    accepted once every path of some length ``m <= max_path_len`` lies in the
    relation ideal, otherwise :class:`InfiniteDimensional` is raised.
    """
    q = p.quiver
    bound = default_path_bound(q) if max_path_len is None else max_path_len
    paths = enumerate_paths(q, bound)
    basis_keys = [("e", v) for v in q.vertices] + [("p", x) for x in paths]
    index = {k: i for i, k in enumerate(basis_keys)}
    n = len(basis_keys)
    ends = {}
    for v in q.vertices:
        ends[("e", v)] = (v, v, 0)
    for x in paths:
        s, t = q.path_ends(x)
        ends[("p", x)] = (s, t, len(x))

    def product(k1, k2):
        s1, t1, l1 = ends[k1]
        s2, t2, l2 = ends[k2]
        if s1 != t2 or l1 + l2 > bound:
            return None
        if k1[0] == "e":
            return k2
        if k2[0] == "e":
            return k1
        return ("p", k1[1] + k2[1])

    table = []
    for k1 in basis_keys:
        row = []
        for k2 in basis_keys:
            k = product(k1, k2)
            row.append(unit_vector(n, index[k]) if k is not None else (ZERO,) * n)
        table.append(row)
    unit = tuple(ONE if k[0] == "e" else ZERO for k in basis_keys)
    labels = [f"e_{k[1]}" if k[0] == "e" else "*".join(k[1]) for k in basis_keys]
    vids = {v: unit_vector(n, index[("e", v)]) for v in q.vertices}
    free = FDAlgebra(table, unit, labels, vids)

    gens = []
    for rel in p.relations:
        v = [ZERO] * n
        for c, path in rel.terms:
            if len(path) > bound:
                raise InfiniteDimensional(f"relation path {'*'.join(path)} exceeds the length bound {bound}")
            v[index[("p", path)]] += c
        gens.append(tuple(v))
    ideal = ideal_from_generators(free, gens)

    by_length: dict[int, list[int]] = {}
    for x in paths:
        by_length.setdefault(len(x), []).append(index[("p", x)])
    cutoff = None
    for m in range(1, bound + 1):
        if all(ideal.space.contains(unit_vector(n, i)) for i in by_length.get(m, [])):
            cutoff = m
            break
    if cutoff is None:
        raise InfiniteDimensional(f"paths do not vanish modulo the relations within length {bound}")
    long_paths = [unit_vector(n, index[("p", x)]) for x in paths if len(x) >= cutoff]
    kill = Subspace.span(list(ideal.space.basis) + long_paths, n)
    algebra, _ = quotient_algebra(free, kill)
    return algebra


# text format ----------------------------------------------------------------

_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_TOKEN = re.compile(rf"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>{_NAME})|(?P<op>[+\-*=]))")


def _parse_relation(expr: str, line: int, col0: int) -> Relation:
    pos = 0
    tokens = []
    while pos < len(expr):
        if expr[pos:].strip() == "":
            break
        m = _TOKEN.match(expr, pos)
        if not m or m.end() == pos:
            raise QuiverParseError(line, col0 + pos + 1, f"unexpected character {expr[pos:].lstrip()[:1]!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), col0 + m.start(kind) + 1))
        pos = m.end()
    if not tokens:
        raise QuiverParseError(line, col0 + 1, "empty relation")
    if tokens[-2:] and not (len(tokens) >= 2 and tokens[-2][1] == "=" and tokens[-1][1] == "0"):
        raise QuiverParseError(line, tokens[-1][2], "relation must end with '= 0'")
    tokens = tokens[:-2]
    terms = []
    i = 0
    sign = ONE
    expect_term = True
    while i < len(tokens):
        kind, text, col = tokens[i]
        if expect_term:
            if text in "+-" and kind == "op":
                if text == "-":
                    sign = -sign
                i += 1
                continue
            coef = ONE
            if kind == "num":
                coef = Fraction(text)
                i += 1
                if i < len(tokens) and tokens[i][1] == "*":
                    i += 1
                if i >= len(tokens) or tokens[i][0] != "name":
                    raise QuiverParseError(line, col, "coefficient must be followed by a path")
                kind, text, col = tokens[i]
            if kind != "name":
                raise QuiverParseError(line, col, f"expected a path, found {text!r}")
            path = [text]
            i += 1
            while i + 1 < len(tokens) and tokens[i][1] == "*" and tokens[i + 1][0] == "name":
                path.append(tokens[i + 1][1])
                i += 2
            terms.append((sign * coef, tuple(path)))
            sign = ONE
            expect_term = False
        else:
            if kind != "op" or text not in "+-":
                raise QuiverParseError(line, col, f"expected '+' or '-', found {text!r}")
            sign = ONE if text == "+" else -ONE
            expect_term = True
            i += 1
    if expect_term:
        raise QuiverParseError(line, col0 + len(expr), "dangling operator")
    merged: dict = {}
    for c, path in terms:
        merged[path] = merged.get(path, ZERO) + c
    return Relation(tuple((c, path) for path, c in merged.items() if c))


def parse_quiver_file(text: str) -> Presentation:
    vertices: list[str] = []
    arrows: list[Arrow] = []
    relations: list[tuple[str, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        stripped = line.lstrip()
        col0 = len(line) - len(stripped)
        word, _, rest = stripped.partition(" ")
        if word == "vertex":
            names = rest.split()
            if not names:
                raise QuiverParseError(lineno, col0 + 1, "vertex line needs at least one name")
            for name in names:
                if not re.fullmatch(_NAME, name):
                    raise QuiverParseError(lineno, line.index(name) + 1, f"bad vertex name {name!r}")
            vertices.extend(names)
        elif word == "arrow":
            parts = rest.split()
            if len(parts) != 3:
                raise QuiverParseError(lineno, col0 + 1, "expected 'arrow <label> <source> <target>'")
            for name in parts:
                if not re.fullmatch(_NAME, name):
                    raise QuiverParseError(lineno, line.index(name) + 1, f"bad name {name!r}")
                if name in parts[1:] and name not in vertices:
                    raise QuiverParseError(lineno, line.index(name) + 1, f"undeclared vertex {name!r}")
            arrows.append(Arrow(*parts))
        elif word == "relation":
            relations.append((rest, lineno, col0 + len("relation") + 1))
        else:
            raise QuiverParseError(lineno, col0 + 1, f"unknown directive {word!r}")
    try:
        quiver = Quiver(tuple(vertices), tuple(arrows))
    except ValueError as exc:
        raise QuiverParseError(0, 0, str(exc)) from None
    rels = []
    for expr, lineno, col0 in relations:
        rel = _parse_relation(expr, lineno, col0)
        for _, path in rel.terms:
            try:
                quiver.path_ends(path)
            except (KeyError, ValueError) as exc:
                raise QuiverParseError(lineno, col0 + 1, f"bad path {'*'.join(path)}: {exc}") from None
        rels.append(rel)
    try:
        return Presentation(quiver, tuple(rels))
    except ValueError as exc:
        raise QuiverParseError(0, 0, str(exc)) from None


def format_quiver_file(p: Presentation) -> str:
    lines = ["vertex " + " ".join(p.quiver.vertices)]
    lines += [f"arrow {a.label} {a.source} {a.target}" for a in p.quiver.arrows]
    lines += ["relation " + r.format() for r in p.relations]
    return "\n".join(lines) + "\n"


def linear_quiver(n: int, prefix: str = "v") -> Quiver:
    names = tuple(f"{prefix}{k}" for k in range(1, n + 1))
    return Quiver(names, tuple(Arrow(f"a{k}", names[k - 1], names[k]) for k in range(1, n)))


def a2_presentation() -> Presentation:
    """The quiver a --f--> b."""
    return Presentation(Quiver(("a", "b"), (Arrow("f", "a", "b"),)))

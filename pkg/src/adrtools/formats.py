"""Plain-text files for algebras and modules.

Algebra file::

    algebra dim=3
    label 0 e_a
    unit 1 1 0
    mul 2 0 0 0 1        # b2 * b0 = b3-vector
    vertex a 1 0 0       # optional named primitive idempotent

Products not listed are zero. Module file::

    module dim=2
    act 0 1 0 0 1        # row-major matrix of basis element 0

Entries are integers or fractions ``p/q``. ``#`` starts a comment.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import FDAlgebra
from .linalg import ZERO, Matrix, format_fraction
from .modules import AModule
from .quiver import build_path_algebra, parse_quiver_file


class FormatError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _numbers(tokens, lineno: int, count: int) -> tuple:
    if len(tokens) != count:
        raise FormatError(lineno, f"expected {count} entries, found {len(tokens)}")
    try:
        return tuple(Fraction(t) for t in tokens)
    except (ValueError, ZeroDivisionError):
        raise FormatError(lineno, f"bad number among {' '.join(tokens)}") from None


def _header(it, word: str) -> int:
    try:
        lineno, tokens = next(it)
    except StopIteration:
        raise FormatError(0, "empty file") from None
    if len(tokens) != 2 or tokens[0] != word or not tokens[1].startswith("dim="):
        raise FormatError(lineno, f"expected '{word} dim=<n>'")
    try:
        n = int(tokens[1][4:])
    except ValueError:
        raise FormatError(lineno, "dimension must be an integer") from None
    if n < 0:
        raise FormatError(lineno, "dimension must be non-negative")
    return n


def _index(token: str, n: int, lineno: int) -> int:
    try:
        k = int(token)
    except ValueError:
        raise FormatError(lineno, f"bad index {token!r}") from None
    if not 0 <= k < n:
        raise FormatError(lineno, f"index {k} out of range for dim {n}")
    return k


def parse_algebra_file(text: str) -> FDAlgebra:
    it = _lines(text)
    n = _header(it, "algebra")
    table = [[(ZERO,) * n for _ in range(n)] for _ in range(n)]
    labels = [f"b{k}" for k in range(n)]
    unit = None
    vertices = {}
    for lineno, tokens in it:
        word = tokens[0]
        if word == "label":
            if len(tokens) != 3:
                raise FormatError(lineno, "expected 'label <index> <name>'")
            labels[_index(tokens[1], n, lineno)] = tokens[2]
        elif word == "unit":
            unit = _numbers(tokens[1:], lineno, n)
        elif word == "mul":
            if len(tokens) < 3:
                raise FormatError(lineno, "expected 'mul <i> <j> <vector>'")
            i, j = _index(tokens[1], n, lineno), _index(tokens[2], n, lineno)
            table[i][j] = _numbers(tokens[3:], lineno, n)
        elif word == "vertex":
            if len(tokens) < 2:
                raise FormatError(lineno, "expected 'vertex <name> <vector>'")
            vertices[tokens[1]] = _numbers(tokens[2:], lineno, n)
        else:
            raise FormatError(lineno, f"unknown directive {word!r}")
    if unit is None:
        raise FormatError(0, "missing 'unit' line")
    if len(set(labels)) != n:
        raise FormatError(0, "basis labels must be distinct")
    return FDAlgebra(table, unit, labels, vertices)


def format_algebra_file(a: FDAlgebra) -> str:
    def row(v):
        return " ".join(format_fraction(x) for x in v)

    out = [f"algebra dim={a.dim}"]
    out += [f"label {k} {name}" for k, name in enumerate(a.labels)]
    out.append(f"unit {row(a.unit)}")
    for i in range(a.dim):
        for j in range(a.dim):
            if any(a.table[i][j]):
                out.append(f"mul {i} {j} {row(a.table[i][j])}")
    out += [f"vertex {name} {row(v)}" for name, v in a.vertex_idempotents.items()]
    return "\n".join(out) + "\n"


def read_algebra(text: str, max_path_len: int | None = None) -> FDAlgebra:
    """Either format: a quiver file (``vertex``/``arrow`` lines) or an algebra file."""
    for _, tokens in _lines(text):
        if tokens[0] == "algebra":
            return parse_algebra_file(text)
        break
    return build_path_algebra(parse_quiver_file(text), max_path_len)


def parse_module_file(text: str, a: FDAlgebra) -> AModule:
    it = _lines(text)
    n = _header(it, "module")
    action = [None] * a.dim
    for lineno, tokens in it:
        if tokens[0] != "act" or len(tokens) < 2:
            raise FormatError(lineno, "expected 'act <index> <matrix entries>'")
        k = _index(tokens[1], a.dim, lineno)
        flat = _numbers(tokens[2:], lineno, n * n)
        action[k] = Matrix([flat[r * n:(r + 1) * n] for r in range(n)], n)
    missing = [k for k, m in enumerate(action) if m is None]
    if missing:
        raise FormatError(0, f"missing action matrices for basis elements {missing}")
    return AModule(a, action)


def format_module_file(m: AModule) -> str:
    out = [f"module dim={m.dim}"]
    for k, mat in enumerate(m.action):
        out.append(f"act {k} " + " ".join(format_fraction(x) for x in mat.flat()))
    return "\n".join(out) + "\n"

"""Text and JSON formats for matrices, inequality systems, hypergraphs and
games.  Files index nodes from 1; the in-memory API indexes from 0.

Scalars are written as integers, ``a/b`` or ``-inf``.  Lines that are
blank or start with ``#`` are ignored.  Every reader also accepts a JSON
document (detected by a leading ``[`` or ``{``) in which scalars are
integers or strings.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .cone import Inequality
from .semiring import BOTTOM, TropMatrix, TropicError, format_scalar, parse_scalar


class ParseError(TropicError, ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line, self.col = line, col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "") + ": "
        super().__init__(where + message)


class _Lines:
    """Tokenized content lines with 1-based line and column positions."""

    def __init__(self, text: str):
        self.lines = []
        for no, raw in enumerate(text.splitlines(), 1):
            if not raw.strip() or raw.lstrip().startswith("#"):
                continue
            toks, col = [], 0
            for part in raw.split():
                col = raw.index(part, col)
                toks.append((part, col + 1))
                col += len(part)
            self.lines.append((no, toks))
        self.pos = 0

    def next(self, what: str):
        if self.pos >= len(self.lines):
            last = self.lines[-1][0] if self.lines else 1
            raise ParseError(f"unexpected end of input, expected {what}", last)
        self.pos += 1
        return self.lines[self.pos - 1]

    def finish(self):
        if self.pos < len(self.lines):
            raise ParseError("unexpected trailing content", self.lines[self.pos][0])


def _scalar(tok: str, line: int, col: int):
    try:
        return parse_scalar(tok)
    except ValueError:
        raise ParseError(f"bad scalar {tok!r}", line, col) from None


def _int(tok: str, line: int, col: int, low: int = 0) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", line, col) from None
    if v < low:
        raise ParseError(f"expected an integer >= {low}, got {v}", line, col)
    return v


def _row(lines: _Lines, n: int, what: str) -> list:
    no, toks = lines.next(what)
    if len(toks) != n:
        col = toks[n][1] if len(toks) > n else (toks[-1][1] if toks else 1)
        raise ParseError(f"{what}: expected {n} entries, found {len(toks)}", no, col)
    return [_scalar(t, no, c) for t, c in toks]


def _header(lines: _Lines, what: str) -> tuple:
    no, toks = lines.next(what)
    if len(toks) != 2:
        raise ParseError(f"{what} needs two integers", no, 1)
    return tuple(_int(t, no, c) for t, c in toks)


def _is_json(text: str) -> bool:
    return text.lstrip()[:1] in ("[", "{")


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def _json_scalar(v):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ParseError(f"bad JSON scalar {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    try:
        return parse_scalar(v)
    except ValueError:
        raise ParseError(f"bad JSON scalar {v!r}") from None


def _json_row(values, n=None):
    if not isinstance(values, list):
        raise ParseError("expected a JSON array of scalars")
    if n is not None and len(values) != n:
        raise ParseError(f"expected {n} entries, found {len(values)}")
    return [_json_scalar(v) for v in values]


def _json_matrix(rows, n=None) -> TropMatrix:
    if not isinstance(rows, list):
        raise ParseError("expected a JSON array of rows")
    if not rows and n is None:
        raise ParseError("empty matrix")
    parsed = [_json_row(r) for r in rows]
    n = len(parsed[0]) if n is None else n
    for r, row in enumerate(parsed):
        if len(row) != n:
            raise ParseError(f"row {r + 1} has {len(row)} entries, expected {n}")
    return TropMatrix(parsed, n)


def to_json_scalar(x):
    if x is BOTTOM:
        return "-inf"
    return int(x) if x.denominator == 1 else format_scalar(x)


# ------------------------------------------------------------------ matrix


def read_matrix(text: str) -> TropMatrix:
    if _is_json(text):
        return _json_matrix(_load_json(text))
    lines = _Lines(text)
    p, n = _header(lines, "matrix header 'p n'")
    rows = [_row(lines, n, f"matrix row {r + 1}") for r in range(p)]
    lines.finish()
    return TropMatrix(rows, n)


def write_matrix(M: TropMatrix) -> str:
    out = [f"{M.p} {M.n}"]
    out += [" ".join(format_scalar(v) for v in row) for row in M.rows]
    return "\n".join(out) + "\n"


def matrix_to_json(M: TropMatrix):
    return [[to_json_scalar(v) for v in row] for row in M.rows]


# ------------------------------------------------------------- inequalities


def _parse_inequality_tokens(toks, no: int) -> Inequality:
    seps = [k for k, (t, _) in enumerate(toks) if t == "<="]
    if len(seps) != 1:
        raise ParseError("an inequality needs exactly one '<='", no, toks[0][1] if toks else 1)
    k = seps[0]
    left, right = toks[:k], toks[k + 1:]
    if len(left) != len(right) or not left:
        raise ParseError(f"sides have {len(left)} and {len(right)} entries", no, toks[k][1])
    return Inequality([_scalar(t, no, c) for t, c in left], [_scalar(t, no, c) for t, c in right])


def read_inequality(text: str) -> Inequality:
    system = read_system(text)
    if len(system) != 1:
        raise ParseError(f"expected one inequality, found {len(system)}")
    return system[0]


def read_system(text: str) -> list:
    if _is_json(text):
        data = _load_json(text)
        if isinstance(data, dict):
            data = [data]
        if not isinstance(data, list):
            raise ParseError("expected a JSON array of inequalities")
        out = []
        for r, item in enumerate(data):
            if not isinstance(item, dict) or set(item) != {"a", "b"}:
                raise ParseError(f"inequality {r + 1} must be an object with keys 'a' and 'b'")
            a, b = _json_row(item["a"]), _json_row(item["b"], len(item["a"]))
            out.append(Inequality(a, b))
        _same_dim(out)
        return out
    lines = _Lines(text)
    out = []
    for no, toks in lines.lines:
        q = _parse_inequality_tokens(toks, no)
        if out and q.n != out[0].n:
            raise ParseError(f"dimension {q.n} differs from {out[0].n}", no, 1)
        out.append(q)
    return out


def _same_dim(system):
    if system and any(q.n != system[0].n for q in system):
        raise ParseError("inequalities of different dimensions")


def write_inequality(q: Inequality) -> str:
    return " ".join(format_scalar(v) for v in q.a) + " <= " + " ".join(format_scalar(v) for v in q.b)


def write_system(system) -> str:
    return "".join(write_inequality(q) + "\n" for q in system)


def inequality_to_json(q: Inequality) -> dict:
    return {"a": [to_json_scalar(v) for v in q.a], "b": [to_json_scalar(v) for v in q.b]}


# -------------------------------------------------------------- hypergraphs


def _id_set(toks, no, num_nodes):
    ids = []
    for t, c in toks:
        v = _int(t, no, c, 1)
        if v > num_nodes:
            raise ParseError(f"node {v} exceeds the node count {num_nodes}", no, c)
        ids.append(v - 1)
    return frozenset(ids)


def read_hypergraph(text: str, directed: bool = False):
    """Returns ``(num_nodes, edges)`` with 0-based ids; edges are node sets,
    or ``(tail, head)`` pairs when ``directed``."""
    if _is_json(text):
        data = _load_json(text)
        if not isinstance(data, dict) or "num_nodes" not in data or "edges" not in data:
            raise ParseError("expected an object with 'num_nodes' and 'edges'")
        num = data["num_nodes"]
        if isinstance(num, bool) or not isinstance(num, int) or num < 0:
            raise ParseError("'num_nodes' must be a nonnegative integer")

        def ids(vals):
            if not isinstance(vals, list) or any(isinstance(v, bool) or not isinstance(v, int) or not 1 <= v <= num for v in vals):
                raise ParseError(f"bad node list {vals!r}")
            return frozenset(v - 1 for v in vals)

        if directed:
            return num, [(ids(e["tail"]), ids(e["head"])) for e in data["edges"]]
        return num, [ids(e) for e in data["edges"]]
    lines = _Lines(text)
    num, m = _header(lines, "hypergraph header 'num_nodes num_edges'")
    edges = []
    for r in range(m):
        no, toks = lines.next(f"hyperedge {r + 1}")
        if directed:
            k = _int(toks[0][0], no, toks[0][1]) if toks else 0
            if len(toks) < k + 2:
                raise ParseError("truncated hyperedge", no, toks[-1][1] if toks else 1)
            tail = _id_set(toks[1:k + 1], no, num)
            h = _int(toks[k + 1][0], no, toks[k + 1][1])
            if len(toks) != k + 2 + h:
                raise ParseError(f"head declares {h} nodes, found {len(toks) - k - 2}", no, toks[k + 1][1])
            edges.append((tail, _id_set(toks[k + 2:], no, num)))
        else:
            if not toks:
                raise ParseError("empty line", no, 1)
            k = _int(toks[0][0], no, toks[0][1])
            if len(toks) != k + 1:
                raise ParseError(f"edge declares {k} nodes, found {len(toks) - 1}", no, toks[0][1])
            edges.append(_id_set(toks[1:], no, num))
    lines.finish()
    return num, edges


def write_hypergraph(num_nodes: int, edges, directed: bool = False) -> str:
    out = [f"{num_nodes} {len(edges)}"]
    for e in edges:
        if directed:
            tail, head = e
            out.append(" ".join(str(v) for v in [len(tail)] + [x + 1 for x in sorted(tail)]
                                + [len(head)] + [x + 1 for x in sorted(head)]))
        else:
            out.append(" ".join(str(v) for v in [len(e)] + [x + 1 for x in sorted(e)]))
    return "\n".join(out) + "\n"


# -------------------------------------------------------------------- games


def read_game(text: str):
    """Returns ``(A, B, c, d)``."""
    if _is_json(text):
        data = _load_json(text)
        if not isinstance(data, dict) or set(data) != {"A", "B", "c", "d"}:
            raise ParseError("expected an object with keys 'A', 'B', 'c', 'd'")
        c = _json_row(data["c"])
        n = len(c)
        return (_json_matrix(data["A"], n), _json_matrix(data["B"], n), c, _json_row(data["d"], n))
    lines = _Lines(text)
    p, n = _header(lines, "game header 'p n'")
    A = [_row(lines, n, f"row {r + 1} of A") for r in range(p)]
    B = [_row(lines, n, f"row {r + 1} of B") for r in range(p)]
    c = _row(lines, n, "vector c")
    d = _row(lines, n, "vector d")
    lines.finish()
    return TropMatrix(A, n), TropMatrix(B, n), c, d


def write_game(A: TropMatrix, B: TropMatrix, c, d) -> str:
    rows = [f"{A.p} {A.n}"]
    for row in list(A.rows) + list(B.rows) + [tuple(c), tuple(d)]:
        rows.append(" ".join(format_scalar(v) for v in row))
    return "\n".join(rows) + "\n"


def parse_vector(text: str) -> tuple:
    """Whitespace- or comma-separated scalars on one line."""
    toks = text.replace(",", " ").split()
    try:
        return tuple(parse_scalar(t) for t in toks)
    except ValueError as exc:
        raise ParseError(str(exc)) from None

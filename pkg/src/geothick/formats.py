"""Text formats for graphs, drawings, kernel traces, extension instances and reduction inputs.

All formats are line based; blank lines and lines starting with ``#`` are
ignored.  Rationals are written ``p/q`` (``p`` when integral).  Serializers
emit a canonical form (sorted ids), so parse followed by serialize
reproduces canonical text byte for byte.

Graph::

    n m
    vertices v1 v2 ...      (only when the ids are not 0..n-1)
    u v                     (m lines)

Drawing::

    layers L
    n m
    v x y                   (n lines)
    u v c                   (m lines)

Extension instance: ``graph`` followed by a graph block, then ``drawing``
followed by a drawing block of the predrawn part.  A generated reduction
instance appends ``meta`` and key/value lines (``source``, ``expected``,
``certainty``, ``witness-pos v x y``, ``witness-color u v c``).

Multicolored Clique input::

    k 3
    part 0 1                (k lines, one per part)
    edge 0 2                (any number)

3-CNF input is DIMACS CNF with exactly three literals per clause.
"""

from __future__ import annotations

from fractions import Fraction

from .drawing import Graph, LayeredDrawing, edge
from .errors import GeoThickError, MalformedInput
from .geometry import Point, format_rational
from .gte import GteInstance
from .kernel_fen import FenTrace
from .kernel_vc import VcTrace

Token = tuple[str, int]  # text, 1-based column


class _Reader:
    def __init__(self, text: str, first_line: int = 1):
        self.rows: list[tuple[int, list[Token]]] = []
        for offset, raw in enumerate(text.splitlines()):
            stripped = raw.strip()
            if not stripped or stripped.startswith("#"):
                continue
            toks, cur = [], None
            for i, ch in enumerate(raw + " "):
                if ch.isspace():
                    if cur is not None:
                        toks.append((raw[cur:i], cur + 1))
                        cur = None
                elif cur is None:
                    cur = i
            self.rows.append((first_line + offset, toks))
        self.pos = 0
        self.last_line = first_line + max(0, len(text.splitlines()) - 1)

    def at_end(self) -> bool:
        return self.pos >= len(self.rows)

    def peek(self) -> tuple[int, list[Token]] | None:
        return None if self.at_end() else self.rows[self.pos]

    def next(self, what: str) -> tuple[int, list[Token]]:
        if self.at_end():
            raise MalformedInput(f"unexpected end of input, expected {what}", self.last_line)
        row = self.rows[self.pos]
        self.pos += 1
        return row

    def expect_end(self) -> None:
        if not self.at_end():
            line, toks = self.rows[self.pos]
            raise MalformedInput("unexpected trailing content", line, toks[0][1])


def _int(tok: Token, line: int, lo: int | None = None) -> int:
    text, col = tok
    try:
        v = int(text)
    except ValueError:
        raise MalformedInput(f"expected an integer, got {text!r}", line, col) from None
    if lo is not None and v < lo:
        raise MalformedInput(f"value {v} below {lo}", line, col)
    return v


def _rat(tok: Token, line: int) -> Fraction:
    text, col = tok
    try:
        if "." in text or "e" in text.lower():
            raise ValueError
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise MalformedInput(f"expected a rational p/q, got {text!r}", line, col) from None


def _arity(toks: list[Token], n: int, line: int, what: str) -> None:
    if len(toks) != n:
        col = toks[n][1] if len(toks) > n else (toks[-1][1] if toks else 1)
        raise MalformedInput(f"{what} needs {n} fields, got {len(toks)}", line, col)


def _keyword(r: _Reader, word: str) -> list[Token]:
    line, toks = r.next(f"'{word}'")
    if toks[0][0] != word:
        raise MalformedInput(f"expected '{word}', got {toks[0][0]!r}", line, toks[0][1])
    return toks


# --- graphs -------------------------------------------------------------------------


def _read_graph(r: _Reader) -> Graph:
    line, toks = r.next("graph header 'n m'")
    _arity(toks, 2, line, "graph header")
    n, m = _int(toks[0], line, 0), _int(toks[1], line, 0)
    vertices = list(range(n))
    nxt = r.peek()
    if nxt is not None and nxt[1][0][0] == "vertices":
        line, toks = r.next("vertices")
        vertices = [_int(t, line, 0) for t in toks[1:]]
        if len(vertices) != n or len(set(vertices)) != n:
            raise MalformedInput(f"'vertices' must list {n} distinct ids", line, toks[0][1])
    vset = set(vertices)
    edges = []
    seen = set()
    for _ in range(m):
        line, toks = r.next("edge line 'u v'")
        _arity(toks, 2, line, "edge")
        u, v = _int(toks[0], line, 0), _int(toks[1], line, 0)
        if u == v:
            raise MalformedInput("loops are not allowed", line, toks[1][1])
        for tok, x in ((toks[0], u), (toks[1], v)):
            if x not in vset:
                raise MalformedInput(f"unknown vertex {x}", line, tok[1])
        e = edge(u, v)
        if e in seen:
            raise MalformedInput(f"duplicate edge {u} {v}", line, toks[0][1])
        seen.add(e)
        edges.append(e)
    return Graph(vertices, edges)


def _write_graph(g: Graph) -> list[str]:
    vs = g.sorted_vertices()
    out = [f"{g.n} {g.m}"]
    if vs != list(range(g.n)):
        out.append("vertices " + " ".join(map(str, vs)))
    out += [f"{u} {v}" for u, v in g.sorted_edges()]
    return out


def parse_graph(text: str) -> Graph:
    r = _Reader(text)
    g = _read_graph(r)
    r.expect_end()
    return g


def serialize_graph(g: Graph) -> str:
    return "\n".join(_write_graph(g)) + "\n"


# --- drawings -------------------------------------------------------------------------


def _read_drawing(r: _Reader) -> LayeredDrawing:
    toks = _keyword(r, "layers")
    line = r.rows[r.pos - 1][0]
    _arity(toks, 2, line, "layers line")
    layers = _int(toks[1], line, 1)
    line, toks = r.next("drawing header 'n m'")
    _arity(toks, 2, line, "drawing header")
    n, m = _int(toks[0], line, 0), _int(toks[1], line, 0)
    gamma: dict[int, Point] = {}
    for _ in range(n):
        line, toks = r.next("vertex line 'v x y'")
        _arity(toks, 3, line, "vertex")
        v = _int(toks[0], line, 0)
        if v in gamma:
            raise MalformedInput(f"vertex {v} placed twice", line, toks[0][1])
        gamma[v] = Point(_rat(toks[1], line), _rat(toks[2], line))
    chi = {}
    for _ in range(m):
        line, toks = r.next("edge line 'u v c'")
        _arity(toks, 3, line, "colored edge")
        u, v, c = (_int(t, line, 0) for t in toks)
        if u == v:
            raise MalformedInput("loops are not allowed", line, toks[1][1])
        for tok, x in ((toks[0], u), (toks[1], v)):
            if x not in gamma:
                raise MalformedInput(f"edge endpoint {x} has no position", line, tok[1])
        if not 1 <= c <= layers:
            raise MalformedInput(f"color {c} outside 1..{layers}", line, toks[2][1])
        if edge(u, v) in chi:
            raise MalformedInput(f"duplicate edge {u} {v}", line, toks[0][1])
        chi[edge(u, v)] = c
    try:
        return LayeredDrawing(Graph(gamma, chi), gamma, chi, layers)
    except GeoThickError as exc:
        raise MalformedInput(str(exc), line) from exc


def _write_drawing(d: LayeredDrawing) -> list[str]:
    out = [f"layers {d.layers}", f"{d.graph.n} {d.graph.m}"]
    for v in d.graph.sorted_vertices():
        p = d.gamma[v]
        out.append(f"{v} {format_rational(p.x)} {format_rational(p.y)}")
    out += [f"{u} {v} {d.chi[(u, v)]}" for u, v in d.graph.sorted_edges()]
    return out


def parse_drawing(text: str) -> LayeredDrawing:
    r = _Reader(text)
    d = _read_drawing(r)
    r.expect_end()
    return d


def serialize_drawing(d: LayeredDrawing) -> str:
    return "\n".join(_write_drawing(d)) + "\n"


def parse_positions(text: str) -> dict[int, Point]:
    """Bare position list: one 'v x y' line per vertex."""
    r = _Reader(text)
    gamma: dict[int, Point] = {}
    while not r.at_end():
        line, toks = r.next("position")
        _arity(toks, 3, line, "position")
        v = _int(toks[0], line, 0)
        if v in gamma:
            raise MalformedInput(f"vertex {v} placed twice", line, toks[0][1])
        gamma[v] = Point(_rat(toks[1], line), _rat(toks[2], line))
    return gamma


def serialize_positions(gamma: dict[int, Point]) -> str:
    return "".join(f"{v} {format_rational(gamma[v].x)} {format_rational(gamma[v].y)}\n" for v in sorted(gamma))


# --- traces ----------------------------------------------------------------------------


def _kv(tok: Token, key: str, line: int) -> int:
    text, col = tok
    if not text.startswith(key + "="):
        raise MalformedInput(f"expected {key}=<int>", line, col)
    return _int((text[len(key) + 1 :], col + len(key) + 1), line, 0)


def _ids(tok: Token, line: int) -> tuple[int, ...]:
    text, col = tok
    if text == "-":
        return ()
    out = []
    for part in text.split(","):
        out.append(_int((part, col), line, 0))
    return tuple(out)


def serialize_vc_trace(t: VcTrace) -> str:
    out = [f"vc-trace k'={t.k_prime} threshold={t.threshold}"]
    out.append("cover " + (",".join(map(str, t.cover)) or "-"))
    out += [f"del {x} class {','.join(map(str, reps))}" for x, reps in t.deletions]
    return "\n".join(out) + "\n"


def parse_vc_trace(text: str) -> VcTrace:
    r = _Reader(text)
    line, toks = r.next("trace header")
    if toks[0][0] != "vc-trace":
        raise MalformedInput("expected 'vc-trace'", line, toks[0][1])
    _arity(toks, 3, line, "trace header")
    kp, thr = _kv(toks[1], "k'", line), _kv(toks[2], "threshold", line)
    toks = _keyword(r, "cover")
    line = r.rows[r.pos - 1][0]
    _arity(toks, 2, line, "cover line")
    trace = VcTrace(_ids(toks[1], line), kp, thr)
    while not r.at_end():
        line, toks = r.next("deletion")
        if toks[0][0] != "del" or len(toks) != 4 or toks[2][0] != "class":
            raise MalformedInput("expected 'del <id> class <ids>'", line, toks[0][1])
        trace.deletions.append((_int(toks[1], line, 0), _ids(toks[3], line)))
    return trace


def serialize_fen_trace(t: FenTrace) -> str:
    out = [f"fen-trace k={t.k}"]
    out += [f"prune {v} {'-' if nb is None else nb}" for v, nb in t.pruned]
    out += [f"feedback {u} {v}" for u, v in t.feedback]
    out.append("branch " + (",".join(map(str, t.branch)) or "-"))
    out += ["path " + " ".join(map(str, p)) for p in t.paths]
    return "\n".join(out) + "\n"


def parse_fen_trace(text: str) -> FenTrace:
    r = _Reader(text)
    line, toks = r.next("trace header")
    if toks[0][0] != "fen-trace":
        raise MalformedInput("expected 'fen-trace'", line, toks[0][1])
    _arity(toks, 2, line, "trace header")
    trace = FenTrace(_kv(toks[1], "k", line))
    while not r.at_end():
        line, toks = r.next("trace line")
        kind = toks[0][0]
        if kind == "prune":
            _arity(toks, 3, line, "prune line")
            nb = None if toks[2][0] == "-" else _int(toks[2], line, 0)
            trace.pruned.append((_int(toks[1], line, 0), nb))
        elif kind == "feedback":
            _arity(toks, 3, line, "feedback line")
            trace.feedback.append(edge(_int(toks[1], line, 0), _int(toks[2], line, 0)))
        elif kind == "branch":
            _arity(toks, 2, line, "branch line")
            trace.branch = list(_ids(toks[1], line))
        elif kind == "path":
            if len(toks) < 3:
                raise MalformedInput("a path needs at least two vertices", line, toks[0][1])
            trace.paths.append(tuple(_int(t, line, 0) for t in toks[1:]))
        else:
            raise MalformedInput(f"unknown trace line {kind!r}", line, toks[0][1])
    return trace


def parse_trace(text: str) -> VcTrace | FenTrace:
    head = _Reader(text).peek()
    if head is None:
        raise MalformedInput("empty trace", 1)
    kind = head[1][0][0]
    if kind == "vc-trace":
        return parse_vc_trace(text)
    if kind == "fen-trace":
        return parse_fen_trace(text)
    raise MalformedInput(f"unknown trace kind {kind!r}", head[0], 1)


# --- extension instances and reduction metadata ----------------------------------------------


def _read_instance(r: _Reader) -> GteInstance:
    _keyword(r, "graph")
    g = _read_graph(r)
    line = r.rows[r.pos][0] if not r.at_end() else r.last_line
    _keyword(r, "drawing")
    d = _read_drawing(r)
    try:
        return GteInstance(g, d)
    except ValueError as exc:
        raise MalformedInput(str(exc), line) from exc


def parse_instance(text: str) -> GteInstance:
    r = _Reader(text)
    inst = _read_instance(r)
    if not r.at_end() and r.peek()[1][0][0] == "meta":
        r.pos = len(r.rows)  # metadata is ignored by the plain instance reader
    r.expect_end()
    return inst


def serialize_instance(inst: GteInstance) -> str:
    return "\n".join(["graph", *_write_graph(inst.graph), "drawing", *_write_drawing(inst.predrawn)]) + "\n"


def serialize_hardness(hi) -> str:
    out = [serialize_instance(hi.instance).rstrip("\n"), "meta"]
    out += [f"source {hi.source}", f"expected {hi.expected}", f"certainty {hi.certainty}"]
    for v in sorted(hi.witness_positions):
        p = hi.witness_positions[v]
        out.append(f"witness-pos {v} {format_rational(p.x)} {format_rational(p.y)}")
    for (u, v) in sorted(hi.witness_colors):
        out.append(f"witness-color {u} {v} {hi.witness_colors[(u, v)]}")
    return "\n".join(out) + "\n"


def parse_hardness(text: str):
    """Instance plus metadata; returns a HardnessInstance without gadget geometry."""
    from .reductions.instance import HardnessInstance

    r = _Reader(text)
    inst = _read_instance(r)
    _keyword(r, "meta")
    fields = {"source": None, "expected": None, "certainty": None}
    pos, cols = {}, {}
    while not r.at_end():
        line, toks = r.next("metadata line")
        key = toks[0][0]
        if key in fields:
            _arity(toks, 2, line, key)
            fields[key] = toks[1][0]
        elif key == "witness-pos":
            _arity(toks, 4, line, key)
            pos[_int(toks[1], line, 0)] = Point(_rat(toks[2], line), _rat(toks[3], line))
        elif key == "witness-color":
            _arity(toks, 4, line, key)
            cols[edge(_int(toks[1], line, 0), _int(toks[2], line, 0))] = _int(toks[3], line, 1)
        else:
            raise MalformedInput(f"unknown metadata key {key!r}", line, toks[0][1])
    missing = [k for k, v in fields.items() if v is None]
    if missing:
        raise MalformedInput(f"metadata lacks {', '.join(missing)}", r.last_line)
    return HardnessInstance(inst, fields["source"], fields["expected"], fields["certainty"], pos, cols)


def parse_instance_or_graph(text: str) -> GteInstance | Graph:
    head = _Reader(text).peek()
    if head is not None and head[1][0][0] == "graph":
        return parse_instance(text)
    return parse_graph(text)


# --- reduction inputs ---------------------------------------------------------------------


def parse_mcc(text: str) -> tuple[Graph, list[list[int]], int]:
    r = _Reader(text)
    toks = _keyword(r, "k")
    line = r.rows[r.pos - 1][0]
    _arity(toks, 2, line, "k line")
    k = _int(toks[1], line, 1)
    parts: list[list[int]] = []
    edges = []
    seen: dict[int, int] = {}
    while not r.at_end():
        line, toks = r.next("part or edge line")
        kind = toks[0][0]
        if kind == "part":
            if len(toks) < 2:
                raise MalformedInput("a part needs at least one vertex", line, toks[0][1])
            part = []
            for t in toks[1:]:
                v = _int(t, line, 0)
                if v in seen:
                    raise MalformedInput(f"vertex {v} listed in two parts", line, t[1])
                seen[v] = len(parts)
                part.append(v)
            parts.append(part)
        elif kind == "edge":
            _arity(toks, 3, line, "edge line")
            u, v = _int(toks[1], line, 0), _int(toks[2], line, 0)
            for t, x in ((toks[1], u), (toks[2], v)):
                if x not in seen:
                    raise MalformedInput(f"vertex {x} is in no part", line, t[1])
            if u == v:
                raise MalformedInput("loops are not allowed", line, toks[2][1])
            edges.append(edge(u, v))
        else:
            raise MalformedInput(f"unknown line {kind!r}", line, toks[0][1])
    if len(parts) != k:
        raise MalformedInput(f"expected {k} parts, found {len(parts)}", r.last_line)
    return Graph(seen, edges), parts, k


def serialize_mcc(X: Graph, parts: list[list[int]], k: int) -> str:
    out = [f"k {k}"] + ["part " + " ".join(map(str, sorted(p))) for p in parts]
    out += [f"edge {u} {v}" for u, v in X.sorted_edges()]
    return "\n".join(out) + "\n"


def parse_dimacs(text: str):
    """DIMACS CNF; clause-shape checks are left to the generator."""
    from .reductions.sat3 import Cnf

    n = m = None
    clauses: list[tuple[int, ...]] = []
    cur: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("c") or s.startswith("%"):
            continue
        if s.startswith("p"):
            parts = s.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise MalformedInput("expected 'p cnf <vars> <clauses>'", lineno, 1)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise MalformedInput("non-integer problem line", lineno, 1) from None
            continue
        if n is None:
            raise MalformedInput("clause before the problem line", lineno, 1)
        start = 0
        for tok in raw.split():
            idx = raw.index(tok, start)
            start = idx + len(tok)
            try:
                lit = int(tok)
            except ValueError:
                raise MalformedInput(f"bad literal {tok!r}", lineno, idx + 1) from None
            if lit == 0:
                clauses.append(tuple(cur))
                cur = []
            else:
                cur.append(lit)
    if n is None:
        raise MalformedInput("missing problem line", 1)
    if cur:
        clauses.append(tuple(cur))
    if m is not None and len(clauses) != m:
        raise MalformedInput(f"problem line announces {m} clauses, found {len(clauses)}", len(text.splitlines()))
    return Cnf(n, tuple(clauses))


def serialize_dimacs(cnf) -> str:
    out = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"] + [" ".join(map(str, cl)) + " 0" for cl in cnf.clauses]
    return "\n".join(out) + "\n"


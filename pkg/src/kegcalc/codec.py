"""Text formats: KEG v1 documents, Gauss codes and plumbing-tree s-expressions."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .keg import Edge, End, KnotEulerianGraph, Vertex, orient


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class UndeclaredVertex(ParseError):
    pass


class SlotConflict(ParseError):
    pass


# --- KEG v1 ---------------------------------------------------------------

_ID = r"[A-Za-z0-9_]+"
_VERTEX_RE = re.compile(rf"^vertex\s+({_ID})\s+(real|empty)((?:\s+\S+)*)$")
_REF = rf"({_ID})\.(A|B|none)(?:\.([12]))?"
_EDGE_RE = re.compile(rf"^edge\s+{_REF}\s*->\s*{_REF}$")


def parse_keg(text: str) -> KnotEulerianGraph:
    """Read a KEG v1 document.

    Edges whose arrows disagree with the strand pairing are reversed so each
    strand runs one way; the first edge listed on a strand sets its direction.

    End indices may be omitted; a real vertex then gets the lowest unused end
    on the named side, and an empty vertex uses end 1 for its incoming edge
    and end 2 for its outgoing edge.
    """
    vertices: dict[str, Vertex] = {}
    raw_edges: list[tuple[int, tuple, tuple]] = []
    header = False
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if not header:
            if line.split() != ["keg", "1"]:
                raise ParseError("expected header 'keg 1'", lineno)
            header = True
            continue
        m = _VERTEX_RE.match(line)
        if m:
            vid, kind, rest = m.group(1), m.group(2), m.group(3).split()
            if vid in vertices:
                raise ParseError(f"vertex {vid} declared twice", lineno)
            vertices[vid] = _parse_vertex(vid, kind, rest, lineno)
            continue
        m = _EDGE_RE.match(line)
        if m:
            tail = (m.group(1), m.group(2), m.group(3))
            head = (m.group(4), m.group(5), m.group(6))
            raw_edges.append((lineno, tail, head))
            continue
        raise ParseError(f"cannot parse {line!r}", lineno)
    if not header:
        raise ParseError("empty document")

    used: dict[End, int] = {}
    edges = []
    for lineno, tail, head in raw_edges:
        ends = []
        for (vid, side, end), incoming in ((tail, False), (head, True)):
            if vid not in vertices:
                raise UndeclaredVertex(f"undeclared vertex {vid}", lineno)
            v = vertices[vid]
            if v.real and side == "none":
                raise ParseError(f"real vertex {vid} needs side A or B", lineno)
            if not v.real and side != "none":
                raise ParseError(f"empty vertex {vid} has side none", lineno)
            s = None if side == "none" else side
            if end is None:
                if v.real:
                    free = [p for p in (1, 2) if (vid, (s, p)) not in used]
                    end = free[0] if free else 1
                else:
                    end = 1 if incoming else 2
            slot = (vid, (s, int(end)))
            if slot in used:
                raise SlotConflict(f"slot {vid}.{side}.{end} already used on line "
                                   f"{used[slot]}", lineno)
            used[slot] = lineno
            ends.append(slot)
        edges.append(Edge(ends[0], ends[1]))
    g = KnotEulerianGraph(tuple(vertices.values()), tuple(edges))
    # edge arrows that fight the strand pairing are turned round; the
    # strand itself is fixed by the slots alone
    return orient(g)


def _parse_vertex(vid: str, kind: str, attrs: list[str], lineno: int) -> Vertex:
    if kind == "empty":
        if attrs:
            raise ParseError("empty vertex takes no attributes", lineno)
        return Vertex.empty(vid)
    opts = {}
    for a in attrs:
        k, _, val = a.partition("=")
        opts[k] = val
    parity = opts.pop("parity", None)
    if parity not in ("odd", "even"):
        raise ParseError(f"real vertex {vid} needs parity=odd|even", lineno)
    crossings = None
    if "crossings" in opts:
        try:
            crossings = int(opts.pop("crossings"))
        except ValueError:
            raise ParseError("crossings must be an integer", lineno) from None
    if opts:
        raise ParseError(f"unknown attribute {next(iter(opts))}", lineno)
    return Vertex(vid, True, parity, crossings)


def _ref(end: End) -> str:
    vid, (side, p) = end
    return f"{vid}.{side or 'none'}.{p}"


def emit_keg(g: KnotEulerianGraph) -> str:
    lines = ["keg 1"]
    for v in g.vertices:
        if v.real:
            extra = f" crossings={v.crossings}" if v.crossings is not None else ""
            lines.append(f"vertex {v.id} real parity={v.parity}{extra}")
        else:
            lines.append(f"vertex {v.id} empty")
    for e in g.edges:
        lines.append(f"edge {_ref(e.tail)} -> {_ref(e.head)}")
    return "\n".join(lines) + "\n"


# --- Gauss codes ----------------------------------------------------------

_GAUSS_ENTRY = re.compile(r"^([OU])?(\d+)([+-])?$")


@dataclass(frozen=True)
class GaussEntry:
    label: int
    over: Optional[bool] = None
    sign: Optional[int] = None  # writhe sign


def parse_gauss_entries(text: str) -> list[GaussEntry]:
    text = text.strip()
    if not text:
        return []
    out = []
    for raw in text.split(","):
        raw = raw.strip()
        m = _GAUSS_ENTRY.match(raw)
        if not m:
            raise ParseError(f"bad Gauss entry {raw!r}")
        over = None if m.group(1) is None else m.group(1) == "O"
        sign = None if m.group(3) is None else (1 if m.group(3) == "+" else -1)
        out.append(GaussEntry(int(m.group(2)), over, sign))
    flagged = {e.over is not None for e in out}
    if len(flagged) > 1:
        raise ParseError("mix of flagged and bare Gauss entries")
    return out


def emit_gauss_entries(entries: list[GaussEntry]) -> str:
    parts = []
    for e in entries:
        s = ""
        if e.over is not None:
            s += "O" if e.over else "U"
        s += str(e.label)
        if e.sign is not None:
            s += "+" if e.sign > 0 else "-"
        parts.append(s)
    return ",".join(parts)


# --- plumbing trees -------------------------------------------------------


class ZeroWeight(ParseError):
    pass


@dataclass(frozen=True)
class PlumbTree:
    weight: int
    children: tuple["PlumbTree", ...] = ()

    def __post_init__(self):
        if self.weight == 0:
            raise ZeroWeight("tree weights must be nonzero")

    def nodes(self) -> list["PlumbTree"]:
        out = [self]
        for c in self.children:
            out += c.nodes()
        return out

    def __len__(self) -> int:
        return len(self.nodes())


def parse_tree(text: str) -> PlumbTree:
    tokens = re.findall(r"\(|\)|[^\s()]+", text)
    pos = 0

    def node() -> PlumbTree:
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != "(":
            raise ParseError("expected '('")
        pos += 1
        if pos >= len(tokens):
            raise ParseError("unexpected end of tree")
        try:
            w = int(tokens[pos])
        except ValueError:
            raise ParseError(f"expected integer weight, got {tokens[pos]!r}") from None
        if w == 0:
            raise ZeroWeight("tree weights must be nonzero")
        pos += 1
        kids = []
        while pos < len(tokens) and tokens[pos] == "(":
            kids.append(node())
        if pos >= len(tokens) or tokens[pos] != ")":
            raise ParseError("expected ')'")
        pos += 1
        return PlumbTree(w, tuple(kids))

    t = node()
    if pos != len(tokens):
        raise ParseError("trailing input after tree")
    return t


def emit_tree(t: PlumbTree) -> str:
    inner = " ".join([str(t.weight)] + [emit_tree(c) for c in t.children])
    return f"({inner})"

"""Text formats: finite graphs, builtin references, closed sets, descriptors, pants complexes."""

from __future__ import annotations

from dataclasses import dataclass

from .closedsets import ClosedSetError, ClosedSetSpec, parse_closed_set
from .descriptors import DescriptorError, StandardGraphDescriptor, parse_descriptor
from .graph import FiniteMultigraph, GraphError, to_text
from .surfaces import PantsComplex, PantsError, parse_pants


class SpecError(ValueError):
    def __init__(self, line: int, col: int, msg: str):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line, self.col, self.msg = line, col, msg


@dataclass(frozen=True)
class BuiltinRef:
    name: str

    def to_text(self) -> str:
        return f"builtin {self.name}\n"


SpecFile = FiniteMultigraph | BuiltinRef | ClosedSetSpec | StandardGraphDescriptor | PantsComplex


def _ident(tok: str):
    """Vertex and edge ids: decimal integers become ints, everything else stays a string."""
    return int(tok) if tok.isdigit() or (tok.startswith("-") and tok[1:].isdigit()) else tok


def _lines(text: str):
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if line.strip():
            yield ln, raw, line.split()


def _col(raw: str, tok: str) -> int:
    i = raw.find(tok)
    return i + 1 if i >= 0 else 1


def parse_graph(text: str) -> FiniteMultigraph:
    header = None
    verts, edges = [], {}
    for ln, raw, w in _lines(text):
        if header is None:
            if w[0] != "graph" or len(w) < 2:
                raise SpecError(ln, _col(raw, w[0]), "expected 'graph <name> root=<v>'")
            name, root = w[1], None
            for kv in w[2:]:
                key, sep, val = kv.partition("=")
                if key != "root" or not sep or not val:
                    raise SpecError(ln, _col(raw, kv), f"unknown or malformed key {kv!r}")
                if root is not None:
                    raise SpecError(ln, _col(raw, kv), "duplicate root=")
                root = _ident(val)
            header = (name, root)
            continue
        if w[0] == "v":
            if len(w) != 2:
                raise SpecError(ln, _col(raw, w[0]), "expected 'v <id>'")
            v = _ident(w[1])
            if v in verts:
                raise SpecError(ln, _col(raw, w[1]), f"duplicate vertex {w[1]}")
            verts.append(v)
        elif w[0] == "e":
            if len(w) != 4:
                raise SpecError(ln, _col(raw, w[0]), "expected 'e <id> <u> <v>'")
            e = _ident(w[1])
            if e in edges:
                raise SpecError(ln, _col(raw, w[1]), f"duplicate edge {w[1]}")
            edges[e] = (_ident(w[2]), _ident(w[3]))
        else:
            raise SpecError(ln, _col(raw, w[0]), f"unknown keyword {w[0]!r}")
    if header is None:
        raise SpecError(1, 1, "empty graph file")
    name, root = header
    if root is None and verts:
        root = verts[0]
    try:
        return FiniteMultigraph(verts, edges, root=root, name=name)
    except GraphError as exc:
        raise SpecError(1, 1, str(exc)) from None


def parse_spec(text: str) -> SpecFile:
    """Dispatch on the first keyword; errors carry a line and column."""
    first = next(_lines(text), None)
    if first is None:
        raise SpecError(1, 1, "empty input")
    ln, raw, w = first
    head = w[0]
    if head == "graph":
        return parse_graph(text)
    rest = [x for x in _lines(text)][1:]
    if head == "builtin":
        if len(w) != 2 or rest:
            raise SpecError(ln, _col(raw, head), "expected a single line 'builtin <name>'")
        return BuiltinRef(w[1])
    if head == "closedset":
        if rest:
            raise SpecError(rest[0][0], 1, "a closed-set spec is a single line")
        try:
            return parse_closed_set(raw.split("#", 1)[0])
        except ClosedSetError as exc:
            raise SpecError(ln, _col(raw, head), str(exc)) from None
    if head == "descriptor" or "=" in head:
        if rest:
            raise SpecError(rest[0][0], 1, "a descriptor is a single line")
        try:
            return parse_descriptor(raw.split("#", 1)[0])
        except DescriptorError as exc:
            raise SpecError(ln, _col(raw, head), str(exc)) from None
    if head in ("pants", "glue", "base"):
        try:
            return parse_pants(text)
        except PantsError as exc:
            msg = str(exc)
            if msg.startswith("line "):
                loc, _, m = msg.partition(": ")
                parts = loc.replace(",", "").split()
                raise SpecError(int(parts[1]), int(parts[3]), m) from None
            raise SpecError(ln, 1, msg) from None
    raise SpecError(ln, _col(raw, head), f"unknown spec kind {head!r}")


def format_spec(spec: SpecFile) -> str:
    """Canonical text; ``parse_spec(format_spec(s))`` reproduces ``s``."""
    if isinstance(spec, FiniteMultigraph):
        return to_text(spec)
    if isinstance(spec, (ClosedSetSpec, StandardGraphDescriptor)):
        return spec.to_text() + "\n"
    return spec.to_text()

"""Labeled directed graphs, graph algebra and embedding search.

Vertices of engine-produced graphs are the naturals ``0..n-1``; the graph
operations themselves accept any hashable, orderable vertex (model graphs
use string names).
"""

from __future__ import annotations

import enum
import functools
import json
import re
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator, Mapping, NamedTuple, Optional, Union

from .errors import GraphSatError, MalformedMapError

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
RESERVED = frozenset({"id", "top", "bot"})


class LabelKind(enum.IntEnum):
    ATOM = 0
    ID = 1
    TOP = 2
    BOT = 3
    CONST = 4
    GOAL = 5


@dataclass(frozen=True, order=True)
class Label:
    kind: LabelKind
    name: str = ""
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((int(self.kind), self.name)))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        if self.kind is LabelKind.ATOM:
            return self.name
        if self.kind is LabelKind.CONST:
            return f"'{self.name}'"
        return _BUILTIN_TEXT[self.kind]

    def __repr__(self) -> str:
        return f"Label({str(self)!r})"

    @property
    def is_builtin(self) -> bool:
        return self.kind in (LabelKind.ID, LabelKind.TOP, LabelKind.BOT)

    @classmethod
    def parse(cls, text: str) -> "Label":
        """Inverse of ``str``: ``id``, ``top``, ``bot``, ``$goal``, ``'Name'`` or an identifier."""
        for kind, word in _BUILTIN_TEXT.items():
            if text == word:
                return _BUILTINS[kind]
        if len(text) >= 3 and text[0] == "'" and text[-1] == "'":
            return const(text[1:-1])
        return atom(text)


_BUILTIN_TEXT = {LabelKind.ID: "id", LabelKind.TOP: "top", LabelKind.BOT: "bot", LabelKind.GOAL: "$goal"}

ID = Label(LabelKind.ID)
TOP = Label(LabelKind.TOP)
BOT = Label(LabelKind.BOT)
GOAL = Label(LabelKind.GOAL)
_BUILTINS = {LabelKind.ID: ID, LabelKind.TOP: TOP, LabelKind.BOT: BOT, LabelKind.GOAL: GOAL}


def atom(name: str) -> Label:
    if not IDENT_RE.match(name) or name in RESERVED:
        raise GraphSatError(f"invalid relation symbol {name!r}")
    return Label(LabelKind.ATOM, name)


def const(name: str) -> Label:
    if not name or "'" in name:
        raise GraphSatError(f"invalid constant name {name!r}")
    return Label(LabelKind.CONST, name)


class Edge(NamedTuple):
    label: Label
    src: Hashable
    dst: Hashable

    def __str__(self) -> str:
        return f"({self.label},{self.src},{self.dst})"


VertexMap = dict
_EMPTY: frozenset = frozenset()


class Graph:
    """Immutable graph: a vertex set and a set of ``Edge`` triples.

    Adjacency indices are built on first use so membership and neighbour
    lookups are O(1).
    """

    __slots__ = ("vertices", "edges", "_out", "_in")

    def __init__(self, vertices: Iterable = (), edges: Iterable = ()):
        self.vertices = frozenset(vertices)
        self.edges = frozenset(e if isinstance(e, Edge) else Edge(*e) for e in edges)
        for e in self.edges:
            if e.src not in self.vertices or e.dst not in self.vertices:
                raise GraphSatError(f"edge {e} has an endpoint outside the vertex set")
        self._out = None
        self._in = None

    @classmethod
    def from_edges(cls, edges: Iterable, vertices: Iterable = ()) -> "Graph":
        edges = [e if isinstance(e, Edge) else Edge(*e) for e in edges]
        vs = set(vertices)
        for e in edges:
            vs.add(e.src)
            vs.add(e.dst)
        return cls(vs, edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        vs = ",".join(map(str, sorted(self.vertices)))
        es = ",".join(map(str, sorted(self.edges)))
        return f"Graph({{{vs}}}, {{{es}}})"

    def __len__(self) -> int:
        return len(self.vertices)

    def _index(self) -> None:
        out: dict = {}
        inn: dict = {}
        for lab, s, d in self.edges:
            out.setdefault((lab, s), set()).add(d)
            inn.setdefault((lab, d), set()).add(s)
        self._out, self._in = out, inn

    def succ(self, label: Label, v) -> frozenset:
        if self._out is None:
            self._index()
        return self._out.get((label, v), _EMPTY)

    def pred(self, label: Label, v) -> frozenset:
        if self._in is None:
            self._index()
        return self._in.get((label, v), _EMPTY)

    def has_edge(self, label: Label, src, dst) -> bool:
        return Edge(label, src, dst) in self.edges

    def labels(self) -> set:
        return {e.label for e in self.edges}

    def edges_with(self, label: Label) -> list:
        return sorted(e for e in self.edges if e.label == label)

    def without_label(self, label: Label) -> "Graph":
        return Graph(self.vertices, (e for e in self.edges if e.label != label))

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    # JSON text format: {"vertices": [...], "edges": [[label, src, dst], ...]}
    def to_json_obj(self) -> dict:
        return {
            "vertices": sorted(self.vertices),
            "edges": [[str(e.label), e.src, e.dst] for e in sorted(self.edges)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "Graph":
        try:
            vertices = obj.get("vertices", [])
            edges = [Edge(Label.parse(lab), s, d) for lab, s, d in obj.get("edges", [])]
        except (TypeError, ValueError, AttributeError) as exc:
            raise GraphSatError(f"malformed graph JSON: {exc}") from None
        return cls(vertices, edges)

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphSatError(f"malformed graph JSON: {exc}") from None
        return cls.from_json_obj(obj)


EMPTY = Graph()


class GraphBuilder:
    """Mutable graph with the same lookup interface as `Graph`, used by the engine."""

    def __init__(self, graph: Graph = EMPTY):
        self.vertices = set(graph.vertices)
        self.edges = set(graph.edges)
        self._out: dict = {}
        self._in: dict = {}
        for e in graph.edges:
            self._out.setdefault((e.label, e.src), set()).add(e.dst)
            self._in.setdefault((e.label, e.dst), set()).add(e.src)

    def add_vertex(self, v) -> None:
        self.vertices.add(v)

    def add_edge(self, edge: Edge) -> bool:
        if edge in self.edges:
            return False
        self.edges.add(edge)
        self._out.setdefault((edge.label, edge.src), set()).add(edge.dst)
        self._in.setdefault((edge.label, edge.dst), set()).add(edge.src)
        return True

    def succ(self, label: Label, v):
        return self._out.get((label, v), _EMPTY)

    def pred(self, label: Label, v):
        return self._in.get((label, v), _EMPTY)

    def has_edge(self, label: Label, src, dst) -> bool:
        s = self._out.get((label, src))
        return s is not None and dst in s

    def freeze(self) -> Graph:
        return Graph(self.vertices, self.edges)


def union(g1: Graph, g2: Graph) -> Graph:
    return Graph(g1.vertices | g2.vertices, g1.edges | g2.edges)


def relabel(f: Union[Mapping, Callable], g: Graph) -> Graph:
    """Apply a vertex function to every vertex and edge endpoint of ``g``."""
    if isinstance(f, Mapping):
        missing = [v for v in g.vertices if v not in f]
        if missing:
            raise MalformedMapError(f"vertex map is not total: no image for {sorted(missing)}")
        fn = f.__getitem__
    else:
        fn = f
    return Graph(
        (fn(v) for v in g.vertices),
        (Edge(lab, fn(s), fn(d)) for lab, s, d in g.edges),
    )


def is_subgraph(g1: Graph, g2: Graph) -> bool:
    return g1.vertices <= g2.vertices and g1.edges <= g2.edges


def has_conflict(g) -> Optional[Edge]:
    """First ⊥-labelled edge in sorted order, or None."""
    bots = [e for e in g.edges if e.label == BOT]
    return min(bots) if bots else None


# ---------------------------------------------------------------------------
# Embedding search
#
# A plan fixes the order in which the unpinned pattern vertices are bound.
# Each binding step intersects the host adjacency sets induced by pattern
# edges to already-bound vertices; pattern edges between pinned vertices are
# checked up front.


class _Step(NamedTuple):
    vertex: Hashable
    outs: tuple  # (label, u): pattern edge u -> vertex
    ins: tuple  # (label, u): pattern edge vertex -> u
    loops: tuple  # labels of pattern self-loops on vertex


class Plan(NamedTuple):
    checks: tuple  # pattern edges with both endpoints pinned
    steps: tuple


@functools.lru_cache(maxsize=4096)
def compile_plan(pattern: Graph, pinned: frozenset = _EMPTY) -> Plan:
    rank = {v: i for i, v in enumerate(sorted(pattern.vertices))}
    placed = set(pinned)
    checks = tuple(sorted(e for e in pattern.edges if e.src in placed and e.dst in placed))
    remaining = [v for v in sorted(pattern.vertices) if v not in placed]
    steps = []
    while remaining:
        def links(v):
            # top edges hold between every pair of vertices, so they barely narrow the candidates
            touching = [e for e in pattern.edges
                        if (e.src == v and e.dst in placed) or (e.dst == v and e.src in placed)]
            return sum(e.label != TOP for e in touching), len(touching)
        v = max(remaining, key=lambda u: (links(u), -rank[u]))
        remaining.remove(v)
        outs, ins, loops = [], [], []
        for lab, s, d in sorted(pattern.edges):
            if s == v and d == v:
                loops.append(lab)
            elif d == v and s in placed:
                outs.append((lab, s))
            elif s == v and d in placed:
                ins.append((lab, d))
        placed.add(v)
        steps.append(_Step(v, tuple(outs), tuple(ins), tuple(loops)))
    return Plan(checks, tuple(steps))


def search(plan: Plan, host, assign: dict, exclude: Optional[tuple] = None,
           bound=None) -> Iterator[dict]:
    """Yield every completion of ``assign`` (mutated in place; copy what you keep).

    ``exclude = (label, u, outgoing)`` drops final-step candidates c that
    already have the edge u->c (or c->u when not outgoing) in the host.
    With ``bound`` set, unpinned vertices only map to host vertices <= bound.
    """
    for lab, s, d in plan.checks:
        if not host.has_edge(lab, assign[s], assign[d]):
            return
    steps = plan.steps
    last = len(steps)

    def rec(i):
        if i == last:
            yield assign
            return
        v, outs, ins, loops = steps[i]
        sets = [host.succ(lab, assign[u]) for lab, u in outs]
        sets += [host.pred(lab, assign[u]) for lab, u in ins]
        if sets:
            if len(sets) == 1:
                cands = sets[0]
            else:
                sets.sort(key=len)
                rest = sets[1:]
                cands = [c for c in sets[0] if all(c in s for s in rest)]
        else:
            cands = host.vertices
        if bound is not None:
            cands = [c for c in cands if c <= bound]
        if exclude is not None and i == last - 1:
            lab, u, outgoing = exclude
            present = host.succ(lab, assign[u]) if outgoing else host.pred(lab, assign[u])
            if present:
                cands = [c for c in cands if c not in present]
        for c in cands:
            if loops and not all(host.has_edge(lab, c, c) for lab in loops):
                continue
            assign[v] = c
            yield from rec(i + 1)
        assign.pop(v, None)

    yield from rec(0)


def _map_key(pattern_vertices: list, m: Mapping) -> tuple:
    return tuple(m[v] for v in pattern_vertices)


def enumerate_embeddings(pattern: Graph, host: Graph) -> list:
    """All total vertex maps f with relabel(f, pattern) a subgraph of host.

    Maps need not be injective. The result is sorted lexicographically by
    the images of the pattern vertices taken in ascending order.
    """
    order = sorted(pattern.vertices)
    found = sorted(_map_key(order, m) for m in search(compile_plan(pattern), host, {}))
    return [dict(zip(order, key)) for key in found]


def extend_to_rhs(rule_lhs: Graph, rule_rhs: Graph, f: Mapping, host) -> Optional[dict]:
    """The lexicographically first embedding of ``rule_rhs`` agreeing with ``f`` on ``rule_lhs``."""
    plan = compile_plan(rule_rhs, frozenset(rule_lhs.vertices))
    order = sorted(rule_rhs.vertices)
    found = [_map_key(order, m) for m in search(plan, host, dict(f))]
    if not found:
        return None
    return dict(zip(order, min(found)))


def has_extension(rule_lhs: Graph, rule_rhs: Graph, f: Mapping, host) -> bool:
    plan = compile_plan(rule_rhs, frozenset(rule_lhs.vertices))
    return next(search(plan, host, dict(f)), None) is not None

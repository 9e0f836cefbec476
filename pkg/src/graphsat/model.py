"""Standard models from conflict-free consequence graphs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ModelError
from .graph import BOT, ID, TOP, Edge, Graph, Label, LabelKind, has_conflict, relabel


def quotient_by_identity(g: Graph):
    """Collapse each ``id``-class onto its least vertex.

    Returns ``(relabel(f, g), f)``.  Raises ModelError if ``id`` is not an
    equivalence relation on ``g``.
    """
    ident = {(s, d) for lab, s, d in g.edges if lab == ID}
    for v in sorted(g.vertices):
        if (v, v) not in ident:
            raise ModelError(f"id is not reflexive: missing ({v},{v})")
    for x, y in sorted(ident):
        if (y, x) not in ident:
            raise ModelError(f"id is not symmetric: ({x},{y}) without ({y},{x})")
    succ: dict = {}
    for x, y in ident:
        succ.setdefault(x, set()).add(y)
    for x, y in sorted(ident):
        for z in sorted(succ[y]):
            if (x, z) not in ident:
                raise ModelError(f"id is not transitive: ({x},{y}),({y},{z}) without ({x},{z})")
    f = {v: min(succ[v]) for v in g.vertices}
    return relabel(f, g), f


@dataclass
class StandardModel:
    vertices: frozenset
    edges: frozenset
    class_map: dict = field(default_factory=dict)
    constants: tuple = ()

    @property
    def graph(self) -> Graph:
        return Graph(self.vertices, self.edges)

    def relation(self, label: Label) -> set:
        return {(s, d) for lab, s, d in self.edges if lab == label}

    def to_json_obj(self) -> dict:
        return {
            "vertices": sorted(self.vertices, key=_vertex_key),
            "edges": [[str(lab), s, d] for lab, s, d in sorted(self.edges, key=_edge_key)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), ensure_ascii=False)

    def to_dot(self, include_builtins: bool = False) -> str:
        lines = ["digraph model {"]
        for v in sorted(self.vertices, key=_vertex_key):
            shape = "box" if v.startswith("'") else "ellipse"
            lines.append(f"  {_dot_id(v)} [label={_dot_id(v)}, shape={shape}];")
        for lab, s, d in sorted(self.edges, key=_edge_key):
            if lab.is_builtin and not include_builtins:
                continue
            lines.append(f"  {_dot_id(s)} -> {_dot_id(d)} [label={_dot_id(str(lab))}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _vertex_key(v: str):
    return (0, v, 0) if v.startswith("'") else (1, "", int(v))


def _edge_key(e: Edge):
    return (e.label, _vertex_key(e.src), _vertex_key(e.dst))


def _dot_id(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def constant_vertex(name: str) -> str:
    return f"'{name}'"


def extract_standard_model(g: Graph, constants=()) -> StandardModel:
    """Quotient by ``id`` and name each constant's class after the constant.

    The remaining classes are numbered 0, 1, ... in order of their least
    original vertex.
    """
    witness = has_conflict(g)
    if witness is not None:
        raise ModelError(f"graph contains the conflict {witness}")
    q, f = quotient_by_identity(g)
    names: dict = {}
    for c in constants:
        lab = Label(LabelKind.CONST, c)
        reps = {s for l, s, d in q.edges if l == lab} | {d for l, s, d in q.edges if l == lab}
        if len(reps) != 1:
            raise ModelError(f"constant '{c}' denotes {len(reps)} classes, expected exactly one")
        (rep,) = reps
        if rep in names:
            raise ModelError(f"constants {names[rep]} and '{c}' share a class")
        names[rep] = constant_vertex(c)
    fresh = 0
    for rep in sorted(q.vertices):
        if rep not in names:
            names[rep] = str(fresh)
            fresh += 1
    model = relabel(names, q)
    return StandardModel(model.vertices, model.edges, {v: names[f[v]] for v in g.vertices}, tuple(constants))


def check_standard(m, constants=None) -> bool:
    """Nonempty, ``id`` diagonal, ``top`` full, ``bot`` empty, each constant a single self-pair."""
    if constants is None:
        constants = getattr(m, "constants", ())
    vertices = set(m.vertices)
    if not vertices:
        return False
    rel: dict = {}
    for lab, s, d in m.edges:
        rel.setdefault(lab, set()).add((s, d))
    if rel.get(ID, set()) != {(x, x) for x in vertices}:
        return False
    if rel.get(TOP, set()) != {(x, y) for x in vertices for y in vertices}:
        return False
    if rel.get(BOT):
        return False
    for c in constants:
        v = constant_vertex(c)
        if rel.get(Label(LabelKind.CONST, c), set()) != {(v, v)}:
            return False
    return True

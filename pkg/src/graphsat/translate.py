"""Translation of terms into graphs and of subsumptions into graph rules."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable

from .errors import ReservedLabelError
from .graph import BOT, GOAL, ID, TOP, Edge, Graph, Label, LabelKind, const, is_subgraph, relabel, union
from .terms import Compose, Converse, Intersect, Sub, Sym, Term, Theory, normalize_to_subsumptions, term_labels


@functools.lru_cache(maxsize=None)
def translate_term(e: Term) -> Graph:
    """Graph whose embeddings pinned at vertices 0 and 1 are exactly the pairs denoted by ``e``."""
    if isinstance(e, Sym):
        return Graph({0, 1}, {Edge(e.label, 0, 1)})
    if isinstance(e, Converse):
        return relabel(lambda v: 1 - v if v < 2 else v, translate_term(e.arg))
    if isinstance(e, Compose):
        g1 = translate_term(e.left)
        g2 = translate_term(e.right)
        k2 = len(g2)
        return union(relabel(lambda v: 0 if v == 0 else v + k2 - 1, g1),
                     relabel(lambda v: k2 if v == 0 else v, g2))
    if isinstance(e, Intersect):
        g1 = translate_term(e.left)
        g2 = translate_term(e.right)
        k1 = len(g1)
        return union(g1, relabel(lambda v: v if v < 2 else v + k1 - 2, g2))
    raise TypeError(f"not a term: {e!r}")


@dataclass(frozen=True)
class GraphRule:
    lhs: Graph
    rhs: Graph
    origin: str
    index: int = 0

    def __post_init__(self):
        assert is_subgraph(self.lhs, self.rhs), f"rule {self.origin!r}: lhs is not a subgraph of rhs"

    def to_json_obj(self) -> dict:
        return {"origin": self.origin, "lhs": self.lhs.to_json_obj(), "rhs": self.rhs.to_json_obj()}


@dataclass(frozen=True)
class RuleSet:
    rules: tuple
    labels: tuple
    constants: tuple = ()

    def __iter__(self):
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __getitem__(self, i) -> GraphRule:
        return self.rules[i]

    def to_json_obj(self) -> list:
        return [r.to_json_obj() for r in self.rules]


def translate_subsumption(lhs: Term, rhs: Term, origin: str = "", index: int = 0) -> GraphRule:
    return GraphRule(translate_term(lhs), translate_term(Intersect(lhs, rhs)),
                     origin or str(Sub(lhs, rhs)), index)


def standard_rules(labels: Iterable[Label], constants: Iterable[str]) -> list:
    """Top-, nonempty-, identity- and constant-rules, in that fixed order."""
    labels = sorted(set(labels))
    constants = list(dict.fromkeys(constants))
    i, t = Sym(ID), Sym(TOP)
    rules = [
        GraphRule(Graph({0, 1}), Graph({0, 1}, {Edge(TOP, 0, 1)}), "top-rule"),
        GraphRule(Graph(), Graph({0}), "nonempty-rule"),
        GraphRule(Graph({0}), Graph({0}, {Edge(ID, 0, 0)}), "id-reflexive"),
        translate_subsumption(Converse(i), i, "id-symmetric"),
        translate_subsumption(Compose(i, i), i, "id-transitive"),
    ]
    for lab in labels:
        rules.append(translate_subsumption(Compose(Compose(i, Sym(lab)), i), Sym(lab),
                                           f"id-congruence[{lab}]"))
    cs = [Sym(const(c)) for c in constants]
    for c in cs:
        rules.append(translate_subsumption(t, Compose(Compose(t, c), t), f"const-exists[{c}]"))
    for c in cs:
        rules.append(translate_subsumption(Compose(Compose(c, t), c), c, f"const-point[{c}]"))
    for c in cs:
        rules.append(translate_subsumption(c, i, f"const-ident[{c}]"))
    for c1 in cs:
        for c2 in cs:
            if c1 != c2:
                rules.append(translate_subsumption(Compose(c1, c2), Sym(BOT), f"const-distinct[{c1},{c2}]"))
    return rules


def compile_theory(t: Theory, goal_label_in_use: bool = False, standard: bool = True) -> RuleSet:
    """Standard rules for every label in play, then one rule per subsumption of ``t``."""
    used = t.labels()
    if GOAL in used and not goal_label_in_use:
        raise ReservedLabelError("the goal label is reserved for entailment checking")
    labels = used | {ID, TOP, BOT} | {const(c) for c in t.constants}
    if goal_label_in_use:
        labels.add(GOAL)
    rules = standard_rules(labels, t.constants) if standard else []
    for lhs, rhs in normalize_to_subsumptions(t):
        rules.append(translate_subsumption(lhs, rhs))
    indexed = tuple(GraphRule(r.lhs, r.rhs, r.origin, k) for k, r in enumerate(rules))
    for r in indexed:
        labels |= r.rhs.labels()
    return RuleSet(indexed, tuple(sorted(labels)), tuple(t.constants))


def entailment_theory(t: Theory, lhs: Term, rhs: Term) -> Theory:
    """``t`` plus the two sentences that make a conflict witness ``lhs <= rhs``."""
    for lab in term_labels(Intersect(lhs, rhs)):
        if lab.kind is LabelKind.GOAL:
            raise ReservedLabelError("the goal label may not appear in a goal sentence")
    if GOAL in t.labels():
        raise ReservedLabelError("the goal label may not appear in the theory")
    g = Sym(GOAL)
    return t.extend([Sub(g, lhs), Sub(Intersect(rhs, g), Sym(BOT))])

"""Fair weak-pushout-chain construction.

Each step repairs a violated rule instance with the smallest maximal vertex
number ``N``; ties go to the lower rule index, then the lexicographically
smaller match.  Fresh vertices are numbered ``n, n+1, ...`` in ascending
order of the rule's right-hand-side vertices.

`find_violations` and `step` recompute the worklist from scratch.
`saturate` keeps the worklist in a heap instead: a repaired violation can
never be violated again because the graph only grows, and every new match
must use a new edge or vertex, so seeding the search with those yields the
same selection as a full rescan at each step.  Matches are only enumerated
up to the smallest N that can still matter, which keeps rules with large
left-hand sides from flooding the heap with items that are never reached.
"""

from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass
from operator import itemgetter
from typing import Callable, Optional

from .graph import BOT, EMPTY, Edge, Graph, GraphBuilder, compile_plan, enumerate_embeddings, has_conflict, search
from .translate import GraphRule, RuleSet


@dataclass(frozen=True, order=True)
class WorkItem:
    N: int
    rule_index: int
    f: tuple  # images of the lhs vertices in ascending order

    def mapping(self, rule: GraphRule) -> dict:
        return dict(zip(sorted(rule.lhs.vertices), self.f))


@dataclass(frozen=True)
class StepRecord:
    index: int
    rule_index: int
    origin: str
    f: tuple  # (pattern vertex, host vertex) pairs
    fresh: tuple
    edges: tuple

    def format(self) -> str:
        fm = ",".join(f"{v}↦{w}" for v, w in self.f) or "-"
        fresh = ",".join(map(str, self.fresh)) or "-"
        edges = " ".join(map(str, self.edges)) or "-"
        return f"{self.index} {self.origin} f={fm} new={fresh} edges={edges}"


@dataclass(frozen=True)
class ChainState:
    graph: Graph = EMPTY
    n: int = 0
    steps_applied: int = 0
    trace: tuple = ()

    @classmethod
    def initial(cls, graph: Graph = EMPTY) -> "ChainState":
        n = len(graph.vertices)
        if graph.vertices != frozenset(range(n)):
            raise ValueError("initial graph vertices must be exactly 0..n-1")
        return cls(graph, n)


class Status(enum.Enum):
    FIXPOINT = "fixpoint"
    CONFLICT = "conflict"
    BUDGET = "budget-exhausted"


@dataclass(frozen=True)
class SaturationResult:
    status: Status
    final: ChainState
    witness: Optional[Edge] = None

    @property
    def trace(self) -> tuple:
        return self.final.trace


def _max_image(f: tuple) -> int:
    return max(f) if f else 0


def find_violations(state: ChainState, rules: RuleSet) -> list:
    items = []
    for rule in rules:
        rhs_plan = compile_plan(rule.rhs, frozenset(rule.lhs.vertices))
        for f in enumerate_embeddings(rule.lhs, state.graph):
            if next(search(rhs_plan, state.graph, dict(f)), None) is None:
                key = tuple(f[v] for v in sorted(f))
                items.append(WorkItem(_max_image(key), rule.index, key))
    items.sort()
    return items


def _apply(rule: GraphRule, f: dict, n: int):
    """Image of ``rule.rhs`` under f extended with fresh vertices from ``n`` upward."""
    g = dict(f)
    fresh = []
    for v in sorted(rule.rhs.vertices - rule.lhs.vertices):
        g[v] = n + len(fresh)
        fresh.append(g[v])
    edges = sorted({Edge(lab, g[s], g[d]) for lab, s, d in rule.rhs.edges})
    return g, fresh, edges


def step(state: ChainState, rules: RuleSet) -> Optional[ChainState]:
    """One chain step, or None when every rule is maintained."""
    items = find_violations(state, rules)
    if not items:
        return None
    item = items[0]
    rule = rules[item.rule_index]
    f = item.mapping(rule)
    _, fresh, edges = _apply(rule, f, state.n)
    added = tuple(e for e in edges if e not in state.graph.edges)
    graph = Graph(state.graph.vertices | set(fresh), state.graph.edges | set(added))
    record = StepRecord(state.steps_applied, rule.index, rule.origin, tuple(sorted(f.items())),
                        tuple(fresh), added)
    return ChainState(graph, state.n + len(fresh), state.steps_applied + 1, state.trace + (record,))


def _exclusion(plan, rhs_edge) -> Optional[tuple]:
    """Filter that makes `search` yield only matches missing ``rhs_edge``, if the plan allows one."""
    if rhs_edge is None or not plan.steps:
        return None
    lab, s, d = rhs_edge
    v = plan.steps[-1].vertex
    if s == d or v not in (s, d):
        return None
    return (lab, s, True) if v == d else (lab, d, False)


class _CompiledRule:
    __slots__ = ("rule", "order", "key", "ext_plan", "attach", "satisfied", "direct", "edges_by_label",
                 "vertex_plans")

    def __init__(self, rule: GraphRule):
        self.rule = rule
        lhs = rule.lhs
        self.order = sorted(lhs.vertices)
        pos = {v: i for i, v in enumerate(self.order)}
        if len(self.order) == 1:
            only = self.order[0]
            self.key = lambda m: (m[only],)
        else:
            self.key = itemgetter(*self.order) if self.order else (lambda m: ())
        # Whether f extends depends only on the lhs vertices that the added
        # part of rhs touches; extended tuples of those stay extended.
        extra = rule.rhs.edges - lhs.edges
        attach = sorted({v for e in extra for v in (e.src, e.dst) if v in lhs.vertices})
        part = Graph(set(attach) | (rule.rhs.vertices - lhs.vertices), extra)
        self.ext_plan = compile_plan(part, frozenset(attach))
        self.attach = tuple((v, pos[v]) for v in attach)
        self.satisfied: set = set()
        # rules without fresh vertices are checked by edge lookups on key positions
        self.direct = None
        rhs_edge = None
        if rule.rhs.vertices == lhs.vertices:
            new_edges = sorted(rule.rhs.edges - lhs.edges)
            self.direct = tuple((lab, pos[s], pos[d]) for lab, s, d in new_edges)
            if len(new_edges) == 1:
                rhs_edge = new_edges[0]

        def plan_with_filter(pinned):
            plan = compile_plan(lhs, pinned)
            return plan, _exclusion(plan, rhs_edge)

        self.edges_by_label: dict = {}
        for e in sorted(lhs.edges):
            self.edges_by_label.setdefault(e.label, []).append((e, plan_with_filter(frozenset((e.src, e.dst)))))
        self.vertex_plans = [(v, plan_with_filter(frozenset((v,)))) for v in self.order]


class _Engine:
    """Worklist kept across steps.

    ``level`` is the largest N for which every match with maximal image
    <= N has been enumerated.  The heap holds every violated match up to
    ``level`` (plus stale entries, dropped when popped), so whenever its
    least live entry has N <= level it is also the least violation overall.
    Otherwise the level is raised by enumerating matches whose maximal
    image is exactly the next vertex.
    """

    def __init__(self, state: ChainState, rules: RuleSet):
        self.rules = rules
        self.compiled = [_CompiledRule(r) for r in rules]
        self.host = GraphBuilder(state.graph)
        self.n = state.n
        self.level = -1
        self.heap: list = []
        for cr in self.compiled:
            if not cr.order:
                self._push(cr, set(), {()})

    def _violated(self, cr: _CompiledRule, key: tuple) -> bool:
        if cr.direct is not None:
            has_edge = self.host.has_edge
            return not all(has_edge(lab, key[i], key[j]) for lab, i, j in cr.direct)
        proj = tuple(key[i] for _, i in cr.attach)
        if proj in cr.satisfied:
            return False
        if next(search(cr.ext_plan, self.host, {v: key[i] for v, i in cr.attach}), None) is None:
            return True
        cr.satisfied.add(proj)
        return False

    def _collect(self, cr: _CompiledRule, plan_filter, assign: dict, known: set, unchecked: set) -> None:
        """Add keys of matches within the current level to ``known`` (surely violated) or ``unchecked``."""
        plan, exclude = plan_filter
        found = known if exclude is not None else unchecked
        found.update(map(cr.key, search(plan, self.host, assign, exclude, self.level)))

    def _push(self, cr: _CompiledRule, known: set, unchecked: set) -> None:
        idx = cr.rule.index
        if cr.direct is None:
            # extension searches are costly; leave them to `_live_top`
            known |= unchecked
        else:
            known.update(key for key in unchecked - known if self._violated(cr, key))
        for key in known:
            heapq.heappush(self.heap, (_max_image(key), idx, key))

    def _live_top(self):
        while self.heap:
            N, idx, key = self.heap[0]
            if self._violated(self.compiled[idx], key):
                return self.heap[0]
            heapq.heappop(self.heap)
        return None

    def _raise_level(self) -> None:
        self.level += 1
        w = self.level
        for cr in self.compiled:
            known, unchecked = set(), set()
            for v, plan_filter in cr.vertex_plans:
                self._collect(cr, plan_filter, {v: w}, known, unchecked)
            if known or unchecked:
                self._push(cr, known, unchecked)

    def pop(self) -> Optional[WorkItem]:
        while True:
            top = self._live_top()
            if top is not None and top[0] <= self.level:
                return WorkItem(*top)
            if self.level < self.n - 1:
                self._raise_level()
                continue
            return None if top is None else WorkItem(*top)

    def apply(self, item: WorkItem):
        heapq.heappop(self.heap)
        cr = self.compiled[item.rule_index]
        f = dict(zip(cr.order, item.f))
        _, fresh, edges = _apply(cr.rule, f, self.n)
        for v in fresh:
            self.host.add_vertex(v)
        self.n += len(fresh)
        added = [e for e in edges if self.host.add_edge(e)]
        assert added or fresh, "a violated rule instance must add something"
        self._discover(added)
        return f, fresh, added

    def _discover(self, new_edges: list) -> None:
        # fresh vertices lie above the level and are picked up when it rises
        seeds = [e for e in new_edges if e.src <= self.level and e.dst <= self.level]
        if not seeds:
            return
        for cr in self.compiled:
            known, unchecked = set(), set()
            for e in seeds:
                for pe, plan_filter in cr.edges_by_label.get(e.label, ()):
                    if pe.src == pe.dst:
                        if e.src != e.dst:
                            continue
                        assign = {pe.src: e.src}
                    else:
                        assign = {pe.src: e.src, pe.dst: e.dst}
                    self._collect(cr, plan_filter, assign, known, unchecked)
            if known or unchecked:
                self._push(cr, known, unchecked)


def saturate(initial: ChainState, rules: RuleSet, budget: int,
             on_step: Optional[Callable[[StepRecord], None]] = None,
             keep_trace: bool = True) -> SaturationResult:
    """Run the chain until fixpoint, a ⊥-edge, or ``budget`` applied steps."""
    engine = _Engine(initial, rules)
    trace = list(initial.trace)
    steps = initial.steps_applied

    def final() -> ChainState:
        return ChainState(engine.host.freeze(), engine.n, steps, tuple(trace))

    witness = has_conflict(initial.graph)
    if witness is not None:
        return SaturationResult(Status.CONFLICT, final(), witness)
    applied = 0
    while True:
        item = engine.pop()
        if item is None:
            return SaturationResult(Status.FIXPOINT, final())
        if applied >= budget:
            return SaturationResult(Status.BUDGET, final())
        rule = rules[item.rule_index]
        f, fresh, added = engine.apply(item)
        record = StepRecord(steps, rule.index, rule.origin, tuple(sorted(f.items())),
                            tuple(fresh), tuple(added))
        steps += 1
        applied += 1
        if keep_trace:
            trace.append(record)
        if on_step is not None:
            on_step(record)
        bots = [e for e in added if e.label == BOT]
        if bots:
            return SaturationResult(Status.CONFLICT, final(), min(bots))

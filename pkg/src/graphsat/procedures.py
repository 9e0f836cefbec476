"""Consistency and entailment checking on top of saturation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .graph import BOT, GOAL, TOP, Edge, Graph
from .model import StandardModel, extract_standard_model
from .saturate import ChainState, SaturationResult, Status, saturate
from .terms import Sentence, Sub, Sym, Theory
from .translate import compile_theory, entailment_theory

DEFAULT_BUDGET = 100_000


@dataclass
class Consistent:
    model: StandardModel
    result: SaturationResult
    token = "CONSISTENT"


@dataclass
class Inconsistent:
    result: SaturationResult
    token = "INCONSISTENT"


@dataclass
class Unknown:
    result: Optional[SaturationResult]
    token = "UNKNOWN"


@dataclass
class Entailed:
    results: tuple
    token = "ENTAILED"


@dataclass
class NotEntailed:
    countermodel: StandardModel
    witness: tuple
    direction: Sub
    result: SaturationResult
    token = "NOT ENTAILED"


ConsistencyVerdict = Union[Consistent, Inconsistent, Unknown]
EntailmentVerdict = Union[Entailed, NotEntailed, Unknown]


def check_consistency(t: Theory, budget: int = DEFAULT_BUDGET, **kw) -> ConsistencyVerdict:
    rules = compile_theory(t)
    result = saturate(ChainState.initial(), rules, budget, **kw)
    if result.status is Status.CONFLICT:
        return Inconsistent(result)
    if result.status is Status.BUDGET:
        return Unknown(result)
    return Consistent(extract_standard_model(result.final.graph, t.constants), result)


def _check_subsumption(t: Theory, goal: Sub, budget: int, **kw) -> EntailmentVerdict:
    extended = entailment_theory(t, goal.lhs, goal.rhs)
    rules = compile_theory(extended, goal_label_in_use=True)
    start = ChainState.initial(Graph({0, 1}, {Edge(GOAL, 0, 1)}))
    result = saturate(start, rules, budget, **kw)
    if result.status is Status.CONFLICT:
        return Entailed((result,))
    if result.status is Status.BUDGET:
        return Unknown(result)
    graph = result.final.graph.without_label(GOAL)
    model = extract_standard_model(graph, extended.constants)
    witness = (model.class_map[0], model.class_map[1])
    return NotEntailed(model, witness, goal, result)


def check_entailment(t: Theory, goal: Sentence, budget: int = DEFAULT_BUDGET, **kw) -> EntailmentVerdict:
    """Does every standard model of ``t`` satisfy ``goal``?

    An equation is checked as two subsumptions, each given half the budget.
    """
    if isinstance(goal, Sub):
        return _check_subsumption(t, goal, budget, **kw)
    first = _check_subsumption(t, Sub(goal.lhs, goal.rhs), budget // 2, **kw)
    if isinstance(first, NotEntailed):
        return first
    second = _check_subsumption(t, Sub(goal.rhs, goal.lhs), budget - budget // 2, **kw)
    if isinstance(second, NotEntailed):
        return second
    if isinstance(first, Entailed) and isinstance(second, Entailed):
        return Entailed(first.results + second.results)
    return first if isinstance(first, Unknown) else second


def self_check_lemma2(t: Theory, budget: int = DEFAULT_BUDGET) -> bool:
    """Cross-check: consistent iff ``top <= bot`` is not entailed.

    Returns True only when both procedures decide within ``budget`` and
    agree; raises AssertionError when they decide and disagree.
    """
    consistency = check_consistency(t, budget, keep_trace=False)
    entailment = check_entailment(t, Sub(Sym(TOP), Sym(BOT)), budget, keep_trace=False)
    if isinstance(consistency, Unknown) or isinstance(entailment, Unknown):
        return False
    agree = isinstance(consistency, Consistent) == isinstance(entailment, NotEntailed)
    assert agree, f"consistency says {consistency.token}, entailment of top <= bot says {entailment.token}"
    return True

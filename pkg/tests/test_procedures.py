import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphsat.corpus import GROWTH, ROOMMATES, ROOMMATES_LOOSE, generate_random_theory
from graphsat.errors import ReservedLabelError
from graphsat.graph import GOAL, TOP, atom
from graphsat.model import check_standard
from graphsat.procedures import (Consistent, Entailed, Inconsistent, NotEntailed, Unknown, check_consistency,
                                 check_entailment, self_check_lemma2)
from graphsat.terms import Sub, Sym, Theory, eval_semantics, holds, parse_sentence, parse_theory

i, r = atom("i"), atom("r")

ROOM_I = {(0, 3), (1, 4), (2, 3), (2, 4)}
ROOM_R = {(0, 0), (0, 2), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)}


def isomorphic(rels_a, rels_b) -> bool:
    """Brute-force isomorphism between two tuples of binary relations."""
    va = sorted({v for rel in rels_a for p in rel for v in p}, key=str)
    vb = sorted({v for rel in rels_b for p in rel for v in p}, key=str)
    if len(va) != len(vb):
        return False
    for perm in itertools.permutations(vb):
        f = dict(zip(va, perm))
        if all({(f[x], f[y]) for x, y in ra} == rb for ra, rb in zip(rels_a, rels_b)):
            return True
    return False


def test_roommates_entail_transitivity():
    v = check_entailment(parse_theory(ROOMMATES), parse_sentence("r ; r <= r"))
    assert isinstance(v, Entailed) and v.token == "ENTAILED"


@pytest.mark.parametrize("goal,expected", [
    ("r ; r = r", Entailed),
    ("r = r~", Entailed),
    ("r <= id", NotEntailed),
    ("top <= top", Entailed),
])
def test_roommate_goals(goal, expected):
    assert isinstance(check_entailment(parse_theory(ROOMMATES), parse_sentence(goal)), expected)


def test_loose_roommates_countermodel():
    goal = parse_sentence("r ; r <= r")
    v = check_entailment(parse_theory(ROOMMATES_LOOSE), goal, 10_000)
    assert isinstance(v, NotEntailed) and v.token == "NOT ENTAILED"
    m = v.countermodel
    assert check_standard(m)
    assert all(holds(s, m) for s in parse_theory(ROOMMATES_LOOSE).sentences)
    assert v.witness in eval_semantics(goal.lhs, m)
    assert v.witness not in eval_semantics(goal.rhs, m)
    assert GOAL not in {lab for lab, _, _ in m.edges}
    assert isomorphic((m.relation(i), m.relation(r)), (ROOM_I, ROOM_R))


def test_empty_theory_has_one_vertex_model():
    v = check_consistency(Theory.of([]))
    assert isinstance(v, Consistent)
    assert v.model.vertices == {"0"}


def test_direct_contradiction():
    v = check_consistency(parse_theory("top <= bot"))
    assert isinstance(v, Inconsistent) and v.token == "INCONSISTENT"


def test_budget_exhaustion_is_unknown():
    v = check_consistency(parse_theory("id <= l ; l~"), 50)
    assert isinstance(v, Unknown) and v.token == "UNKNOWN"
    assert v.result.witness is None


def test_goal_label_in_goal_is_rejected():
    with pytest.raises(ReservedLabelError):
        check_entailment(Theory.of([]), Sub(Sym(GOAL), Sym(TOP)))


def test_consistency_agrees_with_top_bot_entailment():
    assert self_check_lemma2(parse_theory(ROOMMATES))
    assert self_check_lemma2(parse_theory("top <= bot"))
    assert not self_check_lemma2(parse_theory(GROWTH), budget=1)


@settings(max_examples=40)
@given(st.integers(0, 10_000))
def test_verdicts_are_sound(seed):
    t = generate_random_theory(seed)
    v = check_consistency(t, 500, keep_trace=False)
    if isinstance(v, Consistent):
        assert check_standard(v.model, t.constants)
        assert all(holds(s, v.model) for s in t.sentences)
    if isinstance(v, Unknown):
        assert v.result.witness is None


@settings(max_examples=20)
@given(st.integers(0, 10_000), st.integers(1, 200))
def test_inconsistency_is_monotone_in_budget(seed, extra):
    t = generate_random_theory(seed)
    v = check_consistency(t, 300)
    if isinstance(v, Inconsistent):
        w = check_consistency(t, 300 + extra)
        assert isinstance(w, Inconsistent)
        assert w.result.trace == v.result.trace


@settings(max_examples=20)
@given(st.integers(0, 10_000))
def test_not_entailed_countermodels_falsify_goal(seed):
    t = generate_random_theory(seed)
    u = generate_random_theory(seed + 1)
    if not u.sentences:
        return
    goal = u.sentences[0]
    v = check_entailment(t, goal, 400, keep_trace=False)
    if isinstance(v, NotEntailed):
        m = v.countermodel
        assert check_standard(m, t.constants)
        assert all(holds(s, m) for s in t.sentences)
        d = v.direction
        assert v.witness in eval_semantics(d.lhs, m) and v.witness not in eval_semantics(d.rhs, m)

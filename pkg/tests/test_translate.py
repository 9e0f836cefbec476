import pytest
from hypothesis import given

from graphsat import oracle
from graphsat.errors import ReservedLabelError
from graphsat.graph import BOT, GOAL, ID, TOP, Edge, Graph, atom, const, is_subgraph
from graphsat.terms import Compose, Converse, Intersect, Sub, Sym, Theory, eval_semantics, holds, parse_term, parse_theory
from graphsat.translate import compile_theory, entailment_theory, standard_rules, translate_subsumption, translate_term
from graphsat.corpus import LIZ_JON, ROOMMATES

from conftest import graphs, terms

l, m, i, r = atom("l"), atom("m"), atom("i"), atom("r")


def test_translation_fixtures():
    assert translate_term(parse_term("l")) == Graph({0, 1}, {Edge(l, 0, 1)})
    assert translate_term(parse_term("l & l;l")) == Graph({0, 1, 2}, {Edge(l, 0, 1), Edge(l, 0, 2), Edge(l, 2, 1)})
    assert translate_term(parse_term("l ; m")) == Graph({0, 1, 2}, {Edge(l, 0, 2), Edge(m, 2, 1)})
    assert translate_term(parse_term("l~")) == Graph({0, 1}, {Edge(l, 1, 0)})


def test_subsumption_rules():
    rule = translate_subsumption(parse_term("l"), parse_term("l;l"))
    assert rule.lhs == translate_term(parse_term("l"))
    assert rule.rhs == translate_term(parse_term("l & l;l"))
    same = translate_subsumption(parse_term("l"), parse_term("l"))
    assert len(same.rhs.vertices) == len(same.lhs.vertices) == 2
    room = translate_subsumption(parse_term("r"), parse_term("i;i~"))
    assert room.lhs == Graph({0, 1}, {Edge(r, 0, 1)})
    assert room.rhs == Graph({0, 1, 2}, {Edge(r, 0, 1), Edge(i, 0, 2), Edge(i, 1, 2)})


def test_standard_rule_counts():
    assert len(standard_rules({ID, TOP, BOT}, [])) == 8
    plain = len(standard_rules({ID, TOP, BOT, const("Liz"), const("Jon")}, []))
    with_consts = len(standard_rules({ID, TOP, BOT, const("Liz"), const("Jon")}, ["Liz", "Jon"]))
    assert with_consts - plain == 8


def test_standard_rule_order():
    origins = [rule.origin for rule in standard_rules({ID, TOP, BOT, l, const("c"), const("d")}, ["c", "d"])]
    assert origins[:5] == ["top-rule", "nonempty-rule", "id-reflexive", "id-symmetric", "id-transitive"]
    assert origins[5:11] == ["id-congruence[l]", "id-congruence[id]", "id-congruence[top]", "id-congruence[bot]",
                             "id-congruence['c']", "id-congruence['d']"]
    assert origins[11:] == ["const-exists['c']", "const-exists['d']", "const-point['c']", "const-point['d']",
                            "const-ident['c']", "const-ident['d']", "const-distinct['c','d']",
                            "const-distinct['d','c']"]


def test_reflexivity_rule_adds_a_loop():
    rule = standard_rules({ID, TOP, BOT}, [])[2]
    assert rule.lhs == Graph({0}) and rule.rhs == Graph({0}, {Edge(ID, 0, 0)})


def test_compile_empty_theory_is_standard_rules():
    rules = compile_theory(Theory.of([]))
    assert [x.origin for x in rules] == [x.origin for x in standard_rules({ID, TOP, BOT}, [])]
    assert [x.index for x in rules] == list(range(len(rules)))


def test_compile_entailment_theory_shapes():
    t = parse_theory(ROOMMATES)
    extended = entailment_theory(t, parse_term("r;r"), parse_term("r"))
    rules = compile_theory(extended, goal_label_in_use=True)
    theory_rules = [x for x in rules if not x.origin.startswith(("top-", "nonempty-", "id-", "const-"))]
    assert [x.origin for x in theory_rules] == [
        "r <= i ; i~", "i ; i~ <= r", "i~ ; i <= id", "$goal <= r ; r", "r & $goal <= bot"]
    goal_rule = theory_rules[3]
    assert goal_rule.rhs == Graph({0, 1, 2}, {Edge(GOAL, 0, 1), Edge(r, 0, 2), Edge(r, 2, 1)})
    conflict_rule = theory_rules[4]
    assert Edge(BOT, 0, 1) in conflict_rule.rhs.edges


def test_goal_label_is_reserved():
    t = Theory.of([Sub(Sym(GOAL), Sym(l))])
    with pytest.raises(ReservedLabelError):
        compile_theory(t)
    with pytest.raises(ReservedLabelError):
        entailment_theory(t, Sym(l), Sym(l))


def test_constants_collected_into_rules():
    rules = compile_theory(parse_theory(LIZ_JON))
    assert rules.constants == ("Liz", "Jon")
    assert "const-distinct['Liz','Jon']" in [x.origin for x in rules]


@given(terms(max_ops=4))
def test_vertex_shape_and_size_arithmetic(e):
    g = translate_term(e)
    assert g.vertices == frozenset(range(len(g)))
    if isinstance(e, Compose):
        assert len(g) == len(translate_term(e.left)) + len(translate_term(e.right)) - 1
    elif isinstance(e, Intersect):
        assert len(g) == len(translate_term(e.left)) + len(translate_term(e.right)) - 2
    elif isinstance(e, Converse):
        assert len(g) == len(translate_term(e.arg))


@given(terms(), graphs())
def test_pinned_embeddings_match_semantics(e, g):
    pattern = translate_term(e)
    pinned = {(f[0], f[1]) for f in oracle.naive_embeddings(pattern, g)}
    assert pinned == eval_semantics(e, g)


@given(terms(max_ops=2), terms(max_ops=2), graphs())
def test_maintained_iff_sentence_holds(a, b, g):
    rule = translate_subsumption(a, b)
    assert is_subgraph(rule.lhs, rule.rhs)
    assert bool(oracle.is_maintained(rule, g)) == holds(Sub(a, b), g)

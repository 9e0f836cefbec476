from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from graphsat.graph import BOT, ID, TOP, Edge, Graph, atom, const
from graphsat.terms import Compose, Converse, Intersect, Sym


settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL_LABELS = [atom("l"), atom("m"), ID, TOP, BOT, const("c")]


def terms(labels=SMALL_LABELS, max_ops: int = 3):
    """Terms with at most ``max_ops`` operators."""
    leaves = st.sampled_from(labels).map(Sym)

    def build(ops):
        if ops == 0:
            return leaves
        smaller = build(ops - 1)
        return st.one_of(
            leaves,
            smaller.map(Converse),
            st.integers(0, ops - 1).flatmap(
                lambda k: st.tuples(build(k), build(ops - 1 - k), st.booleans()).map(
                    lambda t: Compose(t[0], t[1]) if t[2] else Intersect(t[0], t[1]))),
        )

    return build(max_ops)


def graphs(labels=SMALL_LABELS, max_vertices: int = 4, max_edges: int = 10):
    """Graphs on vertices 0..k-1."""
    def with_edges(k):
        edge = st.builds(Edge, st.sampled_from(labels), st.integers(0, k - 1), st.integers(0, k - 1))
        return st.frozensets(edge, max_size=max_edges).map(lambda es: Graph(range(k), es))
    return st.integers(1, max_vertices).flatmap(with_edges)


# criterion number -> (passed, description), filled in by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, text = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {text}")

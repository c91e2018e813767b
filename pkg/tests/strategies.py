"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from addsparse import Assignment, Hypergraph, Predicate


@st.composite
def hypergraphs(draw, max_n=6, max_k=3, max_edges=12, directed=None):
    k = draw(st.integers(1, max_k))
    n = draw(st.integers(k, max_n))
    is_directed = draw(st.booleans()) if directed is None else directed
    edge = st.lists(st.integers(0, n - 1), min_size=k, max_size=k).map(tuple)
    raw = draw(st.lists(edge, max_size=max_edges))
    seen = set()
    edges = []
    for e in raw:
        key = e if is_directed else tuple(sorted(e))
        if key not in seen:
            seen.add(key)
            edges.append(e)
    return Hypergraph(n, k, tuple(edges), directed=is_directed)


@st.composite
def assignments_for(draw, graph, max_q=3):
    q = draw(st.integers(2, max_q))
    values = draw(st.lists(st.integers(0, q - 1), min_size=graph.n, max_size=graph.n))
    return Assignment(tuple(values), q)


@st.composite
def predicates_for(draw, graph, q):
    table = draw(st.lists(st.integers(0, 1), min_size=q**graph.k, max_size=q**graph.k))
    return Predicate(graph.k, q, tuple(table))


@st.composite
def instances(draw, max_n=6, max_k=3, max_q=3, directed=None):
    graph = draw(hypergraphs(max_n=max_n, max_k=max_k, directed=directed))
    assignment = draw(assignments_for(graph, max_q=max_q))
    predicate = draw(predicates_for(graph, assignment.q))
    return graph, predicate, assignment

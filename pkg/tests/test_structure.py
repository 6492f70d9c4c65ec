import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from firebreak.families import (
    complete,
    cycle,
    grid_tri,
    path,
    petersen,
    prism,
    random_ktree,
    random_regular,
    random_tree,
    star,
)
from firebreak.graphs import Graph, GraphError, popcount
from firebreak.structure import (
    exact_colouring,
    forest_peel,
    greedy_colouring,
    is_forest,
    is_proper_colouring,
    ktree_structure,
    min_fvs,
    perfect_matching,
    regularize,
    suppress_degree2,
)


@st.composite
def graphs(draw):
    n = draw(st.integers(2, 9))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return Graph(n, chosen)


# --- colouring


def test_exact_colouring_c5():
    parts = exact_colouring(cycle(5), 3)
    assert parts is not None and len(parts) == 3
    assert is_proper_colouring(cycle(5), parts)


def test_exact_colouring_k4_infeasible():
    assert exact_colouring(complete(4), 3) is None


def test_greedy_colouring_petersen():
    parts = greedy_colouring(petersen())
    assert len(parts) <= 4
    assert is_proper_colouring(petersen(), parts)


@given(graphs())
@settings(max_examples=40, deadline=None)
def test_greedy_colouring_always_proper(g):
    assert is_proper_colouring(g, greedy_colouring(g))


# --- forest peeling


def test_forest_peel_tree():
    assert len(forest_peel(random_tree(20, 1))) == 1


def test_forest_peel_k4():
    parts = forest_peel(complete(4))
    assert len(parts) == 2


def test_forest_peel_triangulated_patch():
    parts = forest_peel(grid_tri(6, 6))
    assert len(parts) <= 3


@given(graphs())
@settings(max_examples=40, deadline=None)
def test_forest_peel_partitions_into_forests(g):
    parts = forest_peel(g)
    seen = sorted(i for part in parts for i in part)
    assert seen == list(range(g.m))
    for part in parts:
        assert is_forest(g, part)


# --- feedback vertex sets


def test_min_fvs_examples():
    assert min_fvs(random_tree(8, 2)) == 0
    assert popcount(min_fvs(cycle(5))) == 1
    assert popcount(min_fvs(complete(4))) == 2


def test_min_fvs_leaves_forest():
    g = petersen()
    fvs = min_fvs(g)
    keep = [(u, v) for u, v in g.edges if not ((fvs >> u) | (fvs >> v)) & 1]
    assert Graph(g.n, keep).is_acyclic()


# --- perfect matchings


def test_matching_k4_forced():
    m = perfect_matching(complete(4), must_include=0)
    assert m is not None and 0 in m and len(m) == 2
    pairs = {complete(4).edges[i] for i in m}
    assert pairs == {(0, 1), (2, 3)}


def test_matching_parallel_edges():
    theta = Graph(2, [(0, 1), (0, 1), (0, 1)])
    assert perfect_matching(theta, must_include=1) == [1]


def test_matching_petersen_any_forced_edge():
    g = petersen()
    for forced in range(g.m):
        m = perfect_matching(g, must_include=forced)
        assert m is not None and len(m) == 5 and forced in m


def test_matching_complement_is_two_factor_on_cubic():
    for seed in range(5):
        g = random_regular(10, 3, seed)
        m = perfect_matching(g)
        assert m is not None
        left = [i for i in range(g.m) if i not in set(m)]
        degree = [0] * g.n
        for i in left:
            u, v = g.edges[i]
            degree[u] += 1
            degree[v] += 1
        assert all(d == 2 for d in degree)


def test_matching_none_when_impossible():
    assert perfect_matching(star(4)) is None


# --- degree-2 suppression


def theta_graph():
    return Graph(5, [(0, 1), (0, 2), (2, 1), (0, 3), (3, 4), (4, 1)])


def test_suppress_theta():
    red = suppress_degree2(theta_graph())
    assert red.reduced.n == 2 and red.reduced.m == 3
    assert red.reduced.has_parallel_edges()


def test_suppress_cubic_identity():
    red = suppress_degree2(complete(4))
    assert red.paths == {}
    assert red.reduced == complete(4)


def test_suppress_expansion_identity():
    # prism with one edge subdivided once: one absorbed path, one internal vertex
    pr = prism(3)
    edges = list(pr.edges)
    u, v = edges.pop(0)
    edges += [(u, 6), (6, v)]
    g = Graph(7, edges)
    red = suppress_degree2(g)
    assert red.reduced == prism(3)
    assert len(red.paths) == 1
    (path_,) = red.paths.values()
    assert len(path_) == 3  # endpoint, the suppressed vertex, endpoint
    expanded = sorted(tuple(sorted(e)) for e in red.expand_edges())
    assert expanded == sorted(tuple(sorted(e)) for e in g.edges)


def test_suppress_rejects_pure_cycle():
    with pytest.raises(GraphError):
        suppress_degree2(cycle(6))


# --- k-tree recognition


def fan_two_tree():
    return Graph(6, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (3, 5), (4, 5)])


def test_ktree_complete():
    info = ktree_structure(complete(4), 3)
    assert info is not None
    assert info.central == (0, 1, 2, 3)
    assert info.order == []


def test_ktree_fan():
    info = ktree_structure(fan_two_tree(), 2)
    assert info is not None and len(info.order) == 3
    # replaying the order from the central clique rebuilds the graph
    g = fan_two_tree()
    present = set(info.central)
    for u, clique in info.order:
        assert set(clique) <= present
        assert all(tuple(sorted((u, w))) in {tuple(sorted(e)) for e in g.edges} for w in clique)
        present.add(u)
    assert present == set(range(g.n))


def test_ktree_rejects_c5():
    assert ktree_structure(cycle(5), 2) is None


def test_ktree_central_clique_minimises_distance():
    g = random_ktree(12, 2, seed=5)
    info = ktree_structure(g, 2)
    assert info is not None
    from firebreak.graphs import metrics

    dist = metrics(g).dist
    radius = lambda clique: max(min(dist[v][w] for w in clique) for v in range(g.n))
    best = min(radius(c) for c in info.cliques)
    assert radius(info.central) == best


def test_ktree_cliques_count():
    for seed in range(4):
        g = random_ktree(10, 3, seed)
        info = ktree_structure(g, 3)
        assert info is not None
        assert len(info.cliques) == 10 - 3


# --- regular supergraphs


def test_regularize_edge_to_c4():
    g = regularize(Graph(2, [(0, 1)]), 2)
    assert g.n == 4 and all(d == 2 for d in g.degrees())


def test_regularize_p3_to_c6():
    g = regularize(path(3), 2)
    assert g.n == 6 and all(d == 2 for d in g.degrees())
    assert g.is_connected()


def test_regularize_star_embeds():
    g = regularize(star(4), 3)
    assert all(d == 3 for d in g.degrees())
    original = {tuple(sorted(e)) for e in star(4).edges}
    assert original <= {tuple(sorted(e)) for e in g.edges}


def test_regularize_rejects_low_target():
    with pytest.raises(GraphError):
        regularize(star(5), 3)

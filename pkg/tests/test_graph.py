import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from advicelab.generate import random_graph, random_ring
from advicelab.graph import (
    GraphError,
    InstanceError,
    ball_view,
    build_path,
    build_ring,
    diameter,
    eccentricities,
    label_set,
    parse_instance,
    ring_sequence,
    serialize_instance,
    views_equal,
)
from advicelab.lowerbounds import nested_ring_family


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


@pytest.fixture
def c5():
    return build_ring([1, 2, 3, 5, 4])


def test_triangle():
    g = build_ring([1, 2, 3])
    assert g.edges == frozenset({(0, 1), (1, 2), (0, 2)})
    assert diameter(g) == 1


def test_ring_too_small():
    with pytest.raises(GraphError):
        build_ring([1, 2])


def test_five_cycle(c5):
    assert diameter(c5) == 2
    assert c5.is_ring()
    assert ring_sequence(c5) == (1, 2, 3, 5, 4)


@pytest.mark.parametrize("n", range(3, 201))
def test_ring_diameter_formula(n):
    g = random_ring(n, seed=n)
    assert diameter(g) == n // 2
    assert diameter(g) == nx.diameter(to_nx(g))


@pytest.mark.parametrize("seed", range(25))
def test_eccentricities_match_networkx(seed):
    g = random_graph(40 + seed, seed, extra=seed / 25)
    want = nx.eccentricity(to_nx(g))
    assert eccentricities(g).tolist() == [want[v] for v in range(g.n)]


def test_ball_view_example(c5):
    v = ball_view(c5, c5.node(3), 1)
    assert v.root_label == 3
    assert v.boundary_labels == {2, 5}
    assert v.inner_labels == {3}
    assert v.edges == {(2, 3), (3, 5)}
    assert dict(v.boundary_degrees) == {2: 2, 5: 2}


def test_ball_view_radius_zero():
    g = random_graph(20, 3)
    for u in range(g.n):
        v = ball_view(g, u, 0)
        assert v.boundary_labels == {g.labels[u]}
        assert v.boundary_degrees == ((g.labels[u], g.degree(u)),)
        assert not v.edges


def test_ball_view_past_eccentricity(c5):
    v = ball_view(c5, c5.node(3), 3)
    assert v.labels == {1, 2, 3, 4, 5}
    assert not v.has_boundary
    assert len(v.edges) == 5


def test_boundary_edges_dropped():
    # 2 and 3 are adjacent but both sit at distance exactly 1
    g = build_ring([1, 2, 3])
    v = ball_view(g, g.node(1), 1)
    assert (2, 3) not in v.edges
    assert v.edges == {(1, 2), (1, 3)}


def test_label_set(c5):
    assert label_set(c5, c5.node(3), 0) == {3}
    assert label_set(c5, c5.node(3), 1) == {2, 3, 5}
    assert label_set(c5, c5.node(3), 2) == {1, 2, 3, 4, 5}


def test_views_equal_cases():
    fam = nested_ring_family(2)
    a = ball_view(fam.member(1), fam.member(1).node(1), 1)
    b = ball_view(fam.member(2), fam.member(2).node(1), 1)
    assert views_equal(a, a)
    assert views_equal(a, b)
    p = build_path([2, 1, 3])
    tri = build_ring([1, 2, 3])
    # same labels and edges at radius 1 but boundary degrees differ
    assert not views_equal(ball_view(p, p.node(1), 1), ball_view(tri, tri.node(1), 1))


def test_serialize_triangle():
    g = build_ring([1, 2, 3])
    assert serialize_instance(g) == "graph 3 3\nnode 0 1\nnode 1 2\nnode 2 3\nedge 0 1\nedge 0 2\nedge 1 2\n"


def test_ring_shorthand(c5):
    assert parse_instance("ring 1 2 3 5 4\n") == c5


@pytest.mark.parametrize("seed", range(20))
def test_round_trip(seed):
    g = random_graph(5 + seed, seed)
    assert parse_instance(serialize_instance(g)) == g


@pytest.mark.parametrize(
    "text,needle",
    [
        ("graph 3 1\nnode 0 1\nnode 1 2\nnode 2 3\nedge 0 9\n", "out of range"),
        ("graph 2 1\nnode 0 1\nnode 1 1\nedge 0 1\n", "duplicate label"),
        ("graph 3 2\nnode 0 1\nnode 1 2\nedge 0 1\nedge 1 2\n", "missing"),
        ("graph 3 1\nnode 0 1\nnode 1 2\nnode 2 3\nedge 0 1\n", "connected"),
        ("graph 2 1\nnode 0 1\nnode 1 2\nedge 0 0\n", "self-loop"),
        ("graph x 1\n", "integer"),
        ("banana\n", "header"),
        ("ring 1 2\n", "ring"),
        ("", "empty"),
    ],
)
def test_parse_errors(text, needle):
    with pytest.raises((InstanceError, GraphError)) as info:
        parse_instance(text)
    assert needle in str(info.value).lower()


def test_parse_comments_and_L():
    g = parse_instance("# a ring\nring 4 2 9  # trailing\nL 16\n\n")
    assert g.L == 16 and g.labels == (4, 2, 9)
    with pytest.raises(InstanceError, match="exceeds L"):
        parse_instance("ring 4 2 99\nL 16\n")


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 30), st.integers(0, 10**6), st.floats(0, 1.5))
def test_property_round_trip_and_diameter(n, seed, extra):
    g = random_graph(n, seed, extra=extra)
    assert parse_instance(serialize_instance(g)) == g
    assert diameter(g) == (nx.diameter(to_nx(g)) if n > 1 else 0)

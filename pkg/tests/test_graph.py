from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from distcolor.generators import cycle_graph, petersen, star
from distcolor.graph import (EdgeListError, Graph, average_degree, bfs_distances,
                             connected_components, format_edge_list, girth, parse_edge_list,
                             square_graph, two_distance_profile)
from oracles import distance2_pairs, girth_bruteforce, random_graph


@st.composite
def graphs(draw, max_n: int = 12):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph.from_edges(n, chosen)


class TestParse:
    def test_comments_blank_lines_and_header(self):
        g = parse_edge_list("# triangle\nn 4\n0 1\n\n1 2  # inline\n2 0\n")
        assert g.n == 4 and g.edge_count == 3 and g.degree(3) == 0

    def test_without_header_n_is_max_id_plus_one(self):
        assert parse_edge_list(b"0 5\n").n == 6

    def test_duplicate_edges_collapse(self):
        assert parse_edge_list("0 1\n1 0\n").edge_count == 1

    @pytest.mark.parametrize("text,line", [
        ("0 1\n2 2\n", 2),
        ("0 1\n1 x\n", 2),
        ("0 1 2\n", 1),
        ("0\n", 1),
        ("0 -1\n", 1),
        ("n 2\n0 5\n", 1),
        ("n 3\nn 4\n", 2),
    ])
    def test_malformed_input_reports_line(self, text, line):
        with pytest.raises(EdgeListError) as info:
            parse_edge_list(text)
        assert info.value.line == line

    @given(graphs())
    def test_format_round_trip(self, g):
        assert parse_edge_list(format_edge_list(g)) == g


class TestGraph:
    def test_rejects_self_loop_and_asymmetry(self):
        with pytest.raises(ValueError):
            Graph({0: [0]})
        with pytest.raises(ValueError):
            Graph({0: [1], 1: []})

    def test_unknown_vertex(self):
        with pytest.raises(IndexError):
            petersen().neighbors(99)
        with pytest.raises(IndexError):
            two_distance_profile(petersen(), 99)

    def test_without_keeps_ids(self):
        h = cycle_graph(6).without([0])
        assert h.vertices() == (1, 2, 3, 4, 5)
        assert h.degree(1) == 1 and h.degree(3) == 2

    def test_components(self):
        g = Graph.from_edges(5, [(0, 1), (2, 3)])
        assert sorted(map(sorted, connected_components(g))) == [[0, 1], [2, 3], [4]]


class TestDistance:
    def test_petersen_profile_has_nine_vertices(self):
        prof = two_distance_profile(petersen(), 0)
        assert prof.d_star == 9 and 0 not in prof.two_distance_neighbors

    def test_star_square_is_complete(self):
        sq = square_graph(star(3))
        assert sq.edge_count == 6

    def test_c5_square_is_k5(self):
        assert square_graph(cycle_graph(5)).edge_count == 10

    @given(graphs())
    def test_square_matches_definition(self, g):
        assert set(square_graph(g).edges()) == distance2_pairs(g)

    def test_bfs_limit(self):
        d = bfs_distances(cycle_graph(8), 0, limit=2)
        assert max(d.values()) == 2 and len(d) == 5


class TestGirth:
    @pytest.mark.parametrize("g,expected", [
        (cycle_graph(5), 5), (petersen(), 5), (star(4), None),
        (Graph.from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3)]), 3),
    ])
    def test_examples(self, g, expected):
        assert girth(g) == expected

    @given(graphs(max_n=10))
    @settings(max_examples=150)
    def test_matches_cycle_enumeration(self, g):
        assert girth(g) == girth_bruteforce(g)


def test_average_degree():
    assert average_degree(petersen()) == 3
    assert average_degree(star(3)) == Fraction(3, 2)
    with pytest.raises(ValueError):
        average_degree(Graph({}))


def test_random_graph_helper_is_seeded():
    a = random_graph(9, 0.4, random.Random(3))
    b = random_graph(9, 0.4, random.Random(3))
    assert a == b

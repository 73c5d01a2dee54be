"""Tests for graph construction, matrices, generators and edge-list ingestion"""

import io
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from core.errors import (
    BadParams, Disconnected, DuplicateEdge, GiveUp, IndexOutOfRange, ParseError,
    SelfLoop, TrivialGraph,
)
from core.graph import (
    MatrixKind, build_graph, format_edge_list, from_networkx, generator, graph_fingerprint,
    matrix, parse_edge_list, parse_generator_spec, random_connected, trace_shift,
    triangle_count,
)
from strategies import connected_graphs


class TestBuildGraph:
    def test_smallest_connected_graph(self):
        g = build_graph(2, [(0, 1)])
        assert g.degrees == (1, 1)
        assert g.m == 1

    def test_star(self):
        g = build_graph(4, [(0, 1), (0, 2), (0, 3)])
        assert g.degrees == (3, 1, 1, 1)

    def test_edges_are_normalized_and_sorted(self):
        g = build_graph(3, [(2, 1), (1, 0)])
        assert g.edges == ((0, 1), (1, 2))

    def test_disconnected(self):
        with pytest.raises(Disconnected, match=r"\[2\]"):
            build_graph(3, [(0, 1)])

    def test_self_loop(self):
        with pytest.raises(SelfLoop):
            build_graph(2, [(0, 1), (1, 1)])

    def test_duplicate_in_either_orientation(self):
        with pytest.raises(DuplicateEdge):
            build_graph(2, [(0, 1), (1, 0)])

    def test_index_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            build_graph(2, [(0, 2)])

    def test_single_vertex_is_rejected(self):
        with pytest.raises(TrivialGraph):
            build_graph(1, [])

    def test_bad_vertex_count(self):
        with pytest.raises(BadParams):
            build_graph(0, [])

    def test_graph_is_hashable_and_comparable(self):
        assert build_graph(3, [(0, 1), (1, 2)]) == build_graph(3, [(1, 2), (1, 0)])
        assert len({generator('path', 3), build_graph(3, [(0, 1), (1, 2)])}) == 1
        assert generator('path', 3) != generator('star', 3)


class TestMatrix:
    def test_laplacian_of_k2(self, k2):
        assert np.array_equal(matrix(k2, MatrixKind.LAPLACIAN).entries, [[1, -1], [-1, 1]])

    def test_normalized_of_k2(self, k2):
        assert np.array_equal(matrix(k2, MatrixKind.NORMALIZED).entries, [[1, -1], [-1, 1]])

    def test_normalized_star_entry(self, star4):
        assert matrix(star4, MatrixKind.NORMALIZED)[0, 1] == pytest.approx(-1 / math.sqrt(3))

    def test_adjacency_entries(self, path4):
        A = matrix(path4, MatrixKind.ADJACENCY).entries
        assert A.sum() == 2 * path4.m
        assert set(np.unique(A)) <= {0.0, 1.0}

    def test_matrix_is_read_only(self, k2):
        with pytest.raises(ValueError):
            matrix(k2, MatrixKind.LAPLACIAN).entries[0, 0] = 5.0

    def test_trace_shift(self, star4):
        assert trace_shift(star4, MatrixKind.ADJACENCY) == 0
        assert trace_shift(star4, MatrixKind.LAPLACIAN) == Fraction(3, 2)
        assert trace_shift(star4, MatrixKind.NORMALIZED) == 1

    @settings(max_examples=40, deadline=None)
    @given(connected_graphs())
    def test_matrix_invariants(self, g):
        L = matrix(g, MatrixKind.LAPLACIAN).entries
        N = matrix(g, MatrixKind.NORMALIZED).entries
        assert sum(g.degrees) == 2 * g.m
        assert np.all(L.sum(axis=1) == 0)
        assert np.all(np.diag(N) == 1.0)
        for kind in MatrixKind:
            M = matrix(g, kind).entries
            assert np.array_equal(M, M.T)


class TestGenerator:
    def test_star_mean_degree(self):
        g = generator('star', 4)
        assert g.m == 3
        assert g.mean_degree == Fraction(3, 2)

    def test_star_has_center_zero(self):
        g = generator('star', 7)
        assert g.degrees[0] == 6
        assert all(d == 1 for d in g.degrees[1:])

    def test_path_endpoints(self):
        g = generator('path', 4)
        assert g.mean_degree == Fraction(3, 2)
        assert g.degrees[0] == g.degrees[3] == 1

    def test_cycle_closes_with_zero_and_last(self):
        assert (0, 4) in generator('cycle', 5).edges

    def test_complete(self):
        g = generator('complete', 3)
        assert g.degrees == (2, 2, 2)
        assert g.m == 3

    def test_complete_bipartite_ordering(self):
        g = generator('complete_bipartite', 2, 3)
        assert g.degrees == (3, 3, 2, 2, 2)

    @pytest.mark.parametrize("family,params", [
        ('cycle', (2,)),
        ('star', (1,)),
        ('complete_bipartite', (0, 3)),
        ('complete_bipartite', (2,)),
        ('wheel', (5,)),
        ('path', (2.5,)),
    ])
    def test_bad_params(self, family, params):
        with pytest.raises(BadParams):
            generator(family, *params)

    def test_generator_spec(self):
        assert parse_generator_spec('complete_bipartite:2,3') == generator('complete_bipartite', 2, 3)
        with pytest.raises(BadParams):
            parse_generator_spec('star')
        with pytest.raises(BadParams):
            parse_generator_spec('star:x')


class TestTriangles:
    def test_complete3(self, k3):
        assert [triangle_count(k3, v) for v in range(3)] == [1, 1, 1]

    def test_star_center(self):
        assert triangle_count(generator('star', 5), 0) == 0

    def test_complete4(self):
        assert triangle_count(generator('complete', 4), 2) == 3

    def test_bad_vertex(self, k3):
        with pytest.raises(IndexOutOfRange):
            triangle_count(k3, 3)


class TestEdgeList:
    def test_k2(self, k2):
        assert parse_edge_list("2\n0 1\n") == k2

    def test_star(self, star4):
        assert parse_edge_list("4\n0 1\n0 2\n0 3\n") == star4

    def test_duplicate(self):
        with pytest.raises(DuplicateEdge):
            parse_edge_list("3\n0 1\n0 1\n")

    def test_comments_and_blank_lines(self, k2):
        assert parse_edge_list("# a comment\n\n2\n# edges\n0 1\n\n") == k2

    def test_stream_input(self, k2):
        assert parse_edge_list(io.StringIO("2\n0 1\n")) == k2

    @pytest.mark.parametrize("text,line", [
        ("2\n0 1 2\n", 2),
        ("x\n0 1\n", 1),
        ("3\n0 1\n1 y\n", 3),
        ("2 3\n", 1),
    ])
    def test_parse_errors_carry_line_numbers(self, text, line):
        with pytest.raises(ParseError) as info:
            parse_edge_list(text)
        assert info.value.line_number == line

    def test_missing_count(self):
        with pytest.raises(ParseError):
            parse_edge_list("# nothing\n")

    def test_writer_sorts_edges(self):
        g = build_graph(3, [(2, 1), (1, 0)])
        assert format_edge_list(g) == "3\n0 1\n1 2\n"
        assert parse_edge_list(format_edge_list(g)) == g

    def test_fingerprint_depends_on_edges(self):
        assert graph_fingerprint(generator('path', 4)) != graph_fingerprint(generator('star', 4))
        assert len(graph_fingerprint(generator('path', 4))) == 64


class TestRandomConnected:
    def test_forced_k2(self):
        assert random_connected(2, 1.0, 123) == generator('complete', 2)

    def test_forced_k5(self):
        assert random_connected(5, 1.0, 9).m == 10

    def test_deterministic(self):
        assert random_connected(8, 0.3, 42).edges == random_connected(8, 0.3, 42).edges

    def test_gives_up(self):
        with pytest.raises(GiveUp):
            random_connected(10, 0.01, 1, max_rejections=3)

    @pytest.mark.parametrize("p", [0.0, -0.5, 1.5])
    def test_bad_probability(self, p):
        with pytest.raises(BadParams):
            random_connected(5, p, 1)

    def test_from_networkx_relabels(self):
        import networkx as nx
        G = nx.relabel_nodes(nx.path_graph(3), {0: 'a', 1: 'b', 2: 'c'})
        assert from_networkx(G) == generator('path', 3)

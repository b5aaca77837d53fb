import numpy as np
import pytest

from cyclerank import (
    DuplicateEdgeError,
    NegativeWeightError,
    ParameterError,
    VertexIndexError,
    VertexSet,
    WeightedDigraph,
    build_graph,
    induced_subgraph,
    remove_vertex_set,
    weighted_degrees,
)
from conftest import c4, directed_cycle, k3, p3, random_graph


class TestVertexSet:
    def test_sorted_dedup(self):
        assert VertexSet([3, 1, 1, 2]) == (1, 2, 3)

    def test_validates_range(self):
        with pytest.raises(VertexIndexError):
            VertexSet([0, 5], n=3)
        with pytest.raises(VertexIndexError):
            VertexSet([-1])

    def test_complement(self):
        assert VertexSet([1, 3]).complement(5) == (0, 2, 4)
        assert VertexSet([]).complement(2) == (0, 1)


class TestBuildGraph:
    def test_directed_three_cycle(self):
        g = build_graph(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)], directed=True)
        assert np.count_nonzero(g.weights) == 3
        assert g.weights[0, 1] == 1 and g.weights[2, 0] == 1

    def test_undirected_symmetrizes(self):
        g = build_graph(2, [(0, 1, 2.5)], directed=False)
        assert g.weights[0, 1] == 2.5 and g.weights[1, 0] == 2.5

    def test_negative_weight_rejected(self):
        with pytest.raises(NegativeWeightError):
            build_graph(2, [(0, 1, -1.0)])

    def test_negative_weight_override(self):
        g = build_graph(2, [(0, 1, -1.0)], allow_negative=True)
        assert g.weights[0, 1] == -1.0
        assert not g.nonnegative

    def test_duplicate_edge(self):
        with pytest.raises(DuplicateEdgeError):
            build_graph(2, [(0, 1, 1.0), (0, 1, 2.0)])

    def test_undirected_reverse_duplicate(self):
        with pytest.raises(DuplicateEdgeError):
            build_graph(2, [(0, 1, 1.0), (1, 0, 1.0)], directed=False)

    def test_index_out_of_range(self):
        with pytest.raises(VertexIndexError):
            build_graph(2, [(0, 2, 1.0)])

    def test_self_loops_kept(self):
        g = build_graph(2, [(0, 0, 3.0), (0, 1, 1.0)])
        assert g.weights[0, 0] == 3.0

    def test_labels(self):
        g = build_graph(2, [(0, 1, 1.0)], labels=["a", "b"])
        assert g.labels == ("a", "b")
        assert g.index_of("b") == 1

    def test_label_length_mismatch(self):
        with pytest.raises(ParameterError):
            build_graph(2, [(0, 1, 1.0)], labels=["a"])

    def test_asymmetric_undirected_rejected(self):
        w = np.array([[0.0, 1.0], [2.0, 0.0]])
        with pytest.raises(ParameterError):
            WeightedDigraph(w, directed=False)

    def test_weights_immutable(self):
        g = k3()
        with pytest.raises(ValueError):
            g.weights[0, 0] = 7.0


class TestViews:
    def test_remove_vertex_from_cycle(self):
        g = directed_cycle(3)
        sub = remove_vertex_set(g, [0])
        assert sub.n == 2
        assert np.count_nonzero(sub.weights) == 1
        assert sub.weights[0, 1] == 1.0  # original edge 1 -> 2, relabeled

    def test_remove_empty_set_is_identity(self):
        g = k3()
        sub = remove_vertex_set(g, [])
        assert np.array_equal(sub.weights, g.weights)

    def test_remove_to_isolated_vertex(self):
        sub = remove_vertex_set(k3(), [0, 1])
        assert sub.n == 1
        assert not sub.weights.any()

    def test_remove_everything_gives_empty_graph(self):
        sub = remove_vertex_set(k3(), [0, 1, 2])
        assert sub.n == 0

    def test_induced_edge(self):
        sub = induced_subgraph(k3(), [0, 1])
        assert sub.n == 2 and sub.weights[0, 1] == 1.0

    def test_induced_all_is_identity(self):
        g = k3()
        sub = induced_subgraph(g, [0, 1, 2])
        assert np.array_equal(sub.weights, g.weights)

    def test_induced_nonadjacent_pair(self):
        g = build_graph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)], directed=False)
        sub = induced_subgraph(g, [0, 2])
        assert not sub.weights.any()

    def test_labels_filtered(self):
        g = build_graph(3, [(0, 1, 1)], labels=["a", "b", "c"])
        assert remove_vertex_set(g, [1]).labels == ("a", "c")

    def test_partition_property(self):
        rng = np.random.default_rng(0)
        for _ in range(25):
            n = int(rng.integers(1, 9))
            g = random_graph(rng, n, directed=bool(rng.integers(2)))
            size = int(rng.integers(0, n + 1))
            s = VertexSet(rng.choice(n, size=size, replace=False))
            a = remove_vertex_set(g, s)
            b = induced_subgraph(g, s.complement(n))
            assert np.array_equal(a.weights, b.weights)

    def test_permutation_equivariance(self):
        # position i of the permuted graph holds original vertex perm[i];
        # removing positions s from it must match removing perm[s] from the
        # original, up to sorting the kept vertices back into id order
        rng = np.random.default_rng(1)
        for _ in range(20):
            n = int(rng.integers(3, 8))
            g = random_graph(rng, n)
            perm = rng.permutation(n)
            gp = WeightedDigraph(g.weights[np.ix_(perm, perm)])
            s_positions = VertexSet(rng.choice(n, size=2, replace=False))
            original_ids = VertexSet(perm[list(s_positions)])
            a = remove_vertex_set(g, original_ids)
            b = remove_vertex_set(gp, s_positions)
            order = np.argsort(perm[list(s_positions.complement(n))])
            assert np.array_equal(b.weights[np.ix_(order, order)], a.weights)

    def test_symmetry_preserved(self):
        g = c4()
        sub = remove_vertex_set(g, [0])
        assert np.array_equal(sub.weights, sub.weights.T)


class TestDegrees:
    def test_k3_totals(self):
        _, _, total = weighted_degrees(k3())
        assert np.allclose(total, [2, 2, 2])

    def test_directed_cycle(self):
        ind, out, total = weighted_degrees(directed_cycle(3))
        assert np.allclose(ind, 1) and np.allclose(out, 1)
        assert np.allclose(total, 2)

    def test_weighted_undirected_edge(self):
        g = build_graph(2, [(0, 1, 2.5)], directed=False)
        _, _, total = weighted_degrees(g)
        assert np.allclose(total, [2.5, 2.5])

    def test_p3(self):
        _, _, total = weighted_degrees(p3())
        assert np.allclose(total, [1, 2, 1])

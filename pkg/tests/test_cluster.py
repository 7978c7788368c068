from __future__ import annotations

import numpy as np
import pytest

from clubench.cluster import (
    AgglomerativeClusterer,
    KMeansClusterer,
    KMeansConfig,
    _lloyd,
    agglomerative,
    agglomerative_tree,
    fit_predict_many,
    kmeans,
    relabel_first_occurrence,
)
from clubench.errors import BadK, InvariantError, NonFinite
from clubench.scoring import PartitionSet

from oracles import kmeans_exhaustive, linkage_naive, single_linkage_naive

THREE_BLOBS_12 = np.array(
    [
        [0.0, 0.0], [0.3, 0.1], [-0.2, 0.2], [0.1, -0.3],
        [5.0, 5.0], [5.2, 4.9], [4.8, 5.1], [5.1, 5.3],
        [-4.0, 6.0], [-4.2, 6.2], [-3.9, 5.8], [-4.1, 6.1],
    ]
)


def chain_points() -> np.ndarray:
    return np.array([[0.0, 0], [1, 0], [2, 0], [10, 0], [11, 0], [12, 0]])


class TestRelabel:
    def test_first_occurrence(self):
        assert relabel_first_occurrence(np.array([7, 7, 3, 7, 9, 3])).tolist() == [1, 1, 2, 1, 3, 2]

    def test_already_canonical(self):
        assert relabel_first_occurrence(np.array([1, 2, 3])).tolist() == [1, 2, 3]


class TestKMeans:
    def test_separated_pairs(self):
        X = np.array([[0.0, 0], [0, 1], [10, 10], [10, 11]])
        labels = kmeans(X, 2)
        assert labels.tolist() == [1, 1, 2, 2]

    def test_k_equals_n(self):
        X = np.array([[0.0, 0], [3, 0], [0, 3], [3, 3]])
        labels = kmeans(X, 4)
        assert sorted(labels.tolist()) == [1, 2, 3, 4]
        assert labels[0] == 1  # first-occurrence numbering

    def test_matches_exhaustive_optimum(self):
        labels = kmeans(THREE_BLOBS_12, 3, KMeansConfig(seed=42))
        best_labels, best_inertia = kmeans_exhaustive(THREE_BLOBS_12, 3)
        assert labels.tolist() == best_labels.tolist()

    def test_bad_k(self):
        X = np.array([[0.0, 0], [1, 1], [2, 2]])
        with pytest.raises(BadK):
            kmeans(X, 1)
        with pytest.raises(BadK):
            kmeans(X, 4)

    def test_non_finite(self):
        with pytest.raises(NonFinite):
            kmeans(np.array([[0.0, np.nan], [1, 1]]), 2)

    def test_deterministic_given_seed(self):
        rng = np.random.default_rng(5)
        X = rng.normal(size=(60, 3))
        a = kmeans(X, 4, KMeansConfig(seed=9))
        b = kmeans(X, 4, KMeansConfig(seed=9))
        assert np.array_equal(a, b)

    def test_labels_contiguous(self, rng):
        for _ in range(10):
            X = rng.normal(size=(40, 2))
            k = int(rng.integers(2, 6))
            labels = kmeans(X, k, KMeansConfig(seed=1, n_init=2))
            assert labels.min() == 1 and labels.max() == k
            assert np.unique(labels).size == k
            assert labels[0] == 1

    def test_inertia_monotone_within_restart(self, rng):
        for seed in range(5):
            X = rng.normal(size=(80, 2))
            gen = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, 0])))
            _, _, history = _lloyd(X, 5, gen, max_iter=300, tol=0.0)
            assert all(a >= b - 1e-12 for a, b in zip(history, history[1:]))

    def test_translation_invariance(self):
        rng = np.random.default_rng(3)
        X = np.vstack([rng.normal(c, 0.4, size=(15, 2)) for c in [(0, 0), (4, 1), (2, 5)]])
        base = kmeans(X, 3, KMeansConfig(seed=11))
        shifted = kmeans(X + np.array([100.0, -50.0]), 3, KMeansConfig(seed=11))
        assert np.array_equal(base, shifted)

    def test_empty_cluster_repair_duplicates(self):
        # 5 distinct positions, heavy duplication: forces repair paths
        X = np.array([[0.0, 0]] * 4 + [[1.0, 0]] * 4 + [[5, 5], [6, 6]])
        labels = kmeans(X, 4, KMeansConfig(seed=0, n_init=3))
        assert labels.min() == 1 and labels.max() == 4
        assert np.unique(labels).size == 4

    def test_config_validation(self):
        with pytest.raises(InvariantError):
            KMeansConfig(n_init=0)
        with pytest.raises(InvariantError):
            KMeansConfig(tol=-1.0)
        with pytest.raises(InvariantError):
            KMeansConfig(seed=-1)


class TestAgglomerative:
    def test_single_chain(self):
        labels = agglomerative(chain_points(), "single", 2)
        assert labels.tolist() == [1, 1, 1, 2, 2, 2]

    def test_k_equals_n_singletons(self):
        labels = agglomerative(chain_points(), "average", 6)
        assert labels.tolist() == [1, 2, 3, 4, 5, 6]

    def test_complete_chain(self):
        labels = agglomerative(chain_points(), "complete", 2)
        assert labels.tolist() == [1, 1, 1, 2, 2, 2]

    def test_single_matches_naive(self, rng):
        for _ in range(12):
            n = int(rng.integers(5, 26))
            X = rng.normal(size=(n, int(rng.integers(1, 4))))
            tree = agglomerative_tree(X, "single")
            for k in (2, 3, 4):
                if k > n:
                    continue
                assert tree.cut(k).tolist() == single_linkage_naive(X, k).tolist()

    def test_single_matches_stored_oracle(self, rng):
        from oracles import cut_merges, single_linkage_stored_merges

        for _ in range(10):
            n = int(rng.integers(10, 80))
            X = rng.normal(size=(n, 2))
            tree = agglomerative_tree(X, "single")
            merges = single_linkage_stored_merges(X)
            for k in (2, 3, 5):
                assert tree.cut(k).tolist() == cut_merges(n, merges, k).tolist()

    @pytest.mark.parametrize("linkage", ["complete", "average"])
    def test_stored_distance_matches_naive(self, linkage, rng):
        for _ in range(12):
            n = int(rng.integers(5, 30))
            X = rng.normal(size=(n, 2))
            tree = agglomerative_tree(X, linkage)
            for k in (2, 3):
                assert tree.cut(k).tolist() == linkage_naive(X, linkage, k).tolist()

    def test_tie_founder_rule(self):
        # d(0,1) == d(0,2) == 1: founder rule merges (0,1) first
        X = np.array([[0.0, 0], [1, 0], [0, 1]])
        for linkage in ("single", "complete", "average"):
            tree = agglomerative_tree(X, linkage)
            assert tree.merges[0].tolist() == [0, 1]
            assert tree.cut(2).tolist() == [1, 1, 2]

    def test_single_refinement_property(self, rng):
        X = rng.normal(size=(40, 2))
        tree = agglomerative_tree(X, "single")
        for k in (2, 3, 4, 5):
            coarse = tree.cut(k)
            fine = tree.cut(k + 1)
            # every fine cluster sits inside one coarse cluster
            for lab in np.unique(fine):
                assert np.unique(coarse[fine == lab]).size == 1

    def test_bad_k(self):
        with pytest.raises(BadK):
            agglomerative(chain_points(), "single", 1)
        with pytest.raises(BadK):
            agglomerative(chain_points(), "single", 7)

    def test_bad_linkage(self):
        with pytest.raises(InvariantError):
            agglomerative(chain_points(), "ward", 2)


class TestFitPredictMany:
    def test_kmeans_keys(self):
        parts = fit_predict_many(KMeansClusterer(KMeansConfig(seed=1)), THREE_BLOBS_12, [3, 4])
        assert parts.ks() == [3, 4]
        assert parts.n == 12

    def test_single_tree_nested(self):
        parts = fit_predict_many(AgglomerativeClusterer("single"), chain_points(), [2, 3])
        coarse, fine = parts[2], parts[3]
        for lab in np.unique(fine):
            assert np.unique(coarse[fine == lab]).size == 1

    def test_plain_callable(self):
        def stupid(data, k):
            labels = np.arange(len(data)) % k + 1
            return labels

        parts = fit_predict_many(stupid, chain_points(), [2])
        assert parts[2].tolist() == [1, 2, 1, 2, 1, 2]

    def test_duplicate_ks_rejected(self):
        with pytest.raises(InvariantError):
            fit_predict_many(KMeansClusterer(), chain_points(), [2, 2])

    def test_empty_ks_rejected(self):
        with pytest.raises(InvariantError):
            fit_predict_many(KMeansClusterer(), chain_points(), [])

    def test_bad_k_propagates(self):
        with pytest.raises(BadK):
            fit_predict_many(KMeansClusterer(), chain_points(), [2, 99])

    def test_returns_partition_set(self):
        parts = fit_predict_many(AgglomerativeClusterer("average"), chain_points(), [2])
        assert isinstance(parts, PartitionSet)

"""Tests for pairwise journal similarity."""

import time

import numpy as np
import pytest

from citediss import (
    SimilarityOptions, aggregate_counts, normalize_profiles, pairwise_similarity,
    similarity_lookup,
)
from conftest import oracle_similarity, records_from_counts


def _matrix(counts, **options):
    counts = np.asarray(counts)
    n_citing, n_cited = counts.shape
    records = records_from_counts(counts, offset=n_citing)
    profiles = normalize_profiles(aggregate_counts(records, n_citing + n_cited))
    return pairwise_similarity(profiles, SimilarityOptions(**options))


def _dense(matrix):
    return np.vstack([matrix.row(g) for g in range(matrix.n)])


# citing journals 0, 1; cited journals g = 2, h = 3
EXAMPLE = [[2, 1],
           [0, 1]]


def test_half_overlap():
    matrix = _matrix(EXAMPLE)
    assert similarity_lookup(matrix, 2, 3) == pytest.approx(0.5, abs=1e-12)
    assert similarity_lookup(matrix, 3, 2) == similarity_lookup(matrix, 2, 3)


def test_diagonal_and_empty_profiles():
    matrix = _matrix(EXAMPLE)
    for g in range(matrix.n):
        assert matrix.lookup(g, g) == 1.0
    # citing journals 0 and 1 receive no citations
    assert matrix.lookup(0, 1) == 0.0
    assert matrix.lookup(0, 2) == 0.0
    assert matrix.diagnostics.empty_profiles == (0, 1)
    assert matrix.diagnostics.undefined_pairs == 5


def test_identical_and_scaled_profiles():
    matrix = _matrix([[1, 2], [3, 6]])
    assert matrix.lookup(2, 3) == pytest.approx(1.0, abs=1e-12)


def test_disjoint_profiles_not_stored():
    matrix = _matrix([[4, 0], [0, 7]])
    assert matrix.lookup(2, 3) == 0.0
    assert matrix.nnz == 0


def test_out_of_range_lookup():
    matrix = _matrix(EXAMPLE)
    with pytest.raises(IndexError):
        matrix.lookup(0, 4)
    with pytest.raises(IndexError):
        matrix.row(-1)


def test_upper_entries_are_strict_upper_triangle():
    rng = np.random.default_rng(3)
    matrix = _matrix(rng.integers(0, 4, size=(6, 12)))
    g, h, s = matrix.upper_entries()
    assert (g < h).all()
    assert ((s > 0) & (s <= 1)).all()
    assert len(g) == matrix.nnz


def test_matches_oracle_on_random_instances():
    rng = np.random.default_rng(2024)
    start = time.perf_counter()
    for _ in range(100):
        n_citing = int(rng.integers(1, 26))
        n_cited = int(rng.integers(1, 41))
        counts = rng.integers(0, 11, size=(n_citing, n_cited))
        counts[rng.random(counts.shape) < 0.5] = 0
        matrix = _matrix(counts)
        expected = oracle_similarity(counts)
        got = _dense(matrix)[n_citing:, n_citing:]
        np.testing.assert_allclose(got, expected, rtol=0, atol=1e-12)
        np.testing.assert_array_equal(got, got.T)
    assert time.perf_counter() - start < 10


def test_min_overlap_identity():
    rng = np.random.default_rng(11)
    counts = rng.integers(0, 6, size=(15, 30))
    matrix = _matrix(counts)
    shares = counts / np.maximum(counts.sum(axis=0), 1)
    got = _dense(matrix)[15:, 15:]
    for g in range(30):
        for h in range(30):
            if g != h and counts[:, g].sum() and counts[:, h].sum():
                expected = np.minimum(shares[:, g], shares[:, h]).sum()
                assert abs(got[g, h] - expected) <= 1e-12


def test_thread_and_block_independence():
    rng = np.random.default_rng(5)
    counts = rng.integers(0, 5, size=(20, 60))
    reference = _matrix(counts).upper
    for threads, block_size in ((4, 256), (1, 7), (3, 7)):
        other = _matrix(counts, threads=threads, block_size=block_size).upper
        np.testing.assert_array_equal(other.indptr, reference.indptr)
        np.testing.assert_array_equal(other.indices, reference.indices)
        np.testing.assert_array_equal(other.data, reference.data)


def test_sparsity_floor_drops_small_values():
    rng = np.random.default_rng(8)
    counts = rng.integers(0, 5, size=(10, 25))
    full = _matrix(counts)
    floored = _matrix(counts, sparsity_floor=0.3)
    _, _, s = floored.upper_entries()
    assert (s >= 0.3).all()
    g, h, s_full = full.upper_entries()
    for a, b, value in zip(g, h, s_full):
        expected = value if value >= 0.3 else 0.0
        assert floored.lookup(int(a), int(b)) == expected


def test_value_at_floor_is_kept():
    assert _matrix(EXAMPLE, sparsity_floor=0.5).lookup(2, 3) == 0.5
    assert _matrix(EXAMPLE, sparsity_floor=0.6).lookup(2, 3) == 0.0


def test_dense_storage_matches_sparse(tmp_path):
    rng = np.random.default_rng(13)
    counts = rng.integers(0, 5, size=(12, 30))
    sparse_matrix = _matrix(counts)
    path = tmp_path / "similarity.bin"
    dense_matrix = _matrix(counts, storage="dense", dense_path=str(path))
    assert dense_matrix.storage == "dense"
    assert path.exists()
    np.testing.assert_allclose(_dense(dense_matrix), _dense(sparse_matrix), atol=1e-6)
    dense = _dense(dense_matrix)
    np.testing.assert_array_equal(dense, dense.T)
    assert dense_matrix.lookup(12, 12) == 1.0


def test_dense_storage_across_blocks(tmp_path):
    rng = np.random.default_rng(21)
    counts = rng.integers(0, 3, size=(30, 300))
    counts[rng.random(counts.shape) < 0.7] = 0
    sparse_matrix = _matrix(counts)
    dense_matrix = _matrix(counts, storage="dense", dense_path=str(tmp_path / "s.bin"))
    np.testing.assert_allclose(_dense(dense_matrix), _dense(sparse_matrix), atol=1e-6)


def test_empty_universe():
    matrix = pairwise_similarity([])
    assert matrix.n == 0
    assert matrix.nnz == 0


def test_options_validation():
    with pytest.raises(ValueError):
        SimilarityOptions(storage="triangular")
    with pytest.raises(ValueError):
        SimilarityOptions(sparsity_floor=1.0)
    with pytest.raises(ValueError):
        SimilarityOptions(threads=0)

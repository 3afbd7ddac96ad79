"""Tests for count aggregation and share profiles."""

import numpy as np
import pytest

from citediss import CitationRecord, aggregate_counts, normalize_profiles


def _records(pairs):
    return [CitationRecord("a", 2010, j, g) for j, g in pairs]


def test_aggregate_counts():
    counts = aggregate_counts(_records([(0, 2), (0, 2), (0, 3), (1, 3)]), 4)
    assert counts.count(0, 2) == 2
    assert counts.count(1, 2) == 0
    assert counts.total == 4
    assert counts.n_citing == 2
    assert counts.n_cited == 2
    assert counts.inbound_totals().tolist() == [0, 0, 2, 2]


def test_empty_records():
    counts = aggregate_counts([], 3)
    assert counts.total == 0
    assert counts.inbound_totals().tolist() == [0, 0, 0]


def test_profiles_sum_to_one():
    counts = aggregate_counts(_records([(0, 2), (0, 2), (0, 3), (1, 3)]), 4)
    profiles = normalize_profiles(counts)
    assert [p.cited_journal for p in profiles] == [0, 1, 2, 3]
    assert profiles[0].empty and profiles[1].empty
    assert profiles[2].citing.tolist() == [0]
    assert profiles[2].shares.tolist() == [1.0]
    assert profiles[3].citing.tolist() == [0, 1]
    assert profiles[3].shares.tolist() == [0.5, 0.5]
    for p in profiles[2:]:
        assert p.shares.sum() == pytest.approx(1.0, abs=1e-12)
        assert p.total_inbound == 2


def test_profiles_are_scale_invariant():
    small = normalize_profiles(aggregate_counts(_records([(0, 2), (1, 2), (1, 2)]), 3))
    large = normalize_profiles(aggregate_counts(_records([(0, 2)] * 3 + [(1, 2)] * 6), 3))
    np.testing.assert_allclose(small[2].shares, large[2].shares, atol=1e-15)

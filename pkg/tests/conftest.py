"""Shared fixtures and brute-force oracles."""

from pathlib import Path

import numpy as np
import pytest

from citediss import (
    CitationRecord, aggregate_counts, normalize_profiles, pairwise_similarity,
    parse_citations,
)
from citediss._synthetic import SyntheticSpec, synthetic_corpus

DATA_DIR = Path(__file__).parent / "data"

HEADER = "pub_year,article_id,citing_journal,cited_journal"


@pytest.fixture
def write_citations(tmp_path):
    """Write citation rows (tuples or raw lines) to a CSV and return its path."""
    def write(rows, name="citations.csv", header=HEADER):
        lines = [header] if header is not None else []
        for row in rows:
            lines.append(row if isinstance(row, str) else ",".join(str(v) for v in row))
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path
    return write


@pytest.fixture
def write_categories(tmp_path):
    def write(pairs, name="categories.csv"):
        path = tmp_path / name
        path.write_text("journal,category\n" + "".join(f"{j},{c}\n" for j, c in pairs),
                        encoding="utf-8")
        return path
    return write


@pytest.fixture(scope="session")
def synthetic_files(tmp_path_factory):
    """Citations and categories of the default synthetic corpus."""
    out = tmp_path_factory.mktemp("synthetic")
    return synthetic_corpus(SyntheticSpec()).write(out)


@pytest.fixture(scope="session")
def synthetic_analysis(synthetic_files):
    """(registry, corpus, records, counts, matrix) for the synthetic corpus."""
    registry, corpus, records = parse_citations(synthetic_files[0])
    counts = aggregate_counts(records, len(registry))
    matrix = pairwise_similarity(normalize_profiles(counts))
    return registry, corpus, records, counts, matrix


def records_from_counts(counts: np.ndarray, offset: int = 0):
    """CitationRecords for a citing x cited count array.

    Citing journal j gets id j; cited journal g gets id offset + g.
    """
    records = []
    for j, g in zip(*np.nonzero(counts)):
        for _ in range(int(counts[j, g])):
            records.append(CitationRecord("x", 2010, int(j), int(offset + g)))
    return records


def oracle_similarity(counts: np.ndarray) -> np.ndarray:
    """S = 1 - 1/2 * sum_j |p_jg - p_jh| evaluated pair by pair.

    ``counts`` is citing x cited. Pairs with an empty profile are 0 off the
    diagonal; the diagonal is 1.
    """
    counts = np.asarray(counts, dtype=np.float64)
    n = counts.shape[1]
    totals = counts.sum(axis=0)
    out = np.zeros((n, n))
    for g in range(n):
        for h in range(n):
            if g == h:
                out[g, h] = 1.0
            elif totals[g] > 0 and totals[h] > 0:
                pg = counts[:, g] / totals[g]
                ph = counts[:, h] / totals[h]
                out[g, h] = 1.0 - 0.5 * np.abs(pg - ph).sum()
    return out


def oracle_article_dissimilarity(similarity: np.ndarray, published: int, cited) -> float:
    """1 - mean over reference occurrences of S(published, cited)."""
    return 1.0 - sum(similarity[published, h] for h in cited) / len(cited)

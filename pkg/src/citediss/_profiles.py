"""Citation count matrix and per-cited-journal share profiles."""

import logging
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np
from scipy import sparse

from citediss._types import CitationRecord

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CountMatrix:
    """Sparse counts c_jg: rows are citing journals, columns cited journals.

    Both axes use the registry id space. Only positive counts are stored.
    """
    cells: sparse.csc_matrix

    @property
    def n_journals(self) -> int:
        return self.cells.shape[1]

    @property
    def n_citing(self) -> int:
        return int(np.count_nonzero(np.diff(self.cells.tocsr().indptr)))

    @property
    def n_cited(self) -> int:
        return int(np.count_nonzero(np.diff(self.cells.indptr)))

    @property
    def total(self) -> int:
        return int(self.cells.data.sum())

    def inbound_totals(self) -> np.ndarray:
        """Citations received per cited journal."""
        return np.asarray(self.cells.sum(axis=0)).ravel().astype(np.int64)

    def count(self, citing: int, cited: int) -> int:
        return int(self.cells[citing, cited])


@dataclass(frozen=True, eq=False)
class JournalProfile:
    """Share of a cited journal's inbound citations per citing journal."""
    cited_journal: int
    citing: np.ndarray          # ascending citing journal ids, int64
    shares: np.ndarray          # p_jg for each id in `citing`, float64
    total_inbound: int

    @property
    def empty(self) -> bool:
        return self.total_inbound == 0


def aggregate_counts(records: Sequence[CitationRecord], n_journals: int = None) -> CountMatrix:
    """
    Count records per (citing journal, cited journal) cell.

    Args:
        records: Citation records resolved against one registry.
        n_journals: Registry size. Defaults to the largest id seen + 1.
    """
    citing = np.fromiter((r.citing_journal for r in records), dtype=np.int64,
                         count=len(records))
    cited = np.fromiter((r.cited_journal for r in records), dtype=np.int64,
                        count=len(records))
    if n_journals is None:
        n_journals = int(max(citing.max(initial=-1), cited.max(initial=-1))) + 1
    cells = sparse.coo_matrix(
        (np.ones(len(records), dtype=np.int64), (citing, cited)),
        shape=(n_journals, n_journals),
    ).tocsc()
    cells.sum_duplicates()
    cells.sort_indices()
    return CountMatrix(cells)


def normalize_profiles(counts: CountMatrix) -> List[JournalProfile]:
    """One profile per journal id; zero columns give empty profiles."""
    cells = counts.cells
    profiles = []
    n_empty = 0
    for g in range(cells.shape[1]):
        lo, hi = cells.indptr[g], cells.indptr[g + 1]
        citing = cells.indices[lo:hi].astype(np.int64)
        column = cells.data[lo:hi]
        total = int(column.sum())
        if total == 0:
            n_empty += 1
            profiles.append(JournalProfile(g, np.empty(0, np.int64), np.empty(0), 0))
            continue
        profiles.append(JournalProfile(g, citing, column / total, total))
    if n_empty:
        logger.info("%d of %d journals receive no citations (empty profiles)",
                    n_empty, len(profiles))
    return profiles

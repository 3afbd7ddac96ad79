"""
Pairwise similarity between cited journals.

    S_gh = 1 - 1/2 * sum_j |p_jg - p_jh|

where p_jg is the share of journal g's inbound citations coming from
citing journal j. Both share vectors sum to 1, so S_gh also equals
sum_j min(p_jg, p_jh), which is what is accumulated here: an inverted
index citing journal -> (cited journal, share) yields every co-cited
pair, and pairs that never share a citing journal stay implicit zeros.

The cited-journal axis is cut into fixed-size blocks. Each block owns the
pairs (g, h) with g in the block and g < h, and sums each pair's
contributions in ascending citing-journal order, so the result does not
depend on how many threads process the blocks.
"""

import logging
import tempfile
import threading
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse

from citediss._matrix_io import create_dense, open_dense
from citediss._parallel import map_ordered
from citediss._profiles import JournalProfile

logger = logging.getLogger(__name__)

STORAGE_MODES = ("sparse", "dense")
BLOCK_SIZE = 256


@dataclass(frozen=True)
class SimilarityOptions:
    storage: str = "sparse"
    sparsity_floor: float = 0.0       # entries below floor are not stored
    threads: int = 1
    dense_path: Optional[str] = None  # dense mode target; temp file if None
    block_size: int = BLOCK_SIZE

    def __post_init__(self):
        if self.storage not in STORAGE_MODES:
            raise ValueError(f"storage must be one of {STORAGE_MODES}, got {self.storage!r}")
        if not 0.0 <= self.sparsity_floor < 1.0:
            raise ValueError(f"sparsity_floor must be in [0, 1), got {self.sparsity_floor}")
        if self.threads < 1 or self.block_size < 1:
            raise ValueError("threads and block_size must be >= 1")


@dataclass(frozen=True)
class SimilarityDiagnostics:
    """Journals whose similarity to others is undefined (0/0) and set to 0."""
    empty_profiles: Tuple[int, ...] = ()
    undefined_pairs: int = 0


class SimilarityMatrix:
    """Symmetric S over n journals with an implicit unit diagonal.

    Sparse mode keeps the strict upper triangle in a CSR matrix (float64);
    dense mode reads a file-backed float32 square.
    """

    def __init__(self, n: int, upper: sparse.csr_matrix = None,
                 dense: np.ndarray = None, dense_path: str = None,
                 diagnostics: SimilarityDiagnostics = None):
        if (upper is None) == (dense is None):
            raise ValueError("exactly one of upper or dense is required")
        self.n = n
        self._upper = upper
        self._dense = dense
        self.dense_path = dense_path
        self.diagnostics = diagnostics or SimilarityDiagnostics()
        self._symmetric = None
        self._lock = threading.Lock()

    @classmethod
    def from_dense_file(cls, path, diagnostics: SimilarityDiagnostics = None):
        dense = open_dense(path)
        return cls(dense.shape[0], dense=dense, dense_path=str(path),
                   diagnostics=diagnostics)

    @property
    def storage(self) -> str:
        return "sparse" if self._upper is not None else "dense"

    @property
    def upper(self) -> sparse.csr_matrix:
        if self._upper is None:
            raise AttributeError("dense matrices have no sparse upper triangle")
        return self._upper

    def _check(self, journal_id: int):
        if not 0 <= journal_id < self.n:
            raise IndexError(f"journal id {journal_id} out of range [0, {self.n})")

    def lookup(self, g: int, h: int) -> float:
        self._check(g)
        self._check(h)
        if g == h:
            return 1.0
        if self._dense is not None:
            return float(self._dense[g, h])
        a, b = (g, h) if g < h else (h, g)
        return float(self._upper[a, b])

    def row(self, g: int) -> np.ndarray:
        """All similarities of journal g as a float64 vector."""
        self._check(g)
        if self._dense is not None:
            values = np.array(self._dense[g], dtype=np.float64)
        else:
            values = self._symmetric_csr()[g].toarray().ravel()
        values[g] = 1.0
        return values

    def _symmetric_csr(self) -> sparse.csr_matrix:
        with self._lock:
            if self._symmetric is None:
                sym = (self._upper + self._upper.T).tocsr()
                sym.sort_indices()
                self._symmetric = sym
            return self._symmetric

    def upper_entries(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(g, h, S_gh) for stored nonzeros with g < h, row-major order."""
        if self._upper is not None:
            coo = self._upper.tocoo()
            return (coo.row.astype(np.int64), coo.col.astype(np.int64),
                    coo.data.astype(np.float64))
        rows, cols, vals = [], [], []
        for g in range(self.n):
            tail = np.asarray(self._dense[g, g + 1:], dtype=np.float64)
            nz = np.flatnonzero(tail)
            rows.append(np.full(len(nz), g, dtype=np.int64))
            cols.append(nz + g + 1)
            vals.append(tail[nz])
        if not rows:
            return np.empty(0, np.int64), np.empty(0, np.int64), np.empty(0)
        return np.concatenate(rows), np.concatenate(cols), np.concatenate(vals)

    @property
    def nnz(self) -> int:
        """Stored off-diagonal pairs."""
        return len(self.upper_entries()[0]) if self._dense is not None else self._upper.nnz


def similarity_lookup(matrix: SimilarityMatrix, g: int, h: int) -> float:
    """S_gh with symmetry, unit diagonal and implicit zeros."""
    return matrix.lookup(g, h)


def _share_index(profiles: Sequence[JournalProfile]) -> sparse.csr_matrix:
    """Inverted index: row j lists (cited journal, share) sorted by cited id."""
    n = len(profiles)
    citing = [p.citing for p in profiles if not p.empty]
    if not citing:
        return sparse.csr_matrix((n, n), dtype=np.float64)
    rows = np.concatenate(citing)
    cols = np.concatenate([np.full(len(p.citing), p.cited_journal, dtype=np.int64)
                           for p in profiles if not p.empty])
    data = np.concatenate([p.shares for p in profiles if not p.empty])
    if rows.max() >= n:
        raise ValueError("profiles reference citing journals outside the id space")
    index = sparse.csr_matrix((data, (rows, cols)), shape=(n, n))
    index.sort_indices()
    return index


def _block_pairs(index: sparse.csr_matrix, active: np.ndarray, lo: int, hi: int,
                 floor: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Summed min-share contributions for pairs (g, h), lo <= g < hi, g < h.

    Returns per-row entry counts, column ids and values, ordered by
    (g, h).
    """
    n = index.shape[1]
    keys_parts: List[np.ndarray] = []
    vals_parts: List[np.ndarray] = []
    for j in active:
        start, stop = index.indptr[j], index.indptr[j + 1]
        ids = index.indices[start:stop]
        shares = index.data[start:stop]
        i0, i1 = np.searchsorted(ids, (lo, hi))
        if i0 == i1:
            continue
        pa = np.arange(i0, i1)
        partners = len(ids) - pa - 1
        total = int(partners.sum())
        if total == 0:
            continue
        a = np.repeat(pa, partners)
        b = np.arange(total) - np.repeat(np.cumsum(partners) - partners, partners) + a + 1
        keys_parts.append((ids[a].astype(np.int64) - lo) * n + ids[b])
        vals_parts.append(np.minimum(shares[a], shares[b]))

    if not keys_parts:
        return np.zeros(hi - lo, np.int64), np.empty(0, np.int32), np.empty(0)

    keys = np.concatenate(keys_parts)
    vals = np.concatenate(vals_parts)
    # stable: equal keys keep ascending citing-journal order
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    vals = vals[order]
    starts = np.flatnonzero(np.concatenate(([True], keys[1:] != keys[:-1])))
    sums = np.add.reduceat(vals, starts)
    np.minimum(sums, 1.0, out=sums)
    keys = keys[starts]
    keep = (sums > 0) & (sums >= floor)
    keys, sums = keys[keep], sums[keep]
    row_nnz = np.bincount(keys // n, minlength=hi - lo).astype(np.int64)
    return row_nnz, (keys % n).astype(np.int32), sums


def profile_diagnostics(profiles: Sequence[JournalProfile]) -> SimilarityDiagnostics:
    empty = tuple(p.cited_journal for p in profiles if p.empty)
    k, n = len(empty), len(profiles)
    undefined = k * (n - k) + k * (k - 1) // 2
    if empty:
        logger.warning("%d journals have empty profiles; %d pairs set to 0 by convention",
                       k, undefined)
    return SimilarityDiagnostics(empty, undefined)


def pairwise_similarity(profiles: Sequence[JournalProfile],
                        options: SimilarityOptions = None) -> SimilarityMatrix:
    """
    Compute S_gh for every pair of journals.

    Args:
        profiles: One profile per journal id, as from normalize_profiles().
        options: Storage mode, sparsity floor, thread count.

    Returns:
        SimilarityMatrix with S_gg = 1, symmetric, values in [0, 1].
        Pairs involving an empty profile are 0 off the diagonal and are
        counted in ``matrix.diagnostics``.
    """
    options = options or SimilarityOptions()
    n = len(profiles)
    for i, p in enumerate(profiles):
        if p.cited_journal != i:
            raise ValueError(f"profile {i} is for journal {p.cited_journal}; "
                             "expected one profile per id in order")
    diagnostics = profile_diagnostics(profiles)
    index = _share_index(profiles)
    active = np.flatnonzero(np.diff(index.indptr))
    blocks = [(lo, min(lo + options.block_size, n))
              for lo in range(0, n, options.block_size)]
    logger.info("similarity: %d journals, %d citing journals, %d blocks, %d threads",
                n, len(active), len(blocks), options.threads)

    parts = map_ordered(
        lambda block: _block_pairs(index, active, block[0], block[1],
                                   options.sparsity_floor),
        blocks, threads=options.threads, desc="Similarity blocks",
    )
    row_nnz = np.concatenate([p[0] for p in parts]) if parts else np.empty(0, np.int64)
    indptr = np.concatenate(([0], np.cumsum(row_nnz))).astype(np.int64)
    indices = np.concatenate([p[1] for p in parts]) if parts else np.empty(0, np.int32)
    data = np.concatenate([p[2] for p in parts]) if parts else np.empty(0)
    upper = sparse.csr_matrix((data, indices, indptr), shape=(n, n))
    logger.info("similarity: %d nonzero pairs stored", upper.nnz)

    if options.storage == "sparse":
        return SimilarityMatrix(n, upper=upper, diagnostics=diagnostics)
    return _to_dense(upper, options.dense_path, diagnostics)


def _to_dense(upper: sparse.csr_matrix, path: Optional[str],
              diagnostics: SimilarityDiagnostics) -> SimilarityMatrix:
    n = upper.shape[0]
    if path is None:
        handle = tempfile.NamedTemporaryFile(prefix="similarity_", suffix=".bin",
                                             delete=False)
        handle.close()
        path = handle.name
        logger.info("dense similarity file: %s", path)
    dense = create_dense(path, n)
    for g in range(n):
        lo, hi = upper.indptr[g], upper.indptr[g + 1]
        dense[g, upper.indices[lo:hi]] = upper.data[lo:hi]
        dense[g, g] = 1.0
    for lo in range(0, n, BLOCK_SIZE):
        hi = min(lo + BLOCK_SIZE, n)
        dense[lo:hi, :lo] = dense[:lo, lo:hi].T
        square = np.array(dense[lo:hi, lo:hi])
        dense[lo:hi, lo:hi] = np.triu(square) + np.triu(square, 1).T
    if n:
        dense.flush()
    del dense
    return SimilarityMatrix.from_dense_file(path, diagnostics)

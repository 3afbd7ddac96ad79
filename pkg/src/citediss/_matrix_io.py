"""Similarity matrix files: text export, dense binary, npz cache.

Dense layout: 8-byte little-endian uint64 dimension n, then n*n
little-endian float32 values, row-major, full symmetric square.
"""

import os

import numpy as np
import pandas as pd
from scipy import sparse

DENSE_HEADER_BYTES = 8
DENSE_DTYPE = np.dtype("<f4")
SIMILARITY_COLUMNS = ["g_id", "h_id", "similarity"]


def create_dense(path, n: int) -> np.memmap:
    """Write the header and return a writable n x n memmap."""
    with open(path, "wb") as f:
        f.write(np.array([n], dtype="<u8").tobytes())
    if n == 0:
        return np.zeros((0, 0), dtype=DENSE_DTYPE)
    # r+ keeps the header and grows the file to fit
    return np.memmap(path, dtype=DENSE_DTYPE, mode="r+",
                     offset=DENSE_HEADER_BYTES, shape=(n, n))


def read_dense_dimension(path) -> int:
    with open(path, "rb") as f:
        header = f.read(DENSE_HEADER_BYTES)
    if len(header) != DENSE_HEADER_BYTES:
        raise IOError(f"{path}: truncated dense matrix header")
    n = int(np.frombuffer(header, dtype="<u8")[0])
    expected = DENSE_HEADER_BYTES + n * n * DENSE_DTYPE.itemsize
    if os.path.getsize(path) != expected:
        raise IOError(f"{path}: size does not match dimension {n}")
    return n


def open_dense(path) -> np.memmap:
    """Read-only view of a dense matrix file."""
    n = read_dense_dimension(path)
    if n == 0:
        return np.zeros((0, 0), dtype=DENSE_DTYPE)
    return np.memmap(path, dtype=DENSE_DTYPE, mode="r",
                     offset=DENSE_HEADER_BYTES, shape=(n, n))


def write_similarity_csv(rows: np.ndarray, cols: np.ndarray, values: np.ndarray, path):
    """Write upper-triangle nonzeros as ``g_id,h_id,similarity``."""
    frame = pd.DataFrame({
        "g_id": np.asarray(rows, dtype=np.int64),
        "h_id": np.asarray(cols, dtype=np.int64),
        "similarity": np.asarray(values, dtype=np.float64),
    })
    frame.to_csv(path, index=False, lineterminator="\n")


def read_similarity_csv(path, n: int) -> sparse.csr_matrix:
    """Read a text export back into an n x n upper-triangle CSR matrix."""
    frame = pd.read_csv(path, dtype={"g_id": np.int64, "h_id": np.int64,
                                     "similarity": np.float64},
                        float_precision="round_trip")
    if list(frame.columns) != SIMILARITY_COLUMNS:
        raise IOError(f"{path}: expected columns {SIMILARITY_COLUMNS}")
    g = frame["g_id"].to_numpy()
    h = frame["h_id"].to_numpy()
    if len(frame) and (g.min() < 0 or h.max() >= n or (g >= h).any()):
        raise IOError(f"{path}: entries must satisfy 0 <= g_id < h_id < {n}")
    upper = sparse.csr_matrix((frame["similarity"].to_numpy(), (g, h)), shape=(n, n))
    upper.sort_indices()
    return upper


def save_similarity_npz(upper: sparse.csr_matrix, path):
    """Cache the upper triangle for later stages."""
    sparse.save_npz(path, upper, compressed=True)


def load_similarity_npz(path) -> sparse.csr_matrix:
    return sparse.load_npz(path).tocsr()

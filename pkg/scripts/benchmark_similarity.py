#!/usr/bin/env python3
"""Time the sparse similarity computation on the desk-scale corpus.

Reports wall time and peak resident memory for each thread count and
checks that every thread count produces the same matrix.

Run: python scripts/benchmark_similarity.py --threads 1 4
"""

import argparse
import resource
import sys
import time

import numpy as np

from citediss import (
    SimilarityOptions, aggregate_counts, normalize_profiles, pairwise_similarity,
    parse_citations,
)
from citediss._synthetic import DESK_SCALE, synthetic_corpus


def peak_memory_mb():
    # ru_maxrss is KB on Linux, bytes on macOS
    scale = 1024 * 1024 if sys.platform == "darwin" else 1024
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / scale


def main():
    parser = argparse.ArgumentParser(
        description="Benchmark pairwise journal similarity."
    )
    parser.add_argument("--threads", type=int, nargs="+", default=[1, 4],
                        help="Thread counts to time.")
    parser.add_argument("--workdir", default="benchmark_corpus",
                        help="Where the synthetic corpus is written.")
    args = parser.parse_args()

    citations_path, _ = synthetic_corpus(DESK_SCALE).write(args.workdir)
    registry, _, records = parse_citations(citations_path)
    counts = aggregate_counts(records, len(registry))
    profiles = normalize_profiles(counts)
    print(f"Journals: {len(registry)} ({registry.n_citing} citing, "
          f"{registry.n_cited} cited), records: {len(records)}")

    reference = None
    for threads in args.threads:
        start = time.perf_counter()
        matrix = pairwise_similarity(profiles, SimilarityOptions(threads=threads))
        elapsed = time.perf_counter() - start
        upper = matrix.upper
        same = "-"
        if reference is not None:
            same = "yes" if (
                np.array_equal(reference.indptr, upper.indptr)
                and np.array_equal(reference.indices, upper.indices)
                and np.array_equal(reference.data, upper.data)
            ) else "NO"
        reference = reference if reference is not None else upper
        print(f"  threads={threads:<3} {elapsed:8.2f} s  pairs={upper.nnz:<10} "
              f"peak={peak_memory_mb():8.0f} MB  identical={same}")


if __name__ == "__main__":
    main()

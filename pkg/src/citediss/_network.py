"""Map and network files for graph-visualization tools.

Map file (tab-separated, with header):     id  label  weight  score
Network file (tab-separated, with header): id1 id2 weight

Item ids are journal_id + 1 because the visualization tool expects
positive integers. ``weight`` in the map is the number of scored articles
published in the journal; ``score`` is its mean dissimilarity (empty when
the journal has no scored articles).
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Tuple

import numpy as np
import pandas as pd

from citediss._profiles import CountMatrix
from citediss._similarity import SimilarityMatrix
from citediss._types import JournalDissimilarity, JournalRegistry, NetworkExportError

logger = logging.getLogger(__name__)

MAP_COLUMNS = ["id", "label", "weight", "score"]
NETWORK_COLUMNS = ["id1", "id2", "weight"]


@dataclass(frozen=True, eq=False)
class NetworkExport:
    nodes: pd.DataFrame          # MAP_COLUMNS
    edges: pd.DataFrame          # NETWORK_COLUMNS
    retained_citation_share: float


def citation_share_retained(counts: CountMatrix, min_inbound: int) -> float:
    """Share of all citations received by journals with >= min_inbound citations."""
    inbound = counts.inbound_totals()
    total = inbound.sum()
    return float(inbound[inbound >= min_inbound].sum() / total) if total else 0.0


def build_network(matrix: SimilarityMatrix, journal_stats: Sequence[JournalDissimilarity],
                  registry: JournalRegistry, counts: CountMatrix,
                  min_inbound_citations: int = 10, min_articles: int = 0) -> NetworkExport:
    """
    Select journals and similarity edges for the map and network files.

    Nodes are journals with at least ``min_inbound_citations`` received
    citations and ``min_articles`` scored articles. Edges are stored
    similarities between two retained nodes.

    Raises:
        NetworkExportError: no journal passes the thresholds.
    """
    inbound = counts.inbound_totals()
    n = len(registry)
    if len(inbound) != n or matrix.n != n:
        raise ValueError("matrix, counts and registry disagree on the number of journals")
    articles = np.zeros(n, dtype=np.int64)
    scores = np.full(n, np.nan)
    for s in journal_stats:
        articles[s.journal_id] = s.article_count
        scores[s.journal_id] = s.mean_dissimilarity

    keep = (inbound >= min_inbound_citations) & (articles >= min_articles)
    ids = np.flatnonzero(keep)
    if len(ids) == 0:
        raise NetworkExportError(
            f"no journal has >= {min_inbound_citations} citations and "
            f">= {min_articles} articles"
        )
    nodes = pd.DataFrame({
        "id": ids + 1,
        "label": [registry.labels[g] for g in ids],
        "weight": articles[ids],
        "score": scores[ids],
    })

    g, h, s = matrix.upper_entries()
    both = keep[g] & keep[h] & (s > 0)
    edges = pd.DataFrame({"id1": g[both] + 1, "id2": h[both] + 1, "weight": s[both]})

    share = citation_share_retained(counts, min_inbound_citations)
    logger.info("network: %d of %d journals, %d edges, %.1f%% of citations",
                len(ids), n, len(edges), 100 * share)
    return NetworkExport(nodes, edges, share)


def write_network(network: NetworkExport, map_path, network_path):
    network.nodes.to_csv(map_path, sep="\t", index=False, na_rep="",
                         lineterminator="\n")
    network.edges.to_csv(network_path, sep="\t", index=False,
                         lineterminator="\n")


def export_network(matrix: SimilarityMatrix, journal_stats: Sequence[JournalDissimilarity],
                   registry: JournalRegistry, counts: CountMatrix, out_dir,
                   min_inbound_citations: int = 10, min_articles: int = 0
                   ) -> Tuple[NetworkExport, Path, Path]:
    """Build the network and write ``map.txt`` and ``network.txt`` into out_dir."""
    network = build_network(matrix, journal_stats, registry, counts,
                            min_inbound_citations, min_articles)
    out_dir = Path(out_dir)
    map_path, network_path = out_dir / "map.txt", out_dir / "network.txt"
    write_network(network, map_path, network_path)
    return network, map_path, network_path

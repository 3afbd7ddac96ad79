"""
Seeded synthetic citation corpora.

Journals fall into subject clusters. An article cites mostly inside its
publishing journal's cluster; a per-article breadth parameter sets how
often it cites other clusters, so broad articles get high dissimilarity
and cite more categories. Articles in multidisciplinary journals cite
across all clusters.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Tuple

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

MULTIDISCIPLINARY_CATEGORY = "Multidisciplinary Sciences"
CITATION_COLUMNS = ["pub_year", "article_id", "citing_journal", "cited_journal"]


@dataclass(frozen=True)
class SyntheticSpec:
    """Shape of a synthetic corpus."""
    n_articles: int = 200
    n_clusters: int = 5
    journals_per_cluster: int = 9
    citing_per_cluster: int = 4
    n_multidisciplinary: int = 2
    multidisciplinary_fraction: float = 0.1
    refs_range: Tuple[int, int] = (5, 25)
    self_citation_rate: float = 0.15
    max_breadth: float = 0.8
    unmatched_rate: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.citing_per_cluster <= self.journals_per_cluster:
            raise ValueError("citing_per_cluster must be in [1, journals_per_cluster]")
        if self.refs_range[0] < 1 or self.refs_range[0] > self.refs_range[1]:
            raise ValueError(f"bad refs_range {self.refs_range}")


DESK_SCALE = SyntheticSpec(
    n_articles=10_000, n_clusters=20, journals_per_cluster=500, citing_per_cluster=24,
    n_multidisciplinary=20, multidisciplinary_fraction=0.05, refs_range=(20, 40), seed=7,
)


@dataclass(frozen=True, eq=False)
class SyntheticCorpus:
    citations: pd.DataFrame      # CITATION_COLUMNS
    categories: pd.DataFrame     # journal, category

    def write(self, out_dir) -> Tuple[Path, Path]:
        """Write ``citations.csv`` and ``categories.csv`` into out_dir."""
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        citations_path = out_dir / "citations.csv"
        categories_path = out_dir / "categories.csv"
        self.citations.to_csv(citations_path, index=False, lineterminator="\n")
        self.categories.to_csv(categories_path, index=False, lineterminator="\n")
        return citations_path, categories_path


def _journal_names(spec: SyntheticSpec) -> Tuple[List[List[str]], List[str]]:
    clusters = [
        [f"Field {c} Journal {k:03d}" for k in range(spec.journals_per_cluster)]
        for c in range(spec.n_clusters)
    ]
    multidisciplinary = [f"Multidisciplinary Journal {m}"
                         for m in range(spec.n_multidisciplinary)]
    return clusters, multidisciplinary


def _categories(spec: SyntheticSpec, clusters, multidisciplinary) -> pd.DataFrame:
    rows = []
    for c, names in enumerate(clusters):
        for k, name in enumerate(names):
            if k == len(names) - 1 and k > 0:
                continue    # one uncategorized journal per cluster
            rows.append((name, f"Field {c}"))
            if k % 4 == 3:
                rows.append((name, f"Field {(c + 1) % spec.n_clusters}"))
    rows.extend((name, MULTIDISCIPLINARY_CATEGORY) for name in multidisciplinary)
    return pd.DataFrame(rows, columns=["journal", "category"])


def synthetic_corpus(spec: SyntheticSpec = None) -> SyntheticCorpus:
    """Generate a clustered corpus; identical specs give identical frames."""
    spec = spec or SyntheticSpec()
    rng = np.random.default_rng(spec.seed)
    clusters, multidisciplinary = _journal_names(spec)
    cluster_names = np.array(clusters, dtype=object)     # (clusters, journals)
    md_names = np.array(multidisciplinary, dtype=object)

    years, article_ids, citing, cited = [], [], [], []
    for i in range(spec.n_articles):
        n_refs = int(rng.integers(spec.refs_range[0], spec.refs_range[1] + 1))
        in_md = len(md_names) > 0 and rng.random() < spec.multidisciplinary_fraction
        if in_md:
            publisher = md_names[rng.integers(len(md_names))]
            home = -1
            breadth = 1.0
        else:
            home = int(rng.integers(spec.n_clusters))
            publisher = cluster_names[home, rng.integers(spec.citing_per_cluster)]
            breadth = rng.uniform(0.0, spec.max_breadth)

        other = rng.random(n_refs) < breadth
        ref_cluster = np.where(other, rng.integers(spec.n_clusters, size=n_refs),
                               max(home, 0))
        refs = cluster_names[ref_cluster, rng.integers(spec.journals_per_cluster, size=n_refs)]
        refs[rng.random(n_refs) < spec.self_citation_rate] = publisher
        if len(md_names):
            to_md = rng.random(n_refs) < 0.05
            refs[to_md] = md_names[rng.integers(len(md_names), size=int(to_md.sum()))]
        refs[rng.random(n_refs) < spec.unmatched_rate] = ""

        year = int(rng.integers(2006, 2012))
        article_id = f"A{i:06d}"
        years.extend([year] * n_refs)
        article_ids.extend([article_id] * n_refs)
        citing.extend([publisher] * n_refs)
        cited.extend(refs.tolist())

    citations = pd.DataFrame({
        "pub_year": np.array(years, dtype=np.int64),
        "article_id": article_ids,
        "citing_journal": citing,
        "cited_journal": cited,
    }, columns=CITATION_COLUMNS)
    logger.info("synthetic corpus: %d articles, %d citation rows",
                spec.n_articles, len(citations))
    return SyntheticCorpus(citations, _categories(spec, clusters, multidisciplinary))

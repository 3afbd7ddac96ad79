"""Artifact files for article, journal and decile results."""

import json
import math
from dataclasses import asdict
from typing import List, Sequence

import numpy as np
import pandas as pd

from citediss._analytics import (
    ArticleCategoryBreakdown, CategoryDiversityReport, DecileClasses, Histogram,
    JournalRank, MultidisciplinaryShareReport,
)
from citediss._types import (
    UNSCORED, ArticleDissimilarity, JournalDissimilarity, JournalRegistry,
)

ARTICLE_COLUMNS = ["article_id", "journal_id", "mean_dissimilarity",
                   "matched_refs", "skipped_refs"]
JOURNAL_COLUMNS = ["journal_id", "name", "article_count", "mean_dissimilarity"]


def _write(frame: pd.DataFrame, path):
    frame.to_csv(path, index=False, na_rep="", lineterminator="\n")


def write_article_results(results: Sequence[ArticleDissimilarity], path):
    """``article_id,journal_id,mean_dissimilarity,matched_refs,skipped_refs``.

    Unscored articles have an empty mean_dissimilarity.
    """
    _write(pd.DataFrame({
        "article_id": [r.article_id for r in results],
        "journal_id": np.array([r.published_journal for r in results], dtype=np.int64),
        "mean_dissimilarity": np.array(
            [r.mean_dissimilarity if r.scored else np.nan for r in results], dtype=np.float64),
        "matched_refs": np.array([r.matched_refs for r in results], dtype=np.int64),
        "skipped_refs": np.array([r.skipped_refs for r in results], dtype=np.int64),
    }, columns=ARTICLE_COLUMNS), path)


def read_article_results(path) -> List[ArticleDissimilarity]:
    frame = pd.read_csv(path, dtype={"article_id": str}, keep_default_na=False,
                        na_values={"mean_dissimilarity": [""]},
                        float_precision="round_trip")
    if list(frame.columns) != ARTICLE_COLUMNS:
        raise IOError(f"{path}: expected columns {ARTICLE_COLUMNS}")
    results = []
    for aid, g, d, matched, skipped in frame.itertuples(index=False, name=None):
        scored = not math.isnan(d)
        results.append(ArticleDissimilarity(
            aid, int(g), float(d) if scored else None, int(matched), int(skipped),
            frozenset() if scored else frozenset({UNSCORED}),
        ))
    return results


def write_journal_results(stats: Sequence[JournalDissimilarity], registry: JournalRegistry,
                          path):
    _write(pd.DataFrame({
        "journal_id": np.array([s.journal_id for s in stats], dtype=np.int64),
        "name": [registry.name_of(s.journal_id) for s in stats],
        "article_count": np.array([s.article_count for s in stats], dtype=np.int64),
        "mean_dissimilarity": np.array([s.mean_dissimilarity for s in stats], dtype=np.float64),
    }, columns=JOURNAL_COLUMNS), path)


def read_journal_results(path) -> List[JournalDissimilarity]:
    frame = pd.read_csv(path, dtype={"name": str}, keep_default_na=False,
                        float_precision="round_trip")
    if list(frame.columns) != JOURNAL_COLUMNS:
        raise IOError(f"{path}: expected columns {JOURNAL_COLUMNS}")
    return [JournalDissimilarity(int(g), float(d), int(n))
            for g, _, n, d in frame.itertuples(index=False, name=None)]


def write_references(rows, path):
    _write(pd.DataFrame(rows, columns=["article_id", "journal_id",
                                       "cited_journal_id", "similarity"]), path)


def write_histogram(hist: Histogram, path):
    _write(pd.DataFrame({
        "lower": np.array(hist.edges[:-1], dtype=np.float64),
        "upper": np.array(hist.edges[1:], dtype=np.float64),
        "count": np.array(hist.counts, dtype=np.int64),
    }), path)


def write_decile_report(classes: DecileClasses, shares: MultidisciplinaryShareReport, path):
    """``class,lower,upper,size,multidisciplinary_share``; shares may be None."""
    frame = pd.DataFrame({
        "class": np.array([c.index for c in classes.classes], dtype=np.int64),
        "lower": np.array([c.lower for c in classes.classes], dtype=np.float64),
        "upper": np.array([c.upper for c in classes.classes], dtype=np.float64),
        "size": np.array([c.size for c in classes.classes], dtype=np.int64),
    })
    if shares is not None:
        frame["multidisciplinary_share"] = np.array(shares.shares, dtype=np.float64)
    _write(frame, path)


def write_diversity_report(report: CategoryDiversityReport, path):
    _write(pd.DataFrame({
        "class": np.arange(1, len(report.means) + 1, dtype=np.int64),
        "mean_distinct_categories": np.array(report.means, dtype=np.float64),
    }), path)


def write_category_breakdowns(breakdowns: Sequence[ArticleCategoryBreakdown], path):
    """``article_id,category,share``, one row per nonzero share."""
    rows = [(b.article_id, c, s) for b in breakdowns for c, s in b.shares.items()]
    _write(pd.DataFrame(rows, columns=["article_id", "category", "share"]), path)


def write_top_journals(ranks: Sequence[JournalRank], path):
    _write(pd.DataFrame([asdict(r) for r in ranks],
                        columns=["rank", "journal_id", "name", "article_count",
                                 "mean_dissimilarity"]), path)


def write_summary(path, **sections):
    """JSON summary with sorted keys; dataclass sections are expanded."""
    payload = {
        name: asdict(value) if hasattr(value, "__dataclass_fields__") else value
        for name, value in sections.items()
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")

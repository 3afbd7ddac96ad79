"""
Mean dissimilarity per article and per publishing journal.

For article i published in journal g with reference occurrences h_1..h_n:

    D_gi = 1 - (1/n) * sum_k S(g, h_k)

Every occurrence counts, so a journal cited three times contributes
three similarities. A journal's value is the unweighted mean of its
articles' values.
"""

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from citediss._parallel import map_ordered
from citediss._similarity import SimilarityMatrix
from citediss._types import (
    EMPTY_PUBLISHER_PROFILE, PUBLISHER_OUT_OF_UNIVERSE, UNSCORED,
    ArticleDissimilarity, ArticleRecord, JournalDissimilarity,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RefFilterResult:
    kept: Tuple[ArticleDissimilarity, ...]
    retained_citation_share: float   # matched refs kept / matched refs of scored articles


def _score(article: ArticleRecord, similarities: np.ndarray, empty_publisher: bool,
           n: int) -> ArticleDissimilarity:
    occurrences = np.asarray(article.cited_occurrences, dtype=np.int64)
    inside = (occurrences >= 0) & (occurrences < n)
    matched = int(inside.sum())
    skipped = len(occurrences) - matched
    flags = {EMPTY_PUBLISHER_PROFILE} if empty_publisher else set()
    if matched == 0:
        flags.add(UNSCORED)
        return ArticleDissimilarity(article.article_id, article.published_journal,
                                    None, 0, skipped, frozenset(flags))
    mean_similarity = math.fsum(similarities[occurrences[inside]]) / matched
    value = min(max(1.0 - mean_similarity, 0.0), 1.0)
    return ArticleDissimilarity(article.article_id, article.published_journal,
                                value, matched, skipped, frozenset(flags))


def _out_of_universe(article: ArticleRecord) -> ArticleDissimilarity:
    return ArticleDissimilarity(
        article.article_id, article.published_journal, None, 0,
        article.n_refs, frozenset({UNSCORED, PUBLISHER_OUT_OF_UNIVERSE}),
    )


def _empty_publishers(matrix: SimilarityMatrix) -> set:
    return set(matrix.diagnostics.empty_profiles)


def article_mean_dissimilarity(article: ArticleRecord,
                               matrix: SimilarityMatrix) -> ArticleDissimilarity:
    """
    Mean dissimilarity of one article to the journals it cites.

    References to journals outside the matrix are skipped and counted.
    An article with no matched reference is returned unscored.
    """
    g = article.published_journal
    if not 0 <= g < matrix.n:
        return _out_of_universe(article)
    return _score(article, matrix.row(g), g in _empty_publishers(matrix), matrix.n)


def corpus_dissimilarities(corpus: Sequence[ArticleRecord], matrix: SimilarityMatrix,
                           threads: int = 1) -> List[ArticleDissimilarity]:
    """
    Score every article; output order follows the corpus.

    Articles are grouped by publishing journal so each similarity row is
    materialized once.
    """
    by_journal: Dict[int, List[int]] = defaultdict(list)
    for i, article in enumerate(corpus):
        by_journal[article.published_journal].append(i)
    empty = _empty_publishers(matrix)

    def score_journal(g):
        members = by_journal[g]
        if not 0 <= g < matrix.n:
            return [(i, _out_of_universe(corpus[i])) for i in members]
        row = matrix.row(g)
        return [(i, _score(corpus[i], row, g in empty, matrix.n)) for i in members]

    results: List[ArticleDissimilarity] = [None] * len(corpus)
    for chunk in map_ordered(score_journal, sorted(by_journal), threads=threads,
                             desc="Scoring articles"):
        for i, result in chunk:
            results[i] = result

    unscored = sum(1 for r in results if not r.scored)
    if unscored:
        logger.warning("%d of %d articles could not be scored", unscored, len(results))
    return results


def filter_by_min_refs(results: Sequence[ArticleDissimilarity],
                       min_refs: int = 10) -> RefFilterResult:
    """Keep scored articles with at least ``min_refs`` matched references."""
    if min_refs < 0:
        raise ValueError(f"min_refs must be >= 0, got {min_refs}")
    scored = [r for r in results if r.scored]
    kept = tuple(r for r in scored if r.matched_refs >= min_refs)
    total = sum(r.matched_refs for r in scored)
    share = sum(r.matched_refs for r in kept) / total if total else 0.0
    logger.info("min_refs=%d keeps %d of %d scored articles (%.1f%% of citations)",
                min_refs, len(kept), len(scored), 100 * share)
    return RefFilterResult(kept, share)


def journal_mean_dissimilarity(results: Sequence[ArticleDissimilarity]
                               ) -> List[JournalDissimilarity]:
    """Unweighted mean per publishing journal, ordered by journal id."""
    values: Dict[int, List[float]] = defaultdict(list)
    for r in results:
        if r.scored:
            values[r.published_journal].append(r.mean_dissimilarity)
    return [
        JournalDissimilarity(g, math.fsum(v) / len(v), len(v))
        for g, v in sorted(values.items())
    ]


def annotate_references(corpus: Sequence[ArticleRecord], matrix: SimilarityMatrix
                        ) -> List[Tuple[str, int, int, float]]:
    """(article_id, journal_id, cited_journal_id, S) per reference occurrence.

    Occurrences outside the matrix get NaN.
    """
    per_article: List[list] = [None] * len(corpus)
    order = sorted(range(len(corpus)), key=lambda i: corpus[i].published_journal)
    current, row = None, None
    for i in order:
        article = corpus[i]
        g = article.published_journal
        inside = 0 <= g < matrix.n
        if inside and g != current:
            current, row = g, matrix.row(g)
        per_article[i] = [
            (article.article_id, g, h,
             float(row[h]) if inside and 0 <= h < matrix.n else math.nan)
            for h in article.cited_occurrences
        ]
    return [entry for entries in per_article for entry in entries]

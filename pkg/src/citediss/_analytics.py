"""Distribution, decile classes and subject-category analyses."""

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from citediss._categories import CategoryMap
from citediss._types import (
    ArticleDissimilarity, ArticleRecord, JournalDissimilarity, JournalRegistry,
)

logger = logging.getLogger(__name__)

N_CLASSES = 10


@dataclass(frozen=True)
class Histogram:
    edges: Tuple[float, ...]     # len(counts) + 1; last bin closed at 1
    counts: Tuple[int, ...]


@dataclass(frozen=True)
class DecileClass:
    index: int                   # 1..10
    lower: float                 # previous breakpoint (minimum for class 1)
    upper: float                 # this class's breakpoint (maximum for class 10)
    members: Tuple[str, ...]     # article ids in input order

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class DecileClasses:
    classes: Tuple[DecileClass, ...]
    breakpoints: Tuple[float, ...]   # nine nearest-rank quantiles

    def class_of(self, article_id: str) -> Optional[int]:
        for cls in self.classes:
            if article_id in cls.members:
                return cls.index
        return None


@dataclass(frozen=True)
class MultidisciplinaryShareReport:
    shares: Tuple[float, ...]
    flagged: Tuple[int, ...]
    sizes: Tuple[int, ...]


@dataclass(frozen=True)
class CategoryDiversityReport:
    means: Tuple[float, ...]
    counted: Tuple[int, ...]     # members published in non-multidisciplinary journals


@dataclass(frozen=True)
class ArticleCategoryBreakdown:
    article_id: str
    shares: Dict[str, float]     # category -> share, sorted by category
    distinct_categories: int
    categorized_citations: int
    uncategorized_citations: int
    home_category_share: float   # share in the publishing journal's own categories

    @property
    def empty(self) -> bool:
        return self.categorized_citations == 0


@dataclass(frozen=True)
class JournalRank:
    rank: int
    journal_id: int
    name: str
    article_count: int
    mean_dissimilarity: float


@dataclass(frozen=True)
class ExtremeSummary:
    low: float
    high: float
    below_low: int
    above_high: int
    exactly_zero: int
    exactly_one: int
    mean_refs_below_low: float
    mean_refs_above_high: float
    mean_refs_exactly_one: float
    mean_refs_all: float


def _scored_values(results: Sequence[ArticleDissimilarity]) -> np.ndarray:
    return np.array([r.mean_dissimilarity for r in results if r.scored], dtype=np.float64)


def histogram(results: Sequence[ArticleDissimilarity], bin_width: float = 0.05) -> Histogram:
    """
    Count scored articles per bin [k*w, (k+1)*w); the last bin includes 1.

    Edges are rounded to 12 decimals so that e.g. 0.7 lands in [0.7, 0.75)
    with w = 0.05 despite floating-point products.
    """
    if not 0.0 < bin_width <= 1.0:
        raise ValueError(f"bin_width must be in (0, 1], got {bin_width}")
    n_bins = max(1, math.ceil(round(1.0 / bin_width, 9)))
    edges = np.round(np.arange(n_bins) * bin_width, 12)
    values = _scored_values(results)
    idx = np.searchsorted(edges, values, side="right") - 1
    idx = np.clip(idx, 0, n_bins - 1)
    counts = np.bincount(idx, minlength=n_bins)
    return Histogram(tuple(float(e) for e in edges) + (1.0,),
                     tuple(int(c) for c in counts))


def decile_classes(results: Sequence[ArticleDissimilarity]) -> DecileClasses:
    """
    Split scored articles into 10 classes at nearest-rank deciles.

    Breakpoint k is the ceil(k*N/10)-th smallest value. An article goes to
    the first class whose breakpoint is >= its value, so ties stay in the
    lower class.
    """
    scored = [r for r in results if r.scored]
    n = len(scored)
    if n < N_CLASSES:
        raise ValueError(f"decile classes need at least {N_CLASSES} scored articles, got {n}")
    values = np.array([r.mean_dissimilarity for r in scored], dtype=np.float64)
    ordered = np.sort(values, kind="stable")
    breaks = np.array([ordered[(k * n + N_CLASSES - 1) // N_CLASSES - 1]
                       for k in range(1, N_CLASSES)])
    labels = np.searchsorted(breaks, values, side="left") + 1

    bounds = np.concatenate(([ordered[0]], breaks, [ordered[-1]]))
    classes = []
    for k in range(1, N_CLASSES + 1):
        members = tuple(r.article_id for r, lab in zip(scored, labels) if lab == k)
        classes.append(DecileClass(k, float(bounds[k - 1]), float(bounds[k]), members))
    return DecileClasses(tuple(classes), tuple(float(b) for b in breaks))


def _published_journals(corpus) -> Dict[str, int]:
    return {a.article_id: a.published_journal for a in corpus}


def multidisciplinary_share(classes: DecileClasses, categories: CategoryMap,
                            corpus) -> MultidisciplinaryShareReport:
    """Per class, the share of members published in multidisciplinary journals.

    ``corpus`` may hold ArticleRecord or ArticleDissimilarity items.
    """
    journal_of = _published_journals(corpus)
    shares, flagged, sizes = [], [], []
    for cls in classes.classes:
        hits = sum(1 for a in cls.members if categories.is_multidisciplinary(journal_of[a]))
        flagged.append(hits)
        sizes.append(cls.size)
        shares.append(hits / cls.size if cls.size else 0.0)
    return MultidisciplinaryShareReport(tuple(shares), tuple(flagged), tuple(sizes))


def article_category_breakdown(article: ArticleRecord,
                               categories: CategoryMap) -> ArticleCategoryBreakdown:
    """
    Category shares over an article's categorized citations.

    A citation to a journal with k categories adds 1/k to each of them.
    Citations to uncategorized journals are left out and counted.
    """
    weights: Dict[str, float] = defaultdict(float)
    categorized = uncategorized = 0
    for h in article.cited_occurrences:
        cats = categories.categories_for(h)
        if not cats:
            uncategorized += 1
            continue
        categorized += 1
        for c in cats:
            weights[c] += 1.0 / len(cats)
    shares = {c: weights[c] / categorized for c in sorted(weights)}
    home = categories.categories_for(article.published_journal)
    return ArticleCategoryBreakdown(
        article_id=article.article_id,
        shares=shares,
        distinct_categories=len(shares),
        categorized_citations=categorized,
        uncategorized_citations=uncategorized,
        home_category_share=math.fsum(shares.get(c, 0.0) for c in home),
    )


def _distinct_categories(article: ArticleRecord, categories: CategoryMap) -> int:
    seen = set()
    for h in set(article.cited_occurrences):
        seen |= categories.categories_for(h)
    return len(seen)


def category_diversity_by_decile(classes: DecileClasses, categories: CategoryMap,
                                 corpus: Sequence[ArticleRecord]) -> CategoryDiversityReport:
    """
    Per class, mean number of distinct categories among cited journals.

    Members published in multidisciplinary journals are left out.
    """
    articles = {a.article_id: a for a in corpus}
    means, counted = [], []
    for cls in classes.classes:
        counts = [
            _distinct_categories(articles[a], categories) for a in cls.members
            if not categories.is_multidisciplinary(articles[a].published_journal)
        ]
        counted.append(len(counts))
        means.append(math.fsum(counts) / len(counts) if counts else 0.0)
    return CategoryDiversityReport(tuple(means), tuple(counted))


def exclude_multidisciplinary(results: Sequence[ArticleDissimilarity],
                              categories: CategoryMap) -> List[ArticleDissimilarity]:
    return [r for r in results if not categories.is_multidisciplinary(r.published_journal)]


def top_journals(journal_stats: Sequence[JournalDissimilarity], registry: JournalRegistry,
                 n: int = 20) -> List[JournalRank]:
    """Journals with the most scored articles, ties broken by id."""
    ranked = sorted(journal_stats, key=lambda s: (-s.article_count, s.journal_id))[:n]
    return [
        JournalRank(i + 1, s.journal_id, registry.name_of(s.journal_id),
                    s.article_count, s.mean_dissimilarity)
        for i, s in enumerate(ranked)
    ]


def _mean(values) -> float:
    values = list(values)
    return math.fsum(values) / len(values) if values else 0.0


def extreme_articles(results: Sequence[ArticleDissimilarity], low: float = 0.02,
                     high: float = 0.98) -> ExtremeSummary:
    """Counts and mean reference-list lengths at both ends of the distribution."""
    scored = [r for r in results if r.scored]

    def refs(pred):
        return [r.matched_refs for r in scored if pred(r.mean_dissimilarity)]

    below = refs(lambda d: d < low)
    above = refs(lambda d: d > high)
    ones = refs(lambda d: d == 1.0)
    zeros = refs(lambda d: d == 0.0)
    return ExtremeSummary(
        low=low, high=high,
        below_low=len(below), above_high=len(above),
        exactly_zero=len(zeros), exactly_one=len(ones),
        mean_refs_below_low=_mean(below),
        mean_refs_above_high=_mean(above),
        mean_refs_exactly_one=_mean(ones),
        mean_refs_all=_mean(r.matched_refs for r in scored),
    )

"""Tests for histogram, decile and category analyses."""

import math
from decimal import Decimal

import pytest

from citediss import (
    UNSCORED, ArticleDissimilarity, ArticleRecord, CategoryMap, JournalDissimilarity,
    JournalRegistry, article_category_breakdown, category_diversity_by_decile,
    corpus_dissimilarities, decile_classes, exclude_multidisciplinary, extreme_articles,
    filter_by_min_refs, histogram, multidisciplinary_share, parse_categories,
    top_journals,
)

LABEL = "multidisciplinary sciences"

REGISTRY = JournalRegistry(
    names=("ecology letters", "nature", "plant cell", "unlisted"),
    is_citing=(True, True, True, False),
    is_cited=(True, True, True, True),
)

CATEGORIES = CategoryMap(
    categories={
        "ecology letters": frozenset({"ecology"}),
        "nature": frozenset({LABEL}),
        "plant cell": frozenset({"ecology", "plant sciences"}),
    },
    multidisciplinary_label=LABEL,
    registry=REGISTRY,
)


def _results(values, journal=0):
    return [ArticleDissimilarity(f"a{i:02d}", journal, v, 10, 0)
            for i, v in enumerate(values)]


def test_histogram_single_value():
    hist = histogram(_results([0.70]), bin_width=0.05)
    assert len(hist.counts) == 20
    assert hist.counts[14] == 1
    assert sum(hist.counts) == 1
    assert hist.edges[14] == 0.7
    assert hist.edges[-1] == 1.0


def test_histogram_closes_last_bin_and_skips_unscored():
    results = _results([0.0, 0.05, 0.999, 1.0])
    results.append(ArticleDissimilarity("x", 0, None, 0, 0, frozenset({UNSCORED})))
    hist = histogram(results, bin_width=0.05)
    assert hist.counts[0] == 1
    assert hist.counts[1] == 1
    assert hist.counts[19] == 2
    assert sum(hist.counts) == 4


def test_synthetic_histogram_matches_direct_binning(synthetic_analysis):
    _, corpus, _, _, matrix = synthetic_analysis
    results = corpus_dissimilarities(corpus, matrix)
    edges = [float(Decimal(k) * Decimal("0.05")) for k in range(20)]
    expected = [0] * 20
    for r in results:
        if r.scored:
            expected[max(k for k in range(20) if r.mean_dissimilarity >= edges[k])] += 1
    hist = histogram(results, bin_width=0.05)
    assert list(hist.counts) == expected
    assert sum(expected) == sum(1 for r in results if r.scored)


def test_histogram_rejects_bad_width():
    with pytest.raises(ValueError):
        histogram([], bin_width=0.0)


def test_deciles_of_twenty_values():
    values = [round(0.05 * k, 2) for k in range(1, 21)]
    classes = decile_classes(_results(values))
    assert [c.size for c in classes.classes] == [2] * 10
    assert classes.breakpoints == tuple(values[1:18:2])
    assert classes.classes[0].members == ("a00", "a01")
    assert classes.classes[0].lower == 0.05
    assert classes.classes[9].upper == 1.0
    assert classes.class_of("a19") == 10
    assert classes.class_of("missing") is None


def test_deciles_partition_input():
    values = [((i * 37) % 101) / 100 for i in range(53)]
    results = _results(values)
    classes = decile_classes(results)
    members = [m for c in classes.classes for m in c.members]
    assert sorted(members) == sorted(r.article_id for r in results)
    bounds = [c.lower for c in classes.classes] + [classes.classes[-1].upper]
    assert bounds == sorted(bounds)


def test_deciles_ties_go_to_the_first_class():
    classes = decile_classes(_results([0.4] * 15))
    assert classes.classes[0].size == 15
    assert all(c.size == 0 for c in classes.classes[1:])


def test_deciles_depend_on_ranks_only():
    values = [((i * 13) % 29) / 29 for i in range(29)]
    plain = decile_classes(_results(values))
    squared = decile_classes(_results([v ** 2 for v in values]))
    assert [c.members for c in plain.classes] == [c.members for c in squared.classes]


def test_deciles_need_ten_articles():
    with pytest.raises(ValueError, match="at least 10"):
        decile_classes(_results([0.1] * 9))


def test_multidisciplinary_share():
    results = (_results([0.1 * k for k in range(1, 10)], journal=0)
               + [ArticleDissimilarity("m", 1, 0.95, 10, 0)])
    classes = decile_classes(results)
    report = multidisciplinary_share(classes, CATEGORIES, results)
    assert report.shares[9] == 1.0
    assert report.shares[:9] == (0.0,) * 9
    assert report.flagged[9] == 1


def test_no_multidisciplinary_journals_gives_zero_shares():
    results = _results([0.1 * k for k in range(10)])
    report = multidisciplinary_share(decile_classes(results), CATEGORIES, results)
    assert report.shares == (0.0,) * 10


def test_category_breakdown_equal_split():
    article = ArticleRecord("a", 2010, 0, (0, 2))
    breakdown = article_category_breakdown(article, CATEGORIES)
    assert breakdown.shares == {"ecology": 0.75, "plant sciences": 0.25}
    assert breakdown.distinct_categories == 2
    assert breakdown.home_category_share == 0.75
    assert math.fsum(breakdown.shares.values()) == pytest.approx(1.0, abs=1e-12)


def test_category_breakdown_single_category():
    breakdown = article_category_breakdown(ArticleRecord("a", 2010, 0, (0, 0, 0)),
                                           CATEGORIES)
    assert breakdown.shares == {"ecology": 1.0}
    assert breakdown.distinct_categories == 1


def test_category_breakdown_uncategorized():
    breakdown = article_category_breakdown(ArticleRecord("a", 2010, 0, (3, 3, 0)),
                                           CATEGORIES)
    assert breakdown.uncategorized_citations == 2
    assert breakdown.categorized_citations == 1
    empty = article_category_breakdown(ArticleRecord("b", 2010, 0, (3,)), CATEGORIES)
    assert empty.empty
    assert empty.shares == {}


def test_diversity_single_category_everywhere():
    corpus = [ArticleRecord(f"a{i:02d}", 2010, 0, (0,)) for i in range(10)]
    results = _results([0.05 * i for i in range(10)])
    report = category_diversity_by_decile(decile_classes(results), CATEGORIES, corpus)
    assert report.means == (1.0,) * 10
    assert report.counted == (1,) * 10


def test_diversity_rises_with_breadth():
    names = tuple(f"field {k:02d} journal" for k in range(11))
    registry = JournalRegistry(names=names, is_citing=(True,) + (False,) * 10,
                               is_cited=(False,) + (True,) * 10)
    categories = CategoryMap({n: frozenset({f"field {k:02d}"}) for k, n in enumerate(names)},
                             LABEL, registry)
    # article i cites i + 1 journals from different fields
    corpus = [ArticleRecord(f"a{i:02d}", 2010, 0, tuple(range(1, i + 2))) for i in range(10)]
    results = _results([0.05 * i for i in range(10)])
    report = category_diversity_by_decile(decile_classes(results), categories, corpus)
    assert report.means == tuple(float(k) for k in range(1, 11))
    assert all(a < b for a, b in zip(report.means, report.means[1:]))


def test_diversity_skips_multidisciplinary_publishers():
    corpus = [ArticleRecord(f"a{i:02d}", 2010, 0, (0,)) for i in range(9)]
    corpus.append(ArticleRecord("m", 2010, 1, (0, 2)))
    results = _results([0.05 * i for i in range(9)]) + [
        ArticleDissimilarity("m", 1, 0.99, 10, 0)]
    report = category_diversity_by_decile(decile_classes(results), CATEGORIES, corpus)
    assert report.counted[9] == 0
    assert report.means[9] == 0.0
    assert exclude_multidisciplinary(results, CATEGORIES) == results[:9]


def test_synthetic_high_deciles_are_broader(synthetic_files, synthetic_analysis):
    registry, corpus, _, _, matrix = synthetic_analysis
    categories = parse_categories(synthetic_files[1], "Multidisciplinary Sciences", registry)
    results = filter_by_min_refs(corpus_dissimilarities(corpus, matrix), 1).kept

    classes = decile_classes(results)
    shares = multidisciplinary_share(classes, categories, results)
    assert shares.shares[9] > shares.shares[0]

    cohort = exclude_multidisciplinary(results, categories)
    diversity = category_diversity_by_decile(decile_classes(cohort), categories, corpus)
    assert diversity.means[9] > diversity.means[0]


def test_top_journals():
    stats = [JournalDissimilarity(0, 0.4, 3), JournalDissimilarity(1, 0.6, 5),
             JournalDissimilarity(2, 0.1, 3)]
    ranks = top_journals(stats, REGISTRY, n=2)
    assert [(r.rank, r.journal_id, r.name) for r in ranks] == [
        (1, 1, "nature"), (2, 0, "ecology letters")]


def test_extreme_articles():
    results = [
        ArticleDissimilarity("a", 0, 0.0, 2, 0),
        ArticleDissimilarity("b", 0, 0.01, 4, 0),
        ArticleDissimilarity("c", 0, 0.5, 30, 0),
        ArticleDissimilarity("d", 0, 1.0, 1, 0),
        ArticleDissimilarity("e", 0, None, 0, 3, frozenset({UNSCORED})),
    ]
    summary = extreme_articles(results)
    assert summary.below_low == 2
    assert summary.above_high == 1
    assert summary.exactly_zero == 1
    assert summary.exactly_one == 1
    assert summary.mean_refs_below_low == 3.0
    assert summary.mean_refs_exactly_one == 1.0
    assert summary.mean_refs_all == pytest.approx(37 / 4)

"""
citediss - cited-journal dissimilarity

Measure how far an institution's articles reach outside the research
field of the journal they are published in:

Similarity: journals are similar when they are cited by the same citing journals
Dissimilarity: one minus the mean similarity between an article's journal
               and the journals it cites

Usage:
    import citediss

    # One call from a citations file
    result = citediss.analyze('citations.csv', threads=4)
    result.matrix.lookup(0, 1)          # S between journals 0 and 1
    result.articles[0].mean_dissimilarity
    result.journals[0].mean_dissimilarity

    # Step by step
    registry, corpus, records = citediss.parse_citations('citations.csv')
    counts = citediss.aggregate_counts(records, len(registry))
    matrix = citediss.pairwise_similarity(citediss.normalize_profiles(counts))
    results = citediss.corpus_dissimilarities(corpus, matrix)
    classes = citediss.decile_classes(citediss.filter_by_min_refs(results, 10).kept)

    # Whole pipeline with artifacts, as the command line runs it
    config = citediss.resolve_config(overrides={'citations': 'citations.csv'})
    citediss.run_pipeline(config)
"""

from dataclasses import dataclass
from typing import List

from citediss._types import (
    UNSCORED, EMPTY_PUBLISHER_PROFILE, PUBLISHER_OUT_OF_UNIVERSE,
    ArticleDissimilarity, ArticleRecord, CitationRecord, JournalDissimilarity,
    JournalRegistry,
    CitationParseError, ConfigError, NetworkExportError, PipelineError,
)
from citediss._ingest import (
    IngestConfig, IngestSummary,
    parse_citations, ingest_report, print_ingest_report,
    normalize_journal_name, write_registry, read_registry,
)
from citediss._categories import CategoryMap, parse_categories
from citediss._profiles import (
    CountMatrix, JournalProfile, aggregate_counts, normalize_profiles,
)
from citediss._similarity import (
    SimilarityDiagnostics, SimilarityMatrix, SimilarityOptions,
    pairwise_similarity, similarity_lookup,
)
from citediss._matrix_io import (
    open_dense, read_similarity_csv, write_similarity_csv,
    save_similarity_npz, load_similarity_npz,
)
from citediss._dissimilarity import (
    RefFilterResult,
    article_mean_dissimilarity, corpus_dissimilarities, filter_by_min_refs,
    journal_mean_dissimilarity, annotate_references,
)
from citediss._analytics import (
    Histogram, DecileClass, DecileClasses, MultidisciplinaryShareReport,
    CategoryDiversityReport, ArticleCategoryBreakdown, JournalRank, ExtremeSummary,
    histogram, decile_classes, multidisciplinary_share, article_category_breakdown,
    category_diversity_by_decile, exclude_multidisciplinary, top_journals,
    extreme_articles,
)
from citediss._network import (
    NetworkExport, build_network, export_network, write_network,
    citation_share_retained,
)
from citediss._config import (
    PipelineConfig, resolve_config, print_config_status,
)
from citediss._pipeline import run_pipeline, run_stages, STAGES


@dataclass(frozen=True, eq=False)
class AnalysisResult:
    registry: JournalRegistry
    corpus: List[ArticleRecord]
    counts: CountMatrix
    matrix: SimilarityMatrix
    articles: List[ArticleDissimilarity]
    journals: List[JournalDissimilarity]


def analyze(citations_path, ingest=None, storage="sparse", threads=1,
            sparsity_floor=0.0, dense_path=None):
    """
    Similarity matrix plus article and journal dissimilarities for one file.

    Args:
        citations_path: Citations file (see parse_citations).
        ingest: IngestConfig for delimiter, header and year window.
        storage: 'sparse' or 'dense'.
        threads: Worker threads for the similarity and scoring stages.
        sparsity_floor: Similarities at or below this value are not stored.
        dense_path: File for the dense matrix. None uses a temp file.

    Returns:
        AnalysisResult with registry, corpus, counts, matrix, articles
        (corpus order) and journals (by id).
    """
    registry, corpus, records = parse_citations(citations_path, ingest)
    counts = aggregate_counts(records, len(registry))
    options = SimilarityOptions(storage=storage, sparsity_floor=sparsity_floor,
                                threads=threads, dense_path=dense_path)
    matrix = pairwise_similarity(normalize_profiles(counts), options)
    articles = corpus_dissimilarities(corpus, matrix, threads=threads)
    return AnalysisResult(registry, corpus, counts, matrix, articles,
                          journal_mean_dissimilarity(articles))

"""
Pipeline stages and artifact plumbing.

Each stage reads what it needs from the output directory (or recomputes
it from the citations file, which is deterministic) and writes its
artifacts into a staging directory inside ``out``. Files are moved into
place only when the stage succeeds; on failure the staging directory is
removed and a PipelineError names the stage.
"""

import logging
import os
import shutil
import tempfile
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

import pandas as pd

from citediss._analytics import (
    article_category_breakdown, category_diversity_by_decile, decile_classes,
    exclude_multidisciplinary, extreme_articles, histogram, multidisciplinary_share,
    top_journals,
)
from citediss._categories import CategoryMap, parse_categories
from citediss._config import PipelineConfig
from citediss._dissimilarity import (
    annotate_references, corpus_dissimilarities, filter_by_min_refs,
    journal_mean_dissimilarity,
)
from citediss._ingest import ingest_report, parse_citations, read_registry, write_registry
from citediss._matrix_io import read_similarity_csv, write_similarity_csv
from citediss._network import export_network
from citediss._profiles import CountMatrix, aggregate_counts, normalize_profiles
from citediss._reports import (
    read_article_results, read_journal_results, write_article_results,
    write_category_breakdowns, write_decile_report, write_diversity_report,
    write_histogram, write_journal_results, write_references, write_summary,
    write_top_journals,
)
from citediss._similarity import (
    SimilarityDiagnostics, SimilarityMatrix, pairwise_similarity, profile_diagnostics,
)
from citediss._types import (
    ArticleRecord, CitationRecord, ConfigError, JournalRegistry, PipelineError,
)

logger = logging.getLogger(__name__)

STAGES = ("ingest", "similarity", "dissim", "report", "export")

REGISTRY_FILE = "registry.csv"
SIMILARITY_CSV = "similarity.csv"
SIMILARITY_BIN = "similarity.bin"
EMPTY_PROFILES_FILE = "empty_profiles.csv"
ARTICLES_FILE = "articles.csv"
JOURNALS_FILE = "journals.csv"
REFERENCES_FILE = "references.csv"
HISTOGRAM_FILE = "histogram.csv"
DECILES_FILE = "deciles.csv"
DIVERSITY_FILE = "diversity.csv"
BREAKDOWN_FILE = "category_breakdown.csv"
TOP_JOURNALS_FILE = "top_journals.csv"
SUMMARY_FILE = "summary.json"


@dataclass
class _Corpus:
    registry: JournalRegistry
    corpus: List[ArticleRecord]
    records: List[CitationRecord]
    _counts: Optional[CountMatrix] = None

    @property
    def counts(self) -> CountMatrix:
        if self._counts is None:
            self._counts = aggregate_counts(self.records, len(self.registry))
        return self._counts


class PipelineRun:
    """Shared state for the stages of one invocation.

    ``read_dir`` holds artifacts of earlier stages; ``write_dir`` receives
    new ones. Lookups try ``write_dir`` first, so a full run reads back
    what its own earlier stages just wrote.
    """

    def __init__(self, config: PipelineConfig, read_dir: Path, write_dir: Path):
        self.config = config
        self.read_dir = Path(read_dir)
        self.write_dir = Path(write_dir)
        self._data: Optional[_Corpus] = None
        self._categories: Optional[CategoryMap] = None
        self._categories_loaded = False
        self.matrix: Optional[SimilarityMatrix] = None
        self.results = None
        self.journal_stats = None
        self.summary = {}

    def _find(self, name: str) -> Path:
        for folder in (self.write_dir, self.read_dir):
            if (folder / name).exists():
                return folder / name
        raise FileNotFoundError(
            f"{self.read_dir / name} not found; run the stage that produces it first")

    @property
    def data(self) -> _Corpus:
        if self._data is None:
            if not self.config.citations:
                raise FileNotFoundError("no citations file configured (--citations)")
            registry, corpus, records = parse_citations(
                self.config.citations, self.config.ingest_config())
            self._data = _Corpus(registry, corpus, records)
        return self._data

    @property
    def categories(self) -> Optional[CategoryMap]:
        if not self._categories_loaded:
            self._categories_loaded = True
            if self.config.categories:
                self._categories = parse_categories(
                    self.config.categories, self.config.multidisciplinary_label,
                    self.data.registry)
            else:
                logger.warning("no categories file configured; "
                               "category reports are skipped")
        return self._categories

    def load_matrix(self) -> SimilarityMatrix:
        if self.matrix is not None:
            return self.matrix
        self._check_registry()
        n = len(self.data.registry)
        diagnostics = profile_diagnostics(normalize_profiles(self.data.counts))
        if self.config.storage == "dense":
            self.matrix = SimilarityMatrix.from_dense_file(self._find(SIMILARITY_BIN),
                                                           diagnostics)
        else:
            upper = read_similarity_csv(self._find(SIMILARITY_CSV), n)
            self.matrix = SimilarityMatrix(n, upper=upper, diagnostics=diagnostics)
        return self.matrix

    def _check_registry(self):
        try:
            saved = read_registry(self._find(REGISTRY_FILE))
        except FileNotFoundError:
            return
        if saved.names != self.data.registry.names:
            raise ValueError("registry.csv does not match the citations file; "
                             "rerun the ingest stage")

    def load_results(self):
        if self.results is None:
            self.results = read_article_results(self._find(ARTICLES_FILE))
        if self.journal_stats is None:
            self.journal_stats = read_journal_results(self._find(JOURNALS_FILE))
        return self.results, self.journal_stats


def stage_ingest(run: PipelineRun):
    """Parse the citations file and write the journal registry."""
    data = run.data
    write_registry(data.registry, run.write_dir / REGISTRY_FILE)
    summary = ingest_report(data.corpus)
    run.summary["ingest"] = summary
    return summary


def stage_similarity(run: PipelineRun) -> SimilarityMatrix:
    """Compute all pairwise similarities and write them with diagnostics."""
    data = run.data
    profiles = normalize_profiles(data.counts)
    if run.config.storage == "dense":
        options = run.config.similarity_options(run.write_dir / SIMILARITY_BIN)
    else:
        options = run.config.similarity_options()
    matrix = pairwise_similarity(profiles, options)
    if matrix.storage == "sparse":
        write_similarity_csv(*matrix.upper_entries(), run.write_dir / SIMILARITY_CSV)
    _write_empty_profiles(matrix.diagnostics, data.registry,
                          run.write_dir / EMPTY_PROFILES_FILE)
    run.matrix = matrix
    run.summary["similarity"] = {
        "journals": matrix.n,
        "stored_pairs": matrix.nnz,
        "empty_profiles": len(matrix.diagnostics.empty_profiles),
        "undefined_pairs": matrix.diagnostics.undefined_pairs,
    }
    return matrix


def _write_empty_profiles(diagnostics: SimilarityDiagnostics, registry: JournalRegistry,
                          path):
    ids = list(diagnostics.empty_profiles)
    pd.DataFrame({"journal_id": ids, "name": [registry.name_of(g) for g in ids]},
                 columns=["journal_id", "name"]).to_csv(path, index=False,
                                                        lineterminator="\n")


def stage_dissim(run: PipelineRun):
    """Score every article and average per publishing journal."""
    data = run.data
    matrix = run.load_matrix()
    results = corpus_dissimilarities(data.corpus, matrix, threads=run.config.threads)
    journal_stats = journal_mean_dissimilarity(results)
    write_article_results(results, run.write_dir / ARTICLES_FILE)
    write_journal_results(journal_stats, data.registry, run.write_dir / JOURNALS_FILE)
    write_references(annotate_references(data.corpus, matrix),
                     run.write_dir / REFERENCES_FILE)
    run.results, run.journal_stats = results, journal_stats
    return results, journal_stats


def stage_report(run: PipelineRun):
    """Histogram, deciles, category analyses, top journals and summary."""
    config = run.config
    results, journal_stats = run.load_results()
    data = run.data

    write_histogram(histogram(results, config.bin_width), run.write_dir / HISTOGRAM_FILE)
    write_top_journals(top_journals(journal_stats, data.registry, config.top_n),
                       run.write_dir / TOP_JOURNALS_FILE)

    filtered = filter_by_min_refs(results, config.min_refs)
    extremes = extreme_articles(results, config.low_extreme, config.high_extreme)
    categories = run.categories
    report = {
        "articles_scored": sum(1 for r in results if r.scored),
        "articles_total": len(results),
        "articles_after_min_refs": len(filtered.kept),
        "retained_citation_share": filtered.retained_citation_share,
        "journals_scored": len(journal_stats),
        "min_refs": config.min_refs,
    }

    classes = None
    if len(filtered.kept) >= 10:
        classes = decile_classes(filtered.kept)
        report["decile_breakpoints"] = list(classes.breakpoints)
    else:
        logger.warning("only %d articles have >= %d references; decile reports skipped",
                       len(filtered.kept), config.min_refs)

    if classes is not None:
        shares = multidisciplinary_share(classes, categories, filtered.kept) \
            if categories is not None else None
        write_decile_report(classes, shares, run.write_dir / DECILES_FILE)

    if categories is not None:
        cohort = exclude_multidisciplinary(filtered.kept, categories)
        report["diversity_cohort"] = len(cohort)
        if len(cohort) >= 10:
            write_diversity_report(
                category_diversity_by_decile(decile_classes(cohort), categories,
                                             data.corpus),
                run.write_dir / DIVERSITY_FILE)
        else:
            logger.warning("only %d articles outside multidisciplinary journals; "
                           "diversity report skipped", len(cohort))
        scored = {r.article_id for r in filtered.kept}
        breakdowns = [article_category_breakdown(a, categories)
                      for a in data.corpus if a.article_id in scored]
        write_category_breakdowns(breakdowns, run.write_dir / BREAKDOWN_FILE)

    run.summary["report"] = report
    run.summary["extremes"] = extremes
    write_summary(run.write_dir / SUMMARY_FILE, **run.summary)
    return report


def stage_export(run: PipelineRun):
    """Write the map and network files."""
    _, journal_stats = run.load_results()
    network, _, _ = export_network(
        run.load_matrix(), journal_stats, run.data.registry, run.data.counts,
        run.write_dir, run.config.min_inbound_citations, run.config.min_articles)
    run.summary["export"] = {
        "nodes": len(network.nodes),
        "edges": len(network.edges),
        "retained_citation_share": network.retained_citation_share,
    }
    return network


_STAGE_FUNCTIONS = {
    "ingest": stage_ingest,
    "similarity": stage_similarity,
    "dissim": stage_dissim,
    "report": stage_report,
    "export": stage_export,
}


@contextmanager
def _staging(out: Path):
    out.mkdir(parents=True, exist_ok=True)
    staging = Path(tempfile.mkdtemp(prefix=".staging-", dir=out))
    try:
        yield staging
    except BaseException:
        shutil.rmtree(staging, ignore_errors=True)
        raise
    for path in sorted(staging.iterdir()):
        os.replace(path, out / path.name)
    staging.rmdir()


def run_stages(config: PipelineConfig, stages=STAGES) -> PipelineRun:
    """
    Run the named stages in pipeline order and commit their artifacts.

    Raises:
        ConfigError: no citations file is configured.
        FileNotFoundError: a configured input file does not exist.
        PipelineError: a stage failed; nothing from this call is left in
            the output directory.
    """
    unknown = [s for s in stages if s not in _STAGE_FUNCTIONS]
    if unknown:
        raise ValueError(f"unknown stages {unknown}; choose from {STAGES}")
    if not config.citations:
        raise ConfigError("no citations file configured (--citations)")
    for name, path in (("citations", config.citations), ("categories", config.categories)):
        if path and not Path(path).exists():
            raise FileNotFoundError(f"{name} file not found: {path}")
    out = Path(config.out)
    with _staging(out) as staging:
        run = PipelineRun(config, read_dir=out, write_dir=staging)
        for stage in STAGES:
            if stage not in stages:
                continue
            logger.info("stage %s", stage)
            try:
                _STAGE_FUNCTIONS[stage](run)
            except PipelineError:
                raise
            except Exception as e:
                raise PipelineError(stage, str(e)) from e
        # summary.json already has the report; refresh it when export ran too
        if "report" in stages and "export" in stages:
            write_summary(staging / SUMMARY_FILE, **run.summary)
    # the dense matrix was opened from the staging path
    if run.matrix is not None and run.matrix.dense_path:
        run.matrix.dense_path = str(out / SIMILARITY_BIN)
    return run


def run_pipeline(config: PipelineConfig) -> PipelineRun:
    """Run every stage end to end."""
    return run_stages(config, STAGES)

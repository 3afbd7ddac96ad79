"""Citation file parsing, journal registry and corpus assembly.

The citations file has one row per reference occurrence. The default
layout is ``pub_year,article_id,citing_journal,cited_journal`` with an
optional fifth column that is ignored. Journals may be given as names or
as numeric ids; both are treated as strings and normalized before dense
ids are assigned in lexicographic order.
"""

import csv
import logging
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from citediss._types import (
    ArticleRecord, CitationParseError, CitationRecord, JournalRegistry,
)

logger = logging.getLogger(__name__)

ROLES = ("pub_year", "article_id", "citing_journal", "cited_journal")
DEFAULT_COLUMNS = {role: i for i, role in enumerate(ROLES)}

_PANDAS_LINE = re.compile(r"line (\d+)")


@dataclass(frozen=True)
class IngestConfig:
    """How to read a citations file."""
    delimiter: str = ","
    has_header: bool = True
    columns: Dict[str, int] = field(default_factory=lambda: dict(DEFAULT_COLUMNS))
    year_start: Optional[int] = None
    year_end: Optional[int] = None

    def __post_init__(self):
        if set(self.columns) != set(ROLES):
            raise ValueError(f"columns must map exactly {ROLES}, got {sorted(self.columns)}")
        positions = list(self.columns.values())
        if len(set(positions)) != len(positions) or min(positions) < 0:
            raise ValueError(f"column positions must be distinct and >= 0: {self.columns}")
        if (self.year_start is not None and self.year_end is not None
                and self.year_start > self.year_end):
            raise ValueError(f"year window is empty: {self.year_start} > {self.year_end}")


@dataclass(frozen=True)
class IngestSummary:
    articles: int
    citing_journals: int
    cited_journals: int
    total_citations: int
    unmatched_refs: int
    match_rate: float


def normalize_journal_name(text) -> str:
    """Trim, collapse internal whitespace and case-fold."""
    return " ".join(str(text).split()).casefold()


def _normalize_series(values: pd.Series) -> pd.Series:
    return values.str.split().str.join(" ").str.casefold()


def _read_rows(path, config: IngestConfig) -> Optional[pd.DataFrame]:
    """Read all fields as strings; None for a file without data rows."""
    try:
        frame = pd.read_csv(
            path, sep=config.delimiter, header=None,
            skiprows=1 if config.has_header else 0,
            dtype=str, keep_default_na=False, na_filter=False,
            skip_blank_lines=False, engine="c",
        )
    except pd.errors.EmptyDataError:
        return None
    except pd.errors.ParserError as e:
        m = _PANDAS_LINE.search(str(e))
        raise CitationParseError(path, int(m.group(1)) if m else None,
                                 f"malformed row ({e})") from e
    frame = frame.fillna("")
    frame.columns = range(frame.shape[1])
    return frame


def _line_of(index, config: IngestConfig) -> int:
    return int(index) + 1 + (1 if config.has_header else 0)


def _first_short_line(path, config: IngestConfig, needed: int) -> Optional[int]:
    """
    Line number of the first non-blank row with fewer than ``needed`` fields.

    The C parser pads short rows with empty strings, which would read as a
    blank cited journal, so field counts are taken from the raw rows.
    """
    with open(path, newline="", encoding="utf-8") as f:
        rows = csv.reader(f, delimiter=config.delimiter)
        if config.has_header:
            next(rows, None)
        for row in rows:
            if len(row) < needed and any(v.strip() for v in row):
                return rows.line_num
    return None


def _empty_registry() -> JournalRegistry:
    return JournalRegistry(names=(), is_citing=(), is_cited=())


def parse_citations(path, config: IngestConfig = None
                    ) -> Tuple[JournalRegistry, List[ArticleRecord], List[CitationRecord]]:
    """
    Parse a citations file into a registry, an article corpus and records.

    Args:
        path: Delimited text file, one row per reference occurrence.
        config: Delimiter, header flag, column positions and year window.

    Returns:
        (registry, corpus, records). The corpus is sorted by article id and
        keeps each article's references in file order, duplicates included.
        Records are in file order.

    Raises:
        FileNotFoundError: path does not exist.
        CitationParseError: a row is malformed; the error names the line.
    """
    config = config or IngestConfig()
    frame = _read_rows(path, config)
    if frame is None or frame.empty:
        logger.warning("%s has no citation rows; corpus is empty", path)
        return _empty_registry(), [], []

    needed = max(config.columns.values()) + 1
    if frame.shape[1] < needed:
        raise CitationParseError(
            path, _line_of(frame.index[0], config),
            f"expected at least {needed} fields, found {frame.shape[1]}",
        )
    short = _first_short_line(path, config, needed)
    if short is not None:
        raise CitationParseError(path, short, f"expected at least {needed} fields")

    cols = config.columns
    raw = frame[[cols[r] for r in ROLES]].copy()
    raw.columns = list(ROLES)
    raw = raw[~(raw == "").all(axis=1)]
    if raw.empty:
        logger.warning("%s has no citation rows; corpus is empty", path)
        return _empty_registry(), [], []

    article = raw["article_id"].str.strip()
    citing = _normalize_series(raw["citing_journal"])
    cited = _normalize_series(raw["cited_journal"])
    citing_text = raw["citing_journal"].str.split().str.join(" ")
    cited_text = raw["cited_journal"].str.split().str.join(" ")
    year = pd.to_numeric(raw["pub_year"].str.strip(), errors="coerce")

    problems = [
        (year.isna() | (year != year.round()), "publication year is not an integer"),
        (article == "", "article id is empty"),
        (citing == "", "citing journal is empty"),
    ]
    for bad, reason in problems:
        if bad.any():
            raise CitationParseError(path, _line_of(bad.idxmax(), config), reason)
    year = year.astype(np.int64)

    for key, what in ((citing, "journals"), (year, "years")):
        first = key.groupby(article, sort=False).transform("first")
        conflict = key != first
        if conflict.any():
            idx = conflict.idxmax()
            raise CitationParseError(
                path, _line_of(idx, config),
                f"article {article[idx]!r} appears with different publication {what}",
            )

    in_window = pd.Series(True, index=raw.index)
    if config.year_start is not None:
        in_window &= year >= config.year_start
    if config.year_end is not None:
        in_window &= year <= config.year_end
    n_outside = int((~in_window).sum())
    if n_outside:
        logger.info("dropped %d rows outside years %s-%s",
                    n_outside, config.year_start, config.year_end)
        article, citing, cited, year, citing_text, cited_text = (
            s[in_window] for s in (article, citing, cited, year, citing_text, cited_text))
    if article.empty:
        logger.warning("%s has no citation rows inside the year window", path)
        return _empty_registry(), [], []

    citing_names = set(citing)
    cited_names = set(cited[cited != ""])
    names = tuple(sorted(citing_names | cited_names))
    # display spelling: first seen as a citing journal, else first seen as cited
    shown = cited_text[cited != ""].groupby(cited[cited != ""], sort=False).first().to_dict()
    shown.update(citing_text.groupby(citing, sort=False).first().to_dict())
    registry = JournalRegistry(
        names=names,
        is_citing=tuple(n in citing_names for n in names),
        is_cited=tuple(n in cited_names for n in names),
        labels=tuple(shown[n] for n in names),
    )
    index = {n: i for i, n in enumerate(names)}
    citing_ids = citing.map(index).to_numpy(dtype=np.int64)
    cited_ids = cited.map(index).fillna(-1).to_numpy(dtype=np.int64)
    article_ids = article.to_numpy(dtype=object)
    years = year.to_numpy(dtype=np.int64)

    records = [
        CitationRecord(a, int(y), int(j), int(g))
        for a, y, j, g in zip(article_ids, years, citing_ids, cited_ids)
        if g >= 0
    ]

    corpus = []
    order = np.argsort(article_ids, kind="stable")
    start = 0
    while start < len(order):
        stop = start
        aid = article_ids[order[start]]
        while stop < len(order) and article_ids[order[stop]] == aid:
            stop += 1
        rows = order[start:stop]
        occurrences = cited_ids[rows]
        corpus.append(ArticleRecord(
            article_id=aid,
            pub_year=int(years[rows[0]]),
            published_journal=int(citing_ids[rows[0]]),
            cited_occurrences=tuple(int(g) for g in occurrences if g >= 0),
            unmatched_refs=int((occurrences < 0).sum()),
        ))
        start = stop

    logger.info("parsed %s: %d articles, %d citations, %d journals",
                path, len(corpus), len(records), len(registry))
    return registry, corpus, records


def ingest_report(corpus: List[ArticleRecord]) -> IngestSummary:
    """Count articles, journals and citations in a corpus."""
    citing = {a.published_journal for a in corpus}
    cited = {g for a in corpus for g in a.cited_occurrences}
    matched = sum(a.n_refs for a in corpus)
    unmatched = sum(a.unmatched_refs for a in corpus)
    total = matched + unmatched
    return IngestSummary(
        articles=len(corpus),
        citing_journals=len(citing),
        cited_journals=len(cited),
        total_citations=matched,
        unmatched_refs=unmatched,
        match_rate=matched / total if total else 0.0,
    )


def print_ingest_report(summary: IngestSummary):
    """Print an ingest summary table."""
    print("Corpus summary")
    print("=" * 40)
    print(f"  Articles:          {summary.articles}")
    print(f"  Citing journals:   {summary.citing_journals}")
    print(f"  Cited journals:    {summary.cited_journals}")
    print(f"  Citations:         {summary.total_citations}")
    print(f"  Unmatched refs:    {summary.unmatched_refs}")
    print(f"  Match rate:        {summary.match_rate:.1%}")


def write_registry(registry: JournalRegistry, path):
    """Write ``journal_id,name,label,is_citing,is_cited``."""
    frame = pd.DataFrame({
        "journal_id": np.arange(len(registry), dtype=np.int64),
        "name": list(registry.names),
        "label": list(registry.labels),
        "is_citing": np.array(registry.is_citing, dtype=np.int64),
        "is_cited": np.array(registry.is_cited, dtype=np.int64),
    })
    frame.to_csv(path, index=False, lineterminator="\n")


def read_registry(path) -> JournalRegistry:
    frame = pd.read_csv(path, dtype={"name": str, "label": str}, keep_default_na=False)
    if not (frame["journal_id"].to_numpy() == np.arange(len(frame))).all():
        raise ValueError(f"{path}: journal ids are not contiguous from 0")
    return JournalRegistry(
        names=tuple(frame["name"]),
        is_citing=tuple(bool(v) for v in frame["is_citing"]),
        is_cited=tuple(bool(v) for v in frame["is_cited"]),
        labels=tuple(frame["label"]) if "label" in frame else (),
    )

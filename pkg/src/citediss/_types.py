"""Record types, result types and errors for citediss."""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Optional, Tuple

# ArticleDissimilarity flags
UNSCORED = "unscored"
EMPTY_PUBLISHER_PROFILE = "empty_publisher_profile"
PUBLISHER_OUT_OF_UNIVERSE = "publisher_out_of_universe"


class CitationParseError(ValueError):
    """A citations or categories file row could not be parsed."""

    def __init__(self, path, line, reason):
        self.path = str(path)
        self.line = line
        self.reason = reason
        super().__init__(f"{self.path}:{line}: {reason}")


class ConfigError(ValueError):
    """Invalid or inconsistent pipeline settings."""


class PipelineError(RuntimeError):
    """A pipeline stage failed."""

    def __init__(self, stage, message):
        self.stage = stage
        super().__init__(f"stage '{stage}' failed: {message}")


class NetworkExportError(RuntimeError):
    """No journals left to export after threshold filtering."""


@dataclass(frozen=True)
class JournalRegistry:
    """Dense journal ids over the union of citing and cited journals.

    Ids are positions in ``names``, which is sorted lexicographically by
    normalized name. ``labels`` keeps a display spelling per journal and
    defaults to the normalized names.
    """
    names: Tuple[str, ...]
    is_citing: Tuple[bool, ...]
    is_cited: Tuple[bool, ...]
    labels: Tuple[str, ...] = ()
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(self.names))
        if not (len(self.names) == len(self.is_citing) == len(self.is_cited)
                == len(self.labels)):
            raise ValueError("registry columns differ in length")
        index = {name: i for i, name in enumerate(self.names)}
        if len(index) != len(self.names):
            raise ValueError("registry names are not unique")
        for i, (citing, cited) in enumerate(zip(self.is_citing, self.is_cited)):
            if not (citing or cited):
                raise ValueError(f"journal {i} ({self.names[i]!r}) has no role")
        object.__setattr__(self, "_index", index)

    def __len__(self):
        return len(self.names)

    def get_id(self, name: str) -> Optional[int]:
        """Id of an already-normalized journal name, or None."""
        return self._index.get(name)

    def name_of(self, journal_id: int) -> str:
        if not 0 <= journal_id < len(self.names):
            raise IndexError(f"journal id {journal_id} out of range "
                             f"[0, {len(self.names)})")
        return self.names[journal_id]

    def label_of(self, journal_id: int) -> str:
        self.name_of(journal_id)
        return self.labels[journal_id]

    @property
    def n_citing(self) -> int:
        return sum(self.is_citing)

    @property
    def n_cited(self) -> int:
        return sum(self.is_cited)


@dataclass(frozen=True, slots=True)
class CitationRecord:
    """One reference occurrence."""
    article_id: str
    pub_year: int
    citing_journal: int
    cited_journal: int


@dataclass(frozen=True, slots=True)
class ArticleRecord:
    """An institutional article with its reference occurrences."""
    article_id: str
    pub_year: int
    published_journal: int
    cited_occurrences: Tuple[int, ...]   # one id per reference, duplicates kept
    unmatched_refs: int = 0              # references with no indexed journal

    @property
    def n_refs(self) -> int:
        return len(self.cited_occurrences)


@dataclass(frozen=True, slots=True)
class ArticleDissimilarity:
    """Mean dissimilarity of one article to the journals it cites."""
    article_id: str
    published_journal: int
    mean_dissimilarity: Optional[float]   # None when unscored
    matched_refs: int
    skipped_refs: int
    flags: FrozenSet[str] = frozenset()

    @property
    def scored(self) -> bool:
        return self.mean_dissimilarity is not None


@dataclass(frozen=True, slots=True)
class JournalDissimilarity:
    """Unweighted mean of article dissimilarities per publishing journal."""
    journal_id: int
    mean_dissimilarity: float
    article_count: int

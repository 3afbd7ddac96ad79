"""Journal subject categories and the multidisciplinary flag."""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Union

import pandas as pd

from citediss._ingest import normalize_journal_name
from citediss._types import CitationParseError, JournalRegistry

logger = logging.getLogger(__name__)

UNCATEGORIZED: FrozenSet[str] = frozenset()

DEFAULT_MULTIDISCIPLINARY_LABEL = "multidisciplinary sciences"


@dataclass(frozen=True)
class CategoryMap:
    """Normalized journal name -> categories, resolvable by journal id.

    Journals missing from the map return ``UNCATEGORIZED`` (an empty set)
    and are never multidisciplinary.
    """
    categories: Dict[str, FrozenSet[str]]
    multidisciplinary_label: str
    registry: Optional[JournalRegistry] = None

    def _key(self, journal: Union[int, str]) -> Optional[str]:
        if isinstance(journal, str):
            return normalize_journal_name(journal)
        if self.registry is None or not 0 <= journal < len(self.registry):
            return None
        return self.registry.names[journal]

    def categories_for(self, journal: Union[int, str]) -> FrozenSet[str]:
        key = self._key(journal)
        return self.categories.get(key, UNCATEGORIZED) if key is not None else UNCATEGORIZED

    def is_categorized(self, journal: Union[int, str]) -> bool:
        return bool(self.categories_for(journal))

    def is_multidisciplinary(self, journal: Union[int, str]) -> bool:
        return self.multidisciplinary_label in self.categories_for(journal)

    @property
    def multidisciplinary_journals(self) -> FrozenSet[str]:
        return frozenset(name for name, cats in self.categories.items()
                         if self.multidisciplinary_label in cats)


def parse_categories(path, multidisciplinary_label: str = DEFAULT_MULTIDISCIPLINARY_LABEL,
                     registry: JournalRegistry = None,
                     delimiter: str = ",", has_header: bool = True) -> CategoryMap:
    """
    Read ``journal,category`` pairs.

    Journal and category names are normalized like journal names in the
    citations file, so the label comparison is exact after normalization.
    Journals the registry does not know are kept under their own name.
    """
    try:
        frame = pd.read_csv(
            path, sep=delimiter, header=None, skiprows=1 if has_header else 0,
            dtype=str, keep_default_na=False, na_filter=False,
            skip_blank_lines=True, usecols=[0, 1],
        )
    except pd.errors.EmptyDataError:
        frame = pd.DataFrame(columns=[0, 1])
    except (pd.errors.ParserError, ValueError) as e:
        raise CitationParseError(path, None, f"expected journal,category rows ({e})") from e
    frame = frame.fillna("")

    label = normalize_journal_name(multidisciplinary_label)
    pairs: Dict[str, set] = {}
    for idx, journal, category in frame.itertuples(index=True, name=None):
        journal = normalize_journal_name(journal)
        category = normalize_journal_name(category)
        if not journal or not category:
            line = int(idx) + 1 + (1 if has_header else 0)
            raise CitationParseError(path, line, "journal or category is empty")
        pairs.setdefault(journal, set()).add(category)

    if registry is not None:
        unknown = sorted(j for j in pairs if registry.get_id(j) is None)
        if unknown:
            logger.warning("%d categorized journals are not in the corpus (e.g. %r)",
                           len(unknown), unknown[0])

    categories = {j: frozenset(c) for j, c in sorted(pairs.items())}
    cmap = CategoryMap(categories, label, registry)
    logger.info("loaded categories for %d journals, %d multidisciplinary",
                len(categories), len(cmap.multidisciplinary_journals))
    return cmap

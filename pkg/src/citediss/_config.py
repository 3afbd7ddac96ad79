"""
Pipeline configuration.

Settings are resolved from, in increasing priority:
    1. the bundled defaults (data/defaults.cfg)
    2. a user config file of ``key = value`` lines
    3. environment variables CITEDISS_<KEY> (e.g. CITEDISS_MIN_REFS=5)
    4. explicit overrides (command-line flags)
"""

import logging
import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Dict, Mapping, Optional

from citediss._categories import DEFAULT_MULTIDISCIPLINARY_LABEL
from citediss._ingest import IngestConfig
from citediss._similarity import STORAGE_MODES, SimilarityOptions
from citediss._types import ConfigError

logger = logging.getLogger(__name__)

ENV_PREFIX = "CITEDISS_"
_DEFAULTS_FILE = Path(__file__).parent / "data" / "defaults.cfg"
_DEFAULTS_CACHE = None


def _optional(convert):
    def parse(text):
        return None if text == "" else convert(text)
    return parse


def _boolean(text):
    lowered = text.lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _delimiter(text):
    return "\t" if text in ("\\t", "tab") else text


_CONVERTERS = {
    "citations": _optional(str),
    "categories": _optional(str),
    "out": str,
    "delimiter": _delimiter,
    "has_header": _boolean,
    "year_start": _optional(int),
    "year_end": _optional(int),
    "min_inbound_citations": int,
    "min_refs": int,
    "min_articles": int,
    "multidisciplinary_label": str,
    "storage": str,
    "sparsity_floor": float,
    "threads": int,
    "bin_width": float,
    "top_n": int,
    "low_extreme": float,
    "high_extreme": float,
}


@dataclass(frozen=True)
class PipelineConfig:
    """Resolved settings for every pipeline stage."""
    citations: Optional[str] = None
    categories: Optional[str] = None
    out: str = "citediss_out"
    delimiter: str = ","
    has_header: bool = True
    year_start: Optional[int] = None
    year_end: Optional[int] = None
    min_inbound_citations: int = 10
    min_refs: int = 10
    min_articles: int = 0
    multidisciplinary_label: str = DEFAULT_MULTIDISCIPLINARY_LABEL
    storage: str = "sparse"
    sparsity_floor: float = 0.0
    threads: int = 1
    bin_width: float = 0.05
    top_n: int = 20
    low_extreme: float = 0.02
    high_extreme: float = 0.98
    sources: Dict[str, str] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        for name in ("min_inbound_citations", "min_refs", "min_articles", "top_n"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be >= 0, got {getattr(self, name)}")
        if (self.year_start is not None and self.year_end is not None
                and self.year_start > self.year_end):
            raise ConfigError(f"year_start {self.year_start} is after year_end {self.year_end}")
        if self.storage not in STORAGE_MODES:
            raise ConfigError(f"storage must be one of {STORAGE_MODES}, got {self.storage!r}")
        if self.threads < 1:
            raise ConfigError(f"threads must be >= 1, got {self.threads}")
        if not 0.0 < self.bin_width <= 1.0:
            raise ConfigError(f"bin_width must be in (0, 1], got {self.bin_width}")
        if not 0.0 <= self.sparsity_floor < 1.0:
            raise ConfigError(f"sparsity_floor must be in [0, 1), got {self.sparsity_floor}")
        if not 0.0 <= self.low_extreme <= self.high_extreme <= 1.0:
            raise ConfigError("extremes must satisfy 0 <= low_extreme <= high_extreme <= 1")
        if len(self.delimiter) != 1:
            raise ConfigError(f"delimiter must be one character, got {self.delimiter!r}")

    def ingest_config(self) -> IngestConfig:
        return IngestConfig(delimiter=self.delimiter, has_header=self.has_header,
                            year_start=self.year_start, year_end=self.year_end)

    def similarity_options(self, dense_path=None) -> SimilarityOptions:
        return SimilarityOptions(storage=self.storage, sparsity_floor=self.sparsity_floor,
                                 threads=self.threads,
                                 dense_path=str(dense_path) if dense_path else None)


def parse_config_file(path) -> Dict[str, str]:
    """Read ``key = value`` lines; ``#`` starts a comment line."""
    values = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            key, value = stripped.split("=", 1)
            key = key.strip().lower().replace("-", "_")
            if key not in _CONVERTERS:
                raise ConfigError(f"{path}:{lineno}: unknown setting {key!r}")
            values[key] = value.strip()
    return values


def _load_defaults() -> Dict[str, str]:
    global _DEFAULTS_CACHE
    if _DEFAULTS_CACHE is None:
        _DEFAULTS_CACHE = parse_config_file(_DEFAULTS_FILE)
    return _DEFAULTS_CACHE


def env_overrides(environ: Mapping[str, str] = None) -> Dict[str, str]:
    """Settings taken from CITEDISS_* environment variables."""
    environ = os.environ if environ is None else environ
    values = {}
    for name, value in environ.items():
        if not name.startswith(ENV_PREFIX):
            continue
        key = name[len(ENV_PREFIX):].lower()
        if key not in _CONVERTERS:
            logger.warning("ignoring unknown environment setting %s", name)
            continue
        values[key] = value.strip()
    return values


def resolve_config(config_file=None, overrides: Mapping[str, object] = None,
                   environ: Mapping[str, str] = None) -> PipelineConfig:
    """
    Build a PipelineConfig from defaults, file, environment and overrides.

    Overrides with value None are ignored, so unset command-line flags
    fall through to lower layers.

    Raises:
        ConfigError: a value does not parse or fails validation.
    """
    raw: Dict[str, object] = {}
    sources: Dict[str, str] = {}
    layers = [("defaults", _load_defaults())]
    if config_file is not None:
        layers.append((str(config_file), parse_config_file(config_file)))
    layers.append(("env", env_overrides(environ)))
    for source, values in layers:
        for key, value in values.items():
            raw[key] = value
            sources[key] = source

    typed = {}
    for key, value in raw.items():
        try:
            typed[key] = _CONVERTERS[key](value)
        except ValueError as e:
            raise ConfigError(f"{key} = {value!r} from {sources[key]}: {e}") from e

    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in _CONVERTERS:
            raise ConfigError(f"unknown setting {key!r}")
        typed[key] = value
        sources[key] = "flag"

    known = {f.name for f in fields(PipelineConfig)} - {"sources"}
    return PipelineConfig(**{k: v for k, v in typed.items() if k in known}, sources=sources)


def print_config_status(config: PipelineConfig):
    """Print every resolved setting and the layer it came from."""
    print("citediss - Pipeline configuration")
    print("=" * 60)
    for f in fields(PipelineConfig):
        if f.name == "sources":
            continue
        value = getattr(config, f.name)
        shown = repr(value) if isinstance(value, str) else value
        print(f"  {f.name:<24} {str(shown):<24} ({config.sources.get(f.name, 'default')})")

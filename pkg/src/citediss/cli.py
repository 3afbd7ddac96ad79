"""
Command-line interface.

    citediss run --citations citations.csv --categories categories.csv --out results
    citediss similarity --citations citations.csv --threads 4 --storage dense
    citediss report --citations citations.csv --min-refs 5
    citediss run --config project.cfg --show-config

Exit codes: 0 success, 1 a stage failed, 2 bad invocation or missing input.
"""

import argparse
import logging
import sys

from citediss._config import print_config_status, resolve_config
from citediss._ingest import print_ingest_report
from citediss._pipeline import STAGES, run_stages
from citediss._types import ConfigError, PipelineError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_STAGE_FAILED = 1
EXIT_USAGE = 2

# flag dest -> PipelineConfig key
_FLAG_KEYS = {
    "citations": "citations",
    "categories": "categories",
    "out": "out",
    "delimiter": "delimiter",
    "has_header": "has_header",
    "year_start": "year_start",
    "year_end": "year_end",
    "min_citations": "min_inbound_citations",
    "min_refs": "min_refs",
    "min_articles": "min_articles",
    "multidisciplinary_label": "multidisciplinary_label",
    "storage": "storage",
    "sparsity_floor": "sparsity_floor",
    "threads": "threads",
    "bin_width": "bin_width",
    "top_n": "top_n",
}

_COMMANDS = {
    "ingest": ("Parse citations and write the journal registry.", ("ingest",)),
    "similarity": ("Compute pairwise journal similarities.", ("similarity",)),
    "dissim": ("Score articles and journals against the similarity matrix.", ("dissim",)),
    "report": ("Write histogram, decile and category reports.", ("report",)),
    "export": ("Write map and network files for visualization.", ("export",)),
    "run": ("Run every stage end to end.", STAGES),
}


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("settings (override config file and environment)")
    group.add_argument("--config", default=None, help="key = value settings file")
    group.add_argument("--citations", default=None, help="citations file")
    group.add_argument("--categories", default=None, help="journal,category file")
    group.add_argument("--out", default=None, help="output directory")
    group.add_argument("--delimiter", default=None, help="field delimiter of input files")
    group.add_argument("--no-header", dest="has_header", action="store_const", const=False,
                       default=None, help="input files have no header row")
    group.add_argument("--year-start", type=int, default=None)
    group.add_argument("--year-end", type=int, default=None)
    group.add_argument("--min-citations", type=int, default=None,
                       help="received citations a journal needs to enter the network")
    group.add_argument("--min-refs", type=int, default=None,
                       help="matched references an article needs for the decile reports")
    group.add_argument("--min-articles", type=int, default=None,
                       help="scored articles a journal needs to enter the network")
    group.add_argument("--multidisciplinary-label", default=None)
    group.add_argument("--storage", choices=("sparse", "dense"), default=None)
    group.add_argument("--sparsity-floor", type=float, default=None)
    group.add_argument("--threads", type=int, default=None)
    group.add_argument("--bin-width", type=float, default=None)
    group.add_argument("--top-n", type=int, default=None)
    group.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    group.add_argument("--show-config", action="store_true",
                       help="print the resolved configuration and exit")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="citediss",
        description="Journal similarity and article dissimilarity from citation data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_flags()
    for name, (help_text, _) in _COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    overrides = {key: getattr(args, dest) for dest, key in _FLAG_KEYS.items()}
    try:
        config = resolve_config(args.config, overrides)
    except FileNotFoundError as e:
        print(f"Error: config file not found: {e.filename}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    if args.show_config:
        print_config_status(config)
        return EXIT_OK

    _, stages = _COMMANDS[args.command]
    try:
        run = run_stages(config, stages)
    except (ConfigError, FileNotFoundError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except PipelineError as e:
        logger.debug("stage failure", exc_info=True)
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_STAGE_FAILED

    if "ingest" in run.summary:
        print_ingest_report(run.summary["ingest"])
    print(f"Artifacts written to {config.out}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

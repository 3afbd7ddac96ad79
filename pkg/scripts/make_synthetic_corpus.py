#!/usr/bin/env python3
"""Generate a synthetic citations file and categories file.

The default corpus is small (about 200 articles, 50 journals) and is the
one the test suite builds from. ``--desk-scale`` produces the large
corpus used by the similarity benchmark: 10,000 cited journals, 500
citing journals and about 300,000 citation rows.

Run: python scripts/make_synthetic_corpus.py --out synthetic/
"""

import argparse
from dataclasses import replace

from citediss._synthetic import DESK_SCALE, SyntheticSpec, synthetic_corpus


def main():
    parser = argparse.ArgumentParser(
        description="Write a seeded synthetic citation corpus."
    )
    parser.add_argument("--out", default="synthetic", help="Output directory.")
    parser.add_argument("--seed", type=int, default=None, help="RNG seed.")
    parser.add_argument("--articles", type=int, default=None,
                        help="Number of articles.")
    parser.add_argument("--unmatched-rate", type=float, default=None,
                        help="Share of references left blank (unmatched).")
    parser.add_argument("--desk-scale", action="store_true",
                        help="Generate the large benchmark corpus.")
    args = parser.parse_args()

    spec = DESK_SCALE if args.desk_scale else SyntheticSpec()
    changes = {"seed": args.seed, "n_articles": args.articles,
               "unmatched_rate": args.unmatched_rate}
    spec = replace(spec, **{k: v for k, v in changes.items() if v is not None})

    corpus = synthetic_corpus(spec)
    citations_path, categories_path = corpus.write(args.out)
    print(f"Citations saved to {citations_path} ({len(corpus.citations)} rows)")
    print(f"Categories saved to {categories_path} ({len(corpus.categories)} rows)")
    print(f"Articles: {spec.n_articles}, clusters: {spec.n_clusters}, "
          f"journals per cluster: {spec.journals_per_cluster}")


if __name__ == "__main__":
    main()

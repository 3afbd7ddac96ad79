"""End-to-end pipeline and command-line tests."""

import json
import os

import pytest

from citediss import PipelineConfig, PipelineError, run_pipeline, run_stages
from citediss.cli import main
from conftest import DATA_DIR

FIXTURE = DATA_DIR / "three_journals.csv"

ARTIFACTS = [
    "registry.csv", "similarity.csv", "empty_profiles.csv", "articles.csv",
    "journals.csv", "references.csv", "histogram.csv", "deciles.csv",
    "diversity.csv", "category_breakdown.csv", "top_journals.csv", "summary.json",
    "map.txt", "network.txt",
]


def _config(out, citations, categories=None, **changes):
    return PipelineConfig(citations=str(citations),
                          categories=str(categories) if categories else None,
                          out=str(out), **changes)


def _snapshot(folder):
    return {name: (folder / name).read_bytes() for name in sorted(os.listdir(folder))}


def test_three_journal_golden_run(tmp_path):
    out = tmp_path / "out"
    run_pipeline(_config(out, FIXTURE, min_inbound_citations=3))
    for name in ("articles.csv", "journals.csv"):
        golden = DATA_DIR / f"three_journals_{name}"
        assert (out / name).read_bytes() == golden.read_bytes()
    assert (out / "map.txt").read_bytes() == (DATA_DIR / "three_journals_map.txt").read_bytes()
    assert (out / "network.txt").read_bytes() == \
        (DATA_DIR / "three_journals_network.txt").read_bytes()
    # three articles are too few for deciles
    assert not (out / "deciles.csv").exists()


@pytest.mark.parametrize("storage", ["sparse", "dense"])
def test_four_journal_golden_run(tmp_path, storage):
    out = tmp_path / "out"
    run_pipeline(_config(out, DATA_DIR / "four_journals.csv",
                         DATA_DIR / "four_journals_categories.csv",
                         min_refs=4, storage=storage))
    for name in ("articles.csv", "journals.csv", "histogram.csv", "deciles.csv",
                 "diversity.csv", "map.txt", "network.txt"):
        golden = DATA_DIR / f"four_journals_{name}"
        assert (out / name).read_bytes() == golden.read_bytes(), name
    summary = json.loads((out / "summary.json").read_text())
    assert summary["report"]["articles_scored"] == 16
    assert summary["report"]["diversity_cohort"] == 12
    assert summary["export"]["edges"] == 6


def test_full_run_artifacts(tmp_path, synthetic_files):
    out = tmp_path / "out"
    run_pipeline(_config(out, *synthetic_files, min_refs=5))
    assert sorted(os.listdir(out)) == sorted(ARTIFACTS)
    deciles = (out / "deciles.csv").read_text().splitlines()
    assert deciles[0] == "class,lower,upper,size,multidisciplinary_share"
    assert len(deciles) == 11
    assert (out / "diversity.csv").read_text().startswith("class,mean_distinct_categories\n")
    summary = json.loads((out / "summary.json").read_text())
    assert summary["ingest"]["articles"] == 200
    assert summary["report"]["min_refs"] == 5
    assert summary["export"]["nodes"] > 0


def test_runs_are_byte_identical(tmp_path, synthetic_files):
    first = tmp_path / "first"
    second = tmp_path / "second"
    run_pipeline(_config(first, *synthetic_files))
    run_pipeline(_config(second, *synthetic_files, threads=4))
    assert _snapshot(first) == _snapshot(second)


def test_stage_by_stage_matches_full_run(tmp_path, synthetic_files):
    full = tmp_path / "full"
    staged = tmp_path / "staged"
    run_pipeline(_config(full, *synthetic_files))
    for stage in ("ingest", "similarity", "dissim", "report", "export"):
        run_stages(_config(staged, *synthetic_files), [stage])
    for name in ARTIFACTS:
        if name == "summary.json":
            continue
        assert (staged / name).read_bytes() == (full / name).read_bytes(), name


def test_dense_storage_run(tmp_path, synthetic_files):
    out = tmp_path / "out"
    run_pipeline(_config(out, *synthetic_files, storage="dense"))
    assert (out / "similarity.bin").exists()
    assert not (out / "similarity.csv").exists()
    assert (out / "articles.csv").exists()


def test_failed_stage_leaves_nothing_behind(tmp_path):
    out = tmp_path / "out"
    with pytest.raises(PipelineError) as err:
        run_pipeline(_config(out, FIXTURE, min_inbound_citations=1000))
    assert err.value.stage == "export"
    assert os.listdir(out) == []


def test_later_stage_without_earlier_artifacts(tmp_path):
    with pytest.raises(PipelineError) as err:
        run_stages(_config(tmp_path / "out", FIXTURE), ["dissim"])
    assert err.value.stage == "dissim"


def test_cli_run(tmp_path, capsys):
    out = tmp_path / "out"
    code = main(["run", "--citations", str(FIXTURE), "--out", str(out),
                 "--min-citations", "3"])
    assert code == 0
    assert (out / "map.txt").exists()
    assert "Articles:" in capsys.readouterr().out


def test_cli_missing_input(tmp_path, capsys):
    missing = tmp_path / "nope.csv"
    code = main(["run", "--citations", str(missing), "--out", str(tmp_path / "out")])
    assert code == 2
    assert str(missing) in capsys.readouterr().err


def test_cli_stage_failure(tmp_path):
    code = main(["export", "--citations", str(FIXTURE), "--out", str(tmp_path / "out")])
    assert code == 1


def test_cli_bad_setting(tmp_path):
    code = main(["run", "--citations", str(FIXTURE), "--threads", "0"])
    assert code == 2


def test_cli_bad_invocation():
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2


def test_cli_show_config(capsys, monkeypatch):
    monkeypatch.setenv("CITEDISS_MIN_REFS", "3")
    assert main(["run", "--show-config", "--threads", "2"]) == 0
    out = capsys.readouterr().out
    assert "min_refs" in out and "(env)" in out and "(flag)" in out

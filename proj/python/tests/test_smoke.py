import os
from pathlib import Path

import pytest

import seorank

ROOT = Path(os.environ.get("SEORANK_SOURCE_DIR", Path(__file__).resolve().parents[2]))
REPLAY = str(ROOT / "data" / "replay_75.csv")


def test_registry():
    names = seorank.metric_names()
    assert len(names) == 38
    assert names[0] == "alexa_rank"


def test_shift_log_and_impact():
    assert seorank.shift_log([0, 9, 99], 1) == [0, 1, 2]
    assert seorank.impact_score([1, 2, 3], [2, 4, 6]) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(seorank.AnalysisError):
        seorank.impact_score([1, 1, 1], [1, 2, 3])


def test_reconstruct_counts():
    assert seorank.reconstruct_counts(61.54, 10.67, 75) == (8, 13)
    assert seorank.reconstruct_counts(100, 12.5, 75) is None


def test_impact_table_on_replay():
    rows = seorank.impact_table(REPLAY)
    assert len(rows) == 38
    assert rows[0]["metric"] == "indexed_pages"
    assert round(rows[0]["impact"], 3) == 0.662
    assert sum(r["impact"] is not None for r in rows) == 25


def test_mine_on_replay():
    report = seorank.mine(REPLAY)
    assert report["n"] == 75
    assert len(report["features"]) == 10
    hit = [r for r in report["rules"] if r["antecedent"] == "page_rank > 7.2"]
    assert hit and hit[0]["match_count"] == 9 and hit[0]["antecedent_count"] == 9


def test_onpage_metrics():
    m = seorank.onpage_metrics(
        "<!DOCTYPE html><title>Harvard University</title>"
        "<a href='/x'>x</a><a href='https://twitter.com/h'>t</a>",
        "https://www.harvard.edu/",
    )
    assert m["title_chars"] == 18
    assert m["total_links"] == 2
    assert m["social_media"] == 1
    with pytest.raises(seorank.ArgumentError):
        seorank.onpage_metrics("", "nope")


def test_cli():
    code, out, _ = seorank.run_cli(["impact", REPLAY, "--no-timestamp"])
    assert code == 0
    assert "| indexed_pages |" in out
    assert seorank.run_cli(["mine"])[0] == 2

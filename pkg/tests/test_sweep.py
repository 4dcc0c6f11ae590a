import csv
import math
import tracemalloc

import pytest

from lbounds.types import Verdict
from plugins.sweep.config import ConfigError, SweepConfig, default_parallelism, from_mapping, load_config
from plugins.sweep.formatting import summarize
from plugins.sweep.persistence import CSV_COLUMNS, write_report
from plugins.sweep.runner import GridTask, SweepSummary, applicable_bounds, classify, evaluate_task, run_sweep
from report_integrity import verify_fingerprint

BASE = {
    "q_min": 3,
    "q_max": 4,
    "t_start": 0.5,
    "t_stop": 60.0,
    "t_count": 2,
    "t_spacing": "log",
    "t_values": [60.0, 0.5],
    "target_radius": 1e-6,
    "evaluator": "both",
    "bounds_checked": ["theorem1", "theorem2", "corollary", "lemma"],
    "output_path": "sweep.csv",
    "parallelism": 1,
    "em_order": 1,
    "psum_max_terms": 100000,
}


def config(**overrides):
    return from_mapping({**BASE, **overrides})


def test_defaults_file_loads():
    cfg = load_config()
    assert cfg.q_min == 3
    assert len(cfg.t_grid()) == 40
    assert cfg.parallelism >= 1


@pytest.mark.parametrize(
    "overrides",
    [
        {"q_min": 2},
        {"q_max": 2},
        {"target_radius": 0.0},
        {"evaluator": "exact"},
        {"bounds_checked": ["theorem3"]},
        {"bounds_checked": []},
        {"parallelism": 0},
        {"em_order": 2},
        {"t_values": [1.0, -1.0]},
        {"q_min": True},
        {"t_start": "1"},
        {"t_spacing": "cubic", "t_values": None},
    ],
)
def test_invalid_configs_are_rejected(overrides):
    with pytest.raises(ConfigError):
        config(**overrides)


def test_unknown_and_missing_keys_are_rejected():
    with pytest.raises(ConfigError):
        from_mapping({**BASE, "colour": "blue"})
    values = dict(BASE)
    del values["q_max"]
    with pytest.raises(ConfigError):
        from_mapping(values)


def test_t_grid_spacing():
    log_grid = config(t_values=None, t_start=1.0, t_stop=100.0, t_count=3).t_grid()
    assert log_grid == pytest.approx((1.0, 10.0, 100.0))
    linear = config(t_values=None, t_start=1.0, t_stop=3.0, t_count=3, t_spacing="linear").t_grid()
    assert linear == (1.0, 2.0, 3.0)
    assert config().t_grid() == (0.5, 60.0)


def test_overrides_skip_none():
    cfg = config().with_overrides(output_path=None, parallelism=3)
    assert cfg.output_path == "sweep.csv"
    assert cfg.parallelism == 3


def test_applicable_bounds_respect_hypotheses():
    assert [name for name, _ in applicable_bounds(5, 10.0, BASE["bounds_checked"])] == ["theorem2", "corollary"]
    assert [name for name, _ in applicable_bounds(5, 50.5, BASE["bounds_checked"])] == [
        "theorem1",
        "theorem2",
        "corollary",
        "lemma",
    ]


def test_classify():
    assert classify(1.0, 0.1, 2.0) is Verdict.PASS
    assert classify(3.0, 0.1, 2.0) is Verdict.FAIL
    assert classify(2.0, 0.1, 2.0) is Verdict.INCONCLUSIVE
    assert classify(math.nan, math.nan, 2.0) is Verdict.INCONCLUSIVE


def test_small_sweep_passes():
    result = run_sweep(config())
    assert len(result.rows) == 24
    assert all(row.verdict is Verdict.PASS for row in result.rows)
    assert result.summary.passed == 24
    assert result.summary.inconsistent == ()
    assert result.summary.exit_code == 0
    assert result.summary.min_margin > 0
    assert [row.sort_key for row in result.rows] == sorted(row.sort_key for row in result.rows)


def test_unreachable_hurwitz_target_gives_inconclusive_rows(caplog):
    task = GridTask(5, 10.0, 1e-30, "hurwitz", ("theorem2",), 1, 1000)
    result = evaluate_task(task)
    assert len(result.rows) == 3
    assert all(row.verdict is Verdict.INCONCLUSIVE for row in result.rows)
    assert all(math.isnan(row.l_abs_mid) for row in result.rows)
    assert "inconclusive" in caplog.text


def test_capped_partial_sums_are_logged(caplog):
    task = GridTask(3, 1.0, 1e-9, "partial_sum", ("theorem2",), 1, 999)
    result = evaluate_task(task)
    assert "capped at N=999" in caplog.text
    assert result.rows[0].verdict is Verdict.PASS


def test_report_csv_format(tmp_path):
    result = run_sweep(config())
    path = tmp_path / "report.csv"
    fingerprint = write_report(str(path), result.rows)
    assert verify_fingerprint(str(path))
    raw = path.read_bytes()
    assert b"\r\n" not in raw
    with open(path, newline="", encoding="utf-8") as file:
        rows = list(csv.reader(file))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert len(rows) == 25
    first = rows[1]
    assert first[0] == "3"
    assert first[2] == "0.5"
    assert first[-1] == "PASS"
    text = summarize(result.summary, str(path), fingerprint)
    assert fingerprint in text
    assert "PASS: 24" in text


@pytest.mark.slow
@pytest.mark.parametrize("workers", [2, 8])
def test_report_is_identical_across_worker_counts(tmp_path, workers):
    serial = run_sweep(config(q_max=6, parallelism=1))
    parallel = run_sweep(config(q_max=6, parallelism=workers))
    write_report(str(tmp_path / "serial.csv"), serial.rows)
    write_report(str(tmp_path / "parallel.csv"), parallel.rows)
    assert (tmp_path / "serial.csv").read_bytes() == (tmp_path / "parallel.csv").read_bytes()


def test_config_dataclass_rejects_bad_values_directly():
    with pytest.raises(ConfigError):
        SweepConfig(3, 4, 1.0, 0.5, 2, "log", 1e-6, "both", ("theorem2",), "out.csv", 1)


def test_summary_lists_disagreements_up_to_a_limit():
    locations = tuple(f"q=7 chi={index} t=1" for index in range(12))
    summary = SweepSummary(10, 0, 0, locations, 0.5, "q=7 chi=0 t=1")
    text = summarize(summary, "report.csv", "ab" * 32)
    assert "Evaluators disagree at 12 grid point(s):" in text
    assert "    - q=7 chi=9 t=1" in text
    assert "chi=10 " not in text
    assert "... and 2 more in the CSV report" in text
    assert "disagree" not in summarize(SweepSummary(10, 0, 0, (), 0.5, "x"), "report.csv", "00")


def test_high_order_partial_sum_task_stays_small():
    tracemalloc.start()
    try:
        result = evaluate_task(GridTask(401, 1.0, 1e-2, "partial_sum", ("theorem2",), 1, 401))
        _, peak = tracemalloc.get_traced_memory()
    finally:
        tracemalloc.stop()
    assert len(result.rows) == 399
    assert peak < 50 * 1024 * 1024


@pytest.mark.slow
def test_acceptance_grid_has_no_failures():
    cfg = load_config().with_overrides(q_max=30, parallelism=default_parallelism())
    result = run_sweep(cfg)
    assert result.summary.failed == 0
    assert result.summary.inconclusive == 0
    assert result.summary.inconsistent == ()
    assert result.summary.exit_code == 0

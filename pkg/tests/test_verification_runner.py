import json
import logging

import pytest

import src.verification.verification_runner as runner_module
from src.core.errors import VerificationError
from src.verification.verification_runner import LEVELS, VerificationRunner

QUICK = ["kl_fixtures", "half_twist_expansion", "kl_squares", "ht4_shape", "euler_fixtures"]


def test_levels():
    assert LEVELS == {"fast": 4, "full": 5, "deep": 6}
    assert VerificationRunner("full").max_rank == 5
    assert VerificationRunner("fast", levels={"fast": 3}).max_rank == 3
    with pytest.raises(ValueError):
        VerificationRunner("huge")


def test_quick_criteria_pass():
    runner = VerificationRunner("fast")
    report = runner.run(only=QUICK)

    assert list(report.columns) == ["level", "criterion", "cases", "passed", "seconds", "error", "witness"]
    assert list(report["criterion"]) == QUICK
    assert report["passed"].all()
    assert report.set_index("criterion").loc["kl_fixtures", "cases"] == 2
    assert report.set_index("criterion").loc["ht4_shape", "cases"] == 26

    summary = runner.summary(report)
    assert summary["criteria"] == 5
    assert summary["failed"] == 0
    assert summary["passed"] == 5


def test_unknown_criterion():
    with pytest.raises(ValueError):
        VerificationRunner("fast").run(only=["kl_fixtures", "nope"])


def test_failure_is_recorded(monkeypatch, caplog):
    def broken():
        raise VerificationError("euler", {"fixture": "F_s"})

    monkeypatch.setattr(runner_module, "fixture_euler_checks", broken)
    with caplog.at_level(logging.ERROR, logger=runner_module.__name__):
        report = VerificationRunner("fast", seed=3).run(only=["kl_fixtures", "euler_fixtures"])

    failed = report[~report["passed"]]
    assert list(failed["criterion"]) == ["euler_fixtures"]
    assert json.loads(failed.iloc[0]["witness"]) == {"fixture": "F_s"}
    assert VerificationRunner.summary(report)["failed"] == 1
    assert "euler_fixtures failed" in caplog.text
    assert "seed=3" in caplog.text


def test_metric_failure_skipped_below_six():
    assert VerificationRunner("fast").check_metric_failure() == 0


def test_thick_crossing_bound():
    assert VerificationRunner("fast").check_thick_crossing() == 3


@pytest.mark.slow
def test_fast_level_passes():
    report = VerificationRunner("fast").run()
    assert report["passed"].all(), report[~report["passed"]][["criterion", "witness"]].to_string()

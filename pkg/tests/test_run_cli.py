import json

import pytest

from src.run_cli import main


@pytest.fixture
def run(capsys, tmp_path):
    """Runs the CLI and returns (exit status, stdout)."""

    def _run(*argv: str) -> tuple[int, str]:
        status = main([*argv, "--cache-dir", str(tmp_path / "cache")])
        return status, capsys.readouterr().out

    return _run


def test_kl_poly(run):
    status, out = run("kl-poly", "-n", "4", "--w", "tsut", "--json")
    payload = json.loads(out)
    assert status == 0
    assert payload["coeffs"] == [[2, 1], [4, 1]]
    assert payload["y"] == "1"


def test_kl_poly_table(run):
    status, out = run("kl-poly", "-n", "3", "--table", "--json")
    assert status == 0
    assert len(json.loads(out)["table"]) == 19


def test_json_is_deterministic(run):
    first = run("kl-poly", "-n", "4", "--w", "sutsu", "--json")
    second = run("kl-poly", "-n", "4", "--w", "sutsu", "--json")
    assert first == second


def test_schutz(run):
    status, out = run("schutz", "-n", "3", "--w", "s", "--json")
    payload = json.loads(out)
    assert status == 0
    assert payload["sch_L"] == "ts"
    assert payload["sch_R"] == "st"


def test_idempotent(run):
    status, out = run("idempotent", "--path", "1;1,1", "--json")
    payload = json.loads(out)
    assert status == 0
    assert payload["path"] == [[1], [1, 1]]
    assert payload["tableau"] == [[1], [2]]
    assert payload["gamma"] == [[-2, 1], [2, -1]]


def test_idempotent_rank_mismatch(run):
    status, _ = run("idempotent", "-n", "3", "--path", "1;1,1")
    assert status == 2


def test_complex_shape(run):
    status, out = run("complex-shape", "-n", "2", "--w", "s", "--json")
    payload = json.loads(out)
    assert status == 0
    assert payload["perverse"] is True
    assert sorted(payload["degrees"]) == ["0", "1"]


def test_twist_expand_text(run):
    status, out = run("twist-expand", "ht", "-n", "3")
    assert status == 0
    assert "TWIST-EXPAND" in out
    assert "b_sts" in out


def test_cells(run):
    status, out = run("cells", "-n", "3", "--json")
    cells = json.loads(out)["cells"]
    assert status == 0
    assert [c["lambda"] for c in cells] == [[3], [2, 1], [1, 1, 1]]
    assert [(c["r"], c["c"], c["x"]) for c in cells] == [(0, 3, 3), (1, 1, 0), (3, 0, -3)]


def test_rank_bound(run):
    status, _ = run("kl-poly", "-n", "9", "--w", "s")
    assert status == 2


def test_missing_rank(run):
    status, _ = run("schutz", "--w", "s")
    assert status == 2


def test_unknown_command():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_verify(run):
    status, out = run("verify", "--level", "fast", "--only", "kl_fixtures", "half_twist_expansion", "--json")
    payload = json.loads(out)
    assert status == 0
    assert payload["summary"]["passed"] == 2
    assert [row["criterion"] for row in payload["criteria"]] == ["kl_fixtures", "half_twist_expansion"]

"""
WeylCone - Tests de la CLI.

Las filas se leen de los archivos --out para no mezclar stdout con los
mensajes de log y de manifiesto que van a stderr.

1. Subcomandos exactos
2. Códigos de salida
3. Manifiestos y replay
4. limits, simulate, tessellate y verify-all
"""
import csv
import json

import pytest
from click.testing import CliRunner

from cli.main import cli
from config import get_settings


# ============================================================
# FIXTURES
# ============================================================

@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def run(runner, tmp_path):
    """Ejecuta un subcomando con --format json --out y devuelve (resultado, filas, ruta)."""
    def _run(*args, name="out.json"):
        path = tmp_path / name
        result = runner.invoke(cli, [*args, "--format", "json", "--out", str(path)])
        rows = json.loads(path.read_text(encoding="utf-8")) if path.exists() else None
        return result, rows, path
    return _run


# ============================================================
# 1. SUBCOMANDOS EXACTOS
# ============================================================

class TestExactCommands:

    def test_functionals_dual_example(self, run):
        result, rows, _ = run("functionals", "--n", "3", "--d", "2", "--type", "A", "--cone", "dual", "--kind", "iv")
        assert result.exit_code == 0, result.output
        assert [(r["k"], r["value"]) for r in rows] == [(0, "1/6"), (1, "1/2"), (2, "1/3")]
        assert rows[0]["value_float"] == pytest.approx(1 / 6)

    def test_functionals_statdim(self, run):
        result, rows, _ = run("functionals", "--n", "3", "--d", "2", "--kind", "statdim")
        assert result.exit_code == 0, result.output
        assert rows == [{"k": None, "value": "5/6", "value_float": pytest.approx(5 / 6)}]

    def test_chambers(self, run):
        result, rows, _ = run("chambers", "--n", "4", "--d", "2", "--type", "A")
        assert result.exit_code == 0, result.output
        assert rows == [{"n": 4, "d": 2, "type": "A", "chambers": 12}]

    def test_stirling_row(self, run):
        result, rows, _ = run("stirling", "--n", "2", "--type", "B")
        assert result.exit_code == 0, result.output
        assert [r["value"] for r in rows] == [3, 4, 1]

    def test_pmf(self, run):
        result, rows, _ = run("pmf", "--n", "3")
        assert result.exit_code == 0, result.output
        assert [r["probability"] for r in rows] == ["0/1", "1/3", "1/2", "1/6"]

    def test_csv_to_file(self, runner, tmp_path):
        path = tmp_path / "chambers.csv"
        result = runner.invoke(cli, ["chambers", "--n", "3", "--d", "2", "--out", str(path)])
        assert result.exit_code == 0, result.output
        with path.open(encoding="utf-8") as f:
            rows = list(csv.DictReader(f))
        assert rows == [{"n": "3", "d": "2", "type": "A", "chambers": "6"}]


# ============================================================
# 2. CÓDIGOS DE SALIDA
# ============================================================

class TestExitCodes:
    """2 para uso incorrecto, 1 para errores de cómputo."""

    def test_unknown_flag(self, runner):
        assert runner.invoke(cli, ["chambers", "--n", "3", "--d", "2", "--bogus"]).exit_code == 2

    def test_missing_required(self, runner):
        assert runner.invoke(cli, ["chambers", "--n", "3"]).exit_code == 2

    def test_invalid_dimension(self, runner):
        result = runner.invoke(cli, ["chambers", "--n", "3", "--d", "4"])
        assert result.exit_code == 1
        assert "InvalidParameterError" in result.output

    def test_bad_limit_params(self, runner):
        result = runner.invoke(cli, ["limits", "--regime", "stat-dim", "--params", "x"])
        assert result.exit_code == 2

    def test_simulate_requires_k(self, runner):
        result = runner.invoke(cli, ["simulate", "--n", "3", "--d", "2", "--functional", "faces", "--threads", "1"])
        assert result.exit_code == 2


# ============================================================
# 3. MANIFIESTOS
# ============================================================

class TestManifestAndReplay:

    def test_out_writes_manifest(self, run):
        result, _, path = run("functionals", "--n", "5", "--d", "3", "--type", "B")
        assert result.exit_code == 0, result.output
        manifest = json.loads(path.with_name(path.name + ".manifest.json").read_text(encoding="utf-8"))
        assert manifest["subcommand"] == "functionals"
        assert manifest["parameters"]["n"] == 5
        assert manifest["parameters"]["variant"] == "B"
        assert "out" not in manifest["parameters"]
        assert manifest["artifact_version"]

    def test_replay_reproduces_rows(self, run, runner, tmp_path):
        _, rows, path = run("functionals", "--n", "6", "--d", "3", "--kind", "faces")
        manifest_path = path.with_name(path.name + ".manifest.json")
        replayed = tmp_path / "replayed.json"
        result = runner.invoke(cli, ["replay", str(manifest_path), "--out", str(replayed)])
        assert result.exit_code == 0, result.output
        assert json.loads(replayed.read_text(encoding="utf-8")) == rows

    def test_replay_rejects_unknown_subcommand(self, runner, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"subcommand": "deploy", "parameters": {}}), encoding="utf-8")
        assert runner.invoke(cli, ["replay", str(path)]).exit_code == 2

    def test_replay_rejects_invalid_manifest(self, runner, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{}", encoding="utf-8")
        assert runner.invoke(cli, ["replay", str(path)]).exit_code == 2

    def test_seed_from_environment(self, run, monkeypatch):
        monkeypatch.setenv("WEYLCONE_SEED", "7")
        get_settings.cache_clear()
        try:
            result, rows, path = run(
                "simulate", "--n", "3", "--d", "2", "--functional", "faces", "--k", "1",
                "--samples", "4", "--threads", "1",
            )
        finally:
            get_settings.cache_clear()
        assert result.exit_code == 0, result.output
        manifest = json.loads(path.with_name(path.name + ".manifest.json").read_text(encoding="utf-8"))
        assert manifest["seed"] == 7
        assert rows[0]["seed"] == 7
        assert rows[0]["mean"] == 2.0
        assert rows[0]["exact"] == "2/1"


# ============================================================
# 4. LIMITS, SIMULATE, TESSELLATE, VERIFY-ALL
# ============================================================

class TestOtherCommands:

    def test_limits_rows(self, run):
        result, rows, _ = run(
            "limits", "--regime", "face-ratio", "--params", "x=2,k_mode=linear,alpha=0.5",
            "--n-list", "1000,5000",
        )
        assert result.exit_code == 0, result.output
        assert [r["n"] for r in rows] == [1000, 5000]
        assert rows[0]["d"] == 986
        assert rows[0]["k"] == 500
        assert rows[0]["predicted_limit"] == pytest.approx(0.5)
        assert rows[0]["spec_k_mode"] == "linear"

    def test_limits_invalid_regime_parameters(self, runner):
        # k_mode ausente: el valor de --params es inválido, no el cómputo
        result = runner.invoke(cli, ["limits", "--regime", "face-ratio", "--params", "x=2"])
        assert result.exit_code == 2
        assert "--params" in result.output
        assert "k_mode" in result.output

    @pytest.mark.parametrize("params", ["x=2,k_mode=diagonal", "x=-1,k_mode=linear,alpha=0.5", "x=0.5,y=0.2"])
    def test_limits_rejected_params_are_usage_errors(self, runner, params):
        regime = "iv-ldp" if "y=" in params else "face-ratio"
        result = runner.invoke(cli, ["limits", "--regime", regime, "--params", params])
        assert result.exit_code == 2

    def test_simulate_iv(self, run):
        result, rows, _ = run(
            "simulate", "--n", "3", "--d", "2", "--functional", "iv",
            "--samples", "5", "--gaussians", "3", "--seed", "11", "--threads", "1",
        )
        assert result.exit_code == 0, result.output
        assert [r["k"] for r in rows] == [0, 1, 2]
        assert sum(r["mean"] for r in rows) == pytest.approx(1.0)
        assert [r["exact"] for r in rows] == ["1/6", "1/2", "1/3"]

    def test_tessellate_summary(self, run):
        result, rows, _ = run("tessellate", "--n", "4", "--d", "2", "--seed", "3")
        assert result.exit_code == 0, result.output
        assert rows[0]["chambers"] == rows[0]["expected"] == 12
        assert rows[0]["hyperplanes"] == 6

    def test_tessellate_faces(self, run):
        result, rows, _ = run("tessellate", "--n", "3", "--d", "2", "--faces", "1")
        assert result.exit_code == 0, result.output
        assert len(rows) == 7
        assert rows[-1]["index"] == "mean"
        assert rows[-1]["mean"] == "2/1"
        assert rows[-1]["exact"] == "2/1"

    def test_tessellate_verify(self, run):
        result, rows, _ = run("tessellate", "--n", "3", "--d", "2", "--verify", "2")
        assert result.exit_code == 0, result.output
        assert len(rows) == 4
        assert all(r["match"] for r in rows)

    def test_verify_all_single_check(self, run):
        result, rows, _ = run("verify-all", "--quick", "--only", "4")
        assert result.exit_code == 0, result.output
        assert len(rows) == 1
        assert rows[0]["check"] == 4
        assert rows[0]["passed"] is True

    def test_verify_all_pins_sweep_values(self, run, tmp_path):
        pins = tmp_path / "sweep_final.json"
        result, rows, _ = run("verify-all", "--quick", "--pin-sweep", str(pins))
        assert result.exit_code == 0, result.output
        stored = json.loads(pins.read_text(encoding="utf-8"))
        assert len(rows) == len(stored) == 12
        assert {r["n"] for r in rows} == {5000}
        assert [r["finite_value"] for r in rows] == [e["finite_value"] for e in stored]

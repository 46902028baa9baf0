import json
from pathlib import Path

import pytest

from mediumband.channel import DelayProfile, MultipathComponent, SPEED_OF_LIGHT
from mediumband.cli import (
    EXIT_INFEASIBLE,
    EXIT_OK,
    EXIT_SCHEMA,
    main,
)
from mediumband.geometry import Reflector, ReflectorScene


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestClassifyAndPlan:
    def test_classify_worked_example(self, capsys):
        code, out, _ = run_cli(capsys, ["classify", "--tm", "1e-6", "--ts", "2.5e-6"])
        assert code == EXIT_OK
        assert "Mediumband, PDS=40%" in out

    def test_plan_worked_example(self, capsys):
        code, out, _ = run_cli(capsys, ["plan", "--tm", "1e-6", "--target-pds", "40"])
        assert code == EXIT_OK
        assert "2.5e-06" in out
        assert "Mediumband" in out

    def test_classify_writes_points_csv(self, capsys, tmp_path):
        code, _, _ = run_cli(capsys, [
            "classify", "--tm", "1e-6", "--ts", "2.5e-6", "--out", str(tmp_path)
        ])
        assert code == EXIT_OK
        header = (tmp_path / "points.csv").read_text().splitlines()[0]
        assert header == "label,t_m_s,t_s_s,pds_percent,band"


class TestScenarioValidation:
    def test_missing_field_reports_path(self, capsys, tmp_path):
        scenario = tmp_path / "bad.json"
        scenario.write_text(json.dumps({
            "name": "x",
            "mode": "campaign",
            "parameters": {"t_m_s": 1e-6, "t_s_s": 2.5e-6, "n_paths": 8},
        }))
        code, _, err = run_cli(capsys, ["run", str(scenario)])
        assert code == EXIT_SCHEMA
        doc = json.loads(err)
        assert "trials" in doc["error"]
        assert doc["field"].startswith("$.parameters")

    def test_unknown_mode_rejected(self, capsys, tmp_path):
        scenario = tmp_path / "bad.json"
        scenario.write_text(json.dumps({
            "name": "x", "mode": "nonsense", "parameters": {}
        }))
        code, _, err = run_cli(capsys, ["run", str(scenario)])
        assert code == EXIT_SCHEMA
        assert json.loads(err)["field"] == "$.mode"

    def test_malformed_json_rejected(self, capsys, tmp_path):
        scenario = tmp_path / "bad.json"
        scenario.write_text("{not json")
        code, _, err = run_cli(capsys, ["run", str(scenario)])
        assert code == EXIT_SCHEMA
        assert "error" in json.loads(err)


def campaign_scenario(out_dir, trials=3000, seed=11):
    return {
        "name": "smoke",
        "mode": "campaign",
        "parameters": {
            "t_m_s": 0.6e-6,
            "t_s_s": 1e-6,
            "n_paths": 8,
            "trials": trials,
        },
        "seed": seed,
        "output_dir": str(out_dir),
    }


class TestCampaignArtifacts:
    def test_artifacts_and_manifest(self, capsys, tmp_path):
        scenario = tmp_path / "c.json"
        out = tmp_path / "out"
        scenario.write_text(json.dumps(campaign_scenario(out)))
        code, _, _ = run_cli(capsys, ["run", str(scenario)])
        assert code == EXIT_OK
        assert (out / "pdf.csv").exists()
        assert (out / "fades.csv").exists()
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["seed"] == 11
        assert manifest["artifacts"] == ["pdf.csv", "fades.csv"]
        assert manifest["scenario"]["parameters"]["trials"] == 3000
        assert "re_variance" in manifest["stats"]
        assert len(manifest["scenario_sha256"]) == 64

    def test_rerun_is_byte_identical(self, capsys, tmp_path):
        scenario = tmp_path / "c.json"
        out_a = tmp_path / "a"
        out_b = tmp_path / "b"
        scenario.write_text(json.dumps(campaign_scenario(out_a)))
        run_cli(capsys, ["run", str(scenario)])
        run_cli(capsys, ["run", str(scenario), "--out", str(out_b), "--threads", "4"])
        for name in ("pdf.csv", "fades.csv"):
            assert (out_a / name).read_bytes() == (out_b / name).read_bytes()

    def test_different_seed_changes_artifacts(self, capsys, tmp_path):
        out_a = tmp_path / "a"
        out_b = tmp_path / "b"
        sa = tmp_path / "a.json"
        sb = tmp_path / "b.json"
        sa.write_text(json.dumps(campaign_scenario(out_a, seed=1)))
        sb.write_text(json.dumps(campaign_scenario(out_b, seed=2)))
        run_cli(capsys, ["run", str(sa)])
        run_cli(capsys, ["run", str(sb)])
        assert (out_a / "pdf.csv").read_bytes() != (out_b / "pdf.csv").read_bytes()


class TestReflectorsCommand:
    def write_inputs(self, tmp_path):
        t_s = 20.0 / SPEED_OF_LIGHT
        scene = ReflectorScene(
            tx=(-3.0, 0.0),
            rx=(3.0, 0.0),
            reflectors=(Reflector("r1", (0.0, 7.0), 0.4 + 0j),),
            a1=5.0,
            a2=8.0,
        )
        base = DelayProfile((
            MultipathComponent(1.0 + 0j, 0.0),
            MultipathComponent(0.5 + 0j, 0.05 * t_s),
        ))
        scene_file = tmp_path / "scene.json"
        base_file = tmp_path / "base.json"
        scene_file.write_text(scene.to_json())
        base_file.write_text(base.to_json())
        return scene_file, base_file, t_s

    def test_feasible_conversion(self, capsys, tmp_path):
        scene_file, base_file, t_s = self.write_inputs(tmp_path)
        out = tmp_path / "out"
        code, stdout, _ = run_cli(capsys, [
            "reflectors", "--scene", str(scene_file), "--base", str(base_file),
            "--ts", str(t_s), "--target-pds", "40", "--out", str(out),
        ])
        assert code == EXIT_OK
        selection = json.loads((out / "selection.json").read_text())
        assert selection["feasible"]
        assert selection["active_ids"] == ["r1"]
        assert selection["band"] == "mediumband"

    def test_infeasible_exits_3_with_report(self, capsys, tmp_path):
        scene_file, base_file, t_s = self.write_inputs(tmp_path)
        out = tmp_path / "out"
        code, stdout, _ = run_cli(capsys, [
            "reflectors", "--scene", str(scene_file), "--base", str(base_file),
            "--ts", str(t_s), "--target-pds", "90", "--out", str(out),
        ])
        assert code == EXIT_INFEASIBLE
        selection = json.loads((out / "selection.json").read_text())
        assert not selection["feasible"]
        assert "best achievable" in stdout


class TestOtherModes:
    def test_ber_writes_curve(self, capsys, tmp_path):
        out = tmp_path / "out"
        code, _, _ = run_cli(capsys, [
            "ber", "--tm", "0", "--ts", "1e-6", "--paths", "1",
            "--trials", "50", "--symbols", "1000", "--snr", "0", "10",
            "--out", str(out),
        ])
        assert code == EXIT_OK
        lines = (out / "ber.csv").read_text().splitlines()
        assert lines[0] == "snr_db,ber,trials"
        assert len(lines) == 3

    def test_ofdm_writes_subcarriers(self, capsys, tmp_path):
        out = tmp_path / "out"
        code, _, _ = run_cli(capsys, [
            "ofdm", "--tm", "1.2e-6", "--ts", "1e-6", "--trials", "2000",
            "--nfft", "16", "--out", str(out),
        ])
        assert code == EXIT_OK
        lines = (out / "subcarriers.csv").read_text().splitlines()
        assert lines[0] == "subcarrier_index,dip_depth,deep_fade_prob,baseline"
        assert len(lines) == 17

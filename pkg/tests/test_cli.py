import json

import pytest

from drivenwell.cli import (
    ScenarioConfig, load_config, main, parse_config_text, run, run_validate,
)


class TestConfigParsing:
    def test_key_value_lines_with_comments(self):
        text = """
        # scenario
        task = classical
        drive_amplitude = 0.015    # rescaled units
        temperature_list = 1e-6, 1e-4
        seed_x_count = 3
        """
        values = parse_config_text(text)
        assert values["task"] == "classical"
        assert values["drive_amplitude"] == 0.015
        assert values["temperature_list"] == (1e-6, 1e-4)
        assert values["seed_x_count"] == 3

    def test_unknown_field_named_in_error(self):
        with pytest.raises(ValueError, match="line 1.*not_a_field"):
            parse_config_text("not_a_field = 3")

    def test_bad_value_names_field_and_line(self):
        with pytest.raises(ValueError, match="line 2.*gamma"):
            parse_config_text("task = sweep\ngamma = abc")

    def test_negative_gamma_rejected_with_field_name(self):
        with pytest.raises(ValueError, match="gamma"):
            ScenarioConfig(gamma=-1e-6)

    def test_overrides_beat_file(self, tmp_path):
        cfg = tmp_path / "scenario.cfg"
        cfg.write_text("task = sweep\ndrive_amplitude = 0.01\n")
        config = load_config(cfg, ["drive_amplitude=0.017"])
        assert config.drive_amplitude == 0.017
        assert config.task == "sweep"

    def test_digest_stable_and_sensitive(self):
        a = ScenarioConfig(task="sweep")
        b = ScenarioConfig(task="sweep")
        c = ScenarioConfig(task="sweep", drive_amplitude=0.0123)
        assert a.digest() == b.digest()
        assert a.digest() != c.digest()

    def test_output_root_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv("DRIVENWELL_OUTPUT_ROOT", str(tmp_path))
        config = ScenarioConfig(output_dir="nested/run")
        assert config.resolved_output_dir() == tmp_path / "nested" / "run"


class TestValidate:
    def test_strong_damping_flagged(self):
        config = ScenarioConfig(task="spectrum", gamma=1e-2, temperature=1e-3)
        report = run_validate(config)
        assert any("Born-Markov" in w for w in report["warnings"])

    def test_damping_above_gap_flagged(self):
        config = ScenarioConfig(task="dissipate", gamma=5e-2, temperature=1.0,
                                drive_amplitude=0.0145)
        report = run_validate(config)
        assert any("quasienergy gap" in w for w in report["warnings"])

    def test_clean_config_has_no_warnings(self):
        config = ScenarioConfig(task="spectrum", gamma=1e-6, temperature=1e-4)
        assert run_validate(config)["warnings"] == []

    def test_zero_temperature_attractor_info(self):
        config = ScenarioConfig(task="attractor", temperature=0.0,
                                drive_amplitude=0.0)
        report = run_validate(config)
        assert any("upward rates vanish" in n for n in report["infos"])


class TestClassicalTask:
    def test_portrait_artifact_and_determinism(self, tmp_path):
        overrides = dict(task="classical", classical_periods=40,
                         seed_x_count=3, seed_p_count=2,
                         drive_amplitude=0.015)
        cfg_a = ScenarioConfig(output_dir=str(tmp_path / "a"), **overrides)
        cfg_b = ScenarioConfig(output_dir=str(tmp_path / "b"), **overrides)
        run(cfg_a)
        run(cfg_b)
        text_a = (tmp_path / "a" / "portrait.csv").read_text()
        text_b = (tmp_path / "b" / "portrait.csv").read_text()
        assert text_a == text_b
        header = text_a.splitlines()[0]
        assert "schema=portrait/v1" in header
        assert f"config={cfg_a.digest()}" in header
        manifest = json.loads((tmp_path / "a" / "manifest.json").read_text())
        assert manifest["config"] == cfg_a.digest()
        assert manifest["artifacts"][0]["path"] == "portrait.csv"

    def test_rows_cover_grid(self, tmp_path):
        config = ScenarioConfig(task="classical", classical_periods=10,
                                seed_x_count=2, seed_p_count=2,
                                output_dir=str(tmp_path))
        run(config)
        rows = (tmp_path / "portrait.csv").read_text().splitlines()[2:]
        assert len(rows) == 4 * 11


class TestSpectrumTask:
    def test_artifacts_written(self, tmp_path):
        config = ScenarioConfig(task="spectrum", basis_size=160,
                                num_states=24, n_sidebands=8,
                                drive_amplitude=0.0145,
                                output_dir=str(tmp_path))
        summary = run(config)
        assert summary["states"] > 4
        static = (tmp_path / "static_spectrum.csv").read_text().splitlines()
        assert static[1] == "k,energy,parity"
        first = static[2].split(",")
        assert float(first[1]) == pytest.approx(-3.5081111, abs=1e-5)


class TestCliEntry:
    def test_malformed_config_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.cfg"
        bad.write_text("gamma = -3\n")
        code = main(["sweep", "--config", str(bad)])
        assert code == 2
        assert "gamma" in capsys.readouterr().err

    def test_validate_subcommand(self, capsys):
        code = main(["validate", "--set", "gamma=1e-6",
                     "--set", "temperature=1e-4"])
        assert code == 0
        assert "no warnings" in capsys.readouterr().out

    def test_classical_subcommand(self, tmp_path, capsys):
        code = main(["classical", "--set", "classical_periods=5",
                     "--set", "seed_x_count=2", "--set", "seed_p_count=2",
                     "--output", str(tmp_path)])
        assert code == 0
        assert (tmp_path / "portrait.csv").exists()
        assert (tmp_path / "manifest.json").exists()

    def test_failing_task_exit_code(self, tmp_path, capsys):
        # fit window without a crossing: the tunnel task reports the failure
        code = main(["tunnel", "--set", "fit_window_start=0.0002",
                     "--set", "fit_window_stop=0.001",
                     "--set", "fit_window_count=5",
                     "--set", "basis_size=160", "--set", "num_states=24",
                     "--set", "n_sidebands=8",
                     "--output", str(tmp_path)])
        assert code == 1
        assert "failed" in capsys.readouterr().err

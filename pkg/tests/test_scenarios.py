"""Scenario runner: config validation, CSV outputs, CLI exit codes."""

import csv
import json
import math
from pathlib import Path

import numpy as np
import pytest

from coopscatter import NumericalError, pair_response
from coopscatter import cli
from coopscatter.scenarios import (DEFAULT_CONFIG, OUTPUT_DIR_ENV, SCENARIOS,
                                   ConfigError, run_scenario, validate_config)

FIT_COLS = ("gamma_a_Gamma0", "gamma_a_err_Gamma0", "delta0_a_Gamma0",
            "delta0_a_err_Gamma0", "gamma_r_Gamma0", "gamma_r_err_Gamma0",
            "delta0_r_Gamma0", "delta0_r_err_Gamma0", "a_peak", "r_peak")


def _small_cfg(**over):
    cfg = {
        "lattice": {"nx": 6, "ny": 6},
        "detection": {"n_polar": 24, "n_azimuth": 48},
        "grid": {"half_span": 2.5, "n": 9},
        "n_samples": 2,
    }
    cfg.update(over)
    return cfg


def _read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


# --- config validation ----------------------------------------------------

def test_defaults_materialized():
    cfg = validate_config(None)
    assert cfg == DEFAULT_CONFIG
    assert cfg is not DEFAULT_CONFIG


def test_deep_merge_partial_override():
    cfg = validate_config({"lattice": {"nx": 6}})
    assert cfg["lattice"]["nx"] == 6
    assert cfg["lattice"]["ny"] == 14
    assert cfg["lattice"]["spacing_a"] == 0.68
    assert cfg["detection"] == DEFAULT_CONFIG["detection"]


def test_invalid_values_report_paths():
    with pytest.raises(ConfigError, match="detection/numerical_aperture"):
        validate_config({"detection": {"numerical_aperture": 1.2}})
    with pytest.raises(ConfigError, match="beam/waist_w0"):
        validate_config({"beam": {"waist_w0": -3.0}})
    with pytest.raises(ConfigError):
        validate_config({"nonsense": 1})


def test_all_violations_reported_together():
    try:
        validate_config({"detection": {"numerical_aperture": 1.2},
                         "beam": {"waist_w0": -3.0}})
    except ConfigError as err:
        msg = str(err)
        assert "detection/numerical_aperture" in msg
        assert "beam/waist_w0" in msg
    else:
        pytest.fail("expected ConfigError")


def test_config_file_handling(tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"grid": {"n": 11}}))
    assert validate_config(good)["grid"]["n"] == 11
    with pytest.raises(ConfigError, match="not found"):
        validate_config(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(ConfigError, match="not valid JSON"):
        validate_config(bad)
    arr = tmp_path / "arr.json"
    arr.write_text("[1, 2]")
    with pytest.raises(ConfigError, match="must be an object"):
        validate_config(arr)


# --- run_scenario mechanics -------------------------------------------------

def test_unknown_scenario_lists_available():
    with pytest.raises(ConfigError, match="available:.*pair-sweep"):
        run_scenario("does-not-exist")


def test_unknown_params_key():
    with pytest.raises(ConfigError, match="unknown keys.*bogus"):
        run_scenario("pair-sweep", config={"params": {"bogus": 1}})


def test_unknown_geometry_config(tmp_path):
    with pytest.raises(ConfigError, match="unknown geometry"):
        run_scenario("geometry-compare",
                     config=_small_cfg(params={"configs": ["weird"]}),
                     out_dir=tmp_path)


def test_na_sweep_requires_block(tmp_path):
    with pytest.raises(ConfigError, match="blocks"):
        run_scenario("na-sweep", config=_small_cfg(params={"blocks": []}),
                     out_dir=tmp_path)


def test_pair_sweep_output_and_meta(tmp_path):
    written = run_scenario(
        "pair-sweep",
        config={"params": {"separation_step_lambda": 0.25}},
        out_dir=tmp_path)
    names = sorted(p.name for p in written)
    assert names == ["pair_sweep.csv", "pair_sweep_meta.json"]

    header, rows = _read_csv(tmp_path / "pair_sweep.csv")
    assert header == ["separation_lambda", "delta_sym_Gamma0", "gamma_sym_Gamma0",
                      "delta_anti_Gamma0", "gamma_anti_Gamma0"]
    assert len(rows) >= 10
    # every row must agree with the two-atom response it came from
    for row in rows:
        s = float(row[0])
        resp = pair_response(np.array([2.0 * np.pi * s, 0.0, 0.0]))
        assert float(row[1]) == pytest.approx(resp["delta_sym"], rel=1e-12)
        assert float(row[2]) == pytest.approx(resp["gamma_sym"], rel=1e-12)
        assert float(row[3]) == pytest.approx(resp["delta_anti"], rel=1e-12)
        assert float(row[4]) == pytest.approx(resp["gamma_anti"], rel=1e-12)

    meta = json.loads((tmp_path / "pair_sweep_meta.json").read_text())
    assert set(meta) == {"scenario", "config", "versions", "outputs"}
    assert meta["scenario"] == "pair-sweep"
    assert meta["config"]["params"]["separation_step_lambda"] == 0.25
    assert set(meta["versions"]) == {"coopscatter", "numpy", "scipy", "python"}
    assert meta["outputs"]["pair_sweep.csv"]["rows"] == len(rows)
    text = (tmp_path / "pair_sweep_meta.json").read_text()
    assert "time" not in text.lower().replace("runtime", "")


def test_rerun_byte_identical(tmp_path):
    cfg = _small_cfg(params={"configs": ["array"]})
    first = tmp_path / "a"
    second = tmp_path / "b"
    for out in (first, second):
        run_scenario("geometry-compare", config=cfg, out_dir=out)
    files = sorted(p.name for p in first.iterdir())
    assert files == sorted(p.name for p in second.iterdir())
    for name in files:
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_output_dir_env(tmp_path, monkeypatch):
    target = tmp_path / "envout"
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(target))
    written = run_scenario("pair-sweep",
                           config={"params": {"separation_step_lambda": 1.0}})
    assert all(p.parent == target for p in written)
    assert (target / "pair_sweep.csv").is_file()


def test_cleanup_on_write_failure(tmp_path, monkeypatch):
    real = Path.write_text
    calls = {"n": 0}

    def flaky(self, text, *args, **kwargs):
        calls["n"] += 1
        if calls["n"] == 2:
            raise OSError("disk full")
        return real(self, text, *args, **kwargs)

    monkeypatch.setattr(Path, "write_text", flaky)
    with pytest.raises(OSError):
        run_scenario("pair-sweep",
                     config={"params": {"separation_step_lambda": 1.0}},
                     out_dir=tmp_path)
    assert list(tmp_path.iterdir()) == []


# --- scenario smoke matrix ---------------------------------------------------

SMOKE = {
    "pair-sweep": (
        {"params": {"separation_step_lambda": 0.5}},
        {"pair_sweep.csv": ["separation_lambda", "delta_sym_Gamma0",
                            "gamma_sym_Gamma0", "delta_anti_Gamma0",
                            "gamma_anti_Gamma0"]},
    ),
    "spacing-sweep": (
        _small_cfg(params={"spacing_start": 0.6, "spacing_stop": 0.8,
                           "spacing_step": 0.2, "extra_spacings": [0.68, 1.5],
                           "pass1_half_span": 6.0, "pass1_n": 21}),
        {"spacing_sweep.csv": ["spacing_over_lambda", "gamma_a_Gamma0",
                               "gamma_a_err_Gamma0", "delta0_a_Gamma0",
                               "delta0_a_err_Gamma0", "gamma_mode_Gamma0",
                               "delta_mode_Gamma0", "gamma_infinite_Gamma0"]},
    ),
    "geometry-compare": (
        _small_cfg(params={"configs": ["array", "pancake"]}),
        {"geometry_compare_spectra.csv": ["config", "detuning_Gamma0", "r_mean",
                                          "r_sem", "t_mean", "t_sem", "a_mean",
                                          "a_sem"],
         "geometry_compare_fits.csv": ["config", *FIT_COLS]},
    ),
    "filling-sweep": (
        _small_cfg(params={"fillings": [0.6], "sigma_z_a": [0.054]}),
        {"filling_sweep.csv": ["filling", "sigma_z_a", *FIT_COLS]},
    ),
    "bloch": (
        _small_cfg(params={"time_start_tb": 0.0, "time_stop_tb": 1.0,
                           "time_step_tb": 0.5}),
        {"bloch.csv": ["time_tb", "zeta", "gamma_a_Gamma0", "gamma_a_err_Gamma0",
                       "delta0_a_Gamma0", "delta0_a_err_Gamma0", "a_peak",
                       "r_peak"]},
    ),
    "spread-sweep": (
        _small_cfg(params={"spreads_a": [0.0, 0.1], "waists_w0_a": [6.0]}),
        {"spread_sweep.csv": ["waist_w0_a", "spread_a", "r_peak", "a_peak",
                              "gamma_a_Gamma0", "gamma_a_err_Gamma0",
                              "delta0_a_Gamma0", "delta0_a_err_Gamma0"]},
    ),
    "effect-ladder": (
        _small_cfg(params={"fillings": [0.8]}),
        {"effect_ladder.csv": ["variant", "filling", *FIT_COLS]},
    ),
    "na-sweep": (
        _small_cfg(params={"na_start": 0.2, "na_stop": 1.0, "na_step": 0.4,
                           "blocks": ["order"], "fit_samples": 2}),
        {"na_sweep_order.csv": ["config", "na", "reflectance", "absorptance",
                                "r_over_eta", "a_over_eta", "resonance_Gamma0"]},
    ),
    "mode-pdf": (
        _small_cfg(params={"configs": ["perfect", "vertical"], "bins": 21,
                           "fit_samples": 2}),
        {"mode_pdf.csv": ["config", "delta_Gamma0", "gamma_Gamma0", "density"]},
    ),
    "intensity-map": (
        _small_cfg(params={"waists_w0_a": [6.0], "configs": ["point"],
                           "x_half_range_a": 3.0, "z_half_range_a": 3.0,
                           "step_a": 0.5, "spread_samples": 1}),
        {"intensity_map.csv": ["waist_w0_a", "config", "x_a", "z_a",
                               "intensity_scattered", "intensity_total"]},
    ),
}

STRING_COLS = {"config", "model", "variant"}


@pytest.mark.parametrize("name", sorted(SMOKE))
def test_scenario_smoke(name, tmp_path):
    cfg, expected = SMOKE[name]
    written = run_scenario(name, config=cfg, out_dir=tmp_path)
    names = {p.name for p in written}
    meta_name = name.replace("-", "_") + "_meta.json"
    assert names == set(expected) | {meta_name}
    meta = json.loads((tmp_path / meta_name).read_text())
    for fname, header in expected.items():
        got, rows = _read_csv(tmp_path / fname)
        assert got == header
        assert len(rows) >= 1
        assert meta["outputs"][fname]["rows"] == len(rows)
        for row in rows:
            assert len(row) == len(header)
            for col, cell in zip(header, row):
                if col in STRING_COLS:
                    assert cell
                else:
                    float(cell)  # must parse, nan allowed


def test_spacing_sweep_reference_column(tmp_path):
    cfg, _ = SMOKE["spacing-sweep"]
    run_scenario("spacing-sweep", config=cfg, out_dir=tmp_path)
    _, rows = _read_csv(tmp_path / "spacing_sweep.csv")
    spacings = [float(r[0]) for r in rows]
    assert spacings == sorted(spacings)
    for row in rows:
        x = float(row[0])
        ref = float(row[7])
        if x < 1.0:
            assert ref == pytest.approx(3.0 / (4.0 * np.pi * x**2), rel=1e-12)
        else:
            assert math.isnan(ref)
        assert float(row[5]) > 0.0  # mode decay rate


def test_na_sweep_energy_identity_and_mirror(tmp_path):
    cfg, _ = SMOKE["na-sweep"]
    run_scenario("na-sweep", config=cfg, out_dir=tmp_path)
    _, rows = _read_csv(tmp_path / "na_sweep_order.csv")
    by_config = {}
    for row in rows:
        by_config.setdefault(row[0], []).append(row)
    assert set(by_config) == {"point", "spread", "vertical", "pancake", "mirror"}
    # closed array, NA = 1: reflected and missing-forward power agree
    full = [r for r in by_config["point"] if float(r[1]) == 1.0]
    assert len(full) == 1
    assert abs(float(full[0][2]) - float(full[0][3])) < 5e-3
    mirror_r = [float(r[2]) for r in by_config["mirror"]]
    assert len(mirror_r) == 3
    assert np.all(np.diff(mirror_r) > 0.0)


# --- command line ----------------------------------------------------------

def test_cli_ok_and_overrides(tmp_path, capsys):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps({"params": {"separation_step_lambda": 1.0}}))
    code = cli.main(["--scenario", "pair-sweep", "--config", str(cfg_path),
                     "--out", str(tmp_path), "--seed", "123", "--samples", "2",
                     "--threads", "1"])
    assert code == cli.EXIT_OK
    printed = capsys.readouterr().out.strip().splitlines()
    assert str(tmp_path / "pair_sweep.csv") in printed
    meta = json.loads((tmp_path / "pair_sweep_meta.json").read_text())
    assert meta["config"]["master_seed"] == 123
    assert meta["config"]["n_samples"] == 2


def test_cli_bad_config(tmp_path, capsys):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps({"detection": {"numerical_aperture": 1.2}}))
    code = cli.main(["--scenario", "pair-sweep", "--config", str(cfg_path)])
    assert code == cli.EXIT_CONFIG
    assert "numerical_aperture" in capsys.readouterr().err


def test_cli_missing_config_file(tmp_path, capsys):
    code = cli.main(["--scenario", "pair-sweep",
                     "--config", str(tmp_path / "nope.json")])
    assert code == cli.EXIT_CONFIG


def test_cli_numerical_failure(tmp_path, monkeypatch, capsys):
    def boom(name, config, out_dir):
        raise NumericalError("solver diverged")

    monkeypatch.setattr(cli, "run_scenario", boom)
    code = cli.main(["--scenario", "pair-sweep", "--out", str(tmp_path)])
    assert code == cli.EXIT_NUMERICAL
    assert "solver diverged" in capsys.readouterr().err

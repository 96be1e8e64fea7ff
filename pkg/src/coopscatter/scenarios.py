"""Named simulation scenarios: validated configs in, CSV + metadata out.

Every scenario is a pure function of its normalized config and master
seed; reruns produce byte-identical CSV. Output columns are documented
in docs/formats.md. Heavier scenarios default to moderate sample
counts (recorded in the metadata file); pass --samples to trade
accuracy against runtime.
"""

from __future__ import annotations

import json
import os
import platform
from importlib import metadata as _im
from pathlib import Path

import jsonschema
import numpy as np
import scipy

from .core import BeamSpec, DetectionSpec, LatticeSpec, TransitionSpec
from .eigenmodes import (decompose, dominant_mode, eigensystem,
                         mode_amplitude_histogram)
from .flux import FluxEvaluator, mirror_reference, na_resolved_observables, near_field_intensity
from .geometry import BlochSpec, EnsembleSpec, SpreadSpec, draw_sample, sample_rng
from .greens import pair_response
from .solver import coupling_matrix, drive_field, project_drive, solve_steady_state
from .spectro import LorentzianFit, fit_lorentzian, refined_grid, scan

OUTPUT_DIR_ENV = "COOPSCATTER_OUTDIR"


class ConfigError(ValueError):
    """Invalid configuration or unknown scenario."""


_POSITIVE = {"type": "number", "exclusiveMinimum": 0}

CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "scenario": {"type": "string"},
        "lattice": {
            "type": "object", "additionalProperties": False,
            "properties": {
                "nx": {"type": "integer", "minimum": 1},
                "ny": {"type": "integer", "minimum": 1},
                "spacing_a": _POSITIVE,
                "depths_er": {"type": "array", "items": _POSITIVE,
                              "minItems": 3, "maxItems": 3},
            },
        },
        "transition": {
            "type": "object", "additionalProperties": False,
            "properties": {
                "gamma0_mhz": _POSITIVE,
                "lambda_nm": _POSITIVE,
                "polarization_model": {"enum": ["sigma_minus", "isotropic"]},
            },
        },
        "beam": {
            "type": "object", "additionalProperties": False,
            "properties": {
                "waist_w0": _POSITIVE,
                "direction": {"enum": ["plus_z", "minus_z"]},
            },
        },
        "detection": {
            "type": "object", "additionalProperties": False,
            "properties": {
                "numerical_aperture": {"type": "number", "exclusiveMinimum": 0,
                                       "maximum": 1},
                "n_polar": {"type": "integer", "minimum": 4},
                "n_azimuth": {"type": "integer", "minimum": 4},
            },
        },
        "grid": {
            "type": "object", "additionalProperties": False,
            "properties": {
                "half_span": _POSITIVE,
                "n": {"type": "integer", "minimum": 5},
            },
        },
        "n_samples": {"type": "integer", "minimum": 1},
        "master_seed": {"type": "integer", "minimum": 0},
        "threads": {"type": "integer", "minimum": 1},
        "params": {"type": "object"},
    },
}

DEFAULT_CONFIG = {
    "lattice": {"nx": 14, "ny": 14, "spacing_a": 0.68,
                "depths_er": [300.0, 300.0, 300.0]},
    "transition": {"gamma0_mhz": 6.06, "lambda_nm": 780.0,
                   "polarization_model": "sigma_minus"},
    "beam": {"waist_w0": 56.0, "direction": "plus_z"},
    "detection": {"numerical_aperture": 0.68, "n_polar": 64, "n_azimuth": 128},
    "grid": {"half_span": 2.5, "n": 31},
    "master_seed": 11,
    "threads": 1,
    "params": {},
}


def _deep_merge(base: dict, override: dict) -> dict:
    out = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _deep_merge(out[key], value)
        else:
            out[key] = value
    return out


def validate_config(source=None) -> dict:
    """Validate a config (path, dict, or None) and materialize defaults.

    All schema violations are reported together, each with a path into
    the document.
    """
    if source is None:
        raw = {}
    elif isinstance(source, dict):
        raw = source
    else:
        path = Path(source)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        try:
            raw = json.loads(path.read_text())
        except json.JSONDecodeError as err:
            raise ConfigError(f"config is not valid JSON: {path}: {err}") from err
        if not isinstance(raw, dict):
            raise ConfigError(f"config root must be an object: {path}")
    validator = jsonschema.Draft202012Validator(CONFIG_SCHEMA)
    errors = sorted(validator.iter_errors(raw),
                    key=lambda e: [str(p) for p in e.absolute_path])
    if errors:
        lines = []
        for err in errors:
            where = "/".join(str(p) for p in err.absolute_path) or "<root>"
            lines.append(f"{where}: {err.message}")
        raise ConfigError("invalid config:\n  " + "\n  ".join(lines))
    return _deep_merge(DEFAULT_CONFIG, raw)


def _build_specs(cfg: dict):
    lat = cfg["lattice"]
    lattice = LatticeSpec(spacing_a=lat["spacing_a"], nx=lat["nx"], ny=lat["ny"],
                          depths_er=tuple(lat["depths_er"]))
    tr = cfg["transition"]
    transition = TransitionSpec(gamma0_mhz=tr["gamma0_mhz"], lambda_nm=tr["lambda_nm"],
                                polarization_model=tr["polarization_model"])
    bm = cfg["beam"]
    beam = BeamSpec(waist_w0=bm["waist_w0"], direction=bm["direction"])
    det = cfg["detection"]
    detection = DetectionSpec(numerical_aperture=det["numerical_aperture"],
                              n_polar=det["n_polar"], n_azimuth=det["n_azimuth"])
    return lattice, transition, beam, detection


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    x = float(value)
    if np.isnan(x):
        return "nan"
    return repr(x)


def _csv_text(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _value_grid(start: float, stop: float, step: float) -> np.ndarray:
    return np.round(np.arange(start, stop + step / 2.0, step), 12)


def _fit_or_nan(x, y, yerr=None):
    try:
        return fit_lorentzian(x, y, yerr)
    except RuntimeError:
        return None


def _fit_cols(fit: LorentzianFit | None):
    if fit is None:
        return (np.nan, np.nan, np.nan, np.nan)
    return (fit.width, fit.width_err, fit.center, fit.center_err)


def _two_pass(ensemble, lattice, transition, beam, detection, n_samples, seed,
              threads, pass1_grid, pass2_n=21, half_widths=1.5):
    """Coarse scan, Lorentzian fit on A, refined scan around the peak."""
    spec1 = scan(pass1_grid, ensemble, lattice, transition, beam, detection,
                 n_samples=n_samples, master_seed=seed, threads=threads)
    fit1 = _fit_or_nan(spec1.detunings, spec1.a_mean)
    if fit1 is None:
        return spec1
    grid2 = refined_grid(fit1, half_widths, pass2_n)
    if grid2[0] >= grid2[-1]:
        return spec1
    return scan(grid2, ensemble, lattice, transition, beam, detection,
                n_samples=n_samples, master_seed=seed, threads=threads)


def _spectrum_fits(spec):
    err_a = spec.a_sem if np.any(spec.a_sem > 0) else None
    err_r = spec.r_sem if np.any(spec.r_sem > 0) else None
    fit_a = _fit_or_nan(spec.detunings, spec.a_mean, err_a)
    fit_r = _fit_or_nan(spec.detunings, spec.r_mean, err_r)
    return fit_a, fit_r


SPECTRUM_HEADER = ("detuning_Gamma0", "r_mean", "r_sem", "t_mean", "t_sem",
                   "a_mean", "a_sem")


def _spectrum_rows(labels, spec):
    for i, d in enumerate(spec.detunings):
        yield (*labels, d, spec.r_mean[i], spec.r_sem[i], spec.t_mean[i],
               spec.t_sem[i], spec.a_mean[i], spec.a_sem[i])


FIT_HEADER = ("gamma_a_Gamma0", "gamma_a_err_Gamma0", "delta0_a_Gamma0",
              "delta0_a_err_Gamma0", "gamma_r_Gamma0", "gamma_r_err_Gamma0",
              "delta0_r_Gamma0", "delta0_r_err_Gamma0", "a_peak", "r_peak")


def _fit_row(spec):
    fit_a, fit_r = _spectrum_fits(spec)
    return (*_fit_cols(fit_a), *_fit_cols(fit_r),
            float(np.max(spec.a_mean)), float(np.max(spec.r_mean)))


# --- scenario implementations -------------------------------------------

def _pair_sweep(cfg, params, n_samples, specs):
    start = params["separation_start_lambda"]
    stop = params["separation_stop_lambda"]
    step = params["separation_step_lambda"]
    seps = _value_grid(start, stop, step)
    rows = []
    for s in seps:
        resp = pair_response(np.array([2.0 * np.pi * s, 0.0, 0.0]))
        rows.append((s, resp["delta_sym"], resp["gamma_sym"],
                     resp["delta_anti"], resp["gamma_anti"]))
    header = ("separation_lambda", "delta_sym_Gamma0", "gamma_sym_Gamma0",
              "delta_anti_Gamma0", "gamma_anti_Gamma0")
    return {"pair_sweep.csv": _csv_text(header, rows)}


def _spacing_sweep(cfg, params, n_samples, specs):
    lattice0, transition, beam, detection = specs
    spacings = sorted(set(_value_grid(params["spacing_start"], params["spacing_stop"],
                                      params["spacing_step"]).tolist())
                      | set(params["extra_spacings"]))
    pass1 = np.linspace(-params["pass1_half_span"], params["pass1_half_span"],
                        params["pass1_n"])
    ensemble = EnsembleSpec()
    seed = cfg["master_seed"]
    rows = []
    for x in spacings:
        lattice = LatticeSpec(spacing_a=x, nx=lattice0.nx, ny=lattice0.ny,
                              depths_er=lattice0.depths_er)
        spec = _two_pass(ensemble, lattice, transition, beam, detection,
                         1, seed, cfg["threads"], pass1, pass2_n=41)
        fit_a, _ = _spectrum_fits(spec)
        sample = draw_sample(ensemble, lattice, sample_rng(seed, 0))
        pos_k = sample.positions * lattice.ka
        coupling = coupling_matrix(pos_k, transition.polarization_model)
        modes = eigensystem(coupling)
        center = fit_a.center if fit_a is not None else 0.0
        field = drive_field(beam, pos_k, lattice.ka)
        dec = decompose(modes, project_drive(field, transition.polarization_model), center)
        dom = dominant_mode(modes, dec)
        gamma_inf = 3.0 / (4.0 * np.pi * x**2) if x < 1.0 else np.nan
        rows.append((x, *_fit_cols(fit_a), modes.gammas[dom], modes.deltas[dom],
                     gamma_inf))
    header = ("spacing_over_lambda", "gamma_a_Gamma0", "gamma_a_err_Gamma0",
              "delta0_a_Gamma0", "delta0_a_err_Gamma0", "gamma_mode_Gamma0",
              "delta_mode_Gamma0", "gamma_infinite_Gamma0")
    return {"spacing_sweep.csv": _csv_text(header, rows)}


def _geometry_ensembles(params, lattice):
    sigma0 = params["sigma0_a"]
    return {
        "array": EnsembleSpec(kind="reduced_filling", filling=params["filling"],
                              spread=SpreadSpec.isotropic(sigma0),
                              with_local_detunings=True),
        "array_ideal": EnsembleSpec(),
        "vertical": EnsembleSpec(kind="vertical_disorder", delta_z=params["delta_z_a"],
                                 spread=SpreadSpec.isotropic(sigma0),
                                 with_local_detunings=True),
        "pancake": EnsembleSpec(kind="pancake_uniform",
                                n_points=int(round(params["filling"] * lattice.nx * lattice.ny))),
    }


def _geometry_compare(cfg, params, n_samples, specs):
    lattice, transition, beam, detection = specs
    grid1 = np.linspace(-cfg["grid"]["half_span"], cfg["grid"]["half_span"],
                        cfg["grid"]["n"])
    ensembles = _geometry_ensembles(params, lattice)
    spectra_rows, fit_rows = [], []
    for idx, name in enumerate(params["configs"]):
        if name not in ensembles:
            raise ConfigError(f"params/configs: unknown geometry {name!r}")
        seed = cfg["master_seed"] + idx
        spec1 = scan(grid1, ensembles[name], lattice, transition, beam, detection,
                     n_samples=n_samples, master_seed=seed, threads=cfg["threads"])
        spectra_rows.extend(_spectrum_rows((name,), spec1))
        fit1 = _fit_or_nan(spec1.detunings, spec1.a_mean)
        spec2 = spec1
        if fit1 is not None:
            grid2 = refined_grid(fit1, 1.5, 21)
            if grid2[0] < grid2[-1]:
                spec2 = scan(grid2, ensembles[name], lattice, transition, beam,
                             detection, n_samples=n_samples, master_seed=seed,
                             threads=cfg["threads"])
        fit_rows.append((name, *_fit_row(spec2)))
    return {
        "geometry_compare_spectra.csv": _csv_text(("config",) + SPECTRUM_HEADER,
                                                  spectra_rows),
        "geometry_compare_fits.csv": _csv_text(("config",) + FIT_HEADER, fit_rows),
    }


def _filling_sweep(cfg, params, n_samples, specs):
    lattice, transition, beam, detection = specs
    pass1 = np.linspace(-cfg["grid"]["half_span"], cfg["grid"]["half_span"], 15)
    rows = []
    run = 0
    for filling in params["fillings"]:
        for sigma_z in params["sigma_z_a"]:
            ensemble = EnsembleSpec(kind="reduced_filling", filling=filling,
                                    spread=SpreadSpec(params["sigma_xy_a"],
                                                      params["sigma_xy_a"], sigma_z),
                                    with_local_detunings=True)
            spec = _two_pass(ensemble, lattice, transition, beam, detection,
                             n_samples, cfg["master_seed"] + run, cfg["threads"], pass1)
            rows.append((filling, sigma_z, *_fit_row(spec)))
            run += 1
    header = ("filling", "sigma_z_a") + FIT_HEADER
    return {"filling_sweep.csv": _csv_text(header, rows)}


def _bloch(cfg, params, n_samples, specs):
    lattice, transition, beam, detection = specs
    times = _value_grid(params["time_start_tb"], params["time_stop_tb"],
                        params["time_step_tb"])
    pass1 = np.linspace(-cfg["grid"]["half_span"], cfg["grid"]["half_span"], 15)
    rows = []
    for i, t in enumerate(times):
        bloch = BlochSpec(zeta_max=params["zeta_max"], time=float(t))
        ensemble = EnsembleSpec(kind="bloch_breathing", bloch=bloch)
        spec = _two_pass(ensemble, lattice, transition, beam, detection,
                         n_samples, cfg["master_seed"] + i, cfg["threads"], pass1)
        fit_a, _ = _spectrum_fits(spec)
        rows.append((t, bloch.zeta, *_fit_cols(fit_a),
                     float(np.max(spec.a_mean)), float(np.max(spec.r_mean))))
    header = ("time_tb", "zeta", "gamma_a_Gamma0", "gamma_a_err_Gamma0",
              "delta0_a_Gamma0", "delta0_a_err_Gamma0", "a_peak", "r_peak")
    return {"bloch.csv": _csv_text(header, rows)}


def _spread_sweep(cfg, params, n_samples, specs):
    lattice, transition, _, detection = specs
    pass1 = np.linspace(-cfg["grid"]["half_span"], cfg["grid"]["half_span"], 15)
    rows = []
    run = 0
    for waist in params["waists_w0_a"]:
        beam = BeamSpec(waist_w0=waist)
        for sigma in params["spreads_a"]:
            ensemble = EnsembleSpec(spread=SpreadSpec.isotropic(sigma))
            spec = _two_pass(ensemble, lattice, transition, beam, detection,
                             n_samples, cfg["master_seed"] + run, cfg["threads"], pass1)
            fit_a, _ = _spectrum_fits(spec)
            rows.append((waist, sigma, float(np.max(spec.r_mean)),
                         float(np.max(spec.a_mean)), *_fit_cols(fit_a)))
            run += 1
    header = ("waist_w0_a", "spread_a", "r_peak", "a_peak", "gamma_a_Gamma0",
              "gamma_a_err_Gamma0", "delta0_a_Gamma0", "delta0_a_err_Gamma0")
    return {"spread_sweep.csv": _csv_text(header, rows)}


def _effect_ladder(cfg, params, n_samples, specs):
    lattice, _, beam, detection = specs
    sigma0 = params["sigma0_a"]
    sigma_hot = params["sigma_z_hot_a"]
    variants = (
        ("i", "isotropic", SpreadSpec(), False),
        ("ii", "isotropic", SpreadSpec.isotropic(sigma0), False),
        ("iii", "isotropic", SpreadSpec(sigma0, sigma0, sigma_hot), False),
        ("iv", "sigma_minus", SpreadSpec(sigma0, sigma0, sigma_hot), False),
        ("v", "sigma_minus", SpreadSpec(sigma0, sigma0, sigma_hot), True),
    )
    pass1 = np.linspace(-cfg["grid"]["half_span"], cfg["grid"]["half_span"], 15)
    rows = []
    run = 0
    for label, model, spread, locdet in variants:
        transition = TransitionSpec(polarization_model=model)
        for filling in params["fillings"]:
            ensemble = EnsembleSpec(kind="reduced_filling", filling=filling,
                                    spread=spread, with_local_detunings=locdet)
            spec = _two_pass(ensemble, lattice, transition, beam, detection,
                             n_samples, cfg["master_seed"] + run, cfg["threads"], pass1)
            rows.append((label, filling, *_fit_row(spec)))
            run += 1
    header = ("variant", "filling") + FIT_HEADER
    return {"effect_ladder.csv": _csv_text(header, rows)}


def _fit_resonance(ensemble, lattice, transition, beam, detection, n_fit, seed,
                   threads, grid):
    spec = scan(grid, ensemble, lattice, transition, beam, detection,
                n_samples=n_fit, master_seed=seed, threads=threads)
    fit_a, _ = _spectrum_fits(spec)
    return fit_a.center if fit_a is not None else 0.0


def _na_curves(ensemble, lattice, transition, beam, detection, na_values,
               n_samples, n_fit, seed, threads, grid):
    """Mean R(NA), A(NA) at the configuration's fitted resonance."""
    center = _fit_resonance(ensemble, lattice, transition, beam, detection,
                            n_fit, seed, threads, grid)
    n_eff = 1 if ensemble.deterministic else n_samples
    acc_r = np.zeros(len(na_values))
    acc_a = np.zeros(len(na_values))
    eta_sum = 0.0
    for i in range(n_eff):
        rng = sample_rng(seed, i)
        sample = draw_sample(ensemble, lattice, rng, seed_record=(seed, i))
        pos_k = sample.positions * lattice.ka
        coupling = coupling_matrix(pos_k, transition.polarization_model)
        field = drive_field(beam, pos_k, lattice.ka)
        sol = solve_steady_state(coupling, project_drive(field, transition.polarization_model),
                                 center, pos_k, local_detunings=sample.local_detunings,
                                 sample_seed=sample.sample_seed)
        refl, absorp = na_resolved_observables(sol, beam, lattice, na_values)
        acc_r += refl
        acc_a += absorp
        eta_sum += sample.n / (lattice.nx * lattice.ny)
    return acc_r / n_eff, acc_a / n_eff, eta_sum / n_eff, center


def _na_sweep(cfg, params, n_samples, specs):
    lattice, transition, beam, detection = specs
    na_values = _value_grid(params["na_start"], params["na_stop"], params["na_step"])
    grid = np.linspace(-cfg["grid"]["half_span"], cfg["grid"]["half_span"], 21)
    n_fit = params["fit_samples"]
    outputs = {}
    if "order" in params["blocks"]:
        configs = {
            "point": EnsembleSpec(),
            "spread": EnsembleSpec(spread=SpreadSpec.isotropic(params["sigma0_a"])),
            "vertical": EnsembleSpec(kind="vertical_disorder",
                                     delta_z=params["delta_z_a"]),
            "pancake": EnsembleSpec(kind="pancake_uniform",
                                    n_points=lattice.nx * lattice.ny),
        }
        rows = []
        for idx, (name, ensemble) in enumerate(configs.items()):
            refl, absorp, eta, center = _na_curves(
                ensemble, lattice, transition, beam, detection, na_values,
                n_samples, n_fit, cfg["master_seed"] + idx, cfg["threads"], grid)
            for j, na in enumerate(na_values):
                rows.append((name, na, refl[j], absorp[j], refl[j] / eta,
                             absorp[j] / eta, center))
        for j, na in enumerate(na_values):
            det = DetectionSpec(numerical_aperture=float(na),
                                n_polar=detection.n_polar, n_azimuth=detection.n_azimuth)
            obs = mirror_reference(beam, det, lattice)
            rows.append(("mirror", na, obs.reflectance, obs.absorptance,
                         obs.reflectance, obs.absorptance, 0.0))
        header = ("config", "na", "reflectance", "absorptance", "r_over_eta",
                  "a_over_eta", "resonance_Gamma0")
        outputs["na_sweep_order.csv"] = _csv_text(header, rows)
    if "filling" in params["blocks"]:
        rows = []
        run = 100
        for model_name, spread in (("point", SpreadSpec()),
                                   ("spread", SpreadSpec(params["sigma0_a"],
                                                         params["sigma0_a"], 0.0))):
            for filling in params["fillings"]:
                ensemble = EnsembleSpec(kind="reduced_filling", filling=filling,
                                        spread=spread)
                refl, absorp, eta, center = _na_curves(
                    ensemble, lattice, transition, beam, detection, na_values,
                    n_samples, n_fit, cfg["master_seed"] + run, cfg["threads"], grid)
                for j, na in enumerate(na_values):
                    rows.append((model_name, filling, na, refl[j], absorp[j],
                                 refl[j] / eta, absorp[j] / eta, center))
                run += 1
        header = ("model", "filling", "na", "reflectance", "absorptance",
                  "r_over_eta", "a_over_eta", "resonance_Gamma0")
        outputs["na_sweep_filling.csv"] = _csv_text(header, rows)
    if not outputs:
        raise ConfigError("params/blocks: need at least one of 'order', 'filling'")
    return outputs


def _mode_pdf(cfg, params, n_samples, specs):
    lattice, transition, beam, detection = specs
    ensembles = {
        "perfect": EnsembleSpec(),
        "reduced_filling": EnsembleSpec(kind="reduced_filling",
                                        filling=params["filling"]),
        "vertical": EnsembleSpec(kind="vertical_disorder", delta_z=params["delta_z_a"]),
        "pancake": EnsembleSpec(kind="pancake_uniform",
                                n_points=lattice.nx * lattice.ny),
    }
    grid = np.linspace(-cfg["grid"]["half_span"], cfg["grid"]["half_span"], 21)
    bins = (params["bins"], params["bins"])
    rows = []
    for idx, name in enumerate(params["configs"]):
        if name not in ensembles:
            raise ConfigError(f"params/configs: unknown configuration {name!r}")
        ensemble = ensembles[name]
        seed = cfg["master_seed"] + idx
        center = _fit_resonance(ensemble, lattice, transition, beam, detection,
                                params["fit_samples"], seed, cfg["threads"], grid)
        n_eff = 1 if ensemble.deterministic else n_samples
        mode_sets, decs = [], []
        for i in range(n_eff):
            rng = sample_rng(seed, i)
            sample = draw_sample(ensemble, lattice, rng, seed_record=(seed, i))
            pos_k = sample.positions * lattice.ka
            coupling = coupling_matrix(pos_k, transition.polarization_model)
            modes = eigensystem(coupling)
            # uniform drive: plane wave along the beam axis, unit amplitude
            field = beam.pol[None, :] * np.exp(1j * beam.sign * pos_k[:, 2])[:, None]
            dec = decompose(modes, project_drive(field, transition.polarization_model),
                            center)
            mode_sets.append(modes)
            decs.append(dec)
        d_edges, g_edges, density = mode_amplitude_histogram(
            mode_sets, decs, bins=bins, delta_range=tuple(params["delta_range"]),
            gamma_range=tuple(params["gamma_range"]))
        d_centers = 0.5 * (d_edges[:-1] + d_edges[1:])
        g_centers = 0.5 * (g_edges[:-1] + g_edges[1:])
        for di, dc in enumerate(d_centers):
            for gi, gc in enumerate(g_centers):
                rows.append((name, dc, gc, density[di, gi]))
    header = ("config", "delta_Gamma0", "gamma_Gamma0", "density")
    return {"mode_pdf.csv": _csv_text(header, rows)}


def _intensity_map(cfg, params, n_samples, specs):
    lattice, transition, _, detection = specs
    step = params["step_a"]
    xs = _value_grid(-params["x_half_range_a"], params["x_half_range_a"], step)
    zs = _value_grid(-params["z_half_range_a"], params["z_half_range_a"], step)
    grid = np.linspace(-cfg["grid"]["half_span"], cfg["grid"]["half_span"], 21)
    rows = []
    run = 0
    for waist in params["waists_w0_a"]:
        beam = BeamSpec(waist_w0=waist)
        for name in params["configs"]:
            if name == "point":
                ensemble = EnsembleSpec()
            elif name == "spread":
                ensemble = EnsembleSpec(spread=SpreadSpec.isotropic(params["sigma0_a"]))
            else:
                raise ConfigError(f"params/configs: unknown configuration {name!r}")
            seed = cfg["master_seed"] + run
            n_map = 1 if ensemble.deterministic else params["spread_samples"]
            center = _fit_resonance(ensemble, lattice, transition, beam, detection,
                                    n_map, seed, cfg["threads"], grid)
            tot = np.zeros((len(xs), len(zs)))
            sc = np.zeros((len(xs), len(zs)))
            for i in range(n_map):
                rng = sample_rng(seed, i)
                sample = draw_sample(ensemble, lattice, rng, seed_record=(seed, i))
                pos_k = sample.positions * lattice.ka
                coupling = coupling_matrix(pos_k, transition.polarization_model)
                field = drive_field(beam, pos_k, lattice.ka)
                sol = solve_steady_state(coupling,
                                         project_drive(field, transition.polarization_model),
                                         center, pos_k,
                                         local_detunings=sample.local_detunings,
                                         sample_seed=sample.sample_seed)
                i_tot, i_sc = near_field_intensity(sol, beam, lattice, xs, zs)
                tot += i_tot
                sc += i_sc
            tot /= n_map
            sc /= n_map
            for xi, x in enumerate(xs):
                for zi, z in enumerate(zs):
                    rows.append((waist, name, x, z, sc[xi, zi], tot[xi, zi]))
            run += 1
    header = ("waist_w0_a", "config", "x_a", "z_a", "intensity_scattered",
              "intensity_total")
    return {"intensity_map.csv": _csv_text(header, rows)}


SCENARIO_PARAMS = {
    "pair-sweep": {"separation_start_lambda": 0.05, "separation_stop_lambda": 3.0,
                   "separation_step_lambda": 0.005},
    "spacing-sweep": {"spacing_start": 0.1, "spacing_stop": 2.0, "spacing_step": 0.05,
                      "extra_spacings": [0.68], "pass1_half_span": 12.0, "pass1_n": 61},
    "geometry-compare": {"configs": ["array", "array_ideal", "vertical", "pancake"],
                         "filling": 0.92, "delta_z_a": 10.0, "sigma0_a": 0.054},
    "filling-sweep": {"fillings": [0.44, 0.52, 0.6, 0.68, 0.76, 0.84, 0.92],
                      "sigma_xy_a": 0.054, "sigma_z_a": [0.054, 0.14]},
    "bloch": {"time_start_tb": 0.0, "time_stop_tb": 2.0, "time_step_tb": 0.1,
              "zeta_max": 2.5},
    "spread-sweep": {"spreads_a": [0.0, 0.025, 0.05, 0.075, 0.1, 0.125, 0.15,
                                   0.175, 0.2, 0.225, 0.25],
                     "waists_w0_a": [56.0, 6.0]},
    "effect-ladder": {"fillings": [0.44, 0.56, 0.68, 0.8, 0.92], "sigma0_a": 0.054,
                      "sigma_z_hot_a": 0.162},
    "na-sweep": {"na_start": 0.05, "na_stop": 1.0, "na_step": 0.05,
                 "blocks": ["order", "filling"], "fillings": [0.4, 0.7, 1.0],
                 "delta_z_a": 10.0, "sigma0_a": 0.054, "fit_samples": 40},
    "mode-pdf": {"configs": ["perfect", "reduced_filling", "vertical", "pancake"],
                 "filling": 0.4, "delta_z_a": 5.0, "bins": 81,
                 "delta_range": [-3.0, 3.0], "gamma_range": [0.0, 3.0],
                 "fit_samples": 40},
    "intensity-map": {"waists_w0_a": [4.0, 56.0], "configs": ["point", "spread"],
                      "sigma0_a": 0.054, "x_half_range_a": 9.0,
                      "z_half_range_a": 9.0, "step_a": 0.15, "spread_samples": 8},
}

DEFAULT_SAMPLES = {
    "pair-sweep": 1, "spacing-sweep": 1, "geometry-compare": 100,
    "filling-sweep": 60, "bloch": 60, "spread-sweep": 60, "effect-ladder": 60,
    "na-sweep": 60, "mode-pdf": 200, "intensity-map": 8,
}

SCENARIOS = {
    "pair-sweep": _pair_sweep,
    "spacing-sweep": _spacing_sweep,
    "geometry-compare": _geometry_compare,
    "filling-sweep": _filling_sweep,
    "bloch": _bloch,
    "spread-sweep": _spread_sweep,
    "effect-ladder": _effect_ladder,
    "na-sweep": _na_sweep,
    "mode-pdf": _mode_pdf,
    "intensity-map": _intensity_map,
}


def _package_version() -> str:
    try:
        return _im.version("coopscatter")
    except _im.PackageNotFoundError:
        return "unknown"


def run_scenario(name: str, config=None, out_dir=None) -> list:
    """Run one scenario and write its CSV set plus a metadata JSON.

    config may be a path, a dict, or None (all defaults). Returns the
    list of files written. On any failure nothing is left behind.
    """
    if name not in SCENARIOS:
        known = ", ".join(sorted(SCENARIOS))
        raise ConfigError(f"unknown scenario {name!r}; available: {known}")
    cfg = validate_config(config)
    params = dict(SCENARIO_PARAMS[name])
    extra = set(cfg["params"]) - set(params)
    if extra:
        raise ConfigError(f"params: unknown keys for {name}: {sorted(extra)}")
    params.update(cfg["params"])
    n_samples = cfg.get("n_samples") or DEFAULT_SAMPLES[name]
    specs = _build_specs(cfg)
    outputs = SCENARIOS[name](cfg, params, n_samples, specs)

    meta_cfg = dict(cfg)
    meta_cfg["params"] = params
    meta_cfg["n_samples"] = n_samples
    meta = {
        "scenario": name,
        "config": meta_cfg,
        "versions": {
            "coopscatter": _package_version(),
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "python": platform.python_version(),
        },
        "outputs": {fname: {"rows": text.count("\n") - 1}
                    for fname, text in outputs.items()},
    }
    outputs[name.replace("-", "_") + "_meta.json"] = (
        json.dumps(meta, indent=2, sort_keys=True) + "\n")

    base = Path(out_dir if out_dir is not None
                else os.environ.get(OUTPUT_DIR_ENV, "."))
    base.mkdir(parents=True, exist_ok=True)
    written = []
    try:
        for fname, text in outputs.items():
            path = base / fname
            path.write_text(text)
            written.append(path)
    except BaseException:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    return written

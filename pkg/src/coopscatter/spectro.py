"""Detuning scans with Monte Carlo disorder averaging, Lorentzian fits."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import curve_fit

from .core import BeamSpec, DetectionSpec, LatticeSpec, TransitionSpec
from .flux import FluxEvaluator
from .geometry import EnsembleSpec, draw_sample, sample_rng
from .solver import (NumericalError, coupling_matrix, drive_field,
                     project_drive, solve_steady_state)

# A run aborts when more than this fraction of samples fails to solve.
MAX_FAILURE_FRACTION = 0.01


def default_detuning_grid(half_span: float = 2.5, n: int = 31) -> np.ndarray:
    return np.linspace(-half_span, half_span, n)


def refined_grid(fit: "LorentzianFit", half_widths: float = 1.5, n: int = 41) -> np.ndarray:
    """Second-pass grid centered on a first-pass fit."""
    return np.linspace(fit.center - half_widths * fit.width,
                       fit.center + half_widths * fit.width, n)


@dataclass(frozen=True)
class SpectrumResult:
    """Sample-averaged R/T/A versus detuning (Gamma0 units throughout)."""

    detunings: np.ndarray
    r_mean: np.ndarray
    r_sem: np.ndarray
    t_mean: np.ndarray
    t_sem: np.ndarray
    a_mean: np.ndarray
    a_sem: np.ndarray
    n_samples: int
    master_seed: int
    n_failures: int = 0

    def __post_init__(self):
        if np.any(np.diff(self.detunings) <= 0):
            raise ValueError("detuning grid must be strictly increasing")
        for sem in (self.r_sem, self.t_sem, self.a_sem):
            if np.any(sem < 0):
                raise ValueError("standard errors must be >= 0")


def _scan_one(index: int, master_seed: int, ensemble: EnsembleSpec, lattice: LatticeSpec,
              transition: TransitionSpec, beam: BeamSpec, detection: DetectionSpec,
              grid: np.ndarray):
    rng = sample_rng(master_seed, index)
    sample = draw_sample(ensemble, lattice, rng, seed_record=(master_seed, index))
    pos_k = sample.positions * lattice.ka
    coupling = coupling_matrix(pos_k, transition.polarization_model)
    evaluator = FluxEvaluator(pos_k, beam, detection, lattice)
    field = drive_field(beam, pos_k, lattice.ka)
    drive = project_drive(field, transition.polarization_model)
    solutions = [solve_steady_state(coupling, drive, delta, pos_k,
                                    local_detunings=sample.local_detunings,
                                    sample_seed=sample.sample_seed)
                 for delta in grid]
    return evaluator.evaluate_batch(solutions)


def scan(detunings: np.ndarray, ensemble: EnsembleSpec, lattice: LatticeSpec,
         transition: TransitionSpec, beam: BeamSpec, detection: DetectionSpec,
         n_samples: int = 1, master_seed: int = 0, threads: int = 1) -> SpectrumResult:
    """Monte Carlo detuning scan; intensities averaged across samples.

    Deterministic disorder models collapse to a single evaluation (the
    mean over identical samples is that sample). Results are reduced in
    sample order, so output depends only on master_seed, never on
    scheduling. Samples whose linear solve degrades count as failures;
    more than MAX_FAILURE_FRACTION of them aborts the run.
    """
    grid = np.asarray(detunings, dtype=float)
    if grid.ndim != 1 or len(grid) < 2 or np.any(np.diff(grid) <= 0):
        raise ValueError("detuning grid must be 1d and strictly increasing")
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    n_eff = 1 if ensemble.deterministic else n_samples

    rows = [None] * n_eff
    failures = []

    def worker(i):
        try:
            return i, _scan_one(i, master_seed, ensemble, lattice, transition,
                                beam, detection, grid), None
        except NumericalError as err:
            return i, None, err

    if threads > 1 and n_eff > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(worker, range(n_eff)))
    else:
        results = [worker(i) for i in range(n_eff)]
    for i, row, err in results:
        if err is not None:
            failures.append(err)
        else:
            rows[i] = row

    if len(failures) / n_eff > MAX_FAILURE_FRACTION:
        seeds = [getattr(e, "sample_seed", None) for e in failures]
        raise NumericalError(
            f"{len(failures)}/{n_eff} samples failed to solve; seeds: {seeds}")
    ok = np.array([r for r in rows if r is not None])  # (n_ok, 3, n_grid)
    n_ok = len(ok)
    mean = ok.mean(axis=0)
    if n_ok > 1:
        sem = ok.std(axis=0, ddof=1) / np.sqrt(n_ok)
    else:
        sem = np.zeros_like(mean)
    return SpectrumResult(detunings=grid,
                          r_mean=mean[0], r_sem=sem[0],
                          t_mean=mean[1], t_sem=sem[1],
                          a_mean=mean[2], a_sem=sem[2],
                          n_samples=n_ok, master_seed=master_seed,
                          n_failures=len(failures))


def _lorentzian(x, amplitude, center, width, offset):
    hw2 = (width / 2.0) ** 2
    return offset + amplitude * hw2 / ((x - center) ** 2 + hw2)


def _moment_init(x: np.ndarray, y: np.ndarray):
    """Initial guess from edge baseline, peak location, half-max crossings."""
    c0 = float(np.median(np.concatenate([y[:2], y[-2:]])))
    dev = np.abs(y - c0)
    k = int(np.argmax(dev))
    a0 = float(y[k] - c0)
    d0 = float(x[k])
    half = dev[k] / 2.0
    left = right = None
    for i in range(k, 0, -1):
        if dev[i - 1] < half:
            f = (half - dev[i - 1]) / (dev[i] - dev[i - 1])
            left = x[i - 1] + f * (x[i] - x[i - 1])
            break
    for i in range(k, len(x) - 1):
        if dev[i + 1] < half:
            f = (half - dev[i + 1]) / (dev[i] - dev[i + 1])
            right = x[i + 1] - f * (x[i + 1] - x[i])
            break
    if left is not None and right is not None:
        w0 = right - left
    elif left is not None:
        w0 = 2.0 * (d0 - left)
    elif right is not None:
        w0 = 2.0 * (right - d0)
    else:
        w0 = (x[-1] - x[0]) / 4.0
    w0 = max(w0, float(np.median(np.diff(x))))
    return a0, d0, w0, c0


@dataclass(frozen=True)
class LorentzianFit:
    """f(x) = offset + amplitude (G/2)^2 / ((x - center)^2 + (G/2)^2)."""

    amplitude: float
    center: float
    width: float
    offset: float
    covariance: np.ndarray  # 4x4, parameter order (amplitude, center, width, offset)
    residual_norm: float
    width_collapsed: bool

    @property
    def center_err(self) -> float:
        return float(np.sqrt(self.covariance[1, 1]))

    @property
    def width_err(self) -> float:
        return float(np.sqrt(self.covariance[2, 2]))


def fit_lorentzian(x: np.ndarray, y: np.ndarray, yerr: np.ndarray | None = None,
                   fix_offset: bool = False) -> LorentzianFit:
    """Weighted Lorentzian fit with moment-based initialization.

    yerr entries that are zero or non-finite disable weighting (a
    deterministic spectrum reports zero standard errors). Raises
    RuntimeError when the optimizer does not converge; a fitted width
    at or below the grid spacing is flagged, not raised.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) < 5:
        raise ValueError("need at least 5 points spanning the peak")
    sigma = None
    if yerr is not None:
        yerr = np.asarray(yerr, dtype=float)
        if np.all(np.isfinite(yerr)) and np.all(yerr > 0):
            sigma = yerr
    p0 = _moment_init(x, y)
    kwargs = dict(sigma=sigma, absolute_sigma=sigma is not None,
                  xtol=1e-9, ftol=1e-12, maxfev=20000)
    if fix_offset:
        popt3, pcov3 = curve_fit(lambda t, a, d, w: _lorentzian(t, a, d, w, 0.0),
                                 x, y, p0=p0[:3], **kwargs)
        popt = np.append(popt3, 0.0)
        pcov = np.zeros((4, 4))
        pcov[:3, :3] = pcov3
    else:
        popt, pcov = curve_fit(_lorentzian, x, y, p0=p0, **kwargs)
    width = abs(float(popt[2]))  # model is even in the width
    residual = float(np.linalg.norm(y - _lorentzian(x, *popt)))
    collapsed = width <= float(np.median(np.diff(x)))
    return LorentzianFit(amplitude=float(popt[0]), center=float(popt[1]), width=width,
                         offset=float(popt[3]), covariance=pcov,
                         residual_norm=residual, width_collapsed=collapsed)


def resonance_shift(parameter_values, fits) -> np.ndarray:
    """Cooperative shift table: rows of (parameter, center, center error)."""
    if len(parameter_values) != len(fits):
        raise ValueError("parameter/fit length mismatch")
    if len(fits) < 2:
        raise ValueError("need at least 2 fitted spectra")
    bad = [i for i, f in enumerate(fits) if f is None]
    if bad:
        raise ValueError(f"fit failures at sweep indices {bad}")
    return np.array([[p, f.center, f.center_err]
                     for p, f in zip(parameter_values, fits)])

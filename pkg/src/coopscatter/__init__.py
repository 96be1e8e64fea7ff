"""Steady-state coupled-dipole simulator for finite 2d atom arrays.

Scaled units throughout: k = 1, Gamma0 = 1, unit drive amplitude at
the beam focus. See README.md for the package tour and docs/formats.md
for the CSV output formats.
"""

from .core import (BeamSpec, DetectionSpec, LatticeSpec, ScaledUnits,
                   TransitionSpec, nondimensionalize)
from .eigenmodes import (ModeDecomposition, ModeSet, decompose, dominant_mode,
                         eigensystem, mode_amplitude_histogram, reconstruct)
from .flux import (FluxEvaluator, Observables, dsigma_interference,
                   dsigma_scattered, integrate_na, mirror_reference,
                   na_resolved_observables, near_field_intensity, observables,
                   scattered_far_field, sigma_in)
from .geometry import (BlochSpec, EnsembleSample, EnsembleSpec, SpreadSpec,
                       TrapConfiguration, bloch_site_distribution, build_traps,
                       draw_sample, local_detuning, sample_positions, sample_rng)
from .greens import dyadic_green, pair_response, scalar_coupling, sigma_projector
from .scenarios import ConfigError, run_scenario, validate_config
from .solver import (CouplingMatrix, DipoleSolution, NumericalError,
                     coupling_matrix, drive_field, polarizability,
                     project_drive, solve_sample, solve_steady_state)
from .spectro import (LorentzianFit, SpectrumResult, default_detuning_grid,
                      fit_lorentzian, refined_grid, resonance_shift, scan)

__version__ = "0.1.0"

__all__ = [
    "BeamSpec", "BlochSpec", "ConfigError", "CouplingMatrix", "DetectionSpec",
    "DipoleSolution", "EnsembleSample", "EnsembleSpec", "FluxEvaluator",
    "LatticeSpec", "LorentzianFit", "ModeDecomposition", "ModeSet",
    "NumericalError", "Observables", "ScaledUnits", "SpectrumResult",
    "SpreadSpec", "TransitionSpec", "TrapConfiguration",
    "bloch_site_distribution", "build_traps", "coupling_matrix", "decompose",
    "default_detuning_grid", "dominant_mode", "draw_sample", "drive_field",
    "dsigma_interference", "dsigma_scattered", "dyadic_green", "eigensystem",
    "fit_lorentzian", "integrate_na", "local_detuning",
    "mirror_reference", "mode_amplitude_histogram", "na_resolved_observables",
    "near_field_intensity", "nondimensionalize", "observables",
    "pair_response", "polarizability", "project_drive", "reconstruct",
    "refined_grid", "resonance_shift", "run_scenario", "sample_positions",
    "sample_rng", "scalar_coupling", "scan", "scattered_far_field", "sigma_in",
    "sigma_projector", "solve_sample", "solve_steady_state", "validate_config",
]

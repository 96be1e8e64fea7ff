"""Coupled-dipole linear system: assembly and steady-state solve.

The sigma_minus model keeps one complex amplitude per atom (dipole
d_l = amp_l * e_sigma-), coupling through the projected scalar
g = e^dag G e. The isotropic model keeps full 3-vectors (3N system,
projector = identity). In both cases

    (1/alpha_l) d_l  -  P sum_{j != l} G(r_lj) d_j  =  P E0(r_l)

with alpha_l = -(1/2) / ((delta - delta_l) + i/2) in scaled units.
"""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from .core import BeamSpec, LatticeSpec, TransitionSpec, E_SIGMA_MINUS
from .greens import dyadic_green, scalar_coupling, MIN_SEPARATION


class NumericalError(RuntimeError):
    """Raised when a solve fails; carries the sample seed for replay."""

    def __init__(self, message, sample_seed=None):
        if sample_seed is not None:
            message = f"{message} (sample_seed={sample_seed})"
        super().__init__(message)
        self.sample_seed = sample_seed


RESIDUAL_TOL = 1e-10


def polarizability(delta, local_detuning=0.0):
    """Scalar atomic polarizability alpha(delta), alpha0 units; broadcasts."""
    return -0.5 / ((np.asarray(delta) - local_detuning) + 0.5j)


def drive_field(beam: BeamSpec, r_k: np.ndarray, ka: float) -> np.ndarray:
    """Paraxial Gaussian focal field at positions r_k (k units), (..., 3).

    Unit amplitude and polarization beam.pol at the focus; the beam
    propagates along +z or -z with waist w0 = beam.waist_w0 * a.
    """
    r = np.asarray(r_k, dtype=float)
    w0 = beam.waist_w0 * ka
    zr = 0.5 * w0**2
    z = beam.sign * r[..., 2]
    rho2 = r[..., 0] ** 2 + r[..., 1] ** 2
    wz = w0 * np.sqrt(1.0 + (z / zr) ** 2)
    inv_r = z / (z**2 + zr**2)  # 1/R(z), regular at the focus
    gouy = np.arctan(z / zr)
    amp = (w0 / wz) * np.exp(-rho2 / wz**2)
    phase = z + 0.5 * rho2 * inv_r - gouy
    return (amp * np.exp(1j * phase))[..., None] * beam.pol


@dataclass
class CouplingMatrix:
    """Detuning-independent Green block matrix for one sample.

    `green` is N x N (sigma_minus, scalar couplings) or 3N x 3N
    (isotropic, full tensor blocks) with zero diagonal (blocks).
    """

    green: np.ndarray
    model: str
    n_atoms: int

    @property
    def dim(self) -> int:
        return self.green.shape[0]


def coupling_matrix(positions_k: np.ndarray, model: str = "sigma_minus") -> CouplingMatrix:
    """Assemble the pairwise Green couplings for positions in k units."""
    pos = np.asarray(positions_k, dtype=float)
    n = len(pos)
    iu = np.triu_indices(n, 1)
    if n > 1:
        sep = pos[iu[0]] - pos[iu[1]]
        if np.any(np.linalg.norm(sep, axis=-1) < MIN_SEPARATION):
            raise NumericalError("coincident dipole positions in sample")
    if model == "sigma_minus":
        g = np.zeros((n, n), dtype=complex)
        if n > 1:
            g[iu] = scalar_coupling(sep)
            g = g + g.T  # G(-r) = G(r), scalar coupling symmetric
        return CouplingMatrix(green=g, model=model, n_atoms=n)
    if model == "isotropic":
        g = np.zeros((n, 3, n, 3), dtype=complex)
        if n > 1:
            blocks = dyadic_green(sep)
            g[iu[0], :, iu[1], :] = blocks
            g[iu[1], :, iu[0], :] = blocks
        return CouplingMatrix(green=g.reshape(3 * n, 3 * n), model=model, n_atoms=n)
    raise ValueError(f"unknown polarization model {model!r}")


def assemble(coupling: CouplingMatrix, delta: float, local_detunings=None) -> np.ndarray:
    """Full system matrix M(delta) = diag(1/alpha_l) - green."""
    n = coupling.n_atoms
    dl = np.zeros(n) if local_detunings is None else np.asarray(local_detunings, dtype=float)
    inva = 1.0 / polarizability(delta, dl)  # = -2(delta - dl) - i
    if coupling.model == "isotropic":
        inva = np.repeat(inva, 3)
    m = -coupling.green.copy()
    m[np.diag_indices(coupling.dim)] = inva
    return m


@dataclass
class DipoleSolution:
    """Steady-state dipole moments for one sample at one detuning."""

    amplitudes: np.ndarray   # (N,) sigma- amplitudes or (N, 3) vectors
    delta: float
    model: str
    positions_k: np.ndarray

    @property
    def dipole_vectors(self) -> np.ndarray:
        """(N, 3) complex dipole vectors regardless of model."""
        if self.model == "sigma_minus":
            return self.amplitudes[:, None] * E_SIGMA_MINUS[None, :]
        return self.amplitudes


def project_drive(field: np.ndarray, model: str) -> np.ndarray:
    """Right-hand side: sigma- projection of the field, or the full vector."""
    if model == "sigma_minus":
        return field @ E_SIGMA_MINUS.conj()
    return np.asarray(field, dtype=complex).reshape(-1)


def solve_steady_state(coupling: CouplingMatrix, drive: np.ndarray, delta: float,
                       positions_k: np.ndarray, local_detunings=None,
                       sample_seed=None) -> DipoleSolution:
    """Direct dense solve of M(delta) d = E with a residual check."""
    m = assemble(coupling, delta, local_detunings)
    rhs = np.asarray(drive, dtype=complex)
    if rhs.shape[0] != coupling.dim:
        raise ValueError("drive length does not match the system dimension")
    try:
        sol = np.linalg.solve(m, rhs)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"singular coupling matrix: {exc}", sample_seed) from exc
    res = np.linalg.norm(m @ sol - rhs) / np.linalg.norm(rhs)
    if not np.isfinite(res) or res > RESIDUAL_TOL:
        raise NumericalError(f"solver residual {res:.2e} above {RESIDUAL_TOL}", sample_seed)
    if coupling.model == "isotropic":
        sol = sol.reshape(coupling.n_atoms, 3)
    return DipoleSolution(amplitudes=sol, delta=delta, model=coupling.model,
                          positions_k=np.asarray(positions_k, dtype=float))


def solve_sample(sample, lattice: LatticeSpec, transition: TransitionSpec, beam: BeamSpec,
                 delta: float, coupling: CouplingMatrix | None = None) -> DipoleSolution:
    """Convenience pipeline: sample (a units) -> solution at one detuning."""
    ka = lattice.ka
    pos_k = sample.positions * ka
    if coupling is None:
        coupling = coupling_matrix(pos_k, transition.polarization_model)
    field = drive_field(beam, pos_k, ka)
    rhs = project_drive(field, transition.polarization_model)
    return solve_steady_state(coupling, rhs, delta, pos_k, sample.local_detunings,
                              sample_seed=sample.sample_seed)

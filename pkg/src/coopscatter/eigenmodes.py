"""Eigenmodes of the coupling matrix and driven-mode decompositions.

For the detuning-independent Green matrix g with eigenpairs
g m_q = mu_q m_q, the collective resonances sit at

    Delta_q = -Re[mu_q] / 2,    Gamma_q = 1 + Im[mu_q]     (Gamma0 units)

and the driven steady state expands as d(delta) = sum_q b_q m_q with
b_q(delta) = c_q / (1/alpha(delta) - mu_q), where the c_q expand the
projected drive in the eigenbasis. Local detunings break this picture;
the decomposition is only defined for uniform-response ensembles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import numpy as np

from .solver import CouplingMatrix, polarizability

COND_LIMIT = 1e12


@dataclass
class ModeSet:
    """Eigensystem of one coupling matrix, with derived (Delta_q, Gamma_q)."""

    eigenvalues: np.ndarray   # mu_q
    modes: np.ndarray         # columns m_q, unit norm
    deltas: np.ndarray        # Delta_q, Gamma0 units
    gammas: np.ndarray        # Gamma_q, Gamma0 units

    @property
    def n_modes(self) -> int:
        return len(self.eigenvalues)


@dataclass
class ModeDecomposition:
    """Drive expansion over one ModeSet at a single detuning."""

    coefficients: np.ndarray   # c_q
    amplitudes_b: np.ndarray   # b_q(delta)
    weights: np.ndarray        # |b_q m_q|^2 = |b_q|^2 for unit-norm modes
    delta: float
    least_squares_fallback: bool = False


def eigensystem(coupling: CouplingMatrix) -> ModeSet:
    """Full non-Hermitian eigendecomposition of the Green matrix."""
    try:
        mu, v = np.linalg.eig(coupling.green)
    except np.linalg.LinAlgError as exc:
        cond = np.linalg.cond(coupling.green)
        raise RuntimeError(f"eigensolver failed (cond ~ {cond:.2e}): {exc}") from exc
    order = np.argsort(mu.real)  # deterministic ordering
    mu = mu[order]
    v = v[:, order]
    return ModeSet(eigenvalues=mu, modes=v,
                   deltas=-mu.real / 2.0, gammas=1.0 + mu.imag)


def decompose(modes: ModeSet, drive: np.ndarray, delta: float) -> ModeDecomposition:
    """Expand the projected drive and evaluate b_q at one detuning.

    Coefficients come from the dual basis (rows of V^-1); a least-squares
    fallback handles a near-defective eigenbasis and is flagged.
    """
    rhs = np.asarray(drive, dtype=complex)
    fallback = False
    try:
        if np.linalg.cond(modes.modes) > COND_LIMIT:
            raise np.linalg.LinAlgError("ill-conditioned eigenbasis")
        c = np.linalg.solve(modes.modes, rhs)
    except np.linalg.LinAlgError:
        c, *_ = np.linalg.lstsq(modes.modes, rhs, rcond=None)
        fallback = True
    b = c / (1.0 / polarizability(delta) - modes.eigenvalues)
    norms2 = np.sum(np.abs(modes.modes) ** 2, axis=0)  # ~1 for LAPACK eigenvectors
    return ModeDecomposition(coefficients=c, amplitudes_b=b,
                             weights=np.abs(b) ** 2 * norms2, delta=delta,
                             least_squares_fallback=fallback)


def reconstruct(modes: ModeSet, decomposition: ModeDecomposition) -> np.ndarray:
    """Sum_q b_q m_q; equals the direct solve for uniform ensembles."""
    return modes.modes @ decomposition.amplitudes_b


def dominant_mode(modes: ModeSet, decomposition: ModeDecomposition) -> int:
    """Index of the mode carrying the largest amplitude weight."""
    return int(np.argmax(decomposition.weights))


def mode_amplitude_histogram(mode_sets, decompositions, bins=(81, 81),
                             delta_range=(-3.0, 3.0), gamma_range=(0.0, 3.0)):
    """Amplitude-weighted 2D histogram over (Delta_q, Gamma_q), unit mass.

    Accepts parallel sequences of ModeSet and ModeDecomposition (one per
    disorder sample). Returns (delta_edges, gamma_edges, mass) where
    mass sums to 1 over in-range modes.
    """
    mode_sets = list(mode_sets)
    decompositions = list(decompositions)
    if not mode_sets or len(mode_sets) != len(decompositions):
        raise ValueError("need one decomposition per mode set")
    d_all = np.concatenate([m.deltas for m in mode_sets])
    g_all = np.concatenate([m.gammas for m in mode_sets])
    w_all = np.concatenate([d.weights for d in decompositions])
    mass, d_edges, g_edges = np.histogram2d(
        d_all, g_all, bins=bins, range=(delta_range, gamma_range), weights=w_all)
    total = mass.sum()
    if total > 0:
        mass = mass / total
    return d_edges, g_edges, mass

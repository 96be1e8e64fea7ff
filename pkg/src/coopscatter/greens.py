"""Free-space dyadic Green's function and the two-dipole response.

The scaled tensor is alpha0 * G(r); with k = 1, alpha0 = 1 it reads

    G(r) = (3/2) e^{i r}/r [ (1 + i/r - 1/r^2) I + (-1 - 3i/r + 3/r^2) rr ]

with rr the outer product of the unit separation. Time convention
e^{-i w t}, outgoing waves e^{+i k r}; with this sign a single pair
gives Gamma_sym = 1 + Im[g] -> 2 in the Dicke limit r -> 0.
"""

from __future__ import annotations

import numpy as np

from .core import E_SIGMA_MINUS

MIN_SEPARATION = 1e-9  # k units; coincident draws are resampled upstream


def dyadic_green(rvec: np.ndarray) -> np.ndarray:
    """Scaled Green tensor alpha0*G for separations rvec (..., 3), k units.

    Broadcasts over leading axes. Raises on separations below the
    coincidence guard (the l = j self term never enters the model).
    """
    rvec = np.asarray(rvec, dtype=float)
    # 0-d wrap keeps single separations (shape (3,)) on the same code path
    r = np.asarray(np.linalg.norm(rvec, axis=-1))
    if np.any(r < MIN_SEPARATION):
        raise ValueError("zero separation passed to dyadic_green")
    rhat = rvec / r[..., None]
    pre = 1.5 * np.exp(1j * r) / r
    c_eye = 1.0 + 1j / r - 1.0 / r**2
    c_out = -1.0 - 3j / r + 3.0 / r**2
    eye = np.eye(3)
    outer = rhat[..., :, None] * rhat[..., None, :]
    return pre[..., None, None] * (c_eye[..., None, None] * eye + c_out[..., None, None] * outer)


def sigma_projector() -> np.ndarray:
    """Rank-1 projector onto the sigma- polarization, P = e (x) e^dagger."""
    e = E_SIGMA_MINUS
    return np.outer(e, e.conj())


def scalar_coupling(rvec: np.ndarray) -> np.ndarray:
    """sigma- projected scalar coupling g(r) = e^dag . G(r) . e, broadcast."""
    G = dyadic_green(rvec)
    e = E_SIGMA_MINUS
    return np.einsum("i,...ij,j->...", e.conj(), G, e)


def pair_response(separation: np.ndarray) -> dict:
    """Cooperative shifts/linewidths of two sigma- dipoles.

    The 2x2 coupling matrix (zero diagonal, g off-diagonal) has
    eigenvalues mu = +-g, giving Delta = -Re[mu]/2 and
    Gamma = 1 + Im[mu] in Gamma0 units.
    """
    g = complex(scalar_coupling(np.asarray(separation, dtype=float)))
    return {
        "delta_sym": -g.real / 2.0,
        "gamma_sym": 1.0 + g.imag,
        "delta_anti": +g.real / 2.0,
        "gamma_anti": 1.0 - g.imag,
    }

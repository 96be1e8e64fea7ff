"""Physical constants, unit conventions and shared configuration types.

Internally everything is nondimensionalized: k = 1 (lengths in 1/k),
Gamma0 = 1 (rates and detunings in Gamma0), alpha0 = 1, and the drive
amplitude is 1 at the focus. Reported frequencies convert back through
Gamma0 = 2*pi*6.06 MHz.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import numpy as np

# D2 line / lattice defaults used throughout the scenario layer.
GAMMA0_MHZ = 6.06           # natural linewidth, Gamma0 / 2pi
LAMBDA_NM = 780.0           # transition wavelength
SPACING_NM = 532.0          # lattice constant
SPACING_OVER_LAMBDA = 0.68  # a / lambda as used in all scenarios

# Recoil energy of the 1064 nm lattice (spacing a = 532 nm),
# E_r = h / (8 m a^2) expressed in Hz. CODATA h, AME mass of 87Rb.
RECOIL_HZ = 6.62607015e-34 / (8 * 86.909180531 * 1.66053906892e-27 * (532e-9) ** 2)

GROUND_STATE_SPREAD_A = 0.054   # rms wavepacket spread at 300 E_r, units of a
DEFAULT_NA = 0.68
DEFAULT_DEPTHS_ER = (300.0, 300.0, 300.0)

# circular polarization basis (quantization axis z)
E_SIGMA_MINUS = np.array([1.0, -1.0j, 0.0]) / np.sqrt(2.0)
E_SIGMA_PLUS = np.array([1.0, +1.0j, 0.0]) / np.sqrt(2.0)


@dataclass(frozen=True)
class TransitionSpec:
    """Two-level optical transition.

    gamma0_mhz is Gamma0/2pi in MHz and only enters unit conversions;
    the dynamics run in scaled units. polarization_model selects the
    sigma_minus scalar model (N equations) or the isotropic vector
    model (3N equations, projector = identity).
    """

    gamma0_mhz: float = GAMMA0_MHZ
    lambda_nm: float = LAMBDA_NM
    alpha0: float = 1.0
    polarization_model: str = "sigma_minus"
    zeeman_detuning_sigma_plus: float = 1.0  # informational, Gamma0 units

    def __post_init__(self):
        if self.gamma0_mhz <= 0 or self.lambda_nm <= 0 or self.alpha0 <= 0:
            raise ValueError("transition parameters must be positive")
        if self.polarization_model not in ("isotropic", "sigma_minus"):
            raise ValueError(f"unknown polarization model {self.polarization_model!r}")


@dataclass(frozen=True)
class LatticeSpec:
    """Square trap lattice: spacing in units of lambda, site counts, depths in E_r."""

    spacing_a: float = SPACING_OVER_LAMBDA
    nx: int = 14
    ny: int = 14
    depths_er: tuple = DEFAULT_DEPTHS_ER

    def __post_init__(self):
        if self.spacing_a <= 0:
            raise ValueError("spacing_a must be positive")
        if self.nx < 1 or self.ny < 1:
            raise ValueError("site counts must be >= 1")
        if any(v < 0 for v in self.depths_er):
            raise ValueError("lattice depths must be >= 0")

    @property
    def ka(self) -> float:
        """Lattice constant in scaled length units (k = 1)."""
        return 2.0 * np.pi * self.spacing_a


@dataclass(frozen=True)
class BeamSpec:
    """Paraxial Gaussian drive focused at z = 0.

    waist_w0 is in units of the lattice constant a. detuning is the
    drive detuning from the bare atomic resonance in Gamma0.
    """

    waist_w0: float = 56.0
    direction: str = "plus_z"
    detuning: float = 0.0
    polarization: tuple = (E_SIGMA_MINUS[0], E_SIGMA_MINUS[1], E_SIGMA_MINUS[2])

    def __post_init__(self):
        if self.waist_w0 <= 0:
            raise ValueError("waist must be positive")
        if self.direction not in ("plus_z", "minus_z"):
            raise ValueError(f"unknown direction {self.direction!r}")
        pol = np.asarray(self.polarization, dtype=complex)
        if abs(np.vdot(pol, pol).real - 1.0) > 1e-12:
            raise ValueError("polarization must be unit norm")

    @property
    def pol(self) -> np.ndarray:
        return np.asarray(self.polarization, dtype=complex)

    @property
    def sign(self) -> float:
        return 1.0 if self.direction == "plus_z" else -1.0


@dataclass(frozen=True)
class DetectionSpec:
    """Collection objective: NA = sin of half angle, quadrature resolution."""

    numerical_aperture: float = DEFAULT_NA
    n_polar: int = 128
    n_azimuth: int = 256

    def __post_init__(self):
        if not 0.0 < self.numerical_aperture <= 1.0:
            raise ValueError("NA must lie in (0, 1]")
        if self.n_polar < 4 or self.n_azimuth < 4:
            raise ValueError("quadrature order too small")


@dataclass(frozen=True)
class ScaledUnits:
    """Conversion factors between scaled and laboratory units."""

    k_per_m: float
    gamma0_rad_s: float
    ka: float

    def freq_to_mhz(self, x_gamma0: float) -> float:
        """Detuning/linewidth in Gamma0 units -> frequency in MHz (nu, not omega)."""
        return x_gamma0 * self.gamma0_rad_s / (2.0 * np.pi * 1e6)

    def mhz_to_freq(self, x_mhz: float) -> float:
        return x_mhz * (2.0 * np.pi * 1e6) / self.gamma0_rad_s

    def length_to_nm(self, x_k: float) -> float:
        return x_k / self.k_per_m * 1e9

    def nm_to_length(self, x_nm: float) -> float:
        return x_nm * 1e-9 * self.k_per_m


def nondimensionalize(transition: TransitionSpec, lattice: LatticeSpec) -> ScaledUnits:
    """Build the conversion record for the given transition and lattice."""
    k_per_m = 2.0 * np.pi / (transition.lambda_nm * 1e-9)
    gamma0 = 2.0 * np.pi * transition.gamma0_mhz * 1e6
    return ScaledUnits(k_per_m=k_per_m, gamma0_rad_s=gamma0, ka=lattice.ka)

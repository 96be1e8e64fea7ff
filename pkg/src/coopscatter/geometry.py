"""Trap configurations and Monte Carlo position/detuning samples.

All coordinates here are in units of the lattice constant a. Trap sites
for the ordered kinds live on the integer grid {0..nx-1} x {0..ny-1};
sampled ensembles are recentered so the array center sits at the origin
(where the probe beam is focused).
"""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np
from scipy.special import jv

from .core import LatticeSpec, GAMMA0_MHZ, RECOIL_HZ

TRAP_KINDS = ("ordered_2d", "reduced_filling", "vertical_disorder", "pancake_uniform", "bloch_breathing")


@dataclass(frozen=True)
class SpreadSpec:
    """Gaussian positional rms spreads per axis, units of a."""

    sigma_x: float = 0.0
    sigma_y: float = 0.0
    sigma_z: float = 0.0

    def __post_init__(self):
        if min(self.sigma_x, self.sigma_y, self.sigma_z) < 0:
            raise ValueError("spreads must be >= 0")

    @classmethod
    def isotropic(cls, sigma: float) -> "SpreadSpec":
        return cls(sigma, sigma, sigma)


@dataclass(frozen=True)
class BlochSpec:
    """Wannier-Stark breathing of the vertical positions.

    zeta_max = 4J/Delta_z is the dimensionless breathing amplitude
    (site units); time is in units of the Bloch period T_B.
    """

    zeta_max: float = 2.5
    time: float = 0.0
    period_tb_ms: float = 4.7  # informational

    def __post_init__(self):
        if self.zeta_max < 0:
            raise ValueError("zeta_max must be >= 0")

    @property
    def zeta(self) -> float:
        return self.zeta_max * abs(np.sin(np.pi * self.time))


@dataclass(frozen=True)
class TrapConfiguration:
    """Trap centers (units of a) for one disorder realization."""

    sites: np.ndarray
    config_kind: str

    def __post_init__(self):
        if self.config_kind not in TRAP_KINDS:
            raise ValueError(f"unknown trap kind {self.config_kind!r}")
        if len(self.sites) == 0:
            raise ValueError("empty trap configuration")
        if not np.all(np.isfinite(self.sites)):
            raise ValueError("non-finite trap coordinates")


@dataclass(frozen=True)
class EnsembleSample:
    """One Monte Carlo realization: centered positions plus local detunings."""

    positions: np.ndarray        # (N, 3), units of a, array center at origin
    local_detunings: np.ndarray  # (N,), Gamma0 units
    sample_seed: tuple           # (master_seed, sample_index) record

    def __post_init__(self):
        if len(self.positions) != len(self.local_detunings):
            raise ValueError("positions/detunings length mismatch")

    @property
    def n(self) -> int:
        return len(self.positions)


def _grid_sites(lattice: LatticeSpec) -> np.ndarray:
    ix, iy = np.meshgrid(np.arange(lattice.nx), np.arange(lattice.ny), indexing="ij")
    z = np.zeros(lattice.nx * lattice.ny)
    return np.stack([ix.ravel(), iy.ravel(), z], axis=1).astype(float)


def grid_center(lattice: LatticeSpec) -> np.ndarray:
    return np.array([(lattice.nx - 1) / 2.0, (lattice.ny - 1) / 2.0, 0.0])


def bloch_site_distribution(bloch: BlochSpec, n_max: int | None = None):
    """Vertical site occupations P_n(t) = J_n(zeta(t))^2.

    Returns (site indices, probabilities). The truncation window is wide
    enough that the Bessel tail is below 1e-14 of the total mass.
    """
    zeta = bloch.zeta
    if n_max is None:
        n_max = int(np.ceil(zeta)) + 14
    ns = np.arange(-n_max, n_max + 1)
    pn = jv(ns, zeta) ** 2
    return ns, pn


def build_traps(lattice: LatticeSpec, kind: str, rng: np.random.Generator | None = None,
                filling: float = 1.0, delta_z: float = 0.0, n_points: int | None = None,
                bloch: BlochSpec | None = None) -> TrapConfiguration:
    """Generate trap centers for one realization of the requested kind.

    ordered_2d        full nx x ny planar grid (deterministic).
    reduced_filling   exactly round(filling * nx * ny) grid sites retained.
    vertical_disorder each planar site gets an integer z-site from a
                      rounded Gaussian of standard deviation delta_z.
    pancake_uniform   n_points positions uniform over the nx*a x ny*a
                      footprint rectangle at z = 0 (no wells).
    bloch_breathing   integer z-sites sampled from P_n(t) = J_n(zeta)^2.
    """
    sites = _grid_sites(lattice)
    if kind == "ordered_2d":
        return TrapConfiguration(sites, kind)
    if kind == "reduced_filling":
        if not 0.0 < filling <= 1.0:
            raise ValueError("filling must lie in (0, 1]")
        n_keep = int(round(filling * len(sites)))
        if n_keep == 0:
            raise ValueError("filling too small: zero sites retained")
        idx = np.sort(rng.choice(len(sites), size=n_keep, replace=False))
        return TrapConfiguration(sites[idx], kind)
    if kind == "vertical_disorder":
        if delta_z <= 0:
            raise ValueError("delta_z must be positive")
        sites = sites.copy()
        sites[:, 2] = np.round(rng.normal(0.0, delta_z, size=len(sites)))
        return TrapConfiguration(sites, kind)
    if kind == "pancake_uniform":
        n = n_points if n_points is not None else lattice.nx * lattice.ny
        pts = np.empty((n, 3))
        pts[:, 0] = rng.uniform(-0.5, lattice.nx - 0.5, size=n)
        pts[:, 1] = rng.uniform(-0.5, lattice.ny - 0.5, size=n)
        pts[:, 2] = 0.0
        return TrapConfiguration(pts, kind)
    if kind == "bloch_breathing":
        bloch = bloch if bloch is not None else BlochSpec()
        ns, pn = bloch_site_distribution(bloch)
        sites = sites.copy()
        sites[:, 2] = rng.choice(ns, size=len(sites), p=pn / pn.sum())
        return TrapConfiguration(sites, kind)
    raise ValueError(f"unknown trap kind {kind!r}")


def local_detuning(displacement: np.ndarray, lattice: LatticeSpec) -> np.ndarray:
    """Local resonance shift delta_l in Gamma0 units for in-well displacements.

    The excited state is anti-trapped, V_e ~ -1.5 V_g, so the transition
    shifts by -2.5 V_g(r) with V_g(r) = sum_i V_i sin^2(pi r_i / a).
    Displacements are measured from the trap center in units of a; the
    shift vanishes there and is negative everywhere else.
    """
    d = np.asarray(displacement, dtype=float)
    depths = np.asarray(lattice.depths_er, dtype=float)
    vg_er = np.sum(depths * np.sin(np.pi * d) ** 2, axis=-1)
    return -2.5 * vg_er * RECOIL_HZ / (GAMMA0_MHZ * 1e6)


def sample_positions(traps: TrapConfiguration, spread: SpreadSpec, rng: np.random.Generator,
                     lattice: LatticeSpec, with_local_detunings: bool = False,
                     seed_record: tuple = (0, 0)) -> EnsembleSample:
    """Draw one ensemble: trap centers + Gaussian displacements, recentered.

    When with_local_detunings is set, each atom also gets the resonance
    shift of its in-well displacement; trap kinds without wells
    (pancake_uniform) keep delta_l = 0.
    """
    n = len(traps.sites)
    disp = np.zeros((n, 3))
    sig = (spread.sigma_x, spread.sigma_y, spread.sigma_z)
    for ax in range(3):
        if sig[ax] > 0:
            disp[:, ax] = rng.normal(0.0, sig[ax], size=n)
    positions = traps.sites + disp - grid_center(lattice)
    if with_local_detunings and traps.config_kind != "pancake_uniform":
        detunings = local_detuning(disp, lattice)
    else:
        detunings = np.zeros(n)
    return EnsembleSample(positions=positions, local_detunings=detunings, sample_seed=seed_record)


def sample_rng(master_seed: int, sample_index: int) -> np.random.Generator:
    """Deterministic per-sample generator, independent across indices."""
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(sample_index,)))


@dataclass(frozen=True)
class EnsembleSpec:
    """One disorder model: trap kind, spreads, filling, well shifts.

    Bundles everything a Monte Carlo scan needs to draw realizations;
    fields unused by the chosen kind are ignored. Lengths in units of a.
    """

    kind: str = "ordered_2d"
    spread: SpreadSpec = SpreadSpec()
    filling: float = 1.0
    delta_z: float = 0.0
    n_points: int | None = None
    bloch: BlochSpec | None = None
    with_local_detunings: bool = False

    def __post_init__(self):
        if self.kind not in TRAP_KINDS:
            raise ValueError(f"unknown trap kind {self.kind!r}")

    @property
    def deterministic(self) -> bool:
        """True when every draw yields the identical configuration."""
        if max(self.spread.sigma_x, self.spread.sigma_y, self.spread.sigma_z) > 0:
            return False
        if self.kind == "ordered_2d":
            return True
        if self.kind == "reduced_filling":
            return self.filling == 1.0
        if self.kind == "bloch_breathing":
            bloch = self.bloch if self.bloch is not None else BlochSpec()
            return bool(bloch.zeta < 1e-12)
        return False


def draw_sample(spec: EnsembleSpec, lattice: LatticeSpec, rng: np.random.Generator,
                seed_record: tuple = (0, 0)) -> EnsembleSample:
    """Draw one complete realization of the given disorder model."""
    traps = build_traps(lattice, spec.kind, rng, filling=spec.filling,
                        delta_z=spec.delta_z, n_points=spec.n_points, bloch=spec.bloch)
    return sample_positions(traps, spec.spread, rng, lattice,
                            with_local_detunings=spec.with_local_detunings,
                            seed_record=seed_record)

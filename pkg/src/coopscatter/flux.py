"""Far-field fluxes, NA-limited observables, intensity maps, mirror reference.

Cross sections are in scaled area units (k = 1) with unit drive
amplitude at the focus. The scattered differential cross section is

    dsigma_sc/dOmega = (9/4) |(I - rr) sum_i d_i e^{-i r.r_i}|^2

and the beam-scattered interference term, integrated against the
paraxial angular amplitude of the Gaussian beam, is

    dsigma_intf/dOmega = -(3/2) w0^2 e^{-(w0 theta / 2)^2}
                         Im[ e_pol^dag . (I - rr) sum_i d_i e^{-i r.r_i} ]

on the forward (propagation) hemisphere. Integrating this kernel over
the forward hemisphere reproduces minus the full extinction cross
section 6 pi sum_i Im[E0*(r_i).d_i] in the paraxial limit, which is
what makes A(NA=1) = R(NA=1) hold for lossless samples.
"""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import erf, erfcx

from .core import BeamSpec, DetectionSpec, LatticeSpec
from .greens import dyadic_green
from .solver import DipoleSolution, drive_field


@dataclass(frozen=True)
class CapQuadrature:
    """Product quadrature over a spherical cap about the +z or -z axis."""

    dirs: np.ndarray      # (M, 3) unit vectors
    weights: np.ndarray   # (M,) solid-angle weights
    thetas: np.ndarray    # (M,) polar angle from the cap axis

    @property
    def solid_angle(self) -> float:
        return float(self.weights.sum())


def cap_quadrature(theta_max: float, n_polar: int, n_azimuth: int,
                   axis_sign: float = 1.0) -> CapQuadrature:
    """Gauss-Legendre (polar) x uniform (azimuth) nodes on a cap."""
    x, w = leggauss(n_polar)
    th = 0.5 * theta_max * (x + 1.0)
    wth = 0.5 * theta_max * w * np.sin(th)
    phi = np.arange(n_azimuth) * (2.0 * np.pi / n_azimuth)
    thetas = np.repeat(th, n_azimuth)
    weights = np.repeat(wth, n_azimuth) * (2.0 * np.pi / n_azimuth)
    phis = np.tile(phi, n_polar)
    st = np.sin(thetas)
    dirs = np.stack([st * np.cos(phis), st * np.sin(phis),
                     axis_sign * np.cos(thetas)], axis=-1)
    return CapQuadrature(dirs=dirs, weights=weights, thetas=thetas)


def scattered_far_field(solution: DipoleSolution, dirs: np.ndarray) -> np.ndarray:
    """Transverse far-field amplitude (radial part projected out), (M, 3)."""
    dirs = np.atleast_2d(np.asarray(dirs, dtype=float))
    dv = solution.dipole_vectors
    phases = np.exp(-1j * (dirs @ solution.positions_k.T))
    f = phases @ dv
    return f - dirs * np.einsum("ij,ij->i", dirs, f)[:, None]


def dsigma_scattered(solution: DipoleSolution, dirs: np.ndarray) -> np.ndarray:
    f = scattered_far_field(solution, dirs)
    return 2.25 * np.sum(np.abs(f) ** 2, axis=-1)


def dsigma_interference(solution: DipoleSolution, beam: BeamSpec, ka: float,
                        dirs: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """Beam-scattered interference kernel on the forward hemisphere."""
    w0 = beam.waist_w0 * ka
    f = scattered_far_field(solution, dirs)
    envelope = np.exp(-((w0 * np.asarray(thetas) / 2.0) ** 2))
    return -1.5 * w0**2 * envelope * np.imag(f @ beam.pol.conj())


def integrate_na(integrand, na: float, n_polar: int = 128, n_azimuth: int = 256,
                 axis_sign: float = 1.0, error_estimate: bool = False):
    """Integrate integrand(dirs, thetas) over the cap sin(theta) < NA.

    Returns the cross section, or (value, error) where the error is
    estimated by comparison with a half-order rule.
    """
    theta_max = np.arcsin(min(na, 1.0))
    cap = cap_quadrature(theta_max, n_polar, n_azimuth, axis_sign)
    value = float(np.dot(integrand(cap.dirs, cap.thetas), cap.weights))
    if not error_estimate:
        return value
    half = cap_quadrature(theta_max, max(n_polar // 2, 4), max(n_azimuth // 2, 4), axis_sign)
    value_half = float(np.dot(integrand(half.dirs, half.thetas), half.weights))
    return value, abs(value - value_half)


def sigma_in(beam: BeamSpec, lattice: LatticeSpec) -> float:
    """Beam power through the nx*a x ny*a footprint (unit focal intensity).

    Analytic for the focal-plane Gaussian:
    integral of exp(-2 rho^2/w0^2) over the centered rectangle.
    """
    ka = lattice.ka
    w0 = beam.waist_w0 * ka
    hx = lattice.nx * ka / 2.0
    hy = lattice.ny * ka / 2.0
    return float(w0**2 * (np.pi / 2.0)
                 * erf(np.sqrt(2.0) * hx / w0) * erf(np.sqrt(2.0) * hy / w0))


@dataclass(frozen=True)
class Observables:
    """NA-resolved reflectance/transmittance/absorptance of one solution."""

    reflectance: float
    transmittance: float
    absorptance: float
    sigma_in: float
    na: float


# Interference cone: the Gaussian envelope dies at theta ~ 2/w0, so a
# dedicated narrow cap resolves it regardless of the detection NA.
_CONE_WIDTHS = 14.0
_CONE_POLAR = 96
_CONE_AZIMUTH = 64


class FluxEvaluator:
    """Caches quadratures and phase factors for one sample's positions.

    Re-evaluating observables across a detuning scan then costs only a
    few small matmuls per point instead of fresh phase matrices.
    """

    def __init__(self, positions_k: np.ndarray, beam: BeamSpec, detection: DetectionSpec,
                 lattice: LatticeSpec):
        self.positions_k = np.asarray(positions_k, dtype=float)
        self.beam = beam
        self.lattice = lattice
        self.na = detection.numerical_aperture
        self.sigma_in = sigma_in(beam, lattice)
        w0 = beam.waist_w0 * lattice.ka
        self._w0 = w0
        s = beam.sign
        theta_na = np.arcsin(min(self.na, 1.0))
        self._fwd = cap_quadrature(theta_na, detection.n_polar, detection.n_azimuth, s)
        self._bwd = cap_quadrature(theta_na, detection.n_polar, detection.n_azimuth, -s)
        cone = min(_CONE_WIDTHS / w0, np.pi / 2.0)
        self._cone = cap_quadrature(cone, _CONE_POLAR, _CONE_AZIMUTH, s)
        self._ph_fwd = np.exp(-1j * (self._fwd.dirs @ self.positions_k.T))
        self._ph_bwd = np.exp(-1j * (self._bwd.dirs @ self.positions_k.T))
        self._ph_cone = np.exp(-1j * (self._cone.dirs @ self.positions_k.T))
        self._envelope = np.exp(-((w0 * self._cone.thetas / 2.0) ** 2))

    def _sc_power(self, cap: CapQuadrature, phases: np.ndarray, dv: np.ndarray) -> float:
        f = phases @ dv
        f -= cap.dirs * np.einsum("ij,ij->i", cap.dirs, f)[:, None]
        return float(np.dot(2.25 * np.sum(np.abs(f) ** 2, axis=-1), cap.weights))

    def evaluate(self, solution: DipoleSolution) -> Observables:
        dv = solution.dipole_vectors
        ssc_fwd = self._sc_power(self._fwd, self._ph_fwd, dv)
        ssc_bwd = self._sc_power(self._bwd, self._ph_bwd, dv)
        f = self._ph_cone @ dv
        f -= self._cone.dirs * np.einsum("ij,ij->i", self._cone.dirs, f)[:, None]
        vals = -1.5 * self._w0**2 * self._envelope * np.imag(f @ self.beam.pol.conj())
        s_intf = float(np.dot(vals, self._cone.weights))
        refl = ssc_bwd / self.sigma_in
        absorp = -(ssc_fwd + s_intf) / self.sigma_in
        return Observables(reflectance=refl, transmittance=1.0 - absorp,
                           absorptance=absorp, sigma_in=self.sigma_in, na=self.na)

    def _sc_powers_batch(self, cap: CapQuadrature, phases: np.ndarray,
                         dv: np.ndarray) -> np.ndarray:
        n_sol = dv.shape[-1]
        f = (phases @ dv.reshape(dv.shape[0], -1)).reshape(-1, 3, n_sol)
        f -= cap.dirs[:, :, None] * np.einsum("mi,min->mn", cap.dirs, f)[:, None, :]
        return 2.25 * (cap.weights @ np.sum(np.abs(f) ** 2, axis=1))

    def evaluate_batch(self, solutions) -> np.ndarray:
        """(3, n) array of R/T/A for solutions sharing these positions.

        Stacking the dipole vectors turns the per-detuning far-field
        sums into one matrix product per cap, which is what makes
        Monte Carlo detuning scans affordable.
        """
        dv = np.stack([s.dipole_vectors for s in solutions], axis=-1)  # (N, 3, n)
        ssc_fwd = self._sc_powers_batch(self._fwd, self._ph_fwd, dv)
        ssc_bwd = self._sc_powers_batch(self._bwd, self._ph_bwd, dv)
        n_sol = dv.shape[-1]
        f = (self._ph_cone @ dv.reshape(dv.shape[0], -1)).reshape(-1, 3, n_sol)
        f -= self._cone.dirs[:, :, None] * np.einsum("mi,min->mn", self._cone.dirs, f)[:, None, :]
        vals = np.imag(np.einsum("min,i->mn", f, self.beam.pol.conj()))
        s_intf = -1.5 * self._w0**2 * ((self._envelope * self._cone.weights) @ vals)
        refl = ssc_bwd / self.sigma_in
        absorp = -(ssc_fwd + s_intf) / self.sigma_in
        return np.stack([refl, 1.0 - absorp, absorp])


def observables(solution: DipoleSolution, beam: BeamSpec, detection: DetectionSpec,
                lattice: LatticeSpec) -> Observables:
    """R, T, A for one solved sample (single-shot convenience wrapper)."""
    ev = FluxEvaluator(solution.positions_k, beam, detection, lattice)
    return ev.evaluate(solution)


def near_field_intensity(solution: DipoleSolution, beam: BeamSpec, lattice: LatticeSpec,
                         x_grid_a: np.ndarray, z_grid_a: np.ndarray, y_a: float = 0.0,
                         exclusion_a: float = 0.3):
    """|E0 + Esc|^2 and |Esc|^2 on an x-z grid (a units), dipoles masked.

    Grid points closer than exclusion_a to any dipole get NaN (the
    near-field 1/r^3 divergence is physical but unplottable).
    Returns (total_intensity, scattered_intensity) with shape
    (len(x_grid_a), len(z_grid_a)).
    """
    ka = lattice.ka
    xs = np.asarray(x_grid_a, dtype=float) * ka
    zs = np.asarray(z_grid_a, dtype=float) * ka
    gx, gz = np.meshgrid(xs, zs, indexing="ij")
    pts = np.stack([gx.ravel(), np.full(gx.size, y_a * ka), gz.ravel()], axis=1)
    dv = solution.dipole_vectors
    pos = solution.positions_k
    esc = np.zeros((len(pts), 3), dtype=complex)
    mask = np.zeros(len(pts), dtype=bool)
    chunk = 2048
    for lo in range(0, len(pts), chunk):
        block = pts[lo:lo + chunk]
        sep = block[:, None, :] - pos[None, :, :]
        dist = np.linalg.norm(sep, axis=-1)
        bad = dist.min(axis=1) < exclusion_a * ka
        mask[lo:lo + chunk] = bad
        safe = sep.copy()
        safe[dist < exclusion_a * ka] = np.array([1.0, 0.0, 0.0])  # placeholder, masked later
        g = dyadic_green(safe)
        esc[lo:lo + chunk] = np.einsum("pnij,nj->pi", g, dv)
    e0 = drive_field(beam, pts, ka)
    i_tot = np.sum(np.abs(e0 + esc) ** 2, axis=-1)
    i_sc = np.sum(np.abs(esc) ** 2, axis=-1)
    i_tot[mask] = np.nan
    i_sc[mask] = np.nan
    shape = (len(xs), len(zs))
    return i_tot.reshape(shape), i_sc.reshape(shape)


def na_resolved_observables(solution: DipoleSolution, beam: BeamSpec, lattice: LatticeSpec,
                            na_values: np.ndarray, n_polar_per_annulus: int = 8,
                            n_azimuth: int = 256):
    """R(NA) and A(NA) for one solution over an increasing NA grid.

    The scattered power is accumulated over polar annuli between
    consecutive NA boundaries (cumulative sums give every cap exactly),
    while the sharply peaked interference term gets a dedicated cone
    per NA value. Returns (reflectance, absorptance) arrays.
    """
    na_values = np.asarray(na_values, dtype=float)
    if np.any(np.diff(na_values) <= 0) or na_values[0] <= 0 or na_values[-1] > 1:
        raise ValueError("na_values must be strictly increasing within (0, 1]")
    s_in = sigma_in(beam, lattice)
    w0 = beam.waist_w0 * lattice.ka
    s = beam.sign
    bounds = np.concatenate([[0.0], np.arcsin(na_values)])
    phi = np.arange(n_azimuth) * (2.0 * np.pi / n_azimuth)
    sc_fwd = np.empty(len(na_values))
    sc_bwd = np.empty(len(na_values))
    for i in range(len(na_values)):
        lo, hi = bounds[i], bounds[i + 1]
        # arcsin stretches annuli near NA=1; keep the polar node density
        # comparable to the 128-node reference cap (~96 per radian).
        n_th = max(n_polar_per_annulus, int(np.ceil(96.0 * (hi - lo))))
        x, wq = leggauss(n_th)
        th = 0.5 * (hi - lo) * (x + 1.0) + lo
        wth = 0.5 * (hi - lo) * wq * np.sin(th)
        thetas = np.repeat(th, n_azimuth)
        weights = np.repeat(wth, n_azimuth) * (2.0 * np.pi / n_azimuth)
        st = np.sin(thetas)
        cp = np.cos(np.tile(phi, n_th))
        sp = np.sin(np.tile(phi, n_th))
        for sign, out in ((s, sc_fwd), (-s, sc_bwd)):
            dirs = np.stack([st * cp, st * sp, sign * np.cos(thetas)], axis=-1)
            out[i] = float(np.dot(dsigma_scattered(solution, dirs), weights))
    sc_fwd = np.cumsum(sc_fwd)
    sc_bwd = np.cumsum(sc_bwd)
    s_intf = np.empty(len(na_values))
    for i, na in enumerate(na_values):
        cone = cap_quadrature(min(np.arcsin(na), _CONE_WIDTHS / w0, np.pi / 2.0),
                              _CONE_POLAR, _CONE_AZIMUTH, s)
        vals = dsigma_interference(solution, beam, lattice.ka, cone.dirs, cone.thetas)
        s_intf[i] = float(np.dot(vals, cone.weights))
    refl = sc_bwd / s_in
    absorp = -(sc_fwd + s_intf) / s_in
    return refl, absorp


def _aperture_line_ft(q: np.ndarray, w0: float, half_side: float) -> np.ndarray:
    """1D Fourier transform of exp(-x^2/w0^2) truncated to |x| < half_side.

    Evaluated through erfcx to stay bounded: the naive
    exp(-v^2) * erf(u + iv) form overflows once q w0 is large.
    """
    u = half_side / w0
    v = 0.5 * np.asarray(q, dtype=float) * w0
    tail = np.exp(-(u**2)) * np.real(np.exp(-2j * u * v) * erfcx(u + 1j * v))
    return np.sqrt(np.pi) * w0 * (np.exp(-(v**2)) - tail)


def mirror_reference(beam: BeamSpec, detection: DetectionSpec, lattice: LatticeSpec,
                     aperture_side_a: float | None = None) -> Observables:
    """Physical-optics response of a perfect mirror of the array's size.

    The reflected far field is the Fraunhofer transform of the focal
    beam truncated to the square aperture; R is its backward-cap power
    over sigma_in. The absorptance uses the Babinet forward field
    E0 - E_aperture: A = [P_beam(NA) - P_forward(NA)] / sigma_in. This
    counts the shadow-forming lobe too, so A = 2 - R once the NA cone
    contains the beam divergence, and A saturates near 1 + (1 - R(1))
    rather than exactly 1 (extinction paradox; see docs/formats.md).
    """
    ka = lattice.ka
    w0 = beam.waist_w0 * ka
    side = (aperture_side_a if aperture_side_a is not None else lattice.nx) * ka
    s_in = float(w0**2 * (np.pi / 2.0) * erf(np.sqrt(2.0) * side / 2.0 / w0) ** 2)
    theta_na = np.arcsin(min(detection.numerical_aperture, 1.0))
    cap = cap_quadrature(theta_na, detection.n_polar, detection.n_azimuth, 1.0)
    # transverse wavevector components (k = 1): q = sin(theta) * (cos phi, sin phi)
    q1 = cap.dirs[:, 0]
    q2 = cap.dirs[:, 1]
    ft_ap = _aperture_line_ft(q1, w0, side / 2.0) * _aperture_line_ft(q2, w0, side / 2.0)
    ft_beam = np.pi * w0**2 * np.exp(-((q1**2 + q2**2) * w0**2 / 4.0))
    cos_t = np.cos(cap.thetas)
    norm = (1.0 / (2.0 * np.pi)) ** 2
    p_refl = float(np.dot(norm * cos_t * ft_ap**2, cap.weights))
    p_beam = float(np.dot(norm * cos_t * ft_beam**2, cap.weights))
    p_fwd = float(np.dot(norm * cos_t * (ft_beam - ft_ap) ** 2, cap.weights))
    refl = p_refl / s_in
    absorp = (p_beam - p_fwd) / s_in
    return Observables(reflectance=refl, transmittance=1.0 - absorp, absorptance=absorp,
                       sigma_in=s_in, na=detection.numerical_aperture)

"""Constants, spec validation, unit conversions."""

import numpy as np
import pytest

from coopscatter import (BeamSpec, DetectionSpec, LatticeSpec, TransitionSpec,
                         nondimensionalize)
from coopscatter.core import (E_SIGMA_MINUS, E_SIGMA_PLUS, GAMMA0_MHZ,
                              RECOIL_HZ)

# E_r/h for a 532 nm spacing lattice, frozen from a 30-digit evaluation
# with CODATA h and the AME mass of 87Rb.
RECOIL_HZ_REF = 2027.813569


def test_recoil_energy():
    assert RECOIL_HZ == pytest.approx(RECOIL_HZ_REF, rel=1e-9)


def test_polarization_basis():
    assert np.vdot(E_SIGMA_MINUS, E_SIGMA_MINUS).real == pytest.approx(1.0, abs=1e-15)
    assert np.vdot(E_SIGMA_PLUS, E_SIGMA_PLUS).real == pytest.approx(1.0, abs=1e-15)
    assert abs(np.vdot(E_SIGMA_PLUS, E_SIGMA_MINUS)) < 1e-15
    assert E_SIGMA_MINUS[2] == 0.0


def test_lattice_ka():
    assert LatticeSpec().ka == pytest.approx(2.0 * np.pi * 0.68, rel=1e-15)
    assert LatticeSpec(spacing_a=0.5).ka == pytest.approx(np.pi, rel=1e-15)


def test_defaults():
    lattice = LatticeSpec()
    assert (lattice.nx, lattice.ny) == (14, 14)
    assert lattice.depths_er == (300.0, 300.0, 300.0)
    assert DetectionSpec().numerical_aperture == 0.68
    assert BeamSpec().waist_w0 == 56.0
    assert TransitionSpec().gamma0_mhz == GAMMA0_MHZ


def test_beam_direction_sign():
    assert BeamSpec().sign == 1.0
    assert BeamSpec(direction="minus_z").sign == -1.0
    np.testing.assert_allclose(BeamSpec().pol, E_SIGMA_MINUS)


@pytest.mark.parametrize("bad", [
    lambda: TransitionSpec(gamma0_mhz=-1.0),
    lambda: TransitionSpec(lambda_nm=0.0),
    lambda: TransitionSpec(polarization_model="pi"),
    lambda: LatticeSpec(spacing_a=0.0),
    lambda: LatticeSpec(nx=0),
    lambda: LatticeSpec(depths_er=(300.0, -1.0, 300.0)),
    lambda: BeamSpec(waist_w0=0.0),
    lambda: BeamSpec(direction="sideways"),
    lambda: BeamSpec(polarization=(1.0, 1.0, 0.0)),
    lambda: DetectionSpec(numerical_aperture=1.2),
    lambda: DetectionSpec(numerical_aperture=0.0),
    lambda: DetectionSpec(n_polar=2),
])
def test_spec_validation(bad):
    with pytest.raises(ValueError):
        bad()


def test_unit_conversions():
    units = nondimensionalize(TransitionSpec(), LatticeSpec())
    # one Gamma0 of detuning is Gamma0/2pi in ordinary frequency
    assert units.freq_to_mhz(1.0) == pytest.approx(GAMMA0_MHZ, rel=1e-12)
    assert units.mhz_to_freq(units.freq_to_mhz(0.37)) == pytest.approx(0.37, rel=1e-12)
    # one wavelength is 2 pi scaled length units
    assert units.length_to_nm(2.0 * np.pi) == pytest.approx(780.0, rel=1e-12)
    assert units.nm_to_length(units.length_to_nm(5.1)) == pytest.approx(5.1, rel=1e-12)
    assert units.ka == pytest.approx(2.0 * np.pi * 0.68, rel=1e-15)

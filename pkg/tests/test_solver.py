"""Coupled-dipole assembly and steady-state solves."""

import numpy as np
import pytest

from coopscatter import (BeamSpec, LatticeSpec, NumericalError, TransitionSpec,
                         coupling_matrix, drive_field, polarizability,
                         project_drive, solve_sample, solve_steady_state)
from coopscatter.core import E_SIGMA_MINUS
from coopscatter.geometry import EnsembleSpec, draw_sample, sample_rng
from coopscatter.greens import dyadic_green, scalar_coupling
from coopscatter.solver import assemble

# Five-atom steady state frozen from an independent 30-digit LU solve
# of the same linear system (positions in k units).
ORACLE_POS = np.array([
    [0.00, 0.00, 0.00],
    [4.27, 0.30, -0.20],
    [0.50, 4.10, 0.10],
    [-3.90, 0.80, 0.40],
    [1.20, -4.50, -0.30],
])
ORACLE_DELTA = 0.30
ORACLE_LOCAL = np.array([0.00, -0.05, 0.02, 0.00, -0.10])
ORACLE_AMPLITUDES = np.array([
    -0.72341347805168417 + 1.2413070549009308j,
    -0.5113927483962736 + 0.77710607455366027j,
    -0.64163860759178192 + 0.80798625610888203j,
    -0.64524262136448271 + 0.57479660791253757j,
    -0.35443444902723605 + 0.63588921880078847j,
])


def _oracle_drive():
    # gaussian envelope w0 = 10 (k units) with plane-wave z phase
    rho2 = ORACLE_POS[:, 0] ** 2 + ORACLE_POS[:, 1] ** 2
    return np.exp(-rho2 / 100.0) * np.exp(1j * ORACLE_POS[:, 2])


def test_polarizability_values():
    assert complex(polarizability(0.0)) == pytest.approx(1j, abs=1e-15)
    assert complex(polarizability(0.5)) == pytest.approx(-0.5 + 0.5j, abs=1e-15)
    # a local detuning just moves the pole
    assert complex(polarizability(0.3, local_detuning=0.3)) == pytest.approx(1j, abs=1e-15)
    # resonant inverse: 1/alpha = -2 delta - i
    assert complex(1.0 / polarizability(0.7)) == pytest.approx(-1.4 - 1j, abs=1e-13)


def test_drive_field_focus_and_waist():
    beam = BeamSpec()
    lat = LatticeSpec()
    w0 = beam.waist_w0 * lat.ka
    at_focus = drive_field(beam, np.zeros((1, 3)), lat.ka)[0]
    np.testing.assert_allclose(at_focus, beam.pol, atol=1e-15)
    off = drive_field(beam, np.array([[w0, 0.0, 0.0]]), lat.ka)[0]
    assert abs(off @ beam.pol.conj()) == pytest.approx(np.exp(-1.0), rel=1e-12)


def test_drive_field_on_axis():
    """Amplitude w0/w(z), phase z - Gouy on the beam axis."""
    beam = BeamSpec()
    lat = LatticeSpec()
    w0 = beam.waist_w0 * lat.ka
    zr = 0.5 * w0**2
    for z in (0.31 * zr, 1.7 * zr, -0.8 * zr):
        got = drive_field(beam, np.array([[0.0, 0.0, z]]), lat.ka)[0] @ beam.pol.conj()
        wz = w0 * np.sqrt(1.0 + (z / zr) ** 2)
        expect = (w0 / wz) * np.exp(1j * (z - np.arctan(z / zr)))
        assert complex(got) == pytest.approx(expect, abs=1e-14)


def test_drive_field_direction_mirror():
    lat = LatticeSpec()
    pts = np.array([[3.0, -1.0, 5.0], [0.0, 2.0, -4.0]])
    fwd = drive_field(BeamSpec(direction="plus_z"), pts, lat.ka)
    mirrored = pts * np.array([1.0, 1.0, -1.0])
    bwd = drive_field(BeamSpec(direction="minus_z"), mirrored, lat.ka)
    np.testing.assert_allclose(fwd, bwd, atol=1e-15)


def test_coupling_matrix_scalar():
    pos = np.array([[0.0, 0.0, 0.0], [3.0, 0.0, 0.0], [0.0, 0.0, 4.0]])
    coup = coupling_matrix(pos)
    assert coup.green.shape == (3, 3)
    np.testing.assert_allclose(np.diag(coup.green), 0.0, atol=0)
    np.testing.assert_allclose(coup.green, coup.green.T, atol=0)
    assert coup.green[0, 1] == pytest.approx(complex(scalar_coupling(pos[0] - pos[1])), abs=1e-15)
    assert coup.green[0, 2] == pytest.approx(complex(scalar_coupling(pos[0] - pos[2])), abs=1e-15)


def test_coupling_matrix_isotropic_blocks():
    pos = np.array([[0.0, 0.0, 0.0], [1.3, -0.4, 2.2]])
    coup = coupling_matrix(pos, model="isotropic")
    assert coup.green.shape == (6, 6)
    block = coup.green[:3, 3:]
    np.testing.assert_allclose(block, dyadic_green(pos[0] - pos[1]), atol=1e-15)
    np.testing.assert_allclose(coup.green[:3, :3], 0.0, atol=0)
    np.testing.assert_allclose(coup.green, coup.green.T, atol=1e-15)


def test_coincident_positions_raise():
    pos = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    with pytest.raises(NumericalError):
        coupling_matrix(pos)


def test_assemble_diagonal():
    pos = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, 3.0]])
    coup = coupling_matrix(pos)
    dl = np.array([0.0, -0.05])
    m = assemble(coup, 0.4, dl)
    np.testing.assert_allclose(np.diag(m), -2.0 * (0.4 - dl) - 1j, atol=1e-15)
    assert m[0, 1] == pytest.approx(-coup.green[0, 1], abs=1e-15)


def test_single_atom_solution():
    pos = np.zeros((1, 3))
    coup = coupling_matrix(pos)
    for delta in (-0.7, 0.0, 1.3):
        sol = solve_steady_state(coup, np.array([1.0 + 0.0j]), delta, pos)
        assert sol.amplitudes[0] == pytest.approx(complex(polarizability(delta)), abs=1e-14)


def test_symmetric_pair_closed_form():
    # equal drive on both: d = E / (1/alpha - g)
    pos = np.array([[0.0, 0.0, 0.0], [4.0, 0.0, 0.0]])
    coup = coupling_matrix(pos)
    g = coup.green[0, 1]
    delta = 0.2
    sol = solve_steady_state(coup, np.ones(2, dtype=complex), delta, pos)
    expect = 1.0 / (1.0 / polarizability(delta) - g)
    np.testing.assert_allclose(sol.amplitudes, expect, atol=1e-14)


def test_five_atom_frozen_oracle():
    coup = coupling_matrix(ORACLE_POS)
    sol = solve_steady_state(coup, _oracle_drive(), ORACLE_DELTA, ORACLE_POS,
                             local_detunings=ORACLE_LOCAL)
    np.testing.assert_allclose(sol.amplitudes, ORACLE_AMPLITUDES, atol=1e-12)


def test_linearity():
    coup = coupling_matrix(ORACLE_POS)
    drive = _oracle_drive()
    one = solve_steady_state(coup, drive, 0.1, ORACLE_POS)
    two = solve_steady_state(coup, 2.0 * drive, 0.1, ORACLE_POS)
    np.testing.assert_allclose(two.amplitudes, 2.0 * one.amplitudes, rtol=1e-12)


def test_nan_drive_raises():
    coup = coupling_matrix(ORACLE_POS)
    drive = _oracle_drive()
    drive[2] = np.nan
    with pytest.raises(NumericalError):
        solve_steady_state(coup, drive, 0.0, ORACLE_POS)


def test_drive_length_mismatch():
    coup = coupling_matrix(ORACLE_POS)
    with pytest.raises(ValueError):
        solve_steady_state(coup, np.ones(3, dtype=complex), 0.0, ORACLE_POS)


def test_project_drive():
    field = np.array([E_SIGMA_MINUS, 2.0 * E_SIGMA_MINUS])
    np.testing.assert_allclose(project_drive(field, "sigma_minus"),
                               [1.0, 2.0], atol=1e-15)
    assert project_drive(field, "isotropic").shape == (6,)


def test_dipole_vectors():
    pos = np.zeros((1, 3))
    sol = solve_steady_state(coupling_matrix(pos), np.array([1.0 + 0j]), 0.0, pos)
    np.testing.assert_allclose(sol.dipole_vectors, 1j * E_SIGMA_MINUS[None, :],
                               atol=1e-14)


def test_isotropic_single_atom():
    pos = np.zeros((1, 3))
    coup = coupling_matrix(pos, model="isotropic")
    drive = E_SIGMA_MINUS.copy()
    sol = solve_steady_state(coup, project_drive(drive[None, :], "isotropic"), 0.0, pos)
    assert sol.amplitudes.shape == (1, 3)
    np.testing.assert_allclose(sol.dipole_vectors[0], 1j * E_SIGMA_MINUS, atol=1e-14)


def test_solve_sample_pipeline():
    """The convenience wrapper reproduces the manual chain."""
    lat = LatticeSpec(nx=4, ny=4)
    beam = BeamSpec()
    tr = TransitionSpec()
    ens = EnsembleSpec(kind="vertical_disorder", delta_z=2.0)
    sample = draw_sample(ens, lat, sample_rng(9, 0), seed_record=(9, 0))
    sol = solve_sample(sample, lat, tr, beam, 0.3)
    pos_k = sample.positions * lat.ka
    coup = coupling_matrix(pos_k)
    rhs = project_drive(drive_field(beam, pos_k, lat.ka), "sigma_minus")
    manual = solve_steady_state(coup, rhs, 0.3, pos_k, sample.local_detunings)
    np.testing.assert_allclose(sol.amplitudes, manual.amplitudes, atol=1e-15)
    np.testing.assert_allclose(sol.positions_k, manual.positions_k, atol=1e-15)

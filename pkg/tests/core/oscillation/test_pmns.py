import math
import numpy as np
from pytest import raises, approx
from nucorrelate.core.exc import ParameterError
from nucorrelate.core.oscillation.flavors import Flavor
from nucorrelate.core.oscillation.pmns import (
    MixingAngles,
    PmnsMatrix,
    build_pmns,
    rotation_factors,
    unitarity_deviation,
)


def test_vanishing_angles_give_identity():
    u = build_pmns(MixingAngles(0.0, 0.0, 0.0), 0.0)
    assert np.array_equal(u.u, np.eye(3))
    assert unitarity_deviation(u) == 0.0


def test_single_angle_is_a_rotation_block():
    theta = 0.6
    u = build_pmns(MixingAngles(theta, 0.0, 0.0)).u
    assert u[0, 0] == approx(math.cos(theta))
    assert u[0, 1] == approx(math.sin(theta))
    assert u[1, 0] == approx(-math.sin(theta))
    assert u[1, 1] == approx(math.cos(theta))
    assert np.array_equal(u[2], [0, 0, 1])
    assert np.array_equal(u[:, 2], [0, 0, 1])


def test_measured_angles_electron_row(pmns):
    row = pmns.moduli_squared()[Flavor.E]
    assert row[0] == approx(0.686 * 0.992, abs=1e-12)
    assert row[1] == approx(0.314 * 0.992, abs=1e-12)
    assert row[2] == approx(0.008, abs=1e-12)
    assert row[0] == approx(0.6805, abs=5e-5)
    assert row[1] == approx(0.3115, abs=5e-5)


def test_measured_angles_are_unitary(pmns):
    assert unitarity_deviation(pmns) < 1e-12
    assert abs(abs(np.linalg.det(pmns.u)) - 1.0) < 1e-12
    moduli = pmns.moduli_squared()
    assert np.max(np.abs(moduli.sum(axis=0) - 1.0)) < 1e-12
    assert np.max(np.abs(moduli.sum(axis=1) - 1.0)) < 1e-12


def test_vanishing_phase_is_real(pmns):
    assert np.max(np.abs(pmns.u.imag)) < 1e-15


def test_random_inputs_stay_unitary(rng):
    for _ in range(200):
        angles = MixingAngles(*rng.uniform(0.0, math.pi / 2, size=3))
        u = build_pmns(angles, rng.uniform(-20.0, 20.0))
        assert unitarity_deviation(u) < 1e-12


def test_phase_is_reduced_modulo_two_pi():
    angles = MixingAngles.from_sin_squared(0.314, 0.008, 0.45)
    u = build_pmns(angles, 0.7).u
    assert np.max(np.abs(build_pmns(angles, 0.7 + 4 * math.pi).u - u)) < 1e-12


def test_matches_rotation_factors(rng):
    for _ in range(20):
        angles = MixingAngles(*rng.uniform(0.0, math.pi / 2, size=3))
        delta = rng.uniform(0.0, 2 * math.pi)
        r23, d, r13, d_conj, r12 = rotation_factors(angles, delta)
        product = r23 @ d @ r13 @ d_conj @ r12
        assert np.max(np.abs(product - build_pmns(angles, delta).u)) < 1e-12


def test_from_sin_squared_round_trip():
    angles = MixingAngles.from_sin_squared(0.314, 0.008, 0.45)
    assert angles.sin_squared() == approx((0.314, 0.008, 0.45), abs=1e-15)


def test_rejects_bad_angles():
    with raises(ParameterError):
        MixingAngles(-0.1, 0.0, 0.0)
    with raises(ParameterError):
        MixingAngles(0.0, 2.0, 0.0)
    with raises(ParameterError):
        MixingAngles(math.nan, 0.0, 0.0)
    with raises(ParameterError):
        MixingAngles.from_sin_squared(1.2, 0.0, 0.0)
    with raises(ParameterError):
        build_pmns(MixingAngles(0.1, 0.1, 0.1), math.inf)


def test_unitarity_deviation_of_perturbed_matrix():
    assert unitarity_deviation(np.eye(3)) == 0.0
    perturbed = np.eye(3, dtype=np.complex128)
    perturbed[0, 1] = 1e-3
    assert unitarity_deviation(perturbed) >= 1e-3 * (1 - 1e-12)


def test_matrix_is_read_only(pmns):
    with raises(ValueError):
        pmns.u[0, 0] = 0.0
    with raises(ParameterError):
        PmnsMatrix(np.eye(2))

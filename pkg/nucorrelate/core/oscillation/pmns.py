"""
PMNS Mixing Module
==================

Builds the 3x3 unitary matrix relating flavor states (rows e, mu, tau) to mass
states (columns 1, 2, 3) from three mixing angles and the Dirac CP phase.

Classes
-------
MixingAngles
    The angles theta12, theta13, theta23 in radians (first quadrant).
PmnsMatrix
    Immutable wrapper around the complex mixing matrix.

Functions
---------
build_pmns(angles, delta_cp)
    Evaluate the standard parameterization entry by entry.
rotation_factors(angles, delta_cp)
    The factors R23, D, R13, D*, R12 of the same matrix.
unitarity_deviation(u)
    Largest element of |U U^dagger - I|.
"""

import math
from dataclasses import dataclass
import numpy as np
from cement.utils.misc import minimal_logger
from ..exc import ParameterError

LOG = minimal_logger(__name__)

UNITARITY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class MixingAngles:
    theta12: float
    theta13: float
    theta23: float

    def __post_init__(self):
        for name in ('theta12', 'theta13', 'theta23'):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ParameterError(f'{name} must be finite, got {value!r}')
            if value < 0.0 or value > math.pi / 2:
                raise ParameterError(f'{name} must lie in [0, pi/2], got {value!r}')

    @classmethod
    def from_sin_squared(cls, sin2_theta12, sin2_theta13, sin2_theta23):
        """Angles from their sin^2 values, first quadrant branch."""
        angles = []
        for name, value in (('sin2_theta12', sin2_theta12), ('sin2_theta13', sin2_theta13), ('sin2_theta23', sin2_theta23)):
            value = float(value)
            if not math.isfinite(value) or value < 0.0 or value > 1.0:
                raise ParameterError(f'{name} must lie in [0, 1], got {value!r}')
            angles.append(math.asin(math.sqrt(value)))
        return cls(*angles)

    def sin_squared(self):
        return tuple(math.sin(t) ** 2 for t in (self.theta12, self.theta13, self.theta23))


@dataclass(frozen=True, eq=False)
class PmnsMatrix:
    u: np.ndarray

    def __post_init__(self):
        u = np.array(self.u, dtype=np.complex128)
        if u.shape != (3, 3):
            raise ParameterError(f'mixing matrix must be 3x3, got shape {u.shape}')
        u.setflags(write=False)
        object.__setattr__(self, 'u', u)

    def __getitem__(self, index):
        return self.u[index]

    def row(self, flavor):
        return self.u[int(flavor)]

    def moduli_squared(self):
        return np.abs(self.u) ** 2


def _check_finite(angles, delta_cp):
    values = (angles.theta12, angles.theta13, angles.theta23, delta_cp)
    if not all(math.isfinite(v) for v in values):
        raise ParameterError(f'mixing inputs must be finite, got {values!r}')


def build_pmns(angles, delta_cp=0.0):
    """
    Evaluate the mixing matrix in the standard parameterization.

    Parameters
    ----------
    angles : MixingAngles
        The three mixing angles.
    delta_cp : float
        Dirac CP phase in radians, reduced modulo 2 pi.

    Returns
    -------
    PmnsMatrix
        Unitary to within ``UNITARITY_TOLERANCE``.
    """
    delta_cp = float(delta_cp)
    _check_finite(angles, delta_cp)
    delta_cp = math.fmod(delta_cp, 2 * math.pi)

    c12, s12 = math.cos(angles.theta12), math.sin(angles.theta12)
    c13, s13 = math.cos(angles.theta13), math.sin(angles.theta13)
    c23, s23 = math.cos(angles.theta23), math.sin(angles.theta23)
    # exact 1 + 0j for a vanishing phase keeps the real case real
    phase = complex(math.cos(delta_cp), math.sin(delta_cp))

    u = np.array(
        [
            [c12 * c13, s12 * c13, s13 * phase.conjugate()],
            [-s12 * c23 - c12 * s13 * s23 * phase, c12 * c23 - s12 * s13 * s23 * phase, s23 * c13],
            [s12 * s23 - c12 * s13 * c23 * phase, -c12 * s23 - c23 * s12 * s13 * phase, c13 * c23],
        ],
        dtype=np.complex128,
    )
    pmns = PmnsMatrix(u)
    LOG.debug(f'built mixing matrix with unitarity deviation {unitarity_deviation(pmns):.3e}')
    return pmns


def rotation_factors(angles, delta_cp=0.0):
    """
    The factors of U = R23 . D . R13 . D* . R12 with D = diag(1, 1, exp(i delta)).
    """
    _check_finite(angles, float(delta_cp))

    def rotation(i, j, theta):
        r = np.eye(3, dtype=np.complex128)
        c, s = math.cos(theta), math.sin(theta)
        r[i, i] = r[j, j] = c
        r[i, j] = s
        r[j, i] = -s
        return r

    d = np.diag([1.0, 1.0, np.exp(1j * float(delta_cp))])
    return (
        rotation(1, 2, angles.theta23),
        d,
        rotation(0, 2, angles.theta13),
        d.conj(),
        rotation(0, 1, angles.theta12),
    )


def unitarity_deviation(u):
    """Return max |(U U^dagger - I)_ij|; zero for an exactly unitary matrix."""
    m = u.u if isinstance(u, PmnsMatrix) else np.asarray(u, dtype=np.complex128)
    return float(np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0]))))

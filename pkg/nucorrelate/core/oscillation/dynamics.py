"""
Oscillation Dynamics Module
===========================

Flavor transition amplitudes and probabilities in the plane-wave picture and in
the Gaussian wave-packet picture, where the time-integrated probability picks
up a coherence damping and a localization factor per mass-state pair.

All arithmetic is done in natural units: energies in eV, lengths and times in
eV^-1 (see :mod:`nucorrelate.core.oscillation.units`). Mass-state indices in
the public API are 1-based, as in the physics notation.

Sign convention: splittings are differences of squared masses,
``dm2[a][b] = m_a^2 - m_b^2`` with ``m_1^2 = 0``, ``m_2^2 = dm^2`` and
``m_3^2 = Dm^2 + dm^2 / 2``. This reproduces the quoted atmospheric splittings
``Dm^2_31`` and ``Dm^2_32`` and makes ``|Dm^2_12| = dm^2``. With a vanishing CP
phase every probability is insensitive to the overall sign; for a non-zero
phase this convention is the one used.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple
import numpy as np
from scipy.integrate import quad
from cement.utils.misc import minimal_logger
from ..exc import (
    ParameterError,
    DegeneratePairError,
    MissingWidthError,
    InvariantError,
    QuadratureError,
)
from . import units
from .flavors import Flavor, FLAVORS
from .pmns import MixingAngles, build_pmns

LOG = minimal_logger(__name__)

DEFAULT_ZETA = 0.2

# measured values used throughout unless overridden
EXPERIMENT_DEFAULTS = dict(
    sin2_theta12=0.314,
    sin2_theta13=0.8e-2,
    sin2_theta23=0.45,
    delta_cp_deg=0.0,
    small_splitting_ev2=7.92e-5,
    large_splitting_ev2=2.6e-3,
    energy_gev=10.0,
    zeta=DEFAULT_ZETA,
)

NORMALIZATION_TOLERANCE = 1e-12
HERMITICITY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class OscillationParams:
    angles: MixingAngles
    delta_cp: float = 0.0
    small_splitting: float = EXPERIMENT_DEFAULTS['small_splitting_ev2']
    large_splitting: float = EXPERIMENT_DEFAULTS['large_splitting_ev2']
    energy: float = EXPERIMENT_DEFAULTS['energy_gev'] * units.GeV
    zeta: float = DEFAULT_ZETA

    def __post_init__(self):
        if not (math.isfinite(self.energy) and self.energy > 0):
            raise ParameterError(f'energy must be positive and finite, got {self.energy!r}')
        for name in ('small_splitting', 'large_splitting', 'delta_cp'):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(f'{name} must be finite, got {getattr(self, name)!r}')
        if not (0.0 <= self.zeta < 1.0):
            raise ParameterError(f'zeta must lie in [0, 1), got {self.zeta!r}')

    @classmethod
    def from_experiment(cls, **kw):
        """
        Build parameters from the experimental presentation: sin^2 of the
        angles, CP phase in degrees, splittings in eV^2 and energy in GeV.
        Missing keywords fall back to ``EXPERIMENT_DEFAULTS``.
        """
        unknown = set(kw) - set(EXPERIMENT_DEFAULTS)
        if unknown:
            raise ParameterError(f'unknown parameters: {", ".join(sorted(unknown))}')
        values = dict(EXPERIMENT_DEFAULTS, **kw)
        return cls(
            angles=MixingAngles.from_sin_squared(
                values['sin2_theta12'],
                values['sin2_theta13'],
                values['sin2_theta23'],
            ),
            delta_cp=math.radians(float(values['delta_cp_deg'])),
            small_splitting=float(values['small_splitting_ev2']),
            large_splitting=float(values['large_splitting_ev2']),
            energy=float(values['energy_gev']) * units.GeV,
            zeta=float(values['zeta']),
        )

    def pmns(self):
        return build_pmns(self.angles, self.delta_cp)


@dataclass(frozen=True, eq=False)
class MassSplittings:
    dm2: np.ndarray

    def __post_init__(self):
        dm2 = np.array(self.dm2, dtype=np.float64)
        if dm2.shape != (3, 3):
            raise ParameterError(f'splittings must be 3x3, got shape {dm2.shape}')
        scale = max(1.0, float(np.max(np.abs(dm2))))
        if np.any(np.abs(np.diag(dm2)) > 0) or np.max(np.abs(dm2 + dm2.T)) > 1e-15 * scale:
            raise ParameterError('splittings must be antisymmetric with a zero diagonal')
        if abs(dm2[0, 1] + dm2[1, 2] - dm2[0, 2]) > 1e-15 * scale:
            raise ParameterError('splittings are not consistent between the three pairs')
        dm2.setflags(write=False)
        object.__setattr__(self, 'dm2', dm2)

    @classmethod
    def from_squared_masses(cls, m2):
        m2 = np.asarray(m2, dtype=np.float64)
        return cls(m2[:, None] - m2[None, :])

    def between(self, a, b):
        """Dm^2_ab = m_a^2 - m_b^2 for 1-based mass indices."""
        return float(self.dm2[a - 1, b - 1])


class FlavorAmplitudes(NamedTuple):
    a_e: complex
    a_mu: complex
    a_tau: complex

    def as_array(self):
        return np.array(self, dtype=np.complex128)

    def norm(self):
        return float(np.linalg.norm(self.as_array()))

    def probabilities(self):
        return ProbabilityRow(*(float(x) for x in np.abs(self.as_array()) ** 2))


class ProbabilityRow(NamedTuple):
    p_e: float
    p_mu: float
    p_tau: float

    def as_array(self):
        return np.array(self, dtype=np.float64)

    def total(self):
        return math.fsum(self)


@dataclass(frozen=True)
class WavePacketConfig:
    """
    Effective wave-packet width, optionally split into production and
    detection widths with ``sigma_x^2 = sigma_xp^2 + sigma_xd^2``. Lengths in eV^-1.
    """

    sigma_x: float
    sigma_xp: float = None
    sigma_xd: float = None

    def __post_init__(self):
        if not (math.isfinite(self.sigma_x) and self.sigma_x > 0):
            raise ParameterError(f'sigma_x must be positive, got {self.sigma_x!r}')
        if (self.sigma_xp is None) != (self.sigma_xd is None):
            raise ParameterError('sigma_xp and sigma_xd must be given together')
        if self.has_split:
            if self.sigma_xp <= 0 or self.sigma_xd <= 0:
                raise ParameterError('sigma_xp and sigma_xd must be positive')
            residual = self.sigma_x**2 - self.sigma_xp**2 - self.sigma_xd**2
            if abs(residual) > 1e-12 * self.sigma_x**2:
                raise ParameterError('sigma_x^2 must equal sigma_xp^2 + sigma_xd^2')

    @property
    def has_split(self):
        return self.sigma_xp is not None

    @classmethod
    def from_widths(cls, sigma_xp, sigma_xd):
        return cls(math.hypot(sigma_xp, sigma_xd), sigma_xp, sigma_xd)

    @classmethod
    def symmetric(cls, sigma_x):
        half = sigma_x / math.sqrt(2.0)
        return cls(sigma_x, half, half)

    @classmethod
    def from_length(cls, value, unit='m'):
        return cls(units.to_natural_length(value, unit))


def _check_kinematics(energy, baseline):
    if not (math.isfinite(energy) and energy > 0):
        raise ParameterError(f'energy must be positive and finite, got {energy!r}')
    if not (math.isfinite(baseline) and baseline >= 0):
        raise ParameterError(f'baseline must be non-negative and finite, got {baseline!r}')


def _convert(length, unit):
    return length if unit is None else units.from_natural_length(length, unit)


def squared_masses(params):
    """m_a^2 relative to m_1^2 = 0, in eV^2."""
    # Dm^2 is measured from the midpoint of m_1^2 and m_2^2
    return np.array([0.0, params.small_splitting, params.large_splitting + params.small_splitting / 2.0])


def mass_splittings(params):
    """Antisymmetric table of Dm^2_ab for the parameterized splittings."""
    return MassSplittings.from_squared_masses(squared_masses(params))


def plane_wave_amplitudes(u, splittings, energy, baseline, alpha):
    """
    Evolved amplitudes (A_ae, A_amu, A_atau) after a baseline ``baseline``
    (eV^-1) at energy ``energy`` (eV), phases relative to mass state 1.
    """
    _check_kinematics(energy, baseline)
    alpha = Flavor.parse(alpha)
    phases = splittings.dm2[:, 0] * baseline / (2.0 * energy)
    amplitudes = u.u @ (np.exp(-1j * phases) * u.u[int(alpha)].conj())
    return FlavorAmplitudes(*(complex(a) for a in amplitudes))


def plane_wave_probabilities(u, splittings, energy, baseline, alpha):
    return plane_wave_amplitudes(u, splittings, energy, baseline, alpha).probabilities()


def oscillation_length(energy, dm2_ab, unit=None):
    """L_osc = 4 pi E / |Dm^2_ab|, in eV^-1 or in ``unit``."""
    if dm2_ab == 0:
        raise DegeneratePairError('oscillation length is infinite for a degenerate pair')
    return _convert(4.0 * math.pi * energy / abs(dm2_ab), unit)


def coherence_length(config, energy, dm2_ab, unit=None):
    """L_coh = 4 sqrt(2) sigma_x E^2 / |Dm^2_ab|, in eV^-1 or in ``unit``."""
    if dm2_ab == 0:
        raise DegeneratePairError('coherence length is infinite for a degenerate pair')
    return _convert(4.0 * math.sqrt(2.0) * config.sigma_x * energy**2 / abs(dm2_ab), unit)


def localization_factor(config, energy, dm2_ab, zeta=DEFAULT_ZETA):
    """F_ab = exp[-2 pi^2 (1 - zeta)^2 (sigma_x / L_osc)^2]; exactly 1 for a = b."""
    if dm2_ab == 0:
        return 1.0
    ratio = config.sigma_x / oscillation_length(energy, dm2_ab)
    return math.exp(-2.0 * math.pi**2 * (1.0 - zeta) ** 2 * ratio**2)


def _pair_kernel(splittings, params, config, baseline, damped):
    """
    K_ab = exp[-2 pi i L / L_ab^osc - (L / L_ab^coh)^2] F_ab written without
    the lengths, so the a = b entries are exactly 1.
    """
    dm2 = splittings.dm2
    energy = params.energy
    kernel = -1j * dm2 * baseline / (2.0 * energy)
    if damped:
        coherence = baseline * np.abs(dm2) / (4.0 * math.sqrt(2.0) * config.sigma_x * energy**2)
        localization = 2.0 * math.pi**2 * (1.0 - params.zeta) ** 2 * (config.sigma_x * np.abs(dm2) / (4.0 * math.pi * energy)) ** 2
        kernel = kernel - coherence**2 - localization
    return np.exp(kernel)


def _wave_packet_row(u, params, config, baseline, alpha, damped):
    _check_kinematics(params.energy, baseline)
    alpha = Flavor.parse(alpha)
    kernel = _pair_kernel(mass_splittings(params), params, config, baseline, damped)
    # x[beta, a] = U*_alpha,a U_beta,a
    x = u.u[int(alpha)].conj()[None, :] * u.u
    row = np.einsum('ia,ab,ib->i', x, kernel, x.conj())
    residue = float(np.max(np.abs(row.imag)))
    if residue > HERMITICITY_TOLERANCE:
        raise InvariantError(f'probability has imaginary residue {residue:.3e}')
    return row.real


def wave_packet_probability(u, params, config, baseline, alpha, beta, damped=True):
    """
    Time-integrated transition probability P_alpha,beta(L).

    ``damped=False`` forces the coherence damping and the localization factor
    to 1, which is the plane-wave limit of the same double sum.
    """
    row = _wave_packet_row(u, params, config, baseline, alpha, damped)
    return float(row[int(Flavor.parse(beta))])


def wave_packet_probabilities(u, params, config, baseline, alpha, damped=True):
    return ProbabilityRow(*(float(p) for p in _wave_packet_row(u, params, config, baseline, alpha, damped)))


def asymptotic_probabilities(u, alpha):
    """Fully decohered limit P_alpha,beta = sum_a |U_alpha,a|^2 |U_beta,a|^2."""
    moduli = u.moduli_squared()
    return ProbabilityRow(*(float(p) for p in moduli @ moduli[int(Flavor.parse(alpha))]))


def _amplitudes_at_delay(u, params, config, baseline, delay, alpha):
    # phases relative to the massless reference, i.e. exp(-i E (T - L)) removed
    energy = params.energy
    m2 = squared_masses(params)
    sigma = config.sigma_x
    prefactor = math.sqrt(2.0 * config.sigma_xd * config.sigma_xp / sigma**2)
    eps = m2 / (2.0 * energy**2)
    phase = -m2 / (2.0 * energy) * (baseline + params.zeta * delay)
    # L - v_a T with T = L + delay and v_a = 1 - m_a^2 / 2E^2
    offset = -delay + eps * (baseline + delay)
    weights = np.exp(1j * phase - offset**2 / (4.0 * sigma**2))
    return prefactor * (u.u @ (weights * u.u[int(alpha)].conj()))


def wave_packet_amplitude_at_delay(u, params, config, baseline, delay, alpha, beta):
    """Same as :func:`wave_packet_amplitude` with the time given as ``T - L``."""
    if not config.has_split:
        raise MissingWidthError('the wave-packet amplitude needs sigma_xp and sigma_xd')
    _check_kinematics(params.energy, baseline)
    amplitudes = _amplitudes_at_delay(u, params, config, baseline, delay, Flavor.parse(alpha))
    return complex(amplitudes[int(Flavor.parse(beta))])


def wave_packet_amplitude(u, params, config, baseline, time, alpha, beta):
    """
    Gaussian wave-packet amplitude A_alpha,beta(L, T) with the ultrarelativistic
    kinematics P_a = E - (1 - zeta) m_a^2 / 2E, E_a = E + zeta m_a^2 / 2E and
    v_a = 1 - m_a^2 / 2E^2. Baseline and time in eV^-1.
    """
    return wave_packet_amplitude_at_delay(u, params, config, baseline, time - baseline, alpha, beta)


def time_integrated_probabilities(u, params, config, baseline, alpha, epsrel=1e-10, tolerance=1e-3):
    """
    Integrate |A_alpha,beta(L, T)|^2 over T for every beta and return the
    triple normalized to unit sum.

    The amplitude prefactor drops out of the normalized triple. A
    configuration without production/detection split uses the symmetric one.

    Raises
    ------
    QuadratureError
        If the adaptive quadrature reports a problem or its error estimate
        exceeds ``tolerance`` of the integrated total.
    """
    _check_kinematics(params.energy, baseline)
    alpha = Flavor.parse(alpha)
    if not config.has_split:
        LOG.debug('no production/detection split configured, using the symmetric split')
        config = WavePacketConfig.symmetric(config.sigma_x)
    sigma = config.sigma_x

    eps = squared_masses(params) / (2.0 * params.energy**2)
    # envelope centers of the mass states in units of sigma_x
    centers = eps * baseline / (1.0 - eps) / sigma

    def density(s, beta):
        amplitudes = _amplitudes_at_delay(u, params, config, baseline, s * sigma, alpha)
        return float(np.abs(amplitudes[beta]) ** 2)

    def total(s):
        return float(np.sum(np.abs(_amplitudes_at_delay(u, params, config, baseline, s * sigma, alpha)) ** 2))

    peak = max(total(c) for c in centers)
    lower, upper = float(np.min(centers)) - 10.0, float(np.max(centers)) + 10.0
    while total(lower) > 1e-16 * peak:
        lower -= 10.0
    while total(upper) > 1e-16 * peak:
        upper += 10.0
    points = sorted({float(c) for c in centers if lower < c < upper})

    integrals = np.zeros(3)
    errors = np.zeros(3)
    for beta in FLAVORS:
        result = quad(
            density,
            lower,
            upper,
            args=(int(beta),),
            points=points or None,
            epsabs=1e-14,
            epsrel=epsrel,
            limit=200,
            full_output=1,
        )
        integrals[beta], errors[beta] = result[0], result[1]
        if len(result) > 3:
            raise QuadratureError(f'quadrature for {alpha.label}->{beta.label} did not converge: {result[3]}', abserr=result[1])

    norm = float(np.sum(integrals))
    if float(np.sum(errors)) > tolerance * norm:
        raise QuadratureError(f'quadrature error estimate {np.sum(errors):.3e} exceeds tolerance', abserr=float(np.sum(errors)))
    return ProbabilityRow(*(float(p) for p in integrals / norm))


def time_integration_check(u, params, config, baseline, alpha, epsrel=1e-10, tolerance=1e-3):
    """
    Largest deviation of :func:`time_integrated_probabilities` from the
    equally normalized closed-form wave-packet probabilities.

    Integrating the amplitude over time suppresses the oscillating terms by
    exp[-2 pi^2 zeta^2 (sigma_x / L_osc)^2], while the closed form applies
    (1 - zeta)^2. Both are 1 for sigma_x << L_osc; at sigma_x of a few
    tenths of L_osc the deviation reaches about 1e-2.
    """
    integrated = np.array(time_integrated_probabilities(u, params, config, baseline, alpha, epsrel, tolerance))
    expected = np.array(wave_packet_probabilities(u, params, config, baseline, alpha))
    deviation = float(np.max(np.abs(integrated - expected / np.sum(expected))))
    LOG.debug(f'time integration at L={baseline:.6e} eV^-1 deviates by {deviation:.3e}')
    return deviation

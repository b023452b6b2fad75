"""
Invariant Suite
===============

Numerical properties every release has to satisfy: the coherence and
concurrence identity, the Wootters pipeline against its closed form, row-sum
conservation, the plane-wave limit, the time integration of the wave-packet
amplitude, the decohered plateau, the ordering of the coherence envelopes in
the width and the bound on the l1-norm.

Each property yields a :class:`CheckResult` with the worst residual seen and
the tolerance it was held to.
"""

import math
from dataclasses import dataclass, replace
from typing import NamedTuple
import numpy as np
from cement.utils.misc import minimal_logger
from .exc import NuCorrelateError
from .oscillation import units
from .oscillation.flavors import Flavor
from .oscillation.pmns import MixingAngles, build_pmns, unitarity_deviation, UNITARITY_TOLERANCE
from .oscillation.dynamics import (
    OscillationParams,
    WavePacketConfig,
    mass_splittings,
    coherence_length,
    oscillation_length,
    plane_wave_probabilities,
    wave_packet_probabilities,
    asymptotic_probabilities,
    time_integration_check,
)
from .oscillation.correlations import (
    correlation_report,
    coherence_from_probabilities,
    asymptotic_coherence,
    density_from_amplitudes,
    l1_norm,
    three_mode_state,
    partial_trace,
    wootters_concurrence,
    flavor_concurrence,
)
from .sweep.config import BaselineGrid, fig1_config
from .sweep.runner import run_sweep, coherence_envelope, records_by_sigma

LOG = minimal_logger(__name__)

# the decohered plateau of the narrowest width lies above the partially
# damped envelope of the next one, so comparisons stop at exp(-1.5^2) ~ 0.1
ENVELOPE_REACH = 1.5


@dataclass(frozen=True)
class CheckSettings:
    seed: int = 20240101
    random_states: int = 10000
    wootters_states: int = 1000
    grid_points: int = 1000
    plane_wave_points: int = 100
    quadrature_baselines: int = 20
    quadrature_tolerance: float = 1e-3
    workers: int = 1


class CheckResult(NamedTuple):
    name: str
    worst: float
    tolerance: float
    passed: bool


def _result(name, worst, tolerance):
    worst = float(worst)
    result = CheckResult(name, worst, tolerance, bool(worst < tolerance))
    LOG.debug(f'{name}: worst {worst:.3e} against {tolerance:.1e}')
    return result


def random_amplitudes(rng, count):
    """``count`` normalized complex amplitude triples, uniform on the sphere."""
    a = rng.normal(size=(count, 3)) + 1j * rng.normal(size=(count, 3))
    return a / np.linalg.norm(a, axis=1)[:, None]


### --------------------------------------------------------------------------------------


def check_identity(states, fig1_records):
    worst = 0.0
    for a in states:
        worst = max(worst, correlation_report(np.abs(a) ** 2).identity_residual)
    for record in fig1_records:
        worst = max(worst, record.identity_residual)
    return _result('coherence-concurrence identity', worst, 1e-12)


def check_unitarity(rng, count=100):
    worst = unitarity_deviation(OscillationParams.from_experiment().pmns())
    for _ in range(count):
        angles = MixingAngles(*rng.uniform(0.0, math.pi / 2, size=3))
        worst = max(worst, unitarity_deviation(build_pmns(angles, rng.uniform(0.0, 2 * math.pi))))
    return _result('mixing matrix unitarity', worst, UNITARITY_TOLERANCE)


def check_wootters(states):
    worst = 0.0
    pairs = {Flavor.TAU: (Flavor.E, Flavor.MU), Flavor.MU: (Flavor.E, Flavor.TAU), Flavor.E: (Flavor.MU, Flavor.TAU)}
    for a in states:
        psi = three_mode_state(a)
        p = np.abs(a) ** 2
        for traced, (beta, gamma) in pairs.items():
            expected = flavor_concurrence(p[beta], p[gamma])
            worst = max(worst, abs(wootters_concurrence(partial_trace(psi, traced)) - expected))
    return _result('Wootters concurrence', worst, 1e-10)


def check_pure_state_coherence(states):
    worst = 0.0
    for a in states:
        worst = max(worst, abs(l1_norm(density_from_amplitudes(a)) - coherence_from_probabilities(np.abs(a) ** 2)))
    return _result('pure-state l1-norm', worst, 1e-12)


def check_row_sums(params, grid_points):
    u = params.pmns()
    splittings = mass_splittings(params)
    sigma_count = max(1, int(round(math.sqrt(grid_points / 10.0))))
    baseline_count = max(2, grid_points // sigma_count)
    worst = 0.0
    for sigma_m in np.geomspace(2e-17, 1e-15, sigma_count):
        config = WavePacketConfig.from_length(sigma_m, 'm')
        far = 10.0 * coherence_length(config, params.energy, splittings.between(3, 1))
        for baseline in np.linspace(0.0, far, baseline_count):
            row = wave_packet_probabilities(u, params, config, baseline, Flavor.E)
            worst = max(worst, abs(row.total() - 1.0))
    return _result('probability conservation', worst, 1e-12)


def check_plane_wave_limit(params, points):
    u = params.pmns()
    splittings = mass_splittings(params)
    config = WavePacketConfig.from_length(1e-16, 'm')
    far = 10.0 * oscillation_length(params.energy, splittings.between(3, 1))
    worst = 0.0
    for alpha in Flavor:
        for baseline in np.linspace(0.0, far, points):
            undamped = wave_packet_probabilities(u, params, config, baseline, alpha, damped=False)
            plane = plane_wave_probabilities(u, splittings, params.energy, baseline, alpha)
            worst = max(worst, float(np.max(np.abs(np.subtract(undamped, plane)))))
    return _result('plane-wave limit', worst, 1e-12)


def check_time_integration(params, baselines, tolerance):
    u = params.pmns()
    config = WavePacketConfig.symmetric(units.to_natural_length(1e-16, 'm'))
    reach = 0.3 * coherence_length(config, params.energy, mass_splittings(params).between(3, 1))
    worst = 0.0
    for baseline in np.linspace(0.0, reach, baselines):
        worst = max(worst, time_integration_check(u, params, config, baseline, Flavor.E, tolerance=tolerance))
    return _result('time integration', worst, tolerance)


def check_asymptotic(params):
    u = params.pmns()
    splittings = mass_splittings(params)
    config = WavePacketConfig.from_length(1e-16, 'm')
    # the 2-1 pair has the longest coherence length
    far = 10.0 * coherence_length(config, params.energy, splittings.between(2, 1))
    row = wave_packet_probabilities(u, params, config, far, Flavor.E)
    plateau = asymptotic_probabilities(u, Flavor.E)
    worst = max(
        abs(row.p_e - plateau.p_e),
        abs(coherence_from_probabilities(row) - asymptotic_coherence(u, Flavor.E)),
    )
    return _result('decohered plateau', worst, 1e-6)


def envelope_region(params, sigma_x_m):
    """
    Baselines and window of the envelope comparison, in km. Window starts
    run from 0.1 to ``ENVELOPE_REACH`` coherence lengths of the narrowest
    width, where its 3-1 damping is still partial.
    """
    splittings = mass_splittings(params)
    narrowest = WavePacketConfig.from_length(min(sigma_x_m), 'm')
    reach = coherence_length(narrowest, params.energy, splittings.between(3, 1), unit='km')
    window = oscillation_length(params.energy, splittings.between(3, 1), unit='km')
    return BaselineGrid(0.1 * reach, ENVELOPE_REACH * reach + window, 2001), window


def check_envelope_ordering(params, workers=1):
    """
    Coherence envelopes over one 3-1 oscillation length must not decrease
    with the width where the damping of the narrowest packet is partial.
    """
    config = fig1_config()
    grid, window = envelope_region(params, config.sigma_x_m)
    config = replace(config, baseline_grid=grid, params=params)
    groups = records_by_sigma(run_sweep(config, workers))
    envelopes = []
    for sigma_m in sorted(groups):
        records = groups[sigma_m]
        envelopes.append(coherence_envelope([r.baseline_km for r in records], [r.l1_norm for r in records], window))

    worst = 0.0
    for lower, upper in zip(envelopes, envelopes[1:]):
        valid = ~np.isnan(lower) & ~np.isnan(upper)
        worst = max(worst, float(np.max(lower[valid] - upper[valid], initial=0.0)))
    return _result('coherence envelope ordering', worst, 1e-9)


def check_maximality(states, fig1_records):
    largest = max(
        max(correlation_report(np.abs(a) ** 2).l1_norm for a in states),
        max((r.l1_norm for r in fig1_records), default=0.0),
    )
    return _result('l1-norm bound', max(0.0, largest - 2.0), 1e-12)


def run_checks(settings=None, params=None):
    """
    Run the whole suite.

    Parameters
    ----------
    settings : CheckSettings, optional
        Sample sizes, seed and tolerances; defaults when omitted.
    params : OscillationParams, optional
        Oscillation parameters; the measured values when omitted.

    Returns
    -------
    list of CheckResult
        In a fixed order. A property that raises is reported as failed with
        an infinite residual.
    """
    settings = settings or CheckSettings()
    params = params or OscillationParams.from_experiment()
    rng = np.random.default_rng(settings.seed)
    states = random_amplitudes(rng, settings.random_states)
    wootters_states = random_amplitudes(rng, settings.wootters_states)
    fig1_records = run_sweep(fig1_config(), settings.workers)

    suite = (
        ('coherence-concurrence identity', lambda: check_identity(states, fig1_records), 1e-12),
        ('mixing matrix unitarity', lambda: check_unitarity(rng), UNITARITY_TOLERANCE),
        ('Wootters concurrence', lambda: check_wootters(wootters_states), 1e-10),
        ('pure-state l1-norm', lambda: check_pure_state_coherence(states), 1e-12),
        ('probability conservation', lambda: check_row_sums(params, settings.grid_points), 1e-12),
        ('plane-wave limit', lambda: check_plane_wave_limit(params, settings.plane_wave_points), 1e-12),
        (
            'time integration',
            lambda: check_time_integration(params, settings.quadrature_baselines, settings.quadrature_tolerance),
            settings.quadrature_tolerance,
        ),
        ('decohered plateau', lambda: check_asymptotic(params), 1e-6),
        ('coherence envelope ordering', lambda: check_envelope_ordering(params, settings.workers), 1e-9),
        ('l1-norm bound', lambda: check_maximality(states, fig1_records), 1e-12),
    )

    results = []
    for name, check, tolerance in suite:
        try:
            results.append(check())
        except NuCorrelateError as e:
            LOG.debug(f'{name} raised {e}')
            results.append(CheckResult(name, math.inf, tolerance, False))
    return results

"""
Sweep Runner Module
===================

Evaluates probabilities and correlation measures over a grid of widths and
baselines. Grid points are independent; they may be evaluated on a thread
pool and are always returned in (sigma_x, baseline) ascending order.
"""

from concurrent import futures
from typing import NamedTuple, Optional
import numpy as np
from cement.utils.misc import minimal_logger
from ..exc import NuCorrelateError, SweepError, InvariantError
from ..oscillation import units
from ..oscillation.dynamics import (
    WavePacketConfig,
    mass_splittings,
    plane_wave_probabilities,
    wave_packet_probabilities,
)
from ..oscillation.correlations import correlation_report
from .config import PLANE_WAVE

LOG = minimal_logger(__name__)

IDENTITY_TOLERANCE = 1e-12
ROW_SUM_TOLERANCE = 1e-12
L1_MAX = 2.0


class SweepRecord(NamedTuple):
    sigma_x: Optional[float]
    baseline_km: float
    p_e: float
    p_mu: float
    p_tau: float
    l1_norm: float
    c_emu: float
    c_etau: float
    c_mutau: float
    identity_residual: float


def _evaluate(config, u, splittings, sigma_x_m, baseline_km):
    params = config.params
    baseline = baseline_km * units.km
    if sigma_x_m is None:
        row = plane_wave_probabilities(u, splittings, params.energy, baseline, config.initial_flavor)
    else:
        wave_packet = WavePacketConfig.from_length(sigma_x_m, 'm')
        row = wave_packet_probabilities(u, params, wave_packet, baseline, config.initial_flavor)

    if abs(row.total() - 1.0) > ROW_SUM_TOLERANCE:
        raise InvariantError(f'probabilities sum to {row.total():.15g}')
    report = correlation_report(row)
    if report.identity_residual >= IDENTITY_TOLERANCE:
        raise InvariantError(f'coherence differs from the sum of concurrences by {report.identity_residual:.3e}')
    if report.l1_norm > L1_MAX + IDENTITY_TOLERANCE:
        raise InvariantError(f'l1-norm {report.l1_norm!r} exceeds its maximum')
    return SweepRecord(sigma_x_m, float(baseline_km), *row, *report)


def run_sweep(config, workers=1):
    """
    Evaluate every (sigma_x, baseline) point of ``config``.

    Plane-wave sweeps ignore the widths and carry ``sigma_x = None``.

    Raises
    ------
    SweepError
        Wrapping the first failing grid point.
    """
    u = config.params.pmns()
    splittings = mass_splittings(config.params)
    baselines = [float(b) for b in config.baseline_grid.values_km()]
    sigmas = [None] if config.mode == PLANE_WAVE else sorted(config.sigma_x_m)
    grid = [(s, b) for s in sigmas for b in baselines]
    LOG.debug(f'sweeping {len(grid)} points in {config.mode} mode with {workers} worker(s)')

    def evaluate(point):
        sigma_x_m, baseline_km = point
        try:
            return _evaluate(config, u, splittings, sigma_x_m, baseline_km)
        except NuCorrelateError as e:
            raise SweepError(str(e), sigma_x_m, baseline_km) from e

    if workers <= 1:
        return [evaluate(point) for point in grid]
    with futures.ThreadPoolExecutor(max_workers=workers) as pool:
        # map keeps the grid order
        return list(pool.map(evaluate, grid))


def coherence_envelope(baselines, values, window):
    """
    Local maximum of ``values`` over ``[L, L + window]`` for every baseline
    ``L`` whose window lies inside the sampled range; other entries are NaN.
    """
    baselines = np.asarray(baselines, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    envelope = np.full(values.shape, np.nan)
    ends = np.searchsorted(baselines, baselines + window, side='right')
    for i, end in enumerate(ends):
        if baselines[i] + window <= baselines[-1]:
            envelope[i] = np.max(values[i:end])
    return envelope


def records_by_sigma(records):
    """Group records by width, keeping the sweep order."""
    groups = {}
    for record in records:
        groups.setdefault(record.sigma_x, []).append(record)
    return groups

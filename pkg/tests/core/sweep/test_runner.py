import math
import numpy as np
from dataclasses import replace
from pytest import raises, approx
from nucorrelate.core.exc import SweepError
from nucorrelate.core.oscillation.flavors import Flavor
from nucorrelate.core.sweep.config import BaselineGrid, parse_config, fig1_config
from nucorrelate.core.sweep.runner import (
    SweepRecord,
    run_sweep,
    coherence_envelope,
    records_by_sigma,
)


def small_config(text='', **grid):
    config = parse_config(text)
    return replace(config, baseline_grid=BaselineGrid(**dict(dict(min_km=0.0, max_km=20000.0, points=21), **grid)))


def test_origin_record():
    config = small_config('sigma_x: 1e-16 m', min_km=0.0, max_km=1.0, points=2)
    record = run_sweep(config)[0]
    assert record.baseline_km == 0.0
    assert record.sigma_x == approx(1e-16)
    assert (record.p_e, record.p_mu, record.p_tau) == approx((1.0, 0.0, 0.0), abs=1e-12)
    assert record.l1_norm == approx(0.0, abs=1e-5)
    assert record.c_emu == approx(0.0, abs=1e-5)


def test_records_are_ordered_by_width_then_baseline():
    config = small_config('sigma_x: [1e-15 m, 2e-17 m, 1e-16 m]')
    records = run_sweep(config)
    assert len(records) == 3 * 21
    keys = [(r.sigma_x, r.baseline_km) for r in records]
    assert keys == sorted(keys)


def test_every_record_satisfies_the_invariants():
    records = run_sweep(small_config(points=101))
    for record in records:
        assert record.identity_residual < 1e-12
        assert abs(record.p_e + record.p_mu + record.p_tau - 1.0) < 1e-12
        assert 0.0 <= record.l1_norm <= 2.0 + 1e-12


def test_plane_wave_records_carry_no_width():
    records = run_sweep(small_config('mode: plane_wave\nflavor: mu'))
    assert len(records) == 21
    assert all(r.sigma_x is None for r in records)
    assert records[0].p_mu == approx(1.0, abs=1e-12)


def test_far_baseline_reaches_the_plateau():
    config = small_config('sigma_x: 1e-16 m', min_km=1e7, max_km=2e7, points=2)
    for record in run_sweep(config):
        assert record.p_e == approx(0.5602, abs=1e-4)


def test_parallel_evaluation_is_identical():
    config = small_config(points=31)
    assert run_sweep(config, workers=4) == run_sweep(config, workers=1)


def test_failing_point_is_identified():
    config = small_config('sigma_x: 1e-16 m', min_km=0.0, max_km=1.0, points=2)
    # a grid the config layer would refuse
    config = replace(config, baseline_grid=BaselineGrid(-10.0, 0.0, 2))
    with raises(SweepError) as e:
        run_sweep(config)
    assert e.value.baseline_km == -10.0
    assert e.value.sigma_x_m == approx(1e-16)


def test_wider_packets_keep_more_coherence():
    config = small_config('sigma_x: [2e-17 m, 1e-15 m]', min_km=3000.0, max_km=3000.0 + 9394.0, points=941)
    groups = records_by_sigma(run_sweep(config))
    narrow, wide = (groups[sigma] for sigma in sorted(groups))
    # one 3-1 oscillation length starting where the narrow packet is partly damped
    window = 9394.0
    envelopes = [coherence_envelope([r.baseline_km for r in g], [r.l1_norm for r in g], window)[0] for g in (narrow, wide)]
    assert envelopes[1] > envelopes[0] + 1e-3


def test_coherence_envelope():
    baselines = np.arange(10.0)
    values = np.array([0, 3, 1, 0, 2, 0, 0, 5, 0, 1], dtype=float)
    envelope = coherence_envelope(baselines, values, 2.0)
    assert list(envelope[:8]) == [3, 3, 2, 2, 2, 5, 5, 5]
    assert np.all(np.isnan(envelope[8:]))


def test_records_by_sigma():
    records = [SweepRecord(s, b, 1, 0, 0, 0, 0, 0, 0, 0) for s in (1.0, 2.0) for b in (0.0, 1.0)]
    groups = records_by_sigma(records)
    assert list(groups) == [1.0, 2.0]
    assert [r.baseline_km for r in groups[2.0]] == [0.0, 1.0]


def test_fig1_identity_on_every_point():
    records = run_sweep(fig1_config())
    assert len(records) == 3 * 501
    assert max(r.identity_residual for r in records) < 1e-12
    assert max(r.l1_norm for r in records) <= 2.0 + 1e-12
    assert not any(math.isnan(r.l1_norm) for r in records)

import os
import json
from pytest import raises, approx
from nucorrelate.main import NuCorrelateTest
from nucorrelate.core.exc import ConfigError
from nucorrelate.core.sweep.emit import COLUMNS, parse_records

# small samples keep the invariant suite fast
check_settings = dict(
    check_random_states=200,
    check_wootters_states=20,
    check_grid_points=40,
    check_plane_wave_points=10,
    check_quadrature_baselines=2,
)


def test_nucorrelate():
    # test nucorrelate without any subcommands or arguments
    with NuCorrelateTest() as app:
        app.run()
        assert app.exit_code == 0


def test_nucorrelate_debug():
    # test that debug mode is functional
    argv = ['--debug']
    with NuCorrelateTest(argv=argv) as app:
        app.run()
        assert app.debug is True


def test_sweep_prints_csv():
    argv = ['sweep', '--mode', 'plane', '--l-points', '3', '--l-max', '100']
    with NuCorrelateTest(argv=argv) as app:
        app.run()
        data, output = app.last_rendered
        assert output.splitlines()[0] == ','.join(COLUMNS)
        records = parse_records(output, 'csv')
        assert [r.baseline_km for r in records] == [0.0, 50.0, 100.0]
        assert all(r.sigma_x is None for r in records)


def test_sweep_writes_json(tmp):
    out = os.path.join(tmp.dir, 'sweep.json')
    argv = [
        'sweep',
        '--flavor', 'mu',
        '--sigma-x', '1e-16m,1e-15m',
        '--l-max', '3000',
        '--l-points', '4',
        '--format', 'json',
        '--out', out,
    ]
    with NuCorrelateTest(argv=argv) as app:
        app.run()
        assert app.exit_code == 0

    with open(out, 'r') as f:
        rows = json.load(f)
    assert len(rows) == 8
    assert [row['sigma_x_m'] for row in rows] == approx([1e-16] * 4 + [1e-15] * 4)
    for row in rows:
        assert row['P_e'] + row['P_mu'] + row['P_tau'] == approx(1.0, abs=1e-9)
        assert row['C_l1'] == approx(row['C_emu'] + row['C_etau'] + row['C_mutau'], abs=1e-9)


def test_sweep_reads_document(tmp):
    path = os.path.join(tmp.dir, 'sweep.yaml')
    with open(path, 'w') as f:
        f.write('mode: plane_wave\nbaseline_points: 5\nbaseline_max_km: 400\n')

    argv = ['sweep', '--config', path, '--l-points', '2']
    with NuCorrelateTest(argv=argv) as app:
        app.run()
        data, output = app.last_rendered
        records = parse_records(output, 'csv')
        # flags win over the document
        assert [r.baseline_km for r in records] == [0.0, 400.0]


def test_sweep_rejects_bad_value():
    argv = ['sweep', '--l-points', '-3']
    with NuCorrelateTest(argv=argv) as app:
        with raises(ConfigError) as e:
            app.run()
        assert e.value.key == 'baseline_points'


def test_fig1_writes_three_widths(tmp):
    out = os.path.join(tmp.dir, 'fig1.csv')
    with NuCorrelateTest(argv=['fig1', '--out', out]) as app:
        app.run()

    with open(out, 'rb') as f:
        records = parse_records(f.read(), 'csv')
    assert len(records) == 3 * 501
    assert sorted({r.sigma_x for r in records}) == approx([2e-17, 1e-16, 1e-15])
    assert records[0].l1_norm == approx(0.0, abs=1e-6)


def test_check_passes():
    with NuCorrelateTest(argv=['check']) as app:
        for key, value in check_settings.items():
            app.config.set('engine', key, value)
        app.run()
        data, output = app.last_rendered
        assert app.exit_code == 0
        assert len(data['results']) == 10
        assert data['failed'] == []
        assert 'all 10 checks passed' in output


def test_check_reports_failures():
    with NuCorrelateTest(argv=['check']) as app:
        for key, value in check_settings.items():
            app.config.set('engine', key, value)
        app.config.set('engine', 'quadrature_tolerance', 0.0)
        app.run()
        data, output = app.last_rendered
        assert app.exit_code == 1
        assert data['failed'] == ['time integration']
        assert '1 of 10 checks failed' in output
        assert 'FAILED' in output

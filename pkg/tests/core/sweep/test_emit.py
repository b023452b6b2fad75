import json
from pytest import raises, approx
from nucorrelate.core.exc import NuCorrelateError, OutputError
from nucorrelate.core.sweep.runner import SweepRecord
from nucorrelate.core.sweep.emit import COLUMNS, emit, parse_records, write_records

RECORD = SweepRecord(1e-16, 1250.0, 0.9871234567891234, 0.0070000000000001, 0.005876543210987, 0.51, 0.17, 0.16, 0.18, 2.2e-16)
PLANE = SweepRecord(None, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)


def test_csv_header_and_line():
    lines = emit([RECORD], 'csv').decode('utf-8').split('\n')
    assert lines[0] == 'sigma_x_m,L_km,P_e,P_mu,P_tau,C_l1,C_emu,C_etau,C_mutau,identity_residual'
    assert lines[1] == '1e-16,1250,0.987123456789,0.007,0.00587654321099,0.51,0.17,0.16,0.18,2.2e-16'
    assert lines[2:] == ['']


def test_csv_plane_wave_width_is_empty():
    assert emit([PLANE]).decode('utf-8').split('\n')[1] == ',0,1,0,0,0,0,0,0,0'


def test_json_objects():
    rows = json.loads(emit([RECORD, PLANE], 'json'))
    assert [list(row) for row in rows] == [list(COLUMNS)] * 2
    assert rows[0]['P_e'] == 0.987123456789
    assert rows[0]['L_km'] == 1250.0
    assert rows[1]['sigma_x_m'] is None


def test_output_is_deterministic():
    assert emit([RECORD, PLANE], 'json') == emit([RECORD, PLANE], 'json')
    assert emit([RECORD, PLANE], 'csv') == emit([RECORD, PLANE], 'csv')


def test_round_trip_keeps_twelve_digits():
    for fmt in ('csv', 'json'):
        back = parse_records(emit([RECORD, PLANE], fmt), fmt)
        assert back[1] == PLANE
        for value, original in zip(back[0], RECORD):
            assert value == approx(original, rel=1e-11)


def test_emit_rejects_empty_and_unknown():
    with raises(NuCorrelateError):
        emit([], 'csv')
    with raises(NuCorrelateError):
        emit([RECORD], 'xml')


def test_parse_rejects_foreign_documents():
    with raises(NuCorrelateError):
        parse_records('a,b\n1,2\n', 'csv')
    with raises(NuCorrelateError):
        parse_records('{"a": 1}', 'json')


def test_write_records(tmp):
    path = f'{tmp.dir}/records.csv'
    size = write_records([RECORD], 'csv', path)
    with open(path, 'rb') as f:
        assert f.read() == emit([RECORD], 'csv')
    assert size > 0


def test_write_records_reports_the_path(tmp):
    path = f'{tmp.dir}/missing/records.csv'
    with raises(OutputError) as e:
        write_records([RECORD], 'csv', path)
    assert e.value.path == path
    assert path in str(e.value)

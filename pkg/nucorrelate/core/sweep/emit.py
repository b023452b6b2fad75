"""
Sweep Emit Module
=================

Serializes sweep records to CSV or JSON bytes and reads them back.

Numbers are written with 12 significant digits through ``format``, which does
not depend on the locale. Records without a width (plane-wave sweeps) carry an
empty ``sigma_x_m`` cell in CSV and ``null`` in JSON.
"""

import csv
import io
import json
from cement.utils.misc import minimal_logger
from ..exc import NuCorrelateError, OutputError
from .runner import SweepRecord
from .config import FORMATS

LOG = minimal_logger(__name__)

COLUMNS = (
    'sigma_x_m',
    'L_km',
    'P_e',
    'P_mu',
    'P_tau',
    'C_l1',
    'C_emu',
    'C_etau',
    'C_mutau',
    'identity_residual',
)

NUMBER_FORMAT = '.12g'


def _number(value):
    return None if value is None else float(format(value, NUMBER_FORMAT))


def _cell(value):
    return '' if value is None else format(value, NUMBER_FORMAT)


def _check_format(fmt):
    if fmt not in FORMATS:
        raise NuCorrelateError(f'unknown output format {fmt!r}, expected one of {", ".join(FORMATS)}')


def emit(records, fmt='csv'):
    """
    Serialize ``records`` in the given format.

    Returns
    -------
    bytes
        UTF-8 encoded document, identical for identical records.
    """
    _check_format(fmt)
    records = list(records)
    if not records:
        raise NuCorrelateError('there are no records to emit')

    if fmt == 'json':
        rows = [dict(zip(COLUMNS, (_number(v) for v in record))) for record in records]
        return (json.dumps(rows, indent=2) + '\n').encode('utf-8')

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(COLUMNS)
    for record in records:
        writer.writerow([_cell(v) for v in record])
    return buffer.getvalue().encode('utf-8')


def parse_records(data, fmt='csv'):
    """Read records back from :func:`emit` output."""
    _check_format(fmt)
    text = data.decode('utf-8') if isinstance(data, bytes) else data

    if fmt == 'json':
        rows = json.loads(text)
        if not isinstance(rows, list):
            raise NuCorrelateError('expected a JSON array of records')
        return [SweepRecord(*(row[c] if row[c] is None else float(row[c]) for c in COLUMNS)) for row in rows]

    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != COLUMNS:
        raise NuCorrelateError(f'unexpected CSV header {reader.fieldnames!r}')
    return [SweepRecord(*(float(row[c]) if row[c] != '' else None for c in COLUMNS)) for row in reader]


def write_records(records, fmt, path):
    """Emit ``records`` to ``path``; I/O failures raise :class:`OutputError`."""
    data = emit(records, fmt)
    try:
        with open(path, 'wb') as f:
            f.write(data)
    except OSError as e:
        raise OutputError(path, e.strerror or str(e))
    LOG.debug(f'wrote {len(data)} bytes of {fmt} to {path}')
    return len(data)

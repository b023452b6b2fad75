"""
Sweep Configuration Module
==========================

Reads a sweep document, a flat YAML mapping of keys to values, into a
validated :class:`SweepConfig`. Missing keys take the measured oscillation
parameters and the default three-width distance sweep. Unknown keys and bad
values raise :class:`ConfigError` naming the key and its line.

Example document::

    flavor: e
    mode: wave_packet
    baseline_min_km: 0
    baseline_max_km: 50000
    baseline_points: 501
    baseline_scale: lin
    sigma_x: [2e-17 m, 1e-16 m, 1e-15 m]
    energy_gev: 10
"""

import math
from dataclasses import dataclass, field
import numpy as np
import yaml
from cement.utils.misc import minimal_logger
from ..exc import ConfigError, ParameterError
from ..oscillation import units
from ..oscillation.flavors import Flavor
from ..oscillation.dynamics import OscillationParams, EXPERIMENT_DEFAULTS

LOG = minimal_logger(__name__)

PLANE_WAVE = 'plane_wave'
WAVE_PACKET = 'wave_packet'

FORMATS = ('csv', 'json')

# distance sweep of the coherence-vs-width figure: coherence lengths of the
# 3-1 pair at about 4.3e3 km, 2.1e4 km and 2.1e5 km for the measured values
FIG1_SIGMA_X = ('2e-17 m', '1e-16 m', '1e-15 m')
FIG1_BASELINE_MIN_KM = 0.0
FIG1_BASELINE_MAX_KM = 50000.0
FIG1_BASELINE_POINTS = 501

DEFAULTS = dict(
    flavor='e',
    mode=WAVE_PACKET,
    baseline_min_km=FIG1_BASELINE_MIN_KM,
    baseline_max_km=FIG1_BASELINE_MAX_KM,
    baseline_points=FIG1_BASELINE_POINTS,
    baseline_scale='lin',
    sigma_x=list(FIG1_SIGMA_X),
    format='csv',
    out=None,
    **EXPERIMENT_DEFAULTS,
)


@dataclass(frozen=True)
class BaselineGrid:
    min_km: float
    max_km: float
    points: int
    scale: str = 'lin'

    def values_km(self):
        if self.scale == 'log':
            return np.geomspace(self.min_km, self.max_km, self.points)
        return np.linspace(self.min_km, self.max_km, self.points)


@dataclass(frozen=True)
class OutputTarget:
    path: str = None
    format: str = 'csv'


@dataclass(frozen=True)
class SweepConfig:
    initial_flavor: Flavor
    baseline_grid: BaselineGrid
    sigma_x_m: tuple
    params: OscillationParams
    mode: str = WAVE_PACKET
    output: OutputTarget = field(default_factory=OutputTarget)


### --------------------------------------------------------------------------------------


def _float(raw):
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise ValueError(f'expected a number, got {raw!r}')
    if not math.isfinite(value):
        raise ValueError(f'expected a finite number, got {raw!r}')
    return value


def _non_negative(raw):
    value = _float(raw)
    if value < 0:
        raise ValueError(f'must not be negative, got {value!r}')
    return value


def _positive(raw):
    value = _float(raw)
    if value <= 0:
        raise ValueError(f'must be positive, got {value!r}')
    return value


def _sin_squared(raw):
    value = _float(raw)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f'must lie in [0, 1], got {value!r}')
    return value


def _zeta(raw):
    value = _float(raw)
    if not 0.0 <= value < 1.0:
        raise ValueError(f'must lie in [0, 1), got {value!r}')
    return value


def _point_count(raw):
    value = _float(raw)
    if not value.is_integer() or value < 2:
        raise ValueError(f'must be an integer of at least 2, got {raw!r}')
    return int(value)


def _choice(aliases):
    def convert(raw):
        key = str(raw).strip().lower()
        if key not in aliases:
            raise ValueError(f'must be one of {", ".join(sorted(set(aliases.values())))}, got {raw!r}')
        return aliases[key]

    return convert


def _flavor(raw):
    try:
        return Flavor.parse(raw)
    except ParameterError as e:
        raise ValueError(str(e))


def _sigma_list(raw):
    items = raw if isinstance(raw, list) else [raw]
    values = []
    for item in items:
        try:
            value, unit = units.parse_length(item)
        except ParameterError as e:
            raise ValueError(str(e))
        meters = units.from_natural_length(units.to_natural_length(value, unit), 'm')
        if meters <= 0:
            raise ValueError(f'widths must be positive, got {item!r}')
        values.append(meters)
    return tuple(values)


def _path(raw):
    if raw is None:
        return None
    path = str(raw).strip()
    return path or None


CONVERTERS = dict(
    flavor=_flavor,
    mode=_choice({'plane_wave': PLANE_WAVE, 'plane': PLANE_WAVE, 'wave_packet': WAVE_PACKET, 'wavepacket': WAVE_PACKET}),
    baseline_min_km=_non_negative,
    baseline_max_km=_positive,
    baseline_points=_point_count,
    baseline_scale=_choice({'lin': 'lin', 'linear': 'lin', 'log': 'log'}),
    sigma_x=_sigma_list,
    sin2_theta12=_sin_squared,
    sin2_theta13=_sin_squared,
    sin2_theta23=_sin_squared,
    delta_cp_deg=_float,
    small_splitting_ev2=_float,
    large_splitting_ev2=_float,
    energy_gev=_positive,
    zeta=_zeta,
    format=_choice({f: f for f in FORMATS}),
    out=_path,
)

KEYS = tuple(CONVERTERS)


def _raw_value(node, key, line, context):
    if isinstance(node, yaml.ScalarNode):
        if node.tag.endswith(':null'):
            return None
        return node.value
    if isinstance(node, yaml.SequenceNode):
        return [_raw_value(item, key, line, context) for item in node.value]
    raise ConfigError(key, 'nested mappings are not supported', line, context)


def _document_entries(text):
    """Yield ``(key, raw, line, context)`` for every entry of the document."""
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError as e:
        mark = getattr(e, 'problem_mark', None)
        line = mark.line + 1 if mark is not None else None
        raise ConfigError('document', f'not valid YAML: {getattr(e, "problem", e)}', line)
    if root is None:
        return
    if not isinstance(root, yaml.MappingNode):
        raise ConfigError('document', 'must be a mapping of keys to values', root.start_mark.line + 1)

    lines = text.splitlines()
    for key_node, value_node in root.value:
        line = key_node.start_mark.line + 1
        context = lines[line - 1] if line - 1 < len(lines) else ''
        if not isinstance(key_node, yaml.ScalarNode):
            raise ConfigError('document', 'keys must be plain names', line, context)
        yield key_node.value, _raw_value(value_node, key_node.value, line, context), line, context


def parse_config(text, overrides=None):
    """
    Parse and validate a sweep document.

    Parameters
    ----------
    text : str
        The YAML document; empty text gives all defaults.
    overrides : dict, optional
        Raw values keyed like the document, applied after it (command line
        flags). ``None`` values are ignored.

    Returns
    -------
    SweepConfig

    Raises
    ------
    ConfigError
        On the first unknown key, repeated key or invalid value.
    """
    values = dict(DEFAULTS)
    # where each key was set, for cross-key errors
    origin = {}

    def assign(key, raw, line, context):
        if key not in CONVERTERS:
            raise ConfigError(key, f'unknown key, valid keys are: {", ".join(KEYS)}', line, context)
        try:
            values[key] = CONVERTERS[key](raw)
        except ValueError as e:
            raise ConfigError(key, str(e), line, context)
        origin[key] = (line, context)

    seen = set()
    for key, raw, line, context in _document_entries(text or ''):
        if key in seen:
            raise ConfigError(key, 'key is given twice', line, context)
        seen.add(key)
        assign(key, raw, line, context)

    for key, raw in (overrides or {}).items():
        if raw is not None:
            assign(key, raw, None, 'command line')

    # defaults are stored in their raw form
    for key in CONVERTERS:
        if key not in origin:
            values[key] = CONVERTERS[key](values[key])

    def fail(key, message):
        line, context = origin.get(key, (None, None))
        raise ConfigError(key, message, line, context)

    if values['baseline_max_km'] <= values['baseline_min_km']:
        fail('baseline_max_km', f'must be larger than baseline_min_km ({values["baseline_min_km"]!r})')
    if values['baseline_scale'] == 'log' and values['baseline_min_km'] <= 0:
        fail('baseline_scale', 'log spacing needs a positive baseline_min_km')
    if values['mode'] == WAVE_PACKET and not values['sigma_x']:
        fail('sigma_x', 'at least one width is needed in wave_packet mode')

    try:
        params = OscillationParams.from_experiment(**{k: values[k] for k in EXPERIMENT_DEFAULTS})
    except ParameterError as e:
        raise ConfigError('params', str(e))

    config = SweepConfig(
        initial_flavor=values['flavor'],
        baseline_grid=BaselineGrid(
            values['baseline_min_km'],
            values['baseline_max_km'],
            values['baseline_points'],
            values['baseline_scale'],
        ),
        sigma_x_m=values['sigma_x'],
        params=params,
        mode=values['mode'],
        output=OutputTarget(values['out'], values['format']),
    )
    LOG.debug(f'parsed sweep config {config!r}')
    return config


def load_config(path=None, overrides=None):
    """Read the sweep document at ``path`` (or none) and parse it."""
    text = ''
    if path is not None:
        try:
            with open(path, 'r', encoding='utf-8') as f:
                text = f.read()
        except OSError as e:
            raise ConfigError('config', f'cannot read {path}: {e.strerror or e}')
    return parse_config(text, overrides)


def fig1_config(fmt='csv', out=None):
    """The three-width distance sweep for an initial electron neutrino."""
    return parse_config('', dict(format=fmt, out=out))

"""
Natural system of units
=======================

Energies are measured in electron volts and lengths (and times, c = 1) in
inverse electron volts. Quantities entering or leaving the library are
converted here and nowhere else.

    >>> from nucorrelate.core.oscillation import units
    >>> round(1 * units.km * units.hbarc_eV_m / 1e3, 12)
    1.0
"""

import re
from ..exc import ParameterError

# hbar * c in eV * m
hbarc_eV_m = 1.973269804e-7

# Energy [E]

eV = 1.0
keV = 1.0e3 * eV
MeV = 1.0e6 * eV
GeV = 1.0e9 * eV

eV2 = eV * eV

# Length [L] in eV^-1

inverse_eV = 1.0 / eV
meter = 1.0 / hbarc_eV_m
kilometer = 1.0e3 * meter
centimeter = 1.0e-2 * meter
millimeter = 1.0e-3 * meter
micrometer = 1.0e-6 * meter
nanometer = 1.0e-9 * meter
fermi = 1.0e-15 * meter

# symbols
m = meter
km = kilometer
cm = centimeter
mm = millimeter
um = micrometer
nm = nanometer
fm = fermi

LENGTH_UNITS = {
    'km': kilometer,
    'm': meter,
    'cm': centimeter,
    'mm': millimeter,
    'um': micrometer,
    'µm': micrometer,
    'μm': micrometer,
    'nm': nanometer,
    'fm': fermi,
    'ev^-1': inverse_eV,
    'ev-1': inverse_eV,
    '1/ev': inverse_eV,
    'ev⁻¹': inverse_eV,
}

_QUANTITY = re.compile(r'^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(\S*)\s*$')


def length_unit(tag):
    """Return the size of the length unit ``tag`` in eV^-1."""
    try:
        return LENGTH_UNITS[tag.strip().lower()]
    except KeyError:
        raise ParameterError(f'unknown length unit {tag!r}, use one of: m, km, eV^-1, cm, mm, um, nm, fm')


def to_natural_length(value, unit='m'):
    return float(value) * length_unit(unit)


def from_natural_length(value, unit='m'):
    return float(value) / length_unit(unit)


def parse_length(text, default_unit='m'):
    """
    Parse a tagged length like ``1e-16 m``, ``2e-17m`` or ``5e-10 eV^-1``.

    Returns
    -------
    tuple
        ``(value, unit)`` with the value in the given unit.
    """
    match = _QUANTITY.match(str(text))
    if match is None:
        raise ParameterError(f'cannot read length {text!r}')
    value, unit = match.groups()
    unit = unit or default_unit
    # validates the tag
    length_unit(unit)
    return float(value), unit

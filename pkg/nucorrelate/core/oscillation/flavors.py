from enum import IntEnum
from ..exc import ParameterError


class Flavor(IntEnum):
    """Neutrino flavors, valued by their row in the mixing matrix."""

    E = 0
    MU = 1
    TAU = 2

    @property
    def label(self):
        return _LABELS[self]

    @classmethod
    def parse(cls, value):
        if isinstance(value, Flavor):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            try:
                return cls(value)
            except ValueError:
                raise ParameterError(f'flavor index must be 0, 1 or 2, got {value!r}')
        key = str(value).strip().lower()
        if key in _ALIASES:
            return _ALIASES[key]
        raise ParameterError(f'unknown flavor {value!r}, use one of: e, mu, tau')

    def others(self):
        """The two remaining flavors in (e, mu, tau) order."""
        return tuple(f for f in Flavor if f is not self)


_LABELS = {Flavor.E: 'e', Flavor.MU: 'mu', Flavor.TAU: 'tau'}

_ALIASES = {
    'e': Flavor.E,
    'nue': Flavor.E,
    'mu': Flavor.MU,
    'μ': Flavor.MU,
    'numu': Flavor.MU,
    'tau': Flavor.TAU,
    'τ': Flavor.TAU,
    'nutau': Flavor.TAU,
}

FLAVORS = tuple(Flavor)

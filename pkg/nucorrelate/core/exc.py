class NuCorrelateError(Exception):
    """Generic errors."""

    pass


class ParameterError(NuCorrelateError):
    """Physical inputs out of range or not finite."""

    pass


class DegeneratePairError(NuCorrelateError):
    """A length scale was requested for a pair with vanishing mass splitting."""

    pass


class MissingWidthError(NuCorrelateError):
    """Production and detection widths are required but only sigma_x is known."""

    pass


class NormalizationError(NuCorrelateError):
    """Amplitudes do not have unit norm."""

    pass


class ProbabilityError(NuCorrelateError):
    """Probabilities violate the preconditions of a coherence measure."""

    pass


class SpectralError(NuCorrelateError):
    """Eigenvalues of rho * rho_tilde left the physical range."""

    pass


class InvariantError(NuCorrelateError):
    """A runtime invariant check failed."""

    pass


class QuadratureError(NuCorrelateError):
    """Adaptive quadrature did not converge."""

    def __init__(self, message, abserr=None):
        super().__init__(message)
        self.abserr = abserr


class ConfigError(NuCorrelateError):
    """Invalid sweep document or command line override."""

    def __init__(self, key, message, line=None, context=None):
        if line is not None and context:
            where = f' (line {line}: {context.strip()!r})'
        elif line is not None:
            where = f' (line {line})'
        elif context:
            where = f' ({context})'
        else:
            where = ''
        super().__init__(f'{key}: {message}{where}')
        self.key = key
        self.line = line
        self.context = context


class SweepError(NuCorrelateError):
    """A grid point of a sweep could not be evaluated."""

    def __init__(self, message, sigma_x_m=None, baseline_km=None):
        super().__init__(f'{message} [sigma_x={sigma_x_m} m, L={baseline_km} km]')
        self.sigma_x_m = sigma_x_m
        self.baseline_km = baseline_km


class OutputError(NuCorrelateError):
    """Records could not be written."""

    def __init__(self, path, message):
        super().__init__(f'{path}: {message}')
        self.path = path

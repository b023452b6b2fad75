"""
Quantum Correlations Module
===========================

Coherence and entanglement of the evolved flavor state.

The l1-norm of coherence is evaluated from the flavor density matrix and from
the transition probabilities. The flavor state is also read as a single
particle occupying one of three modes (e, mu, tau); tracing out one mode leaves
a two-qubit state whose Wootters concurrence measures the entanglement of the
remaining pair. The sum of the three pair concurrences equals the l1-norm.

Basis ordering of the three-mode state is ``|n_e n_mu n_tau>`` read as a
binary number, so ``|100>`` is index 4, ``|010>`` index 2 and ``|001>`` index 1.
After a partial trace the remaining modes keep (e, mu, tau) order, lower flavor
first.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple
import numpy as np
from cement.utils.misc import minimal_logger
from ..exc import NormalizationError, ProbabilityError, SpectralError, ParameterError
from .flavors import Flavor, FLAVORS
from .dynamics import ProbabilityRow, asymptotic_probabilities

LOG = minimal_logger(__name__)

AMPLITUDE_NORM_TOLERANCE = 1e-9
PROBABILITY_CLIP = 1e-12
HERMITIAN_TOLERANCE = 1e-12
TRACE_TOLERANCE = 1e-12
PSD_TOLERANCE = 1e-10
SPECTRAL_TOLERANCE = 1e-8

SIGMA_Y = np.array([[0.0, -1j], [1j, 0.0]], dtype=np.complex128)
SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y)

# positions of |100>, |010>, |001>
MODE_INDEX = {Flavor.E: 4, Flavor.MU: 2, Flavor.TAU: 1}


def _check_density(rho, name):
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOLERANCE:
        raise ParameterError(f'{name} is not Hermitian')
    trace = np.trace(rho)
    if abs(trace - 1.0) > TRACE_TOLERANCE:
        raise ParameterError(f'{name} has trace {trace.real:.15g}, expected 1')
    if float(np.min(np.linalg.eigvalsh(rho))) < -PSD_TOLERANCE:
        raise ParameterError(f'{name} is not positive semidefinite')


def _frozen(values, shape, name):
    array = np.array(values, dtype=np.complex128)
    if array.shape != shape:
        raise ParameterError(f'{name} must have shape {shape}, got {array.shape}')
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class FlavorDensityMatrix:
    rho: np.ndarray

    def __post_init__(self):
        rho = _frozen(self.rho, (3, 3), 'flavor density matrix')
        _check_density(rho, 'flavor density matrix')
        object.__setattr__(self, 'rho', rho)

    def purity(self):
        return float(np.real(np.trace(self.rho @ self.rho)))


@dataclass(frozen=True, eq=False)
class ThreeModeState:
    psi: np.ndarray

    def __post_init__(self):
        psi = _frozen(self.psi, (8,), 'three-mode state')
        if abs(np.linalg.norm(psi) - 1.0) > 1e-12:
            raise NormalizationError('three-mode state must have unit norm')
        outside = [i for i in range(8) if i not in MODE_INDEX.values()]
        if np.any(psi[outside] != 0):
            raise ParameterError('three-mode state must lie in the one-excitation subspace')
        object.__setattr__(self, 'psi', psi)


@dataclass(frozen=True, eq=False)
class TwoQubitDensityMatrix:
    rho: np.ndarray

    def __post_init__(self):
        rho = _frozen(self.rho, (4, 4), 'two-qubit density matrix')
        _check_density(rho, 'two-qubit density matrix')
        object.__setattr__(self, 'rho', rho)


class CorrelationReport(NamedTuple):
    l1_norm: float
    concurrence_emu: float
    concurrence_etau: float
    concurrence_mutau: float
    identity_residual: float

    def concurrences(self):
        return (self.concurrence_emu, self.concurrence_etau, self.concurrence_mutau)


def _normalized(amplitudes):
    a = np.array(amplitudes, dtype=np.complex128)
    norm = float(np.linalg.norm(a))
    if abs(norm - 1.0) > AMPLITUDE_NORM_TOLERANCE:
        raise NormalizationError(f'amplitudes have norm {norm:.15g}, expected 1')
    # rounding inside the tolerance is divided out
    return a if norm == 1.0 else a / norm


def _clipped(p, name='probability'):
    p = float(p)
    if not math.isfinite(p) or p < -PROBABILITY_CLIP:
        raise ProbabilityError(f'{name} must be non-negative, got {p!r}')
    return max(p, 0.0)


def density_from_amplitudes(a):
    """rho_beta,gamma = A_beta A*_gamma for a normalized amplitude triple."""
    a = _normalized(a)
    return FlavorDensityMatrix(np.outer(a, a.conj()))


def l1_norm(rho):
    """Sum of the moduli of the off-diagonal elements."""
    m = rho.rho if isinstance(rho, FlavorDensityMatrix) else np.asarray(rho)
    magnitudes = np.abs(m)
    return float(np.sum(magnitudes) - np.sum(np.diag(magnitudes)))


def coherence_from_probabilities(p):
    """
    l1-norm of a pure flavor state written through its probabilities,
    2 (sqrt(Pe Pmu) + sqrt(Pe Ptau) + sqrt(Pmu Ptau)).
    """
    pe, pmu, ptau = (_clipped(x) for x in p)
    if pe + pmu + ptau > 1.0 + AMPLITUDE_NORM_TOLERANCE:
        raise ProbabilityError(f'probabilities sum to {pe + pmu + ptau:.15g}, more than 1')
    return 2.0 * (math.sqrt(pe * pmu) + math.sqrt(pe * ptau) + math.sqrt(pmu * ptau))


def three_mode_state(a):
    """Embed the amplitude triple into the one-excitation sector of three qubits."""
    a = _normalized(a)
    psi = np.zeros(8, dtype=np.complex128)
    for flavor in FLAVORS:
        psi[MODE_INDEX[flavor]] = a[int(flavor)]
    return ThreeModeState(psi)


def partial_trace(psi, traced_mode):
    """Reduced density matrix of the two modes left after tracing ``traced_mode``."""
    traced = int(Flavor.parse(traced_mode))
    keep = [m for m in range(3) if m != traced]
    tensor = np.transpose(psi.psi.reshape(2, 2, 2), keep + [traced]).reshape(4, 2)
    return TwoQubitDensityMatrix(tensor @ tensor.conj().T)


def _spectrum(m):
    try:
        return np.linalg.eigvals(m)
    except np.linalg.LinAlgError:
        LOG.debug('general eigen-solver failed, falling back to the characteristic polynomial')
        return np.roots(np.poly(m))


def wootters_concurrence(rho):
    """
    Concurrence max(l1 - l2 - l3 - l4, 0) of a two-qubit density matrix.

    The l_i are the square roots of the eigenvalues of rho * rho_tilde with
    rho_tilde = (sy x sy) rho* (sy x sy). The eigenvalues are validated with a
    general complex eigen-solver; the l_i themselves are taken as the singular
    values of W^T (sy x sy) W with rho = W W^dagger, which have the same values
    without the loss of precision a square root of a noisy zero brings.

    Raises
    ------
    SpectralError
        If an eigenvalue of rho * rho_tilde has an imaginary part or a
        negative real part beyond 1e-8.
    """
    m = rho.rho
    rho_tilde = SPIN_FLIP @ m.conj() @ SPIN_FLIP
    eigenvalues = _spectrum(m @ rho_tilde)
    if np.any(np.abs(eigenvalues.imag) > SPECTRAL_TOLERANCE) or np.any(eigenvalues.real < -SPECTRAL_TOLERANCE):
        raise SpectralError(f'rho * rho_tilde has unphysical eigenvalues {eigenvalues!r}')

    weights, vectors = np.linalg.eigh(m)
    w = vectors * np.sqrt(np.clip(weights, 0.0, None))
    lambdas = np.sort(np.linalg.svd(w.T @ SPIN_FLIP @ w, compute_uv=False))[::-1]
    return float(min(1.0, max(lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3], 0.0)))


def pure_concurrence(alpha00, alpha01, alpha10, alpha11):
    """2 |a00 a11 - a01 a10| of a normalized two-qubit pure state."""
    a00, a01, a10, a11 = _normalized((alpha00, alpha01, alpha10, alpha11))
    return float(2.0 * abs(a00 * a11 - a01 * a10))


def flavor_concurrence(p_beta, p_gamma):
    """Concurrence 2 sqrt(P_beta P_gamma) between two flavor modes."""
    return 2.0 * math.sqrt(_clipped(p_beta) * _clipped(p_gamma))


def correlation_report(p):
    """
    l1-norm and the three pair concurrences of a probability row, with the
    residual of l1 = C_emu + C_etau + C_mutau.
    """
    p = ProbabilityRow(*p)
    l1 = coherence_from_probabilities(p)
    c_emu = flavor_concurrence(p.p_e, p.p_mu)
    c_etau = flavor_concurrence(p.p_e, p.p_tau)
    c_mutau = flavor_concurrence(p.p_mu, p.p_tau)
    return CorrelationReport(l1, c_emu, c_etau, c_mutau, abs(l1 - (c_emu + c_etau + c_mutau)))


def correlation_report_from_amplitudes(a):
    """
    Same report for a pure state, with the l1-norm read off the density
    matrix and each concurrence from the full Wootters pipeline.
    """
    l1 = l1_norm(density_from_amplitudes(a))
    state = three_mode_state(a)
    # the pair (e, mu) is left when tau is traced out, and so on
    c_emu, c_etau, c_mutau = (wootters_concurrence(partial_trace(state, traced)) for traced in (Flavor.TAU, Flavor.MU, Flavor.E))
    return CorrelationReport(l1, c_emu, c_etau, c_mutau, abs(l1 - (c_emu + c_etau + c_mutau)))


def asymptotic_coherence(u, alpha):
    """Plateau of the l1-norm once every mass-state pair has decohered."""
    return coherence_from_probabilities(asymptotic_probabilities(u, alpha))

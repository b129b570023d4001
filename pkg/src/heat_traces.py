"""
heat_traces.py

Heat-kernel traces of the transverse 1D operators on an interval of
dimensionless length lambda, the kink-minus-vacuum trace and the flat
time factor. Everything is in units m = hbar = c = 1; u is Euclidean proper time.
"""
from dataclasses import dataclass
import logging
import math
from typing import Tuple

import numpy as np

from .errors import DomainError, RangeError
from .helper import BoundaryCondition
from .specfun import theta2
from .config import SINGULARITY_GUARD

log = logging.getLogger(__name__)

# exp(-x) underflows double precision beyond this
EXP_CUTOFF = 745.0


@dataclass(frozen=True)
class TransverseSpectrumSpec:
    bc: BoundaryCondition
    lam: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.lam) or self.lam <= SINGULARITY_GUARD:
            raise RangeError(f"lambda={self.lam} below the singularity guard {SINGULARITY_GUARD}")

    @property
    def crossover_time(self) -> float:
        """Below this time the Poisson-dual form converges faster."""
        return self.lam**2 / math.pi**2


def _check_time(u: float) -> float:
    if not math.isfinite(u) or u <= 0:
        raise DomainError(f"Euclidean time must be finite and positive, got u={u}")
    return float(u)


def _gaussian_sum(rate: float, n_start: int, n_max: int) -> float:
    """sum_{n=n_start}^{n_max} exp(-rate n^2), truncated where the terms underflow."""
    n_stop = min(n_max, int(math.sqrt(EXP_CUTOFF / rate)) + 1) if rate > 0 else n_max
    if n_stop < n_start:
        return 0.0
    n = np.arange(n_start, n_stop + 1, dtype=float)
    return float(np.sum(np.exp(-rate * n * n)))


def trace_direct(spec: TransverseSpectrumSpec, u: float, n_max: int = 10_000) -> float:
    """Sum over the explicit transverse spectrum exp(-u k_n^2)."""
    u = _check_time(u)
    rate = math.pi**2 * u / spec.lam**2
    if spec.bc is BoundaryCondition.DIRICHLET:
        return _gaussian_sum(rate, 1, n_max)
    if spec.bc is BoundaryCondition.NEUMANN:
        return 1.0 + _gaussian_sum(rate, 1, n_max)
    if spec.bc is BoundaryCondition.PERIODIC:
        return 1.0 + 2.0 * _gaussian_sum(4.0 * rate, 1, n_max)
    # mixed Dirichlet-Neumann: odd squares over 4 lambda^2
    n_stop = min(n_max, int(math.sqrt(EXP_CUTOFF / (rate / 4.0))) + 1)
    n = np.arange(0, n_stop + 1, dtype=float)
    return float(np.sum(np.exp(-rate * (2 * n + 1) ** 2 / 4.0)))


def _dual_sum(lam: float, u: float, scale: float = 1.0) -> float:
    """sum_{n>=1} exp(-scale n^2 lambda^2 / u)."""
    rate = scale * lam**2 / u
    return _gaussian_sum(rate, 1, int(math.sqrt(EXP_CUTOFF / rate)) + 2)


def trace_accelerated(spec: TransverseSpectrumSpec, u: float) -> float:
    """Poisson-resummed trace, fast for u below the crossover time."""
    u = _check_time(u)
    lam = spec.lam
    prefactor = lam / math.sqrt(math.pi * u)
    if spec.bc in (BoundaryCondition.DIRICHLET, BoundaryCondition.NEUMANN):
        edge = -0.5 if spec.bc is BoundaryCondition.DIRICHLET else 0.5
        return 0.5 * prefactor * (1.0 + 2.0 * _dual_sum(lam, u)) + edge
    if spec.bc is BoundaryCondition.PERIODIC:
        return 0.5 * prefactor * (1.0 + 2.0 * _dual_sum(lam, u, 0.25))
    return 0.5 * prefactor * (1.0 + 4.0 * _dual_sum(lam, u, 4.0) - 2.0 * _dual_sum(lam, u))


def trace(spec: TransverseSpectrumSpec, u: float, n_max: int = 10_000) -> float:
    if u <= spec.crossover_time:
        return trace_accelerated(spec, u)
    return trace_direct(spec, u, n_max)


def mixed_trace_theta(lam: float, u: float) -> float:
    """Mixed Dirichlet-Neumann trace as theta_2(0; q) / 2 with q = exp(-pi^2 u / lambda^2)."""
    u = _check_time(u)
    return 0.5 * theta2(0.0, math.exp(-math.pi**2 * u / lam**2)).real


def kink_trace_diff(u: float, m_scale: float = 1.0) -> float:
    """Tr[exp(-u K)] - Tr[exp(-u K0)] of the sine-Gordon kink fluctuation operator."""
    u = _check_time(u)
    return -math.erf(m_scale * math.sqrt(u))


def time_trace_factor(u: float, c_t: float = 1.0) -> float:
    u = _check_time(u)
    return c_t / math.sqrt(4.0 * math.pi * u)


def dirichlet_product_terms(lam1: float, lam2: float, u: float) -> Tuple[float, float, float, float]:
    """Split gamma_D(lambda1) gamma_D(lambda2) into the pieces (a, b, c, d).

    a carries the surface and bulk powers of u, b the single dual sums with one
    constant factor, c the single dual sums with one bulk factor and d the
    product of both dual sums.
    """
    u = _check_time(u)
    TransverseSpectrumSpec(BoundaryCondition.DIRICHLET, lam1)
    TransverseSpectrumSpec(BoundaryCondition.DIRICHLET, lam2)
    root = math.sqrt(4.0 * math.pi * u)
    s1, s2 = _dual_sum(lam1, u), _dual_sum(lam2, u)
    gamma_a = 0.25 - (lam1 + lam2) / (2.0 * root) + lam1 * lam2 / (4.0 * math.pi * u)
    gamma_b = -(lam1 / root) * s1 - (lam2 / root) * s2
    gamma_c = lam1 * lam2 / (2.0 * math.pi * u) * (s1 + s2)
    gamma_d = lam1 * lam2 / (math.pi * u) * s1 * s2
    return gamma_a, gamma_b, gamma_c, gamma_d

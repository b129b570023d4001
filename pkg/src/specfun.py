"""
specfun.py

Complex special functions behind every closed-form correction term: error
function, Ei of imaginary argument, the generalised hypergeometric 1F2,
Gamma, and the Jacobi theta functions theta_2 and theta_3.

All functions are pure; complex numbers are plain Python ``complex`` values.
"""
from dataclasses import dataclass
import cmath
import logging
import math
from typing import Union

import mpmath
import numpy as np
import scipy.special as sc

from .errors import DomainError, PoleError, PrecisionLossError

log = logging.getLogger(__name__)

ComplexValue = complex
Number = Union[int, float, complex]

ERF_SATURATION_RADIUS = 30.0
HYP1F2_ZMAX = 1e4
# escalate 1F2 to extended precision when the largest series term exceeds this multiple of the result
CANCELLATION_LIMIT = 1e8
SQRT_I = cmath.exp(0.25j * math.pi)  # principal branch of sqrt(i)


def _as_finite_complex(z: Number, name: str = "z") -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"{name} has to be finite, got {z}")
    return z


def is_nonpositive_integer(z: Number) -> bool:
    z = complex(z)
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


@dataclass(frozen=True)
class Hyp1F2Params:
    a: complex
    b1: complex
    b2: complex

    def __post_init__(self) -> None:
        for name in ("b1", "b2"):
            if is_nonpositive_integer(getattr(self, name)):
                raise PoleError(f"lower parameter {name}={getattr(self, name)} is a pole of 1F2")


def erf_complex(z: Number) -> ComplexValue:
    """Error function of a complex argument (Faddeeva-based scipy implementation).

    For |z| >= 30 the value is saturated to +-1 inside the sectors |arg(+-z)| < pi/4
    where erf converges; outside them it grows without bound and a DomainError is raised.
    """
    z = _as_finite_complex(z)
    if abs(z) >= ERF_SATURATION_RADIUS:
        if abs(z.real) >= abs(z.imag):
            return complex(math.copysign(1.0, z.real), 0.0)
        raise DomainError(f"erf({z}) overflows: argument outside the saturating sectors")
    value = complex(sc.erf(z))
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise DomainError(f"erf({z}) is not finite")
    return value


def ei_imag(y: Union[float, np.ndarray]) -> Union[ComplexValue, np.ndarray]:
    """Ei(iy) = Ci(y) + i(Si(y) + pi/2) for y > 0; accepts scalars and arrays."""
    y_arr = np.asarray(y, dtype=float)
    if not np.all(np.isfinite(y_arr)) or np.any(y_arr <= 0):
        raise DomainError("ei_imag needs finite y > 0")
    si, ci = sc.sici(y_arr)
    value = ci + 1j * (si + 0.5 * np.pi)
    if np.ndim(y) == 0:
        return complex(value)
    return value


def gamma_fn(s: Number) -> ComplexValue:
    s = _as_finite_complex(s, "s")
    if is_nonpositive_integer(s):
        raise PoleError(f"Gamma has a pole at s={s}")
    return complex(sc.gamma(s))


def _hyp1f2_double(p: Hyp1F2Params, z: complex, max_terms: int = 100_000):
    term = 1.0 + 0j
    total = 1.0 + 0j
    max_term = 1.0
    for k in range(max_terms):
        term *= (p.a + k) / ((p.b1 + k) * (p.b2 + k) * (k + 1)) * z
        total += term
        max_term = max(max_term, abs(term))
        # terms decrease monotonically once k^3 outgrows |z| k
        if abs(term) <= 1e-17 * abs(total) and k * k > abs(z):
            return total, max_term
    raise PrecisionLossError("1F2 series did not terminate", estimate=total, bound=abs(term))


def hyp1f2(p: Hyp1F2Params, z: Number, zmax: float = HYP1F2_ZMAX) -> ComplexValue:
    """Generalised hypergeometric 1F2(a; b1, b2; z).

    Direct Maclaurin series in double precision; when the largest intermediate term
    exceeds 1e8 times the result the value is recomputed by mpmath with enough extra
    working digits to absorb the cancellation.
    """
    z = _as_finite_complex(z)
    if abs(z) > zmax:
        raise DomainError(f"|z|={abs(z):.3g} above the configured 1F2 ceiling {zmax:.3g}")
    if z == 0:
        return 1.0 + 0j
    total, max_term = _hyp1f2_double(p, z)
    if abs(total) > 0 and max_term <= CANCELLATION_LIMIT * abs(total):
        return complex(total)

    lost = math.log10(max_term / max(abs(total), 1e-300))
    dps = int(20 + lost)
    log.debug(f"1F2 at z={z:.4g}: ~{lost:.1f} digits cancel, escalating to {dps} digits")
    # private context, mpmath.mp is shared by every thread
    ctx = mpmath.MPContext()
    ctx.dps = dps
    try:
        value = ctx.hyp1f2(p.a, p.b1, p.b2, z, maxterms=10**6)
    except mpmath.libmp.NoConvergence as err:
        raise PrecisionLossError(
            f"1F2 extended-precision evaluation failed: {err}",
            estimate=complex(total),
            bound=max_term * 1e-16,
        )
    return complex(value)


def _check_nome(q: complex) -> None:
    if not abs(q) < 1:
        raise DomainError(f"theta functions need |q| < 1, got |q|={abs(q)}")


def _theta_term(weight: complex, angle: complex, z: complex) -> complex:
    try:
        term = weight * cmath.cos(angle)
    except OverflowError:
        raise DomainError(f"theta series overflows at z={z}")
    if not (math.isfinite(term.real) and math.isfinite(term.imag)):
        raise DomainError(f"theta series overflows at z={z}")
    return term


def theta3(z: Number, q: Number) -> ComplexValue:
    """theta_3(z; q) = 1 + 2 sum_{n>=1} q^(n^2) cos(2 n z)."""
    z, q = _as_finite_complex(z), _as_finite_complex(q, "q")
    _check_nome(q)
    total = 1.0 + 0j
    n = 1
    while True:
        term = _theta_term(2 * q ** (n * n), 2 * n * z, z)
        total += term
        if abs(term) < 1e-16 * abs(total) or q == 0:
            return total
        n += 1


def theta2(z: Number, q: Number) -> ComplexValue:
    """theta_2(z; q) = 2 q^(1/4) sum_{n>=0} q^(n(n+1)) cos((2n+1) z), principal q^(1/4)."""
    z, q = _as_finite_complex(z), _as_finite_complex(q, "q")
    _check_nome(q)
    if q == 0:
        return 0j
    total = 0j
    n = 0
    while True:
        term = _theta_term(q ** (n * (n + 1)), (2 * n + 1) * z, z)
        total += term
        if abs(term) < 1e-16 * abs(total):
            return 2 * q**0.25 * total
        n += 1

"""
zeta_oracle.py

Independent evaluation of the correction terms straight from the heat-trace
Mellin integrals, used to cross-check every closed form in corrections.py.

For each trace piece g(u) the zeta-regularised energy is

    E = -1/(4 sqrt(pi)) d/ds [ 1/Gamma(s) int_0^inf u^(s-3/2) g(u) erf(sqrt(u)) du ]  at s = 0.

Power-law pieces (the a term) are continued by splitting the integral at u = 1,
subtracting the small-u expansion of erf analytically and integrating the outer
remainder numerically. Shell pieces exp(-a/u) (c and d terms, after rotating
u to the imaginary axis) are written as finite Bessel-K integrals

    int_0^inf u^(z-1) e^(-A/u) erf(sqrt u) du
        = 4/sqrt(pi) A^(nu/2) int_0^1 t^(-nu) K_nu(2 sqrt(A) t) dt,   nu = z + 1/2,

continued to A = a e^(i pi) and evaluated by adaptive quadrature. b shells use the
same integral at z = -1, where it closes to -2 sin^2(y) / y^2; c and d shell
derivatives are central differences in s of the continued bracket.
"""
from dataclasses import dataclass
import cmath
import logging
import math
from typing import Dict, Optional, Tuple, Union

import mpmath
import numpy as np
import scipy.integrate as si
import scipy.special as sc

from .config import DomainConfig, ToleranceConfig
from .corrections import (
    CorrectionBreakdown,
    ShellDerivatives,
    b_bracket,
    classical_energy,
    series_pieces,
    surface_pieces,
    CONST_COEFFICIENT,
    LINEAR_COEFFICIENT,
    BULK_COEFFICIENT,
)
from .errors import DomainError
from .factory import CompositionFactory
from .helper import BoundaryCondition, CompositionRule, TermName
from .specfun import Hyp1F2Params, gamma_fn, hyp1f2

log = logging.getLogger(__name__)

EULER_GAMMA = float(np.euler_gamma)
QUAD_RELATIVE_TARGET = 1e-9
# piece name -> power of u of the surface and bulk parts of the Dirichlet trace product
A_PIECES = {"const": 0.0, "lin1": -0.5, "lin2": -0.5, "bulk": -1.0}


@dataclass(frozen=True)
class MellinSample:
    s: complex
    value: complex
    est_error: float


@dataclass(frozen=True)
class ShellParams:
    """Which shell or piece of a term: lam holds (lambda1, lambda2); n an index or index pair."""

    lam: Tuple[float, float]
    n: Union[int, Tuple[int, int]] = 1
    axis: int = 1
    piece: str = "const"

    @property
    def a(self) -> float:
        if isinstance(self.n, tuple):
            return (self.n[0] * self.lam[0]) ** 2 + (self.n[1] * self.lam[1]) ** 2
        return (self.n * self.lam[self.axis - 1]) ** 2


# ---------------------------------------------------------------- a term


def _a_coefficient(params: ShellParams) -> float:
    lam1, lam2 = params.lam
    return {
        "const": 0.25,
        "lin1": -lam1 / (2.0 * math.sqrt(4.0 * math.pi)),
        "lin2": -lam2 / (2.0 * math.sqrt(4.0 * math.pi)),
        "bulk": lam1 * lam2 / (4.0 * math.pi),
    }[params.piece]


def _inner_remainder(w: complex) -> complex:
    """int_0^1 u^(w-1) [erf(sqrt u) - 2/sqrt(pi) (u^(1/2) - u^(3/2)/3)] du, termwise."""
    total = 0j
    for k in range(2, 60):
        total += (-1) ** k / (math.factorial(k) * (2 * k + 1) * (w + k + 0.5))
    return 2.0 / math.sqrt(math.pi) * total


def _outer_remainder(w: complex) -> Tuple[complex, float]:
    """int_1^inf u^(w-1) erfc(sqrt u) du, mapped to (0, 1] by u = 1/v."""
    value, error = mpmath.quad(lambda v: v ** (-w - 1) * mpmath.erfc(1 / mpmath.sqrt(v)), [0, 1], error=True)
    return complex(value), float(error)


def _explicit_pieces():
    """(numerator, pole offset) of the analytically integrated parts; each is numerator / (w + offset)."""
    return [
        (2.0 / math.sqrt(math.pi), 0.5),
        (-2.0 / (3.0 * math.sqrt(math.pi)), 1.5),
        (-1.0, 0.0),
    ]


def _power_mellin(s: complex, power: float) -> Tuple[complex, float]:
    """Continued int_0^inf u^(s-3/2+power) erf(sqrt u) du / Gamma(s)."""
    w = s - 0.5 + power
    outer, error = _outer_remainder(w)
    total = _inner_remainder(w) - outer
    for numerator, offset in _explicit_pieces():
        total += numerator / (w + offset)
    return total / gamma_fn(s), error / abs(gamma_fn(s))


def _power_sderiv(power: float) -> Tuple[float, float]:
    """d/ds at s = 0 of _power_mellin; pole pieces contribute residue * Euler gamma."""
    w0 = power - 0.5
    outer, error = _outer_remainder(w0)
    total = _inner_remainder(w0) - outer
    for numerator, offset in _explicit_pieces():
        if abs(w0 + offset) < 1e-12:
            total += numerator * EULER_GAMMA
        else:
            total += numerator / (w0 + offset)
    return total.real, error


# ---------------------------------------------------------------- shell terms


def _bessel_k_integral(nu: complex, a: float) -> Tuple[complex, float]:
    """int_0^1 t^(-nu) K_nu(2 sqrt(A) t) dt at A = a e^(i pi)."""
    root = 1j * math.sqrt(a)
    pieces = max(1, int(math.ceil(math.sqrt(a))))
    nodes = [float(t) for t in np.linspace(0.0, 1.0, pieces + 1)]
    nu = complex(nu)
    if nu.imag == 0.0:
        order = nu.real

        def integrand(t: float) -> complex:
            return t ** (-order) * sc.kv(order, 2.0 * root * t)

        re, re_error = si.quad(lambda t: integrand(t).real, 0.0, 1.0, points=nodes[1:-1] or None,
                               limit=400, epsabs=1e-14, epsrel=1e-12)
        im, im_error = si.quad(lambda t: integrand(t).imag, 0.0, 1.0, points=nodes[1:-1] or None,
                               limit=400, epsabs=1e-14, epsrel=1e-12)
        return complex(re, im), re_error + im_error
    value, error = mpmath.quad(lambda t: t ** (-nu) * mpmath.besselk(nu, 2 * root * t), nodes, error=True)
    return complex(value), float(error)


def continued_shell_mellin(z: complex, a: float) -> Tuple[complex, float]:
    """int_0^inf u^(z-1) e^(-A/u) erf(sqrt u) du continued to A = -a; needs Re z < 1."""
    nu = z + 0.5
    if not complex(nu).real < 0.5:
        raise DomainError(f"shell Mellin integral converges only for Re z < 1, got z={z}")
    integral, error = _bessel_k_integral(nu, a)
    prefactor = 4.0 / math.sqrt(math.pi) * a ** (nu / 2) * cmath.exp(0.5j * math.pi * nu)
    return prefactor * integral, abs(prefactor) * error


def b_shell_mellin_closed_form(s: complex, a: float) -> complex:
    """continued_shell_mellin(s - 1, a) through its two 1F2 series."""
    z = s - 1
    a_power = a ** (z + 0.5) * cmath.exp(1j * math.pi * (z + 0.5))
    first = 2.0 / math.sqrt(math.pi) * a_power * gamma_fn(-z - 0.5) * hyp1f2(
        Hyp1F2Params(0.5, 1.5, z + 1.5), -a
    )
    second = -gamma_fn(z + 0.5) / (z * math.sqrt(math.pi)) * hyp1f2(Hyp1F2Params(-z, 0.5 - z, 1 - z), -a)
    return first + second


def shell_bracket(s: complex, a: float) -> Tuple[complex, float]:
    """B(s; a) of the c and d terms from the Bessel-K integral, valid for Re s < 3/2."""
    value, error = continued_shell_mellin(s - 1.5, a)
    scale = -0.5 * math.sqrt(math.pi) * cmath.exp(-0.5j * math.pi * s) / gamma_fn(s)
    return scale * value, abs(scale) * error


def shell_sderiv(a: float, s_step: float = 1e-3) -> Tuple[float, float]:
    """Re B'(0; a) from central differences of shell_bracket at h and h/2, Richardson extrapolated.

    The error estimate is the Richardson spread plus the quadrature error carried through the difference.
    """

    def central(h: float) -> Tuple[complex, float]:
        plus, plus_error = shell_bracket(h, a)
        minus, minus_error = shell_bracket(-h, a)
        return (plus - minus) / (2 * h), (plus_error + minus_error) / (2 * h)

    (d1, e1), (d2, e2) = central(s_step), central(s_step / 2)
    value = (4 * d2 - d1) / 3
    return value.real, abs(value.real - d2.real) / 3 + (4 * e2 + e1) / 3


def b_shell_energy(lam: float, n: int) -> Tuple[float, float]:
    """Energy of b shell n of one axis, lam Re M(-1; -(n lam)^2) / (8 pi), from the Bessel-K route."""
    value, error = continued_shell_mellin(-1.0, (n * lam) ** 2)
    scale = lam / (8.0 * math.pi)
    return scale * value.real, scale * error


def b_shell_energy_closed_form(lam: float, n: np.ndarray) -> np.ndarray:
    """b_shell_energy summed in closed form: M(-1; a) = (1 - e^(-2 sqrt a)) / a, so Re M(-1; -y^2) = -2 sin^2(y) / y^2."""
    n = np.asarray(n, dtype=float)
    return -2.0 * np.sin(n * lam) ** 2 / (8.0 * math.pi * lam * n**2)


def oracle_b_single(lam: float, shell_cutoff: float = 12.0, max_shells: int = 64) -> float:
    """b correction of one Dirichlet axis through the continued shell Mellin integral.

    Shells with n lam up to shell_cutoff (at most max_shells) come from quadrature; the rest from
    sum_n sin^2(n x) / n^2 = x (pi - x) / 2 on [0, pi], periodic in x with period pi.
    """
    if not lam > 0:
        raise DomainError(f"lambda has to be positive, got {lam}")
    head = np.arange(1, min(max_shells, int(shell_cutoff / lam)) + 1)
    r = lam % math.pi
    total = -r * (math.pi - r) / (8.0 * math.pi * lam)
    if len(head):
        total -= float(np.sum(b_shell_energy_closed_form(lam, head)))
        total += sum(b_shell_energy(lam, int(n))[0] for n in head)
    return total


def ei_imag_contour(y: float) -> complex:
    """Ei(iy) = i pi - i e^(iy) int_0^inf e^(-y v) / (1 + i v) dv."""
    re, _ = si.quad(lambda v: math.exp(-y * v) / (1.0 + v * v), 0.0, math.inf, epsabs=1e-14, epsrel=1e-13)
    im, _ = si.quad(lambda v: -v * math.exp(-y * v) / (1.0 + v * v), 0.0, math.inf, epsabs=1e-14, epsrel=1e-13)
    return 1j * math.pi - 1j * cmath.exp(1j * y) * complex(re, im)


def b_bracket_contour(y: float) -> float:
    """The Ei bracket of the closed b form with Ei from its contour integral."""
    value = 2j * ei_imag_contour(2 * y) - 1j * cmath.exp(-2j * y) * ei_imag_contour(4 * y)
    return value.real - math.log(y) * math.sin(2 * y)


class QuadratureShells(ShellDerivatives):
    """Shell derivatives by quadrature inside near_radius, closed form beyond."""

    def __init__(self, tolerances: Optional[ToleranceConfig] = None, near_radius: float = 12.0) -> None:
        super().__init__(tolerances, near_radius=near_radius, near_cap=10_000)

    def near_value(self, a: float) -> float:
        return shell_sderiv(a, self.tol.s_step)[0]


class QuadratureBracket:
    """Ei bracket by contour quadrature for y up to y_max, closed form beyond."""

    def __init__(self, y_max: float) -> None:
        self.y_max = y_max

    def __call__(self, y: np.ndarray) -> np.ndarray:
        values = b_bracket(y)
        for idx in np.flatnonzero(y <= self.y_max):
            values[idx] = b_bracket_contour(float(y[idx]))
        return values


# ---------------------------------------------------------------- public interface


def mellin_term(s: complex, term: TermName, params: ShellParams) -> MellinSample:
    """Continued Mellin transform of one trace piece at generic s.

    a: the power-law piece named by params.piece, divided by Gamma(s).
    b: the shell integral with one dual sum factor, int u^(s-2) e^(a/u) erf.
    c, d: the bracket B(s; a) of the shell.
    """
    s = complex(s)
    if term is TermName.A:
        value, error = _power_mellin(s, A_PIECES[params.piece])
        value *= _a_coefficient(params)
        error *= abs(_a_coefficient(params))
    elif term is TermName.B:
        value, error = continued_shell_mellin(s - 1, params.a)
    else:
        value, error = shell_bracket(s, params.a)
    if error > QUAD_RELATIVE_TARGET * max(abs(value), 1e-300):
        log.warning(f"Mellin {term.value} at s={s}: quadrature error {error:.3g} above target")
    return MellinSample(s=s, value=value, est_error=error)


def zeta_sderiv_at_zero(term: TermName, params: ShellParams) -> Tuple[float, float]:
    """Energy contribution (dimensionless) of one piece or shell, with its error estimate."""
    lam1, lam2 = params.lam
    if term is TermName.A:
        deriv, error = _power_sderiv(A_PIECES[params.piece])
        scale = -_a_coefficient(params) / (4.0 * math.sqrt(math.pi))
        return scale * deriv, abs(scale) * error
    if term is TermName.B:
        if isinstance(params.n, tuple):
            raise DomainError("b shells carry a single index")
        # 1/Gamma(s) vanishes at s = 0, so the derivative is the continued integral itself
        return b_shell_energy(params.lam[params.axis - 1], params.n)
    prefactor = 2.0 * lam1 * lam2 / math.pi**2
    deriv, error = shell_sderiv(params.a)
    return prefactor * deriv, prefactor * error


def oracle_a_pieces(lam1: float, lam2: float) -> Dict[str, float]:
    return {piece: zeta_sderiv_at_zero(TermName.A, ShellParams((lam1, lam2), piece=piece))[0] for piece in A_PIECES}


def oracle_total(bc1: BoundaryCondition, bc2: BoundaryCondition, cfg: DomainConfig,
                 shell_cutoff: float = 12.0, tolerances: Optional[ToleranceConfig] = None) -> CorrectionBreakdown:
    """Total correction with every shell up to radius shell_cutoff taken from quadrature.

    The b term comes from oracle_b_single; shells beyond the cut-off and the
    series bookkeeping of c and d are shared with corrections.py.
    """
    tolerances = tolerances or ToleranceConfig()
    composition = CompositionFactory.create(bc1, bc2, CompositionRule(tolerances.composition_rule))
    a_pieces = oracle_a_pieces(cfg.lambda1, cfg.lambda2)
    pieces = surface_pieces(composition, cfg, tolerances)
    # the Dirichlet a pieces carry weight -1 on const, lin1 and lin2
    pieces["const_term"] = -composition.const * a_pieces["const"]
    pieces["lin_l1"] *= a_pieces["lin1"] / (-LINEAR_COEFFICIENT * cfg.lambda1)
    pieces["lin_l2"] *= a_pieces["lin2"] / (-LINEAR_COEFFICIENT * cfg.lambda2)
    pieces["bulk"] = a_pieces["bulk"]

    series, _ = series_pieces(
        composition, cfg.lambda1, cfg.lambda2, tolerances,
        shells=QuadratureShells(tolerances, near_radius=shell_cutoff),
        b_single=lambda lam, tol: oracle_b_single(lam, shell_cutoff),
    )
    pieces.update(series)
    return CorrectionBreakdown.from_dimensionless(pieces, cfg.energy_unit, classical_energy(cfg))


def coefficient_check() -> Dict[str, Tuple[float, float]]:
    """Oracle versus closed-form coefficients of the a term at lambda1 = lambda2 = 1."""
    oracle = oracle_a_pieces(1.0, 1.0)
    return {
        "const": (oracle["const"], -CONST_COEFFICIENT),
        "lin1": (oracle["lin1"], -LINEAR_COEFFICIENT),
        "bulk": (oracle["bulk"], BULK_COEFFICIENT),
    }

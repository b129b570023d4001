"""
corrections.py

Closed-form one-loop energy corrections of the sine-Gordon kink in an l1 x l2
box with Dirichlet walls, split into the four pieces of the transverse trace
product, and their composition into the other boundary-condition pairs.

All de_* functions work in units hbar = m = c = 1 and take the dimensionless
sizes lambda_i = m * l_i. assemble_total converts to physical units.

The c and d pieces need the s-derivative at s = 0 of

    B(s; a) = i^s a^(s-1) Gamma(1-s)/Gamma(s) 1F2(1/2; 3/2, s; -a)
              + i^(-s) / ((2s-3)(s-1)) 1F2(3/2-s; 2-s, 5/2-s; -a)

for every shell a = n^2 lambda^2 (c) or n1^2 lambda1^2 + n2^2 lambda2^2 (d).
Near shells take it from central differences of B with Richardson extrapolation;
far shells use the equivalent closed form

    Re B'(0; a) = pi^2/(4a) [Y0(x) H1(x) - Y1(x) H0(x)],   x = 2 sqrt(a),

with Bessel Y and Struve H, vectorised over numpy arrays.
"""
from dataclasses import dataclass, fields
import cmath
import logging
import math
from typing import Callable, Dict, Optional, Tuple

import numpy as np
import scipy.integrate as si
import scipy.special as sc

from .config import DomainConfig, ToleranceConfig, SINGULARITY_GUARD
from .errors import KinkBoxError, PrecisionLossError, RangeError
from .factory import Composition, CompositionFactory
from .helper import BoundaryCondition, CompositionRule
from .specfun import Hyp1F2Params, HYP1F2_ZMAX, ei_imag, gamma_fn, hyp1f2

log = logging.getLogger(__name__)

BULK_COEFFICIENT = 5.0 / (72.0 * math.pi**2)
CONST_COEFFICIENT = 1.0 / (4.0 * math.pi)
LINEAR_COEFFICIENT = 1.0 / (8.0 * math.pi)
# at most this many of the smallest shells go through the finite-difference route
FD_SHELL_CAP = 256


def _check_lambda(lam: float) -> None:
    if not math.isfinite(lam) or lam <= SINGULARITY_GUARD:
        raise RangeError(f"lambda={lam} is below the singularity guard {SINGULARITY_GUARD}")


def classical_energy(cfg: DomainConfig) -> float:
    """Static kink energy A * 8m * l1 * l2; the only place A appears."""
    return cfg.A * 8.0 * cfg.m * cfg.l1 * cfg.l2


def de_a_pieces(lam1: float, lam2: float) -> Dict[str, float]:
    _check_lambda(lam1)
    _check_lambda(lam2)
    return {
        "const": -CONST_COEFFICIENT,
        "lin1": -LINEAR_COEFFICIENT * lam1,
        "lin2": -LINEAR_COEFFICIENT * lam2,
        "bulk": BULK_COEFFICIENT * lam1 * lam2,
    }


def de_a(lam1: float, lam2: float) -> float:
    return sum(de_a_pieces(lam1, lam2).values())


# ---------------------------------------------------------------- b term


def b_bracket(y: np.ndarray) -> np.ndarray:
    """Real part of 2i Ei(2iy) - i e^(-2iy) Ei(4iy) + ln(1/y) sin(2y)."""
    y = np.asarray(y, dtype=float)
    value = 2j * ei_imag(2 * y) - 1j * np.exp(-2j * y) * ei_imag(4 * y)
    return value.real - np.log(y) * np.sin(2 * y)


def _b_tail_bound(lam: float, n: int) -> float:
    """Bound on what the large-y model of the bracket leaves out beyond shell n."""
    trivial = (math.log(lam * n) + 1.0) / (8.0 * math.pi * lam * n)
    abel = math.inf
    if abs(math.sin(lam)) > 0 and lam * (n + 1) > math.exp(0.5):
        abel = math.log(lam * (n + 1)) / (8.0 * math.pi * lam * (n + 1) ** 2) / abs(math.sin(lam))
    return min(trivial, abel) + 1.0 / (16.0 * math.pi * lam**2 * n**2)


def _b_tail_model(lam: float, n: int) -> float:
    """sum_{k>n} [-2 pi + pi cos(2 lam k)] / (8 pi lam k^2), in closed form."""
    smooth = -sc.polygamma(1, n + 1) / (4.0 * lam)
    theta = (2.0 * lam) % (2.0 * math.pi)
    clausen_full = math.pi**2 / 6.0 - math.pi * theta / 2.0 + theta**2 / 4.0
    k = np.arange(1, n + 1, dtype=float)
    clausen_head = float(np.sum(np.cos(2.0 * lam * k) / k**2))
    return float(smooth) + (clausen_full - clausen_head) / (8.0 * lam)


def de_b_single(lam: float, tol: float = 1e-8, n_ceiling: int = 4_000_000,
                bracket: Callable[[np.ndarray], np.ndarray] = b_bracket) -> float:
    """b correction of one Dirichlet axis of size lam.

    sum_n bracket(lam n) / (8 pi lam n^2); shells beyond the cut-off use the
    large-y form of the bracket summed in closed form.
    """
    _check_lambda(lam)
    n = max(64, int(math.ceil(10.0 / lam)))
    while _b_tail_bound(lam, n) > tol and n < n_ceiling:
        n = min(2 * n, n_ceiling)
    bound = _b_tail_bound(lam, n)

    k = np.arange(1, n + 1, dtype=float)
    head = float(np.sum(bracket(lam * k) / k**2)) / (8.0 * math.pi * lam)
    estimate = head + _b_tail_model(lam, n)
    if bound > tol:
        raise PrecisionLossError(f"b series at lambda={lam} hit the shell ceiling {n_ceiling}", estimate, bound)
    return estimate


def de_b(lam1: float, lam2: float, tol: float = 1e-8, n_ceiling: int = 4_000_000) -> float:
    return de_b_single(lam1, tol / 2, n_ceiling) + de_b_single(lam2, tol / 2, n_ceiling)


# ---------------------------------------------------------------- c and d terms


def c_bracket(s: complex, a: float, zmax: float = HYP1F2_ZMAX) -> complex:
    i_s = cmath.exp(0.5j * math.pi * s)
    gamma_ratio = gamma_fn(1 - s) / gamma_fn(s)
    first = i_s * a ** (s - 1) * gamma_ratio * hyp1f2(Hyp1F2Params(0.5, 1.5, s), -a, zmax)
    second = hyp1f2(Hyp1F2Params(1.5 - s, 2 - s, 2.5 - s), -a, zmax) / (i_s * (2 * s - 3) * (s - 1))
    return first + second


def bracket_sderiv(a: float, s_step: float = 1e-3, tol: float = 1e-8, zmax: float = HYP1F2_ZMAX) -> float:
    """Re dB/ds at s = 0 from central differences at h, h/2, h/4 with Richardson extrapolation."""

    def central(h: float) -> complex:
        return (c_bracket(h, a, zmax) - c_bracket(-h, a, zmax)) / (2 * h)

    d1, d2, d4 = central(s_step), central(s_step / 2), central(s_step / 4)
    coarse = (4 * d2 - d1) / 3
    fine = (4 * d4 - d2) / 3
    spread = abs(fine - coarse)
    if spread > 10 * tol * max(1.0, abs(fine)):
        raise PrecisionLossError(f"Richardson estimates disagree for shell a={a:.6g}", fine.real, spread)
    return fine.real


def closed_form_sderiv(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    x = 2.0 * np.sqrt(a)
    return np.pi**2 / (4.0 * a) * (sc.y0(x) * sc.struve(1, x) - sc.y1(x) * sc.struve(0, x))


def _sderiv_envelope(lam: float, n: float) -> float:
    """Large-shell envelope of |Re B'(0; (n lam)^2)|."""
    r = n * lam
    return 0.5 * math.sqrt(math.pi) * r**-2.5 * (1.0 + 1.0 / r)


class ShellDerivatives:
    """Re B'(0; a) for sorted shells, finite differences for the nearest ones, closed form beyond."""

    def __init__(self, tolerances: Optional[ToleranceConfig] = None, near_radius: Optional[float] = None,
                 near_cap: int = FD_SHELL_CAP) -> None:
        self.tol = tolerances or ToleranceConfig()
        self.near_radius = self.tol.switch_radius if near_radius is None else near_radius
        self.near_cap = near_cap
        self._cache: Dict[float, float] = {}

    def near_value(self, a: float) -> float:
        return bracket_sderiv(a, self.tol.s_step, self.tol.series_tol, self.tol.hyp1f2_zmax)

    def __call__(self, a_sorted: np.ndarray) -> np.ndarray:
        values = closed_form_sderiv(a_sorted)
        near = np.flatnonzero(np.sqrt(a_sorted) <= self.near_radius)[: self.near_cap]
        for idx in near:
            a = float(a_sorted[idx])
            if a not in self._cache:
                self._cache[a] = self.near_value(a)
            values[idx] = self._cache[a]
        return values


def _axis_shell_sum(lam: float, tol: float, shells: ShellDerivatives, n_ceiling: int) -> float:
    def bound(n: int) -> float:
        trivial = 0.5 * math.sqrt(math.pi) * lam**-2.5 * (2.0 / 3.0) * n**-1.5 * (1.0 + 1.0 / (n * lam))
        abel = math.inf
        if abs(math.sin(lam)) > 1e-12:
            abel = 2.0 * _sderiv_envelope(lam, n + 1) / abs(math.sin(lam))
        return min(trivial, abel)

    n = max(16, int(math.ceil(shells.tol.switch_radius / lam)) + 1)
    while bound(n) > tol and n < n_ceiling:
        n = min(2 * n, n_ceiling)
    k = np.arange(1, n + 1, dtype=float)
    total = float(np.sum(shells((lam * k) ** 2)))
    if bound(n) > tol:
        raise PrecisionLossError(f"c series at lambda={lam} hit the shell ceiling {n_ceiling}", total, bound(n))
    return total


def de_c_axis(lam: float, area: float, tol: float = 1e-8,
              tolerances: Optional[ToleranceConfig] = None,
              shells: Optional[ShellDerivatives] = None) -> float:
    """One axis of the c correction, (2 area / pi^2) sum_n Re B'(0; n^2 lam^2)."""
    _check_lambda(lam)
    tolerances = tolerances or ToleranceConfig(series_tol=tol)
    shells = shells or ShellDerivatives(tolerances)
    prefactor = 2.0 * area / math.pi**2
    return prefactor * _axis_shell_sum(lam, tol / prefactor, shells, tolerances.n_ceiling)


def de_c(lam1: float, lam2: float, s_step: float = 1e-3, tol: float = 1e-8,
         tolerances: Optional[ToleranceConfig] = None,
         shells: Optional[ShellDerivatives] = None) -> float:
    """c correction, (2 lam1 lam2 / pi^2) sum_n Re[B'(0; n^2 lam1^2) + B'(0; n^2 lam2^2)]."""
    _check_lambda(lam1)
    _check_lambda(lam2)
    tolerances = tolerances or ToleranceConfig(s_step=s_step, series_tol=tol)
    shells = shells or ShellDerivatives(tolerances)
    area = lam1 * lam2
    return (de_c_axis(lam1, area, tol / 2, tolerances, shells)
            + de_c_axis(lam2, area, tol / 2, tolerances, shells))


def lattice_shells(lam1: float, lam2: float, radius: float) -> np.ndarray:
    """a = n1^2 lam1^2 + n2^2 lam2^2 for n1, n2 >= 1 inside the radius, in ascending order."""
    n1 = np.arange(1, int(radius / lam1) + 1, dtype=float)
    n2 = np.arange(1, int(radius / lam2) + 1, dtype=float)
    g1, g2 = np.meshgrid(n1, n2, indexing="ij")
    g1, g2 = g1.ravel(), g2.ravel()
    a = (g1 * lam1) ** 2 + (g2 * lam2) ** 2
    inside = a <= radius**2
    g1, g2, a = g1[inside], g2[inside], a[inside]
    order = np.lexsort((g2, g1, a))
    return a[order]


def _radial_sderiv(r: float) -> float:
    return float(closed_form_sderiv(np.array([r * r]))[0])


def lattice_tail(lam1: float, lam2: float, radii: np.ndarray) -> np.ndarray:
    """Continuum estimate of the lattice sum of Re B'(0; r^2) over n1, n2 >= 1 beyond each radius.

    Quarter-plane area term (pi/2)/(lam1 lam2) int_R^inf f r dr = -pi^2/(8 R lam1 lam2) int_0^2R Y0,
    minus the half-weighted axes (1/(2 lam1) + 1/(2 lam2)) int_R^inf f dr.
    """
    radii = np.asarray(radii, dtype=float)
    _, y0_integral = sc.itj0y0(2.0 * radii)
    area = -(math.pi**2) * y0_integral / (8.0 * radii * lam1 * lam2)

    top = float(radii.max())
    beyond, _ = si.quad(_radial_sderiv, top, math.inf, limit=400, epsabs=1e-12)
    lo = float(radii.min())
    count = int(min(400_001, max(1025, (top - lo) / 0.01 + 2)))
    grid = np.linspace(lo, top, count)
    running = si.cumulative_trapezoid(closed_form_sderiv(grid**2), grid, initial=0.0)
    edge = np.interp(radii, grid, beyond + running[-1] - running)
    return area - (0.5 / lam1 + 0.5 / lam2) * edge


def _windowed_estimate(a_sorted: np.ndarray, values: np.ndarray, radius: float, lam1: float, lam2: float) -> float:
    """Mean over radii in [radius/2, radius] of the shell partial sum plus its continuum tail."""
    partial = np.concatenate(([0.0], np.cumsum(values)))
    window = np.linspace(radius / 2.0, radius, 257)
    idx = np.searchsorted(np.sqrt(a_sorted), window, side="right")
    return float(np.mean(partial[idx] + lattice_tail(lam1, lam2, window)))


def de_d(lam1: float, lam2: float, s_step: float = 1e-3, tol: float = 1e-5,
         tolerances: Optional[ToleranceConfig] = None,
         shells: Optional[ShellDerivatives] = None) -> float:
    """d correction, (2 lam1 lam2 / pi^2) sum_{n1,n2} Re B'(0; n1^2 lam1^2 + n2^2 lam2^2).

    The double series converges only conditionally; it is summed in ascending
    shells, the part beyond each radius is replaced by its continuum integral and
    the result is averaged over a radial window. The radius doubles until two
    consecutive window means agree within tol.
    """
    _check_lambda(lam1)
    _check_lambda(lam2)
    tolerances = tolerances or ToleranceConfig(s_step=s_step, lattice_tol=tol)
    shells = shells or ShellDerivatives(tolerances)
    prefactor = 2.0 * lam1 * lam2 / math.pi**2

    radius = max(40.0, 16.0 * max(lam1, lam2))
    # keep the first pass small when the lattice is fine
    radius = min(radius, max(math.sqrt(4.0 * lam1 * lam2 * 2e4 / math.pi), 2.0 * math.hypot(lam1, lam2)))
    previous = None
    while True:
        if math.pi * radius**2 / (4.0 * lam1 * lam2) > tolerances.n_ceiling:
            bound = math.inf if previous is None else prefactor * abs(previous[0] - previous[1])
            estimate = math.nan if previous is None else prefactor * previous[0]
            raise PrecisionLossError(f"d lattice at ({lam1}, {lam2}) exceeds {tolerances.n_ceiling} shells", estimate, bound)
        a = lattice_shells(lam1, lam2, radius)
        estimate = _windowed_estimate(a, shells(a), radius, lam1, lam2)
        if previous is not None:
            change = abs(estimate - previous[0])
            log.debug(f"d lattice radius {radius:.4g}: {len(a)} shells, change {prefactor * change:.3g}")
            if prefactor * change <= tol:
                return prefactor * estimate
            previous = (estimate, previous[0])
        else:
            previous = (estimate, math.inf)
        radius *= 2.0


# ---------------------------------------------------------------- composition


@dataclass(frozen=True)
class CorrectionBreakdown:
    """Per-term corrections in physical energy units (hbar m c times the dimensionless value).

    A term whose series missed its tolerance is nan, and so are both totals.
    """

    const_term: float
    lin_l1: float
    lin_l2: float
    bulk: float
    b_term: float
    c_term: float
    d_term: float
    total: float
    dimensionless_total: float
    energy_unit: float
    classical: float

    TERMS = ("const_term", "lin_l1", "lin_l2", "bulk", "b_term", "c_term", "d_term")

    @classmethod
    def from_dimensionless(cls, pieces: Dict[str, float], energy_unit: float, classical: float) -> "CorrectionBreakdown":
        total = sum(pieces[name] for name in cls.TERMS)
        physical = {name: energy_unit * pieces[name] for name in cls.TERMS}
        return cls(
            **physical,
            total=energy_unit * total,
            dimensionless_total=total,
            energy_unit=energy_unit,
            classical=classical,
        )

    def dimensionless(self) -> Dict[str, float]:
        values = {name: getattr(self, name) / self.energy_unit for name in self.TERMS}
        values["total"] = self.dimensionless_total
        return values

    def as_dict(self) -> Dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def surface_pieces(composition: Composition, cfg: DomainConfig, tolerances: ToleranceConfig) -> Dict[str, float]:
    """Constant, linear and bulk pieces of a composition; these need no series."""
    lam1, lam2 = cfg.lambda1, cfg.lambda2
    _check_lambda(lam1)
    _check_lambda(lam2)
    # the printed D x P surface term reads hbar m c l2 / 8pi literally, i.e. lambda2 / m
    kappa = 1.0 / cfg.m if tolerances.literal_mixed_dp else 1.0
    kappa1 = kappa if 1 in composition.kappa_axes else 1.0
    kappa2 = kappa if 2 in composition.kappa_axes else 1.0
    return {
        "const_term": composition.const * CONST_COEFFICIENT,
        "lin_l1": composition.lin1 * kappa1 * LINEAR_COEFFICIENT * lam1,
        "lin_l2": composition.lin2 * kappa2 * LINEAR_COEFFICIENT * lam2,
        "bulk": BULK_COEFFICIENT * lam1 * lam2,
    }


def series_pieces(composition: Composition, lam1: float, lam2: float, tolerances: ToleranceConfig,
                  shells: Optional[ShellDerivatives] = None,
                  b_single: Optional[Callable[[float, float], float]] = None,
                  strict: bool = True) -> Tuple[Dict[str, float], Dict[str, KinkBoxError]]:
    """b, c and d pieces of a composition; with strict=False a series that misses its tolerance becomes nan."""
    shells = shells or ShellDerivatives(tolerances)
    if b_single is None:
        def b_single(lam: float, tol: float) -> float:
            return de_b_single(lam, tol, tolerances.n_ceiling)
    lams = (lam1, lam2)
    area = lam1 * lam2

    def b_term() -> float:
        tol = tolerances.series_tol / max(1, len(composition.b_terms))
        return sum(w * b_single(k * lams[axis - 1], tol) for w, axis, k in composition.b_terms)

    def c_term() -> float:
        tol = tolerances.series_tol / max(1, len(composition.c_terms))
        return sum(w * de_c_axis(k * lams[axis - 1], area, tol, tolerances, shells) for w, axis, k in composition.c_terms)

    def d_term() -> float:
        return sum(w * de_d(f1 * lam1, f2 * lam2, tol=tolerances.lattice_tol, tolerances=tolerances, shells=shells)
                   for w, f1, f2 in composition.d_terms)

    pieces: Dict[str, float] = {}
    failures: Dict[str, KinkBoxError] = {}
    for name, evaluate in (("b_term", b_term), ("c_term", c_term), ("d_term", d_term)):
        try:
            pieces[name] = float(evaluate())
        except PrecisionLossError as err:
            if strict:
                raise
            log.warning(f"{name} at lambda=({lam1:.6g}, {lam2:.6g}) failed with error of type {type(err).__name__}: {err}")
            pieces[name] = math.nan
            failures[name] = err
    return pieces, failures


def _assemble(bc1: BoundaryCondition, bc2: BoundaryCondition, cfg: DomainConfig,
              tolerances: Optional[ToleranceConfig], strict: bool) -> Tuple[CorrectionBreakdown, Dict[str, KinkBoxError]]:
    tolerances = tolerances or ToleranceConfig()
    composition = CompositionFactory.create(bc1, bc2, CompositionRule(tolerances.composition_rule))
    lam1, lam2 = cfg.lambda1, cfg.lambda2
    pieces = surface_pieces(composition, cfg, tolerances)
    series, failures = series_pieces(composition, lam1, lam2, tolerances, strict=strict)
    pieces.update(series)
    log.debug(f"({bc1.value}, {bc2.value}) at lambda=({lam1:.6g}, {lam2:.6g}): {pieces}")
    return CorrectionBreakdown.from_dimensionless(pieces, cfg.energy_unit, classical_energy(cfg)), failures


def assemble_total(bc1: BoundaryCondition, bc2: BoundaryCondition, cfg: DomainConfig,
                   tolerances: Optional[ToleranceConfig] = None) -> CorrectionBreakdown:
    breakdown, _ = _assemble(bc1, bc2, cfg, tolerances, strict=True)
    return breakdown


def assemble_partial(bc1: BoundaryCondition, bc2: BoundaryCondition, cfg: DomainConfig,
                     tolerances: Optional[ToleranceConfig] = None) -> Tuple[CorrectionBreakdown, Dict[str, KinkBoxError]]:
    """assemble_total that keeps the exact pieces when a series fails; failed terms are nan."""
    return _assemble(bc1, bc2, cfg, tolerances, strict=False)

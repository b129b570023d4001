"""
verification.py

Self-checks of the numerics: special-function identities, trace equivalences,
closed forms against the Mellin oracle and the qualitative behaviour of the
corrections. "fast" runs in seconds; "full" adds the end-to-end oracle totals,
the printed b form against its Mellin continuation (a known mismatch, reported
as a failure), the bulk limit, the quasiperiod scan and the envelope fit.
"""
from dataclasses import dataclass
import logging
import math
from typing import List

import numpy as np

from . import corrections
from .config import DomainConfig, ToleranceConfig
from .envelope_fit import BEnvelopeFit, local_maxima
from .errors import KinkBoxError
from .heat_traces import TransverseSpectrumSpec, mixed_trace_theta, trace_accelerated, trace_direct
from .helper import BoundaryCondition, TermName
from .specfun import erf_complex, gamma_fn, theta2, theta3
from . import zeta_oracle
from .zeta_oracle import ShellParams

log = logging.getLogger(__name__)

D = BoundaryCondition.DIRICHLET
N = BoundaryCondition.NEUMANN
P = BoundaryCondition.PERIODIC
M = BoundaryCondition.MIXED_DN


@dataclass(frozen=True)
class CheckResult:
    name: str
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance


def check_erf_symmetry() -> float:
    z = 1.3 - 0.7j
    return abs(erf_complex(-z) + erf_complex(z)) + abs(erf_complex(z.conjugate()) - erf_complex(z).conjugate())


def check_gamma_recurrence() -> float:
    s = 0.3 + 0.4j
    return abs(gamma_fn(s + 1) - s * gamma_fn(s)) / abs(gamma_fn(s + 1))


def check_theta_identity() -> float:
    z, q = 0.4 + 0.1j, 0.3
    return abs(theta3(z, q) - theta3(2 * z, q**4) - theta2(2 * z, q**4))


def check_trace_equivalence() -> float:
    worst = 0.0
    for bc in BoundaryCondition:
        for lam in (0.5, 2.0, 5.0):
            spec = TransverseSpectrumSpec(bc, lam)
            for u in (0.01, 0.3, 3.0, 100.0):
                direct = trace_direct(spec, u)
                worst = max(worst, abs(trace_accelerated(spec, u) - direct) / max(abs(direct), 1.0))
    return worst


def check_mixed_theta() -> float:
    return abs(trace_direct(TransverseSpectrumSpec(M, 1.7), 0.4) - mixed_trace_theta(1.7, 0.4))


def check_a_coefficients() -> float:
    return max(abs(oracle - closed) for oracle, closed in zeta_oracle.coefficient_check().values())


def check_bulk_coefficient() -> float:
    """Bulk piece of de_a against the oracle, relative."""
    lam1, lam2 = 2.0, 3.0
    closed = corrections.BULK_COEFFICIENT * lam1 * lam2
    oracle = zeta_oracle.oracle_a_pieces(lam1, lam2)["bulk"]
    return abs(closed - oracle) / abs(oracle)


def check_generic_s_bracket() -> float:
    worst = 0.0
    for a in (1.0, 4.0, 13.0):
        sample = zeta_oracle.mellin_term(0.3, TermName.C, ShellParams((math.sqrt(a), 1.0), n=1, axis=1))
        closed = corrections.c_bracket(0.3, a)
        worst = max(worst, abs(sample.value - closed) / abs(closed))
    return worst


def check_shell_derivatives() -> float:
    """Finite-difference, closed-form and quadrature s-derivatives of single shells."""
    worst = 0.0
    for a in (0.5, 2.0, 9.0, 30.0):
        fd = corrections.bracket_sderiv(a)
        closed = float(corrections.closed_form_sderiv(np.array([a]))[0])
        quad, _ = zeta_oracle.shell_sderiv(a)
        worst = max(worst, abs(fd - closed), abs(quad - closed))
    return worst


def check_b_contour() -> float:
    y = np.array([0.3, 2.0, 11.0])
    closed = corrections.b_bracket(y)
    return float(max(abs(zeta_oracle.b_bracket_contour(float(v)) - c) for v, c in zip(y, closed)))


def check_composition_structure() -> float:
    cfg = DomainConfig(l1=1.3, l2=2.1)
    tol = ToleranceConfig()
    dd = corrections.assemble_total(D, D, cfg, tol)
    nn = corrections.assemble_total(N, N, cfg, tol)
    expected = 2 * (cfg.lambda1 + cfg.lambda2) / (8 * math.pi) - 2 * dd.b_term
    return abs((nn.total - dd.total) - expected)


def check_action_independence() -> float:
    tol = ToleranceConfig()
    one = corrections.assemble_total(D, N, DomainConfig(l1=1.0, l2=1.5, A=1.0), tol)
    other = corrections.assemble_total(D, N, DomainConfig(l1=1.0, l2=1.5, A=37.0), tol)
    return abs(one.total - other.total)


def check_oracle_totals() -> float:
    """Every piece except b of the closed forms against the quadrature oracle, relative."""
    worst = 0.0
    tol = ToleranceConfig()
    names = [name for name in corrections.CorrectionBreakdown.TERMS if name != "b_term"]
    for l1, l2 in ((1.0, 1.0), (2.0, 3.0), (5.0, 5.0)):
        cfg = DomainConfig(l1=l1, l2=l2)
        closed = corrections.assemble_total(D, D, cfg, tol).dimensionless()
        oracle = zeta_oracle.oracle_total(D, D, cfg, tolerances=tol).dimensionless()
        deviation = abs(sum(closed[n] for n in names) - sum(oracle[n] for n in names))
        worst = max(worst, deviation / max(abs(sum(oracle[n] for n in names)), 1.0))
    return worst


def check_b_shell_quadrature() -> float:
    """Bessel-K quadrature of single b shells against -2 sin^2(y) / y^2."""
    worst = 0.0
    for lam, n in ((0.7, 1), (2.0, 3), (5.0, 2)):
        value, _ = zeta_oracle.b_shell_energy(lam, n)
        closed = float(zeta_oracle.b_shell_energy_closed_form(lam, np.array([n]))[0])
        worst = max(worst, abs(value - closed))
    return worst


def check_printed_b_form() -> float:
    """Printed Ei form of the b term against the continued shell Mellin integral, relative.

    The two disagree (about -0.245 against -0.045 at lambda = 2); this check reports it.
    """
    worst = 0.0
    for lam in (2.0, 5.0):
        printed = corrections.de_b_single(lam, 1e-8)
        mellin = zeta_oracle.oracle_b_single(lam)
        worst = max(worst, abs(printed - mellin) / abs(mellin))
    return worst


def check_bulk_limit() -> float:
    lam = 2000.0
    cfg = DomainConfig(l1=lam, l2=lam)
    tol = ToleranceConfig(series_tol=1e-6, lattice_tol=1e-4)
    worst = 0.0
    for bc in (D, N, P, M):
        total = corrections.assemble_total(bc, bc, cfg, tol).dimensionless_total
        worst = max(worst, abs(total / lam**2 - corrections.BULK_COEFFICIENT) / corrections.BULK_COEFFICIENT)
    return worst


def check_small_box_mass_limit() -> float:
    """hbar m c de_b(m l) at fixed tiny l for m = 1 and 2, relative."""
    l = 1e-5
    light = corrections.de_b_single(l, 0.1)
    heavy = 2.0 * corrections.de_b_single(2.0 * l, 0.1)
    return abs(heavy - light) / abs(light)


def check_quasiperiod() -> float:
    lam = np.arange(2.0, 30.0, 0.01)
    values = np.array([corrections.de_b_single(float(x), 1e-6) for x in lam])
    spacing = np.diff(lam[local_maxima(values)])
    return float(np.max(np.abs(spacing - math.pi)) / math.pi)


def check_envelope() -> float:
    result = BEnvelopeFit().fit()
    return 0.0 if result.peaks_non_increasing else 1.0


FAST_CHECKS: List[tuple] = [
    ("erf symmetry", check_erf_symmetry, 1e-14),
    ("gamma recurrence", check_gamma_recurrence, 1e-12),
    ("theta3 = theta3 + theta2 split", check_theta_identity, 1e-12),
    ("direct vs Poisson traces", check_trace_equivalence, 1e-10),
    ("mixed trace as theta2", check_mixed_theta, 1e-12),
    ("a-term coefficients", check_a_coefficients, 1e-8),
    ("bulk coefficient", check_bulk_coefficient, 1e-6),
    ("generic-s bracket", check_generic_s_bracket, 1e-8),
    ("shell s-derivatives", check_shell_derivatives, 1e-7),
    ("Ei of the printed b bracket", check_b_contour, 1e-9),
    ("b shells by quadrature", check_b_shell_quadrature, 1e-10),
    ("(N,N) - (D,D) structure", check_composition_structure, 1e-9),
    ("action normalisation drops out", check_action_independence, 0.0),
    ("b independent of m for small boxes", check_small_box_mass_limit, 1e-2),
]

FULL_CHECKS: List[tuple] = FAST_CHECKS + [
    ("closed form vs oracle, a c d pieces", check_oracle_totals, 1e-4),
    ("printed b form vs Mellin continuation", check_printed_b_form, 1e-4),
    ("bulk limit at lambda = 2000", check_bulk_limit, 1e-2),
    ("b quasiperiod", check_quasiperiod, 5e-2),
    ("b envelope decays", check_envelope, 0.0),
]


def run_checks(level: str = "fast") -> List[CheckResult]:
    checks = FULL_CHECKS if level == "full" else FAST_CHECKS
    results = []
    for name, check, tolerance in checks:
        try:
            deviation = float(check())
        except KinkBoxError as err:
            log.error(f"Check '{name}' raised error of type {type(err).__name__}: {err}")
            deviation = math.inf
        result = CheckResult(name, deviation, tolerance)
        log.info(f"{'PASS' if result.passed else 'FAIL'} {name}: deviation {deviation:.3g} (tolerance {tolerance:.1g})")
        results.append(result)
    return results


def format_report(results: List[CheckResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.deviation:.3e} <= {r.tolerance:.1e}" for r in results]
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    return "\n".join(lines)

from dataclasses import dataclass, field
from typing import Dict, List, Tuple
import logging

from .errors import UnsupportedConfigurationError
from .helper import BoundaryCondition, CompositionRule

log = logging.getLogger(__name__)

D = BoundaryCondition.DIRICHLET
N = BoundaryCondition.NEUMANN
P = BoundaryCondition.PERIODIC
M = BoundaryCondition.MIXED_DN

# (weight, axis, scale): weight * term evaluated at scale * lambda_axis
AxisTerm = Tuple[float, int, float]
# (weight, factor on lambda1, factor on lambda2)
LatticeTerm = Tuple[float, float, float]


@dataclass(frozen=True)
class AxisSpectrum:
    """Poisson-resummed trace of one axis: edge + lambda/(2 sqrt(pi u)) (1 + sum_j w_j 2 S(scale_j lambda)).

    S(x) = sum_{n>=1} exp(-n^2 x^2 / u) is the dual Gaussian sum.
    """

    edge: float
    duals: Tuple[Tuple[float, float], ...]  # (w_j, scale_j)


AXIS_SPECTRA: Dict[BoundaryCondition, AxisSpectrum] = {
    D: AxisSpectrum(-0.5, ((1.0, 1.0),)),
    N: AxisSpectrum(0.5, ((1.0, 1.0),)),
    # a period-l circle is the Dirichlet dual sum of length l/2
    P: AxisSpectrum(0.0, ((1.0, 0.5),)),
    # odd modes of length l = all modes of length 2l minus the even ones
    M: AxisSpectrum(0.0, ((2.0, 2.0), (-1.0, 1.0))),
}


@dataclass(frozen=True)
class Composition:
    """How one boundary-condition pair is assembled from the Dirichlet pieces.

    const and lin1/lin2 multiply 1/(4 pi) and lambda_i/(8 pi); lin terms on the
    axes listed in kappa_axes additionally carry the D x P convention factor kappa.
    b_terms and c_terms are single-axis series (c always with the full area
    lambda1 lambda2 in its prefactor), d_terms the scaled double series.
    """

    const: float = 0.0
    lin1: float = 0.0
    lin2: float = 0.0
    b_terms: List[AxisTerm] = field(default_factory=list)
    c_terms: List[AxisTerm] = field(default_factory=list)
    d_terms: List[LatticeTerm] = field(default_factory=list)
    kappa_axes: Tuple[int, ...] = ()


class CompositionFactory:
    @staticmethod
    def create(bc1: BoundaryCondition, bc2: BoundaryCondition,
               rule: CompositionRule = CompositionRule.PRINTED) -> Composition:
        for bc in (bc1, bc2):
            if bc not in AXIS_SPECTRA:
                raise UnsupportedConfigurationError(f"No transverse spectrum for boundary condition {bc!r}")
        pair = (bc1, bc2)
        if rule is CompositionRule.PRINTED and pair in PRINTED_RULES:
            return PRINTED_RULES[pair]()
        log.debug(f"Composing ({bc1.value}, {bc2.value}) from the per-axis spectra")
        return CompositionFactory._create_from_spectra(bc1, bc2)

    @staticmethod
    def _create_from_spectra(bc1: BoundaryCondition, bc2: BoundaryCondition) -> Composition:
        s1, s2 = AXIS_SPECTRA[bc1], AXIS_SPECTRA[bc2]
        # edge * edge -> constant, edge * bulk -> linear, edge * dual -> b,
        # bulk * dual -> c, dual * dual -> d
        b_terms = [(-2.0 * s2.edge * w / k, 1, k) for w, k in s1.duals if s2.edge]
        b_terms += [(-2.0 * s1.edge * w / k, 2, k) for w, k in s2.duals if s1.edge]
        c_terms = [(w, 1, k) for w, k in s1.duals] + [(w, 2, k) for w, k in s2.duals]
        d_terms = [(w1 * w2 / (k1 * k2), k1, k2) for w1, k1 in s1.duals for w2, k2 in s2.duals]
        lin1, lin2 = 2.0 * s2.edge, 2.0 * s1.edge
        kappa_axes = tuple(axis for axis, bc, lin in ((1, bc1, lin1), (2, bc2, lin2)) if bc is P and lin)
        return Composition(
            const=-4.0 * s1.edge * s2.edge,
            lin1=lin1,
            lin2=lin2,
            b_terms=b_terms,
            c_terms=c_terms,
            d_terms=d_terms,
            kappa_axes=kappa_axes,
        )

    @staticmethod
    def _create_dirichlet_neumann() -> Composition:
        return Composition(const=1.0, c_terms=[(1.0, 1, 1.0), (1.0, 2, 1.0)], d_terms=[(1.0, 1.0, 1.0)])

    @staticmethod
    def _create_mixed() -> Composition:
        # c(2 lambda1, 2 lambda2) - c(lambda1, lambda2) as printed; the doubled pair carries area 4 lambda1 lambda2
        return Composition(
            c_terms=[(4.0, 1, 2.0), (4.0, 2, 2.0), (-1.0, 1, 1.0), (-1.0, 2, 1.0)],
            d_terms=[(1.0, 2.0, 2.0), (1.0, 1.0, 1.0), (-1.0, 2.0, 1.0), (-1.0, 1.0, 2.0)],
        )

    @staticmethod
    def _create_dirichlet_periodic(periodic_axis: int) -> Composition:
        scale = (1.0, 0.5) if periodic_axis == 2 else (0.5, 1.0)
        lin = {"lin1": -1.0} if periodic_axis == 1 else {"lin2": -1.0}
        return Composition(
            c_terms=[(1.0, 1, scale[0]), (1.0, 2, scale[1])],
            d_terms=[(2.0, *scale)],
            kappa_axes=(periodic_axis,),
            **lin,
        )


# pairs with their own closed formula; (D,D), (N,N) and (P,P) coincide with the per-axis algebra
PRINTED_RULES = {
    (D, D): lambda: CompositionFactory._create_from_spectra(D, D),
    (N, N): lambda: CompositionFactory._create_from_spectra(N, N),
    (P, P): lambda: CompositionFactory._create_from_spectra(P, P),
    (M, M): CompositionFactory._create_mixed,
    (D, N): CompositionFactory._create_dirichlet_neumann,
    (N, D): CompositionFactory._create_dirichlet_neumann,
    (D, P): lambda: CompositionFactory._create_dirichlet_periodic(periodic_axis=2),
    (P, D): lambda: CompositionFactory._create_dirichlet_periodic(periodic_axis=1),
}

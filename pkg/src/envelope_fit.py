"""
envelope_fit.py

Fits the decaying envelope of the b correction of one Dirichlet axis.

For large lambda the oscillating b term stays below C * ln(lambda) / lambda. The local
maxima of |de_b_single| are located on a fine lambda grid and the single
constant C is fitted to them by least squares with iminuit.

Classes:
    - EnvelopeData: the sampled curve and its local maxima.
    - BEnvelopeFit: samples the curve, fits C and checks that the peaks decay.
"""
from dataclasses import dataclass
import logging
from typing import Tuple

from alive_progress import alive_bar
from iminuit import Minuit
import numpy as np

from .corrections import de_b_single

log = logging.getLogger(__name__)


@dataclass
class EnvelopeData:
    lam: np.ndarray
    magnitude: np.ndarray
    peak_lam: np.ndarray
    peak_magnitude: np.ndarray


@dataclass(frozen=True)
class EnvelopeFitResult:
    C: float
    C_error: float
    peaks_non_increasing: bool
    max_excess: float  # largest peak / envelope ratio


class BEnvelopeFit:
    """
    Sample |de_b_single| on [lam_min, lam_max] and fit C in C * ln(lam) / lam to its peaks.

    Methods:
        - sample: evaluates the curve and extracts the local maxima.
        - least_squares: the cost minimised by Minuit.
        - minimise: runs migrad and hesse on the single parameter C.
        - fit: the whole chain, returning an EnvelopeFitResult.
    """

    def __init__(self, lam_min: float = 10.0, lam_max: float = 100.0, step: float = 0.02, tol: float = 1e-7) -> None:
        self.lam_grid = np.arange(lam_min, lam_max + step / 2, step)
        self.tol = tol

    def sample(self) -> EnvelopeData:
        magnitude = np.empty_like(self.lam_grid)
        with alive_bar(len(self.lam_grid), enrich_print=False, title="Sampling b envelope") as bar:
            for i, lam in enumerate(self.lam_grid):
                magnitude[i] = abs(de_b_single(float(lam), self.tol))
                bar()
        peaks = local_maxima(magnitude)
        self.data = EnvelopeData(self.lam_grid, magnitude, self.lam_grid[peaks], magnitude[peaks])
        log.debug(f"Found {len(peaks)} envelope peaks between {self.lam_grid[0]:.3g} and {self.lam_grid[-1]:.3g}")
        return self.data

    def least_squares(self, C: float) -> float:
        model = C * np.log(self.data.peak_lam) / self.data.peak_lam
        return float(np.sum((self.data.peak_magnitude - model) ** 2 / model**2))

    def minimise(self) -> Tuple[float, float]:
        m = Minuit(self.least_squares, C=1.0)
        m.errordef = Minuit.LEAST_SQUARES
        m.limits["C"] = (0.0, None)
        m.migrad()
        m.hesse()
        self.m = m
        return float(m.values["C"]), float(m.errors["C"])

    def fit(self) -> EnvelopeFitResult:
        self.sample()
        C, C_error = self.minimise()
        # how far the worst peak sits above the fitted envelope
        ratio = self.data.peak_magnitude / (np.log(self.data.peak_lam) / self.data.peak_lam)
        # no peak may exceed every earlier one
        running_max = np.maximum.accumulate(self.data.peak_magnitude)
        non_increasing = bool(np.all(self.data.peak_magnitude[1:] <= running_max[:-1] + 1e-12))
        log.info(f"b envelope: C = {C:.4g} +- {C_error:.2g}, peaks non-increasing: {non_increasing}")
        return EnvelopeFitResult(C, C_error, non_increasing, float(np.max(ratio) / C))


def local_maxima(values: np.ndarray) -> np.ndarray:
    """Indices of strict interior local maxima."""
    inner = (values[1:-1] > values[:-2]) & (values[1:-1] >= values[2:])
    return np.flatnonzero(inner) + 1

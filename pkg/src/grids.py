from abc import ABC, abstractmethod
from dataclasses import dataclass
import logging
from typing import List

import numpy as np

from .config import RangeConfig, SweepConfig
from .helper import Spacing, SweepAxis

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridPoint:
    """One sweep point in physical units; lambda_i = m * l_i."""

    index: int
    value: float
    l1: float
    l2: float
    m: float

    @property
    def lambda1(self) -> float:
        return self.m * self.l1

    @property
    def lambda2(self) -> float:
        return self.m * self.l2


class Grid(ABC):
    @abstractmethod
    def make_values(self) -> np.ndarray:
        pass

    def make_grid(self) -> None:
        log.debug(f"{self.__class__.__name__}: Building grid...")
        self.values = self.make_values()
        self.grid_points = [self._point(i, float(v)) for i, v in enumerate(self.values)]
        log.debug(f"{self.__class__.__name__}: Finished building grid with {len(self.grid_points)} points")

    @abstractmethod
    def _point(self, index: int, value: float) -> GridPoint:
        pass


class AxisGrid(Grid):
    """Grid along one sweep axis of SweepConfig, linear or logarithmic."""

    def __init__(self, cfg: SweepConfig) -> None:
        log.debug(f"Instance of {self.__class__.__name__} created")
        self.range: RangeConfig = cfg.range
        self.axis = cfg.sweep_axis
        self.l_fixed = cfg.l_fixed
        self.m = cfg.domain.m

    def make_values(self) -> np.ndarray:
        if Spacing(self.range.spacing) is Spacing.LOG:
            return np.geomspace(self.range.start, self.range.stop, self.range.count)
        return np.linspace(self.range.start, self.range.stop, self.range.count)

    def _point(self, index: int, value: float) -> GridPoint:
        # lambda sweeps are expressed at the configured m
        if self.axis is SweepAxis.LAMBDA1:
            return GridPoint(index, value, value / self.m, self.l_fixed / self.m, self.m)
        if self.axis is SweepAxis.LAMBDA2:
            return GridPoint(index, value, self.l_fixed / self.m, value / self.m, self.m)
        if self.axis is SweepAxis.BOTH_EQUAL:
            return GridPoint(index, value, value / self.m, value / self.m, self.m)
        # m sweep at fixed physical sizes l1 = l2 = l_fixed
        return GridPoint(index, value, self.l_fixed, self.l_fixed, value)


def points_of(cfg: SweepConfig) -> List[GridPoint]:
    grid = AxisGrid(cfg)
    grid.make_grid()
    return grid.grid_points

from dataclasses import dataclass, field
from typing import List, Tuple

from .errors import DomainError, RangeError
from .helper import BoundaryCondition, CompositionRule, Spacing, SweepAxis

# Below this dimensionless size the 1/l singularities make the output meaningless.
SINGULARITY_GUARD = 1e-6


@dataclass
class DomainConfig:
    l1: float = 1.0
    l2: float = 1.0
    m: float = 1.0
    c: float = 1.0
    hbar: float = 1.0
    A: float = 1.0  # action normalisation, carries the units; never enters the corrections

    def __post_init__(self) -> None:
        for name in ("l1", "l2", "m", "c", "hbar", "A"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} has to be positive, got {getattr(self, name)}")

    @property
    def lambda1(self) -> float:
        return self.m * self.l1

    @property
    def lambda2(self) -> float:
        return self.m * self.l2

    @property
    def energy_unit(self) -> float:
        """hbar*m*c, the scale of every correction."""
        return self.hbar * self.m * self.c


@dataclass
class ToleranceConfig:
    series_tol: float = 1e-8
    lattice_tol: float = 1e-5  # radially ordered double series, absolute
    s_step: float = 1e-3
    n_max: int = 10_000  # direct trace sums
    n_ceiling: int = 4_000_000  # correction series
    hyp1f2_zmax: float = 1e4
    switch_radius: float = 6.0  # shells with n*lambda beyond this use the closed-form derivative
    literal_mixed_dp: bool = False  # reproduce the printed "-hbar m c l2/8pi" of the D x P case
    composition_rule: str = CompositionRule.PRINTED.value

    def __post_init__(self) -> None:
        if not self.series_tol > 0:
            raise DomainError(f"series_tol has to be positive, got {self.series_tol}")
        if not self.lattice_tol > 0:
            raise DomainError(f"lattice_tol has to be positive, got {self.lattice_tol}")
        if not 0 < self.s_step <= 0.01:
            raise DomainError(f"s_step has to lie in (0, 0.01], got {self.s_step}")
        if self.n_max < 1 or self.n_ceiling < 1:
            raise DomainError("n_max and n_ceiling have to be at least 1")
        CompositionRule(self.composition_rule)


@dataclass
class RangeConfig:
    start: float = 0.5
    stop: float = 20.0
    count: int = 40
    spacing: str = Spacing.LINEAR.value

    def __post_init__(self) -> None:
        Spacing(self.spacing)
        if not self.start < self.stop:
            raise RangeError(f"range start {self.start} has to be below stop {self.stop}")
        if self.count < 2:
            raise RangeError(f"range count has to be at least 2, got {self.count}")
        if not self.start > SINGULARITY_GUARD:
            raise RangeError(f"range start {self.start} is below the singularity guard {SINGULARITY_GUARD}")


@dataclass
class OutputConfig:
    csv: str = "sweep.csv"
    plot_script: bool = True


@dataclass
class SweepConfig:
    axis: str = SweepAxis.BOTH_EQUAL.value
    range: RangeConfig = field(default_factory=RangeConfig)
    bc: List[str] = field(default_factory=lambda: ["dirichlet", "dirichlet"])
    l_fixed: float = 1.0  # the other lambda for single-axis sweeps, the physical l1 = l2 for m sweeps
    domain: DomainConfig = field(default_factory=DomainConfig)
    tolerances: ToleranceConfig = field(default_factory=ToleranceConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    workers: int = 4

    def __post_init__(self) -> None:
        SweepAxis(self.axis)
        if len(self.bc) != 2:
            raise DomainError(f"bc needs exactly two entries, got {list(self.bc)}")
        for name in self.bc:
            BoundaryCondition.from_name(name)
        if not self.l_fixed > SINGULARITY_GUARD:
            raise RangeError(f"l_fixed {self.l_fixed} is below the singularity guard")

    @property
    def bc_pair(self) -> Tuple[BoundaryCondition, BoundaryCondition]:
        return BoundaryCondition.from_name(self.bc[0]), BoundaryCondition.from_name(self.bc[1])

    @property
    def sweep_axis(self) -> SweepAxis:
        return SweepAxis(self.axis)


@dataclass
class VerifyConfig:
    level: str = "fast"  # fast, full or none


@dataclass
class KinkBoxConfig:
    sweep: SweepConfig = field(default_factory=SweepConfig)
    verify: VerifyConfig = field(default_factory=VerifyConfig)

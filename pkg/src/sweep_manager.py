import asyncio
from dataclasses import dataclass, replace
import logging
import math
import pathlib
from typing import List, Optional, TextIO

from alive_progress import alive_bar
from omegaconf import OmegaConf

from .config import SweepConfig
from .corrections import CorrectionBreakdown, assemble_partial
from .errors import KinkBoxError
from .grids import GridPoint, points_of
from .helper import get_hydra_working_directory

log = logging.getLogger(__name__)

BREAKDOWN_COLUMNS = (*CorrectionBreakdown.TERMS, "total", "dimensionless_total", "energy_unit", "classical")
DIMENSIONLESS_COLUMNS = tuple(f"{name}_dimensionless" for name in CorrectionBreakdown.TERMS)
POINT_COLUMNS = ("l1", "l2", "m", "lambda1", "lambda2")


@dataclass
class SweepRow:
    point: GridPoint
    breakdown: Optional[CorrectionBreakdown] = None
    error: str = ""


def format_number(value: float) -> str:
    return "nan" if value is None or math.isnan(value) else f"{value:.17g}"


class SweepManager:
    def __init__(self, cfg: SweepConfig) -> None:
        self.cfg = cfg
        self.bc1, self.bc2 = cfg.bc_pair
        self.points = points_of(cfg)
        self.rows: List[SweepRow] = []

    def compute_point(self, point: GridPoint) -> SweepRow:
        domain = replace(self.cfg.domain, l1=point.l1, l2=point.l2, m=point.m)
        try:
            breakdown, failures = assemble_partial(self.bc1, self.bc2, domain, self.cfg.tolerances)
            error = "; ".join(f"{name} {type(err).__name__}: {err}" for name, err in failures.items())
            return SweepRow(point, breakdown, error.replace(",", ";"))
        except KinkBoxError as err:
            log.error(f"Point {point.index} ({point.value:.6g}) failed with error of type {type(err).__name__}: {err}")
            return SweepRow(point, error=f"{type(err).__name__}: {err}".replace(",", ";"))

    async def _compute_async(self, point: GridPoint, limiter: asyncio.Semaphore, bar) -> SweepRow:
        async with limiter:
            row = await asyncio.to_thread(self.compute_point, point)
        bar()
        return row

    async def run(self) -> List[SweepRow]:
        log.info(f"Sweeping {self.cfg.axis} over {len(self.points)} points for ({self.bc1.value}, {self.bc2.value})")
        limiter = asyncio.Semaphore(max(1, self.cfg.workers))
        with alive_bar(len(self.points), enrich_print=False, title="Sweeping") as bar:
            self.rows = list(await asyncio.gather(*(self._compute_async(p, limiter, bar) for p in self.points)))
        failed = sum(1 for row in self.rows if row.error)
        if failed:
            log.warning(f"{failed} of {len(self.rows)} points failed, see the error column")
        return self.rows

    def output_path(self) -> pathlib.Path:
        path = pathlib.Path(self.cfg.output.csv)
        return path if path.is_absolute() else get_hydra_working_directory().joinpath(path)

    def columns(self) -> List[str]:
        return ["index", self.cfg.axis, *POINT_COLUMNS, *BREAKDOWN_COLUMNS, *DIMENSIONLESS_COLUMNS, "error"]

    def write_header(self, f: TextIO) -> None:
        f.write("# one-loop sine-Gordon kink corrections in a finite box\n")
        for line in OmegaConf.to_yaml(OmegaConf.structured(self.cfg)).splitlines():
            f.write(f"# {line}\n")
        f.write(",".join(self.columns()) + "\n")

    def write_row(self, f: TextIO, row: SweepRow) -> None:
        p = row.point
        values = [p.value, p.l1, p.l2, p.m, p.lambda1, p.lambda2]
        if row.breakdown is not None:
            dimensionless = row.breakdown.dimensionless()
            values += [getattr(row.breakdown, name) for name in BREAKDOWN_COLUMNS]
            values += [dimensionless[name] for name in CorrectionBreakdown.TERMS]
        else:
            values += [math.nan] * (len(BREAKDOWN_COLUMNS) + len(DIMENSIONLESS_COLUMNS))
        f.write(",".join([str(p.index), *(format_number(v) for v in values), row.error]) + "\n")

    def save(self) -> pathlib.Path:
        path = self.output_path()
        path.parent.mkdir(parents=True, exist_ok=True)
        log.debug(f"Saving {len(self.rows)} rows to {path}")
        with open(path, "w") as f:
            self.write_header(f)
            for row in self.rows:
                self.write_row(f, row)
        if self.cfg.output.plot_script:
            self.write_plot_script(path)
        log.info(f"Sweep written to {path}")
        return path

    def write_plot_script(self, csv_path: pathlib.Path) -> pathlib.Path:
        script = csv_path.with_suffix(".gp")
        # gnuplot counts columns from 1
        column = {name: i + 1 for i, name in enumerate(self.columns())}
        with open(script, "w") as f:
            f.write("set datafile separator ','\n")
            f.write("set datafile commentschars '#'\n")
            f.write(f"set xlabel '{self.cfg.axis}'\n")
            f.write("set ylabel 'correction / (hbar m c)'\n")
            f.write(
                f"plot '{csv_path.name}' using 2:{column['dimensionless_total']} with linespoints title 'total', \\\n"
                f"     '' using 2:{column['b_term_dimensionless']} with lines title 'b', \\\n"
                f"     '' using 2:{column['c_term_dimensionless']} with lines title 'c', \\\n"
                f"     '' using 2:{column['d_term_dimensionless']} with lines title 'd'\n"
            )
        return script


async def run_sweep(cfg: SweepConfig) -> pathlib.Path:
    manager = SweepManager(cfg)
    await manager.run()
    return manager.save()

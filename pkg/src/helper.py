import logging
import logging.config
import pathlib
from enum import Enum

from omegaconf import OmegaConf

log = logging.getLogger(__name__)

LOGGER_CONFIG = pathlib.Path(__file__).resolve().parent.parent.joinpath(
    "config", "hydra", "job_logging", "logger_config.yaml"
)


class BoundaryCondition(Enum):
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"
    PERIODIC = "periodic"
    MIXED_DN = "mixed_dn"

    @classmethod
    def from_name(cls, name: str) -> "BoundaryCondition":
        key = name.strip().lower().replace("-", "_")
        aliases = {"d": "dirichlet", "n": "neumann", "von_neumann": "neumann",
                   "p": "periodic", "mixed": "mixed_dn", "dn": "mixed_dn"}
        return cls(aliases.get(key, key))


class SweepAxis(Enum):
    LAMBDA1 = "lambda1"
    LAMBDA2 = "lambda2"
    BOTH_EQUAL = "both_equal"
    M_PHYSICAL = "m_physical"


class Spacing(Enum):
    LINEAR = "linear"
    LOG = "log"


class CompositionRule(Enum):
    PRINTED = "printed"  # the closed formulas where given, per-axis algebra elsewhere
    TRACE_ALGEBRA = "trace_algebra"


class TermName(Enum):
    A = "a"
    B = "b"
    C = "c"
    D = "d"


def get_hydra_working_directory() -> pathlib.Path:
    from hydra.core.hydra_config import HydraConfig

    try:
        return pathlib.Path(HydraConfig.get().runtime.output_dir)
    except ValueError:
        # not running under @hydra.main
        return pathlib.Path.cwd()


def setup_console_logging(level: str = "INFO") -> None:
    """Apply the hydra job-logging YAML outside hydra, console handler only."""
    try:
        cfg = OmegaConf.to_container(OmegaConf.load(LOGGER_CONFIG), resolve=False)
        cfg["handlers"].pop("file", None)
        cfg["root"]["handlers"] = ["console"]
        cfg["root"]["level"] = level
        logging.config.dictConfig(cfg)
    except Exception as err:
        logging.basicConfig(level=level)
        log.warning(f"Falling back to basic logging, error of type {type(err).__name__}: {err}")

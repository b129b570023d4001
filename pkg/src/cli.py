"""
cli.py

Command-line front end: ``sweep`` runs a parameter sweep from a flat key = value
config file, ``verify`` runs the self-checks and ``term`` prints one correction term.

Exit codes: 0 success, 1 failed verification or unreachable tolerance,
2 invalid configuration.
"""
import argparse
import asyncio
import logging
import pathlib
import sys
from typing import Dict, List, Optional, Tuple

from omegaconf import OmegaConf
from omegaconf.errors import OmegaConfBaseException

from . import corrections
from .config import DomainConfig, OutputConfig, RangeConfig, SweepConfig, ToleranceConfig
from .errors import ConfigParseError, KinkBoxError, PrecisionLossError
from .helper import BoundaryCondition, TermName, setup_console_logging
from .sweep_manager import run_sweep
from .verification import format_report, run_checks

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2

# flat key -> (section, field); section None is the top level of SweepConfig
KEY_MAP: Dict[str, Tuple[Optional[str], str]] = {
    "axis": (None, "axis"),
    "l_fixed": (None, "l_fixed"),
    "workers": (None, "workers"),
    "spacing": ("range", "spacing"),
    "l1": ("domain", "l1"),
    "l2": ("domain", "l2"),
    "m": ("domain", "m"),
    "c": ("domain", "c"),
    "hbar": ("domain", "hbar"),
    "A": ("domain", "A"),
    "series_tol": ("tolerances", "series_tol"),
    "lattice_tol": ("tolerances", "lattice_tol"),
    "s_step": ("tolerances", "s_step"),
    "n_max": ("tolerances", "n_max"),
    "n_ceiling": ("tolerances", "n_ceiling"),
    "switch_radius": ("tolerances", "switch_radius"),
    "hyp1f2_zmax": ("tolerances", "hyp1f2_zmax"),
    "literal_mixed_dp": ("tolerances", "literal_mixed_dp"),
    "composition_rule": ("tolerances", "composition_rule"),
    "csv": ("output", "csv"),
    "plot_script": ("output", "plot_script"),
}
SECTIONS = {"range": RangeConfig, "domain": DomainConfig, "tolerances": ToleranceConfig, "output": OutputConfig}


def _split_line(raw: str, number: int) -> Optional[Tuple[str, str]]:
    text = raw.split("#", 1)[0].strip()
    if not text:
        return None
    if "=" not in text:
        raise ConfigParseError(f"expected 'key = value', got '{text}'", number)
    key, value = (part.strip() for part in text.split("=", 1))
    if not key or not value:
        raise ConfigParseError(f"empty key or value in '{text}'", number)
    return key, value


def _build(node_type, values: dict, line: int):
    try:
        merged = OmegaConf.merge(OmegaConf.structured(node_type), values)
        return OmegaConf.to_object(merged)
    except (ValueError, OmegaConfBaseException) as err:
        raise ConfigParseError(f"{type(err).__name__}: {err}", line)


def parse_config(text: str) -> SweepConfig:
    """Parse the flat sweep config format into a validated SweepConfig."""
    sections: Dict[str, dict] = {name: {} for name in SECTIONS}
    top: dict = {}
    first_line: Dict[Optional[str], int] = {}

    for number, raw in enumerate(text.splitlines(), start=1):
        entry = _split_line(raw, number)
        if entry is None:
            continue
        key, value = entry
        if key == "range":
            parts = [p.strip() for p in value.split(",")]
            if len(parts) != 3:
                raise ConfigParseError(f"range needs 'start, stop, count', got '{value}'", number)
            sections["range"].update(start=parts[0], stop=parts[1], count=parts[2])
            first_line.setdefault("range", number)
        elif key == "bc":
            names = [p.strip() for p in value.split(",")]
            try:
                top["bc"] = [BoundaryCondition.from_name(name).value for name in names]
            except ValueError:
                raise ConfigParseError(f"unknown boundary condition in '{value}'", number)
            first_line.setdefault(None, number)
        elif key in KEY_MAP:
            section, name = KEY_MAP[key]
            if key == "axis":
                value = value.lower().replace("-", "_")
            (top if section is None else sections[section])[name] = value
            first_line.setdefault(section, number)
        else:
            raise ConfigParseError(f"unknown key '{key}'", number)

    built = {name: _build(SECTIONS[name], values, first_line.get(name)) for name, values in sections.items()}
    top_values = {**top, **{name: OmegaConf.structured(obj) for name, obj in built.items()}}
    return _build(SweepConfig, top_values, first_line.get(None))


def _run_sweep(args: argparse.Namespace) -> int:
    try:
        cfg = parse_config(pathlib.Path(args.config).read_text())
    except (OSError, ConfigParseError) as err:
        print(f"configuration error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    if args.out:
        cfg.output.csv = args.out
    path = asyncio.run(run_sweep(cfg))
    print(path)
    return EXIT_OK


def _run_verify(args: argparse.Namespace) -> int:
    results = run_checks("full" if args.full else "fast")
    print(format_report(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


def compute_term(which: TermName, lam1: float, lam2: float, tolerances: ToleranceConfig) -> float:
    if which is TermName.A:
        return corrections.de_a(lam1, lam2)
    if which is TermName.B:
        return corrections.de_b(lam1, lam2, tolerances.series_tol, tolerances.n_ceiling)
    if which is TermName.C:
        return corrections.de_c(lam1, lam2, tol=tolerances.series_tol, tolerances=tolerances)
    return corrections.de_d(lam1, lam2, tol=tolerances.lattice_tol, tolerances=tolerances)


def _run_term(args: argparse.Namespace) -> int:
    try:
        domain = DomainConfig(l1=args.l1, l2=args.l2, m=args.m)
        value = compute_term(TermName(args.which), domain.lambda1, domain.lambda2, ToleranceConfig())
    except PrecisionLossError as err:
        print(f"tolerance not reached: {err}", file=sys.stderr)
        return EXIT_FAILED
    except KinkBoxError as err:
        print(f"configuration error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    print(f"{value:.17g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kinkbox", description="One-loop sine-Gordon kink corrections in a finite box")
    parser.add_argument("--log-level", default="INFO")
    commands = parser.add_subparsers(dest="command", required=True)

    sweep = commands.add_parser("sweep", help="run a parameter sweep and write a CSV")
    sweep.add_argument("--config", required=True, help="flat 'key = value' sweep file")
    sweep.add_argument("--out", default=None, help="override the output CSV path")
    sweep.set_defaults(handler=_run_sweep)

    verify = commands.add_parser("verify", help="run the numerical self-checks")
    verify.add_argument("--full", action="store_true", help="also run the slow reference checks")
    verify.set_defaults(handler=_run_verify)

    term = commands.add_parser("term", help="print one Dirichlet correction term (dimensionless)")
    term.add_argument("--which", choices=[t.value for t in TermName], required=True)
    term.add_argument("--l1", type=float, required=True)
    term.add_argument("--l2", type=float, required=True)
    term.add_argument("--m", type=float, default=1.0)
    term.set_defaults(handler=_run_term)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_console_logging(args.log_level)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())

"""Command line interface.

Subcommands: ``spectrum``, ``convergence``, ``pollution-report``, ``extended``
and ``calibrate-c``.  Exit codes: 0 success, 2 configuration error,
3 numerical failure.  Errors are printed to stderr as one JSON object.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import report as rpt
from .errors import ConfigError, DomainError, NumericalError
from .runner import (
    RunConfig,
    calibration_summary,
    run_convergence,
    run_extended,
    run_spectrum,
    table_slot,
)

logger = logging.getLogger("supgdirac")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL = 0, 2, 3


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _c_value(text: str):
    if text == "calibrate":
        return text
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("c must be a number or 'calibrate'") from None


def _add_run_options(p: argparse.ArgumentParser, n_list: bool = False) -> None:
    # defaults are None so that only explicit flags override the config file
    g = p.add_argument_group("physics")
    g.add_argument("--config", type=Path, help="JSON file with run configuration")
    g.add_argument("--z", type=int)
    g.add_argument("--kappa", type=int)
    g.add_argument("--m", type=float)
    g.add_argument("--c", type=_c_value, help="speed of light (a.u.) or 'calibrate'")
    g.add_argument("--nucleus", choices=["point", "extended"])
    g.add_argument("--R", type=float, help="nuclear radius in bohr (default from --mass-number)")
    g.add_argument("--mass-number", type=float, dest="mass_number")
    m = p.add_argument_group("mesh")
    m.add_argument("--a", type=float, help="domain start (default 0)")
    m.add_argument("--b", type=float, help="domain end")
    if n_list:
        m.add_argument("--n", type=_int_list, dest="n_list", default=[200, 400, 600, 800, 1000],
                       help="comma-separated interior node counts")
    else:
        m.add_argument("--n", type=int, help="interior node count")
    m.add_argument("--epsilon", type=float, help="node intensity parameter")
    m.add_argument("--n-inner", type=int, dest="n_inner", help="extended nucleus: nodes in (0, R]")
    r = p.add_argument_group("run")
    r.add_argument("--levels", type=int)
    r.add_argument("--tol-rel", type=float, dest="tol_rel", help="relative tolerance for matching exact levels")
    r.add_argument("--solver", choices=["auto", "qz", "symmetric"])
    r.add_argument("--out", type=Path, default=Path("."), help="output directory")
    r.add_argument("--format", default="csv,json", help="comma-separated subset of csv,json,tsv-plot")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="supgdirac", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="bound-state spectrum for one kappa")
    _add_run_options(p)
    p.add_argument("--method", choices=["galerkin", "supg", "both"])

    p = sub.add_parser("convergence", help="stabilized-method convergence over node counts")
    _add_run_options(p, n_list=True)

    p = sub.add_parser("pollution-report", help="Galerkin vs stabilized vs exact, spurious rows flagged")
    _add_run_options(p)

    p = sub.add_parser("extended", help="extended-nucleus spectra for several kappa")
    _add_run_options(p)
    p.add_argument("--kappas", type=_int_list, help="comma-separated; write --kappas=-2,2 when the list starts negative")

    p = sub.add_parser("calibrate-c", help="fit the speed of light to the published exact energies")
    p.add_argument("--bracket", type=float, nargs=2, default=(137.0359, 137.0361))
    p.add_argument("--out", type=Path, default=None)
    return parser


_CONFIG_KEYS = ("z", "kappa", "m", "c", "nucleus", "R", "mass_number", "a", "b", "n", "epsilon",
                "n_inner", "levels", "solver", "method", "kappas", "tol_rel")


def config_from_args(args: argparse.Namespace, **forced) -> RunConfig:
    overrides = {k: getattr(args, k, None) for k in _CONFIG_KEYS}
    overrides.update(forced)
    return RunConfig.from_sources(args.config, overrides)


def _formats(args) -> set[str]:
    fmts = {f.strip() for f in args.format.split(",") if f.strip()}
    bad = fmts - {"csv", "json", "tsv-plot"}
    if bad:
        raise ConfigError(f"unknown output formats {sorted(bad)}")
    return fmts


def _warn_kappa_one(cfg: RunConfig, kappas) -> None:
    if any(abs(k) == 1 for k in kappas):
        print("note: |kappa| = 1 states are computed with Dirichlet conditions only; "
              "their boundary behaviour is not treated specially", file=sys.stderr)


def _spectrum_outputs(cfg: RunConfig, out: Path, stem: str, fmts: set[str]) -> list[Path]:
    _warn_kappa_one(cfg, [cfg.kappa])
    runs = run_spectrum(cfg)
    reports = {m: r.report for m, r in runs.items()}
    written = []
    if "csv" in fmts:
        written.append(rpt.atomic_write(out / f"{stem}.csv", rpt.spectrum_csv(reports)))
    if "json" in fmts:
        payload = {"config": cfg.to_dict(), "reports": {m: r.to_dict() for m, r in reports.items()}}
        written.append(rpt.atomic_write(out / f"{stem}.json", rpt.json_text(payload)))
    return written


def cmd_spectrum(args) -> list[Path]:
    cfg = config_from_args(args)
    return _spectrum_outputs(cfg, args.out, f"spectrum_z{cfg.z}_k{cfg.kappa}_{cfg.method}", _formats(args))


def cmd_pollution_report(args) -> list[Path]:
    cfg = config_from_args(args, method="both")
    return _spectrum_outputs(cfg, args.out, f"pollution_z{cfg.z}_k{cfg.kappa}", _formats(args))


def cmd_convergence(args) -> list[Path]:
    cfg = config_from_args(args)
    fmts = _formats(args) | {"tsv-plot"}
    study = run_convergence(cfg, args.n_list)
    stem = f"convergence_z{cfg.z}_k{cfg.kappa}"
    written = []
    if "csv" in fmts:
        written.append(rpt.atomic_write(args.out / f"{stem}.csv", rpt.convergence_csv(study)))
    if "json" in fmts:
        payload = {"config": cfg.to_dict(), "study": study.to_dict()}
        written.append(rpt.atomic_write(args.out / f"{stem}.json", rpt.json_text(payload)))
    written.append(rpt.atomic_write(args.out / f"{stem}.tsv", rpt.convergence_tsv(study)))
    return written


def cmd_extended(args) -> list[Path]:
    cfg = config_from_args(args, nucleus="extended")
    _warn_kappa_one(cfg, cfg.kappas)
    runs = run_extended(cfg)
    reports = {k: r.report for k, r in runs.items()}
    fmts = _formats(args)
    written = []
    if "csv" in fmts:
        written.append(rpt.atomic_write(args.out / f"extended_z{cfg.z}.csv", rpt.extended_csv(reports, table_slot)))
    if "json" in fmts:
        payload = {"config": cfg.to_dict(), "reports": {str(k): r.to_dict() for k, r in reports.items()}}
        written.append(rpt.atomic_write(args.out / f"extended_z{cfg.z}.json", rpt.json_text(payload)))
    return written


def cmd_calibrate_c(args) -> dict:
    summary = calibration_summary(tuple(args.bracket))
    text = rpt.json_text(summary)
    if args.out is not None:
        rpt.atomic_write(args.out / "calibration.json", text)
    sys.stdout.write(text)
    return summary


COMMANDS = {
    "spectrum": cmd_spectrum,
    "convergence": cmd_convergence,
    "pollution-report": cmd_pollution_report,
    "extended": cmd_extended,
    "calibrate-c": cmd_calibrate_c,
}


def _fail(code: int, exc: Exception) -> int:
    print(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code}), file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        result = COMMANDS[args.command](args)
    except (ConfigError, DomainError) as exc:
        return _fail(EXIT_CONFIG, exc)
    except NumericalError as exc:
        return _fail(EXIT_NUMERICAL, exc)
    if isinstance(result, list):
        for path in result:
            print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

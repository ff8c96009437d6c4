"""Command-line front end.

    threebody stability --system helium
    threebody spectrum --system helium --kappa 0 --nmax 1
    threebody spectrum --system ps-minus --kappa 1 --r0 6.56
    threebody scan --system ps-minus --kappa 1 --k 3 --wp-min 0.5 --wp-max 2 --steps 500 --format csv
    threebody calibrate-r0 --system ps-minus --reference -0.261995

Input energies (--reference) are always in Hartree; --units only affects output.
Exit codes: 0 ok, 1 invalid input, 2 unstable system, 3 no solution found.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Any, Optional, Sequence

from .geometry import INF, stable
from .kappa0 import UnstableSystemError, spectrum_kappa0
from .kappa1 import (
    DEFAULT_STEPS,
    CalibrationError,
    EmptyWindowError,
    NoMatchError,
    calibrate_r0,
    find_matches,
    lowest_match,
    scan_matching,
    total_energy,
)
from .system import ThreeBodySystem

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_UNSTABLE = 2
EXIT_NO_SOLUTION = 3

UNITS = {"hartree": 1.0, "rydberg": 2.0}
ENERGY_KEYS = frozenset({"energy", "energy_coefficient", "lhs", "rhs", "reference", "e0", "e1", "total"})


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    system: ThreeBodySystem
    provenance: str


_CATALOG = (
    CatalogEntry(
        "helium",
        ThreeBodySystem((-1, -1, 2), (1.0, 1.0, 7294.299536), "He"),
        "two electrons and an alpha particle, nuclear mass 7294.299536",
    ),
    CatalogEntry(
        "ps-minus",
        ThreeBodySystem((-1, 1, -1), (1.0, 1.0, 1.0), "Ps-"),
        "two electrons with the positron in the middle",
    ),
    CatalogEntry(
        "e+hydrogen",
        ThreeBodySystem((1, -1, 1), (1.0, 1.0, 1836.1527), "e+H"),
        "positron, electron and proton of mass 1836.1527",
    ),
)


def catalog() -> list[CatalogEntry]:
    return list(_CATALOG)


def lookup(key: str) -> ThreeBodySystem:
    for entry in _CATALOG:
        if entry.key == key:
            return entry.system
    known = ", ".join(e.key for e in _CATALOG)
    raise KeyError(f"unknown system {key!r}; available: {known}")


@dataclass(frozen=True)
class SystemConfig:
    charges: tuple[int, int, int]
    masses: tuple[float, float, float]
    label: str = ""
    units: str = "hartree"

    def __post_init__(self):
        if self.units not in UNITS:
            raise ValueError(f"units must be one of {sorted(UNITS)}")
        ThreeBodySystem(self.charges, self.masses)

    @classmethod
    def from_json(cls, data: dict) -> "SystemConfig":
        if not isinstance(data, dict):
            raise ValueError("config must be a JSON object")
        try:
            charges, masses = data["charges"], data["masses"]
        except KeyError as exc:
            raise ValueError(f"config is missing {exc.args[0]!r}") from None
        if len(charges) != 3 or len(masses) != 3:
            raise ValueError("config needs three charges and three masses")
        if any(isinstance(z, bool) or not isinstance(z, int) for z in charges):
            raise ValueError("charges must be JSON integers")
        return cls(
            charges=tuple(charges),
            masses=tuple(float(m) for m in masses),
            label=str(data.get("label", "")),
            units=data.get("units", "hartree"),
        )

    def to_json(self) -> dict:
        return {"label": self.label, "charges": list(self.charges), "masses": list(self.masses), "units": self.units}

    def system(self) -> ThreeBodySystem:
        return ThreeBodySystem(self.charges, self.masses, self.label or None)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _k_value(k):
    return "inf" if k is INF else k


def _system_json(system: ThreeBodySystem) -> dict:
    return {"label": system.label or "", "charges": list(system.charges), "masses": list(system.masses)}


def convert_units(report: Any, factor: float) -> Any:
    """Scale every energy-valued field of a report by factor."""
    if isinstance(report, dict):
        return {
            key: (value * factor if key in ENERGY_KEYS and isinstance(value, float) else convert_units(value, factor))
            for key, value in report.items()
        }
    if isinstance(report, list):
        return [convert_units(item, factor) for item in report]
    return report


def _json_safe(report: Any) -> Any:
    if isinstance(report, dict):
        return {key: _json_safe(value) for key, value in report.items()}
    if isinstance(report, list):
        return [_json_safe(item) for item in report]
    if isinstance(report, float) and not math.isfinite(report):
        return None
    return report


def _entry_json(entry, systems) -> dict:
    return {
        "arrangement": entry.arrangement,
        "charges": list(systems[entry.arrangement].charges),
        "n1": entry.n1,
        "n2": entry.n2,
        "l1": entry.l1,
        "l2": entry.l2,
        "k": _k_value(entry.k),
        "energy": entry.energy,
    }


def _match_json(match) -> dict:
    out = {
        "k": match.k,
        "wp_star": match.wp_star,
        "n1": match.n1,
        "n2": match.n2,
        "l1": match.l1,
        "l2": match.l2,
        "nu1": match.nu1,
        "nu2": match.nu2,
        "energy_coefficient": match.energy_coefficient,
        "bessel_residual": match.bessel_residual,
    }
    if match.r0 is not None:
        out["r0"] = match.r0
        out["energy"] = match.energy()
    return out


def _resolve_system(args) -> ThreeBodySystem:
    chosen = [args.system is not None, args.charges is not None, args.config is not None]
    if sum(chosen) != 1:
        raise UsageError("choose exactly one of --system, --charges/--masses, --config")
    if args.system is not None:
        return lookup(args.system)
    if args.config is not None:
        with open(args.config, encoding="utf-8") as fh:
            return SystemConfig.from_json(json.load(fh)).system()
    if args.masses is None:
        raise UsageError("--charges needs --masses")
    try:
        charges = tuple(int(z) for z in args.charges.split(","))
        masses = tuple(float(m) for m in args.masses.split(","))
    except ValueError as exc:
        raise UsageError(f"cannot parse charges/masses: {exc}") from None
    return ThreeBodySystem(charges, masses, "custom")


def _stability(system, args) -> tuple[dict, int]:
    result = stable(system)
    report = {"command": "stability", "stable": result.stable, "arrangement": None, "witness": None}
    if result.stable:
        w = result.witness
        report["arrangement"] = _system_json(result.system)
        report["witness"] = {
            "k": _k_value(w.k),
            "wp": w.wp,
            "ck": w.ck,
            "omega": w.omega,
            "sigma": w.sigma,
            "tau": w.tau,
        }
    return report, EXIT_OK if result.stable else EXIT_UNSTABLE


def _spectrum(system, args) -> tuple[dict, int]:
    if args.kappa == 0:
        spectrum = spectrum_kappa0(system, args.nmax, args.kmax, args.all_arrangements)
        systems = spectrum.systems
        best = spectrum.infimum
        report = {
            "command": "spectrum",
            "kappa": 0,
            "entries": [_entry_json(e, systems) for e in spectrum.entries],
            "infimum": None if best is None else _entry_json(best, systems),
            "infimum_by_arrangement": [
                _entry_json(e, systems) for _, e in sorted(spectrum.infimum_by_arrangement.items())
            ],
        }
        return report, EXIT_OK if best is not None else EXIT_NO_SOLUTION
    _require_stable(system)
    matches = find_matches(system, n_max=args.nmax, k_max=args.kmax, r0_ref=args.r0, steps=args.steps)
    best = lowest_match(matches)
    report = {
        "command": "spectrum",
        "kappa": 1,
        "matches": [_match_json(m) for m in matches],
        "infimum": None if best is None else _match_json(best),
    }
    return report, EXIT_OK if matches else EXIT_NO_SOLUTION


def _scan(system, args) -> tuple[dict, int]:
    _require_stable(system)
    wp_range = None
    if args.wp_min is not None or args.wp_max is not None:
        if args.wp_min is None or args.wp_max is None:
            raise UsageError("--wp-min and --wp-max go together")
        wp_range = (args.wp_min, args.wp_max)
    curve = scan_matching(system, args.k, wp_range, args.steps, args.n1, args.n2, args.l1, args.l2)
    report = {
        "command": "scan",
        "kappa": 1,
        "k": curve.k,
        "samples": [
            {"k": curve.k, "wp": s.wp, "lhs": s.lhs, "rhs": s.rhs, "feasible": int(s.feasible)}
            for s in curve.samples
        ],
    }
    return report, EXIT_OK


def _calibrate(system, args) -> tuple[dict, int]:
    _require_stable(system)
    e0_entry = spectrum_kappa0(system).infimum
    matches = find_matches(system, k_max=args.kmax)
    if e0_entry is None:
        raise NoMatchError("no kappa=0 bound state for this arrangement")
    r0 = calibrate_r0(system, args.reference, matches=matches, e0=e0_entry.energy)
    best = lowest_match(matches)
    e1 = best.energy(r0)
    report = {
        "command": "calibrate-r0",
        "reference": args.reference,
        "e0": e0_entry.energy,
        "k": best.k,
        "wp_star": best.wp_star,
        "energy_coefficient": best.energy_coefficient,
        "r0": r0,
        "e1": e1,
        "total": total_energy([e0_entry.energy, e1]),
    }
    return report, EXIT_OK


def _require_stable(system):
    if not stable(system):
        raise UnstableSystemError(f"system with charges {system.charges} is unstable")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    pick = common.add_argument_group("system")
    pick.add_argument("--system", help="catalog key: " + ", ".join(e.key for e in _CATALOG))
    pick.add_argument("--charges", help="three integers, e.g. -1,-1,2")
    pick.add_argument("--masses", help="three masses in electron masses, e.g. 1,1,7294.299536")
    pick.add_argument("--config", help="JSON file with label, charges, masses")
    out = common.add_argument_group("output")
    out.add_argument("--units", choices=sorted(UNITS), default="hartree")
    out.add_argument("--format", choices=("table", "json", "csv"), default="table")
    out.add_argument("--output", help="write the report here instead of stdout")

    parser = _Parser(prog="threebody", description="Bound states of Coulomb three-body systems.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("stability", parents=[common], help="search for a feasible triangle geometry")

    p = sub.add_parser("spectrum", parents=[common], help="kappa = 0 or kappa = 1 energies")
    p.add_argument("--kappa", type=int, choices=(0, 1), default=0)
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--kmax", type=int, default=64)
    p.add_argument("--all-arrangements", action="store_true")
    p.add_argument("--r0", type=float, default=None, help="cut-off radius for kappa = 1 energies")
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS)

    p = sub.add_parser("scan", parents=[common], help="sample both sides of the kappa = 1 matching condition")
    p.add_argument("--kappa", type=int, choices=(1,), default=1)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--wp-min", type=float)
    p.add_argument("--wp-max", type=float)
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    for name in ("--n1", "--n2"):
        p.add_argument(name, type=int, default=1)
    for name in ("--l1", "--l2"):
        p.add_argument(name, type=int, default=0)

    p = sub.add_parser("calibrate-r0", parents=[common], help="fit the kappa = 1 cut-off radius")
    p.add_argument("--reference", type=float, required=True, help="reference total energy in Hartree")
    p.add_argument("--kmax", type=int, default=64)
    return parser


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.6f}"
    return "-" if value is None else str(value)


def render_table(report: dict, unit: str) -> str:
    lines = []
    command = report["command"]
    if command == "stability":
        lines.append(f"stable: {'yes' if report['stable'] else 'no'}")
        if report["witness"]:
            lines.append(f"arrangement: charges {report['arrangement']['charges']}")
            w = report["witness"]
            lines.append("witness: " + "  ".join(f"{key}={_fmt(w[key])}" for key in w))
    elif command == "spectrum" and report["kappa"] == 0:
        lines.append(f"{'arr':>3} {'charges':>12} {'n1':>3} {'n2':>3} {'k':>4} {'energy/' + unit:>18}")
        for e in report["entries"]:
            lines.append(
                f"{e['arrangement']:>3} {str(tuple(e['charges'])):>12} {e['n1']:>3} {e['n2']:>3} "
                f"{str(e['k']):>4} {_fmt(e['energy']):>18}"
            )
        best = report["infimum"]
        if best:
            lines.append(
                f"infimum: {_fmt(best['energy'])} {unit} at arrangement {best['arrangement']} "
                f"(n1={best['n1']}, n2={best['n2']}, k={best['k']})"
            )
    elif command == "spectrum":
        lines.append(f"{'k':>3} {'wp*':>10} {'n1':>3} {'n2':>3} {'nu1':>9} {'nu2':>9} {'E1*r0^2/' + unit:>16}")
        for m in report["matches"]:
            lines.append(
                f"{m['k']:>3} {_fmt(m['wp_star']):>10} {m['n1']:>3} {m['n2']:>3} {_fmt(m['nu1']):>9} "
                f"{_fmt(m['nu2']):>9} {_fmt(m['energy_coefficient']):>16}"
            )
        best = report["infimum"]
        if best:
            lines.append(f"infimum: {_fmt(best['energy_coefficient'])} {unit}/r0^2 at k={best['k']}")
        else:
            lines.append("no kappa=1 contribution")
    elif command == "scan":
        lines.append(f"{'k':>3} {'wp':>10} {'lhs':>12} {'rhs':>12} feasible")
        for s in report["samples"]:
            lines.append(f"{s['k']:>3} {_fmt(s['wp']):>10} {_fmt(s['lhs']):>12} {_fmt(s['rhs']):>12} {s['feasible']}")
    else:
        for key in ("reference", "e0", "k", "wp_star", "energy_coefficient", "r0", "e1", "total"):
            lines.append(f"{key}: {_fmt(report[key])}")
    return "\n".join(lines) + "\n"


def _csv_cell(value):
    if value is None:
        return "nan"
    return repr(value) if isinstance(value, float) else value


def render_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    command = report["command"]
    if command == "scan":
        rows, columns = report["samples"], ["k", "wp", "lhs", "rhs", "feasible"]
    elif command == "spectrum" and report["kappa"] == 0:
        rows, columns = report["entries"], ["arrangement", "n1", "n2", "l1", "l2", "k", "energy"]
    elif command == "spectrum":
        rows = report["matches"]
        columns = ["k", "wp_star", "n1", "n2", "l1", "l2", "nu1", "nu2", "energy_coefficient"]
    else:
        writer.writerow(["key", "value"])
        for key, value in report.items():
            if not isinstance(value, (dict, list)):
                writer.writerow([key, _csv_cell(value)])
        return buf.getvalue()
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(row[c]) for c in columns])
    return buf.getvalue()


_VALUE_OPTIONS = frozenset({"--charges", "--masses", "--reference", "--wp-min", "--wp-max"})


def _attach_values(argv: Sequence[str]) -> list[str]:
    """Fuse `--charges -1,-1,2` into `--charges=-1,-1,2` so argparse does not read the value as a flag."""
    out: list[str] = []
    it = iter(argv)
    for token in it:
        if token in _VALUE_OPTIONS:
            value = next(it, None)
            out.append(token if value is None else f"{token}={value}")
        else:
            out.append(token)
    return out


def make_report(argv: Sequence[str]) -> tuple[dict, int, argparse.Namespace]:
    """Parse argv and compute the report in the requested units (no I/O).

    The report holds only JSON types; non-finite floats become None.
    """
    args = build_parser().parse_args(_attach_values(argv))
    system = _resolve_system(args)
    if args.command == "spectrum" and args.nmax is None:
        args.nmax = 5 if args.kappa == 0 else 1
    handler = {
        "stability": _stability,
        "spectrum": _spectrum,
        "scan": _scan,
        "calibrate-r0": _calibrate,
    }[args.command]
    report, code = handler(system, args)
    report["system"] = _system_json(system)
    report["units"] = args.units
    report = convert_units(_json_safe(report), UNITS[args.units])
    return report, code, args


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    argv = sys.argv[1:] if argv is None else argv
    try:
        report, code, args = make_report(argv)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"threebody: error: {exc}", file=stderr)
        return EXIT_INVALID
    except (KeyError, ValueError, OSError, EmptyWindowError) as exc:
        if isinstance(exc, UnstableSystemError):
            print(f"threebody: {exc}", file=stderr)
            return EXIT_UNSTABLE
        if isinstance(exc, CalibrationError):
            print(f"threebody: {exc}", file=stderr)
            return EXIT_NO_SOLUTION
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"threebody: error: {message}", file=stderr)
        return EXIT_INVALID
    except NoMatchError as exc:
        print(f"threebody: {exc}", file=stderr)
        return EXIT_NO_SOLUTION

    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    elif args.format == "csv":
        text = render_csv(report)
    else:
        text = render_table(report, args.units)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if code == EXIT_NO_SOLUTION and report.get("command") == "spectrum":
        print("threebody: no bound state found", file=stderr)
    return code


def main() -> None:
    sys.exit(run())

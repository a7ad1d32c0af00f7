"""Batch verification front-end.

``sonine verify --config suite.json`` expands parameter grids, runs every
identity residual check and convergence study in config order, and emits a
machine-readable report.  Exit status: 0 when nothing failed or errored
(conjecture-passes are fine), 1 otherwise, 2 for an invalid config.

The JSON emitter is hand-rolled for one reason: numbers must round-trip
bit-for-bit, so every float is printed with 17 significant digits — a
guarantee ``json.dumps`` does not offer.  Reports carry no timestamps;
identical config + seed gives byte-identical output.
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import random
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .asymptotics import TARGETS, ConvergenceTable, convergence_study
from .identities import IDENTITIES, IdentityParams, list_identity_ids

__all__ = ["SuiteConfig", "SuiteReport", "ConfigError", "load_config",
           "run_suite", "emit_report", "main"]

_PARAM_FIELDS = ("alpha", "beta", "x", "y", "nu")
_CSV_COLUMNS = ("id", "alpha", "beta", "x", "y", "nu", "lhs", "rhs",
                "anomalous", "abs_residual", "rel_residual", "status")


class ConfigError(Exception):
    """Invalid suite configuration; ``problems`` lists path-qualified messages."""

    def __init__(self, problems: Sequence[str]):
        super().__init__("; ".join(problems))
        self.problems = list(problems)


@dataclass(frozen=True)
class SuiteConfig:
    """Validated suite description.

    ``identity_checks`` holds (identity_id, point-dict, expect_error) triples
    in expanded, deterministic order; ``convergence`` holds the raw
    convergence-study specs.
    """

    identity_checks: List[tuple]
    convergence: List[dict]
    tol_abs: float
    tol_rel: float
    seed: int
    output_path: Optional[str]
    output_format: str
    echo: dict


@dataclass
class SuiteReport:
    checks: List[dict] = field(default_factory=list)
    convergence: List[dict] = field(default_factory=list)
    summary: Dict[str, int] = field(default_factory=dict)
    config_echo: dict = field(default_factory=dict)
    tool_version: str = __version__


# --------------------------------------------------------------------------
# config loading
# --------------------------------------------------------------------------

def _expand_axis(spec, where: str, problems: List[str]) -> List:
    if isinstance(spec, list):
        return list(spec)
    if isinstance(spec, dict):
        missing = {"start", "stop", "step"} - set(spec)
        if missing:
            problems.append(f"{where}: range needs start/stop/step, missing {sorted(missing)}")
            return []
        start, stop, step = spec["start"], spec["stop"], spec["step"]
        if not step > 0:
            problems.append(f"{where}: step must be positive")
            return []
        values = []
        v = float(start)
        while v <= float(stop) + 1e-12 * max(1.0, abs(step)):
            values.append(v)
            v = float(start) + len(values) * float(step)
        return values
    return [spec]


def _expand_entry(entry: dict, index: int, rng: random.Random, problems: List[str]) -> List[tuple]:
    where = f"identities[{index}]"
    if not isinstance(entry, dict):
        problems.append(f"{where}: must be an object")
        return []
    identity_id = entry.get("id")
    if identity_id not in IDENTITIES:
        problems.append(f"{where}.id: unknown identity {identity_id!r}; "
                        f"valid ids: {', '.join(list_identity_ids())}")
        return []
    expect_error = bool(entry.get("expect-error", False))
    points: List[dict] = []
    for p_index, point in enumerate(entry.get("points", [])):
        if not isinstance(point, dict):
            problems.append(f"{where}.points[{p_index}]: must be an object")
            continue
        bad = set(point) - set(_PARAM_FIELDS)
        if bad:
            problems.append(f"{where}.points[{p_index}]: unknown field(s) {sorted(bad)}")
            continue
        points.append(dict(point))
    ranges = entry.get("ranges")
    if ranges is not None:
        if not isinstance(ranges, dict):
            problems.append(f"{where}.ranges: must be an object")
        else:
            bad = set(ranges) - set(_PARAM_FIELDS)
            if bad:
                problems.append(f"{where}.ranges: unknown field(s) {sorted(bad)}")
            else:
                axes = {name: _expand_axis(spec, f"{where}.ranges.{name}", problems)
                        for name, spec in ranges.items()}
                names = list(axes)
                for combo in itertools.product(*(axes[n] for n in names)):
                    points.append(dict(zip(names, combo)))
    sample = entry.get("sample")
    if sample is not None:
        if not (isinstance(sample, int) and sample > 0):
            problems.append(f"{where}.sample: must be a positive integer")
        elif sample < len(points):
            points = rng.sample(points, sample)
    if not points:
        problems.append(f"{where}: no parameter points")
    return [(identity_id, point, expect_error) for point in points]


def parse_config(raw: dict) -> SuiteConfig:
    """Validate a parsed JSON object into a SuiteConfig; raises ConfigError."""
    problems: List[str] = []
    if not isinstance(raw, dict):
        raise ConfigError(["top level: must be a JSON object"])
    known = {"identities", "tolerances", "convergence", "seed", "output"}
    for key in set(raw) - known:
        problems.append(f"{key}: unknown top-level field")

    tolerances = raw.get("tolerances", {})
    tol_abs = tolerances.get("abs", 1e-9) if isinstance(tolerances, dict) else 1e-9
    tol_rel = tolerances.get("rel", 1e-9) if isinstance(tolerances, dict) else 1e-9
    if not isinstance(tolerances, dict):
        problems.append("tolerances: must be an object")
    for name, value in (("abs", tol_abs), ("rel", tol_rel)):
        if not (isinstance(value, (int, float)) and value >= 0):
            problems.append(f"tolerances.{name}: must be a non-negative number")

    seed = raw.get("seed", 0)
    if not isinstance(seed, int):
        problems.append("seed: must be an integer")
        seed = 0
    rng = random.Random(seed)

    checks: List[tuple] = []
    identities = raw.get("identities", [])
    if not isinstance(identities, list):
        problems.append("identities: must be a list")
    else:
        for index, entry in enumerate(identities):
            checks.extend(_expand_entry(entry, index, rng, problems))

    convergence = raw.get("convergence", [])
    if not isinstance(convergence, list):
        problems.append("convergence: must be a list")
        convergence = []
    else:
        for index, entry in enumerate(convergence):
            where = f"convergence[{index}]"
            if not isinstance(entry, dict):
                problems.append(f"{where}: must be an object")
                continue
            if entry.get("target") not in TARGETS:
                problems.append(f"{where}.target: unknown target {entry.get('target')!r}; "
                                f"valid: {', '.join(sorted(TARGETS))}")
            n_list = entry.get("N_list")
            if not (isinstance(n_list, list) and len(n_list) >= 3
                    and all(isinstance(n, int) for n in n_list)
                    and all(b > a for a, b in zip(n_list, n_list[1:]))):
                problems.append(f"{where}.N_list: must be a strictly increasing "
                                "integer list with >= 3 entries")
            if not isinstance(entry.get("params", {}), dict):
                problems.append(f"{where}.params: must be an object")
            expect_rate = entry.get("expect_rate")
            if expect_rate is not None and not (
                    isinstance(expect_rate, list) and len(expect_rate) == 2):
                problems.append(f"{where}.expect_rate: must be [low, high]")

    output = raw.get("output", {})
    if not isinstance(output, dict):
        problems.append("output: must be an object")
        output = {}
    output_path = output.get("path")
    output_format = output.get("format", "json")
    if output_format not in ("json", "csv"):
        problems.append(f"output.format: must be 'json' or 'csv', got {output_format!r}")

    if problems:
        raise ConfigError(problems)
    return SuiteConfig(
        identity_checks=checks,
        convergence=list(convergence),
        tol_abs=float(tol_abs),
        tol_rel=float(tol_rel),
        seed=seed,
        output_path=output_path,
        output_format=output_format,
        echo=raw,
    )


def load_config(path: str) -> SuiteConfig:
    """Read and validate a JSON suite config; ConfigError carries diagnostics."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ConfigError([f"{path}: {e.strerror or e}"])
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError([f"{path}: line {e.lineno} column {e.colno}: {e.msg}"])
    return parse_config(raw)


# --------------------------------------------------------------------------
# running
# --------------------------------------------------------------------------

def _point_echo(point: dict) -> dict:
    return {name: point[name] for name in _PARAM_FIELDS if name in point}


def _run_identity_check(identity_id: str, point: dict, expect_error: bool,
                        tol_abs: float, tol_rel: float) -> dict:
    row: Dict[str, Any] = {"id": identity_id, "params": _point_echo(point)}
    nan = math.nan
    try:
        params = IdentityParams(**point)
        report = IDENTITIES[identity_id](params, tol_abs=tol_abs, tol_rel=tol_rel)
    except Exception as e:  # captured, never aborts the suite
        if expect_error:
            row.update(lhs=nan, rhs=nan, anomalous=nan, abs_residual=nan,
                       rel_residual=nan, quadrature_error=nan, status="pass",
                       message=f"expected error observed: {e}")
        else:
            row.update(lhs=nan, rhs=nan, anomalous=nan, abs_residual=nan,
                       rel_residual=nan, quadrature_error=nan, status="error",
                       message=f"{type(e).__name__}: {e}")
        return row
    if expect_error:
        row.update(lhs=report.lhs, rhs=report.rhs, anomalous=report.anomalous,
                   abs_residual=report.abs_residual, rel_residual=report.rel_residual,
                   quadrature_error=report.quadrature_error, status="fail",
                   message="expected an error but the check ran")
        return row
    row.update(lhs=report.lhs, rhs=report.rhs, anomalous=report.anomalous,
               abs_residual=report.abs_residual, rel_residual=report.rel_residual,
               quadrature_error=report.quadrature_error, status=report.status)
    return row


def _run_convergence_entry(entry: dict) -> dict:
    target = entry["target"]
    params = dict(entry.get("params", {}))
    n_list = list(entry["N_list"])
    row: Dict[str, Any] = {"target": target, "params": params, "N_list": n_list}
    try:
        table = convergence_study(target, n_list, params)
    except Exception as e:
        row.update(entries=[], fitted_rate=math.nan, status="error",
                   message=f"{type(e).__name__}: {e}")
        return row
    row["entries"] = [list(e) for e in table.entries]
    row["fitted_rate"] = table.fitted_rate
    expect_rate = entry.get("expect_rate")
    if expect_rate is None:
        row["status"] = "pass"
    else:
        lo, hi = float(expect_rate[0]), float(expect_rate[1])
        # -inf means the finite side is already exact — stronger than any rate
        ok = table.fitted_rate == -math.inf or lo <= table.fitted_rate <= hi
        row["status"] = "pass" if ok else "fail"
    return row


def run_suite(config: SuiteConfig) -> SuiteReport:
    """Evaluate every check in config order; deterministic given the seed."""
    report = SuiteReport(config_echo=config.echo)
    for identity_id, point, expect_error in config.identity_checks:
        report.checks.append(_run_identity_check(
            identity_id, point, expect_error, config.tol_abs, config.tol_rel))
    for entry in config.convergence:
        report.convergence.append(_run_convergence_entry(entry))
    statuses = [row["status"] for row in report.checks] \
        + [row["status"] for row in report.convergence]
    report.summary = {
        "total": len(statuses),
        "passed": statuses.count("pass"),
        "failed": statuses.count("fail"),
        "conjecture_passed": statuses.count("conjecture-pass"),
        "errored": statuses.count("error"),
    }
    return report


def exit_status(report: SuiteReport) -> int:
    s = report.summary
    return 0 if s.get("failed", 0) == 0 and s.get("errored", 0) == 0 else 1


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------

def _format_float(v: float) -> str:
    if math.isnan(v):
        return "NaN"
    if math.isinf(v):
        return "Infinity" if v > 0 else "-Infinity"
    return format(v, ".17g")


def _to_json(value, indent: int) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        parts = [f"{inner}{json.dumps(str(k))}: {_to_json(v, indent + 1)}"
                 for k, v in value.items()]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        parts = [f"{inner}{_to_json(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(parts) + "\n" + pad + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _format_float(value)
    if value is None:
        return "null"
    return json.dumps(str(value))


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return _format_float(value)
    return str(value)


def emit_report(report: SuiteReport, fmt: str = "json") -> bytes:
    """Serialize a suite report; JSON floats carry 17 significant digits.

    CSV is one row per check (convergence studies are flattened onto the
    same columns, keyed ``convergence:<target>``, with the largest-N pair in
    the lhs/rhs slots).
    """
    if fmt == "json":
        doc = {
            "tool_version": report.tool_version,
            "summary": report.summary,
            "checks": report.checks,
            "convergence": report.convergence,
            "config_echo": report.config_echo,
        }
        return (_to_json(doc, 0) + "\n").encode()
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [",".join(_CSV_COLUMNS)]
    for row in report.checks:
        params = row.get("params", {})
        cells = [row["id"]]
        cells += [_csv_cell(params.get(name)) for name in _PARAM_FIELDS]
        cells += [_csv_cell(row.get(name)) for name in
                  ("lhs", "rhs", "anomalous", "abs_residual", "rel_residual")]
        cells.append(row["status"])
        lines.append(",".join(cells))
    for row in report.convergence:
        params = row.get("params", {})
        cells = [f"convergence:{row['target']}"]
        cells += [_csv_cell(params.get(name)) for name in _PARAM_FIELDS]
        entries = row.get("entries") or []
        if entries:
            last = entries[-1]
            finite, limit, err = last[1], last[2], last[3]
            scale = max(abs(finite), abs(limit), 1e-30)
            cells += [_csv_cell(finite), _csv_cell(limit), "",
                      _csv_cell(err), _csv_cell(err / scale)]
        else:
            cells += ["", "", "", "", ""]
        cells.append(row["status"])
        lines.append(",".join(cells))
    return ("\n".join(lines) + "\n").encode()


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sonine",
        description="Residual-check Bessel/Laguerre identity suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser("verify", help="run a suite from a JSON config")
    verify.add_argument("--config", required=True, help="path to suite config JSON")
    verify.add_argument("--out", help="output path (overrides config)")
    verify.add_argument("--format", choices=("json", "csv"),
                        help="output format (overrides config)")
    verify.add_argument("--tol-abs", type=float, help="absolute residual tolerance")
    verify.add_argument("--tol-rel", type=float, help="relative residual tolerance")
    sub.add_parser("list-identities", help="print the stable identity ids")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "list-identities":
        for identity_id in list_identity_ids():
            print(identity_id)
        return 0
    try:
        config = load_config(args.config)
    except ConfigError as e:
        for problem in e.problems:
            print(f"config error: {problem}", file=sys.stderr)
        return 2
    if args.tol_abs is not None or args.tol_rel is not None:
        config = SuiteConfig(
            identity_checks=config.identity_checks,
            convergence=config.convergence,
            tol_abs=config.tol_abs if args.tol_abs is None else args.tol_abs,
            tol_rel=config.tol_rel if args.tol_rel is None else args.tol_rel,
            seed=config.seed,
            output_path=config.output_path,
            output_format=config.output_format,
            echo=config.echo,
        )
    report = run_suite(config)
    fmt = args.format or config.output_format
    payload = emit_report(report, fmt)
    out_path = args.out or config.output_path
    if out_path:
        with open(out_path, "wb") as fh:
            fh.write(payload)
        s = report.summary
        print(f"{s['total']} checks: {s['passed']} passed, {s['failed']} failed, "
              f"{s['conjecture_passed']} conjecture-passed, {s['errored']} errored "
              f"-> {out_path}")
    else:
        sys.stdout.buffer.write(payload)
    return exit_status(report)


if __name__ == "__main__":
    sys.exit(main())

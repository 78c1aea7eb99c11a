"""Command-line front end.

Subcommands evaluate the library over scalars or p-grids and stream one
record per result as CSV (default) or JSON lines.  Output is deterministic:
identical invocations, including ``--seed``, produce byte-identical bytes.
Data goes to stdout, diagnostics to stderr.  Exit code 0 means every
emitted record passed, 1 flags any failed or errored record, 2 is a usage
error.

Numeric flags accept exact rational syntax ``a/b`` in addition to decimals,
so interval boundaries like 2/4 parse to the intended double.  Floats are
printed with 17 significant digits, which round-trips doubles losslessly.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from . import chvatal, nbdist, oracle
from .errors import ConvergenceError

__all__ = ["main"]

DEFAULT_TOL = 1e-10

SEQ_FORMS_R_GRID = (0.3, 0.5, 1.0, 2.0, 2.7, 5.0, 10.0)
SEQ_FORMS_N_MAX = 100
TAIL_R_GRID = (0.5, 1.0, 3.0, 8.0)
TAIL_N_MAX = 30
TAIL_TOL = 1e-8
COEFF_R_GRID = (0.5, 1.0, 2.0, 3.3)
COEFF_N_MAX = 25
MONOTONE_N_MAX = 300
CHVATAL_N_MAX = 30

SUITES = ("lemma21", "lemma22", "coeff", "monotone", "bound222", "chvatal-binomial", "all")


class UsageError(Exception):
    """Invalid flag combination detected after parsing."""


@dataclass
class OutputRecord:
    command: str
    inputs: dict
    outputs: dict
    status: str = "ok"


@dataclass
class Schema:
    input_keys: tuple[str, ...]
    output_keys: tuple[str, ...] = field(default=())


def _parse_number(text: str) -> float:
    """Parse a decimal or exact-rational (a/b) literal to a float."""
    text = text.strip()
    try:
        if "/" in text:
            return float(Fraction(text))
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def _parse_grid(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"grid must be start:stop:count, got {text!r}"
        )
    start = _parse_number(parts[0])
    stop = _parse_number(parts[1])
    try:
        count = int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"grid count must be an integer: {parts[2]!r}") from exc
    if count < 1:
        raise argparse.ArgumentTypeError("grid count must be >= 1")
    return start, stop, count


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    if isinstance(value, (list, tuple)):
        return ";".join(_format_value(v) for v in value)
    if value is None:
        return ""
    return str(value)


def _json_ready(value):
    if isinstance(value, (list, tuple)):
        return [_json_ready(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return _format_value(value)
    return value


class RecordWriter:
    """Streams records in a fixed column order as CSV or JSON lines."""

    def __init__(self, fmt: str, schema: Schema, stream: io.TextIOBase):
        self.fmt = fmt
        self.schema = schema
        self.stream = stream
        self.any_not_ok = False
        self._csv = None

    def write(self, record: OutputRecord) -> None:
        if record.status != "ok":
            self.any_not_ok = True
        if self.fmt == "json":
            payload = {
                "command": record.command,
                "inputs": {k: _json_ready(record.inputs.get(k)) for k in self.schema.input_keys},
                "outputs": {
                    k: _json_ready(record.outputs.get(k)) for k in self.schema.output_keys
                },
                "status": record.status,
            }
            self.stream.write(json.dumps(payload, separators=(", ", ": ")) + "\n")
            return
        if self._csv is None:
            self._csv = csv.writer(self.stream, lineterminator="\n")
            self._csv.writerow(
                ["command", *self.schema.input_keys, *self.schema.output_keys, "status"]
            )
        row = [record.command]
        row.extend(_format_value(record.inputs.get(k)) for k in self.schema.input_keys)
        row.extend(_format_value(record.outputs.get(k)) for k in self.schema.output_keys)
        row.append(record.status)
        self._csv.writerow(row)


def _p_values(args) -> list[float]:
    """Scalar --p or an inclusive --grid of p values, with p <= 0 nudged up."""
    if args.grid is not None:
        start, stop, count = args.grid
        if count == 1:
            if start != stop:
                raise UsageError("single-point grid requires start == stop")
            points = [start]
            step = stop if stop > 0 else 0.0
        else:
            step = (stop - start) / (count - 1)
            points = [start + i * step for i in range(count)]
            points[-1] = stop
        if step <= 0 and count > 1:
            raise UsageError("grid must be increasing")
        nudged = False
        for i, p in enumerate(points):
            if p <= 0.0:
                points[i] = step
                nudged = True
        if nudged:
            print(
                "warning: p <= 0 lies outside the domain (0, 1]; "
                f"nudged to the grid step {step:.17g}",
                file=sys.stderr,
            )
        if any(p > 1.0 or p <= 0.0 for p in points):
            raise UsageError("grid p values must lie in (0, 1]")
        return points
    if args.p is None:
        raise UsageError("provide --p or --grid")
    return [args.p]


def _require(args, name: str):
    value = getattr(args, name.replace("-", "_"), None)
    if value is None:
        raise UsageError(f"--{name} is required for this subcommand")
    return value


# ---------------------------------------------------------------------------
# eval subcommands


def _cmd_pmf(args) -> tuple[Schema, Iterator[OutputRecord]]:
    schema = Schema(("r", "p", "n"), ("value", "path"))
    r = _require(args, "r")
    n = _require(args, "n")

    def rows():
        for p in _p_values(args):
            inputs = {"r": r, "p": p, "n": n}
            try:
                result = nbdist.nb_pmf(nbdist.NBParams(r, p), n)
            except ValueError as exc:
                print(f"error: {exc}", file=sys.stderr)
                yield OutputRecord("pmf", inputs, {}, "error")
                continue
            yield OutputRecord("pmf", inputs, {"value": result.value, "path": result.path})

    return schema, rows()


def _cmd_cdf(args) -> tuple[Schema, Iterator[OutputRecord]]:
    schema = Schema(("r", "p", "n"), ("direct_sum", "incomplete_beta", "abs_diff"))
    r = _require(args, "r")
    n = _require(args, "n")

    def rows():
        for p in _p_values(args):
            inputs = {"r": r, "p": p, "n": n}
            try:
                params = nbdist.NBParams(r, p)
                by_sum = nbdist.nb_cdf_sum(params, n).value
                by_beta = nbdist.nb_cdf_beta(params, n).value
            except (ValueError, ConvergenceError) as exc:
                print(f"error: {exc}", file=sys.stderr)
                yield OutputRecord("cdf", inputs, {}, "error")
                continue
            yield OutputRecord(
                "cdf",
                inputs,
                {
                    "direct_sum": by_sum,
                    "incomplete_beta": by_beta,
                    "abs_diff": abs(by_sum - by_beta),
                },
            )

    return schema, rows()


def _cmd_mean_tail(args) -> tuple[Schema, Iterator[OutputRecord]]:
    schema = Schema(("r", "p"), ("mean", "interval_n", "value"))
    r = _require(args, "r")

    def rows():
        for p in _p_values(args):
            inputs = {"r": r, "p": p}
            try:
                params = nbdist.NBParams(r, p)
                n = nbdist.mean_interval_index(params)
                value = nbdist.mean_tail_prob(params).value
            except ValueError as exc:
                print(f"error: {exc}", file=sys.stderr)
                yield OutputRecord("mean-tail", inputs, {}, "error")
                continue
            yield OutputRecord(
                "mean-tail",
                inputs,
                {"mean": nbdist.nb_mean(params), "interval_n": n, "value": value},
            )

    return schema, rows()


def _cmd_inf(args) -> tuple[Schema, Iterator[OutputRecord]]:
    schema = Schema(("r", "n"), ("value", "attained"))
    r = _require(args, "r")

    def rows():
        inputs = {"r": r, "n": args.n}
        try:
            if args.n is None:
                value = chvatal.global_infimum(r)
            else:
                value = chvatal.interval_infimum(r, args.n)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            yield OutputRecord("inf", inputs, {}, "error")
            return
        yield OutputRecord("inf", inputs, {"value": value, "attained": False})

    return schema, rows()


def _cmd_a_seq(args) -> tuple[Schema, Iterator[OutputRecord]]:
    schema = Schema(("r",), ("n", "value", "form"))
    r = _require(args, "r")
    n_max = _require(args, "n-max")

    def rows():
        for n in range(n_max + 1):
            entry = chvatal.infimum_seq_sum(r, n)
            yield OutputRecord(
                "a-seq", {"r": r}, {"n": entry.n, "value": entry.value, "form": entry.form}
            )

    return schema, rows()


# ---------------------------------------------------------------------------
# verify


def _report_record(suite: str, inputs: dict, report: chvatal.VerifyReport) -> OutputRecord:
    status = "ok" if report.passed else "failed"
    if report.error:
        status = "error"
    return OutputRecord(
        "verify",
        {"suite": suite, **inputs},
        {
            "lhs": report.lhs,
            "rhs": report.rhs,
            "abs_err": report.abs_err,
            "rel_err": report.rel_err,
            "tolerance": report.tolerance,
            "argmin": None,
            "closest": None,
        },
        status,
    )


def _closest_to_two_thirds(n: int) -> list[int]:
    target = 2 * n / 3
    best = min(abs(m - target) for m in range(n + 1))
    return [m for m in range(n + 1) if abs(m - target) == best]


def _verify_rows(args) -> Iterator[OutputRecord]:
    suite = args.suite
    tol = args.tol
    r_grid = [args.r] if args.r is not None else None

    if suite in ("lemma21", "all"):
        rs = r_grid or SEQ_FORMS_R_GRID
        n_max = args.n_max if args.n_max is not None else SEQ_FORMS_N_MAX
        check_tol = tol if tol is not None else DEFAULT_TOL
        for r in rs:
            for n in range(n_max + 1):
                by_sum = chvatal.infimum_seq_sum(r, n).value
                by_integral = chvatal.infimum_seq_integral(r, n).value
                report = chvatal._residual_report(
                    by_sum, by_integral, check_tol, f"seq forms r={r:.17g} n={n}"
                )
                yield _report_record("lemma21", {"r": r, "n": n, "m": None}, report)

    if suite in ("lemma22", "all"):
        rs = r_grid or TAIL_R_GRID
        n_max = args.n_max if args.n_max is not None else TAIL_N_MAX
        check_tol = tol if tol is not None else TAIL_TOL
        for r in rs:
            for n in range(n_max + 1):
                report = chvatal.tail_identity_check(r, n, check_tol)
                yield _report_record("lemma22", {"r": r, "n": n, "m": None}, report)

    if suite in ("coeff", "all"):
        rs = r_grid or COEFF_R_GRID
        n_max = args.n_max if args.n_max is not None else COEFF_N_MAX
        check_tol = tol if tol is not None else DEFAULT_TOL
        for r in rs:
            for n in range(1, n_max + 1):
                for m in range(1, n + 1):
                    report = chvatal.coefficient_identity_check(r, n, m, check_tol)
                    yield _report_record("coeff", {"r": r, "n": n, "m": m}, report)

    if suite in ("monotone", "all"):
        rs = r_grid or SEQ_FORMS_R_GRID
        n_max = args.n_max if args.n_max is not None else MONOTONE_N_MAX
        for r in rs:
            for n, report in enumerate(chvatal.monotonicity_check(r, n_max)):
                yield _report_record("monotone", {"r": r, "n": n, "m": None}, report)

    if suite in ("bound222", "all"):
        rs = r_grid or TAIL_R_GRID
        n_max = args.n_max if args.n_max is not None else TAIL_N_MAX
        for r in rs:
            for n in range(n_max + 1):
                yield _report_record(
                    "bound222", {"r": r, "n": n, "m": None}, chvatal.panel_bound_check(r, n)
                )
                yield _report_record(
                    "bound222", {"r": r, "n": n, "m": None}, chvatal.panel_decrease_check(r, n)
                )

    if suite in ("chvatal-binomial", "all"):
        n_max = args.n_max if args.n_max is not None else CHVATAL_N_MAX
        for n in range(2, n_max + 1):
            argmin = chvatal.binomial_chvatal_argmin(n)
            closest = _closest_to_two_thirds(n)
            ok = set(argmin) <= set(closest)
            yield OutputRecord(
                "verify",
                {"suite": "chvatal-binomial", "r": None, "n": n, "m": None},
                {
                    "lhs": None,
                    "rhs": None,
                    "abs_err": None,
                    "rel_err": None,
                    "tolerance": None,
                    "argmin": argmin,
                    "closest": closest,
                },
                "ok" if ok else "failed",
            )


def _cmd_verify(args) -> tuple[Schema, Iterator[OutputRecord]]:
    schema = Schema(
        ("suite", "r", "n", "m"),
        ("lhs", "rhs", "abs_err", "rel_err", "tolerance", "argmin", "closest"),
    )
    return schema, _verify_rows(args)


# ---------------------------------------------------------------------------
# sweep and sample


def _cmd_sweep(args) -> tuple[Schema, Iterator[OutputRecord]]:
    schema = Schema(
        ("r", "p"), ("interval_n", "mean_tail", "grid_min", "infimum", "gap")
    )
    if not args.r:
        raise UsageError("--r is required for sweep (repeatable)")
    if args.grid is None:
        raise UsageError("--grid start:stop:count is required for sweep")
    p_values = _p_values(args)

    def rows():
        for r in args.r:
            grid_min = math.inf
            for p in p_values:
                params = nbdist.NBParams(r, p)
                n = nbdist.mean_interval_index(params)
                value = nbdist.mean_tail_prob(params).value
                grid_min = min(grid_min, value)
                yield OutputRecord(
                    "sweep",
                    {"r": r, "p": p},
                    {
                        "interval_n": n,
                        "mean_tail": value,
                        "grid_min": None,
                        "infimum": None,
                        "gap": None,
                    },
                )
            infimum = chvatal.global_infimum(r)
            yield OutputRecord(
                "sweep",
                {"r": r, "p": None},
                {
                    "interval_n": None,
                    "mean_tail": None,
                    "grid_min": grid_min,
                    "infimum": infimum,
                    "gap": grid_min - infimum,
                },
            )

    return schema, rows()


def _cmd_sample(args) -> tuple[Schema, Iterator[OutputRecord]]:
    schema = Schema(
        ("r", "p", "seed", "draws", "n"),
        ("index", "value", "mean", "estimate", "std_error", "analytic"),
    )
    r = _require(args, "r")
    p = _require(args, "p")
    draws = args.draws if args.draws is not None else 10
    seed = args.seed

    def rows():
        inputs = {"r": r, "p": p, "seed": seed, "draws": draws, "n": args.n}
        stream = oracle.SampleStream(r, p, seed)
        total = 0
        hits = 0
        for index in range(draws):
            value = stream.draw()
            total += value
            if args.n is not None and value <= args.n:
                hits += 1
            yield OutputRecord(
                "sample",
                inputs,
                {
                    "index": index,
                    "value": value,
                    "mean": None,
                    "estimate": None,
                    "std_error": None,
                    "analytic": None,
                },
            )
        outputs = {
            "index": None,
            "value": None,
            "mean": total / draws,
            "estimate": None,
            "std_error": None,
            "analytic": None,
        }
        if args.n is not None:
            estimate = hits / draws
            outputs["estimate"] = estimate
            outputs["std_error"] = math.sqrt(estimate * (1.0 - estimate) / draws)
            outputs["analytic"] = nbdist.nb_cdf_sum(nbdist.NBParams(r, p), args.n).value
        yield OutputRecord("sample", inputs, outputs)

    return schema, rows()


# ---------------------------------------------------------------------------
# parser and entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nbtail",
        description=(
            "Negative binomial mean-tail probabilities, their infimum over the "
            "success parameter, and numerical verification of the identities "
            "behind the closed form (r/(r+1))^r."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, *, r_repeat: bool = False) -> None:
        if r_repeat:
            p.add_argument("--r", type=_parse_number, action="append", help="shape r > 0 (repeatable)")
        else:
            p.add_argument("--r", type=_parse_number, help="shape r > 0")
        p.add_argument("--p", type=_parse_number, help="success probability in (0, 1]")
        p.add_argument("--n", type=int, help="count argument n >= 0")
        p.add_argument("--n-max", type=int, help="upper bound for n scans")
        p.add_argument("--grid", type=_parse_grid, help="p grid as start:stop:count")
        p.add_argument("--tol", type=_parse_number, default=None, help="residual tolerance")
        p.add_argument("--seed", type=int, default=0, help="RNG seed (sampling)")
        p.add_argument("--draws", type=int, default=None, help="number of variates")
        p.add_argument(
            "--format", choices=("csv", "json"), default="csv", help="output format"
        )

    handlers = {
        "pmf": _cmd_pmf,
        "cdf": _cmd_cdf,
        "mean-tail": _cmd_mean_tail,
        "inf": _cmd_inf,
        "a-seq": _cmd_a_seq,
        "verify": _cmd_verify,
        "sweep": _cmd_sweep,
        "sample": _cmd_sample,
    }
    descriptions = {
        "pmf": "pmf of NB(r, p) at n",
        "cdf": "partial sum and incomplete-Beta CDF routes at n",
        "mean-tail": "P(NB(r, p) <= mean)",
        "inf": "global (or per-interval, with --n) infimum of the mean-tail probability",
        "a-seq": "per-interval infimum sequence values for n = 0..n-max",
        "verify": "run a named identity-check suite; exit 0 iff all pass",
        "sweep": "tabulate mean-tail probabilities over a p grid with per-r summaries",
        "sample": "draw seeded NB variates; with --n also a CDF estimate",
    }
    for name, handler in handlers.items():
        p = sub.add_parser(name, help=descriptions[name])
        add_common(p, r_repeat=(name == "sweep"))
        if name == "verify":
            p.add_argument("--suite", choices=SUITES, default="all", help="check suite")
        p.set_defaults(handler=handler)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        schema, rows = args.handler(args)
        writer = RecordWriter(args.format, schema, sys.stdout)
        for record in rows:
            writer.write(record)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0
    return 1 if writer.any_not_ok else 0


if __name__ == "__main__":
    sys.exit(main())

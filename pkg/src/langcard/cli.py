"""Command-line front end.

Every command writes its result file atomically together with a JSON manifest
holding the full configuration, so a run can be reproduced exactly (the
manifest's duration field is the only part that varies between runs).

Exit codes: 0 success, 1 usage, 2 input parse problem, 3 resource limit
exceeded, 4 method refusal (size guard).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .automata import Dfa, format_traces, parse_dfa, parse_traces, serialize_dfa
from .baselines import (
    DEFAULT_SEED,
    RandomWalkConfig,
    WMethodConfig,
    mbt_assessment,
    sigma_sampling_assessment,
    trace_similarity,
    trace_similarity_conditioned,
)
from .counting import WorkBudget, compute_ogf, coefficients, count_dp
from .errors import (
    AlphabetMismatchError,
    LangcardError,
    ModelParseError,
    ResourceLimitError,
    SizeGuardError,
)
from .inference import InferenceConfig, TrainingSet, generate_training_set, k_tails
from .metrics import (
    assess,
    assessment_csv,
    confusion_counts,
    counts_csv,
    cumulative_assessment,
    format_value,
    single_length_assessment,
)
from .report import render_chart, series_from_csv

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_RESOURCE = 3
EXIT_REFUSED = 4

BUDGET_ENV = "LANGCARD_WORK_BUDGET"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


@dataclass
class RunManifest:
    """Reproducibility record written next to every result file."""

    command: str
    inputs: dict
    config: dict
    tool_version: str = __version__
    duration_s: float = 0.0
    extra: dict = field(default_factory=dict)

    def write(self, result_path):
        payload = {
            "command": self.command,
            "tool_version": self.tool_version,
            "inputs": self.inputs,
            "config": self.config,
            "duration_s": round(self.duration_s, 3),
        }
        payload.update(self.extra)
        _atomic_write(result_path + ".manifest.json", json.dumps(payload, indent=2) + "\n")


def _atomic_write(path, text):
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise ModelParseError(f"cannot read {path}: {exc.strerror}") from None


def _load_model(path) -> Dfa:
    return parse_dfa(_read(path))


def _load_pair(ref_path, inf_path):
    reference = _load_model(ref_path)
    inferred = _load_model(inf_path)
    if reference.alphabet.symbols != inferred.alphabet.symbols:
        # same names in a different order are tolerated; reindex onto R
        inferred = inferred.reindex_to(reference.alphabet)
    return reference, inferred


def _budget_from_env():
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return None
    seconds, _, degree = raw.partition(":")
    budget = WorkBudget()
    try:
        if seconds:
            budget.time_limit_s = float(seconds)
        if degree:
            budget.max_degree = int(degree)
    except ValueError:
        raise _UsageError(
            f"{BUDGET_ENV} must look like 'SECONDS' or 'SECONDS:MAXDEGREE'"
        ) from None
    return budget


def _parse_range(text):
    lo, sep, hi = text.partition("..")
    if not sep:
        raise _UsageError("range must look like A..B")
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise _UsageError("range bounds must be integers") from None
    if lo < 0 or hi < lo:
        raise _UsageError("range must satisfy 0 <= A <= B")
    return lo, hi


def build_parser():
    parser = _Parser(prog="langcard", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("assess", help="exact precision/recall of a model pair")
    p.add_argument("reference")
    p.add_argument("inferred")
    p.add_argument("--max-length", type=int, default=200)
    p.add_argument("--range", dest="length_range", default=None, metavar="A..B")
    p.add_argument("--mode", choices=("single", "cumulative", "both"), default="both")
    p.add_argument("--digits", type=int, default=6)
    p.add_argument("--out", required=True)

    p = sub.add_parser("count", help="count accepted traces per length")
    p.add_argument("model")
    p.add_argument("--max-length", type=int, default=200)
    p.add_argument("--oracle", choices=("dp",), default=None)
    p.add_argument("--out", required=True)

    p = sub.add_parser("baseline", help="run a comparison assessment method")
    p.add_argument(
        "method",
        choices=("trace-sim", "trace-sim-conditioned", "mbt", "sigma-sample"),
    )
    p.add_argument("reference")
    p.add_argument("inferred")
    p.add_argument("--pa", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--target-traces", type=int, default=100_000)
    p.add_argument("--min-coverage", type=int, default=10)
    p.add_argument("--time-limit", type=float, default=1800.0)
    p.add_argument("--m-bound", type=int, default=None, help="state bound for mbt")
    p.add_argument("--length", type=int, default=None, help="trace length for sigma-sample")
    p.add_argument("--samples", type=int, default=1000, help="accepted samples for sigma-sample")
    p.add_argument("--metric", choices=("precision", "recall"), default="precision")
    p.add_argument("--digits", type=int, default=6)
    p.add_argument("--out", required=True)

    p = sub.add_parser("infer", help="k-tails inference from a trace file")
    p.add_argument("traces")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alphabet", default=None, help="space-separated symbols (default: from traces)")
    p.add_argument("--out-model", required=True)

    p = sub.add_parser("gen-traces", help="random-walk training traces from a model")
    p.add_argument("model")
    p.add_argument("--pa", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--min-traces", type=int, default=100)
    p.add_argument("--min-state-visits", type=int, default=4)
    p.add_argument("--time-limit", type=float, default=1800.0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("report", help="render assessment CSVs as an SVG chart")
    p.add_argument("csvs", nargs="+")
    p.add_argument("--columns", default="precision_eq,recall_eq")
    p.add_argument("--format", choices=("csv", "svg"), default="svg")
    p.add_argument("--title", default="")
    p.add_argument("--out", required=True)
    return parser


def _cmd_assess(args):
    started = time.monotonic()
    reference, inferred = _load_pair(args.reference, args.inferred)
    if args.length_range:
        lo, hi = _parse_range(args.length_range)
    else:
        lo, hi = 0, args.max_length
    n_max = max(args.max_length, hi)
    counts = confusion_counts(reference, inferred, n_max, _budget_from_env())
    if args.mode == "single":
        result = single_length_assessment(counts)
    elif args.mode == "cumulative":
        result = cumulative_assessment(counts)
    else:
        result = assess(counts)
    if result.per_length is not None:
        result.per_length = [r for r in result.per_length if lo <= r.n <= hi]
    if result.cumulative is not None:
        result.cumulative = [r for r in result.cumulative if r.n <= args.max_length]
    _atomic_write(args.out, assessment_csv(result, args.digits))
    RunManifest(
        command="assess",
        inputs={"reference": args.reference, "inferred": args.inferred},
        config={
            "max_length": args.max_length,
            "range": [lo, hi],
            "mode": args.mode,
            "digits": args.digits,
        },
        duration_s=time.monotonic() - started,
    ).write(args.out)
    return EXIT_OK


def _cmd_count(args):
    started = time.monotonic()
    model = _load_model(args.model)
    extra = {}
    if args.oracle == "dp":
        counts = count_dp(model, args.max_length)
    else:
        ogf = compute_ogf(model, _budget_from_env())
        counts = coefficients(ogf, args.max_length)
        extra["ogf"] = str(ogf)
        print(f"OGF: {ogf}")
    _atomic_write(args.out, counts_csv(counts))
    RunManifest(
        command="count",
        inputs={"model": args.model},
        config={"max_length": args.max_length, "oracle": args.oracle},
        duration_s=time.monotonic() - started,
        extra=extra,
    ).write(args.out)
    return EXIT_OK


def _baseline_rows(args, reference, inferred):
    cfg = RandomWalkConfig(
        termination_probability=args.pa,
        target_trace_count=args.target_traces,
        min_transition_coverage=args.min_coverage,
        time_limit_s=args.time_limit,
        seed=args.seed,
    )
    header = "n,precision_eq,recall_eq,precision_le,recall_le"
    und = "undefined"
    digits = args.digits
    if args.method == "trace-sim":
        res = trace_similarity(reference, inferred, cfg)
        n = max(
            max((len(t) for t in res.e_precision.traces), default=0),
            max((len(t) for t in res.e_recall.traces), default=0),
        )
        row = f"{n},{und},{und},{format_value(res.precision, digits)},{format_value(res.recall, digits)}"
        return header + "\n" + row + "\n", {"traces_precision": res.e_precision.total, "traces_recall": res.e_recall.total}
    if args.method == "trace-sim-conditioned":
        rows = trace_similarity_conditioned(reference, inferred, cfg)
        lines = [header]
        for row in rows:
            lines.append(
                f"{row.n},{format_value(row.precision, digits)},"
                f"{format_value(row.recall, digits)},{und},{und}"
            )
        return "\n".join(lines) + "\n", {}
    if args.method == "mbt":
        if args.m_bound is None:
            raise _UsageError("mbt needs --m-bound")
        precision, recall = mbt_assessment(
            reference, inferred, WMethodConfig(m=args.m_bound)
        )
        row = f"0,{und},{und},{format_value(precision, digits)},{format_value(recall, digits)}"
        return header + "\n" + row + "\n", {}
    if args.method == "sigma-sample":
        if args.length is None:
            raise _UsageError("sigma-sample needs --length")
        value = sigma_sampling_assessment(
            reference,
            inferred,
            args.length,
            args.samples,
            args.metric,
            args.seed,
            time_limit_s=args.time_limit,
        )
        cell = format_value(value, digits)
        if args.metric == "precision":
            row = f"{args.length},{cell},{und},{und},{und}"
        else:
            row = f"{args.length},{und},{cell},{und},{und}"
        return header + "\n" + row + "\n", {}
    raise _UsageError(f"unknown method {args.method!r}")


def _cmd_baseline(args):
    started = time.monotonic()
    reference, inferred = _load_pair(args.reference, args.inferred)
    csv, extra = _baseline_rows(args, reference, inferred)
    _atomic_write(args.out, csv)
    RunManifest(
        command=f"baseline:{args.method}",
        inputs={"reference": args.reference, "inferred": args.inferred},
        config={
            "pa": args.pa,
            "seed": args.seed,
            "target_traces": args.target_traces,
            "min_coverage": args.min_coverage,
            "time_limit": args.time_limit,
            "m_bound": args.m_bound,
            "length": args.length,
            "samples": args.samples,
            "metric": args.metric,
            "digits": args.digits,
        },
        duration_s=time.monotonic() - started,
        extra=extra,
    ).write(args.out)
    return EXIT_OK


def _cmd_infer(args):
    started = time.monotonic()
    text = _read(args.traces)
    if args.alphabet:
        symbols = tuple(args.alphabet.split())
    else:
        symbols = tuple(
            sorted({tok for line in text.splitlines()
                    if not line.lstrip().startswith("#")
                    for tok in line.split("#", 1)[0].split()})
        )
        if not symbols:
            raise ModelParseError("trace file holds no symbols; pass --alphabet")
    from .automata import Alphabet

    alpha = Alphabet(symbols)
    traces = parse_traces(text, alpha)
    model = k_tails(TrainingSet(tuple(traces), alpha), InferenceConfig(k=args.k))
    _atomic_write(args.out_model, serialize_dfa(model))
    RunManifest(
        command="infer",
        inputs={"traces": args.traces},
        config={"k": args.k, "alphabet": list(symbols)},
        duration_s=time.monotonic() - started,
        extra={"states": model.state_count},
    ).write(args.out_model)
    return EXIT_OK


def _cmd_gen_traces(args):
    started = time.monotonic()
    model = _load_model(args.model)
    cfg = RandomWalkConfig(
        termination_probability=args.pa,
        seed=args.seed,
        time_limit_s=args.time_limit,
    )
    ts = generate_training_set(
        model, cfg, min_traces=args.min_traces, min_state_visits=args.min_state_visits
    )
    _atomic_write(args.out, format_traces(ts.traces, model.alphabet))
    RunManifest(
        command="gen-traces",
        inputs={"model": args.model},
        config={
            "pa": args.pa,
            "seed": args.seed,
            "min_traces": args.min_traces,
            "min_state_visits": args.min_state_visits,
        },
        duration_s=time.monotonic() - started,
        extra={"traces": len(ts.traces)},
    ).write(args.out)
    return EXIT_OK


def _cmd_report(args):
    started = time.monotonic()
    columns = [c.strip() for c in args.columns.split(",") if c.strip()]
    series = []
    for path in args.csvs:
        text = _read(path)
        stem = os.path.splitext(os.path.basename(path))[0]
        for column in columns:
            name = f"{stem}:{column}" if len(columns) > 1 else stem
            series.append(series_from_csv(name, text, column))
    if args.format == "csv":
        raise _UsageError("report only renders svg output")
    _atomic_write(args.out, render_chart(series, title=args.title))
    RunManifest(
        command="report",
        inputs={"csvs": list(args.csvs)},
        config={"columns": columns, "title": args.title},
        duration_s=time.monotonic() - started,
    ).write(args.out)
    return EXIT_OK


_COMMANDS = {
    "assess": _cmd_assess,
    "count": _cmd_count,
    "baseline": _cmd_baseline,
    "infer": _cmd_infer,
    "gen-traces": _cmd_gen_traces,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ModelParseError, AlphabetMismatchError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeGuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except LangcardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

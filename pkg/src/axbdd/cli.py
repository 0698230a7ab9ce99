"""Command-line interface.

Subcommands: ``gen`` (seed adders), ``eval`` (one metric on a circuit
pair), ``verify`` (all algorithms plus the enumeration oracle must
agree), ``bench`` (corpus timing), ``search`` (threshold-constrained
approximation).

Exit codes: 0 ok, 2 usage, 3 interface mismatch, 4 oracle limit,
5 verification failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from fractions import Fraction

from . import bench as bench_mod
from . import metrics
from .adders import ADDER_KINDS, gen_adder
from .bdd import BddManager
from .bitvec import compile_circuit, subtract
from .circuit import (
    DEFAULT_ORACLE_LIMIT,
    InterfaceMismatchError,
    NetlistError,
    OracleLimitError,
    check_interface,
    emit,
    oracle_metrics,
    parse_file,
)
from .search import SearchConfig, range_threshold, run_search, write_history

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INTERFACE = 3
EXIT_ORACLE = 4
EXIT_VERIFY = 5


def _format_rational(value: Fraction, den_exp: int) -> str:
    num = int(value * (1 << den_exp))
    return f"{num}/2^{den_exp} ({float(value):g})"


def _format_value(value, input_count: int, relative_den=None) -> str:
    if relative_den is not None:
        frac = Fraction(value) / relative_den
        return f"{frac.numerator}/{frac.denominator} ({float(frac):g})"
    if isinstance(value, Fraction):
        return _format_rational(value, input_count)
    return str(value)


def cmd_gen(args) -> int:
    circuit = gen_adder(args.kind, args.bits, args.signed)
    text = emit(circuit)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _load_pair(args):
    golden = parse_file(args.golden)
    approx = parse_file(args.approx)
    if getattr(args, "signedness", None):
        forced = args.signedness == "signed"
        golden = dataclasses.replace(golden, signed=forced)
        approx = dataclasses.replace(approx, signed=forced)
    check_interface(golden, approx)
    return golden, approx


def cmd_eval(args) -> int:
    golden, approx = _load_pair(args)
    n = golden.input_count
    relative_den = None
    if args.relative:
        if args.metric == metrics.ERROR_RATE:
            raise SystemExit("error rate is already relative; drop --relative")
        relative_den = (1 << golden.output_count) - 1
    if args.algo == "oracle":
        if n >= 20:
            print(
                f"warning: enumerating 2^{n} inputs; this may take a while",
                file=sys.stderr,
            )
        wce, mae, rate = oracle_metrics(golden, approx, limit=args.max_oracle_bits)
        value = {metrics.WCE: wce, metrics.MAE: mae, metrics.ERROR_RATE: rate}[
            args.metric
        ]
    else:
        value = metrics.evaluate_error(golden, approx, args.metric, args.algo).value
    print(_format_value(value, n, relative_den))
    return EXIT_OK


def cmd_verify(args) -> int:
    golden, approx = _load_pair(args)
    manager = BddManager(golden.input_count)
    f_word = compile_circuit(manager, golden)
    fp_word = compile_circuit(manager, approx)
    eps = subtract(f_word, fp_word)

    results = {}
    for metric in (metrics.WCE, metrics.MAE):
        for algo in metrics.ALGORITHMS:
            results[(metric, algo)] = metrics.compute(eps, metric, algo).value
    oracle = None
    if golden.input_count <= args.max_oracle_bits:
        wce, mae, _ = oracle_metrics(golden, approx, limit=args.max_oracle_bits)
        oracle = {metrics.WCE: wce, metrics.MAE: mae}

    failures = []
    for metric in (metrics.WCE, metrics.MAE):
        values = {algo: results[(metric, algo)] for algo in metrics.ALGORITHMS}
        expected = oracle[metric] if oracle else values[metrics.BASELINE]
        source = "oracle" if oracle else metrics.BASELINE
        for algo, value in values.items():
            ok = value == expected
            print(
                f"{metric} {algo:<9} = {value}"
                + ("" if ok else f"  MISMATCH (expected {expected} from {source})")
            )
            if not ok:
                failures.append((metric, algo, value, expected))
        if oracle:
            print(f"{metric} oracle    = {expected}")
    if failures:
        print(f"{len(failures)} disagreement(s)", file=sys.stderr)
        return EXIT_VERIFY
    print("all algorithms agree" + (" with the oracle" if oracle else ""))
    return EXIT_OK


def cmd_bench(args) -> int:
    spec = bench_mod.CorpusSpec.from_json(args.spec)
    records = bench_mod.run_corpus(spec, workers=args.workers)
    if args.out_csv:
        bench_mod.write_records_csv(records, args.out_csv)
    if args.out_jsonl:
        bench_mod.write_records_jsonl(records, args.out_jsonl)
    if records:
        print(bench_mod.format_summary(bench_mod.summarize(records), records))
    else:
        print("empty corpus, nothing to do")
    return EXIT_OK


def cmd_search(args) -> int:
    seed_circuit = parse_file(args.seed_circuit)
    tau = (
        range_threshold(seed_circuit, args.tau_range)
        if args.tau_range is not None
        else Fraction(args.tau)
    )
    if tau < 0:
        raise SystemExit("threshold must be non-negative")
    if args.metric == metrics.WCE:
        if Fraction(tau).denominator != 1:
            raise SystemExit("wce threshold must be an integer")
        tau = int(tau)
    cfg = SearchConfig(
        metric=args.metric,
        threshold=tau,
        algorithm=args.algo,
        offspring=args.lam,
        edits=args.edits,
        max_generations=-(-args.budget // args.lam),  # ceil(evals / lambda)
        max_seconds=args.time_budget,
        seed=args.rng_seed,
    )
    best, history = run_search(seed_circuit, cfg)
    text = emit(best)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.log:
        write_history(history, args.log)
    last = history[-1]
    err = _format_value(
        Fraction(last.best_error_numerator, 1 << last.best_error_denominator_exp)
        if last.best_error_denominator_exp
        else last.best_error_numerator,
        seed_circuit.input_count,
    )
    print(
        f"best: {last.best_size} active gates (seed "
        f"{seed_circuit.active_gate_count()}), {args.metric} = {err}, "
        f"{last.evals} evaluations",
        file=sys.stderr,
    )
    return EXIT_OK


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="axbdd",
        description="Exact BDD-based error analysis for approximate arithmetic circuits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a seed adder netlist")
    p.add_argument("--kind", choices=ADDER_KINDS, default="rca")
    p.add_argument("--bits", type=_positive_int, required=True, help="operand width")
    p.add_argument("--signed", action="store_true")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("eval", help="evaluate one error metric on a circuit pair")
    p.add_argument("--golden", required=True)
    p.add_argument("--approx", required=True)
    p.add_argument("--metric", choices=metrics.METRICS, default=metrics.WCE)
    p.add_argument(
        "--algo",
        choices=(*metrics.ALGORITHMS, "oracle"),
        default=metrics.NOABS,
    )
    p.add_argument(
        "--relative",
        action="store_true",
        help="scale by the output range (2^m - 1)",
    )
    p.add_argument("--max-oracle-bits", type=int, default=DEFAULT_ORACLE_LIMIT)
    p.add_argument(
        "--signedness",
        choices=("signed", "unsigned"),
        help="override both circuits' output interpretation",
    )
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser(
        "verify", help="run all algorithms plus the oracle and demand agreement"
    )
    p.add_argument("--golden", required=True)
    p.add_argument("--approx", required=True)
    p.add_argument("--max-oracle-bits", type=int, default=DEFAULT_ORACLE_LIMIT)
    p.add_argument(
        "--signedness",
        choices=("signed", "unsigned"),
        help="override both circuits' output interpretation",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run a corpus benchmark from a JSON spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--out-csv")
    p.add_argument("--out-jsonl")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("search", help="shrink a circuit under an error bound")
    p.add_argument("--seed-circuit", required=True)
    p.add_argument("--metric", choices=(metrics.WCE, metrics.MAE), default=metrics.WCE)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--tau", help="absolute threshold (integer or a/b)")
    group.add_argument(
        "--tau-range",
        type=Fraction,
        help="threshold as a fraction of the output range, e.g. 0.2",
    )
    p.add_argument("--algo", choices=metrics.ALGORITHMS, default=metrics.NOABS)
    p.add_argument("--lambda", dest="lam", type=_positive_int, default=4)
    p.add_argument("--edits", type=_positive_int, default=2)
    p.add_argument(
        "--budget", type=_positive_int, default=10_000, help="evaluation budget"
    )
    p.add_argument("--time-budget", type=float, help="optional wall-clock cap [s]")
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--out", help="best netlist (default: stdout)")
    p.add_argument("--log", help="JSON-lines generation log")
    p.set_defaults(func=cmd_search)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InterfaceMismatchError as exc:
        print(f"interface mismatch: {exc}", file=sys.stderr)
        return EXIT_INTERFACE
    except OracleLimitError as exc:
        print(f"oracle limit: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except (NetlistError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(f"error: {exc.code}", file=sys.stderr)
            return EXIT_USAGE
        raise


if __name__ == "__main__":
    sys.exit(main())

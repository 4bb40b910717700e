#!/usr/bin/env python3
"""
CoreProbe CLI - Command line interface for CoreProbe.

Usage:
    coreprobe degeneracy --gen clique-union:100,80,50 --mode exact
    coreprobe degeneracy --input graph.txt --epsilon 0.5 --c 1 --seed 7 --with-exact --json
    coreprobe kcore --input graph.txt --output labels.tsv --mode approx --round-labels
    coreprobe bench-scaling --family er --sizes 1024,2048,4096 --seeds-per-size 5
    coreprobe bench-epsilon --gen clique-union:600,100,4 --epsilons 1,0.5 --c 0.5 --seeds 2
    coreprobe convert --input graph.txt --output graph.csr

Exit codes: 0 success, 1 file or runtime error, 2 usage error.
"""

import argparse
import logging
import sys
import time
from pathlib import Path

import numpy as np

from coreprobe.algorithms.degeneracy import DegeneracyOptions, approximate_degeneracy
from coreprobe.algorithms.exact import core_decomposition, degeneracy_ordering, peel_degeneracy
from coreprobe.algorithms.kcore import approximate_core_decomposition
from coreprobe.core.config import Settings, get_settings, reload_config
from coreprobe.core.exceptions import CoreProbeError, ParameterError, StorageError
from coreprobe.graph.csr import Graph
from coreprobe.graph.generators import parse_graph_spec
from coreprobe.graph.io import LoadOptions, dump_edge_list, load_graph, save_csr
from coreprobe.graph.registry import GeneratorRegistry
from coreprobe.models.report import RunParameters, RunReport
from coreprobe.models.results import RunStats
from coreprobe.services.bench import (
    DEFAULT_EPSILONS,
    FAMILIES,
    BenchConfig,
    EpsilonSweepConfig,
    run_epsilon_sweep,
    run_scaling,
)
from coreprobe.services.report_service import ReportService, write_labels, write_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _load_input(args) -> tuple[Graph, str]:
    """Graph from --input or --gen, plus the source string for the report."""
    if args.gen is not None:
        return parse_graph_spec(args.gen), args.gen
    return load_graph(args.input, LoadOptions.from_settings()), str(args.input)


def _run_parameters(args, settings: Settings) -> RunParameters:
    sampling = settings.sampling
    if args.mode == "exact":
        return RunParameters(mode="exact", round_labels=getattr(args, "round_labels", False))
    return RunParameters(
        mode="approx",
        epsilon=args.epsilon if args.epsilon is not None else sampling.epsilon,
        c=args.c if args.c is not None else sampling.c,
        seed=args.seed if args.seed is not None else sampling.seed,
        use_lower_start=args.lower_start or sampling.use_lower_start,
        use_leaps=args.leaps or sampling.use_leaps,
        round_labels=getattr(args, "round_labels", False),
    )


def _emit(report: RunReport, args, settings: Settings, text: str) -> None:
    indent = settings.output.json_indent
    if args.json:
        print(report.to_json(indent=indent))
    else:
        print(text)
    if args.output_json:
        write_report(report, args.output_json, indent=indent)


def degeneracy_command(args, settings: Settings) -> int:
    """Handle the degeneracy command."""
    params = _run_parameters(args, settings)
    graph, source = _load_input(args)
    service = ReportService(source, graph, params)

    if params.mode == "exact":
        start = time.perf_counter()
        value = peel_degeneracy(graph)
        stats = RunStats(wall_ms=(time.perf_counter() - start) * 1000.0)
        report = service.degeneracy_report(value, stats=stats, exact=value if args.with_exact else None)
        if args.order:
            _write_order(graph, Path(args.order))
    else:
        opts = DegeneracyOptions(
            use_lower_start=params.use_lower_start,
            use_leaps=params.use_leaps,
            rng=settings.sampling.rng,
        )
        result = approximate_degeneracy(graph, params.epsilon, params.c, seed=params.seed, opts=opts)
        exact = peel_degeneracy(graph) if args.with_exact else None
        report = service.degeneracy_report(result.value, result.used_fallback, result.stats, exact)

    text = f"degeneracy ({params.mode}): {report.value}"
    if report.used_fallback:
        text += " [exact fallback]"
    if report.error_factor is not None:
        text += f"\nexact: {report.exact}  error factor: {report.error_factor:.4f}  within bound: {report.within_bound}"
    _emit(report, args, settings, text)
    return EXIT_OK


def _write_order(graph: Graph, path: Path) -> None:
    order = degeneracy_ordering(graph)
    try:
        path.write_text("".join(f"{v}\n" for v in order.tolist()), encoding="utf-8")
    except OSError as e:
        raise StorageError(f"Cannot write ordering to {path}: {e}", {"path": str(path)}) from e


def kcore_command(args, settings: Settings) -> int:
    """Handle the kcore command."""
    args.round_labels = args.round_labels or settings.output.round_labels
    params = _run_parameters(args, settings)
    graph, source = _load_input(args)
    service = ReportService(source, graph, params)

    exact = core_decomposition(graph) if args.with_exact or params.mode == "exact" else None
    decomposition = None
    if params.mode == "exact":
        labels = exact.labels
    else:
        decomposition = approximate_core_decomposition(
            graph, params.epsilon, params.c, seed=params.seed, rng=settings.sampling.rng
        )
        labels = decomposition.labels
    if params.round_labels:
        # the report summarizes the labels as written
        labels = np.rint(labels)

    write_labels(args.output, labels, graph.original_ids, round_labels=params.round_labels)
    report = service.kcore_report(
        labels,
        labels_path=str(args.output),
        decomposition=decomposition,
        exact_labels=exact.labels if args.with_exact else None,
        exact_degeneracy=exact.degeneracy if args.with_exact else None,
    )

    summary = report.labels
    text = (
        f"wrote {graph.node_count} labels to {args.output}\n"
        f"labels min={summary.min_label:g} max={summary.max_label:g} mean={summary.mean_label:.4f}"
    )
    if summary.containment_rate is not None:
        text += f"\ncontainment rate: {summary.containment_rate:.4f}"
    if report.error_factor is not None:
        text += f"\nexact degeneracy: {report.exact}  error factor: {report.error_factor:.4f}"
    _emit(report, args, settings, text)
    return EXIT_OK


def _parse_sizes(text: str) -> list[int]:
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError as e:
        raise ParameterError("sizes", text, "must be a comma-separated list of integers") from e
    return sizes


def bench_command(args, settings: Settings) -> int:
    """Handle the bench-scaling command."""
    config = BenchConfig.from_settings(
        args.family,
        _parse_sizes(args.sizes),
        epsilon=args.epsilon,
        c=args.c,
        seeds_per_size=args.seeds_per_size,
        workers=args.workers,
        er_avg_degree=args.avg_degree,
        clique_exponent=args.clique_exponent,
        opts=DegeneracyOptions(
            use_lower_start=args.lower_start or settings.sampling.use_lower_start,
            use_leaps=args.leaps or settings.sampling.use_leaps,
            rng=settings.sampling.rng,
        ),
    )
    table = run_scaling(config)
    if args.json:
        print(table.model_dump_json(indent=settings.output.json_indent))
    else:
        print(table.render())
    return EXIT_OK


def _parse_epsilons(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(s) for s in text.split(",") if s.strip())
    except ValueError as e:
        raise ParameterError("epsilons", text, "must be a comma-separated list of numbers") from e


def bench_epsilon_command(args, settings: Settings) -> int:
    """Handle the bench-epsilon command."""
    graph, source = _load_input(args)
    sampling = settings.sampling
    config = EpsilonSweepConfig(
        epsilons=_parse_epsilons(args.epsilons) if args.epsilons is not None else DEFAULT_EPSILONS,
        c=args.c if args.c is not None else sampling.c,
        seed=args.seed if args.seed is not None else sampling.seed,
        seeds=args.seeds,
        workers=args.workers if args.workers is not None else settings.bench.workers,
        opts=DegeneracyOptions(
            use_lower_start=args.lower_start or sampling.use_lower_start,
            use_leaps=args.leaps or sampling.use_leaps,
            rng=sampling.rng,
        ),
    )
    table = run_epsilon_sweep(graph, config, source)
    if args.json:
        print(table.model_dump_json(indent=settings.output.json_indent))
    else:
        print(table.render())
    return EXIT_OK


def convert_command(args, settings: Settings) -> int:
    """Handle the convert command."""
    graph = load_graph(args.input, LoadOptions.from_settings())
    if args.format == "csr":
        save_csr(graph, args.output)
    else:
        try:
            with open(args.output, "w", encoding="utf-8") as f:
                dump_edge_list(graph, f)
        except OSError as e:
            raise StorageError(f"Cannot write {args.output}: {e}", {"path": str(args.output)}) from e
    print(f"converted {args.input} -> {args.output} ({args.format}): n={graph.node_count} m={graph.edge_count}")
    return EXIT_OK


def _add_graph_arguments(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", type=Path, help="Edge-list or binary CSR file")
    source.add_argument(
        "--gen",
        type=str,
        help="Generated graph spec, e.g. er:1000,20[,seed] or clique-union:100,80,50",
    )


def _add_run_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mode", choices=("exact", "approx"), default="approx", help="Algorithm (default: approx)")
    parser.add_argument("--epsilon", type=float, default=None, help="Approximation error in (0, 1]")
    parser.add_argument("--c", type=float, default=None, help="Failure probability exponent (> 0)")
    parser.add_argument("--seed", type=int, default=None, help="Seed of the random sample array")
    parser.add_argument("--lower-start", action="store_true", help="Start the schedule at the h-index bound")
    parser.add_argument("--leaps", action="store_true", help="Use exponential leaps and binary search")
    parser.add_argument("--with-exact", action="store_true", help="Also compute the exact result for error factors")
    parser.add_argument("--json", action="store_true", help="Print the JSON report")
    parser.add_argument("--output-json", type=Path, default=None, help="Also write the JSON report to a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coreprobe",
        description="CoreProbe CLI - approximate degeneracy and k-core decomposition",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="Generator families (--gen family:args[,seed]):\n"
        + "\n".join(f"  {line}" for line in GeneratorRegistry.get_instance().describe()),
    )
    parser.add_argument("--config-dir", type=Path, default=None, help="Directory holding settings.yaml")
    parser.add_argument(
        "--log-level",
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        default=None,
        help="Override the configured log level",
    )

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # degeneracy command
    degeneracy_parser = subparsers.add_parser(
        "degeneracy",
        help="Exact or (1+epsilon)-approximate degeneracy",
    )
    _add_graph_arguments(degeneracy_parser)
    _add_run_arguments(degeneracy_parser)
    degeneracy_parser.add_argument("--order", type=Path, default=None, help="Exact mode: write a degeneracy ordering")
    degeneracy_parser.set_defaults(func=degeneracy_command)

    # kcore command
    kcore_parser = subparsers.add_parser(
        "kcore",
        help="Per-node exact or approximate core numbers",
        description="Writes node_id<TAB>label lines in ascending node id.",
    )
    _add_graph_arguments(kcore_parser)
    _add_run_arguments(kcore_parser)
    kcore_parser.add_argument("--output", type=Path, required=True, help="Labels file")
    kcore_parser.add_argument("--round-labels", action="store_true", help="Round labels to integers")
    kcore_parser.set_defaults(func=kcore_command)

    # bench-scaling command
    bench_parser = subparsers.add_parser(
        "bench-scaling",
        help="Sample-count scaling benchmark",
    )
    bench_parser.add_argument("--family", choices=FAMILIES, required=True)
    bench_parser.add_argument("--sizes", type=str, required=True, help="Comma-separated node counts")
    bench_parser.add_argument("--epsilon", type=float, default=None)
    bench_parser.add_argument("--c", type=float, default=None)
    bench_parser.add_argument("--seeds-per-size", type=int, default=None)
    bench_parser.add_argument("--workers", type=int, default=None, help="Concurrent runs")
    bench_parser.add_argument("--avg-degree", type=float, default=None, help="ER average degree")
    bench_parser.add_argument("--clique-exponent", type=float, default=None, help="Large clique size = n^b")
    bench_parser.add_argument("--lower-start", action="store_true")
    bench_parser.add_argument("--leaps", action="store_true")
    bench_parser.add_argument("--json", action="store_true", help="Print the table as JSON")
    bench_parser.set_defaults(func=bench_command)

    # bench-epsilon command
    epsilon_parser = subparsers.add_parser(
        "bench-epsilon",
        help="Approximate degeneracy and error factor across epsilons",
        description="One row per epsilon: value, error factor against exact peeling, samples and trials.",
    )
    _add_graph_arguments(epsilon_parser)
    epsilon_parser.add_argument(
        "--epsilons", type=str, default=None, help="Comma-separated epsilons (default: 0.5,0.25,0.1,0.05,0.01)"
    )
    epsilon_parser.add_argument("--c", type=float, default=None)
    epsilon_parser.add_argument("--seed", type=int, default=None, help="First seed; runs use seed, seed+1, ...")
    epsilon_parser.add_argument("--seeds", type=int, default=1, help="Runs per epsilon")
    epsilon_parser.add_argument("--workers", type=int, default=None, help="Concurrent runs")
    epsilon_parser.add_argument("--lower-start", action="store_true")
    epsilon_parser.add_argument("--leaps", action="store_true")
    epsilon_parser.add_argument("--json", action="store_true", help="Print the table as JSON")
    epsilon_parser.set_defaults(func=bench_epsilon_command)

    # convert command
    convert_parser = subparsers.add_parser(
        "convert",
        help="Convert between edge-list and binary CSR files",
    )
    convert_parser.add_argument("--input", type=Path, required=True)
    convert_parser.add_argument("--output", type=Path, required=True)
    convert_parser.add_argument("--format", choices=("csr", "edges"), default="csr", help="Output format")
    convert_parser.set_defaults(func=convert_command)

    return parser


def _configure_logging(settings: Settings, level: str | None) -> None:
    logging.basicConfig(
        level=(level or settings.logging.level).upper(),
        format=settings.logging.format,
        stream=sys.stderr,
        force=True,
    )


def main(argv: list[str] | None = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if args.command is None:
        parser.print_help()
        return EXIT_OK

    try:
        if args.config_dir is not None:
            reload_config(args.config_dir)
        settings = get_settings()
    except CoreProbeError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_FAILURE
    _configure_logging(settings, args.log_level)

    try:
        return args.func(args, settings)
    except ParameterError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_USAGE
    except CoreProbeError as e:
        logger.debug(f"{type(e).__name__}: {e.details}")
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_FAILURE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end

Exit codes: 0 success, 1 self-test failure, 2 malformed input, 3 shape mismatch,
4 numerical failure or size-guard refusal.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, List, Optional, Sequence

import numpy as np

from .experiments import (
    run_bound_probe,
    run_compaction,
    run_denoise,
    run_mesh_compaction,
    run_property_suite,
    run_scaling_bench,
    summarize_reports,
    write_report,
)
from .experiments.compaction import DEFAULT_PERCENTILES
from .experiments.denoise import DEFAULT_KEEP_FRACTIONS
from .filters import filters_from_spec, joint_filter
from .graph import DENSE_SIZE_GUARD, LaplacianKind, build_joint_laplacian
from .spectral import eft_forward, eft_inverse
from .synth import SynthConfig, gen_evolving_graph, gen_signal
from .utils.errors import (
    DomainError,
    NumericalError,
    ParseError,
    ShapeError,
    SizeGuardError,
    SymmetryError,
)
from .utils.io import (
    check_for_dir,
    parse_coeffs_csv,
    parse_filter_json,
    parse_graph_json,
    parse_signal_csv,
    write_coeffs_csv,
    write_graph_json,
    write_signal_csv,
)

EXIT_OK = 0
EXIT_SELFTEST_FAILED = 1
EXIT_MALFORMED_INPUT = 2
EXIT_SHAPE_MISMATCH = 3
EXIT_NUMERICAL = 4


def _float_list(text: str) -> List[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}")


def _int_list(text: str) -> List[int]:
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def _kind(text: str) -> str:
    try:
        return LaplacianKind.parse(text).value
    except DomainError:
        raise argparse.ArgumentTypeError(f"unknown Laplacian kind {text!r}")


def _require_files(*paths: Optional[str]) -> None:
    for path in paths:
        if path is not None and not Path(path).is_file():
            raise ParseError("No such file", path=path)


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(args, name) is None]
    if missing:
        raise ParseError(f"Missing required option(s) {', '.join(missing)}", path=args.command)


def _synth_config(args: argparse.Namespace) -> SynthConfig:
    cfg = SynthConfig.from_file(args.config) if args.config is not None else SynthConfig()
    overrides = {
        name: getattr(args, name)
        for name in ("n", "t", "perturb_scale", "noise_std", "edge_prob", "struct_prob")
        if getattr(args, name, None) is not None
    }
    return cfg.with_updates(seed=args.seed, kind=args.kind, **overrides)


def _seeds(args: argparse.Namespace) -> List[int]:
    return [args.seed + repeat for repeat in range(args.repeats)]


def _max_ad_size(args: argparse.Namespace) -> int:
    return np.iinfo(np.int64).max if args.force_dense else DENSE_SIZE_GUARD


def _print_table(frame) -> None:
    print(frame.to_string(index=False))


def cmd_generate(args: argparse.Namespace) -> int:
    _require(args, "out")
    _require_files(args.config)
    cfg = _synth_config(args)
    dg = gen_evolving_graph(cfg)
    clean, noisy = gen_signal(dg, cfg)
    out = Path(args.out)
    check_for_dir(out)
    write_graph_json(out / "graph.json", dg)
    write_signal_csv(out / "signal.csv", noisy)
    write_signal_csv(out / "clean.csv", clean)
    print(f"N={dg.num_nodes} T={dg.num_timesteps} seed={cfg.seed}")
    return EXIT_OK


def cmd_laplacian(args: argparse.Namespace) -> int:
    _require(args, "graph", "out")
    _require_files(args.graph)
    dg = parse_graph_json(args.graph)
    joint = build_joint_laplacian(dg, args.kind)
    write_signal_csv(args.out, joint.toarray(force_dense=args.force_dense))
    print(f"N={dg.num_nodes} T={dg.num_timesteps} size={joint.size}")
    return EXIT_OK


def cmd_transform(args: argparse.Namespace) -> int:
    _require(args, "graph", "signal", "out")
    _require_files(args.graph, args.signal)
    dg = parse_graph_json(args.graph)
    signal = parse_signal_csv(args.signal)
    coefficients = eft_forward(dg, signal, kind=args.kind, order=args.order)
    write_coeffs_csv(args.out, coefficients)
    residual = abs(np.linalg.norm(coefficients.values) - np.linalg.norm(signal))
    print(f"N={dg.num_nodes} T={dg.num_timesteps} parseval_residual={residual:.3e}")
    return EXIT_OK


def cmd_inverse(args: argparse.Namespace) -> int:
    _require(args, "graph", "coeffs", "out")
    _require_files(args.graph, args.coeffs, args.signal)
    dg = parse_graph_json(args.graph)
    coefficients = parse_coeffs_csv(args.coeffs)
    reference = parse_signal_csv(args.signal) if args.signal is not None else None
    signal = eft_inverse(dg, coefficients, kind=coefficients.kind)
    write_signal_csv(args.out, signal.real)
    message = f"N={dg.num_nodes} T={dg.num_timesteps} max_imag={np.max(np.abs(signal.imag)):.3e}"
    if reference is not None:
        dg.check_signal(reference)
        message += f" max_abs_diff={np.max(np.abs(signal.real - reference)):.3e}"
    print(message)
    return EXIT_OK


def cmd_filter(args: argparse.Namespace) -> int:
    _require(args, "graph", "signal", "filter", "out")
    _require_files(args.graph, args.signal, args.filter)
    dg = parse_graph_json(args.graph)
    signal = parse_signal_csv(args.signal)
    spec = parse_filter_json(args.filter)
    vertex_filters, temporal_filter = filters_from_spec(spec, dg, args.kind)
    filtered = joint_filter(dg, signal, vertex_filters, temporal_filter, kind=args.kind, order=args.order)
    if np.iscomplexobj(filtered):
        logging.warning("Filtered signal is complex, writing its real part")
    write_signal_csv(args.out, np.real(filtered))
    print(f"N={dg.num_nodes} T={dg.num_timesteps}")
    return EXIT_OK


def cmd_denoise(args: argparse.Namespace) -> int:
    _require_files(args.config)
    cfg = _synth_config(args)
    reports = run_denoise(
        cfg,
        methods=args.methods,
        keep_fractions=args.keep or DEFAULT_KEEP_FRACTIONS,
        seeds=_seeds(args),
        max_ad_size=_max_ad_size(args),
        cores=args.cores,
    )
    write_report(
        reports,
        "denoise",
        out=args.out,
        config=cfg.to_dict(),
        summary_by=("method", "keep_fraction"),
    )
    _print_table(summarize_reports(reports, ("method", "keep_fraction")))
    return EXIT_OK


def cmd_compact(args: argparse.Namespace) -> int:
    percentiles = args.percentiles or DEFAULT_PERCENTILES
    if args.graph is not None or args.signal is not None:
        _require(args, "graph", "signal")
        _require_files(args.graph, args.signal)
        dg = parse_graph_json(args.graph)
        signal = parse_signal_csv(args.signal)
        reports = run_compaction(
            dg, signal, args.methods, percentiles, kind=args.kind, max_ad_size=_max_ad_size(args)
        )
        config = {"graph": str(args.graph), "signal": str(args.signal), "kind": args.kind}
    else:
        reports = run_mesh_compaction(
            frames=args.frames,
            resolution=args.resolution,
            methods=args.methods,
            percentiles=percentiles,
            seeds=_seeds(args),
            max_ad_size=_max_ad_size(args),
            cores=args.cores,
        )
        config = {"frames": args.frames, "resolution": args.resolution, "seeds": _seeds(args)}
    write_report(
        reports, "compact", out=args.out, config=config, summary_by=("method", "percentile_removed")
    )
    _print_table(summarize_reports(reports, ("method", "percentile_removed")))
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    _require_files(args.config)
    cfg = _synth_config(args)
    reports = run_bound_probe(
        cfg,
        scales=args.scales or (0.0, 0.25, 0.5, 1.0),
        seeds=_seeds(args),
        force_dense=args.force_dense,
        cores=args.cores,
    )
    write_report(
        reports,
        "bound",
        out=args.out,
        config=cfg.to_dict(),
        summary_by=("perturb_scale",),
        summary_value="diff_norm",
    )
    _print_table(summarize_reports(reports, ("perturb_scale",), "diff_norm"))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    bench = run_scaling_bench(
        n_grid=args.n_grid, t_grid=args.t_grid, repeats=args.repeats, max_ad_size=_max_ad_size(args), seed=args.seed
    )
    write_report(
        bench.timings,
        "bench",
        out=args.out,
        config={"n_grid": args.n_grid, "t_grid": args.t_grid, "repeats": args.repeats},
    )
    _print_table(bench.timings)
    _print_table(bench.slopes)
    return EXIT_OK


def cmd_selftest(args: argparse.Namespace) -> int:
    result = run_property_suite(seed=args.seed, n_instances=args.instances)
    if args.json:
        print(json.dumps(result.to_dict(), indent=2, default=str))
    else:
        for invariant in result.results:
            print(f"{'PASS' if invariant.passed else 'FAIL'} {invariant.module}.{invariant.name}")
    return EXIT_OK if result.passed else EXIT_SELFTEST_FAILED


COMMANDS = {
    "generate": cmd_generate,
    "laplacian": cmd_laplacian,
    "transform": cmd_transform,
    "inverse": cmd_inverse,
    "filter": cmd_filter,
    "denoise": cmd_denoise,
    "compact": cmd_compact,
    "bound": cmd_bound,
    "bench": cmd_bench,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="Dynamic graph JSON")
    common.add_argument("--signal", help="Signal CSV, N rows of T values")
    common.add_argument("--out", help="Output path")
    common.add_argument("--kind", type=_kind, default=LaplacianKind.COMBINATORIAL.value, help="comb or norm")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--force-dense", action="store_true", help="Bypass the dense size guard")
    common.add_argument("--verbose", action="store_true", help="Log progress to standard error")

    synth = argparse.ArgumentParser(add_help=False)
    synth.add_argument("--config", help="Synthetic config, JSON or YAML")
    synth.add_argument("--n", type=int)
    synth.add_argument("--t", type=int)
    synth.add_argument("--perturb-scale", type=float)
    synth.add_argument("--noise-std", type=float)
    synth.add_argument("--edge-prob", type=float)
    synth.add_argument("--struct-prob", type=float)

    runs = argparse.ArgumentParser(add_help=False)
    runs.add_argument("--methods", help="Comma-separated subset of EFT,AD,DFTOnly,GFTOnly")
    runs.add_argument("--repeats", type=int, default=1, help="Seeds --seed, --seed + 1, ...")
    runs.add_argument("--cores", type=int, default=1)

    order = argparse.ArgumentParser(add_help=False)
    order.add_argument("--order", choices=("vertex_first", "time_first"), default="vertex_first")

    parser = argparse.ArgumentParser(
        prog="evolvingfourier", description="Evolving graph Fourier transform toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("generate", parents=[common, synth], help="Generate a synthetic graph and signal")
    sub.add_parser("laplacian", parents=[common], help="Write the joint Laplacian as CSV")
    sub.add_parser("transform", parents=[common, order], help="Forward EFT to a coefficient CSV")
    p_inverse = sub.add_parser("inverse", parents=[common], help="Inverse EFT of a coefficient CSV")
    p_inverse.add_argument("--coeffs", help="Coefficient CSV written by transform")
    p_filter = sub.add_parser("filter", parents=[common, order], help="Joint time-vertex filtering")
    p_filter.add_argument("--filter", help="Filter description JSON")
    p_denoise = sub.add_parser("denoise", parents=[common, synth, runs], help="Denoising experiment")
    p_denoise.add_argument("--keep", type=_float_list, help="Comma-separated keep fractions")
    p_compact = sub.add_parser("compact", parents=[common, runs], help="Compaction experiment")
    p_compact.add_argument("--percentiles", type=_float_list)
    p_compact.add_argument("--frames", type=int, default=16)
    p_compact.add_argument("--resolution", type=int, default=8)
    p_bound = sub.add_parser("bound", parents=[common, synth, runs], help="EFT versus AD distance probe")
    p_bound.add_argument("--scales", type=_float_list)
    p_bench = sub.add_parser("bench", parents=[common], help="Scaling benchmark")
    p_bench.add_argument("--n-grid", type=_int_list, default=[16])
    p_bench.add_argument("--t-grid", type=_int_list, default=[16, 32, 64, 128])
    p_bench.add_argument("--repeats", type=int, default=3)
    p_selftest = sub.add_parser("selftest", parents=[common], help="Run the property suite")
    p_selftest.add_argument("--json", action="store_true", help="Print a JSON verdict")
    p_selftest.add_argument("--instances", type=int, default=20)
    return parser


def _run(command: Callable[[argparse.Namespace], int], args: argparse.Namespace) -> int:
    try:
        return command(args)
    except ShapeError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_SHAPE_MISMATCH
    except (SizeGuardError, NumericalError) as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ParseError, SymmetryError, DomainError) as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_MALFORMED_INPUT


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse the arguments, run the subcommand and return its exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return int(exit_request.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if getattr(args, "methods", None) is not None:
        args.methods = [name for name in args.methods.split(",") if name.strip()]
    return _run(COMMANDS[args.command], args)


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line interface.

Subcommands:

    compress   truncated pseudo-SVD sweep over a cube, CSV + error figure
    snapshot   three-channel PPM snapshot of a reconstructed cube
    verify     replay the bundled worked-example fixtures
    bench      naive vs Strassen face-wise multiply scaling
    info       print a cube file's header and norms

The random seed for seeded maps comes from --seed, falling back to the
MPROD_SEED environment variable, then to 0.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import bench as bench_mod
from . import files, verify
from .errors import BadFlag, MprodError
from .linmap import build_jl_map, build_u3_map, classify
from .psvd import pseudo_svd_truncated, run_compression_sweep
from .tensor import Tensor3, frobenius_norm

SEED_ENV = "MPROD_SEED"


def _resolve_seed(flag_value) -> int:
    if flag_value is not None:
        return int(flag_value)
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise BadFlag(f"{SEED_ENV}={env!r} is not an integer") from exc
    return 0


def _parse_int_list(text: str, flag: str) -> list[int]:
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise BadFlag(f"{flag} expects comma-separated integers, got {text!r}") from exc
    if not values:
        raise BadFlag(f"{flag} is empty")
    return values


def _resolve_map(name: str, cube: Tensor3, seed: int):
    if name == "identity":
        return classify(np.eye(cube.p)), "identity"
    if name == "jl":
        return build_jl_map(cube.p, seed), "jl"
    if name == "u3":
        return build_u3_map(cube), "u3"
    if name.startswith("file:"):
        path = name[len("file:"):]
        return classify(files.load_matrix(path)), name
    raise BadFlag(f"unknown map {name!r}; use jl, identity, u3, or file:PATH")


def _plot_path(csv_path: str) -> str:
    root, _ = os.path.splitext(csv_path)
    return root + ".png"


def _cmd_compress(args) -> int:
    seed = _resolve_seed(args.seed)
    cube = files.load_cube(args.input, normalize=args.normalize)
    m_map, label = _resolve_map(args.map, cube, seed)
    k_values = _parse_int_list(args.k, "--k")
    s_values = _parse_int_list(args.s, "--s") if args.s else [cube.p]
    report = run_compression_sweep(cube, m_map, k_values, s_values, label, seed)
    files.write_report_csv(args.out, report)
    print(f"wrote {len(report.rows)} rows to {args.out} (map={label}, q={m_map.q})")
    if not args.no_plot:
        from . import plots

        png = _plot_path(args.out)
        plots.save_error_curves(report, png)
        print(f"wrote {png}")
    return 0


def _cmd_snapshot(args) -> int:
    seed = _resolve_seed(args.seed)
    cube = files.load_cube(args.input, normalize=args.normalize)
    m_map, label = _resolve_map(args.map, cube, seed)
    channels = _parse_int_list(args.channels, "--channels")
    rec = pseudo_svd_truncated(cube, m_map, args.k)
    files.write_ppm(args.out, files.snapshot_rgb(rec, channels))
    print(f"wrote {args.out} (map={label}, k={args.k}, channels={channels})")
    return 0


def _cmd_verify(args) -> int:
    results = verify.run_checks(args.tolerance)
    print(verify.format_report(results))
    return 0 if all(r.passed for r in results) else 1


def _cmd_bench(args) -> int:
    seed = _resolve_seed(args.seed)
    sizes = _parse_int_list(args.sizes, "--sizes")
    algos = tuple(tok.strip() for tok in args.algo.split(","))
    result = bench_mod.run_bench(
        sizes, args.depth, algos, args.repeats, seed, args.crossover
    )
    for algo, size, seconds in result.rows:
        print(f"{algo:10s} n={size:5d}  {seconds:.6f} s")
    for algo, slope in result.slopes.items():
        print(f"{algo:10s} fitted log-log slope {slope:.3f}")
    if len(algos) == 2:
        print(f"max relative mismatch between algorithms: {result.max_mismatch:.3e}")
    if args.out:
        files.write_bench_csv(args.out, result.rows)
        print(f"wrote {args.out}")
        if not args.no_plot:
            from . import plots

            png = _plot_path(args.out)
            plots.save_bench_curves(result, png)
            print(f"wrote {png}")
    return 0


def _cmd_info(args) -> int:
    cube = files.load_cube(args.input, normalize=args.normalize)
    data = cube.slices()
    print(f"{args.input}: {cube.m} x {cube.n} x {cube.p}")
    print(f"frobenius norm {frobenius_norm(cube):.12g}")
    print(f"entry range [{data.min():.6g}, {data.max():.6g}]")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mprod",
        description="Tensor-tensor products with full-rank linear maps: "
        "compression, snapshots, verification, and kernel benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common_cube_flags(p):
        p.add_argument("--input", required=True, help="TCUBE1 cube file")
        p.add_argument(
            "--map",
            default="jl",
            help="jl | identity | u3 | file:PATH (default: jl)",
        )
        p.add_argument(
            "--seed",
            type=int,
            default=None,
            help=f"PRNG seed for seeded maps (default: ${SEED_ENV} or 0)",
        )
        p.add_argument(
            "--normalize",
            action="store_true",
            help="rescale the cube to unit Frobenius norm after loading",
        )

    p = sub.add_parser("compress", help="truncated pseudo-SVD sweep, CSV output")
    add_common_cube_flags(p)
    p.add_argument("--k", required=True, help="comma-separated truncation ranks")
    p.add_argument(
        "--s",
        default=None,
        help="comma-separated channel-prefix counts (default: full depth)",
    )
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument(
        "--no-plot", action="store_true", help="skip the error-curve figure"
    )
    p.set_defaults(func=_cmd_compress)

    p = sub.add_parser("snapshot", help="write a PPM snapshot of a reconstruction")
    add_common_cube_flags(p)
    p.add_argument("--k", required=True, type=int, help="truncation rank")
    p.add_argument(
        "--channels",
        default="26,16,8",
        help="three 1-based channel indices for R,G,B (default: 26,16,8)",
    )
    p.add_argument("--out", required=True, help="PPM output path")
    p.set_defaults(func=_cmd_snapshot)

    p = sub.add_parser("verify", help="run the worked-example fixture suite")
    p.add_argument(
        "--tolerance",
        type=float,
        default=None,
        help="override the 1e-9 tolerance of the residual checks",
    )
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bench", help="naive vs Strassen scaling benchmark")
    p.add_argument(
        "--sizes",
        default="128,256,512,1024",
        help="comma-separated powers of two (default: 128,256,512,1024)",
    )
    p.add_argument("--depth", type=int, default=1, help="stack depth (default: 1)")
    p.add_argument(
        "--algo",
        default="naive,strassen",
        help="algorithms to time (default: naive,strassen)",
    )
    p.add_argument("--repeats", type=int, default=5, help="runs per cell (default: 5)")
    p.add_argument(
        "--crossover",
        type=int,
        default=64,
        help="Strassen recursion cutoff size (default: 64)",
    )
    p.add_argument("--seed", type=int, default=None, help="operand PRNG seed")
    p.add_argument("--out", default=None, help="optional CSV output path")
    p.add_argument("--no-plot", action="store_true", help="skip the scaling figure")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("info", help="print a cube file's header and norms")
    p.add_argument("--input", required=True, help="TCUBE1 cube file")
    p.add_argument("--normalize", action="store_true", help="normalize before reporting")
    p.set_defaults(func=_cmd_info)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MprodError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

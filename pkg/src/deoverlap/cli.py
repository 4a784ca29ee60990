"""Command line interface.

Exit codes: 0 success (and convergence for `remove`), 1 invalid input or
arguments, 2 removal did not converge, 3 file I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import BenchmarkSpec, generate_layout, parse_mode, rows_to_csv, run_benchmark
from .core import IterationEvent, RemovalConfig, remove_overlaps
from .layout_io import (
    LayoutParseError,
    LayoutValidationError,
    document_to_layout,
    emit_layout,
    layout_to_document,
    parse_layout,
)
from .metrics import FORMULA_NOTES, compute_metrics
from .svg import render_svg

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NOT_CONVERGED = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 means non-convergence here, so
    # route usage problems to the invalid-input code instead.
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)


def _cap(text: str) -> float | None:
    if text == "off":
        return None
    value = float(text)
    if value < 1.0:
        raise argparse.ArgumentTypeError(f"cap must be >= 1 or 'off', got {text}")
    return value


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part]


def _mode_list(text: str) -> tuple[float | None, ...]:
    return tuple(parse_mode(part) for part in text.split(",") if part)


def _read_document(path: str, strict: bool):
    return parse_layout(Path(path).read_bytes(), strict=strict)


def _cmd_remove(args: argparse.Namespace) -> int:
    doc = _read_document(args.input, strict=not args.lax)
    layout = document_to_layout(doc)
    config = RemovalConfig(
        growth_cap=args.cap,
        max_iterations=args.max_iters,
        jitter_rel=args.jitter_rel,
        rng_seed=args.seed,
        eps_overlap=args.eps,
    )
    if args.svg_before:
        Path(args.svg_before).write_bytes(render_svg(doc, show_edges=True))

    observer = None
    if args.svg_every_iteration:
        trace_dir = Path(args.svg_every_iteration)
        trace_dir.mkdir(parents=True, exist_ok=True)

        def observer(event: IterationEvent) -> None:
            snapshot = layout_to_document(event.layout)
            path = trace_dir / f"iteration_{event.index:03d}.svg"
            path.write_bytes(render_svg(snapshot, show_tree=len(snapshot.nodes) > 1))

    result, stats = remove_overlaps(layout, config, observer)
    out_doc = layout_to_document(result)
    Path(args.output).write_bytes(emit_layout(out_doc))
    if args.svg_after:
        Path(args.svg_after).write_bytes(render_svg(out_doc, show_edges=True))

    total = stats.iterations_phase1 + stats.iterations_phase2
    print(
        f"{args.input}: {'converged' if stats.converged else 'NOT CONVERGED'} "
        f"after {total} iterations "
        f"({stats.iterations_phase1} triangulation, {stats.iterations_phase2} augmented) "
        f"in {stats.wall_time:.3f}s",
        file=sys.stderr,
    )
    return EXIT_OK if stats.converged else EXIT_NOT_CONVERGED


def _cmd_metrics(args: argparse.Namespace) -> int:
    before = document_to_layout(_read_document(args.before, strict=not args.lax))
    after = document_to_layout(_read_document(args.after, strict=not args.lax))
    report = compute_metrics(before, after, ks=tuple(args.k))
    payload = {
        "sigma_edge": report.sigma_edge,
        "sigma_disp": report.sigma_disp,
        "knn_distortion": {str(k): v for k, v in report.knn_distortion.items()},
        "area_ratio": report.area_ratio,
        "log_area_ratio": report.log_area_ratio,
        "notes": FORMULA_NOTES,
    }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace) -> int:
    if args.spec:
        raw = json.loads(Path(args.spec).read_text("utf-8"))
        raw["modes"] = tuple(parse_mode(m) for m in raw.get("modes", ["uncapped", "capped:1.5"]))
        spec = BenchmarkSpec(**raw)
    else:
        if not args.sizes:
            raise LayoutValidationError("--sizes", "required unless --spec is given")
        spec = BenchmarkSpec(
            node_counts=args.sizes,
            overlap_density=args.density,
            trials=args.trials,
            seed=args.seed,
            modes=args.modes,
        )
    csv_text = rows_to_csv(run_benchmark(spec))
    if args.output:
        Path(args.output).write_text(csv_text, "utf-8")
    else:
        sys.stdout.write(csv_text)
    return EXIT_OK


def _cmd_gen(args: argparse.Namespace) -> int:
    layout = generate_layout(
        args.n, args.density, args.seed, size_range=(args.size_min, args.size_max)
    )
    data = emit_layout(layout_to_document(layout))
    if args.output:
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="deoverlap", description="Rectangle overlap removal toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    remove = sub.add_parser("remove", help="remove overlaps from a layout file")
    remove.add_argument("--input", required=True, help="layout JSON to read")
    remove.add_argument("--output", required=True, help="where to write the resolved layout")
    remove.add_argument("--svg-before", help="render the input layout to this SVG file")
    remove.add_argument("--svg-after", help="render the resolved layout to this SVG file")
    remove.add_argument(
        "--svg-every-iteration",
        metavar="DIR",
        help="write an SVG snapshot of every iteration into DIR",
    )
    remove.add_argument(
        "--cap",
        type=_cap,
        default=None,
        metavar="REAL|off",
        help="growth cap per edge (>= 1); 'off' disables the cap (default)",
    )
    remove.add_argument("--max-iters", type=int, default=1000, help="iteration budget")
    remove.add_argument("--seed", type=int, default=0, help="jitter PRNG seed")
    remove.add_argument(
        "--eps", type=float, default=0.0, help="overlap depth treated as resolved"
    )
    remove.add_argument(
        "--jitter-rel",
        type=float,
        default=1e-6,
        help="jitter as a fraction of the bbox diagonal (used on coincident centers)",
    )
    remove.add_argument("--lax", action="store_true", help="ignore unknown input fields")
    remove.set_defaults(func=_cmd_remove)

    metrics = sub.add_parser("metrics", help="compare two layouts")
    metrics.add_argument("--before", required=True, help="original layout JSON")
    metrics.add_argument("--after", required=True, help="transformed layout JSON")
    metrics.add_argument(
        "--k",
        type=int,
        nargs="+",
        default=[8, 9, 10, 11, 12],
        help="neighborhood sizes for the k-nearest-neighbor metric",
    )
    metrics.add_argument("--lax", action="store_true", help="ignore unknown input fields")
    metrics.set_defaults(func=_cmd_metrics)

    bench = sub.add_parser("bench", help="run the benchmark harness, emit CSV")
    bench.add_argument("--spec", help="JSON benchmark spec file")
    bench.add_argument("--sizes", type=_int_list, help="node counts, e.g. 100,500")
    bench.add_argument("--density", type=float, default=0.3, help="target overlap density")
    bench.add_argument("--trials", type=int, default=3, help="trials per cell")
    bench.add_argument("--seed", type=int, default=0, help="base seed")
    bench.add_argument(
        "--modes",
        type=_mode_list,
        default=(None, 1.5),
        help="comma list of growth modes, e.g. uncapped,capped:1.5",
    )
    bench.add_argument("--output", help="CSV output path (default stdout)")
    bench.set_defaults(func=_cmd_bench)

    gen = sub.add_parser("gen", help="generate a random test layout")
    gen.add_argument("--n", type=int, required=True, help="node count")
    gen.add_argument("--density", type=float, default=0.3, help="target overlap density")
    gen.add_argument("--seed", type=int, default=0, help="generator seed")
    gen.add_argument("--size-min", type=float, default=20.0, help="smallest node side")
    gen.add_argument("--size-max", type=float, default=60.0, help="largest node side")
    gen.add_argument("--output", help="layout JSON output path (default stdout)")
    gen.set_defaults(func=_cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        # argparse exits for usage errors (code 1 via _Parser.error) and for
        # --help (code 0); surface both as return values so embedding callers
        # never see the process-level exception.
        code = exc.code
        return code if isinstance(code, int) else EXIT_INVALID
    except (LayoutParseError, LayoutValidationError) as exc:
        print(f"error: invalid layout: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, json.JSONDecodeError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

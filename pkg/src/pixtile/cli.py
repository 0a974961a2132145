"""Command line interface.

Subcommands mirror the toolkit's menu: the three pattern generators, the
image compiler, a tile-file runner, oracle/round-trip verification, and a
CSV benchmark over synthetic images.

Exit codes are a stable contract: 0 success, 1 I/O failure or failed
verification, 2 usage or parse error, 3 step cap hit, 4 nondeterminism
under the fail policy.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .engine import (
    NondeterminismError,
    SimConfig,
    event_log_text,
    run,
)
from .generators import (
    ShiftSpec,
    expected_tile_count,
    gen_nonuniform,
    gen_transform,
    gen_uniform,
    nonuniform_oracle,
    uniform_oracle,
    wrap1,
)
from .image import (
    RAPID_SIZE,
    DimensionCapError,
    ImageFormatError,
    RasterImage,
    compile_image,
    load_image,
    render,
    to_ppm,
    verify_roundtrip,
)
from .model import SystemValidationError, TileSystem
from .tilefile import TileFileError, emit, parse

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_STEP_CAP = 3
EXIT_NONDET = 4

STATS_HEADER = "width,height,tile_types,tile_file_bytes,sim_steps,wall_time_s"


class UsageError(ValueError):
    """Bad flag values discovered after argparse."""


def _parse_shift_list(text: str, n: int) -> list[int]:
    try:
        shifts = [int(part) for part in text.split(",")]
    except ValueError:
        raise UsageError(f"-S expects comma-separated integers, got {text!r}")
    if len(shifts) != n - 1:
        raise UsageError(
            f"expected {n - 1} shifts for -N {n}, got {len(shifts)}")
    return shifts


def _require_n(n: int) -> None:
    if n < 2:
        raise UsageError(f"-N must be >= 2, got {n}")


def _write_text(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def cmd_gen_uniform(args) -> int:
    _require_n(args.N)
    system, _ = gen_uniform(args.N, args.S)
    _write_text(args.out, emit(system))
    print(f"wrote {args.out}: {len(system.tiles)} tile types")
    return EXIT_OK


def cmd_gen_nonuniform(args) -> int:
    _require_n(args.N)
    shifts = _parse_shift_list(args.S, args.N)
    system, _ = gen_nonuniform(args.N, shifts)
    _write_text(args.out, emit(system))
    distinct = len({s % args.N for s in shifts})
    print(f"wrote {args.out}: {len(system.tiles)} tile types "
          f"({distinct} distinct shifts)")
    return EXIT_OK


def cmd_gen_transform(args) -> int:
    _require_n(args.N)
    shifts = _parse_shift_list(args.S, args.N)
    system, _ = gen_transform(args.N, shifts, args.k)
    _write_text(args.out, emit(system))
    distinct = len({s % args.N for s in shifts})
    print(f"wrote {args.out}: {len(system.tiles)} tile types "
          f"({distinct} distinct shifts, rotation {args.k % args.N})")
    return EXIT_OK


def cmd_compile(args) -> int:
    data = Path(args.image).read_bytes()
    img = load_image(data, format_hint=args.image)
    system = compile_image(img, args.mode, max_dim=args.max_dim)
    text = emit(system)
    _write_text(args.out, text)
    w, h = ((RAPID_SIZE, RAPID_SIZE) if args.mode == "rapid"
            else (img.width, img.height))
    print(f"width={w} height={h} tile_types={len(system.tiles)} "
          f"tile_file_bytes={len(text.encode())} sim_steps={w * h - 1}")
    return EXIT_OK


def cmd_run(args) -> int:
    system, doc = parse(Path(args.tile_file).read_bytes())
    for warning in doc.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    cfg = SimConfig(
        max_steps=args.max_steps,
        bounding_box=tuple(args.box) if args.box else None,
        on_nondeterminism=args.on_nondet,
        site_order=args.order,
    )
    result = run(system, cfg)
    print(f"halted: {result.halted_reason} after {result.steps} steps, "
          f"{len(result.assembly)} tiles placed, "
          f"{len(result.nondeterministic_sites)} nondeterministic sites, "
          f"{result.wall_time:.3f}s")
    if args.out:
        img = render(result.assembly, system)
        Path(args.out).write_bytes(to_ppm(img, binary=not args.ascii))
        print(f"wrote {args.out} ({img.width}x{img.height})")
    if args.event_log:
        _write_text(args.event_log, event_log_text(result))
    return EXIT_STEP_CAP if result.halted_reason == "step-cap" else EXIT_OK


def _verify_generated(system: TileSystem, n: int, oracle) -> int:
    result = run(system)
    mismatches = []
    if result.steps != n * n - 1:
        mismatches.append(f"steps: expected {n * n - 1}, got {result.steps}")
    for site, tid in sorted(result.assembly.placed.items()):
        want = oracle(site.row, site.col)
        got = system.tiles[tid].edges[0]
        if want != got:
            mismatches.append(
                f"site ({site.row}, {site.col}): expected {want}, got {got}")
    if mismatches:
        for line in mismatches[:10]:
            print(f"MISMATCH {line}")
        print(f"verify: FAIL ({len(mismatches)} differences)")
        return EXIT_IO
    print(f"verify: pass ({n * n} sites match, {result.steps} steps)")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.kind == "uniform":
        _require_n(args.N)
        system, _ = gen_uniform(args.N, args.S)
        return _verify_generated(
            system, args.N,
            lambda r, c: uniform_oracle(args.N, args.S, r, c))
    if args.kind == "nonuniform":
        _require_n(args.N)
        shifts = _parse_shift_list(args.S, args.N)
        system, _ = gen_nonuniform(args.N, shifts)
        return _verify_generated(
            system, args.N,
            lambda r, c: nonuniform_oracle(args.N, shifts, r, c))
    if args.kind == "transform":
        _require_n(args.N)
        shifts = _parse_shift_list(args.S, args.N)
        system, _ = gen_transform(args.N, shifts, args.k)

        def oracle(r, c):
            # rotation moves every pattern value; the seed and the
            # boundary column keep their positional values
            value = nonuniform_oracle(args.N, shifts, r, c)
            if c >= 1:
                return wrap1(value - args.k, args.N)
            return value

        return _verify_generated(system, args.N, oracle)
    # image round trip
    img = load_image(Path(args.image).read_bytes(), format_hint=args.image)
    report = verify_roundtrip(img, args.mode)
    print(report.summary())
    return EXIT_OK if report.ok else EXIT_IO


def _synthetic_image(rng: np.random.Generator, width: int,
                     height: int) -> RasterImage:
    pix = (np.uint32(0xFE000000)
           | rng.integers(0, 1 << 24, size=width * height, dtype=np.uint32))
    return RasterImage(width, height, pix)


def cmd_stats(args) -> int:
    print(STATS_HEADER)
    jobs: list[tuple[str, RasterImage]] = []
    if args.images:
        for path in sorted(Path(args.images).glob("*.ppm")):
            jobs.append((str(path),
                         load_image(path.read_bytes(), format_hint=str(path))))
    else:
        rng = np.random.default_rng(args.seed)
        for size in _parse_sizes(args.sizes):
            jobs.append((f"{size}x{size}", _synthetic_image(rng, size, size)))
    for name, img in jobs:
        try:
            system = compile_image(img, "normal", max_dim=args.max_dim)
            text = emit(system)
            result = run(system)
            print(f"{img.width},{img.height},{len(system.tiles)},"
                  f"{len(text.encode())},{result.steps},"
                  f"{result.wall_time:.6f}")
        except Exception as exc:  # per-size failures become rows, not aborts
            note = f"{name}: {exc}".replace(",", ";")
            print(f"{img.width},{img.height},,,,,{note}")
    return EXIT_OK


def _parse_sizes(text: str) -> list[int]:
    try:
        sizes = [int(part) for part in text.split(",") if part]
    except ValueError:
        raise UsageError(f"--sizes expects comma-separated integers, "
                         f"got {text!r}")
    if any(s < 1 for s in sizes):
        raise UsageError("--sizes entries must be >= 1")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pixtile",
        description="Generate, grow and verify pixel-pattern tile systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-uniform",
                       help="tile system with a constant per-row shift")
    p.add_argument("-N", type=int, required=True, help="base row length")
    p.add_argument("-S", type=int, required=True, help="shift per row")
    p.add_argument("-o", "--out", required=True, help="output .tile path")
    p.set_defaults(func=cmd_gen_uniform)

    p = sub.add_parser("gen-nonuniform",
                       help="tile system with one shift per row")
    p.add_argument("-N", type=int, required=True, help="base row length")
    p.add_argument("-S", required=True,
                   help="comma-separated shifts, N-1 of them")
    p.add_argument("-o", "--out", required=True, help="output .tile path")
    p.set_defaults(func=cmd_gen_nonuniform)

    p = sub.add_parser("gen-transform",
                       help="per-row system with a rotated base row")
    p.add_argument("-N", type=int, required=True, help="base row length")
    p.add_argument("-S", required=True,
                   help="comma-separated shifts, N-1 of them")
    p.add_argument("-k", type=int, default=0, help="base row rotation")
    p.add_argument("-o", "--out", required=True, help="output .tile path")
    p.set_defaults(func=cmd_gen_transform)

    p = sub.add_parser("compile", help="compile a pixmap into a tile system")
    p.add_argument("image", help="input .ppm (P3 or P6)")
    p.add_argument("-m", "--mode", choices=("normal", "rapid"),
                   default="normal")
    p.add_argument("-o", "--out", required=True, help="output .tile path")
    p.add_argument("--max-dim", type=int, default=256,
                   help="dimension cap for normal mode (default 256)")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("run", help="grow a tile file and render the result")
    p.add_argument("tile_file")
    p.add_argument("--max-steps", type=int, default=1_000_000)
    p.add_argument("--box", type=int, nargs=4, default=None,
                   metavar=("RMIN", "RMAX", "CMIN", "CMAX"),
                   help="inclusive growth bounds containing the seed")
    p.add_argument("-o", "--out", default=None, help="rendered .ppm path")
    p.add_argument("--ascii", action="store_true",
                   help="write P3 instead of P6")
    p.add_argument("--event-log", default=None,
                   help="write one 'step row col tile_id' line per attachment")
    p.add_argument("--on-nondet", choices=("fail", "pick-lowest-tile-id"),
                   default="fail")
    p.add_argument("--order", choices=("lexicographic", "insertion"),
                   default="lexicographic")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify",
                       help="check a generator against its closed form, or "
                            "an image round trip")
    vsub = p.add_subparsers(dest="kind", required=True)
    v = vsub.add_parser("uniform")
    v.add_argument("-N", type=int, required=True)
    v.add_argument("-S", type=int, required=True)
    v.set_defaults(func=cmd_verify)
    v = vsub.add_parser("nonuniform")
    v.add_argument("-N", type=int, required=True)
    v.add_argument("-S", required=True)
    v.set_defaults(func=cmd_verify)
    v = vsub.add_parser("transform")
    v.add_argument("-N", type=int, required=True)
    v.add_argument("-S", required=True)
    v.add_argument("-k", type=int, default=0)
    v.set_defaults(func=cmd_verify)
    v = vsub.add_parser("image")
    v.add_argument("image")
    v.add_argument("-m", "--mode", choices=("normal", "rapid"),
                   default="normal")
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats",
                       help="CSV of tile counts, file sizes and run times")
    p.add_argument("--sizes", default="",
                   help="comma-separated square image sizes")
    p.add_argument("--seed", type=int, default=1,
                   help="seed for the synthetic image generator")
    p.add_argument("--images", default=None,
                   help="directory of .ppm files to measure instead")
    p.add_argument("--max-dim", type=int, default=256)
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TileFileError, ImageFormatError, SystemValidationError,
            DimensionCapError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NondeterminismError as exc:
        print(f"nondeterministic: {exc}", file=sys.stderr)
        return EXIT_NONDET
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

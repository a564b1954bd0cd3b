"""Command-line entry point.

Subcommands:
  evaluate --layout <file-or-bundled-name> [--mode day|night|both]
           [--config <file>] [--seed N] [--agg mean|max] [--out <dir>]
           [--format images|grids|all]
  serve    [--host H] [--port P]
  examples
  schema

Output tree for evaluate: <out>/<mode>/result.json plus, per --format,
<field>.ppm heat maps (floor, light, support, door, baseline, final,
trajectories) and <field>.csv grids.  Exit codes: 0 ok, 1 validation
error, 2 planner infeasibility.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import ENV_CONFIG, load_config
from .errors import ConfigError, LayoutError, PlanInfeasibleError
from .pipeline import evaluate_modes, result_to_json
from .render import ColorScale, export_grid, render_field, render_trajectories
from .room import RoomLayout, load_layout
from . import layouts as bundled

FIELD_ORDER = ("floor", "light", "support", "door", "baseline", "final")


def _resolve_layout(spec: str, strict: bool = True) -> RoomLayout:
    path = Path(spec)
    if path.exists():
        return load_layout(str(path), strict=strict)
    if spec in bundled.available():
        return bundled.load(spec)
    raise LayoutError("<file>", f"layout {spec!r} not found (no such file, and not "
                                f"one of the bundled layouts: {', '.join(bundled.available())})")


def _write_outputs(out_dir: Path, mode: str, result, fmt: str) -> None:
    mode_dir = out_dir / mode
    mode_dir.mkdir(parents=True, exist_ok=True)
    (mode_dir / "result.json").write_text(result_to_json(result), encoding="utf-8")
    fields = dict(result.base.factor_fields())
    fields["baseline"] = result.base.baseline
    fields["final"] = result.final
    scale = ColorScale()
    if fmt in ("images", "all"):
        for label in FIELD_ORDER:
            (mode_dir / f"{label}.ppm").write_bytes(
                render_field(fields[label], result.layout, scale))
        (mode_dir / "trajectories.ppm").write_bytes(
            render_trajectories(result, scale))
    if fmt in ("grids", "all"):
        for label in FIELD_ORDER:
            (mode_dir / f"{label}.csv").write_text(
                export_grid(fields[label]), encoding="utf-8")


def _cmd_evaluate(args) -> int:
    layout = _resolve_layout(args.layout, strict=not args.lenient)
    settings = load_config(args.config)
    modes = ("day", "night") if args.mode == "both" else (args.mode,)
    results = evaluate_modes(layout, settings, modes=modes, seed=args.seed,
                             aggregation=args.agg)
    out_dir = Path(args.out)
    for mode in modes:
        _write_outputs(out_dir, mode, results[mode], args.format)
    for mode in modes:
        summary = results[mode].summary
        print(f"{mode}: mean={summary['mean']:.4f} max={summary['max']:.4f} "
              f"p95={summary['p95']:.4f} "
              f"trajectories={len(results[mode].trajectories)}")
        for warning in results[mode].warnings:
            print(f"  warning: {warning}", file=sys.stderr)
    print(f"results written to {out_dir}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def _cmd_examples(_args) -> int:
    for name in bundled.available():
        print(name)
    return 0


def _cmd_schema(_args) -> int:
    from . import schema

    print(json.dumps(schema.layout_schema(), indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fallrisk",
        description="Spatial fall-risk evaluation for patient-room layouts")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("evaluate", help="evaluate a layout and write results")
    ev.add_argument("--layout", required=True,
                    help="layout file path or bundled layout name")
    ev.add_argument("--mode", choices=("day", "night", "both"), default="day")
    ev.add_argument("--config", default=None,
                    help=f"YAML config overriding coefficients (default ${ENV_CONFIG})")
    ev.add_argument("--seed", type=int, default=0)
    ev.add_argument("--agg", choices=("mean", "max"), default="mean")
    ev.add_argument("--out", default="out")
    ev.add_argument("--format", choices=("images", "grids", "all"), default="all")
    ev.add_argument("--lenient", action="store_true",
                    help="warn instead of erroring on unknown layout fields")
    ev.set_defaults(func=_cmd_evaluate)

    sv = sub.add_parser("serve", help="run the HTTP evaluation service")
    sv.add_argument("--host", default="127.0.0.1")
    sv.add_argument("--port", type=int, default=8077)
    sv.set_defaults(func=_cmd_serve)

    ex = sub.add_parser("examples", help="list bundled example layouts")
    ex.set_defaults(func=_cmd_examples)

    sc = sub.add_parser("schema", help="print the layout schema")
    sc.set_defaults(func=_cmd_schema)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (LayoutError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PlanInfeasibleError as exc:
        print(f"planner infeasible: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

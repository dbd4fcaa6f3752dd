"""Command-line interface.

Subcommands: detect, reduce, synth, tables, phosphor. Exit codes: 0 on
success, 1 for input errors, 2 for file-format errors, 3 for anything
that indicates an internal bug.
"""

import argparse
import json
import os
import sys
import traceback

from . import __version__
from .detector import DEFAULT_SOURCE, DEFAULT_THRESHOLD, detect_sequence, sequence_report
from .errors import FlickerError, FormatError, InputError
from .frame_io import (load_sequence, write_csv, write_mask, write_report,
                       write_sequence, write_tables)
from .palette import PaletteColor
from .phosphor import (DEFAULT_PIXEL_PITCH_MM, DEFAULT_VIEWING_MM, RefreshSweep,
                       amp_curve_table, default_phosphors, parse_phosphor_config,
                       visual_angle_table)
from .reducer import REDUCE_MODES, insert_frames, reduction_report
from .stochastic import CDF_MODES, SOURCES
from .synth import InjectionSpec, generate

ENV_THRESHOLD = "FLICKERKIT_THRESHOLD"


class _Parser(argparse.ArgumentParser):
    # usage problems are input errors (exit 1), not argparse's default exit 2
    def error(self, message):
        raise InputError(message)


class _HelpJsonAction(argparse.Action):
    def __init__(self, option_strings, dest, **kwargs):
        super().__init__(option_strings, dest, nargs=0, **kwargs)

    def __call__(self, parser, namespace, values, option_string=None):
        print(json.dumps(describe_cli(parser), indent=2))
        parser.exit(0)


def _jsonable(value):
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return repr(value)


def _describe_actions(parser):
    options = []
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            continue
        options.append({
            "flags": list(action.option_strings) or [action.dest],
            "help": action.help,
            "default": _jsonable(action.default),
            "choices": list(action.choices) if action.choices else None,
            "required": bool(getattr(action, "required", False)),
        })
    return options


def describe_cli(parser):
    """Machine-readable description of the full CLI surface."""
    info = {
        "prog": parser.prog,
        "version": __version__,
        "description": parser.description,
        "options": _describe_actions(parser),
        "subcommands": {},
    }
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            for name, sub in action.choices.items():
                info["subcommands"][name] = {
                    "description": sub.description,
                    "options": _describe_actions(sub),
                }
    return info


def _default_threshold():
    raw = os.environ.get(ENV_THRESHOLD)
    if raw is None:
        return DEFAULT_THRESHOLD
    try:
        return float(raw)
    except ValueError:
        raise InputError(f"{ENV_THRESHOLD} must be a number, got {raw!r}") from None


def _parse_color(name):
    try:
        return PaletteColor[name.strip().upper()]
    except KeyError:
        valid = ", ".join(c.name.lower() for c in PaletteColor)
        raise InputError(f"unknown color {name!r}, expected one of: {valid}") from None


def _parse_size(text):
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise InputError(f"bad size {text!r}, expected WIDTHxHEIGHT like 100x100") from None


def _parse_sweep(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise InputError(f"bad sweep {text!r}, expected MIN:MAX:STEP like 30:120:1")
    try:
        f_min, f_max, step = (float(p) for p in parts)
    except ValueError:
        raise InputError(f"bad sweep {text!r}, expected numeric MIN:MAX:STEP") from None
    return RefreshSweep(f_min=f_min, f_max=f_max, step=step)


def _parse_resolutions(text):
    return [_parse_size(part) for part in text.split(",") if part.strip()]


# --- subcommands ------------------------------------------------------------

def cmd_detect(args):
    threshold = args.threshold if args.threshold is not None else _default_threshold()
    seq = load_sequence(args.infile)
    results = detect_sequence(seq, threshold=threshold, source=args.source,
                              mode=args.cdf_mode, include_locations=args.locations)
    report = sequence_report(results)
    if args.report:
        write_report(report, args.report)
    if args.maps:
        digits = max(4, len(str(len(results) - 1)))
        for fmap, _ in results:
            write_mask(fmap.flags, os.path.join(args.maps, f"map_{fmap.pair_index:0{digits}d}.pbm"))
    if args.plot:
        from .plots import plot_pair_ratios
        plot_pair_ratios(report, args.plot)
    print(f"pairs={len(results)} aggregate_ratio={report['aggregate_ratio']:.6g}")
    return 0


def cmd_reduce(args):
    threshold = args.threshold if args.threshold is not None else _default_threshold()
    seq = load_sequence(args.infile)
    results = detect_sequence(seq, threshold=threshold, source=args.source, mode=args.cdf_mode)
    maps = [fmap for fmap, _ in results]
    reduced = insert_frames(seq, maps, mode=args.mode, full_mean=args.full_mean)
    write_sequence(reduced, args.out)
    report = reduction_report(seq, reduced, threshold=threshold, source=args.source,
                              cdf_mode=args.cdf_mode, reduce_mode=args.mode)
    if args.report:
        write_report(report, args.report)
    if args.plot:
        from .plots import plot_reduction
        plot_reduction(report, args.plot)
    print(f"frames={len(seq)} -> {len(reduced)} "
          f"before_ratio={report['before_ratio']:.6g} after_ratio={report['after_ratio']:.6g} "
          f"reduction={report['percent_reduction']:.2f}%")
    return 0


def cmd_synth(args):
    width, height = _parse_size(args.size)
    base_name, sep, flicker_name = args.colors.partition(":")
    if not sep:
        raise InputError(f"bad --colors {args.colors!r}, expected BASE:FLICKER like black:white")
    spec = InjectionSpec(width=width, height=height, frame_count=args.frames,
                         fraction=args.fraction, base_color=_parse_color(base_name),
                         flicker_color=_parse_color(flicker_name), seed=args.seed)
    seq, maps = generate(spec)
    paths = write_sequence(seq, args.out)
    locations = [[int(r), int(c)] for r, c in zip(*maps[0].flags.nonzero())] if maps else []
    truth = {
        "width": width,
        "height": height,
        "frames": args.frames,
        "fraction": args.fraction,
        "base_color": spec.base_color.name.lower(),
        "flicker_color": spec.flicker_color.name.lower(),
        "seed": args.seed,
        "pairs": len(maps),
        "locations": locations,
    }
    write_report(truth, os.path.join(args.out, "ground_truth.json"), fmt="json")
    print(f"wrote {len(paths)} frames and ground_truth.json to {args.out}")
    return 0


def cmd_tables(args):
    written = write_tables(args.out, mode=args.cdf_mode)
    print(f"wrote {len(written)} tables to {args.out}")
    return 0


def cmd_phosphor(args):
    if args.which == "angle":
        resolutions = _parse_resolutions(args.resolutions)
        header, rows = visual_angle_table(resolutions, pitch_mm=args.pitch,
                                          viewing_mm=args.distance)
        write_csv(args.out, header, rows)
        if args.plot:
            from .plots import plot_visual_angles
            plot_visual_angles(header, rows, args.plot)
        print(f"wrote {len(rows)} visual-angle rows to {args.out}")
    else:
        if args.config:
            with open(args.config, "r", encoding="utf-8") as fh:
                phosphors = parse_phosphor_config(fh.read())
        else:
            phosphors = default_phosphors()
        sweep = _parse_sweep(args.sweep)
        header, rows = amp_curve_table(phosphors, sweep)
        write_csv(args.out, header, rows)
        if args.plot:
            from .plots import plot_amp_curves
            plot_amp_curves(header, rows, args.plot)
        print(f"wrote {len(rows)} amplitude rows for {len(phosphors)} phosphors to {args.out}")
    return 0


# --- parser -----------------------------------------------------------------

def _add_detect_options(sub):
    sub.add_argument("--in", dest="infile", required=True,
                     help="frame directory or glob pattern (indexed .ppm/.png files)")
    sub.add_argument("--threshold", type=float, default=None,
                     help=f"flag pairs with probability >= this "
                          f"(default {DEFAULT_THRESHOLD}; {ENV_THRESHOLD} overrides)")
    sub.add_argument("--source", choices=SOURCES, default=DEFAULT_SOURCE,
                     help="probability table the detector reads")
    sub.add_argument("--cdf-mode", choices=CDF_MODES, default="exact",
                     help="normal-CDF evaluation used for the probability tables")


def build_parser():
    parser = _Parser(
        prog="flickerkit",
        description="Detect and reduce inter-frame flicker in image sequences; "
                    "model CRT phosphor flicker electronically.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--help-json", action=_HelpJsonAction,
                        help="print the CLI surface as JSON and exit")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("detect", description="Flag flickering pixels between consecutive frames.",
                       help="detect flicker in a frame sequence")
    _add_detect_options(p)
    p.add_argument("--report", help="write the pair report here (.json or .csv)")
    p.add_argument("--maps", help="directory for per-pair 1-bit masks (PBM)")
    p.add_argument("--locations", action="store_true",
                   help="include flagged pixel locations in the report")
    p.add_argument("--plot", help="render the per-pair ratio chart to this PNG")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("reduce", description="Insert mean-reconstructed frames between "
                                             "flagged pairs and report the effect.",
                       help="reduce flicker by frame reconstruction")
    _add_detect_options(p)
    p.add_argument("--out", required=True, help="directory for the output frames")
    p.add_argument("--mode", choices=REDUCE_MODES, default="insert",
                   help="insert new frames or replace flagged pixels in place")
    p.add_argument("--full-mean", action="store_true",
                   help="average every pixel of the reconstruction, not just flagged ones")
    p.add_argument("--report", help="write the reduction report here (.json or .csv)")
    p.add_argument("--plot", help="render the before/after chart to this PNG")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("synth", description="Generate a synthetic flickering sequence "
                                            "with known ground truth.",
                       help="generate a synthetic test sequence")
    p.add_argument("--size", default="100x100", help="frame size as WIDTHxHEIGHT")
    p.add_argument("--frames", type=int, default=10, help="number of frames")
    p.add_argument("--fraction", type=float, default=0.06,
                   help="fraction of pixels that flicker")
    p.add_argument("--colors", default="black:white",
                   help="BASE:FLICKER palette color names")
    p.add_argument("--seed", type=int, default=42, help="location picker seed")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("tables", description="Dump every color-pair statistics table as CSV.",
                       help="dump the statistics tables")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--cdf-mode", choices=CDF_MODES, default="exact",
                   help="normal-CDF evaluation for the probability tables")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("phosphor", description="Emit phosphor amplitude sweeps or "
                                               "visual-angle tables as CSV.",
                       help="phosphor flicker model curves")
    p.add_argument("which", nargs="?", choices=("amp", "angle"), default="amp",
                   help="amp = amplitude sweep (default), angle = visual angles")
    p.add_argument("--sweep", default="30:120:1", help="refresh sweep as MIN:MAX:STEP in Hz")
    p.add_argument("--config", help="phosphor config file (name = seconds per line)")
    p.add_argument("--resolutions", default="640x480,800x600,1024x768",
                   help="comma-separated WIDTHxHEIGHT list (angle mode)")
    p.add_argument("--pitch", type=float, default=DEFAULT_PIXEL_PITCH_MM,
                   help="pixel pitch in mm/pixel (angle mode)")
    p.add_argument("--distance", type=float, default=DEFAULT_VIEWING_MM,
                   help="viewing distance in mm (angle mode)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--plot", help="render the curves to this PNG")
    p.set_defaults(func=cmd_phosphor)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args) or 0
    except SystemExit as exc:  # --help / --version / --help-json
        code = exc.code
        return int(code) if isinstance(code, int) else 0
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FlickerError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except Exception:
        traceback.print_exc()
        return 3


if __name__ == "__main__":
    sys.exit(main())

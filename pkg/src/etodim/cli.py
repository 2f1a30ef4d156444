"""Command-line front end.

Exit status: 0 on success, 1 on a computation error (e.g. degenerate entropy
weights), 2 on usage or input-parsing errors.  Results go to stdout,
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .casestudy import rank_case
from .core import restrict_ranking, read_matrix_csv, write_matrix_csv
from .errors import EtodimError, MatrixError, ParseError
from .expansion import expand_matrix
from .simulation import (
    GridConfig,
    load_config,
    results_to_csv,
    run_grid,
    summary_to_json,
    with_seed,
)
from .todim import EntropyConvention, TodimParameters, evaluate

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("etodim")


class UsageError(Exception):
    pass


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--params-gain-exponent", type=float, default=default(0.88), metavar="A",
                        help="exponent of the dominance function (default 0.88)")
    parser.add_argument("--params-loss-aversion", type=float, default=default(2.25), metavar="THETA",
                        help="loss-aversion coefficient (default 2.25)")
    parser.add_argument("--entropy-convention", choices=[c.value for c in EntropyConvention],
                        default=default(None), help="entropy reading used for the criterion weights")
    parser.add_argument("--tie-epsilon", type=float, default=default(1e-9), metavar="EPS",
                        help="scores within EPS are tied (default 1e-9)")
    parser.add_argument("--seed", type=int, default=default(None), help="RNG seed for simulate")
    parser.add_argument("-v", "--verbose", action="store_true", default=default(False))


def _level(text: str) -> int:
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError("level parameter must be >= 2")
    return v


def _level_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    try:
        levels = list(range(int(lo), int(hi) + 1)) if sep else [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI or a comma list, got {text!r}") from None
    if not levels or min(levels) < 2:
        raise argparse.ArgumentTypeError("level parameters must be >= 2")
    return levels


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="etodim", description="Entropy-weight TODIM with expanded evaluation matrices")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        p = sub.add_parser(name, **kw)
        _global_options(p, suppress=True)
        return p

    p = add("rank", help="rank the alternatives of a CSV matrix")
    p.add_argument("matrix", type=Path)
    p.add_argument("--level", type=_level, help="rank the expanded matrix with this level parameter")
    p.add_argument("--json", action="store_true", help="emit weights, scores and rankings as JSON")

    p = add("expand", help="print the expanded matrix as CSV with an origin column")
    p.add_argument("matrix", type=Path)
    p.add_argument("--level", type=_level, required=True)

    p = add("simulate", help="run the Monte Carlo grid")
    p.add_argument("config", type=Path, nargs="?", help="key = value grid config (paper grid if omitted)")
    p.add_argument("--out", type=Path, help="write results CSV here instead of stdout")
    p.add_argument("--summary", type=Path, help="write the JSON summary here instead of stderr")
    p.add_argument("--workers", type=int, default=1)

    p = add("case-study", help="energy-storage technology selection")
    p.add_argument("--level", type=_level, default=8)
    p.add_argument("--with-additions", action="store_true", help="also rank after the two new technologies")
    p.add_argument("--no-expansion", action="store_true", help="rank the original matrix only")
    p.add_argument("--compare", action="store_true", help="print the expanded and the unexpanded paths")
    p.add_argument("--sensitivity", type=_level_range, metavar="LO..HI",
                   help="sweep the level parameter, before and after additions")
    p.add_argument("--json", action="store_true")
    return parser


def params_from_args(args) -> TodimParameters:
    kwargs = dict(gain_exponent=args.params_gain_exponent, loss_aversion=args.params_loss_aversion,
                  tie_epsilon=args.tie_epsilon)
    if args.entropy_convention:
        kwargs["entropy_convention"] = args.entropy_convention
    try:
        return TodimParameters(**kwargs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read(path: Path):
    try:
        return read_matrix_csv(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def cmd_rank(args, out) -> int:
    params = params_from_args(args)
    matrix = _read(args.matrix)
    target = expand_matrix(matrix, args.level) if args.level else matrix
    result = evaluate(target, params)
    restricted = restrict_ranking(result.ranking, matrix.rows)
    if args.json:
        doc = {
            "criteria": list(target.criteria),
            "weights": result.weights.tolist(),
            "scores": {r.label: float(s) for r, s in zip(target.rows, result.scores)},
            "ranking": str(result.ranking),
        }
        if args.level:
            doc["level"] = args.level
            doc["original_ranking"] = str(restricted)
        out.write(json.dumps(doc, indent=2) + "\n")
    elif args.level:
        out.write(f"{result.ranking}\n{restricted}\n")
    else:
        out.write(f"{result.ranking}\n")
    return EXIT_OK


def cmd_expand(args, out) -> int:
    write_matrix_csv(expand_matrix(_read(args.matrix), args.level), out, with_origin=True)
    return EXIT_OK


def cmd_simulate(args, out) -> int:
    params = params_from_args(args)
    try:
        config = load_config(args.config) if args.config else GridConfig(params=params)
    except OSError as exc:
        raise UsageError(f"cannot read {args.config}: {exc.strerror or exc}") from None
    except ValueError as exc:
        raise UsageError(f"bad config: {exc}") from None
    config = with_seed(config, args.seed)

    def progress(done, total):
        log.info("cells %d/%d", done, total)

    grid = run_grid(config, workers=max(1, args.workers), progress=progress)
    csv_text = results_to_csv(grid.results)
    summary = summary_to_json(grid.summary)
    if args.out:
        args.out.write_text(csv_text, encoding="utf-8")
    else:
        out.write(csv_text)
    if args.summary:
        args.summary.write_text(summary, encoding="utf-8")
    else:
        sys.stderr.write(summary)
    return EXIT_OK


def cmd_case_study(args, out) -> int:
    params = params_from_args(args)
    if args.sensitivity:
        rows = []
        for v in args.sensitivity:
            r = rank_case(v, True, params)
            rows.append({"level": v, "before": str(r.before), "after": str(r.after)})
        if args.json:
            out.write(json.dumps(rows, indent=2) + "\n")
        else:
            for row in rows:
                out.write(f"{row['level']}\t{row['before']}\t{row['after']}\n")
        return EXIT_OK

    paths = []
    if args.compare:
        paths = [("expanded", args.level), ("original", None)]
    elif args.no_expansion:
        paths = [("original", None)]
    else:
        paths = [("expanded", args.level)]
    with_additions = args.with_additions or args.compare
    report = []
    for name, level in paths:
        r = rank_case(level, with_additions, params)
        entry = {"path": name, "level": level, "before": str(r.before)}
        if r.after is not None:
            entry["after"] = str(r.after)
        report.append(entry)
    if args.json:
        out.write(json.dumps(report, indent=2) + "\n")
        return EXIT_OK
    for entry in report:
        prefix = f"{entry['path']}\t" if len(report) > 1 else ""
        out.write(f"{prefix}{entry['before']}\n")
        if "after" in entry:
            out.write(f"{prefix}{entry['after']}\n")
    return EXIT_OK


COMMANDS = {
    "rank": cmd_rank,
    "expand": cmd_expand,
    "simulate": cmd_simulate,
    "case-study": cmd_case_study,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, ParseError, MatrixError) as exc:
        print(f"etodim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EtodimError as exc:
        print(f"etodim: computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())

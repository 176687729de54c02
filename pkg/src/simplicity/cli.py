"""Command-line interface.

    simplicity eval fig2-b --format csv
    simplicity rank fig2-b fig2-c fig2-d
    simplicity presets
    simplicity reproduce
    simplicity oracle fig2-b --samples 1000000 --seed 42

Exit codes: 0 success, 1 input error, 2 reproduction or oracle failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from . import codec
from .complexity import STRUCTURE_COSTS
from .errors import SimplicityError
from .nearmiss import SCORES, NearMissEvaluation, evaluate_all, rank_scores
from .oracle import (
    CheckResult,
    exhaustive_counterfactual_check,
    mc_check,
    verify_prior_identity,
)
from .presets import PRESETS, load_preset
from .scenario import format_number, parse_scenario

EXIT_OK, EXIT_INPUT, EXIT_FAIL = 0, 1, 2
REPRODUCE_TOLERANCE = 0.05

REPORT_COLUMNS = ["id", "Cw", "C_s2", "dir_bits", "move_bits", "U2", "U1s", "U2s",
                  "p_subj", "p_ex_ante", "clamped"]


class InputError(Exception):
    pass


def load(source: str):
    """Preset name or path to a scenario file."""
    if source in PRESETS:
        return load_preset(source)
    path = Path(source)
    if not path.is_file():
        raise InputError(f"file not found: {source}")
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}") from exc
    try:
        return parse_scenario(text, default_id=path.stem)
    except SimplicityError as exc:
        raise InputError(f"{source}: {exc}") from exc


def _f(value) -> str:
    return "" if value is None else f"{float(value):.6f}"


def report_row(ev: NearMissEvaluation) -> list[str]:
    r, s = ev.report, ev.scores
    return [ev.scenario_id, _f(r.c_w), _f(r.c_counterfactual), _f(r.cheat_direction_bits),
            _f(r.cheat_move_bits), _f(s.u_nearmiss), _f(s.u_prior_lose), _f(s.u_prior_win),
            _f(s.p_subjective), _f(s.p_ex_ante), "true" if s.clamped else "false"]


def emit(header: list[str], rows: list[list[str]], fmt: str, out) -> None:
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h)
              for i, h in enumerate(header)]
    out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
    out.write("  ".join("-" * w for w in widths) + "\n")
    for row in rows:
        out.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")


def _evaluate(sources, structure):
    pairs = [load(src) for src in sources]
    return evaluate_all(pairs, structure)


def cmd_eval(args, out) -> int:
    (ev,) = _evaluate([args.source], args.structure_cost)
    emit(REPORT_COLUMNS, [report_row(ev)], args.format, out)
    if args.debug:
        cf = ev.counterfactual
        pos = cf.position
        shown = ("(" + ", ".join(format_number(v) for v in pos) + ")") if isinstance(pos, tuple) \
            else format_number(pos)
        out.write(f"# s2={shown} delta={format_number(cf.delta)} directions={cf.direction_count} "
                  f"remarkable={str(cf.is_remarkable).lower()} piece={cf.piece_index} "
                  f"piece_code='{codec.code_word(cf.piece_index)}'\n")
    return EXIT_OK


def cmd_rank(args, out) -> int:
    evaluations = _evaluate(args.sources, args.structure_cost)
    try:
        ranking = rank_scores([(ev.scenario_id, ev.score(args.score)) for ev in evaluations],
                              args.score)
    except SimplicityError as exc:
        raise InputError(str(exc)) from exc
    rows = [[str(e.rank), e.scenario_id, f"{e.score:.6f}"] for e in ranking.entries]
    emit(["rank", "id", args.score], rows, args.format, out)
    return EXIT_OK


def cmd_presets(args, out) -> int:
    rows = []
    for p in PRESETS.values():
        sc, _ = load_preset(p.name)
        rows.append([p.name, str(sc.dim), p.provenance,
                     "" if p.claimed_u2 is None else f"{p.claimed_u2:g}", p.note])
    emit(["name", "dim", "provenance", "claimed_U2", "note"], rows, args.format, out)
    return EXIT_OK


def cmd_reproduce(args, out) -> int:
    rows = []
    failed = False
    for p in PRESETS.values():
        if p.claimed_u2 is None:
            continue
        (ev,) = _evaluate([p.name], args.structure_cost)
        u2 = float(ev.scores.u_nearmiss)
        diff = abs(u2 - p.claimed_u2)
        ok = diff <= REPRODUCE_TOLERANCE
        failed |= not ok
        rows.append([p.name, f"{p.claimed_u2:.1f}", f"{u2:.6f}", f"{diff:.6f}",
                     "pass" if ok else "FAIL"])
    emit(["preset", "claimed_U2", "computed_U2", "abs_diff", "status"], rows, args.format, out)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_oracle(args, out) -> int:
    if args.samples < 1:
        raise InputError("--samples must be positive")
    scenario, outcome = load(args.source)
    checks = []
    try:
        checks += verify_prior_identity(scenario, args.structure_cost)
        if outcome.is_win:
            checks.append(CheckResult("counterfactual-optimality", "skip", "outcome is a win"))
        else:
            checks.append(exhaustive_counterfactual_check(scenario, outcome))
        checks.append(mc_check(scenario, args.samples, args.seed))
    except SimplicityError as exc:
        raise InputError(f"{scenario.id}: {exc}") from exc
    rows = [[scenario.id, c.name, c.status, c.detail] for c in checks]
    emit(["id", "check", "status", "detail"], rows, args.format, out)
    return EXIT_OK if all(c.ok for c in checks) else EXIT_FAIL


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("table", "csv"), default=d("table"))
    parser.add_argument("--structure-cost", choices=STRUCTURE_COSTS, default=d("log2k"),
                        help="extra bits charged for fragmented regions")
    parser.add_argument("--score", choices=SCORES, default=d("u2"),
                        help="quantity that drives rankings")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="simplicity", description=__doc__.split("\n\n")[0])
    _global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="score one scenario")
    p.add_argument("source", help="preset name or scenario file")
    p.add_argument("--debug", action="store_true", help="also print the chosen counterfactual")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("rank", parents=[common], help="rank scenarios by predicted intensity")
    p.add_argument("sources", nargs="+")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("presets", parents=[common], help="list built-in scenarios")
    p.set_defaults(func=cmd_presets)

    p = sub.add_parser("reproduce", parents=[common], help="check the reference U2 values")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("oracle", parents=[common], help="run brute-force checks")
    p.add_argument("source")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    buf = io.StringIO()
    try:
        code = args.func(args, buf)
    except (InputError, SimplicityError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    stdout.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())

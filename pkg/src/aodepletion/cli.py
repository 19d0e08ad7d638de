"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import scene as scene_io
from .bodies import HalfSpace
from .campaigns import CAMPAIGNS, run_campaign
from .criteria import CuspWarning, theorem1_check, wall_check
from .deltamax import delta_max, solve_wall
from .errors import CapabilityError, InputError, NumericalError
from .geometry import Ball, ConfigurationTriplet
from .oracle import truncated_inclusion_exclusion, union_volume_mc
from .potential import AOParameters, _fmt, potential_table

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--scene", default=d, help="path to a JSON scene file")
    p.add_argument("--seed", type=int, default=d, help="unsigned 64-bit RNG seed")
    p.add_argument("--tol", type=float, default=d, help="geometric tolerance")
    p.add_argument("--out", default=d, help="write output here instead of stdout")
    p.add_argument("--format", choices=("csv", "text"), default=d, help="output format")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="aodepletion", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("delta-max", help="maximal shell radius of a 3-body scene")
    _global_flags(p, True)

    p = sub.add_parser("criterion", help="rolling-radius threshold check")
    _global_flags(p, True)
    p.add_argument("--wall", action="store_true", help="use the hard-wall criterion")
    p.add_argument("--delta", type=float, help="override the scene's delta")

    p = sub.add_parser("potential", help="tabulate the pair potential as CSV")
    _global_flags(p, True)
    p.add_argument("--R", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--rho-p", type=float, default=1.0)
    p.add_argument("--kT", type=float, default=1.0)
    p.add_argument("--r-min", type=float)
    p.add_argument("--r-max", type=float)
    p.add_argument("--n-points", type=int, default=101)

    p = sub.add_parser("verify", help="run a randomized verification campaign")
    _global_flags(p, True)
    p.add_argument("campaign", choices=sorted(CAMPAIGNS))
    p.add_argument("--n-configs", type=int)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("union-volume", help="Monte Carlo volume of the union of dilations")
    _global_flags(p, True)
    p.add_argument("--delta", type=float, help="override the scene's delta")
    p.add_argument("--samples", type=int, default=10**6)
    return parser


def _load_scene(args):
    if not args.scene:
        raise InputError("this command needs --scene")
    try:
        return scene_io.load(args.scene, args.tol)
    except OSError as exc:
        raise InputError(f"cannot read scene: {exc}") from exc


def _rows_text(rows) -> str:
    width = max(len(k) for k, _ in rows)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


def _rows_csv(rows) -> str:
    return "key,value\n" + "".join(f"{k},{v}\n" for k, v in rows)


def _vec(v) -> str:
    return " ".join(_fmt(float(x)) for x in v)


def _cmd_delta_max(args):
    sc = _load_scene(args)
    balls, walls = sc.balls, sc.walls
    if len(balls) == 3 and not walls and len(sc.bodies) == 3:
        res = delta_max(ConfigurationTriplet(tuple(balls)), args.tol)
    elif len(balls) == 2 and len(walls) == 1 and len(sc.bodies) == 3:
        res = solve_wall(balls[0], balls[1], walls[0], args.tol)
    else:
        raise CapabilityError("delta-max needs 3 balls, or 2 balls and 1 half-space")
    rows = [("delta_max", _fmt(res.delta_max)), ("case", res.case_tag.value),
            ("witness", _vec(res.witness_point)), ("degenerate", str(res.degenerate).lower())]
    if res.apollonius_radius is not None:
        rows.append(("apollonius_radius", _fmt(res.apollonius_radius)))
    return rows, EXIT_OK


def _cmd_criterion(args):
    sc = _load_scene(args)
    delta = args.delta if args.delta is not None else sc.delta
    if delta is None:
        raise InputError("criterion needs a delta (scene key or --delta)")
    use_wall = args.wall or any(isinstance(b, HalfSpace) for b in sc.bodies)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", CuspWarning)
        rep = (wall_check if use_wall else theorem1_check)(sc.bodies, delta)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    rows = [("criterion", "wall" if use_wall else "rolling-radius"),
            ("delta", _fmt(delta)), ("threshold", _fmt(rep.threshold)),
            ("satisfied", str(rep.satisfied).lower()), ("strict", str(rep.strict).lower()),
            ("limiting_body", str(rep.limiting_body_index))]
    if rep.warning:
        rows.append(("warning", rep.warning))
    return rows, EXIT_OK


def _cmd_potential(args):
    params = AOParameters(args.R, args.delta, args.rho_p, args.kT)
    r_min = 2.0 * params.R if args.r_min is None else args.r_min
    r_max = 2.0 * (params.R + params.delta) if args.r_max is None else args.r_max
    return potential_table(params, r_min, r_max, args.n_points).to_csv(), EXIT_OK


def _cmd_verify(args):
    seed = 0 if args.seed is None else args.seed
    if not 0 <= seed < 2**64:
        raise InputError("seed must be an unsigned 64-bit integer")
    rep = run_campaign(args.campaign, args.n_configs, seed, args.workers)
    if args.format == "csv":
        text = "campaign,configurations,seed,failures,max_violation,result\n"
        text += (f"{rep.name},{rep.n_configs},{rep.seed},{len(rep.failures)},"
                 f"{_fmt(rep.max_violation)},{'PASS' if rep.passed else 'FAIL'}\n")
        for f in rep.failures:
            print("failure: " + json.dumps(f), file=sys.stderr)
    else:
        text = rep.to_text()
    return text, EXIT_OK if rep.passed else EXIT_FAIL


def _cmd_union_volume(args):
    sc = _load_scene(args)
    delta = args.delta if args.delta is not None else sc.delta
    if delta is None:
        raise InputError("union-volume needs a delta (scene key or --delta)")
    seed = args.seed if args.seed is not None else (sc.seed or 0)
    est = union_volume_mc(sc.bodies, delta, args.samples, seed=seed)
    rows = [("delta", _fmt(delta)), ("volume", _fmt(est.volume)),
            ("std_error", _fmt(est.std_error)), ("samples", str(est.sample_count)),
            ("seed", str(est.seed))]
    if all(isinstance(b, Ball) for b in sc.bodies):
        ie = truncated_inclusion_exclusion(sc.bodies, delta)
        rows.append(("inclusion_exclusion", _fmt(ie)))
        rows.append(("z_score", _fmt((ie - est.volume) / est.std_error)))
    return rows, EXIT_OK


_COMMANDS = {
    "delta-max": _cmd_delta_max,
    "criterion": _cmd_criterion,
    "potential": _cmd_potential,
    "verify": _cmd_verify,
    "union-volume": _cmd_union_volume,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    try:
        out, code = _COMMANDS[args.command](args)
    except (InputError, CapabilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if isinstance(out, list):
        out = _rows_csv(out) if args.format == "csv" else _rows_text(out)
    if args.out:
        Path(args.out).write_text(out, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())

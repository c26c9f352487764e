"""Command-line entry point: ``fareygame farey|play|tess|dims|check``.

Output is one JSON object {subcommand, inputs, results, version}. Rationals
are written as "p/q" strings; logarithmic values as decimal strings next to
their precision. Exit status is 2 for usage errors and 1 for domain errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .arith import BallD, Interval, fmt_rational, parse_rational
from .dims import (
    DEFAULT_PRECISION,
    GENERAL,
    INTEGER_BETA,
    BoundInputs,
    aux_inequality_holds,
    bad_delta_bounds,
    box_count_exponent,
    build_cover_levels,
    covered_by,
    disjoint_from,
    hole_count,
    in_some_shifted_ball,
    intersection_bound,
    lower_bound_winning,
    remaining_set,
    upper_bound_ubiq_losing,
)
from .dioph import RealSpec, bad_report, dir_witnesses_detailed
from .errors import DomainError, FareyGameError
from .farey import farey_half_interval, farey_sequence, half_farey_partition, minimal_order_farey_element
from .game import AccelSeq, CenteredStrategy, GameParams, play_trace, random_start, run_game
from .strategies import (
    AliceStrategy,
    FareyBob,
    adversary,
    certify_bad,
    extract_witnesses,
    record_denominators,
)
from .tess import (
    CompleteTess,
    brute_force_blocks,
    is_representable,
    maximal_tessellations,
    minimal_tessellations,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _q(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except DomainError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _interval_arg(text: str) -> Interval:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("interval must be 'a/b,c/d'")
    lo, hi = (_q(p) for p in parts)
    if hi < lo:
        raise argparse.ArgumentTypeError("interval endpoints out of order")
    return Interval.from_endpoints(lo, hi)


def _ball_arg(text: str):
    if ";" not in text:
        raise argparse.ArgumentTypeError("expected 'x1,x2,...;R'")
    c, r = text.split(";")
    return tuple(_q(x) for x in c.split(",")), _q(r)


def _ff(x) -> dict:
    return x.as_dict()


def _iv(I: Interval) -> dict:
    return {"lo": fmt_rational(I.lo), "hi": fmt_rational(I.hi)}


# ---------------------------------------------------------------------------

def cmd_farey(a) -> dict:
    if a.what == "sequence":
        if a.order is None:
            raise UsageError("--what sequence needs --order")
        seq = farey_sequence(a.order)
        return {"count": len(seq), "fractions": [_ff(x) for x in seq]}
    if a.interval is None:
        raise UsageError(f"--what {a.what} needs --interval")
    I = a.interval
    if a.what == "anchor":
        g, q = minimal_order_farey_element(I)
        return {"anchor": _ff(g), "order": q}
    if a.what == "partition":
        part = half_farey_partition(I)
        return {
            "anchor": _ff(part.anchor),
            "l": fmt_rational(part.l),
            "r": fmt_rational(part.r),
            "left_chain": [_ff(x) for x in part.left_chain],
            "right_chain": [_ff(x) for x in part.right_chain],
            "elements": [_ff(x) for x in part.elements()],
            "cover": _iv(part.cover),
        }
    h = farey_half_interval(I)
    return {"anchor": _ff(h.anchor), "L": fmt_rational(h.L), "R": fmt_rational(h.R), "interval": _iv(h.interval)}


BOB_CHOICES = ("farey", "random", "target_rational", "avoid_anchor", "centered")
ALICE_CHOICES = ("bad", "random", "target_rational", "avoid_anchor", "centered")


def _make(kind: str, seed: Optional[int], target: Fraction):
    if kind == "farey":
        return FareyBob()
    if kind == "bad":
        return AliceStrategy()
    if kind == "centered":
        return CenteredStrategy()
    return adversary(kind, seed or 0, target=target)


def cmd_play(a) -> dict:
    randomized = a.start is None or a.bob == "random" or a.alice == "random"
    if randomized and a.seed is None:
        raise UsageError("this play is randomized; pass --seed")
    params = GameParams(a.alpha, a.beta)
    accel = AccelSeq(tuple(a.accel))
    seed = a.seed or 0
    bob = _make(a.bob, 2 * seed, a.target)
    alice = _make(a.alice, 2 * seed + 1, a.target)
    start = None
    if a.start is not None:
        c, r = a.start
        if len(c) != 1:
            raise UsageError("--start needs one coordinate")
        start = Interval(c[0], r)
    else:
        start = random_start(seed)
    play = run_game(params, accel, bob, alice, a.depth, seed=seed, start=start)
    out = {"trace": play_trace(play)}
    if a.bob == "farey":
        ws = extract_witnesses(play)
        out["witnesses"] = [
            {"step": w.step, "nu": _ff(w.nu), "ball_index": w.ball_index, "bound": fmt_rational(w.bound),
             "kind": w.kind, "holds": w.holds()}
            for w in ws
        ]
        out["anchors"] = [{"step": x.step, "anchor": _ff(x.value), "order": x.order} for x in ws.anchors]
        out["record_denominators"] = record_denominators(ws)
        out["stabilized"] = ws.stabilized
    if a.alice == "bad":
        cert = certify_bad(play)
        out["certificate"] = {"q_bound": cert.q_bound, "ok": cert.ok, "Q": cert.Q,
                              "first_index": cert.first_index,
                              "violations": [f"{p}/{q}" for p, q in cert.violations]}
    return out


def cmd_tess(a) -> dict:
    c, R = a.ball
    bc, Rp = a.base
    if len(c) != a.dim or len(bc) != a.dim:
        raise UsageError("--ball and --base must have --dim coordinates")
    ball = BallD(c, R)
    tess = CompleteTess(bc, Rp)
    if a.what == "represent":
        ok, block = is_representable(ball, tess)
        return {"representable": ok, "blocks": [block.as_dict()] if block else []}
    if a.what == "min":
        blocks = minimal_tessellations(ball, tess)
    elif a.what == "max":
        blocks = maximal_tessellations(ball, tess)
    else:
        blocks = brute_force_blocks(ball, tess, a.mode, a.bound)
    return {"blocks": [b.as_dict() for b in blocks]}


def _inputs_list(a) -> List[BoundInputs]:
    out = []
    for text in a.inputs or []:
        parts = text.split(",")
        if len(parts) != 4:
            raise UsageError("--inputs must be 'd,s,j,beta'")
        try:
            out.append(BoundInputs(int(parts[0]), int(parts[1]), int(parts[2]), parse_rational(parts[3])))
        except ValueError:
            raise UsageError(f"bad --inputs {text!r}") from None
    return out


def _bounds_row(inp: BoundInputs, prec: int) -> dict:
    row = {"d": inp.d, "s": inp.s, "j": inp.j, "beta": fmt_rational(inp.beta),
           "N_R": hole_count(inp, GENERAL),
           "N": hole_count(inp, INTEGER_BETA) if inp.inverse_beta_integral else None}
    if inp.s >= inp.d:
        ub = upper_bound_ubiq_losing(inp, prec)
        row["zeta_R"] = str(ub.general.value)
        row["zeta"] = str(ub.integer_beta.value) if ub.integer_beta else None
        row["expression"] = ub.best.expression
        row["aux_inequality"] = aux_inequality_holds(inp)
    row["precision"] = prec
    return row


def cmd_dims(a) -> dict:
    prec = a.precision
    inputs = _inputs_list(a)
    if a.what == "bounds":
        if not inputs and a.delta is None and a.alpha is None:
            raise UsageError("--what bounds needs --inputs, --delta or --alpha/--beta")
        out = {"rows": [_bounds_row(i, prec) for i in inputs]}
        if a.delta is not None:
            out["bad_delta"] = bad_delta_bounds(a.delta, prec).as_dict()
            if a.translates is not None:
                out["intersection"] = intersection_bound(a.translates, a.delta, prec).as_dict()
        if a.alpha is not None:
            if a.beta is None:
                raise UsageError("--alpha needs --beta")
            d = inputs[0].d if inputs else 1
            out["lower_bound_winning"] = lower_bound_winning(d, a.alpha, a.beta, prec).as_dict()
        out["precision"] = prec
        return out
    if not inputs:
        raise UsageError(f"--what {a.what} needs --inputs")
    if a.what == "counts":
        return {"rows": [
            {"d": i.d, "s": i.s, "j": i.j, "beta": fmt_rational(i.beta),
             "N_R": hole_count(i, GENERAL),
             "N": hole_count(i, INTEGER_BETA) if i.inverse_beta_integral else None}
            for i in inputs]}
    inp = inputs[0]
    if a.ball is not None:
        c, r = a.ball
        B1 = Interval(c[0], r)
    else:
        B1 = Interval(0, Fraction(1, 2))
    levels = build_cover_levels(B1, inp, a.depth, a.variant, a.holes)
    rows = []
    for lev in levels:
        F = remaining_set(B1, levels, lev.t)
        rows.append({
            "t": lev.t,
            "cells": len(lev.cells),
            "holes": len(lev.holes),
            "cell_radius": fmt_rational(lev.cell_radius),
            "per_hole": lev.per_hole,
            "covered": covered_by(F, lev.cells),
            "holes_disjoint": all(disjoint_from(F, h) for L in levels[: lev.t] for h in L.holes),
            "box_exponent": str(box_count_exponent(lev, B1.radius, prec)),
            "precision": prec,
        })
    return {"variant": levels[0].variant, "B1": _iv(B1), "levels": rows,
            "shifted_balls_contain_level1_holes": in_some_shifted_ball(B1, levels[0].holes)}


def cmd_check(a) -> dict:
    if (a.x is None) == (a.cf is None):
        raise UsageError("pass exactly one of --x and --cf")
    if a.x is not None:
        x = RealSpec.rational(a.x)
    else:
        text = a.cf
        if ";" in text:
            head, tail = text.split(";", 1)
            terms = [int(head)] + [int(t) for t in tail.split(",") if t.strip()]
        else:
            terms = [int(t) for t in text.split(",") if t.strip()]
        x = RealSpec.cf(terms)
    Q = a.Q
    ws = dir_witnesses_detailed(x, a.delta, a.qmax)
    rep = bad_report(x, a.delta, Q, a.qmax)
    return {
        "point": fmt_rational(x.point),
        "enclosure": fmt_rational(x.enclosure),
        "witnesses": [{"p": w.p, "q": w.q, "certain": w.certain} for w in ws],
        "bad": rep.ok,
        "certain": rep.certain,
        "violations": [f"{p}/{q}" for p, q in rep.violations],
    }


COMMANDS = {"farey": cmd_farey, "play": cmd_play, "tess": cmd_tess, "dims": cmd_dims, "check": cmd_check}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int)
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION)

    p = _Parser(prog="fareygame", description=__doc__.splitlines()[0], parents=[common])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="subcommand", parser_class=_Parser)
    sub.required = True

    f = sub.add_parser("farey", parents=[common], help="Farey sequences and partitions")
    f.add_argument("--order", type=int)
    f.add_argument("--interval", type=_interval_arg)
    f.add_argument("--what", choices=("sequence", "anchor", "partition", "half-interval"), default="sequence")

    g = sub.add_parser("play", parents=[common], help="run a seeded game")
    g.add_argument("--alpha", type=_q, required=True)
    g.add_argument("--beta", type=_q, required=True)
    g.add_argument("--accel", type=lambda s: [int(t) for t in s.split(",") if t.strip()], default=[])
    g.add_argument("--depth", type=int, default=10)
    g.add_argument("--bob", choices=BOB_CHOICES, default="random")
    g.add_argument("--alice", choices=ALICE_CHOICES, default="random")
    g.add_argument("--target", type=_q, default=Fraction(1, 2))
    g.add_argument("--start", type=_ball_arg, help="'c;r' for B_1")

    t = sub.add_parser("tess", parents=[common], help="tessellation blocks")
    t.add_argument("--dim", type=int, required=True)
    t.add_argument("--ball", type=_ball_arg, required=True)
    t.add_argument("--base", type=_ball_arg, required=True)
    t.add_argument("--what", choices=("represent", "min", "max", "oracle"), default="min")
    t.add_argument("--mode", choices=("cover", "packing"), default="cover")
    t.add_argument("--bound", type=int, default=8)

    d = sub.add_parser("dims", parents=[common], help="dimension bounds and covers")
    d.add_argument("--delta", type=_q)
    d.add_argument("--translates", type=int)
    d.add_argument("--alpha", type=_q)
    d.add_argument("--beta", type=_q)
    d.add_argument("--inputs", action="append", help="'d,s,j,beta' (repeatable)")
    d.add_argument("--what", choices=("bounds", "counts", "cover"), default="bounds")
    d.add_argument("--depth", type=int, default=1)
    d.add_argument("--variant", choices=(INTEGER_BETA, GENERAL))
    d.add_argument("--holes", choices=("farey", "centered"), default="farey")
    d.add_argument("--ball", type=_ball_arg, help="'c;r' for B_1")

    c = sub.add_parser("check", parents=[common], help="Bad/Dir diagnostics")
    c.add_argument("--x", type=_q)
    c.add_argument("--cf")
    c.add_argument("--delta", type=_q, required=True)
    c.add_argument("--Q", type=int, default=1)
    c.add_argument("--qmax", type=int, required=True)
    return p


def _inputs_echo(a) -> dict:
    out = {}
    for k, v in sorted(vars(a).items()):
        if k in ("subcommand",):
            continue
        out[k] = _jsonable(v)
    return out


def _jsonable(v):
    if isinstance(v, Fraction):
        return fmt_rational(v)
    if isinstance(v, Interval):
        return _iv(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _csv(results: dict) -> str:
    rows = results.get("rows") or results.get("levels")
    if rows is None:
        raise UsageError("csv output needs a table-shaped result (dims --inputs ...)")
    buf = io.StringIO()
    keys = list(rows[0].keys())
    w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: ("" if r.get(k) is None else r.get(k)) for k in keys})
    return buf.getvalue()


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
        if a.format == "csv" and a.subcommand != "dims":
            raise UsageError("--format csv is provided for dims only")
        results = COMMANDS[a.subcommand](a)
        if a.format == "csv":
            sys.stdout.write(_csv(results))
        else:
            record = {"subcommand": a.subcommand, "inputs": _inputs_echo(a), "results": results,
                      "version": __version__}
            sys.stdout.write(json.dumps(record, indent=2) + "\n")
        return 0
    except UsageError as e:
        sys.stderr.write(f"fareygame: usage error: {e}\n")
        return 2
    except FareyGameError as e:
        sys.stderr.write(f"fareygame: {type(e).__name__}: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())

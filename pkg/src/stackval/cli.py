"""Command-line front end.

Exit codes: 0 for Yes or success, 1 for No, 2 when a budget is exceeded
or a verdict is indeterminate, 3 and above for errors.
"""

import argparse
import json
import sys

from . import asv_mp, checker, ds_stackelberg, reductions, zerosum
from .arena import MealyStrategy, load_arena
from .errors import BudgetExceeded, StackvalError
from .rationals import format_rational, format_value, parse_rational

YES, NO, UNDECIDED, ERROR = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _rational(text):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(args, payload, text):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _vertex(args, a):
    v = args.vertex or a.init
    if v is None:
        raise UsageError("no --vertex given and the arena has no init line")
    a.vid(v)
    return v


def _strategy(path):
    with open(path, encoding="utf-8") as fh:
        return MealyStrategy.from_json(json.load(fh))


# -- mean payoff -----------------------------------------------------------------------------

def cmd_asv_mp_threshold(args):
    a = load_arena(args.arena)
    v = _vertex(args, a)
    ok, cert = asv_mp.asv_threshold(a, v, args.c)
    payload = {"vertex": v, "c": format_rational(args.c), "answer": "Yes" if ok else "No",
               "certificate": cert.to_json() if ok else None}
    text = f"ASV({v}) > {format_rational(args.c)}: {'Yes' if ok else 'No'}"
    if ok:
        strat = asv_mp.synthesize_leader_strategy(a, cert)
        text += "\n" + strat.summary()
    _emit(args, payload, text)
    return YES if ok else NO


def cmd_asv_mp_value(args):
    a = load_arena(args.arena)
    v = _vertex(args, a)
    res = asv_mp.asv_value_details(a, v)
    payload = {"vertex": v, "value": format_value(res.value), "attained": res.attained,
               "scc": list(res.scc)}
    _emit(args, payload, f"{format_value(res.value)}\nattained={str(res.attained).lower()}")
    return YES


def cmd_lambda_region(args):
    a = load_arena(args.arena)
    v = _vertex(args, a)
    reg = asv_mp.lambda_region(a, v)
    payload = {"vertex": v, "region": reg.region.to_json()}
    text = f"bad thresholds at {v}: {reg.region!r}"
    code = YES
    if args.c is not None and args.d is not None:
        inside = reg.contains(args.c, args.d)
        payload["member"] = inside
        text += f"\n({format_rational(args.c)}, {format_rational(args.d)}) bad: {inside}"
        code = YES if inside else NO
    _emit(args, payload, text)
    return code


def _verify_ds(args, obj):
    a = load_arena(args.arena)
    s = MealyStrategy.from_json(obj["strategy"])
    lam, c = parse_rational(obj["lambda"]), parse_rational(obj["c"])
    evaluate = ds_stackelberg.evaluate_csv if obj["mode"] == "csv" else ds_stackelberg.evaluate_asv
    value = evaluate(a, lam, s, obj["vertex"])
    claimed = obj["answer"] == "Yes"
    ok = (value > c) == claimed
    payload = {"ok": ok, "value": format_rational(value), "c": format_rational(c)}
    _emit(args, payload, f"re-evaluated {obj['mode']} value {format_rational(value)}: "
                         f"{'accepted' if ok else 'rejected'}")
    return YES if ok else NO


def cmd_verify_witness(args):
    with open(args.certificate, encoding="utf-8") as fh:
        obj = json.load(fh)
    if "certificate" in obj and obj["certificate"] is None:
        raise UsageError("the file records a No verdict; nothing to verify")
    if "strategy" in obj and "mode" in obj:
        return _verify_ds(args, obj)
    cert = asv_mp.WitnessCertificate.from_json(obj.get("certificate", obj))
    a = load_arena(args.arena)
    report = checker.verify_certificate(a, cert, args.c)
    if report.ok:
        _, lasso, _ = asv_mp.witness_lasso(a, cert)
        ok, payoff = asv_mp.check_witness(a, cert.vertex, lasso, cert.c)
        if not ok:
            report.ok = False
            report.reasons.append("induced lasso rejected")
    payload = {"ok": report.ok, "reasons": report.reasons, "cost": report.cost, "size": report.size}
    text = "certificate accepted" if report.ok else "certificate rejected: " + "; ".join(report.reasons)
    _emit(args, payload, text)
    return YES if report.ok else NO


def cmd_br_mp(args):
    a = load_arena(args.arena)
    v = _vertex(args, a)
    s = _strategy(args.strategy)
    s.validate(a)
    br = asv_mp.best_response_mp(a, s, v)
    payload = {"value": format_rational(br.value), "response": br.response.to_json(), "tie": br.tie}
    _emit(args, payload, f"best response value {format_rational(br.value)}\n"
                         f"prefix {' '.join(br.response.prefix)} cycle {' '.join(br.response.cycle)}")
    return YES


# -- discounted sum ------------------------------------------------------------------------

def _discount(args, path):
    if args.lam is not None:
        return args.lam
    meta = reductions.read_sidecar(path)
    if meta and "lam" in meta:
        return meta["lam"]
    raise UsageError("no --lambda given and no sidecar records one")


def cmd_ds_evaluate(args):
    a = load_arena(args.arena)
    v = _vertex(args, a)
    lam = _discount(args, args.arena)
    s = _strategy(args.strategy)
    s.validate(a)
    br, _ = ds_stackelberg.ds_best_response(a, lam, s, v)
    csv = ds_stackelberg.evaluate_csv(a, lam, s, v)
    asv = ds_stackelberg.evaluate_asv(a, lam, s, v)
    payload = {"best_response": format_rational(br), "csv": format_rational(csv),
               "asv": format_rational(asv)}
    _emit(args, payload, f"best response {format_rational(br)}\ncsv {format_rational(csv)}\n"
                         f"asv {format_rational(asv)}")
    return YES


def cmd_ds_gap(args):
    a = load_arena(args.arena)
    meta = reductions.read_sidecar(args.arena) or {}
    v = args.vertex or meta.get("vertex") or a.init
    if v is None:
        raise UsageError("no --vertex given")
    lam = _discount(args, args.arena)
    c = args.c if args.c is not None else meta.get("c")
    eps = args.epsilon if args.epsilon is not None else meta.get("eps")
    if c is None or eps is None:
        raise UsageError("--c and --epsilon are required unless a sidecar records them")
    verdict = ds_stackelberg.gap_decide(a, lam, v, c, eps, args.mode)
    payload = verdict.to_json()
    payload.update({"vertex": v, "lambda": format_rational(lam), "c": format_rational(c),
                    "epsilon": format_rational(eps)})
    _emit(args, payload, f"{args.mode.upper()}({v}) gap query c={format_rational(c)} "
                         f"eps={format_rational(eps)}: {'Yes' if verdict.answer else 'No'}\n"
                         f"best candidate value {format_rational(verdict.value)} "
                         f"(horizon {verdict.horizon.N})")
    return YES if verdict.answer else NO


def cmd_gen_tds(args):
    inst = reductions.TdsInstance(args.a, args.b, args.t, args.lam)
    arena, v = reductions.build_tds_reduction(inst)
    meta = reductions.sidecar("tds", a=inst.a, b=inst.b, t=inst.t, lam=inst.lam, vertex=v)
    reductions.write_generated(args.out, arena, meta)
    _emit(args, meta, f"wrote {args.out} and {args.out}.json")
    return YES


def cmd_gen_partition(args):
    weights = [int(x) for x in args.weights.split(",") if x.strip()]
    inst = reductions.PartitionInstance(tuple(weights))
    arena, lam, eps, c = reductions.build_partition_reduction(inst)
    meta = reductions.sidecar("partition", lam=lam, eps=eps, c=c, vertex="v0")
    meta["weights"] = list(inst.weights)
    meta["solvable"] = inst.solvable()
    reductions.write_generated(args.out, arena, meta)
    _emit(args, meta, f"wrote {args.out} and {args.out}.json "
                      f"(lambda={format_rational(lam)}, eps={format_rational(eps)}, c={format_rational(c)})")
    return YES


def cmd_zerosum(args):
    a = load_arena(args.arena)
    v = _vertex(args, a)
    if args.objective == "ds":
        lam = _discount(args, args.arena)
        res = zerosum.ds_game_value(a, lam, args.dim, args.maximizer, v)
    else:
        res = zerosum.mp_game_value(a, args.dim, args.maximizer, v)
    payload = {"value": format_rational(res.value),
               "optimal_strategy_max": res.optimal_strategy_max.to_json(),
               "optimal_strategy_min": res.optimal_strategy_min.to_json()}
    _emit(args, payload, format_rational(res.value))
    return YES


# -- parser ---------------------------------------------------------------------------------

def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--deterministic", action="store_true",
                        help="fixed enumeration order (the default behaviour; kept for scripts)")
    p = _Parser(prog="stackval", description="Stackelberg values of bi-weighted graph games.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, helptext):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.set_defaults(func=func)
        return sp

    def arena(sp, vertex=True):
        sp.add_argument("--arena", required=True)
        if vertex:
            sp.add_argument("--vertex")

    sp = add("asv-mp-threshold", cmd_asv_mp_threshold, "decide ASV(v) > c for mean payoff")
    arena(sp)
    sp.add_argument("--c", type=_rational, required=True)
    sp = add("asv-mp-value", cmd_asv_mp_value, "exact ASV(v) for mean payoff")
    arena(sp)
    sp = add("lambda-region", cmd_lambda_region, "bad-threshold region of a vertex")
    arena(sp)
    sp.add_argument("--c", type=_rational)
    sp.add_argument("--d", type=_rational)
    sp = add("verify-witness", cmd_verify_witness, "re-check a certificate or gap verdict")
    arena(sp, vertex=False)
    sp.add_argument("--certificate", required=True)
    sp.add_argument("--c", type=_rational)
    sp = add("br-mp", cmd_br_mp, "follower best response to a finite-memory leader")
    arena(sp)
    sp.add_argument("--strategy", required=True)
    sp = add("ds-evaluate", cmd_ds_evaluate, "CSV and ASV of a leader strategy, discounted")
    arena(sp)
    sp.add_argument("--strategy", required=True)
    sp.add_argument("--lambda", dest="lam", type=_rational)
    sp = add("ds-gap", cmd_ds_gap, "gap decision for discounted CSV or ASV")
    arena(sp)
    sp.add_argument("--lambda", dest="lam", type=_rational)
    sp.add_argument("--c", type=_rational)
    sp.add_argument("--epsilon", type=_rational)
    sp.add_argument("--mode", choices=("csv", "asv"), default="csv")
    sp = add("gen-tds", cmd_gen_tds, "write the target-discounted-sum gadget game")
    for name in ("a", "b", "t"):
        sp.add_argument(f"--{name}", type=_rational, required=True)
    sp.add_argument("--lambda", dest="lam", type=_rational, required=True)
    sp.add_argument("--out", required=True)
    sp = add("gen-partition", cmd_gen_partition, "write the partition gadget game")
    sp.add_argument("--weights", required=True, help="comma separated positive integers")
    sp.add_argument("--out", required=True)
    sp = add("zerosum", cmd_zerosum, "zero-sum value of one weight dimension")
    arena(sp)
    sp.add_argument("--objective", choices=("mp", "ds"), default="mp")
    sp.add_argument("--dim", type=int, choices=(0, 1), default=0)
    sp.add_argument("--maximizer", type=int, choices=(0, 1), default=0)
    sp.add_argument("--lambda", dest="lam", type=_rational)
    return p


def run(argv=None):
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    except BudgetExceeded as exc:
        print(json.dumps({"error": "budget", **exc.report()}, sort_keys=True,
                         default=str), file=sys.stdout)
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return UNDECIDED
    except (StackvalError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

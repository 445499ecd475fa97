"""``satgame`` command line: solve, simulate, verify, lemma and table."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .bounds import BoundError, evaluate_bound
from .game import MAX, MINI, GameError, Role, new_game, play
from .graph import from_graph6
from .monitors import MonitorViolation, make_monitors
from .properties import EXTREMAL_MAX_N, PropertyError, extremal_bruteforce, parse_property
from .solver import DEFAULT_NODE_CAP, DEFAULT_TIME_CAP, BudgetExceeded, solve, verify_strategy
from .strategies import PreconditionError, UnknownStrategy, make_strategy
from .strategies.longpath import LongPath, verify_long_path
from .strategies.matching import EndgameRunner, lemma_instances

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _emit(obj, out):
    out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _threads() -> int:
    raw = os.environ.get("SATGAME_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _k_of(prop):
    return getattr(prop, "k", None)


def _start(args, n):
    if not getattr(args, "start", None):
        return None
    g = from_graph6(args.start)
    if g.n != n:
        raise GameError(f"--start has {g.n} vertices, expected {n}")
    return g


# --------------------------------------------------------------------------


def cmd_solve(args, out):
    prop = parse_property(args.property)
    firsts = [MAX, MINI] if args.first == "both" else [Role.parse(args.first)]
    results = []
    for first in firsts:
        res = solve(args.n, prop, first, _start(args, args.n), node_cap=args.node_cap,
                    time_cap=args.time_cap, with_pv=not args.no_pv)
        d = res.to_dict()
        d.update(n=args.n, property=prop.name)
        results.append(d)
    _emit(results[0] if len(results) == 1 else results, out)
    return 0


def cmd_simulate(args, out):
    prop = parse_property(args.property)
    smax = make_strategy(args.max_strategy, seed=args.seed)
    smini = make_strategy(args.mini_strategy, seed=args.seed + 1)
    names = [m for m in (args.monitors or "").split(",") if m]
    mons = make_monitors(names, {MAX: smax, MINI: smini})
    state = new_game(args.n, prop, args.first, _start(args, args.n), memo=True)
    try:
        tr = play(state, smax, smini, monitors=mons)
    except MonitorViolation as exc:
        _emit({"ok": False, "monitor": exc.monitor, "move_index": exc.move_index, "error": str(exc),
               "moves_so_far": [[r.value, u, v] for r, (u, v) in state.moves]}, out)
        return EXIT_FAIL
    d = tr.to_dict()
    d["strategies"] = {"max": smax.name, "mini": smini.name}
    d["monitors"] = {m.name: {"checks": m.checks, "ok": True} for m in mons}
    _emit(d, out)
    return 0


def _bound_check(args, prop, role, guarantee):
    if not args.bound:
        return None
    b = evaluate_bound(args.bound, args.n, _k_of(prop))
    ok = guarantee is not None and (guarantee >= b if role is MAX else guarantee <= b)
    return {"expression": args.bound, "value": str(b), "sense": ">=" if role is MAX else "<=", "pass": ok}


def cmd_verify(args, out):
    strat = make_strategy(args.strategy)
    if isinstance(strat, LongPath):
        return _verify_long_path(args, strat, out)
    if not args.property:
        raise PropertyError("--property is required for this strategy")
    prop = parse_property(args.property)
    role = Role.parse(args.role)
    if args.first == "both":
        raise ValueError("--first both is only meaningful for long-path checks")
    floor = None
    if args.bound and role is MAX and not args.exact:
        b = evaluate_bound(args.bound, args.n, _k_of(prop))
        floor = -(-b.numerator // b.denominator)
    res = verify_strategy(strat, role, args.n, prop, args.first, _start(args, args.n),
                          check=lambda s, st: st.fault(),
                          node_cap=args.node_cap, time_cap=args.time_cap, floor=floor)
    d = res.to_dict()
    d.update(strategy=strat.name, role=role.value, n=args.n, property=prop.name, first=Role.parse(args.first).value)
    d["worst_line"] = res.info.get("worst_line")
    d["floor_cutoff"] = floor
    check = _bound_check(args, prop, role, res.guarantee)
    if check is not None:
        d["bound"] = check
    _emit(d, out)
    if not res.ok or (check is not None and not check["pass"]):
        return EXIT_FAIL
    return 0


def _verify_long_path(args, strat, out):
    n = args.n
    target = strat.builder.target
    prop = parse_property(args.property) if args.property else None
    firsts = [MAX, MINI] if args.first == "both" else [Role.parse(args.first)]
    rows, ok = [], True
    for first in firsts:
        for role in (MAX, MINI):
            res = verify_long_path(n, target, role, first, prop, node_cap=args.node_cap, time_cap=args.time_cap)
            ok &= res.ok
            rows.append({"first": first.value, "role": role.value, "ok": res.ok, "leaves": res.leaves,
                         "violation": res.violation})
    name = prop.name if prop else f"matching:{n // 2 + 1}"
    _emit({"strategy": strat.name, "n": n, "property": name, "postconditions": ["a", "b", "c"],
           "results": rows, "ok": ok}, out)
    return 0 if ok else EXIT_FAIL


def cmd_lemma(args, out):
    wanted = set(args.names) if args.names else None
    rows, ok = [], True
    for li in lemma_instances():
        if wanted and li.name not in wanted:
            continue
        res = verify_strategy(EndgameRunner(li.config), li.role, li.n, li.prop, li.first, start=li.start,
                              node_cap=args.node_cap, time_cap=args.time_cap)
        passed = res.ok and li.holds(res.guarantee)
        ok &= passed
        rows.append({"lemma": li.name, "n": li.n, "property": li.prop.name, "role": li.role.value,
                     "guarantee": res.guarantee, "bound": f"{li.sense} {li.bound}", "pass": passed,
                     "violation": res.violation, "nodes": res.nodes})
    if wanted and len(rows) != len(wanted):
        known = ", ".join(li.name for li in lemma_instances())
        raise UnknownStrategy(f"unknown lemma name; known: {known}")
    _emit({"lemmas": rows, "ok": ok}, out)
    return 0 if ok else EXIT_FAIL


# --------------------------------------------------------------------------


TABLE_FIELDS = ["n", "property", "first", "sat", "ex", "score", "method"]


def _n_range(text):
    for sep in ("..", "-", ":"):
        if sep in text:
            a, b = text.split(sep, 1)
            return list(range(int(a), int(b) + 1))
    return [int(text)]


def table_row(n, prop_text, first, include_extremal, node_cap, time_cap):
    prop = parse_property(prop_text)
    row = {"n": n, "property": prop.name, "first": first, "sat": "", "ex": "", "score": "", "method": ""}
    if include_extremal and n <= EXTREMAL_MAX_N:
        ext = extremal_bruteforce(n, prop)
        row["sat"], row["ex"] = ext.sat, ext.ex
    try:
        res = solve(n, prop, first, node_cap=node_cap, time_cap=time_cap, with_pv=False)
        row["score"], row["method"] = res.score, "exact"
    except BudgetExceeded:
        # one trivial-vs-trivial playout: a sample, never a value
        s = new_game(n, prop, first, memo=True)
        tr = play(s, make_strategy("trivial"), make_strategy("trivial"))
        row["score"], row["method"] = tr.score, "simulated"
    return row


def _row_job(job):
    return table_row(*job)


def cmd_table(args, out):
    firsts = ["max", "mini"] if args.first == "both" else [args.first]
    jobs = [(n, args.property, f, args.include_extremal, args.node_cap, args.time_cap)
            for n in _n_range(args.n_range) for f in firsts]
    workers = min(_threads(), len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row_job, jobs))
    else:
        rows = [_row_job(j) for j in jobs]
    rows.sort(key=lambda r: (r["n"], r["first"]))
    if args.format == "json":
        _emit(rows, out)
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=TABLE_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        out.write(buf.getvalue())
    return 0


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="satgame", description="Saturation games on graphs.")
    sub = p.add_subparsers(dest="cmd", required=True)

    def budget(sp):
        sp.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP)
        sp.add_argument("--time-cap", type=float, default=DEFAULT_TIME_CAP)

    sp = sub.add_parser("solve", help="exact game value by minimax")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--property", required=True)
    sp.add_argument("--first", choices=["max", "mini", "both"], default="max")
    sp.add_argument("--start", help="graph6 start graph")
    sp.add_argument("--no-pv", action="store_true", help="skip the principal variation")
    budget(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("simulate", help="play two strategies against each other")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--property", required=True)
    sp.add_argument("--first", choices=["max", "mini"], default="max")
    sp.add_argument("--max-strategy", default="trivial")
    sp.add_argument("--mini-strategy", default="trivial")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--monitors", default="", help="comma list: goodness,tmb-oracle,top-bound,legality,endstate-structure")
    sp.add_argument("--start", help="graph6 start graph")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("verify", help="check a strategy against every adversary line")
    sp.add_argument("--strategy", required=True)
    sp.add_argument("--role", choices=["max", "mini"], default="max")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--property")
    sp.add_argument("--first", choices=["max", "mini", "both"], default="max")
    sp.add_argument("--start", help="graph6 start graph (end-game configurations)")
    sp.add_argument("--bound", help='bound expression over n and k, e.g. "binom(n-4,2)"')
    sp.add_argument("--exact", action="store_true",
                    help="explore every line to the end instead of cutting passive lines at the bound")
    budget(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("lemma", help="verify the built-in end-game lemma instances")
    sp.add_argument("names", nargs="*")
    budget(sp)
    sp.set_defaults(func=cmd_lemma)

    sp = sub.add_parser("table", help="score table (CSV or JSON)")
    sp.add_argument("--property", required=True)
    sp.add_argument("--n-range", required=True, help="e.g. 4..9")
    sp.add_argument("--first", choices=["max", "mini", "both"], default="both")
    sp.add_argument("--include-extremal", action="store_true")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    budget(sp)
    sp.set_defaults(func=cmd_table)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (PreconditionError, UnknownStrategy, PropertyError, BoundError, GameError, ValueError) as exc:
        _emit({"ok": False, "error": f"{type(exc).__name__}: {exc}"}, out)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        _emit({"ok": False, "error": f"budget exceeded: {exc}", "nodes": exc.nodes}, out)
        return EXIT_BUDGET


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    run()

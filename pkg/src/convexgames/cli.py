"""Command-line interface.

Exit codes: 0 success, 2 input error, 3 convexity violation, 4 size limit,
5 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
import warnings
from fractions import Fraction

from . import __version__
from . import coalitions as co
from . import gamefile
from .errors import ConvexityError, GameError, InputError, SizeError, VerificationError
from .games import (EXHAUSTIVE_BOUND, Game, counterexample_game, gen_airport, gen_bankruptcy,
                    gen_random_convex, is_crossing_supermodular, is_supermodular)
from .least_core import least_core
from .nucleolus import (ReducedGameView, kuipers_theorem12_check, nucleolus_divide_conquer,
                        nucleolus_per_player)
from .oracle import ORACLE_BOUND, brute_essential, brute_least_core, brute_nucleolus
from .rationals import render as rr


def _rvec(xs) -> list[str]:
    return [rr(a) for a in xs]


def _key(S: int) -> str:
    return co.key(S)


class Output:
    """Collects result lines (text mode) or the payload (JSON mode)."""

    def __init__(self, args, command: str, game: Game | None = None):
        self.args = args
        self.command = command
        self.game = game
        self.start = time.perf_counter()
        self.result: dict = {}
        self.trace = None
        self.evaluations = None
        self.lines: list[str] = []

    def line(self, text: str) -> None:
        self.lines.append(text)

    def emit(self) -> None:
        if self.args.json:
            timing = {"sfm_evaluations": self.evaluations}
            if self.args.timing:
                timing["seconds"] = round(time.perf_counter() - self.start, 6)
            env = {
                "version": __version__,
                "command": {"name": self.command, "args": _echo(self.args)},
                "input_digest": gamefile.digest(self.game) if self.game is not None else None,
                "result": self.result,
                "trace": self.trace,
                "timing": timing,
            }
            sys.stdout.write(json.dumps(env, indent=2, sort_keys=True) + "\n")
        else:
            for text in self.lines:
                print(text)
            if self.args.timing:
                print(f"seconds: {time.perf_counter() - self.start:.6f}")


def _echo(args) -> dict:
    skip = {"func", "json", "timing"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _require_convex(game: Game) -> None:
    if game.n > EXHAUSTIVE_BOUND:
        print(f"warning: n={game.n} above exhaustive bound; convexity trusted", file=sys.stderr)
        return
    res = is_supermodular(game)
    if not res:
        i, j, S = res.witness
        raise ConvexityError(f"game is not convex: witness i={i + 1}, j={j + 1}, S={co.render(S)}")


# -- commands -----------------------------------------------------------------


def cmd_check(args) -> int:
    game = gamefile.load_game(args.file)
    out = Output(args, "check", game)
    sup = is_supermodular(game)
    cross = is_crossing_supermodular(game)
    out.result = {
        "convex": bool(sup),
        "supermodular": bool(sup),
        "crossing_supermodular": bool(cross),
        "supermodular_witness": None,
        "crossing_witness": None,
    }
    if sup:
        out.line("supermodular: yes")
    else:
        i, j, S = sup.witness
        out.result["supermodular_witness"] = {"i": i + 1, "j": j + 1, "S": _key(S)}
        out.line(f"supermodular: no (witness i={i + 1}, j={j + 1}, S={co.render(S)})")
    if cross:
        out.line("crossing-supermodular: yes")
    else:
        S, T = cross.witness
        out.result["crossing_witness"] = {"S": _key(S), "T": _key(T)}
        out.line(f"crossing-supermodular: no (witness S={co.render(S)}, T={co.render(T)})")
    out.line(f"convex: {'yes' if sup else 'no'}")
    out.emit()
    return 0 if sup else 3


def cmd_least_core(args) -> int:
    game = gamefile.load_game(args.file)
    _require_convex(game)
    s = (args.s or 1) - 1
    if not 0 <= s < game.n:
        raise InputError(f"--s must be a player in 1..{game.n}")
    res = least_core(game, s=s)
    out = Output(args, "least-core", game)
    out.evaluations = res.evaluations
    out.result = {
        "epsilon": rr(res.epsilon_star),
        "essential": [_key(S) for S in res.essential],
        "dual": {_key(S): rr(m) for S, m in sorted(res.dual.items())},
        "iterations": res.iterations,
        "reference_player": s + 1,
        "bound_M": rr(res.bound),
    }
    out.line(f"epsilon: {rr(res.epsilon_star)}")
    out.line("essential: " + " ".join(co.render(S) for S in res.essential))
    out.line("dual: " + " ".join(f"{co.render(S)}={rr(m)}" for S, m in sorted(res.dual.items())))
    out.line(f"iterations: {res.iterations} (bound {2 * game.n - 2})")
    if args.trace:
        out.trace = [{
            "epsilon": rr(r.epsilon), "witness": _key(r.witness), "blocks": r.blocks,
            "min_value": rr(r.min_value), "terminating": r.terminating,
            "evaluations": r.evaluations,
        } for r in res.trace]
        for k, r in enumerate(res.trace, 1):
            out.line(f"  iter {k}: epsilon={rr(r.epsilon)} witness={co.render(r.witness)} "
                     f"|P|+|Q|={r.blocks} min={rr(r.min_value)}"
                     + (" (terminating)" if r.terminating else ""))
    out.emit()
    return 0


def cmd_nucleolus(args) -> int:
    game = gamefile.load_game(args.file)
    _require_convex(game)
    solve = nucleolus_per_player if args.method == "per-player" else nucleolus_divide_conquer
    res = solve(game)
    out = Output(args, "nucleolus", game)
    out.evaluations = res.evaluations
    out.result = {"nucleolus": _rvec(res.allocation), "method": args.method}
    out.line("nucleolus: " + json.dumps(_rvec(res.allocation)))
    if args.trace:
        out.trace = [{
            "block": _key(r.block), "essential": _key(r.essential), "epsilon": rr(r.epsilon),
            "mass": rr(r.mass), "iterations": r.iterations, "evaluations": r.evaluations,
        } for r in res.trace]
        for r in res.trace:
            out.line(f"  split {co.render(r.block)} on {co.render(r.essential)}: "
                     f"epsilon={rr(r.epsilon)} mass={rr(r.mass)}")
    if args.verify:
        if game.n > args.max_n:
            raise SizeError(f"--verify needs n <= {args.max_n}")
        ref = brute_nucleolus(game, args.max_n)
        if list(ref) != list(res.allocation):
            raise VerificationError(f"solver {_rvec(res.allocation)} != oracle {_rvec(ref)}")
        out.result["verified"] = True
        out.line("verified: oracle agrees")
    out.emit()
    return 0


def cmd_oracle(args) -> int:
    game = gamefile.load_game(args.file)
    out = Output(args, f"oracle {args.sub}", game)
    if args.sub == "nucleolus":
        nu = brute_nucleolus(game, args.max_n)
        out.result = {"nucleolus": _rvec(nu)}
        out.line("nucleolus: " + json.dumps(_rvec(nu)))
    elif args.sub == "least-core":
        eps, x = brute_least_core(game, args.max_n)
        out.result = {"epsilon": rr(eps), "point": _rvec(x)}
        out.line(f"epsilon: {rr(eps)}")
        out.line("point: " + json.dumps(_rvec(x)))
    else:
        if not args.coalition:
            raise InputError("oracle essential needs --coalition")
        S = co.parse_key(args.coalition, game.n)
        ok = brute_essential(game, S, args.max_n)
        out.result = {"coalition": _key(S), "essential": ok}
        out.line(f"essential {co.render(S)}: {'true' if ok else 'false'}")
    out.emit()
    return 0


def _csv_rationals(text: str) -> list[Fraction]:
    from .rationals import parse
    return [parse(p) for p in text.split(",")] if text else []


def cmd_gen(args) -> int:
    if args.kind == "airport":
        if not args.costs:
            raise InputError("gen airport needs --costs")
        costs = _csv_rationals(args.costs)
        game = gen_airport(costs)
        meta = {"kind": "airport", "costs": _rvec(costs)}
    elif args.kind == "bankruptcy":
        if args.estate is None or not args.claims:
            raise InputError("gen bankruptcy needs --estate and --claims")
        from .rationals import parse
        estate = parse(args.estate)
        claims = _csv_rationals(args.claims)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            game = gen_bankruptcy(estate, claims)
        meta = {"kind": "bankruptcy", "estate": rr(estate), "claims": _rvec(claims)}
    else:
        if args.n is None or args.n < 1:
            raise InputError("gen random-convex needs --n >= 1")
        seed = args.seed if args.seed is not None else 0
        game = gen_random_convex(args.n, seed, (args.min_weight, args.max_weight), args.curvature)
        meta = {"kind": "random-convex", "n": args.n, "seed": seed,
                "weight_range": [args.min_weight, args.max_weight], "curvature": args.curvature}
    text = gamefile.dumps(gamefile.emit_game(game, meta=meta))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def counterexample_battery() -> list[tuple[str, bool, str]]:
    """Every fact claimed about the 4-player counterexample game, re-derived."""
    g = counterexample_game()
    half = Fraction(1, 2)
    nu_expected = [5 * half, 7 * half, Fraction(2), Fraction(2)]
    checks = []

    def add(name, ok, detail):
        checks.append((name, bool(ok), detail))

    monotone = all(g.value(S) <= g.value(S | (1 << i)) for S in range(16) for i in range(4))
    add("monotone", monotone, "v(S) <= v(S+i) for all S, i")
    add("convex", is_supermodular(g), "exhaustive supermodularity")
    lc = least_core(g)
    add("least core value", lc.epsilon_star == 2, rr(lc.epsilon_star))
    eps, _ = brute_least_core(g)
    add("least core value (LP)", eps == 2, rr(eps))
    e3, e4 = brute_essential(g, 0b0100), brute_essential(g, 0b1000)
    add("essential {3}", e3, str(e3).lower())
    add("essential {4}", e4, str(e4).lower())
    n1 = list(nucleolus_divide_conquer(g).allocation)
    n2 = list(nucleolus_per_player(g).allocation)
    n3 = brute_nucleolus(g)
    add("nucleolus", n1 == n2 == n3 == nu_expected, json.dumps(_rvec(n1)))
    view = ReducedGameView(g, 0b0011, [(0b0100, Fraction(2)), (0b1000, Fraction(2))])
    red = [view.value(0b01), view.value(0b10), view.value(0b11)]
    add("reduced values {1},{2},{1,2}", red == [0, 1, 6], json.dumps(_rvec(red)))
    lhs, rhs = kuipers_theorem12_check(g, 0b0011, nu_expected, 0b0010)
    add("shortcut refuted", lhs == 1 and rhs == 0 and lhs != rhs, f"lhs={rr(lhs)} rhs={rr(rhs)}")
    return checks


def cmd_counterexample(args) -> int:
    g = counterexample_game()
    out = Output(args, "counterexample", g)
    checks = counterexample_battery()
    nu = list(nucleolus_divide_conquer(g).allocation)
    lc = least_core(g)
    half = Fraction(1, 2)
    lhs, rhs = kuipers_theorem12_check(g, 0b0011, [5 * half, 7 * half, 2, 2], 0b0010)
    essential = [S for S in (0b0100, 0b1000) if brute_essential(g, S)]
    out.result = {
        "lhs": rr(lhs), "rhs": rr(rhs),
        "nucleolus": _rvec(nu),
        "epsilon": rr(lc.epsilon_star),
        "essential": [_key(S) for S in essential],
        "checks": [{"name": n, "pass": ok, "detail": d} for n, ok, d in checks],
    }
    out.line(f"lhs: {rr(lhs)}")
    out.line(f"rhs: {rr(rhs)}")
    out.line("nucleolus: " + json.dumps(_rvec(nu)))
    out.line(f"epsilon: {rr(lc.epsilon_star)}")
    out.line("essential: " + ", ".join(co.render(S) for S in essential))
    for name, ok, detail in checks:
        out.line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    out.emit()
    return 0 if all(ok for _, ok, _ in checks) else 5


# -- parser -------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                   help="emit a JSON result envelope")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p.add_argument("--max-n", type=int, default=argparse.SUPPRESS,
                   help=f"oracle size limit (default {ORACLE_BOUND})")
    p.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                   help="report wall-clock seconds (makes output non-deterministic)")
    return p


def build_parser() -> argparse.ArgumentParser:
    # fresh copies: set_defaults below would otherwise leak into the shared actions
    parser = argparse.ArgumentParser(
        prog="convexgames", parents=[_common()],
        description="Least core and nucleolus of convex cooperative games, exactly.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.set_defaults(json=False, seed=None, max_n=ORACLE_BOUND, timing=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[_common()], help="convexity checks")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("least-core", parents=[_common()], help="least core value and essential coalitions")
    p.add_argument("file")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--s", type=int, default=None, help="reference player (1-based, default 1)")
    p.set_defaults(func=cmd_least_core)

    p = sub.add_parser("nucleolus", parents=[_common()], help="nucleolus via reduced games")
    p.add_argument("file")
    p.add_argument("--method", choices=["per-player", "divide-conquer"], default="divide-conquer")
    p.add_argument("--verify", action="store_true", help="cross-check against the LP oracle")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_nucleolus)

    p = sub.add_parser("oracle", parents=[_common()], help="brute-force LP counterparts")
    p.add_argument("sub", choices=["nucleolus", "least-core", "essential"])
    p.add_argument("file")
    p.add_argument("--coalition", help="coalition key for 'essential', e.g. 1,3")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", parents=[_common()], help="write a generated convex game file")
    p.add_argument("kind", choices=["airport", "bankruptcy", "random-convex"])
    p.add_argument("--costs", help="airport landing costs, comma separated")
    p.add_argument("--estate")
    p.add_argument("--claims", help="bankruptcy claims, comma separated")
    p.add_argument("--n", type=int)
    p.add_argument("--min-weight", type=int, default=0)
    p.add_argument("--max-weight", type=int, default=10)
    p.add_argument("--curvature", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("counterexample", parents=[_common()],
                       help="reproduce the 4-player counterexample and its checks")
    p.set_defaults(func=cmd_counterexample)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except GameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())

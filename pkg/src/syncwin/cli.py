"""``syncwin`` command line.

Exit codes: 0 success, 2 malformed input or usage, 3 not win-reducible,
4 a simulation did not hit, 5 exact search too large.
"""
from __future__ import annotations

import argparse
import math
import sys
from decimal import Decimal

from syncwin import __version__
from syncwin.errors import SyncwinError
from syncwin.game import format_game, format_word, load_game, validate
from syncwin.reachability import analyze, is_win_reducible
from syncwin.rng_game import Lcg, load_rng_game, monte_carlo, product
from syncwin.streams import Mapped, load_mapping, parse_stream_spec, simulate_on_stream
from syncwin.synchronizer import (
    EXACT_MAX_STATES,
    concatenation_bound,
    shortest_sync_word_exact,
    synthesize_greedy,
)

OK, MALFORMED, NOT_REDUCIBLE, NO_HIT, TOO_LARGE = 0, 2, 3, 4, 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _emit(key, value):
    print(f"{key}={value}")


def _bool(x):
    return "true" if x else "false"


def _real(x):
    return "nan" if math.isnan(x) else f"{x:.6g}"


def _log(x: Decimal):
    return f"{x:.4f}"


def cmd_check(args):
    game = load_game(args.file)
    report = validate(game)
    table = analyze(game)
    reducible = is_win_reducible(table)
    _emit("states", game.n)
    _emit("letters", game.b)
    _emit("win", game.win)
    _emit("win_is_sink", _bool(report.win_is_sink))
    _emit("win_reducible", _bool(reducible))
    _emit("dist", " ".join(table.dist_strings()))
    _emit("sinks", " ".join(map(str, report.sinks)))
    if not report.win_is_sink:
        print("error=win_not_sink", file=sys.stderr)
        return MALFORMED
    return OK if reducible else NOT_REDUCIBLE


def cmd_synth(args):
    game = load_game(args.file)
    if not validate(game).win_is_sink:
        _emit("error", "win_not_sink")
        return MALFORMED
    table = analyze(game)
    if not is_win_reducible(table):
        _emit("error", "not_win_reducible")
        return NOT_REDUCIBLE
    result = synthesize_greedy(game, table, order=args.order)
    _emit("word", format_word(result.word, game.b))
    _emit("length", len(result.word))
    _emit("rounds", result.rounds)
    _emit("bound_n2", game.n * game.n)
    if args.exact:
        if game.n > EXACT_MAX_STATES:
            _emit("exact", "too-large")
            return TOO_LARGE
        exact = shortest_sync_word_exact(game)
        _emit("exact_word", format_word(exact, game.b))
        _emit("exact_length", len(exact))
    return OK


def _mapping(args):
    return load_mapping(args.map) if args.map else None


def cmd_simulate(args):
    game = load_game(args.file)
    proto = parse_stream_spec(args.stream)
    mapping = _mapping(args)
    if args.start == "all":
        starts = range(game.n)
    else:
        starts = [int(args.start)]
        if not 0 <= starts[0] < game.n:
            raise UsageError(f"start state {starts[0]} outside [0, {game.n})")
    all_hit = True
    for v in starts:
        rep = simulate_on_stream(game, v, proto.fresh(), args.horizon, mapping=mapping)
        index = rep.hitting_index if rep.hit else "-"
        print(f"start={v} hit={_bool(rep.hit)} index={index}")
        all_hit &= rep.hit
    return OK if all_hit else NO_HIT


def cmd_product(args):
    rg = load_rng_game(args.rngfile)
    lcg = Lcg.parse(args.lcg, out=args.out)
    game = product(rg, lcg)
    with open(args.output, "w", encoding="ascii") as fh:
        fh.write(
            format_game(
                game,
                comment=f"product of {args.rngfile} with LCG m={lcg.m} a={lcg.a} c={lcg.c} s0={lcg.s0} out={lcg.out}",
            )
        )
    reducible = is_win_reducible(analyze(game))
    _emit("states", game.n)
    _emit("win", game.win)
    _emit("full_period", _bool(lcg.is_full_period()))
    _emit("win_reducible", _bool(reducible))
    _emit("output", args.output)
    return OK if reducible else NOT_REDUCIBLE


def cmd_montecarlo(args):
    rg = load_rng_game(args.rngfile)
    proto = parse_stream_spec(args.stream)
    mapping = _mapping(args)
    if mapping is not None:
        proto = Mapped(proto, mapping)
    if not 0 <= args.start < rg.n:
        raise UsageError(f"start state {args.start} outside [0, {rg.n})")
    rep = monte_carlo(rg, args.start, proto, args.horizon, args.trials, args.seed)
    _emit("trials", rep.trials)
    _emit("horizon", rep.horizon)
    _emit("wins", rep.wins)
    _emit("win_fraction", _real(rep.win_fraction))
    _emit("mean_hitting_index", _real(rep.mean_hitting_index))
    _emit("base_seed", rep.base_seed)
    return OK


def cmd_bound(args):
    if args.n < 1 or args.b < 1:
        raise UsageError("--n and --b must be >= 1")
    rep = concatenation_bound(args.n, args.b)
    _emit("n", rep.n)
    _emit("b", rep.b)
    _emit("log2_bound", _log(rep.log2_bound))
    _emit("log10_bound", _log(rep.log10_bound))
    _emit("decimal_digits", rep.decimal_digits)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="syncwin", description="Winning words for finite-state games.")
    p.add_argument("--version", action="version", version=f"syncwin {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check", help="win-reducibility, distances and sinks")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("synth", help="synthesize a winning word")
    s.add_argument("file")
    s.add_argument("--order", choices=["paper", "greedy"], default="greedy")
    s.add_argument("--exact", action="store_true", help="also run the exact subset search")
    s.set_defaults(func=cmd_synth)

    stream_help = "champernowne:<base> | file:<path>:<base> | periodic:<pattern>[:<base>]"
    s = sub.add_parser("simulate", help="drive the game with a letter stream")
    s.add_argument("file")
    s.add_argument("--stream", required=True, help=stream_help)
    s.add_argument("--map", help="digit map file: one letter or 'skip' per digit")
    s.add_argument("--start", default="all", help="start state or 'all'")
    s.add_argument("--horizon", type=int, required=True)
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("product", help="determinize an RNG game with an LCG")
    s.add_argument("rngfile")
    s.add_argument("--lcg", required=True, metavar="m,a,c,s0")
    s.add_argument("--out", choices=["low", "raw"], default="low", help="LCG output map")
    s.add_argument("-o", "--output", required=True, help="path of the game file to write")
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("montecarlo", help="estimate the win probability under a true RNG")
    s.add_argument("rngfile")
    s.add_argument("--stream", required=True, help=stream_help)
    s.add_argument("--map")
    s.add_argument("--start", type=int, required=True)
    s.add_argument("--horizon", type=int, required=True)
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_montecarlo)

    s = sub.add_parser("bound", help="magnitude of n^2 * b^(n^2)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.set_defaults(func=cmd_bound)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error={exc}", file=sys.stderr)
        return MALFORMED
    except (SyncwinError, ValueError, OSError) as exc:
        print(f"error={exc}", file=sys.stderr)
        return MALFORMED
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``artinsplit <command> [options]``.

Exit codes: 0 all checks pass, 1 some check failed, 2 usage or parameter error.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import __version__
from .fiber import conjugate_intersections, fiber_product_dot
from .graph import export_graph
from .presentation import INF, abelianization, artin_standard, artin_star
from .rfcheck import (
    RELATOR_TOL,
    check_quotient_conditions,
    ping_pong_check,
    quotient_params_for,
    triangle_rep,
)
from .splitting import (
    BOTH_EVEN,
    FAMILY_2MN,
    FAMILY_DIHEDRAL,
    FAMILY_INF,
    N_ODD,
    ArtinParams,
    SplittingData,
    build_edge_space,
    split,
    split_dihedral,
    split_infty,
    verify_splitting,
)
from .subgroup import from_words
from .words import Word, parse_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _grid(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--grid expects A:B, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty grid {text!r}")
    return lo, hi


def _label(text: str) -> int | float:
    if text.lower() in ("inf", "infinity", "oo"):
        return INF
    return int(text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="artinsplit", description="Splittings of triangle Artin groups as graphs of free groups.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, labels=True):
        if labels:
            p.add_argument("--m", type=int, help="label M")
            p.add_argument("--n", type=int, help="label N")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--override-range", action="store_true", help="allow labels below the theorem bounds")

    p = sub.add_parser("split", help="print splitting data")
    common(p)
    p.add_argument("--family", choices=(FAMILY_2MN, FAMILY_INF, FAMILY_DIHEDRAL), default=FAMILY_2MN)
    p.add_argument("--format", choices=("text", "dot"), default="text")

    p = sub.add_parser("verify", help="check a splitting or a grid of splittings")
    common(p)
    p.add_argument("--grid", type=_grid, help="verify every (M, N) with A <= M, N <= B")
    p.add_argument("--family", choices=(FAMILY_2MN, FAMILY_INF, FAMILY_DIHEDRAL), default=FAMILY_2MN)
    p.add_argument("--corrupt-beta", action="store_true", help="replace β(x^m) by x^(m+1) (negative control)")

    p = sub.add_parser("intersect", help="intersections of conjugates of a subgroup of F(x, y)")
    common(p, labels=False)
    p.add_argument("--m", type=int, help="half-label m (M = 2m or 2m+1)")
    p.add_argument("--n", type=int, help="half-label n (N = 2n or 2n+1)")
    p.add_argument("--preset", choices=("artin-C", "artin-B"))
    p.add_argument("--odd", action="store_true", help="artin-C with M = 2m+1, N = 2n")
    p.add_argument("--both-odd", action="store_true", help="artin-C with M = 2m+1, N = 2n+1")
    p.add_argument("--gens", help="comma-separated generators, e.g. 'x^2,y^2,x^-1.y'")
    p.add_argument("--format", choices=("text", "dot"), default="text")

    p = sub.add_parser("abelianize", help="abelian invariants of the presentations of Art_{2MN}")
    common(p)
    p.add_argument("--preset", choices=("all", "artin-standard", "star-presentation", "splitting"), default="all")
    p.add_argument("--third", type=_label, default=2, help="third label P of Art_{MNP} for the standard presentation")

    p = sub.add_parser("rf", help="quotient conditions and ping-pong evidence")
    common(p)
    p.add_argument("--p", type=int, help="order of x^-1 y in the quotient (default 7 both-even, 6 otherwise)")
    p.add_argument("--tol", type=float, default=RELATOR_TOL)
    p.add_argument("--ping-pong", type=int, default=0, metavar="K", help="also test alternating words with <= K syllables")
    p.add_argument("--format", choices=("text", "csv"), default="text")

    p = sub.add_parser("export", help="export graphs and presentations")
    common(p)
    p.add_argument("--what", choices=("xc", "xc-folded", "xb", "b-graph", "presentation", "star-presentation"),
                   default="xc-folded")
    p.add_argument("--format", choices=("text", "dot"), default="text")
    return parser


def _params(args, family=FAMILY_2MN) -> ArtinParams:
    if args.m is None or (args.n is None and family != FAMILY_DIHEDRAL):
        raise UsageError("--m and --n are required")
    return ArtinParams(args.m, args.n or 0, family, args.override_range)


def _splitting(params: ArtinParams) -> SplittingData:
    if params.family == FAMILY_DIHEDRAL:
        return split_dihedral(params.M)
    if params.family == FAMILY_INF:
        return split_infty(params.M, params.N, params.override)
    return split(params)


def corrupt_beta(s: SplittingData) -> SplittingData:
    """Mutate β(x^m) = x^m into x^(m+1)."""
    if s.variant != "hnn":
        raise UsageError("--corrupt-beta applies to HNN splittings (both labels even)")
    images = list(s.beta_images)
    images[0] = Word.gen(1) ** (s.params.m + 1)
    return SplittingData("hnn", s.params, s.a_names, s.edge_subgroup_words, tuple(images), s.stable_letter)


def cmd_split(args) -> tuple[list[str], int]:
    s = _splitting(_params(args, args.family))
    if args.format == "dot":
        if s.variant == "amalgam":
            return [export_graph(s.edge_space.folded, "dot").decode().rstrip("\n")], EXIT_OK
        return [export_graph(from_words(s.edge_subgroup_words, s.rank_a).core, "dot").decode().rstrip("\n")], EXIT_OK
    return s.describe(), EXIT_OK


def cmd_verify(args) -> tuple[list[str], int]:
    if args.grid:
        lo, hi = args.grid
        pairs = [(M, N) for M in range(lo, hi + 1) for N in range(lo, hi + 1)]
    else:
        params = _params(args, args.family)
        pairs = [(params.M, params.N)]
    lines, passed, total, ok = [], 0, 0, True
    for M, N in pairs:
        params = ArtinParams(M, N, args.family, args.override_range)
        s = _splitting(params)
        if args.corrupt_beta:
            s = corrupt_beta(s)
        report = verify_splitting(s, params)
        lines.append(f"# Art_{{{params.label}}} variant={s.variant}")
        lines += report.lines()
        p, t = report.counts()
        passed, total, ok = passed + p, total + t, ok and report.passed
    lines.append(f"RESULT {passed}/{total}")
    return lines, EXIT_OK if ok else EXIT_FAIL


def cmd_intersect(args) -> tuple[list[str], int]:
    if args.gens:
        h = from_words([parse_word(t, ("x", "y")) for t in args.gens.split(",")], 2)
        title = f"# H = <{args.gens}>"
    elif args.preset:
        if args.m is None or args.n is None:
            raise UsageError("--m and --n are required with --preset")
        if args.preset == "artin-B":
            s = split(ArtinParams(2 * args.m, 2 * args.n, override=args.override_range))
            h = from_words(s.edge_subgroup_words, 2)
            title = f"# B in Art_{{{s.params.label}}}"
        else:
            if not (args.odd or args.both_odd):
                raise UsageError("artin-C needs --odd or --both-odd")
            N = 2 * args.n + (1 if args.both_odd else 0)
            params = ArtinParams(2 * args.m + 1, N, override=args.override_range)
            from .subgroup import from_graph

            h = from_graph(build_edge_space(params).folded)
            title = f"# C in Art_{{{params.label}}}"
    else:
        raise UsageError("give --preset or --gens")
    if args.format == "dot":
        return [fiber_product_dot(h, h).rstrip("\n")], EXIT_OK
    report = conjugate_intersections(h)
    lines = [title] + report.to_text().rstrip("\n").split("\n")
    lines.append(f"VALIDATED {'yes' if report.validated else 'no'}")
    return lines, EXIT_OK if report.validated else EXIT_FAIL


def cmd_abelianize(args) -> tuple[list[str], int]:
    params = _params(args)
    pres = {}
    if args.preset in ("all", "artin-standard"):
        pres["artin-standard"] = artin_standard(args.third, params.M, params.N)
    if args.preset in ("all", "star-presentation"):
        pres["star-presentation"] = artin_star(params.M, params.N, params.override)
    if args.preset in ("all", "splitting"):
        pres["splitting"] = split(params).presentation()
    lines, seen = [], set()
    for name, p in pres.items():
        inv = abelianization(p)
        seen.add(inv)
        torsion = ",".join(map(str, inv.torsion)) or "-"
        lines.append(f"ABEL {name} free_rank={inv.free_rank} torsion={torsion} group={inv}")
    agree = len(seen) == 1
    lines.append(f"AGREE {'yes' if agree else 'no'}")
    return lines, EXIT_OK if agree else EXIT_FAIL


def cmd_rf(args) -> tuple[list[str], int]:
    params = _params(args)
    p = args.p if args.p is not None else (7 if params.parity == BOTH_EVEN else 6)
    report = check_quotient_conditions(params, p, args.tol)
    ok = report.passed
    lines = report.lines()
    if args.ping_pong:
        if params.parity == BOTH_EVEN:
            raise UsageError("--ping-pong needs an odd label")
        # Art_{2MN} and Art_{2NM} coincide; put the odd label on x
        pp_params = ArtinParams(params.N, params.M, override=params.override) if params.parity == N_ODD else params
        rep = triangle_rep(quotient_params_for(pp_params, p), args.tol)
        pp = ping_pong_check(rep, pp_params.m, p, args.ping_pong, keep_rows=args.format == "csv")
        if args.format == "csv":
            return pp.to_csv().rstrip("\n").split("\n"), EXIT_OK if pp.passed else EXIT_FAIL
        lines.append(f"PINGPONG syllables<={pp.max_syllables} words={pp.words_tested} "
                     f"failures={len(pp.failures)} min_distance={pp.min_distance_to_identity:.6e}")
        ok = ok and pp.passed
    return lines, EXIT_OK if ok else EXIT_FAIL


def cmd_export(args) -> tuple[list[str], int]:
    params = _params(args)
    if args.what in ("presentation", "star-presentation"):
        pres = split(params).presentation() if args.what == "presentation" else artin_star(params.M, params.N, params.override)
        return pres.to_text().rstrip("\n").split("\n"), EXIT_OK
    if args.what == "b-graph":
        s = split(params)
        if s.variant != "hnn":
            raise UsageError("b-graph exists for both-even labels only")
        g = from_words(s.edge_subgroup_words, 2, "B").core
    else:
        es = build_edge_space(params)
        g = {"xc": es.x_c, "xc-folded": es.folded, "xb": es.x_b}[args.what]
    names = ("u", "v", "w") if args.what in ("xc", "xb") else ("x", "y")
    return export_graph(g, args.format, names).decode().rstrip("\n").split("\n"), EXIT_OK


COMMANDS = {
    "split": cmd_split,
    "verify": cmd_verify,
    "intersect": cmd_intersect,
    "abelianize": cmd_abelianize,
    "rf": cmd_rf,
    "export": cmd_export,
}


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        lines, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"artinsplit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"artinsplit: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())

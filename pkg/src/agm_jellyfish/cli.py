"""Command-line interface: ``agm-jellyfish <subcommand> ...``."""

from __future__ import annotations

import argparse
import sys

import mpmath
from sympy import primerange

from . import class_numbers, export, hypergeometric, legendre, real_agm
from .finite_field import FieldError, GF, field_from_q, make_field
from .swarm import NotAdmissible, build_swarm, check_structure, orbit, pair


def _field(args) -> GF:
    if args.q is not None:
        return field_from_q(args.q)
    if args.p is not None:
        return make_field(args.p, args.m or 1)
    raise FieldError("give --q or --p/--m")


def _header(F: GF) -> str:
    return f"# field q={F.q} p={F.p} m={F.m} modulus={list(F.modulus)}"


def cmd_swarm(args) -> int:
    F = _field(args)
    swarm = build_swarm(F)
    print(_header(F))
    print(f"nodes={swarm.node_count} d={swarm.d}")
    for size, count in swarm.size_histogram.items():
        print(f"N_{size}={count}")
    if F.p >= 7 and swarm.d:
        legendre.annotate_swarm(swarm)
        for jf in swarm.jellyfish:
            js = legendre.j_invariants(F, jf.lambdas)
            group = f" group={jf.group}" if jf.group is not None else ""
            print(
                f"J{jf.id} size={jf.size} cycle={jf.cycle_length} trace={jf.trace}{group}"
                f" lambdas={jf.lambdas} j={js}"
            )
    problems = check_structure(swarm)
    for p in problems:
        print("FAIL", p)
    return 1 if problems else 0


def cmd_table(args) -> int:
    for q in primerange(3, args.limit + 1):
        if q % 4 == 3:
            print(q, build_swarm(make_field(q)).d)
    return 0


def cmd_orbit(args) -> int:
    F = _field(args)
    pre, cyc = orbit(pair(F, args.a, args.b))
    print(_header(F))
    print("preperiod:", " ".join(repr(p) for p in pre))
    print(f"cycle ({len(cyc)}):", " ".join(repr(p) for p in cyc))
    return 0


def cmd_export(args) -> int:
    F = _field(args)
    swarm = build_swarm(F)
    if args.format == "json" and F.p >= 7:
        legendre.annotate_swarm(swarm)
    text = export.to_dot(swarm) if args.format == "dot" else export.to_json(swarm)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_curves(args) -> int:
    F = _field(args)
    print(_header(F))
    if args.lam is not None:
        lams = [args.lam]
    else:
        lams = sorted(int(x) for x in F.squares if x != F.integer(1).enc)
    for row in export.curve_summaries(F, lams):
        print(" ".join(f"{k}={v}" for k, v in row.items()))
    return 0


def cmd_schoof(args) -> int:
    report = class_numbers.verify_schoof_identity(args.q)
    print("# s, (4q-s^2)/4, H, M")
    for row in report.rows:
        print(row)
    if report.zero_skipped:
        print("# s=0 skipped")
    return 0 if report.ok else 1


def cmd_hurwitz(args) -> int:
    print(class_numbers.hurwitz_H(args.N))
    return 0


def cmd_hyper(args) -> int:
    F = _field(args)
    S, q = hypergeometric.greene_2f1_phi(F, args.lam)
    value = hypergeometric.greene_2f1_phi_value(F, args.lam)
    print(_header(F))
    print(f"S={S}")
    print(f"2F1={value.numerator}/{value.denominator}")
    print(f"N={q + 1 + S}")
    if args.full:
        h = (q - 1) // 2
        full = hypergeometric.greene_2f1_full(F, h, h, 0, F(args.lam).enc)
        print(f"full={full.real:.12g}{full.imag:+.12g}j deviation={abs(full - float(value)):.3g}")
    return 0


def cmd_pi(args) -> int:
    for n in range(1, args.steps + 1):
        print(mpmath.nstr(real_agm.euler_pi(n, args.digits), args.digits))
    return 0


COMMANDS = {
    "swarm": cmd_swarm,
    "table": cmd_table,
    "orbit": cmd_orbit,
    "export": cmd_export,
    "curves": cmd_curves,
    "schoof": cmd_schoof,
    "hurwitz": cmd_hurwitz,
    "hyper": cmd_hyper,
    "pi": cmd_pi,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="agm-jellyfish", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def with_field(p):
        p.add_argument("--q", type=int)
        p.add_argument("--p", type=int)
        p.add_argument("--m", type=int)
        return p

    with_field(sub.add_parser("swarm", help="build a swarm and summarise it"))
    sub.add_parser("table", help="d(F_q) for primes q = 3 mod 4").add_argument(
        "--limit", type=int, default=283
    )
    p = with_field(sub.add_parser("orbit", help="AGM orbit of one pair"))
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p = with_field(sub.add_parser("export", help="write the swarm as DOT or JSON"))
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--out")
    p = with_field(sub.add_parser("curves", help="Legendre curves E_(alpha^2)"))
    p.add_argument("--lambda", dest="lam", type=int)
    sub.add_parser("schoof", help="check H((4q-s^2)/4) = M(s)").add_argument(
        "--q", type=int, required=True
    )
    sub.add_parser("hurwitz", help="Hurwitz class number H(N)").add_argument(
        "--N", type=int, required=True
    )
    p = with_field(sub.add_parser("hyper", help="Greene 2F1(phi, phi; eps | lambda)"))
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--full", action="store_true")
    p = sub.add_parser("pi", help="Euler's AGM approximations to pi")
    p.add_argument("--steps", type=int, default=5)
    p.add_argument("--digits", type=int, default=40)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (FieldError, NotAdmissible, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes are part of the interface:

    0  success; for `verify`, the solution regenerates the instance
    1  clean negative: verification mismatch, or no preimage found
    2  usage, parse, or domain errors
    3  input string too short for the requested variant
    4  a brute-force feasibility guard tripped
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import experiments
from .analysis import constants_table, spurious_sum
from .errors import (
    BloomCliqueError,
    GuardExceeded,
    StringTooShort,
)
from .extract import VARIANTS, RandomString
from .fileformat import (
    parse_instance,
    parse_solution,
    serialize_instance,
    serialize_solution,
)
from .hashing import HASH_KINDS
from .oracle import preimages
from .owf import Solution, generate, verify

USAGE_ERROR = 2
SHORT_INPUT_ERROR = 3
GUARD_ERROR = 4


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bloomclique",
        description="Planted-clique Bloom filter one-way function toolkit",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="evaluate the function on an input string")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--variant", choices=VARIANTS, required=True)
    g.add_argument("--kind", choices=HASH_KINDS, default="cw")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--seed-hex", help="input bits as lowercase hex")
    src.add_argument("--seed-file", help="input bits as a raw byte file")
    g.add_argument("--out", default="-", help="instance file (default stdout)")
    g.add_argument("--solution-out", help="also write the generating clique")

    v = sub.add_parser("verify", help="check a claimed preimage")
    v.add_argument("--instance", required=True)
    v.add_argument("--solution", required=True)

    i = sub.add_parser("invert", help="brute-force every preimage")
    i.add_argument("--instance", required=True)
    i.add_argument("--max-subsets", type=int, default=None,
                   help="override the census feasibility guard")

    b = sub.add_parser("bounds", help="log2-domain probability bounds")
    b.add_argument("--c", type=int, required=True)
    b.add_argument("--alpha", type=str, default=None,
                   help="edge density for the union bound (float or p/q)")
    b.add_argument("--all-constants", action="store_true",
                   help="emit the full named-constant table")
    b.add_argument("--format", choices=("table", "csv"), default="table")

    s = sub.add_parser("simulate", help="run a Monte Carlo experiment")
    s.add_argument("--experiment",
                   choices=("univalence", "gnp", "attack", "density"),
                   required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--variant", choices=VARIANTS, default="basic")
    s.add_argument("--kind", choices=HASH_KINDS, default="cw")
    s.add_argument("--alpha", type=float, default=0.125,
                   help="edge probability (gnp only)")
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--master-seed", type=int, required=True)
    s.add_argument("--csv", help="write the per-trial report here")

    d = sub.add_parser("density", help="realized array densities")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--variant", choices=VARIANTS, default="basic")
    d.add_argument("--kind", choices=HASH_KINDS, default="cw")
    d.add_argument("--trials", type=int, required=True)
    d.add_argument("--master-seed", type=int, required=True)
    d.add_argument("--csv", help="write the per-trial report here")
    return ap


def _read(path: str) -> str:
    with open(path, "r") as f:
        return f.read()


def _write_out(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as f:
            f.write(text)


def cmd_generate(args) -> int:
    if args.seed_hex is not None:
        rs = RandomString.from_hex(args.seed_hex)
    else:
        with open(args.seed_file, "rb") as f:
            rs = RandomString.from_bytes(f.read())
    gen = generate(rs, args.n, args.variant, args.kind)
    _write_out(serialize_instance(gen.instance), args.out)
    if args.solution_out:
        _write_out(
            serialize_solution(Solution(vertices=gen.seed.vertices)),
            args.solution_out,
        )
    return 0


def cmd_verify(args) -> int:
    inst = parse_instance(_read(args.instance))
    sol = parse_solution(_read(args.solution))
    ok = verify(inst, sol)
    print("verified: true" if ok else "verified: false")
    return 0 if ok else 1


def cmd_invert(args) -> int:
    inst = parse_instance(_read(args.instance))
    kw = {}
    if args.max_subsets is not None:
        kw["guard_comb"] = args.max_subsets
    found = preimages(inst, **kw)
    for vs in found:
        print("S " + " ".join(str(v) for v in vs))
    print(f"preimages {len(found)}")
    return 0 if found else 1


def _fmt_log2(x: float) -> str:
    return f"{x:.4f}"


def cmd_bounds(args) -> int:
    rows = []
    if args.all_constants:
        for r in constants_table(args.c):
            rows.append((r.ident, r.inputs, r.value.log2_value, r.value.flag, r.note))
    if args.alpha is not None:
        if "/" in args.alpha:
            num, den = args.alpha.split("/", 1)
            alpha = Fraction(int(num), int(den))
        else:
            alpha = Fraction(args.alpha)
        lb = spurious_sum(args.c, alpha)
        rows.append(
            ("spurious_sum", f"c={args.c} alpha={args.alpha}",
             lb.log2_value, lb.flag, "")
        )
    if not rows:
        for r in constants_table(args.c):
            rows.append((r.ident, r.inputs, r.value.log2_value, r.value.flag, r.note))
    if args.format == "csv":
        print("ident,inputs,log2_value,flag,note")
        for ident, inputs, val, flag, note in rows:
            print(f"{ident},{inputs},{_fmt_log2(val)},{flag},{note}")
    else:
        wid = max(len(r[0]) for r in rows)
        win = max(len(r[1]) for r in rows)
        for ident, inputs, val, flag, note in rows:
            line = f"{ident:<{wid}}  {inputs:<{win}}  {_fmt_log2(val):>12}  {flag}"
            if note:
                line += f"  ({note})"
            print(line)
    return 0


def _run_experiment(args):
    if args.experiment == "univalence":
        return experiments.univalence_trials(
            args.n, args.variant, args.kind, args.trials, args.master_seed
        )
    if args.experiment == "gnp":
        return experiments.gnp_spurious_trials(
            args.n, args.alpha, args.trials, args.master_seed
        )
    if args.experiment == "attack":
        return experiments.attack_simulation(
            args.n, args.variant, args.kind, args.trials, args.master_seed
        )
    return experiments.density_experiment(
        args.n, args.variant, args.kind, args.trials, args.master_seed
    )


def cmd_simulate(args) -> int:
    rep = _run_experiment(args)
    if args.csv:
        rep.to_csv(args.csv)
    print(f"experiment: {rep.experiment}")
    for key, val in rep.params.items():
        print(f"  {key} = {val}")
    for key, val in rep.summary.items():
        print(f"{key} = {val}")
    return 0


def cmd_density(args) -> int:
    args.experiment = "density"
    return cmd_simulate(args)


_COMMANDS = {
    "generate": cmd_generate,
    "verify": cmd_verify,
    "invert": cmd_invert,
    "bounds": cmd_bounds,
    "simulate": cmd_simulate,
    "density": cmd_density,
}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE_ERROR
    try:
        return _COMMANDS[args.command](args)
    except StringTooShort as e:
        print(f"error: {e}", file=sys.stderr)
        return SHORT_INPUT_ERROR
    except GuardExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return GUARD_ERROR
    except (BloomCliqueError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()

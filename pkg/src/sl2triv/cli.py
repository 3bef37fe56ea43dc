"""Command-line interface.

Subcommands: table (trivial source character table), chartab (generic
character tables), blocks (ell-block data), verify (oracle certification).
Exit codes: 0 success, 1 verification failure, 2 usage or regime error.
"""

from __future__ import annotations

import argparse
import sys

from . import emit
from .blocks import block_distribution
from .chartables import irr_dicyclic, irr_psl2, irr_sl2
from .errors import InvalidQ, TooLarge, UnsupportedRegime
from .oracle import default_budget, verify
from .trivsource import assemble

REGIME_HELP = (
    "supported regimes: ell odd dividing q-1 or q+1, or ell=2 with q = +-3 mod 8"
)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sl2triv",
        description="Trivial source character tables of SL2(q) and PSL2(q), "
        "exactly over cyclotomic fields, with a brute-force species oracle. "
        + REGIME_HELP,
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, ell=True, group=("sl2", "psl2")):
        p.add_argument("--q", type=int, required=True, help="odd prime power")
        if ell:
            p.add_argument("--ell", type=int, required=True, help="the prime ell")
        p.add_argument("--group", choices=group, default=group[0])
        p.add_argument("--out", help="output path (default stdout)")

    p = sub.add_parser("table", help="assemble and emit Triv_ell(G)")
    common(p)
    p.add_argument("--format", choices=("json", "latex", "csv", "text"),
                   default="text")
    p.add_argument("--approx", action="store_true",
                   help="floating point entries in csv output")

    p = sub.add_parser("chartab", help="emit a generic character table")
    common(p, ell=False, group=("sl2", "psl2", "n", "nprime"))
    p.add_argument("--format", choices=("json", "latex", "csv"), default="json")
    p.add_argument("--classes", action="store_true",
                   help="debug dump of the conjugacy class data instead")

    p = sub.add_parser("blocks", help="emit the ell-block data")
    common(p)
    p.add_argument("--format", choices=("json",), default="json")

    p = sub.add_parser("verify", help="run the species oracle certification")
    common(p)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--budget", type=int, default=None,
                   help=f"enumeration budget on |G| (default {default_budget()}, "
                   "env SL2TRIV_BUDGET)")
    p.add_argument("--seed", type=int, default=1,
                   help="seed for the randomized oracle subgroups")
    return ap


def _write(text: str, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        if args.cmd == "table":
            t = assemble(args.q, args.ell, args.group)
            if args.format == "json":
                text = emit.dumps(emit.table_to_json(t)) + "\n"
            elif args.format == "latex":
                text = emit.table_to_latex(t)
            elif args.format == "csv":
                text = emit.table_to_csv(t, approx=args.approx)
            else:
                text = emit.table_to_text(t)
            _write(text, args.out)
            return 0
        if args.cmd == "chartab":
            if args.classes:
                if args.group not in ("sl2", "psl2"):
                    print("error: --classes applies to sl2/psl2", file=sys.stderr)
                    return 2
                from .groups import class_reps, class_size

                data = [
                    {"label": lbl.text(), "size": class_size(args.q, args.group, lbl),
                     "param": {"kind": lbl.kind, "eps": lbl.eps, "k": lbl.k,
                               "tau": lbl.tau},
                     "rep": list(rep)}
                    for lbl, rep in class_reps(args.q, args.group)
                ]
                _write(emit.dumps({"q": args.q, "group": args.group,
                                   "classes": data}) + "\n", args.out)
                return 0
            tab = {
                "sl2": irr_sl2,
                "psl2": irr_psl2,
                "n": lambda q: irr_dicyclic(q, "split"),
                "nprime": lambda q: irr_dicyclic(q, "nonsplit"),
            }[args.group](args.q)
            if args.format == "json":
                text = emit.dumps(emit.chartab_to_json(tab)) + "\n"
            elif args.format == "latex":
                text = emit.chartab_to_latex(tab)
            else:
                text = emit.chartab_to_csv(tab)
            _write(text, args.out)
            return 0
        if args.cmd == "blocks":
            bl = block_distribution(args.q, args.ell, args.group)
            _write(emit.dumps(emit.blocks_to_json(bl)) + "\n", args.out)
            return 0
        if args.cmd == "verify":
            rep = verify(args.q, args.ell, args.group,
                         budget=args.budget, seed=args.seed)
            if args.format == "json":
                _write(emit.dumps(rep.to_json()) + "\n", args.out)
            else:
                _write(rep.to_text() + "\n", args.out)
            return 0 if rep.passed else 1
    except (UnsupportedRegime, InvalidQ, TooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

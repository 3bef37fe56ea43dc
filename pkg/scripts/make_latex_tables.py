#!/usr/bin/env python3
"""Emit LaTeX specializations of the trivial source character tables.

Writes one .tex file per requested (q, ell, group) into --outdir.

    python scripts/make_latex_tables.py --outdir out \
        --case 7,3,sl2 --case 11,2,psl2 --case 11,2,sl2
"""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from sl2triv.emit import table_to_latex  # noqa: E402
from sl2triv.trivsource import assemble  # noqa: E402


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--outdir", default="latex_tables")
    ap.add_argument("--case", action="append", default=[],
                    help="q,ell,group (repeatable)")
    args = ap.parse_args()
    cases = [c.split(",") for c in args.case] or [
        ("7", "3", "sl2"), ("5", "3", "sl2"),
        ("11", "2", "psl2"), ("11", "2", "sl2"),
        ("13", "2", "psl2"), ("13", "2", "sl2"),
    ]
    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for qs, es, group in cases:
        q, ell = int(qs), int(es)
        t = assemble(q, ell, group)
        path = outdir / f"triv{ell}_{group}_q{q}.tex"
        path.write_text(table_to_latex(t))
        print(f"wrote {path} ({t.size()[0]}x{t.size()[1]})")


if __name__ == "__main__":
    main()

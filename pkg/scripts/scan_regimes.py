#!/usr/bin/env python3
"""Structural scan over every covered (q, ell, group) up to a bound.

For each table: assemble, run the exact structural invariants, and certify
invertibility.  Prints one line per table and a final summary.

    python scripts/scan_regimes.py --qmax 101
"""

import argparse
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from sl2triv.errors import InvalidQ  # noqa: E402
from sl2triv.groups import factorize, split_prime_power  # noqa: E402
from sl2triv.linalg import certify_invertible  # noqa: E402
from sl2triv.trivsource import assemble, structural_checks  # noqa: E402


def covered(qmax):
    for q in range(3, qmax + 1, 2):
        try:
            p, _ = split_prime_power(q)
        except InvalidQ:
            continue
        for ell in sorted(set(factorize(q - 1)) | set(factorize(q + 1))):
            if ell != 2 and ell != p:
                yield q, ell, "sl2"
        if q % 8 in (3, 5):
            yield q, 2, "sl2"
            yield q, 2, "psl2"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--qmax", type=int, default=101)
    args = ap.parse_args()
    t0 = time.monotonic()
    count, failed = 0, []
    for q, ell, group in covered(args.qmax):
        t = assemble(q, ell, group)
        bad = [name for name, ok, _ in structural_checks(t) if not ok]
        if not certify_invertible(t.matrix):
            bad.append("invertible")
        mark = "ok" if not bad else "FAIL " + ",".join(bad)
        print(f"q={q:3d} ell={ell:2d} {group:5s} size={t.size()[0]:3d}  {mark}")
        count += 1
        if bad:
            failed.append((q, ell, group, bad))
    dt = time.monotonic() - t0
    print(f"\n{count} tables in {dt:.1f}s; {len(failed)} failures")
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Extended oracle certification beyond the default enumeration budget.

Runs the full fixed-point certification for larger groups and extension
fields (several minutes total in pure Python):

    python scripts/certify_deep.py
"""

import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from sl2triv.oracle import verify  # noqa: E402

CASES = [
    # (q, ell, group, budget) -- |G| up to ~20000
    (17, 3, "sl2", None),     # smallest nonsplit chain with C3 < C9
    (19, 3, "sl2", 7000),     # smallest split chain with C3 < C9
    (19, 2, "psl2", None),
    (29, 2, "psl2", 13000),
    (25, 3, "sl2", 16000),    # GF(25)
    (27, 7, "sl2", 20000),    # GF(27)
]


def main():
    failed = []
    for q, ell, group, budget in CASES:
        t0 = time.monotonic()
        rep = verify(q, ell, group, budget=budget)
        dt = time.monotonic() - t0
        mark = "PASS" if rep.passed else "FAIL"
        print(f"[{mark}] verify({q},{ell},{group}) in {dt:.1f}s")
        if not rep.passed:
            failed.append((q, ell, group))
            for c in rep.checks:
                if not c.passed:
                    print(f"       {c.name}: {c.detail}")
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()

"""Exact linear algebra over cyclotomic matrices.

Invertibility of a square cyclotomic matrix is certified by mapping the
roots of unity into GF(P) for a prime P = 1 mod M (M the lcm of the entry
conductors) and computing the determinant there: a nonzero image proves a
nonzero determinant.  Singularity is reported after several independent
primes agree; callers treat that as a verification failure.

Species decompositions c^T T = vec with rational c are solved over Q by
expanding each cyclotomic column equation in the canonical basis of its
field, then verified entry by entry, so no cyclotomic division is needed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .cyclotomic import CycNum, _reduce
from .groups import factorize

_F = Fraction

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primitive_root_power(P: int, order: int) -> int:
    """An element of GF(P)^x of exact multiplicative order `order`."""
    fac = factorize(P - 1)
    for g in range(2, P):
        if all(pow(g, (P - 1) // r, P) != 1 for r in fac):
            w = pow(g, (P - 1) // order, P)
            assert pow(w, order, P) == 1
            return w
    raise AssertionError


def split_primes(M: int, count: int, skip: int = 0):
    """Primes P = 1 mod M, ascending, starting above 2^20."""
    out = []
    k = max(1, (1 << 20) // M)
    while len(out) < count + skip:
        P = k * M + 1
        if is_prime(P):
            out.append(P)
        k += 1
    return out[skip:]


def _entry_mod_p(a: CycNum, M: int, w: int, P: int) -> int:
    acc = 0
    s = M // a.m
    for e, v in a.coeffs.items():
        c = v.numerator * pow(v.denominator, P - 2, P) % P
        acc = (acc + c * pow(w, e * s, P)) % P
    return acc


def matrix_modulus_lcm(matrix) -> int:
    M = 1
    for row in matrix:
        for a in row:
            M = M * a.m // gcd(M, a.m)
    return M


def _det_mod_p(rows, P: int) -> int:
    n = len(rows)
    rows = [list(r) for r in rows]
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] % P), None)
        if piv is None:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        inv = pow(rows[col][col], P - 2, P)
        det = det * rows[col][col] % P
        for r in range(col + 1, n):
            f = rows[r][col] * inv % P
            if f:
                for c in range(col, n):
                    rows[r][c] = (rows[r][c] - f * rows[col][c]) % P
    return det % P


def certify_invertible(matrix, attempts: int = 4) -> bool:
    """True is an exact proof of invertibility over Q(zeta); False means
    `attempts` independent prime reductions all had determinant zero."""
    n = len(matrix)
    if n == 0:
        return True
    if any(len(r) != n for r in matrix):
        return False
    M = matrix_modulus_lcm(matrix)
    for P in split_primes(M, attempts):
        w = _primitive_root_power(P, M)
        rows = [[_entry_mod_p(a, M, w, P) for a in row] for row in matrix]
        if _det_mod_p(rows, P):
            return True
    return False


class SpeciesSolver:
    """Solve c^T T = vec for rational c, for a fixed cyclotomic matrix T.

    Each column equation is expanded into rational equations over the
    canonical basis of Q(zeta_Mj); a full-rank square subsystem is
    extracted and inverted once, after which solving is a matrix-vector
    product plus a full verification pass.
    """

    def __init__(self, matrix):
        self.n = len(matrix)
        self.matrix = matrix
        # equations: (coeff tuple over rows, column index, basis exponent)
        eqs = []
        for j in range(len(matrix[0]) if matrix else 0):
            col = [matrix[i][j] for i in range(self.n)]
            Mj = 1
            for a in col:
                Mj = Mj * a.m // gcd(Mj, a.m)
            coords = []
            support = {0}
            for a in col:
                cc = _reduce(Mj, {e * (Mj // a.m): v for e, v in a.coeffs.items()})
                coords.append(cc)
                support.update(cc)
            for b in sorted(support):
                eqs.append(
                    (tuple(c.get(b, _F(0)) for c in coords), j, b)
                )
        self.equations = eqs
        self._pivot_rows = self._select_square_subsystem()
        self._inverse = (
            _invert_rational(
                [list(eqs[i][0]) for i in self._pivot_rows]
            )
            if self._pivot_rows is not None
            else None
        )

    def _select_square_subsystem(self):
        chosen = []
        reduced = []  # rows in echelon form, with pivot col recorded
        for idx, (coeffs, _, _) in enumerate(self.equations):
            row = list(coeffs)
            for pcol, prow in reduced:
                f = row[pcol]
                if f:
                    for c in range(self.n):
                        row[c] -= f * prow[c]
            pcol = next((c for c in range(self.n) if row[c]), None)
            if pcol is None:
                continue
            inv = _F(1) / row[pcol]
            row = [x * inv for x in row]
            reduced.append((pcol, row))
            chosen.append(idx)
            if len(chosen) == self.n:
                return chosen
        return None

    @property
    def full_rank(self) -> bool:
        return self._pivot_rows is not None

    def solve(self, vec):
        """Rational coefficients c with c^T T = vec, or None if inconsistent."""
        if not self.full_rank:
            return None
        rhs = []
        for i in self._pivot_rows:
            _, j, b = self.equations[i]
            rhs.append(_F(vec[j]) if b == 0 else _F(0))
        c = [
            sum(self._inverse[i][k] * rhs[k] for k in range(self.n))
            for i in range(self.n)
        ]
        for coeffs, j, b in self.equations:
            want = _F(vec[j]) if b == 0 else _F(0)
            if sum(coeffs[i] * c[i] for i in range(self.n)) != want:
                return None
        return c


def _invert_rational(rows):
    n = len(rows)
    aug = [[_F(x) for x in rows[i]] + [_F(1 if k == i else 0) for k in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = _F(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def rational_rank(rows) -> int:
    """Rank over Q of a matrix given as lists of Fractions/ints."""
    work = [[_F(x) for x in r] for r in rows]
    rank = 0
    ncols = len(work[0]) if work else 0
    pivots = []
    for row in work:
        for pcol, prow in pivots:
            f = row[pcol]
            if f:
                for c in range(ncols):
                    row[c] -= f * prow[c]
        pcol = next((c for c in range(ncols) if row[c]), None)
        if pcol is None:
            continue
        inv = _F(1) / row[pcol]
        row = [x * inv for x in row]
        pivots.append((pcol, row))
        rank += 1
    return rank

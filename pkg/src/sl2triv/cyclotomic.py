"""Exact arithmetic in cyclotomic fields Q(zeta_m).

A value is stored as a sparse rational combination of roots of unity
zeta_m^k, reduced to a canonical basis and to its minimal modulus
(conductor, normalised so that it is never == 2 mod 4).  Two values are
equal iff their canonical representations are identical, so == and hash
are structural.

The basis at modulus m is obtained by row-reducing the relation space
spanned by the prime power sums

    sum_{j=0}^{p-1} zeta_m^(k + j*m/p) = 0        (p prime, p | m)

which generate all Q-linear relations among the m-th roots of unity.
Exponent 0 is never a pivot, so rational numbers always sit on the
basis element zeta^0.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import NotRational

_F = Fraction


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    r = n
    for p in _prime_factors(n):
        r -= r // p
    return r


@lru_cache(maxsize=None)
def _relation_rref(m: int) -> dict:
    """Reduced row-echelon form of the root-of-unity relation space.

    Returns {pivot_exponent: row} where each row is a dict exp -> Fraction
    with coefficient 1 at the pivot.  Pivot is the largest exponent of the
    reduced row, so 0 is never a pivot.
    """
    pivots: dict[int, dict[int, Fraction]] = {}
    for p in _prime_factors(m):
        step = m // p
        for k in range(step):
            row = {(k + j * step) % m: _F(1) for j in range(p)}
            # reduce against existing pivots
            for piv in sorted(row.keys(), reverse=True):
                if piv in row and piv in pivots and row[piv]:
                    c = row[piv]
                    for e, v in pivots[piv].items():
                        row[e] = row.get(e, _F(0)) - c * v
            row = {e: v for e, v in row.items() if v}
            if not row:
                continue
            piv = max(row)
            c = row[piv]
            row = {e: v / c for e, v in row.items()}
            # eliminate the new pivot from stored rows
            for other in pivots.values():
                if piv in other:
                    co = other[piv]
                    for e, v in row.items():
                        other[e] = other.get(e, _F(0)) - co * v
                    for e in [e for e, v in other.items() if not v]:
                        del other[e]
            pivots[piv] = row
    assert len(pivots) == m - euler_phi(m)
    return pivots


@lru_cache(maxsize=None)
def _basis_exponents(m: int) -> tuple:
    pivots = _relation_rref(m)
    return tuple(e for e in range(m) if e not in pivots)


def _reduce(m: int, coeffs: dict) -> dict:
    """Canonicalise a sparse exponent vector modulo the relation space."""
    pivots = _relation_rref(m)
    work = dict(coeffs)
    for e in sorted(work.keys(), reverse=True):
        if e in pivots and work.get(e):
            c = work[e]
            for ee, v in pivots[e].items():
                work[ee] = work.get(ee, _F(0)) - c * v
    return {e: v for e, v in sorted(work.items()) if v}


@lru_cache(maxsize=None)
def _descent_pivots(m: int, d: int) -> tuple:
    """Echelonised images of the Q(zeta_d)-basis inside Q(zeta_m).

    Returns tuples (pivot_exp, row, coords) such that subtracting
    coeff*row while accumulating coeff*coords rewrites a canonical
    modulus-m vector, when possible, in terms of zeta_d exponents.
    """
    assert m % d == 0 and d < m
    stretch = m // d
    rows = []
    for b in _basis_exponents(d):
        vec = _reduce(m, {(b * stretch) % m: _F(1)})
        rows.append((vec, {b: _F(1)}))
    out = []
    for vec, coords in rows:
        vec = dict(vec)
        coords = dict(coords)
        for piv, prow, pcoords in out:
            c = vec.get(piv)
            if c:
                for e, v in prow.items():
                    vec[e] = vec.get(e, _F(0)) - c * v
                for e, v in pcoords.items():
                    coords[e] = coords.get(e, _F(0)) - c * v
        vec = {e: v for e, v in vec.items() if v}
        if not vec:
            continue
        piv = max(vec)
        c = vec[piv]
        vec = {e: v / c for e, v in vec.items()}
        coords = {e: v / c for e, v in coords.items() if v}
        out.append((piv, vec, coords))
    return tuple(out)


def _galois_raw(m: int, coeffs: dict, t: int) -> dict:
    acc: dict[int, Fraction] = {}
    for e, v in coeffs.items():
        ee = (e * t) % m
        acc[ee] = acc.get(ee, _F(0)) + v
    return _reduce(m, acc)


def _shrink(m: int, coeffs: dict):
    """Move a canonical modulus-m vector to its minimal modulus."""
    while True:
        if not coeffs:
            return 1, {}
        if set(coeffs) == {0}:
            return 1, dict(coeffs)
        g = m
        for e in coeffs:
            g = gcd(g, e)
        if g > 1:
            m //= g
            coeffs = _reduce(m, {e // g: v for e, v in coeffs.items()})
            continue
        if len(coeffs) == 1:
            # single primitive monomial: conductor is m unless m == 2 mod 4
            [(e, v)] = coeffs.items()
            if m % 4 == 2:
                u = m // 2
                ee = (e * (u + 1) // 2) % u
                vv = -v if e % 2 else v
                coeffs = _reduce(u, {ee: vv})
                m = u
                continue
            return m, coeffs
        descended = False
        for p in _prime_factors(m):
            d = m // p
            if d < 1:
                continue
            fixed = all(
                _galois_raw(m, coeffs, t) == coeffs
                for t in range(1 + d, m, d)
                if gcd(t, m) == 1
            )
            if not fixed:
                continue
            work = dict(coeffs)
            coords: dict[int, Fraction] = {}
            ok = True
            for piv, row, pcoords in _descent_pivots(m, d):
                c = work.get(piv)
                if c:
                    for e, v in row.items():
                        work[e] = work.get(e, _F(0)) - c * v
                    for e, v in pcoords.items():
                        coords[e] = coords.get(e, _F(0)) + c * v
            work = {e: v for e, v in work.items() if v}
            if work:
                ok = False  # not actually in the subfield; should not happen
            if ok:
                m = d
                coeffs = _reduce(m, {e: v for e, v in coords.items() if v})
                descended = True
                break
        if not descended:
            return m, coeffs


class CycNum:
    """An element of Q(zeta_m), immutable and canonical."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: dict, *, _canonical: bool = False):
        if not _canonical:
            coeffs = _reduce(m, {e % m: _F(v) for e, v in coeffs.items() if v})
            m, coeffs = _shrink(m, coeffs)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("CycNum is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def rational(x) -> "CycNum":
        x = _F(x)
        return CycNum(1, {0: x} if x else {}, _canonical=True)

    # -- coercion helpers ---------------------------------------------

    @staticmethod
    def _coerce(x) -> "CycNum":
        if isinstance(x, CycNum):
            return x
        if isinstance(x, (int, Fraction)):
            return CycNum.rational(x)
        return NotImplemented

    def _embed(self, m: int) -> dict:
        s = m // self.m
        return {e * s: v for e, v in self.coeffs.items()}

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return self.m == 1

    def to_rational(self) -> Fraction:
        if self.m != 1:
            raise NotRational(f"{self} is not rational")
        return self.coeffs.get(0, _F(0))

    def to_int(self) -> int:
        r = self.to_rational()
        if r.denominator != 1:
            raise NotRational(f"{self} is not an integer")
        return r.numerator

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = CycNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        m = self.m * other.m // gcd(self.m, other.m)
        a = self._embed(m)
        for e, v in other._embed(m).items():
            a[e] = a.get(e, _F(0)) + v
        return CycNum(m, a)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(
            self.m, {e: -v for e, v in self.coeffs.items()}, _canonical=True
        )

    def __sub__(self, other):
        other = CycNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = CycNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_rational() or other.is_rational():
            a, b = (self, other) if other.is_rational() else (other, self)
            c = b.coeffs.get(0, _F(0))
            if not c:
                return CycNum.rational(0)
            return CycNum(a.m, {e: v * c for e, v in a.coeffs.items()})
        m = self.m * other.m // gcd(self.m, other.m)
        a = self._embed(m)
        b = other._embed(m)
        acc: dict[int, Fraction] = {}
        for e1, v1 in a.items():
            for e2, v2 in b.items():
                e = (e1 + e2) % m
                acc[e] = acc.get(e, _F(0)) + v1 * v2
        return CycNum(m, acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * CycNum.rational(_F(1, 1) / _F(other))
        if isinstance(other, CycNum):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = CycNum.rational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycNum.rational(_F(1) / self.to_rational())
        num = CycNum.rational(1)
        for t in range(2, self.m):
            if gcd(t, self.m) == 1:
                num = num * self.galois(t)
        norm = (self * num).to_rational()
        return num * CycNum.rational(_F(1) / norm)

    # -- field automorphisms -------------------------------------------

    def galois(self, t: int) -> "CycNum":
        if gcd(t, self.m) != 1:
            raise ValueError(f"galois exponent {t} not coprime to {self.m}")
        return CycNum(self.m, _galois_raw(self.m, self.coeffs, t % self.m))

    def conjugate(self) -> "CycNum":
        if self.m == 1:
            return self
        return self.galois(self.m - 1)

    # -- numeric -------------------------------------------------------

    def approx(self):
        """Complex float value plus a rigorous magnitude error bound."""
        total = complex(0)
        size = 0.0
        for e, v in self.coeffs.items():
            total += float(v) * cmath.exp(2j * cmath.pi * e / self.m)
            size += abs(float(v))
        return total, max(1e-15, size * 5e-15)

    def sign(self) -> int:
        """Sign of a real value; exact for rationals, floats elsewhere."""
        if self.is_rational():
            r = self.to_rational()
            return (r > 0) - (r < 0)
        if self.conjugate() != self:
            raise ValueError(f"{self} is not real")
        z, err = self.approx()
        if abs(z.real) <= err:
            raise ValueError(f"sign of {self} numerically inconclusive")
        return 1 if z.real > 0 else -1

    # -- structural ----------------------------------------------------

    def __eq__(self, other):
        other = CycNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self):
        if self.m == 1:
            return hash(self.coeffs.get(0, _F(0)))
        return hash((self.m, tuple(sorted(self.coeffs.items()))))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        if self.is_rational():
            return str(self.to_rational())
        parts = []
        for e, v in self.coeffs.items():
            if e == 0:
                parts.append(str(v))
            elif v == 1:
                parts.append(f"z{self.m}^{e}")
            else:
                parts.append(f"{v}*z{self.m}^{e}")
        return " + ".join(parts)

    def latex(self) -> str:
        if self.is_rational():
            r = self.to_rational()
            if r.denominator == 1:
                return str(r.numerator)
            return rf"\frac{{{r.numerator}}}{{{r.denominator}}}"
        parts = []
        for e, v in self.coeffs.items():
            z = rf"\zeta_{{{self.m}}}" + (f"^{{{e}}}" if e != 1 else "")
            if e == 0:
                parts.append(CycNum.rational(v).latex())
            elif v == 1:
                parts.append(z)
            elif v == -1:
                parts.append("-" + z)
            else:
                parts.append(CycNum.rational(v).latex() + z)
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    # -- serialisation ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "coeffs": {str(e): f"{v.numerator}/{v.denominator}"
                       for e, v in self.coeffs.items()},
        }

    @staticmethod
    def from_json(obj) -> "CycNum":
        coeffs = {int(e): _F(v) for e, v in obj["coeffs"].items()}
        return CycNum(obj["m"], coeffs)


def zeta(m: int, k: int = 1) -> CycNum:
    """The root of unity zeta_m^k."""
    if m < 1:
        raise ValueError("modulus must be positive")
    return CycNum(m, {k % m: _F(1)})


ZERO = CycNum.rational(0)
ONE = CycNum.rational(1)


def cyc(x) -> CycNum:
    """Coerce an int/Fraction/CycNum to CycNum."""
    if isinstance(x, CycNum):
        return x
    return CycNum.rational(x)


def cyc_sum(values) -> CycNum:
    """Sum of CycNums, bucketed by modulus so that reduction to a common
    field happens once instead of per addend."""
    buckets: dict[int, dict[int, Fraction]] = {}
    for v in values:
        acc = buckets.setdefault(v.m, {})
        for e, c in v.coeffs.items():
            acc[e] = acc.get(e, _F(0)) + c
    out = CycNum.rational(0)
    for m, coeffs in sorted(buckets.items()):
        out = out + CycNum(m, coeffs)
    return out


@lru_cache(maxsize=None)
def _power_basis_inverse(m: int) -> tuple:
    """Transform from the canonical basis to the power basis 1..zeta^(phi-1).

    Returns (basis_exponents, rows) with rows the inverse matrix, so that
    power coordinates are rows @ canonical-coordinate-vector.  The power
    basis is an integral basis of Z[zeta_m], which the canonical echelon
    basis need not be."""
    basis = _basis_exponents(m)
    phi = len(basis)
    cols = []
    for i in range(phi):
        cc = _reduce(m, {i % m: _F(1)})
        cols.append([cc.get(b, _F(0)) for b in basis])
    # invert the phi x phi matrix with columns cols
    aug = [[cols[j][i] for j in range(phi)] + [_F(1 if k == i else 0) for k in range(phi)]
           for i in range(phi)]
    for col in range(phi):
        piv = next(r for r in range(col, phi) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = _F(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(phi):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    rows = tuple(tuple(row[phi:]) for row in aug)
    return basis, rows


def power_coords(a: CycNum) -> list:
    """Coordinates of a over the power basis of Q(zeta_m), m = a.m."""
    if a.m == 1:
        return [a.coeffs.get(0, _F(0))]
    basis, rows = _power_basis_inverse(a.m)
    vec = [a.coeffs.get(b, _F(0)) for b in basis]
    return [sum(r[i] * vec[i] for i in range(len(vec))) for r in rows]


def gauss_sqrt_q0(q: int) -> CycNum:
    """A square root of q0 (= q for q=1 mod 4, -q for q=3 mod 4).

    Realised as the quadratic Gauss sum sum_t zeta_p^(Tr(t^2)) over GF(q);
    the sign is whatever that literal sum evaluates to.
    """
    from .groups import build_field  # deferred; groups does not import us

    fs = build_field(q)
    F = fs.field
    acc: dict[int, Fraction] = {}
    for t in F.elements():
        e = F.trace_to_int(F.mul(t, t))
        acc[e] = acc.get(e, _F(0)) + 1
    return CycNum(fs.p, acc)

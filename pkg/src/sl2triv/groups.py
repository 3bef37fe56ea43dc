"""Finite fields GF(q), GF(q^2), the groups SL2(q)/PSL2(q), their conjugacy
class combinatorics, and the chains of ell-subgroups with normalizer data.

Field elements are encoded as ints in range(q) (base-p digit strings, constant
digit least significant); GF(q^2) elements as ints in range(q^2) over the
GF(q)-basis {1, y}.  Group elements are 4-tuples (a, b, c, d) of encoded field
elements with determinant 1; a PSL2 element is the lexicographically smaller
of {M, -M}.

All constructions are deterministic: same q gives bit-identical data.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .errors import InvalidQ, UnsupportedRegime


def factorize(n: int) -> dict:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def split_prime_power(q: int):
    """Return (p, f) with q = p^f, or raise InvalidQ."""
    if q < 2:
        raise InvalidQ(f"q={q} is not a prime power")
    fac = factorize(q)
    if len(fac) != 1:
        raise InvalidQ(f"q={q} is not a prime power")
    [(p, f)] = fac.items()
    return p, f


def ell_part(n: int, ell: int) -> int:
    out = 1
    while n % ell == 0:
        out *= ell
        n //= ell
    return out


# ---------------------------------------------------------------------------
# finite fields


class GF:
    """GF(p^f), elements encoded as ints in range(p^f)."""

    def __init__(self, p: int, f: int, modpoly: tuple):
        self.p = p
        self.f = f
        self.q = p**f
        self.modpoly = modpoly  # coeffs of x^0..x^(f-1); x^f = -modpoly

    def _digits(self, a: int) -> list:
        p = self.p
        return [(a // p**i) % p for i in range(self.f)]

    def _encode(self, digits) -> int:
        return sum(d % self.p * self.p**i for i, d in enumerate(digits))

    def elements(self):
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        if self.f == 1:
            return (a + b) % self.p
        da, db = self._digits(a), self._digits(b)
        return self._encode([x + y for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        if self.f == 1:
            return (-a) % self.p
        return self._encode([-x for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        p, f = self.p, self.f
        if f == 1:
            return (a * b) % p
        da, db = self._digits(a), self._digits(b)
        conv = [0] * (2 * f - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    conv[i + j] += x * y
        for i in range(2 * f - 2, f - 1, -1):
            c = conv[i] % p
            if c:
                for j in range(f):
                    conv[i - f + j] -= c * self.modpoly[j]
            conv[i] = 0
        return self._encode(conv[:f])

    def pow(self, a: int, n: int) -> int:
        if self.f == 1:
            return pow(a, n, self.p)
        if a != 0 and n >= self.q:
            n %= self.q - 1
        out, base = 1, a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError
        if self.f == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        n = self.q - 1
        for r, e in factorize(n).items():
            for _ in range(e):
                if self.pow(a, n // r) == 1:
                    n //= r
                else:
                    break
        return n

    def is_square(self, a: int) -> bool:
        if a == 0:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    def trace_to_int(self, a: int) -> int:
        """Absolute trace GF(q) -> F_p as an int in range(p)."""
        if self.f == 1:
            return a % self.p
        t, x = a, a
        for _ in range(self.f - 1):
            x = self.pow(x, self.p)
            t = self.add(t, x)
        assert t < self.p, "trace must land in the prime field"
        return t


def _poly_is_irreducible(p: int, coeffs: tuple) -> bool:
    """coeffs = low coefficients of a monic polynomial over F_p."""
    f = len(coeffs)

    def divmod_by(div):  # div: low coeffs of monic divisor of degree d
        d = len(div)
        rem = list(coeffs) + [1]
        for i in range(f - d, -1, -1):
            c = rem[i + d] % p
            if c:
                rem[i + d] = 0
                for j in range(d):
                    rem[i + j] = (rem[i + j] - c * div[j]) % p
        return any(x % p for x in rem[:d])

    for d in range(1, f // 2 + 1):
        for enc in range(p**d):
            div = tuple((enc // p**i) % p for i in range(d))
            if d == 1 or _poly_is_irreducible(p, div):
                if not divmod_by(div):
                    return False
    return True


def _first_irreducible(p: int, f: int) -> tuple:
    for enc in range(p**f):
        coeffs = tuple((enc // p**i) % p for i in range(f))
        if _poly_is_irreducible(p, coeffs):
            return coeffs
    raise AssertionError("no irreducible polynomial found")


class GFExt:
    """GF(q^2) as GF(q)[y]/(y^2 + g1 y + g0), elements encoded in range(q^2)."""

    def __init__(self, base: GF, modpoly2: tuple):
        self.base = base
        self.q = base.q
        self.g0, self.g1 = modpoly2

    def pair(self, a: int):
        return a % self.q, a // self.q

    def enc(self, x0: int, x1: int) -> int:
        return x0 + self.q * x1

    def elements(self):
        return range(self.q * self.q)

    def add(self, a, b):
        F = self.base
        a0, a1 = self.pair(a)
        b0, b1 = self.pair(b)
        return self.enc(F.add(a0, b0), F.add(a1, b1))

    def mul(self, a, b):
        F = self.base
        a0, a1 = self.pair(a)
        b0, b1 = self.pair(b)
        c0 = F.mul(a0, b0)
        c1 = F.add(F.mul(a0, b1), F.mul(a1, b0))
        c2 = F.mul(a1, b1)
        # y^2 = -g0 - g1*y
        c0 = F.sub(c0, F.mul(c2, self.g0))
        c1 = F.sub(c1, F.mul(c2, self.g1))
        return self.enc(c0, c1)

    def pow(self, a, n):
        out, base = self.enc(1, 0), a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def order(self, a):
        n = self.q * self.q - 1
        for r, e in factorize(n).items():
            for _ in range(e):
                if self.pow(a, n // r) == self.enc(1, 0):
                    n //= r
                else:
                    break
        return n


@dataclass(frozen=True)
class FieldSpec:
    q: int
    p: int
    f: int
    modulus_poly: tuple
    modulus_poly2: tuple
    generator_g: int
    generator_gamma2: int
    generator_xi: int
    nonsquare_z0: int
    field: GF = dc_field(compare=False, repr=False, default=None)
    ext: GFExt = dc_field(compare=False, repr=False, default=None)


@lru_cache(maxsize=None)
def build_field(q: int) -> FieldSpec:
    p, f = split_prime_power(q)
    if p == 2:
        raise InvalidQ(f"q={q} is even")
    modpoly = _first_irreducible(p, f) if f > 1 else ()
    F = GF(p, f, modpoly)
    # first monic irreducible quadratic over GF(q)
    modpoly2 = None
    for enc in range(q * q):
        g0, g1 = enc % q, enc // q
        # y^2 + g1 y + g0 irreducible iff no root in GF(q)
        if all(
            F.add(F.add(F.mul(x, x), F.mul(g1, x)), g0) != 0 for x in range(q)
        ):
            modpoly2 = (g0, g1)
            break
    E = GFExt(F, modpoly2)
    gen_g = next(a for a in range(1, q) if F.order(a) == q - 1)
    gen_gamma2 = next(
        a for a in range(1, q * q) if E.order(a) == q * q - 1
    )
    gen_xi = E.pow(gen_gamma2, q - 1)
    z0 = next(a for a in range(1, q) if not F.is_square(a))
    return FieldSpec(
        q=q,
        p=p,
        f=f,
        modulus_poly=modpoly,
        modulus_poly2=modpoly2,
        generator_g=gen_g,
        generator_gamma2=gen_gamma2,
        generator_xi=gen_xi,
        nonsquare_z0=z0,
        field=F,
        ext=E,
    )


# ---------------------------------------------------------------------------
# 2x2 matrices over GF(q), elements of SL2(q)


def mat_mul(F: GF, x, y):
    a, b, c, d = x
    e, f_, g, h = y
    return (
        F.add(F.mul(a, e), F.mul(b, g)),
        F.add(F.mul(a, f_), F.mul(b, h)),
        F.add(F.mul(c, e), F.mul(d, g)),
        F.add(F.mul(c, f_), F.mul(d, h)),
    )


def mat_inv(F: GF, x):
    a, b, c, d = x  # det = 1
    return (d, F.neg(b), F.neg(c), a)


def mat_neg(F: GF, x):
    return tuple(F.neg(e) for e in x)


def mat_det(F: GF, x):
    a, b, c, d = x
    return F.sub(F.mul(a, d), F.mul(b, c))


def identity_mat(fs: FieldSpec):
    return (1, 0, 0, 1)


def d_elt(fs: FieldSpec, a: int):
    """diag(a, a^-1) for a in GF(q)^x."""
    return (a, 0, 0, fs.field.inv(a))


def dprime_elt(fs: FieldSpec, xi: int):
    """Multiplication by xi in GF(q^2), as a matrix over the basis {1, y}."""
    F, E = fs.field, fs.ext
    c0, c1 = E.pair(xi)
    g0, g1 = fs.modulus_poly2
    # columns: xi*1 = (c0, c1), xi*y = (-c1 g0, c0 - c1 g1)
    return (c0, F.neg(F.mul(c1, g0)), c1, F.sub(c0, F.mul(c1, g1)))


def u_elt(fs: FieldSpec, tau: int):
    """u_+ = [[1,1],[0,1]]; u_- = [[1,z0],[0,1]]."""
    return (1, 1 if tau == 1 else fs.nonsquare_z0, 0, 1)


def sigma_elt(fs: FieldSpec):
    """sigma = [[0,-1],[1,0]], normalising the split torus."""
    F = fs.field
    return (0, F.neg(1), 1, 0)


@lru_cache(maxsize=None)
def sigma_prime_elt(q: int):
    """An order-4 element of SL2(q) with sigma'^2 = -I normalising T'."""
    fs = build_field(q)
    F, E = fs.field, fs.ext
    # Frobenius x -> x^q on GF(q^2), matrix over {1, y}
    yq0, yq1 = E.pair(E.pow(E.enc(0, 1), q))
    frob = (1, yq0, 0, yq1)
    c = E.pow(fs.generator_gamma2, (q - 1) // 2)  # Norm(c) = -1
    sp = mat_mul(F, dprime_elt(fs, c), frob)
    assert mat_det(F, sp) == 1
    minus_i = mat_neg(F, identity_mat(fs))
    assert mat_mul(F, sp, sp) == minus_i
    xi_mat = dprime_elt(fs, fs.generator_xi)
    conj = mat_mul(F, mat_mul(F, sp, xi_mat), mat_inv(F, sp))
    assert conj == dprime_elt(fs, E.pow(fs.generator_xi, q))
    return sp


def psl_rep(fs: FieldSpec, m):
    """Canonical coset representative of {m, -m}."""
    return min(m, mat_neg(fs.field, m))


# ---------------------------------------------------------------------------
# conjugacy class labels


@dataclass(frozen=True, order=True)
class ClassLabel:
    kind: str  # "central" | "split" | "nonsplit" | "unipotent"
    eps: int = 1
    k: int = 0
    tau: int = 1

    def text(self) -> str:
        if self.kind == "central":
            return "I2" if self.eps == 1 else "-I2"
        if self.kind == "split":
            return f"d(g^{self.k})"
        if self.kind == "nonsplit":
            return f"d'(xi^{self.k})"
        sign = "" if self.eps == 1 else "-"
        return f"{sign}u{'+' if self.tau == 1 else '-'}"


def sl_torus_canonical(order: int, k: int) -> int:
    k %= order
    return min(k, order - k)


def psl_torus_canonical(order: int, k: int) -> int:
    k %= order
    half = order // 2
    return min(k % order, (-k) % order, (k + half) % order, (-k + half) % order)


def split_exponents(q: int, group: str, ell_restrict: int = 1) -> list:
    """Canonical exponents k for the d(g^k) classes; multiples of
    ell_restrict only (used for the ell'-class lists)."""
    m = q - 1
    out = []
    for k in range(ell_restrict, m // 2, ell_restrict):
        if k == m // 2:
            continue
        if group == "psl2" and psl_torus_canonical(m, k) != k:
            continue
        out.append(k)
    return out


def nonsplit_exponents(q: int, group: str, ell_restrict: int = 1) -> list:
    m = q + 1
    out = []
    for k in range(ell_restrict, (m + 1) // 2, ell_restrict):
        if k == m // 2:
            continue
        if group == "psl2" and psl_torus_canonical(m, k) != k:
            continue
        out.append(k)
    return out


def class_reps(q: int, group: str):
    """The (ClassLabel, element) list in table order."""
    fs = build_field(q)
    F = fs.field
    out = []
    I = identity_mat(fs)
    if group == "sl2":
        out.append((ClassLabel("central", eps=1), I))
        out.append((ClassLabel("central", eps=-1), mat_neg(F, I)))
        for eps in (1, -1):
            for tau in (1, -1):
                m = u_elt(fs, tau)
                if eps == -1:
                    m = mat_neg(F, m)
                out.append((ClassLabel("unipotent", eps=eps, tau=tau), m))
        for k in split_exponents(q, "sl2"):
            out.append((ClassLabel("split", k=k), d_elt(fs, F.pow(fs.generator_g, k))))
        for k in nonsplit_exponents(q, "sl2"):
            out.append(
                (ClassLabel("nonsplit", k=k),
                 dprime_elt(fs, fs.ext.pow(fs.generator_xi, k)))
            )
        return out
    if group == "psl2":
        out.append((ClassLabel("central", eps=1), I))
        for tau in (1, -1):
            out.append(
                (ClassLabel("unipotent", eps=1, tau=tau), psl_rep(fs, u_elt(fs, tau)))
            )
        for k in split_exponents(q, "psl2"):
            out.append(
                (ClassLabel("split", k=k),
                 psl_rep(fs, d_elt(fs, F.pow(fs.generator_g, k))))
            )
        for k in nonsplit_exponents(q, "psl2"):
            out.append(
                (ClassLabel("nonsplit", k=k),
                 psl_rep(fs, dprime_elt(fs, fs.ext.pow(fs.generator_xi, k))))
            )
        return out
    raise ValueError(f"unknown group {group!r}")


def class_size(q: int, group: str, label: ClassLabel) -> int:
    if group == "sl2":
        return {
            "central": 1,
            "split": q * (q + 1),
            "nonsplit": q * (q - 1),
            "unipotent": (q * q - 1) // 2,
        }[label.kind]
    if label.kind == "central":
        return 1
    if label.kind == "unipotent":
        return (q * q - 1) // 2
    if label.kind == "split":
        # d(a)Z is an involution iff a has order 4
        if q % 4 == 1 and label.k == (q - 1) // 4:
            return q * (q + 1) // 2
        return q * (q + 1)
    if q % 4 == 3 and label.k == (q + 1) // 4:
        return q * (q - 1) // 2
    return q * (q - 1)


def group_order(q: int, group: str) -> int:
    n = q * (q * q - 1)
    return n if group == "sl2" else n // 2


@lru_cache(maxsize=None)
def _dlog_split(q: int) -> dict:
    fs = build_field(q)
    out, x = {}, 1
    for k in range(q - 1):
        out[x] = k
        x = fs.field.mul(x, fs.generator_g)
    return out


@lru_cache(maxsize=None)
def _dlog_nonsplit(q: int) -> dict:
    fs = build_field(q)
    out, x = {}, fs.ext.enc(1, 0)
    for k in range(q + 1):
        out[x] = k
        x = fs.ext.mul(x, fs.generator_xi)
    return out


def identify_class(g, q: int, group: str) -> ClassLabel:
    """Conjugacy class of g, by trace plus residue/discrete-log data."""
    fs = build_field(q)
    F, E = fs.field, fs.ext
    a, b, c, d = g
    t = F.add(a, d)
    I = identity_mat(fs)
    mI = mat_neg(F, I)
    if g == I:
        return ClassLabel("central", eps=1)
    if g == mI:
        if group == "psl2":
            raise ValueError("not a canonical PSL2 representative")
        return ClassLabel("central", eps=-1)
    two = F.add(1, 1)
    if t == two or t == F.neg(two):
        eps = 1 if t == two else -1
        h = g if eps == 1 else mat_neg(F, g)
        ha, hb, hc, hd = h
        v1, v2 = F.sub(ha, 1), hc
        if v1 == 0 and v2 == 0:
            v1, v2 = hb, F.sub(hd, 1)
        if v2 == 0:
            x = I
        else:
            x = (0, F.inv(v2), F.neg(v2), v1)
        hh = mat_mul(F, mat_mul(F, x, h), mat_inv(F, x))
        assert hh[0] == 1 and hh[2] == 0 and hh[3] == 1, "triangularisation failed"
        cval = hh[1]
        assert cval != 0
        tau = 1 if F.is_square(cval) else -1
        if group == "psl2":
            return ClassLabel("unipotent", eps=1, tau=tau)
        return ClassLabel("unipotent", eps=eps, tau=tau)
    # semisimple: eigenvalue of x^2 - t x + 1
    disc = F.sub(F.mul(t, t), F.mul(two, two))
    root = next((s for s in range(q) if F.mul(s, s) == disc), None)
    if root is not None:
        lam = F.mul(F.add(t, root), F.inv(two))
        k = _dlog_split(q)[lam]
        kk = (
            psl_torus_canonical(q - 1, k)
            if group == "psl2"
            else sl_torus_canonical(q - 1, k)
        )
        return ClassLabel("split", k=kk)
    # eigenvalue in GF(q^2): sqrt(disc) lies in the -1 eigenspace of
    # Frobenius, spanned by w = 2y + g1
    tE, dE = E.enc(t, 0), E.enc(disc, 0)
    w = E.enc(fs.modulus_poly2[1], two)
    root2 = next(
        s
        for s in (E.mul(E.enc(s1, 0), w) for s1 in range(1, q))
        if E.mul(s, s) == dE
    )
    lam = E.mul(E.add(tE, root2), E.enc(F.inv(two), 0))
    k = _dlog_nonsplit(q)[lam]
    kk = (
        psl_torus_canonical(q + 1, k)
        if group == "psl2"
        else sl_torus_canonical(q + 1, k)
    )
    return ClassLabel("nonsplit", k=kk)


# ---------------------------------------------------------------------------
# ell-subgroup chains


@dataclass(frozen=True)
class ColumnLabel:
    """One ell'-class of N_bar_v, with a symbolic preimage descriptor."""

    level: int
    kind: str  # central | split | nonsplit | unipotent | sigma | sigmap | one | torusbar | c3
    eps: int = 1
    k: int = 0
    tau: int = 1

    def is_identity(self) -> bool:
        return (self.kind == "central" and self.eps == 1) or self.kind == "one"

    def text(self) -> str:
        if self.kind == "central":
            return "I2" if self.eps == 1 else "-I2"
        if self.kind == "split":
            return f"d(g^{self.k})"
        if self.kind == "nonsplit":
            return f"d'(xi^{self.k})"
        if self.kind == "unipotent":
            return ("" if self.eps == 1 else "-") + ("u+" if self.tau == 1 else "u-")
        if self.kind == "sigma":
            return "s+" if self.tau == 1 else "s-"
        if self.kind == "sigmap":
            return "s'+" if self.tau == 1 else "s'-"
        if self.kind == "one":
            return "1"
        if self.kind == "torusbar":
            return f"t^{self.k}"
        return f"x^{self.k}"


@dataclass(frozen=True)
class ChainLevel:
    v: int
    vertex_name: str
    vertex_order: int
    gen_specs: tuple  # symbolic generator descriptors, resolved by resolve_element
    normalizer_name: str
    columns: tuple


@dataclass(frozen=True)
class SubgroupChain:
    q: int
    ell: int
    group: str
    regime: str  # "split" | "nonsplit" | "l2"
    n: int
    levels: tuple


def regime_of(q: int, ell: int, group: str) -> str:
    """Validate (q, ell, group) and name the regime."""
    p, _ = split_prime_power(q)
    if group not in ("sl2", "psl2"):
        raise UnsupportedRegime(f"unknown group {group!r}")
    if ell < 2 or any(ell % r == 0 for r in range(2, ell) if r * r <= ell):
        if ell < 2:
            raise UnsupportedRegime(f"ell={ell} is not prime")
    if ell == p:
        raise UnsupportedRegime(
            f"ell={ell} equals the defining characteristic of q={q}; "
            "supported: ell odd dividing q-1 or q+1, or ell=2 with q = +-3 mod 8"
        )
    if ell == 2:
        if q % 8 in (3, 5):
            return "l2"
        raise UnsupportedRegime(
            f"ell=2 requires q = +-3 mod 8, got q={q}; "
            "supported: ell odd dividing q-1 or q+1, or ell=2 with q = +-3 mod 8"
        )
    if group != "sl2":
        raise UnsupportedRegime(
            "odd ell is covered for SL2 only; "
            "supported: ell odd dividing q-1 or q+1, or ell=2 with q = +-3 mod 8"
        )
    if (q - 1) % ell == 0:
        return "split"
    if (q + 1) % ell == 0:
        return "nonsplit"
    raise UnsupportedRegime(
        f"ell={ell} divides neither q-1 nor q+1 for q={q}; "
        "supported: ell odd dividing q-1 or q+1, or ell=2 with q = +-3 mod 8"
    )


def _gamma_ellprime(q: int, ell: int) -> list:
    return split_exponents(q, "sl2", ell_restrict=ell_part(q - 1, ell))


def _gammap_ellprime(q: int, ell: int) -> list:
    return nonsplit_exponents(q, "sl2", ell_restrict=ell_part(q + 1, ell))


def _g_level_columns(q: int, ell: int, level: int = 1) -> list:
    cols = [ColumnLabel(level, "central", eps=1)]
    if ell != 2:
        cols.append(ColumnLabel(level, "central", eps=-1))
    cols += [ColumnLabel(level, "split", k=k) for k in _gamma_ellprime(q, ell)]
    cols += [ColumnLabel(level, "nonsplit", k=k) for k in _gammap_ellprime(q, ell)]
    if ell == 2:
        cols += [ColumnLabel(level, "unipotent", eps=1, tau=t) for t in (1, -1)]
    else:
        cols += [
            ColumnLabel(level, "unipotent", eps=e, tau=t)
            for e in (1, -1)
            for t in (1, -1)
        ]
    return cols


def ell_subgroup_chain(q: int, ell: int, group: str) -> SubgroupChain:
    regime = regime_of(q, ell, group)
    levels = []
    if regime in ("split", "nonsplit"):
        torus_order = q - 1 if regime == "split" else q + 1
        n = 0
        m = torus_order
        while m % ell == 0:
            n += 1
            m //= ell
        n_cols = []
        n_cols_kind = "split" if regime == "split" else "nonsplit"
        gamma = (
            _gamma_ellprime(q, ell) if regime == "split" else _gammap_ellprime(q, ell)
        )
        sig = "sigma" if regime == "split" else "sigmap"
        for v in range(1, n + 2):
            if v == 1:
                cols = tuple(_g_level_columns(q, ell))
                levels.append(
                    ChainLevel(1, "1", 1, (), "G", cols)
                )
                continue
            cols = [ColumnLabel(v, "central", eps=1), ColumnLabel(v, "central", eps=-1)]
            cols += [ColumnLabel(v, n_cols_kind, k=k) for k in gamma]
            cols += [ColumnLabel(v, sig, tau=t) for t in (1, -1)]
            gspec = (
                ("d", (q - 1) // ell ** (v - 1))
                if regime == "split"
                else ("dp", (q + 1) // ell ** (v - 1))
            )
            levels.append(
                ChainLevel(
                    v,
                    f"C{ell}^{v - 1}",
                    ell ** (v - 1),
                    (gspec,),
                    "N" if regime == "split" else "N'",
                    tuple(cols),
                )
            )
        return SubgroupChain(q, ell, group, regime, n, tuple(levels))

    # ell = 2, q = +-3 mod 8
    plus = q % 8 == 3  # 2-part sits in the nonsplit torus
    tor_kind = "nonsplit" if plus else "split"
    tor_exp = (q + 1) // 4 if plus else (q - 1) // 4
    gamma_bar = _gammap_ellprime(q, 2) if plus else _gamma_ellprime(q, 2)
    tor_gen = ("dp", tor_exp) if plus else ("d", tor_exp)
    sig_gen = ("sigmap", 1) if plus else ("sigma", 1)
    if group == "psl2":
        n = 2
        lv1 = ChainLevel(1, "1", 1, (), "G", tuple(_g_level_columns(q, 2)))
        cols2 = [ColumnLabel(2, "one")]
        cols2 += [ColumnLabel(2, "torusbar", k=k) for k in gamma_bar]
        lv2 = ChainLevel(2, "C2", 2, (tor_gen,), "D", tuple(cols2))
        cols3 = tuple(
            [ColumnLabel(3, "one")] + [ColumnLabel(3, "c3", k=j) for j in (1, 2)]
        )
        lv3 = ChainLevel(3, "C2xC2", 4, (tor_gen, sig_gen), "A4", cols3)
        return SubgroupChain(q, 2, group, "l2", n, (lv1, lv2, lv3))
    n = 3
    lv1 = ChainLevel(1, "1", 1, (), "G", tuple(_g_level_columns(q, 2)))
    cols2 = tuple(_g_level_columns(q, 2, level=2))  # same reps, taken mod Z
    lv2 = ChainLevel(2, "Z", 2, (("minusI", 0),), "G", cols2)
    cols3 = [ColumnLabel(3, "one")]
    cols3 += [ColumnLabel(3, "torusbar", k=k) for k in gamma_bar]
    lv3 = ChainLevel(3, "C4", 4, (tor_gen,), "N'" if plus else "N", tuple(cols3))
    cols4 = tuple(
        [ColumnLabel(4, "one")] + [ColumnLabel(4, "c3", k=j) for j in (1, 2)]
    )
    lv4 = ChainLevel(4, "Q8", 8, (tor_gen, sig_gen), "N(Q8)", cols4)
    return SubgroupChain(q, 2, group, "l2", n + 1, (lv1, lv2, lv3, lv4))


def ellprime_columns(chain: SubgroupChain, v: int) -> tuple:
    return chain.levels[v - 1].columns


def resolve_element(q: int, spec):
    """Turn a symbolic generator descriptor into an SL2(q) matrix."""
    fs = build_field(q)
    F = fs.field
    kind, k = spec
    if kind == "d":
        return d_elt(fs, F.pow(fs.generator_g, k))
    if kind == "dp":
        return dprime_elt(fs, fs.ext.pow(fs.generator_xi, k))
    if kind == "minusI":
        return mat_neg(F, identity_mat(fs))
    if kind == "sigma":
        return sigma_elt(fs)
    if kind == "sigmap":
        return sigma_prime_elt(q)
    raise ValueError(f"unknown element spec {spec!r}")

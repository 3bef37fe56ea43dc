"""Generic ordinary character tables, exactly over cyclotomic fields:
Irr(SL2(q)), Irr(PSL2(q)) (the characters with the centre in their kernel),
and Irr(N), Irr(N') for the dicyclic torus normalizers.

Character values are closed formulas in q and the class parameters; the
torus characters are alpha_j(g^k) = zeta_(q-1)^(jk) and theta_j(xi^k) =
zeta_(q+1)^(jk), with alpha_0/theta_0 the order-2 characters at
j = (q-+1)/2.  The square root of q0 is the literal quadratic Gauss sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import CycNum, cyc, gauss_sqrt_q0, zeta
from .errors import GroupMismatch, InvalidQ
from .groups import (
    ClassLabel,
    class_reps,
    class_size,
    group_order,
    nonsplit_exponents,
    split_exponents,
    split_prime_power,
)

_F = Fraction


@dataclass(frozen=True, order=True)
class CharId:
    """Irreducible character names.

    SL2/PSL2 kinds: "triv", "st", ("r", j), ("rp", j), ("r0", sign),
    ("rp0", sign).  Torus normalizer kinds: "one", "eps", ("ext", sign)
    for the two linear extensions of the order-2 torus character, and
    ("ind", j) for the induced degree-2 characters.
    """

    kind: str
    j: int = 0
    sign: int = 1

    def text(self) -> str:
        return {
            "triv": "1",
            "st": "St",
            "r": f"R(a{self.j})",
            "rp": f"R'(t{self.j})",
            "r0": f"R{'+' if self.sign == 1 else '-'}(a0)",
            "rp0": f"R'{'+' if self.sign == 1 else '-'}(t0)",
            "one": "1",
            "eps": "e",
            "ext": f"x{'+' if self.sign == 1 else '-'}(a0)",
            "ind": f"x(a{self.j})",
        }[self.kind]


def kappa(q: int) -> int:
    return 0 if q % 4 == 1 else 1


@lru_cache(maxsize=None)
def sqrt_q0(q: int) -> CycNum:
    return gauss_sqrt_q0(q)


def _sign_pow(base: int, j: int, k: int) -> int:
    """(-1)^(jk) shortcut for order-2 character values."""
    return -1 if (j * k) % 2 else 1


# ---------------------------------------------------------------------------
# closed-form value functions


def r_series_value(q: int, j: int, cls: ClassLabel) -> CycNum:
    """Common value pattern of R(alpha) for alpha = alpha_j, on classes.

    For j with alpha_j^2 != 1 this is the irreducible R(alpha_j); for
    other j it is the shared restriction of the exceptional family
    {R(alpha_j eta)} to ell'-classes.
    """
    m = q - 1
    if cls.kind == "central":
        a_eps = 1 if cls.eps == 1 else _sign_pow(m, j, 1)
        return cyc((q + 1) * a_eps)
    if cls.kind == "split":
        return zeta(m, j * cls.k) + zeta(m, -j * cls.k)
    if cls.kind == "nonsplit":
        return cyc(0)
    a_eps = 1 if cls.eps == 1 else _sign_pow(m, j, 1)
    return cyc(a_eps)


def rp_series_value(q: int, j: int, cls: ClassLabel) -> CycNum:
    """Common value pattern of R'(theta_j); see r_series_value."""
    m = q + 1
    if cls.kind == "central":
        t_eps = 1 if cls.eps == 1 else _sign_pow(m, j, 1)
        return cyc((q - 1) * t_eps)
    if cls.kind == "split":
        return cyc(0)
    if cls.kind == "nonsplit":
        return -(zeta(m, j * cls.k) + zeta(m, -j * cls.k))
    t_eps = 1 if cls.eps == 1 else _sign_pow(m, j, 1)
    return cyc(-t_eps)


def _alpha0(q: int, eps: int) -> int:
    return 1 if eps == 1 else (-1) ** ((q - 1) // 2)


def _theta0(q: int, eps: int) -> int:
    return 1 if eps == 1 else (-1) ** ((q + 1) // 2)


def sl2_char_value(q: int, cid: CharId, cls: ClassLabel) -> CycNum:
    if cid.kind == "triv":
        return cyc(1)
    if cid.kind == "st":
        return {
            "central": cyc(q),
            "split": cyc(1),
            "nonsplit": cyc(-1),
            "unipotent": cyc(0),
        }[cls.kind]
    if cid.kind == "r":
        return r_series_value(q, cid.j, cls)
    if cid.kind == "rp":
        return rp_series_value(q, cid.j, cls)
    if cid.kind == "r0":
        a0 = _alpha0(q, cls.eps if cls.kind in ("central", "unipotent") else 1)
        if cls.kind == "central":
            return cyc(_F(q + 1, 2) * a0)
        if cls.kind == "split":
            return cyc((-1) ** cls.k)
        if cls.kind == "nonsplit":
            return cyc(0)
        half = cyc(_F(1, 2))
        return (cyc(1) + cyc(cid.sign * cls.tau) * sqrt_q0(q)) * half * a0
    if cid.kind == "rp0":
        t0 = _theta0(q, cls.eps if cls.kind in ("central", "unipotent") else 1)
        if cls.kind == "central":
            return cyc(_F(q - 1, 2) * t0)
        if cls.kind == "split":
            return cyc(0)
        if cls.kind == "nonsplit":
            return cyc(-((-1) ** cls.k))
        half = cyc(_F(1, 2))
        return (cyc(-1) + cyc(cid.sign * cls.tau) * sqrt_q0(q)) * half * t0
    raise ValueError(f"{cid} is not an SL2 character id")


def dicyclic_char_value(q: int, torus: str, cid: CharId, cls: ClassLabel) -> CycNum:
    """Character values of N (torus="split") or N' (torus="nonsplit").

    Classes: central(eps), split/nonsplit(k) for the torus part, and
    sigma(tau) for the two classes outside the torus.
    """
    m = q - 1 if torus == "split" else q + 1
    ord2 = _alpha0(q, -1) if torus == "split" else _theta0(q, -1)
    if cid.kind == "one":
        return cyc(1)
    if cid.kind == "eps":
        return cyc(-1) if cls.kind == "sigma" else cyc(1)
    if cid.kind == "ext":
        if cls.kind == "central":
            return cyc(1 if cls.eps == 1 else ord2)
        if cls.kind in ("split", "nonsplit"):
            return cyc((-1) ** cls.k)
        root = cyc(1) if ord2 == 1 else zeta(4)
        return cyc(cid.sign * cls.tau) * root
    if cid.kind == "ind":
        j = cid.j
        if cls.kind == "central":
            lam = 1 if cls.eps == 1 else _sign_pow(m, j, 1)
            return cyc(2 * lam)
        if cls.kind in ("split", "nonsplit"):
            return zeta(m, j * cls.k) + zeta(m, -j * cls.k)
        return cyc(0)
    raise ValueError(f"{cid} is not a torus-normalizer character id")


# ---------------------------------------------------------------------------
# assembled tables


@dataclass
class CharacterTable:
    group: str  # "sl2" | "psl2" | "n" | "nprime"
    q: int
    order: int
    chars: tuple
    classes: tuple
    sizes: dict
    _values: dict

    def value(self, cid: CharId, cls: ClassLabel) -> CycNum:
        return self._values[(cid, cls)]

    def degree(self, cid: CharId) -> CycNum:
        return self.value(cid, self.classes[0])

    def row(self, cid: CharId) -> dict:
        return {cls: self._values[(cid, cls)] for cls in self.classes}


def _materialise(group, q, order, chars, classes, sizes, valfun) -> CharacterTable:
    vals = {(cid, cls): valfun(cid, cls) for cid in chars for cls in classes}
    return CharacterTable(group, q, order, tuple(chars), tuple(classes), sizes, vals)


def sl2_char_ids(q: int) -> list:
    ids = [CharId("triv"), CharId("st")]
    ids += [CharId("r", j=j) for j in split_exponents(q, "sl2")]
    ids += [CharId("rp", j=j) for j in nonsplit_exponents(q, "sl2")]
    ids += [CharId("r0", sign=1), CharId("r0", sign=-1)]
    ids += [CharId("rp0", sign=1), CharId("rp0", sign=-1)]
    return ids


def irr_sl2(q: int) -> CharacterTable:
    split_prime_power(q)
    if q < 3 or q % 2 == 0:
        raise InvalidQ(f"q={q} must be an odd prime power >= 3")
    classes = [lbl for lbl, _ in class_reps(q, "sl2")]
    sizes = {lbl: class_size(q, "sl2", lbl) for lbl in classes}
    return _materialise(
        "sl2",
        q,
        group_order(q, "sl2"),
        sl2_char_ids(q),
        classes,
        sizes,
        lambda cid, cls: sl2_char_value(q, cid, cls),
    )


def has_central_kernel(q: int, cid: CharId) -> bool:
    """Whether the SL2(q) character descends to PSL2(q)."""
    if cid.kind in ("triv", "st"):
        return True
    if cid.kind == "r":
        return cid.j % 2 == 0
    if cid.kind == "rp":
        return cid.j % 2 == 0
    if cid.kind == "r0":
        return q % 4 == 1
    if cid.kind == "rp0":
        return q % 4 == 3
    raise ValueError(cid)


def irr_psl2(q: int) -> CharacterTable:
    split_prime_power(q)
    if q < 3 or q % 2 == 0:
        raise InvalidQ(f"q={q} must be an odd prime power >= 3")
    chars = [cid for cid in sl2_char_ids(q) if has_central_kernel(q, cid)]
    classes = [lbl for lbl, _ in class_reps(q, "psl2")]
    sizes = {lbl: class_size(q, "psl2", lbl) for lbl in classes}
    return _materialise(
        "psl2",
        q,
        group_order(q, "psl2"),
        chars,
        classes,
        sizes,
        lambda cid, cls: sl2_char_value(q, cid, cls),
    )


def irr_dicyclic(q: int, torus: str) -> CharacterTable:
    """Character table of N = <T, sigma> (split) or N' = <T', sigma'>."""
    split_prime_power(q)
    m = q - 1 if torus == "split" else q + 1
    if m < 4:
        raise InvalidQ(f"torus order {m} < 4 has no dicyclic normalizer table")
    tor_kind = "split" if torus == "split" else "nonsplit"
    exps = (
        split_exponents(q, "sl2") if torus == "split" else nonsplit_exponents(q, "sl2")
    )
    chars = [CharId("one"), CharId("eps"), CharId("ext", sign=1), CharId("ext", sign=-1)]
    chars += [CharId("ind", j=j) for j in exps]
    classes = [ClassLabel("central", eps=1), ClassLabel("central", eps=-1)]
    classes += [ClassLabel("sigma", tau=1), ClassLabel("sigma", tau=-1)]
    classes += [ClassLabel(tor_kind, k=k) for k in exps]
    sizes = {}
    for cls in classes:
        if cls.kind == "central":
            sizes[cls] = 1
        elif cls.kind == "sigma":
            sizes[cls] = m // 2
        else:
            sizes[cls] = 2
    return _materialise(
        "n" if torus == "split" else "nprime",
        q,
        2 * m,
        chars,
        classes,
        sizes,
        lambda cid, cls: dicyclic_char_value(q, torus, cid, cls),
    )


def inner_product(chi, psi, table: CharacterTable) -> CycNum:
    """(1/|G|) sum over classes of |class| chi(c) conj(psi(c)), exact.

    chi and psi may be CharIds of the table or dicts class -> CycNum.
    """

    def as_row(x):
        if isinstance(x, CharId):
            if x not in table.chars:
                raise GroupMismatch(f"{x} is not a character of this table")
            return table.row(x)
        return x

    f, g = as_row(chi), as_row(psi)
    from .cyclotomic import cyc_sum

    acc = cyc_sum(
        cyc(table.sizes[cls]) * f[cls] * g[cls].conjugate()
        for cls in table.classes
    )
    return acc * cyc(_F(1, table.order))


def row_orthogonality_ok(tab: CharacterTable) -> bool:
    from .cyclotomic import cyc_sum

    rows = {cid: tab.row(cid) for cid in tab.chars}
    conj = {cid: {cls: v.conjugate() for cls, v in rows[cid].items()}
            for cid in tab.chars}
    w = cyc(_F(1, tab.order))
    for i, c1 in enumerate(tab.chars):
        for c2 in tab.chars[i:]:
            got = cyc_sum(
                cyc(tab.sizes[cls]) * rows[c1][cls] * conj[c2][cls]
                for cls in tab.classes
            ) * w
            if got != cyc(1 if c1 == c2 else 0):
                return False
    return True


def column_orthogonality_ok(tab: CharacterTable) -> bool:
    """Second orthogonality: sum over chars of chi(c) conj(chi(c')) is
    |C_G(c)| delta_(c,c')."""
    from .cyclotomic import cyc_sum

    cols = {cls: [tab.value(cid, cls) for cid in tab.chars] for cls in tab.classes}
    conj = {cls: [v.conjugate() for v in cols[cls]] for cls in tab.classes}
    for i, c1 in enumerate(tab.classes):
        for c2 in tab.classes[i:]:
            want = cyc(tab.order // tab.sizes[c1]) if c1 == c2 else cyc(0)
            got = cyc_sum(a * b for a, b in zip(cols[c1], conj[c2]))
            if got != want:
                return False
    return True


def borel_permutation_character(q: int, group: str) -> dict:
    """Fixed-point counts of class representatives on G/B (the projective
    line), as a class function; equals 1 + St."""
    out = {}
    for lbl, _ in class_reps(q, group):
        if lbl.kind == "central":
            out[lbl] = cyc(q + 1)
        elif lbl.kind == "split":
            out[lbl] = cyc(2)
        elif lbl.kind == "nonsplit":
            out[lbl] = cyc(0)
        else:
            out[lbl] = cyc(1)
    return out

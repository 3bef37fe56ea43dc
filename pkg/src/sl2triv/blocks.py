"""ell-block data for SL2(q), PSL2(q) and the torus normalizers: defect
groups, Brauer trees with type function, decomposition matrices for the
quaternion/Klein-four principal blocks, PIM characters, and Brauer
correspondents.

Blocks are table-driven (closed-form character partitions in q and ell);
the species oracle cross-checks them on enumerable q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as _FR

from .chartables import CharId, r_series_value, rp_series_value, sl2_char_value
from .cyclotomic import CycNum, cyc
from .errors import NoCorrespondentNeeded, NotCyclicDefect
from .groups import (
    ClassLabel,
    ell_part,
    nonsplit_exponents,
    regime_of,
    sl_torus_canonical,
    split_exponents,
)


@dataclass(frozen=True)
class ExcBundle:
    """A sum of exceptional characters sharing their ell'-restriction.

    series is "r"/"rp" (Harish-Chandra / Deligne-Lusztig family of the
    ambient group) or "ind"/"indp" (induced characters of N / N').
    base_j is the ell'-part exponent; count the number of constituents.
    constituents lists the exact canonical exponents when the bundle is
    the full exceptional vertex of a block (needed at ell-singular
    classes); partial bundles carry None there.
    """

    series: str
    base_j: int
    count: int
    constituents: tuple | None = None

    def text(self) -> str:
        core = {"r": "Xi", "rp": "Xi'", "ind": "Xi^N", "indp": "Xi^N'"}[self.series]
        return f"{core}[j={self.base_j},n={self.count}]"


@dataclass(frozen=True)
class BrauerTree:
    vertices: tuple  # ((CharId | ExcBundle, sign), ...) along the line
    edges: tuple  # simple module names, one per adjacent pair


@dataclass(frozen=True)
class Block:
    id: str
    group: str  # "sl2" | "psl2"
    q: int
    ell: int
    defect_name: str
    defect_order: int
    block_type: str  # principal | quasi-isolated | nilpotent | defect-zero
    chars: tuple  # non-exceptional CharIds, in tree order
    bundle: ExcBundle | None
    e: int
    m: int
    tree_vertices: tuple | None  # (item, sign) pairs
    tree_edges: tuple | None
    dec_rows: tuple | None = None  # CharIds
    dec_cols: tuple | None = None  # simple names
    dec_entries: tuple | None = None
    W_is_trivial: bool = True

    def irr_count(self) -> int:
        return len(self.chars) + (self.bundle.count if self.bundle else 0)


def _full_bundle(series: str, q: int, base_j: int, ell: int, up_to_inverse: bool):
    """The full exceptional vertex over the Sylow ell-part of one torus."""
    m = q - 1 if series == "r" else q + 1
    ln = ell_part(m, ell)
    step = m // ln
    if up_to_inverse:
        ts = range(1, (ln - 1) // 2 + 1)
    else:
        ts = range(1, ln)
    exps = tuple(sl_torus_canonical(m, base_j + t * step) for t in ts)
    return ExcBundle(series, base_j, len(exps), exps)


def block_distribution(q: int, ell: int, group: str) -> tuple:
    regime = regime_of(q, ell, group)
    if regime == "split":
        return _blocks_odd(q, ell, "split")
    if regime == "nonsplit":
        return _blocks_odd(q, ell, "nonsplit")
    if group == "sl2":
        return _blocks_l2_sl2(q)
    return _blocks_l2_psl2(q)


def _blocks_odd(q: int, ell: int, regime: str) -> tuple:
    tor_m = q - 1 if regime == "split" else q + 1
    other_m = q + 1 if regime == "split" else q - 1
    ln = ell_part(tor_m, ell)
    n = 0
    t = ln
    while t > 1:
        n += 1
        t //= ell
    series = "r" if regime == "split" else "rp"
    half_id = CharId("r0" if regime == "split" else "rp0", sign=1)
    half_id_m = CharId("r0" if regime == "split" else "rp0", sign=-1)
    other_half_p = CharId("rp0" if regime == "split" else "r0", sign=1)
    other_half_m = CharId("rp0" if regime == "split" else "r0", sign=-1)
    other_series = "rp" if regime == "split" else "r"
    defect = f"C{ell}^{n}"
    me, other = ("A", "A'") if regime == "split" else ("A'", "A")
    blocks = []
    # principal block
    b0_bundle = _full_bundle(series, q, 0, ell, up_to_inverse=True)
    if regime == "split":
        verts = ((CharId("triv"), 1), (b0_bundle, -1), (CharId("st"), 1))
    else:
        verts = ((CharId("triv"), 1), (CharId("st"), -1), (b0_bundle, 1))
    blocks.append(
        Block(
            "B0", "sl2", q, ell, defect, ln, "principal",
            (CharId("triv"), CharId("st")), b0_bundle, 2, b0_bundle.count,
            verts, ("S1", "S2"),
        )
    )
    # quasi-isolated block on the order-2 character of the same torus
    qi_bundle = _full_bundle(series, q, tor_m // 2, ell, up_to_inverse=True)
    sgn = 1 if regime == "split" else -1
    blocks.append(
        Block(
            f"{me}0", "sl2", q, ell, defect, ln, "quasi-isolated",
            (half_id, half_id_m), qi_bundle, 2, qi_bundle.count,
            ((half_id, sgn), (qi_bundle, -sgn), (half_id_m, sgn)),
            ("S1", "S2"),
        )
    )
    # nilpotent blocks on the ell'-characters of the same torus
    exps = (
        split_exponents(q, "sl2", ell_restrict=ln)
        if regime == "split"
        else nonsplit_exponents(q, "sl2", ell_restrict=ln)
    )
    for j in exps:
        bundle = _full_bundle(series, q, j, ell, up_to_inverse=False)
        cid = CharId(series, j=j)
        blocks.append(
            Block(
                f"{me}[{j}]", "sl2", q, ell, defect, ln, "nilpotent",
                (cid,), bundle, 1, bundle.count,
                ((cid, sgn), (bundle, -sgn)), ("S1",),
            )
        )
    # defect-zero blocks on the other torus
    blocks.append(
        Block(f"{other}0+", "sl2", q, ell, "1", 1, "defect-zero",
              (other_half_p,), None, 1, 0, None, None)
    )
    blocks.append(
        Block(f"{other}0-", "sl2", q, ell, "1", 1, "defect-zero",
              (other_half_m,), None, 1, 0, None, None)
    )
    for j in (
        nonsplit_exponents(q, "sl2") if regime == "split" else split_exponents(q, "sl2")
    ):
        cid = CharId(other_series, j=j)
        blocks.append(
            Block(f"{other}[{j}]", "sl2", q, ell, "1", 1, "defect-zero",
                  (cid,), None, 1, 0, None, None)
        )
    return tuple(blocks)


def _blocks_l2_sl2(q: int) -> tuple:
    plus = q % 8 == 3
    blocks = []
    last = CharId("rp", j=(q + 1) // 4) if plus else CharId("r", j=(q - 1) // 4)
    dec_rows = (
        CharId("triv"), CharId("st"),
        CharId("rp0", sign=1), CharId("rp0", sign=-1),
        CharId("r0", sign=1), CharId("r0", sign=-1),
        last,
    )
    dec_entries = (
        (1, 0, 0), (1, 1, 1), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1),
        (0, 1, 1) if plus else (2, 1, 1),
    )
    blocks.append(
        Block(
            "B0", "sl2", q, 2, "Q8", 8, "principal",
            dec_rows, None, 3, 0, None, None,
            dec_rows=dec_rows, dec_cols=("k", "S+", "S-"), dec_entries=dec_entries,
        )
    )
    # split-torus family
    for j in split_exponents(q, "sl2", ell_restrict=ell_part(q - 1, 2)):
        cid = CharId("r", j=j)
        if plus:  # C2 defect: two ordinary characters, no exceptional vertex
            other = CharId("r", j=sl_torus_canonical(q - 1, j + (q - 1) // 2))
            sign = 1 if sl2_char_value(q, cid, ClassLabel("central", eps=-1)).sign() > 0 else -1
            blocks.append(
                Block(f"A[{j}]", "sl2", q, 2, "C2", 2, "nilpotent",
                      (cid, other), None, 1, 1,
                      ((cid, sign), (other, -sign)), ("S_a",))
            )
        else:  # C4 defect
            bundle = _full_bundle("r", q, j, 2, up_to_inverse=False)
            blocks.append(
                Block(f"A[{j}]", "sl2", q, 2, "C4", 4, "nilpotent",
                      (cid,), bundle, 1, 3,
                      ((cid, 1), (bundle, -1)), ("S_a",))
            )
    # nonsplit-torus family
    for j in nonsplit_exponents(q, "sl2", ell_restrict=ell_part(q + 1, 2)):
        cid = CharId("rp", j=j)
        if plus:  # C4 defect
            bundle = _full_bundle("rp", q, j, 2, up_to_inverse=False)
            blocks.append(
                Block(f"A'[{j}]", "sl2", q, 2, "C4", 4, "nilpotent",
                      (cid,), bundle, 1, 3,
                      ((cid, 1), (bundle, -1)), ("S_t",))
            )
        else:  # C2 defect
            other = CharId("rp", j=sl_torus_canonical(q + 1, j + (q + 1) // 2))
            sign = 1 if sl2_char_value(q, cid, ClassLabel("central", eps=-1)).sign() > 0 else -1
            blocks.append(
                Block(f"A'[{j}]", "sl2", q, 2, "C2", 2, "nilpotent",
                      (cid, other), None, 1, 1,
                      ((cid, sign), (other, -sign)), ("S_t",))
            )
    return tuple(blocks)


def _involution_class(q: int) -> ClassLabel:
    """The unique involution class of PSL2(q), as an SL2 torus label."""
    if q % 4 == 1:
        return ClassLabel("split", k=(q - 1) // 4)
    return ClassLabel("nonsplit", k=(q + 1) // 4)


def _blocks_l2_psl2(q: int) -> tuple:
    plus = q % 8 == 3
    blocks = []
    if plus:
        dec_rows = (CharId("triv"), CharId("st"),
                    CharId("rp0", sign=1), CharId("rp0", sign=-1))
        dec_entries = ((1, 0, 0), (1, 1, 1), (0, 1, 0), (0, 0, 1))
    else:
        dec_rows = (CharId("triv"), CharId("st"),
                    CharId("r0", sign=1), CharId("r0", sign=-1))
        dec_entries = ((1, 0, 0), (1, 1, 1), (1, 1, 0), (1, 0, 1))
    blocks.append(
        Block(
            "B0", "psl2", q, 2, "C2xC2", 4, "principal",
            dec_rows, None, 3, 0, None, None,
            dec_rows=dec_rows, dec_cols=("k", "S+", "S-"), dec_entries=dec_entries,
        )
    )
    inv = _involution_class(q)
    for j in split_exponents(q, "sl2", ell_restrict=ell_part(q - 1, 2)):
        cid = CharId("r", j=j)
        if plus:  # defect zero in PSL2
            blocks.append(
                Block(f"A[{j}]", "psl2", q, 2, "1", 1, "defect-zero",
                      (cid,), None, 1, 0, None, None)
            )
        else:  # C2 defect: R(alpha) -- R(alpha eta^2)
            other = CharId("r", j=sl_torus_canonical(q - 1, j + (q - 1) // 2))
            sign = 1 if sl2_char_value(q, cid, inv).sign() > 0 else -1
            blocks.append(
                Block(f"A[{j}]", "psl2", q, 2, "C2", 2, "nilpotent",
                      (cid, other), None, 1, 1,
                      ((cid, sign), (other, -sign)), ("S_a",))
            )
    for j in nonsplit_exponents(q, "sl2", ell_restrict=ell_part(q + 1, 2)):
        cid = CharId("rp", j=j)
        if plus:  # C2 defect
            other = CharId("rp", j=sl_torus_canonical(q + 1, j + (q + 1) // 2))
            sign = 1 if sl2_char_value(q, cid, inv).sign() > 0 else -1
            blocks.append(
                Block(f"A'[{j}]", "psl2", q, 2, "C2", 2, "nilpotent",
                      (cid, other), None, 1, 1,
                      ((cid, sign), (other, -sign)), ("S_t",))
            )
        else:
            blocks.append(
                Block(f"A'[{j}]", "psl2", q, 2, "1", 1, "defect-zero",
                      (cid,), None, 1, 0, None, None)
            )
    return tuple(blocks)


# ---------------------------------------------------------------------------
# derived data


def brauer_tree(b: Block) -> BrauerTree:
    if b.tree_vertices is None:
        raise NotCyclicDefect(
            f"block {b.id} of {b.group}(q={b.q}) at ell={b.ell} has defect "
            f"{b.defect_name}; it carries a decomposition matrix instead"
        )
    return BrauerTree(b.tree_vertices, b.tree_edges)


def item_value(q: int, item, cls: ClassLabel) -> CycNum:
    """Exact value of a CharId or full ExcBundle at any SL2 class."""
    if isinstance(item, CharId):
        return sl2_char_value(q, item, cls)
    assert item.constituents is not None, "partial bundle has no full values"
    series = {"r": r_series_value, "rp": rp_series_value}[item.series]
    acc = cyc(0)
    for j in item.constituents:
        acc = acc + series(q, j, cls)
    return acc


def order_ell_class(q: int, ell: int, group: str) -> ClassLabel:
    """Class of a generator of the unique order-ell subgroup of the defect
    chain (used by the type function)."""
    if ell != 2:
        if (q - 1) % ell == 0:
            return ClassLabel("split", k=sl_torus_canonical(q - 1, (q - 1) // ell))
        return ClassLabel("nonsplit", k=sl_torus_canonical(q + 1, (q + 1) // ell))
    if group == "sl2":
        return ClassLabel("central", eps=-1)
    return _involution_class(q)


def verify_type_function(b: Block) -> bool:
    """Recompute vertex signs from character values at the order-ell element."""
    if b.tree_vertices is None:
        return True
    x = order_ell_class(b.q, b.ell, b.group)
    for item, sign in b.tree_vertices:
        if item_value(b.q, item, x).sign() != sign:
            return False
    signs = [s for _, s in b.tree_vertices]
    return all(signs[i] == -signs[i + 1] for i in range(len(signs) - 1))


def pim_characters(b: Block) -> tuple:
    """One ordinary-character multiset per simple module of the block."""
    if b.block_type == "defect-zero":
        return (((b.chars[0], 1),),)
    if b.dec_entries is not None:
        out = []
        for col in range(len(b.dec_cols)):
            out.append(
                tuple(
                    (cid, row[col])
                    for cid, row in zip(b.dec_rows, b.dec_entries)
                    if row[col]
                )
            )
        return tuple(out)
    verts = [item for item, _ in b.tree_vertices]
    return tuple(
        ((verts[i], 1), (verts[i + 1], 1)) for i in range(len(verts) - 1)
    )


def pim_degree(q: int, multiset) -> int:
    one = ClassLabel("central", eps=1)
    acc = cyc(0)
    for item, mult in multiset:
        if isinstance(item, ExcBundle):
            v = item_value(q, item, one)
        else:
            v = sl2_char_value(q, item, one)
        acc = acc + cyc(mult) * v
    return acc.to_int()


def brauer_correspondent(b: Block):
    """The Brauer correspondent block of N (ell | q-1) or N' (ell | q+1)."""
    if b.defect_order == 1:
        raise NoCorrespondentNeeded(f"block {b.id} has defect zero")
    if b.ell == 2:
        raise NotCyclicDefect("the ell=2 table is assembled via inflation, "
                              "not via N-side correspondents")
    q, ell = b.q, b.ell
    regime = "split" if (q - 1) % ell == 0 else "nonsplit"
    series = "ind" if regime == "split" else "indp"
    tor_m = q - 1 if regime == "split" else q + 1
    ln = ell_part(tor_m, ell)
    group = "n" if regime == "split" else "nprime"
    if b.block_type == "principal":
        bundle = _bundle_n_side(series, q, 0, ell, half=True)
        return NBlock(
            "B0", group, q, ell,
            (CharId("one"), CharId("eps")), bundle,
            ((CharId("one"), 1), (bundle, -1), (CharId("eps"), 1)),
        )
    if b.block_type == "quasi-isolated":
        bundle = _bundle_n_side(series, q, tor_m // 2, ell, half=True)
        return NBlock(
            "b0", group, q, ell,
            (CharId("ext", sign=1), CharId("ext", sign=-1)), bundle,
            ((CharId("ext", sign=1), 1), (bundle, -1), (CharId("ext", sign=-1), 1)),
        )
    j = b.chars[0].j
    bundle = _bundle_n_side(series, q, j, ell, half=False)
    return NBlock(
        f"b[{j}]", group, q, ell,
        (CharId("ind", j=j),), bundle,
        ((CharId("ind", j=j), 1), (bundle, -1)),
    )


def _bundle_n_side(series, q, base_j, ell, half):
    m = q - 1 if series == "ind" else q + 1
    ln = ell_part(m, ell)
    step = m // ln
    ts = range(1, (ln - 1) // 2 + 1) if half else range(1, ln)
    exps = tuple(sl_torus_canonical(m, base_j + t * step) for t in ts)
    return ExcBundle(series, base_j, len(exps), exps)


@dataclass(frozen=True)
class NBlock:
    """A block of the torus normalizer (star-shaped Brauer tree)."""

    id: str
    group: str  # "n" | "nprime"
    q: int
    ell: int
    chars: tuple
    bundle: ExcBundle
    tree_vertices: tuple


# ---------------------------------------------------------------------------
# central-character cross-check


def central_character_partition(q: int, ell: int, group: str) -> set:
    """Partition Irr into ell-blocks by reducing the central characters
    omega_chi(class sum) = |class| chi(c) / chi(1) modulo a prime above
    ell, entirely independently of the table-driven block lists.

    Reduction: express each value (an algebraic integer) over the integral
    power basis of its cyclotomic field and map zeta_M to a root of unity
    of order M_(ell') in GF(ell^r)."""
    from math import gcd

    from . import chartables as ct
    from .cyclotomic import power_coords
    from .groups import GF, _first_irreducible, class_size

    tab = ct.irr_sl2(q) if group == "sl2" else ct.irr_psl2(q)
    omegas = {}
    M = 1
    for cid in tab.chars:
        deg = tab.degree(cid).to_rational()
        for cls in tab.classes:
            w = tab.value(cid, cls) * cyc(
                _FR(class_size(q, group, cls), 1) / deg
            )
            omegas[(cid, cls)] = w
            M = M * w.m // gcd(M, w.m)
    M_ellprime = M
    while M_ellprime % ell == 0:
        M_ellprime //= ell
    r = 1
    while (ell**r - 1) % M_ellprime:
        r += 1
    F = GF(ell, r, _first_irreducible(ell, r) if r > 1 else ())
    gen = next(a for a in range(1, ell**r) if F.order(a) == ell**r - 1)
    w0 = F.pow(gen, (ell**r - 1) // M_ellprime)

    def reduce_mod(a) -> tuple:
        coords = power_coords(a)
        root = F.pow(w0, (M // a.m) % M_ellprime) if a.m > 1 else 1
        acc, p = 0, 1
        for c in coords:
            assert c.denominator == 1, f"non-integral central character {a}"
            acc = F.add(acc, F.mul(c.numerator % ell, p))
            p = F.mul(p, root)
        return acc

    sig = {}
    for cid in tab.chars:
        sig[cid] = tuple(reduce_mod(omegas[(cid, cls)]) for cls in tab.classes)
    parts = {}
    for cid, s in sig.items():
        parts.setdefault(s, set()).add(cid)
    return {frozenset(p) for p in parts.values()}


def table_block_partition(q: int, ell: int, group: str) -> set:
    """The character partition given by block_distribution, for comparison."""
    out = set()
    for b in block_distribution(q, ell, group):
        members = set(b.chars)
        if b.bundle:
            members.update(CharId(b.bundle.series, j=j) for j in b.bundle.constituents)
        out.add(frozenset(members))
    return out


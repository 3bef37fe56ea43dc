"""Ground-truth certification at desk scale.

The group is enumerated explicitly; the species value of a permutation
module k[G/P] at a column (Q_v, s) is the number of cosets xP fixed by
<Q_v, s~>, with s~ the designated preimage of the column representative.
Every tested permutation module must decompose over the assembled table
rows with non-negative integer coefficients, every row must be realized
by some tested module, and the level-1 species must agree with the
induced permutation character computed independently from the generic
character table.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass

from . import chartables as ct
from .cyclotomic import cyc
from .errors import TooLarge
from .groups import (
    ClassLabel,
    ColumnLabel,
    build_field,
    class_size,
    d_elt,
    dprime_elt,
    ell_subgroup_chain,
    group_order,
    identify_class,
    identity_mat,
    mat_inv,
    mat_mul,
    mat_neg,
    psl_rep,
    psl_torus_canonical,
    regime_of,
    resolve_element,
    sigma_elt,
    sigma_prime_elt,
    u_elt,
)
from .linalg import SpeciesSolver, certify_invertible
from .trivsource import TrivSourceTable, assemble, structural_checks

DEFAULT_BUDGET = 5000


def default_budget() -> int:
    return int(os.environ.get("SL2TRIV_BUDGET", DEFAULT_BUDGET))


class EnumGroup:
    """SL2(q) or PSL2(q), fully enumerated."""

    def __init__(self, q: int, group: str, budget: int | None = None):
        budget = default_budget() if budget is None else budget
        order = group_order(q, group)
        if order > budget:
            raise TooLarge(
                f"|{group}(q={q})| = {order} exceeds enumeration budget {budget}"
            )
        self.q = q
        self.group = group
        self.fs = build_field(q)
        F = self.fs.field
        elems = []
        for a in range(1, q):
            ainv = F.inv(a)
            for b in range(q):
                for c in range(q):
                    elems.append((a, b, c, F.mul(F.add(1, F.mul(b, c)), ainv)))
        for b in range(1, q):
            mbinv = F.neg(F.inv(b))
            for d in range(q):
                elems.append((0, b, mbinv, d))
        assert len(elems) == q * (q * q - 1)
        if group == "psl2":
            elems = sorted({psl_rep(self.fs, m) for m in elems})
        else:
            elems = sorted(elems)
        self.elements = elems
        self.identity = identity_mat(self.fs)

    def mul(self, x, y):
        z = mat_mul(self.fs.field, x, y)
        return psl_rep(self.fs, z) if self.group == "psl2" else z

    def inv(self, x):
        z = mat_inv(self.fs.field, x)
        return psl_rep(self.fs, z) if self.group == "psl2" else z

    def embed(self, m):
        """Map an SL2 matrix into this group."""
        return psl_rep(self.fs, m) if self.group == "psl2" else m

    def closure(self, gens):
        gens = [self.embed(g) for g in gens]
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = new
        return sorted(seen)

    def conjugate(self, g, x):
        return self.mul(self.mul(g, x), self.inv(g))


def order_three_normalizer_element(G: EnumGroup, sylow):
    """First order-3 element normalizing the given Sylow subgroup."""
    syl = set(sylow)
    for x in G.elements:
        if x == G.identity:
            continue
        x2 = G.mul(x, x)
        if G.mul(x2, x) != G.identity:
            continue
        if all(G.conjugate(x, s) in syl for s in sylow):
            return x
    raise AssertionError("no order-3 normalizing element found")


@dataclass
class ColumnData:
    label: ColumnLabel
    vertex_gens: list  # elements of the enumerated group
    preimage: object  # element of the enumerated group


def _column_preimage(G: EnumGroup, col: ColumnLabel, x3):
    q = G.q
    fs = G.fs
    F = fs.field
    if col.kind == "central":
        m = identity_mat(fs)
        return G.embed(m if col.eps == 1 else mat_neg(F, m))
    if col.kind == "split":
        return G.embed(d_elt(fs, F.pow(fs.generator_g, col.k)))
    if col.kind == "nonsplit":
        return G.embed(dprime_elt(fs, fs.ext.pow(fs.generator_xi, col.k)))
    if col.kind == "unipotent":
        m = u_elt(fs, col.tau)
        if col.eps == -1:
            m = mat_neg(F, m)
        return G.embed(m)
    if col.kind == "sigma":
        m = sigma_elt(fs)
        if col.tau == -1:
            m = mat_mul(F, m, d_elt(fs, fs.nonsquare_z0))
        return G.embed(m)
    if col.kind == "sigmap":
        m = sigma_prime_elt(q)
        if col.tau == -1:
            m = mat_mul(F, m, dprime_elt(fs, fs.generator_xi))
        return G.embed(m)
    if col.kind == "one":
        return G.identity
    if col.kind == "torusbar":
        if q % 8 == 3:
            return G.embed(dprime_elt(fs, fs.ext.pow(fs.generator_xi, col.k)))
        return G.embed(d_elt(fs, F.pow(fs.generator_g, col.k)))
    if col.kind == "c3":
        out = x3
        for _ in range(col.k - 1):
            out = G.mul(out, x3)
        return out
    raise ValueError(col)


def column_data(G: EnumGroup, table: TrivSourceTable) -> list:
    chain = ell_subgroup_chain(table.q, table.ell, table.group)
    level_gens = {}
    for lv in chain.levels:
        level_gens[lv.v] = [G.embed(resolve_element(table.q, s)) for s in lv.gen_specs]
    x3 = None
    if table.regime == "l2":
        top = chain.levels[-1]
        sylow = G.closure(level_gens[top.v])
        assert len(sylow) == top.vertex_order
        x3 = order_three_normalizer_element(G, sylow)
    out = []
    for col in table.columns:
        out.append(
            ColumnData(col, level_gens[col.level], _column_preimage(G, col, x3))
        )
    return out


def coset_table(G: EnumGroup, subgroup):
    """Coset reps of G/P and the element -> coset index map."""
    elem2coset = {}
    reps = []
    for g in G.elements:
        if g in elem2coset:
            continue
        idx = len(reps)
        reps.append(g)
        for p in subgroup:
            elem2coset[G.mul(g, p)] = idx
    return reps, elem2coset


def fixed_cosets(G: EnumGroup, reps, elem2coset, gens) -> int:
    count = 0
    for i, r in enumerate(reps):
        if all(elem2coset[G.mul(h, r)] == i for h in gens):
            count += 1
    return count


def species_vector(G: EnumGroup, cols, subgroup) -> list:
    reps, elem2coset = coset_table(G, subgroup)
    out = []
    for cd in cols:
        gens = list(cd.vertex_gens)
        if cd.preimage != G.identity:
            gens.append(cd.preimage)
        if not gens:
            out.append(len(reps))
            continue
        out.append(fixed_cosets(G, reps, elem2coset, gens))
    return out


def decompose(vec, table: TrivSourceTable):
    """Coefficients of a species vector over the table rows.

    Returns (coefficients, ok) where ok records whether all coefficients
    are non-negative integers; raises SingularTable if the table rows do
    not determine a unique solution."""
    from .errors import SingularTable

    solver = SpeciesSolver(table.matrix)
    if not solver.full_rank:
        raise SingularTable("table rows are rationally dependent")
    c = solver.solve(vec)
    if c is None:
        return None, False
    return c, all(x.denominator == 1 and x >= 0 for x in c)


def perm_species(q, ell, group, subgroup_gens, column, budget=None) -> int:
    """Fixed-coset count of <Q_v, s~> on G/P for a single column."""
    table = assemble(q, ell, group)
    G = EnumGroup(q, group, budget)
    cols = column_data(G, table)
    P = G.closure(subgroup_gens) if subgroup_gens else [G.identity]
    v, idx = column
    matching = [cd for cd in cols if cd.label.level == v]
    cd = matching[idx]
    reps, elem2coset = coset_table(G, P)
    gens = list(cd.vertex_gens)
    if cd.preimage != G.identity:
        gens.append(cd.preimage)
    if not gens:
        return len(reps)
    return fixed_cosets(G, reps, elem2coset, gens)


# ---------------------------------------------------------------------------
# verification


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    q: int
    ell: int
    group: str
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "ell": self.ell,
            "group": self.group,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
        }

    def to_text(self) -> str:
        lines = [f"verify q={self.q} ell={self.ell} group={self.group}"]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name}" + (f" ({c.detail})" if c.detail else ""))
        lines.append("RESULT: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


def _orthogonality_ok(tab) -> bool:
    for i, c1 in enumerate(tab.chars):
        for c2 in tab.chars[i:]:
            want = cyc(1 if c1 == c2 else 0)
            if ct.inner_product(c1, c2, tab) != want:
                return False
    # column orthogonality via the identity column: sum of |chi(c)|^2 weights
    for cls in tab.classes:
        acc = cyc(0)
        for c1 in tab.chars:
            v = tab.value(c1, cls)
            acc = acc + v * v.conjugate()
        if acc != cyc(tab.order // tab.sizes[cls]):
            return False
    return True


def _subgroup_family(G: EnumGroup, table: TrivSourceTable, seed: int):
    """Named subgroups whose permutation modules are decomposed."""
    q = G.q
    fs = G.fs
    chain = ell_subgroup_chain(q, table.ell, table.group)
    fam = {"trivial": [G.identity], "G": list(G.elements)}
    for lv in chain.levels[1:]:
        gens = [G.embed(resolve_element(q, s)) for s in lv.gen_specs]
        sub = G.closure(gens)
        assert len(sub) == lv.vertex_order, (lv.vertex_name, len(sub))
        fam[f"chain:{lv.vertex_name}"] = sub
    fam["T"] = G.closure([d_elt(fs, fs.generator_g)])
    fam["T'"] = G.closure([dprime_elt(fs, fs.generator_xi)])
    if q > 3:
        fam["N"] = G.closure([d_elt(fs, fs.generator_g), sigma_elt(fs)])
    fam["N'"] = G.closure([dprime_elt(fs, fs.generator_xi), sigma_prime_elt(q)])
    if table.regime == "l2":
        top = chain.levels[-1]
        gens = [G.embed(resolve_element(q, s)) for s in top.gen_specs]
        syl = G.closure(gens)
        x3 = order_three_normalizer_element(G, syl)
        fam["N(sylow)"] = G.closure(gens + [x3])
    if table.group == "psl2":
        borel = [
            (a, b, 0, fs.field.inv(a)) for a in range(1, q) for b in range(q)
        ]
        fam["borel"] = sorted({psl_rep(fs, m) for m in borel})
    rng = random.Random(seed)
    for i in range(20):
        g = rng.choice(G.elements)
        fam[f"cyclic{i}"] = G.closure([g])
    return fam


def _induced_trivial_values(G: EnumGroup, subgroup) -> dict:
    """Values of Ind_P^G 1 at the ell'-classes, via class counting in P."""
    tally = {}
    for p in subgroup:
        lbl = identify_class(p, G.q, G.group)
        tally[lbl] = tally.get(lbl, 0) + 1
    order = group_order(G.q, G.group)
    out = {}
    for lbl, cnt in tally.items():
        cent = order // class_size(G.q, G.group, lbl)
        num = cent * cnt
        assert num % len(subgroup) == 0
        out[lbl] = num // len(subgroup)
    return out


def _col_class_label(col: ColumnLabel, q: int, group: str) -> ClassLabel:
    """The conjugacy class of a level-1 column representative, in the
    canonical form used by identify_class (PSL2 fuses k with -k + (m/2))."""
    k = col.k
    if group == "psl2" and col.kind in ("split", "nonsplit"):
        m = q - 1 if col.kind == "split" else q + 1
        k = psl_torus_canonical(m, k)
    return ClassLabel(col.kind, eps=col.eps, k=k, tau=col.tau)


def _has_trivial_constituent(row) -> bool:
    return any(
        isinstance(item, ct.CharId) and item.kind == "triv"
        for item, _ in row.character
    )


def verify(q: int, ell: int, group: str, budget: int | None = None,
           seed: int = 1) -> Report:
    regime_of(q, ell, group)  # raises UnsupportedRegime for bad input
    budget = default_budget() if budget is None else budget
    checks = []
    table = assemble(q, ell, group)
    for name, ok, detail in structural_checks(table):
        checks.append(CheckResult(name, ok, detail))
    checks.append(CheckResult("invertible", certify_invertible(table.matrix)))

    tabs = [ct.irr_sl2(q)] if group == "sl2" else []
    tabs.append(ct.irr_psl2(q))
    if table.regime == "split":
        tabs.append(ct.irr_dicyclic(q, "split"))
    elif table.regime == "nonsplit":
        tabs.append(ct.irr_dicyclic(q, "nonsplit"))
    ok = all(_orthogonality_ok(t) for t in tabs)
    checks.append(CheckResult("char-table-orthogonality", ok,
                              ",".join(t.group for t in tabs)))

    if group_order(q, group) > budget:
        checks.append(CheckResult(
            "oracle", True,
            f"skipped: |G| = {group_order(q, group)} exceeds budget {budget}"))
        return Report(q, ell, group, checks)

    G = EnumGroup(q, group, budget)
    cols = column_data(G, table)
    solver = SpeciesSolver(table.matrix)
    checks.append(CheckResult("species-solver-full-rank", solver.full_rank))
    fam = _subgroup_family(G, table, seed)

    decomp_ok, decomp_bad = True, []
    agree_ok, agree_bad = True, []
    coverage = [False] * len(table.rows)
    coeff_rows = []
    scott_ok, scott_detail = True, ""
    top_name = f"chain:{ell_subgroup_chain(q, ell, group).levels[-1].vertex_name}"
    for name in sorted(fam):
        sub = fam[name]
        vec = species_vector(G, cols, sub)
        ind = _induced_trivial_values(G, sub)
        for j, cd in enumerate(cols):
            if cd.label.level != 1:
                continue
            want = ind.get(_col_class_label(cd.label, q, group), 0)
            if vec[j] != want:
                agree_ok = False
                agree_bad.append(f"{name}@{cd.label.text()}: {vec[j]} vs {want}")
        c = solver.solve(vec)
        if c is None:
            decomp_ok = False
            decomp_bad.append(f"{name}: no rational solution")
            continue
        if not all(x.denominator == 1 and x >= 0 for x in c):
            decomp_ok = False
            decomp_bad.append(f"{name}: coefficients {c}")
            continue
        coeff_rows.append([int(x) for x in c])
        for i, x in enumerate(c):
            if x > 0:
                coverage[i] = True
        if name == top_name:
            triv_rows = [i for i, x in enumerate(c)
                         if x > 0 and _has_trivial_constituent(table.rows[i])]
            scott_ok = len(triv_rows) == 1
            scott_detail = f"rows with trivial constituent: {triv_rows}"
    checks.append(CheckResult("perm-decompositions-nonneg-integral", decomp_ok,
                              "; ".join(decomp_bad[:4])))
    checks.append(CheckResult("level1-perm-character-agreement", agree_ok,
                              "; ".join(agree_bad[:4])))
    checks.append(CheckResult("scott-module-unique", scott_ok, scott_detail))
    missing = [i for i, c in enumerate(coverage) if not c]
    checks.append(CheckResult(
        "basis-coverage", not missing,
        f"rows never realized: {missing}" if missing else
        f"{len(coeff_rows)} permutation modules"))

    # species only depend on the G-orbit of (Q, s): conjugation invariance
    rng = random.Random(seed + 1)
    conj_ok, conj_bad = True, []
    probe = fam["N'"]
    reps, e2c = coset_table(G, probe)
    upper = [cd for cd in cols if cd.label.level >= 2]
    for cd in (upper[:2] + upper[-2:]):
        gens = list(cd.vertex_gens)
        if cd.preimage != G.identity:
            gens.append(cd.preimage)
        if not gens:
            continue
        base = fixed_cosets(G, reps, e2c, gens)
        for _ in range(2):
            g = rng.choice(G.elements)
            moved = [G.conjugate(g, h) for h in gens]
            if fixed_cosets(G, reps, e2c, moved) != base:
                conj_ok = False
                conj_bad.append(cd.label.text())
    checks.append(CheckResult("species-conjugation-invariance", conj_ok,
                              ", ".join(conj_bad)))
    return Report(q, ell, group, checks)

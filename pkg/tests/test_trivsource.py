import pytest

from sl2triv import emit
from sl2triv.blocks import ExcBundle
from sl2triv.chartables import CharId
from sl2triv.cyclotomic import cyc, zeta
from sl2triv.errors import UnsupportedRegime
from sl2triv.groups import ell_part
from sl2triv.linalg import certify_invertible
from sl2triv.trivsource import assemble, green_rows, structural_checks, ts_rows


def kinds(rows):
    return [
        {it.kind if isinstance(it, CharId) else "exc" for it, _ in r.character}
        for r in rows
    ]


def test_ts_rows_q7_ell3():
    # full vertex (n = 1, so v = 2): 1_G, St, R+-(a0); the Gamma family is empty
    rows = ts_rows(7, 3, "sl2", 2)
    assert kinds(rows) == [{"triv"}, {"st"}, {"r0"}, {"r0"}]
    # level 1: 9 PIM rows
    assert len(ts_rows(7, 3, "sl2", 1)) == 9


def test_ts_rows_scott_for_minus3_mod8():
    rows = ts_rows(5, 2, "psl2", 2)
    assert len(rows) == 1
    assert rows[0].tag == "scott"
    assert rows[0].character == ((CharId("triv"), 1), (CharId("st"), 1))


def test_ts_rows_level_out_of_range():
    with pytest.raises(UnsupportedRegime):
        ts_rows(7, 3, "sl2", 4)


def test_green_rows_full_vertex():
    # ell | q-1, full vertex: St -> eps
    g = green_rows(7, 3, 2)
    assert g[0] == ((CharId("one"), 1),)
    assert g[1] == ((CharId("eps"), 1),)
    assert g[2] == ((CharId("ext", sign=1), 1),)
    # ell | q+1, full vertex: Xi' -> eps'
    rows = ts_rows(5, 3, "sl2", 2)
    assert isinstance(rows[1].character[0][0], ExcBundle)
    assert rows[1].green == ((CharId("eps"), 1),)


def test_green_rows_intermediate():
    # q=19, ell=3: n=2; 1_G + Xi_1 -> 1_N + Xi^N_1
    rows = ts_rows(19, 3, "sl2", 2)
    r0 = rows[0]
    assert (CharId("triv"), 1) in r0.character
    bundle = next(it for it, _ in r0.character if isinstance(it, ExcBundle))
    assert bundle.count == (ell_part(18, 3) // 3 - 1) // 2 == 1
    assert (CharId("one"), 1) in r0.green
    nbundle = next(it for it, _ in r0.green if isinstance(it, ExcBundle))
    assert nbundle.series == "ind" and nbundle.count == 1


def find_row(t, level, want_kinds, block=None):
    for i, r in enumerate(t.rows):
        if r.level != level:
            continue
        if block is not None and r.block != block:
            continue
        have = {it.kind if isinstance(it, CharId) else "exc"
                for it, _ in r.character}
        if have == want_kinds:
            return i
    raise AssertionError((level, want_kinds))


def find_col(t, level, kind, **params):
    for j, c in enumerate(t.columns):
        if c.level == level and c.kind == kind and all(
            getattr(c, k) == v for k, v in params.items()
        ):
            return j
    raise AssertionError((level, kind, params))


def test_assemble_q7_ell3_spot_values():
    t = assemble(7, 3, "sl2")
    assert t.size() == (13, 13)
    assert certify_invertible(t.matrix)
    i = find_row(t, 1, {"triv", "exc"})
    j = find_col(t, 1, "central", eps=1)
    assert t.matrix[i][j] == 9  # 1 + (q+1) pi_q with pi_q = 1
    ist = find_row(t, 2, {"st"})
    for tau in (1, -1):
        j = find_col(t, 2, "sigma", tau=tau)
        assert t.matrix[ist][j] == -1


def test_nonsplit_intermediate_rows_q17():
    """Vertex C3 inside a C9 Sylow of the nonsplit torus: the two principal
    block modules afford 1 + St + Xi'_1 and Xi'_1 (no St), their Brauer
    quotients at the vertex are 3-dimensional projectives, and the whole
    level decomposes integrally (certified by the oracle elsewhere)."""
    t = assemble(17, 3, "sl2")
    mids = [r for r in t.rows if r.level == 2]
    assert len(mids) == 4
    k = [{it.kind if isinstance(it, CharId) else "exc" for it, _ in r.character}
         for r in mids]
    assert k == [{"triv", "st", "exc"}, {"exc"}, {"exc"}, {"exc"}]
    # ambient bundles carry the vertex-nontrivial pairs: (9 - 3)/2 = 3
    for r in mids:
        bundle = next(it for it, _ in r.character if isinstance(it, ExcBundle))
        assert bundle.count == 3
    # normalizer-side bundles carry the vertex-trivial pairs: (3 - 1)/2 = 1
    for r in mids:
        nbundle = next(it for it, _ in r.green if isinstance(it, ExcBundle))
        assert nbundle.count == 1
    # Brauer quotients at the vertex are projective of dimension 3
    jid = find_col(t, 2, "central", eps=1)
    for r in mids:
        assert t.matrix[t.rows.index(r)][jid] == 3
    # the St-free module's character: (q-1) pi' at +-I2, 0 on the split torus
    i_xi = t.rows.index(mids[1])
    assert t.matrix[i_xi][find_col(t, 1, "central", eps=1)] == 48
    assert t.matrix[i_xi][find_col(t, 1, "split", k=1)] == 0


def test_ti_v_equals_ti_i_for_intermediate_levels():
    # n = 2 regimes: split (19,3) and nonsplit (17,3)
    for q, ell in ((19, 3), (17, 3)):
        t = assemble(q, ell, "sl2")
        assert t.n == 2
        for i, r in enumerate(t.rows):
            if r.level != 3:
                continue
            for j2, c in enumerate(t.columns):
                if c.level != 2:
                    continue
                j3 = find_col(t, 3, c.kind, eps=c.eps, k=c.k, tau=c.tau)
                assert t.matrix[i][j2] == t.matrix[i][j3]


@pytest.mark.parametrize("q,ell,group", [
    (7, 3, "sl2"), (13, 3, "sl2"), (5, 3, "sl2"), (9, 5, "sl2"),
    (3, 2, "sl2"), (13, 2, "sl2"), (3, 2, "psl2"), (11, 2, "psl2"),
])
def test_structural_checks(q, ell, group):
    t = assemble(q, ell, group)
    for name, ok, detail in structural_checks(t):
        assert ok, (name, detail)


def test_assembly_unsupported():
    with pytest.raises(UnsupportedRegime):
        assemble(9, 3, "sl2")
    with pytest.raises(UnsupportedRegime):
        assemble(7, 2, "sl2")
    with pytest.raises(UnsupportedRegime):
        assemble(11, 3, "psl2")


def test_l2_inflation_identities_small():
    q = 5
    g = assemble(q, 2, "sl2")
    p = assemble(q, 2, "psl2")
    assert g.block_matrix(2, 1) == g.block_matrix(2, 2) == p.block_matrix(1, 1)
    assert g.block_matrix(3, 3) == p.block_matrix(2, 2)
    assert g.block_matrix(4, 4) == p.block_matrix(3, 3)


def test_sign_repair_quasi_isolated_pair():
    """The two equal-character rows of the quasi-isolated block take
    opposite signs at the sigma'-columns (required for invertibility)."""
    for q, ell in ((5, 3), (11, 3), (9, 5)):
        t = assemble(q, ell, "sl2")
        rows = [i for i, r in enumerate(t.rows)
                if r.level == t.n + 1 and r.block.startswith("A'0")]
        assert len(rows) == 2
        kap = 0 if q % 4 == 1 else 1
        root = cyc(1) if (-1) ** (kap + 1) == 1 else zeta(4)
        for tau in (1, -1):
            j = find_col(t, t.n + 1, "sigmap", tau=tau)
            vals = {t.matrix[rows[0]][j], t.matrix[rows[1]][j]}
            assert vals == {cyc(tau) * root, cyc(-tau) * root}


def test_json_round_trip():
    for q, ell, group in ((7, 3, "sl2"), (5, 3, "sl2"), (5, 2, "psl2"),
                          (13, 2, "sl2")):
        t = assemble(q, ell, group)
        t2 = emit.table_from_json(emit.table_to_json(t))
        assert t2 == t


def test_latex_and_csv_emission_smoke():
    t = assemble(5, 3, "sl2")
    tex = emit.table_to_latex(t)
    assert r"\begin{array}" in tex and r"\mathrm{St}" in tex
    csv = emit.table_to_csv(t)
    assert csv.count("\n") == len(t.rows) + 1
    csva = emit.table_to_csv(t, approx=True)
    assert "j" in csva or "." in csva

"""Deterministic JSON / LaTeX / CSV emission, and JSON round-trip parsing
for the trivial source tables."""

from __future__ import annotations

import json

from .blocks import ExcBundle, brauer_tree, pim_characters
from .chartables import CharacterTable, CharId
from .cyclotomic import CycNum
from .groups import ColumnLabel
from .trivsource import TrivSourceTable, TSRow

# ---------------------------------------------------------------------------
# ids


def charid_to_str(cid: CharId) -> str:
    if cid.kind in ("triv", "st", "one", "eps"):
        return cid.kind
    if cid.kind in ("r", "rp", "ind"):
        return f"{cid.kind}:{cid.j}"
    return f"{cid.kind}:{'+' if cid.sign == 1 else '-'}"


def charid_from_str(s: str) -> CharId:
    if ":" not in s:
        return CharId(s)
    kind, arg = s.split(":")
    if arg in ("+", "-"):
        return CharId(kind, sign=1 if arg == "+" else -1)
    return CharId(kind, j=int(arg))


def item_to_str(item) -> str:
    if isinstance(item, CharId):
        return charid_to_str(item)
    cons = "" if item.constituents is None else ":" + ".".join(
        map(str, item.constituents)
    )
    return f"exc:{item.series}:{item.base_j}:{item.count}{cons}"


def item_from_str(s: str):
    if not s.startswith("exc:"):
        return charid_from_str(s)
    parts = s.split(":")
    series, base_j, count = parts[1], int(parts[2]), int(parts[3])
    cons = tuple(map(int, parts[4].split("."))) if len(parts) > 4 else None
    return ExcBundle(series, base_j, count, cons)


_LATEX_NAMES = {
    "triv": "1", "st": r"\mathrm{St}", "one": "1", "eps": r"\varepsilon",
}


def item_to_latex(item, q: int) -> str:
    if isinstance(item, ExcBundle):
        core = {"r": r"\Xi", "rp": r"\Xi'", "ind": r"\Xi^{N}",
                "indp": r"\Xi^{N'}"}[item.series]
        m = q - 1 if item.series in ("r", "ind") else q + 1
        greek = r"\alpha" if item.series in ("r", "ind") else r"\theta"
        if item.base_j == m // 2:
            return core + r"_{%s_0}" % greek
        if item.base_j:
            return core + r"_{%s_{%d}}" % (greek, item.base_j)
        return core
    cid = item
    if cid.kind in _LATEX_NAMES:
        return _LATEX_NAMES[cid.kind]
    pm = "+" if cid.sign == 1 else "-"
    return {
        "r": r"R(\alpha_{%d})" % cid.j,
        "rp": r"R'(\theta_{%d})" % cid.j,
        "r0": r"R_{%s}(\alpha_0)" % pm,
        "rp0": r"R'_{%s}(\theta_0)" % pm,
        "ext": r"\chi^{%s}_{\alpha_0}" % pm,
        "ind": r"\chi_{\alpha_{%d}}" % cid.j,
    }[cid.kind]


def row_to_latex(row: TSRow, q: int) -> str:
    chars = [(i, m) for i, m in row.character if isinstance(i, CharId)]
    bundles = [(i, m) for i, m in row.character if isinstance(i, ExcBundle)]
    terms = []
    for item, mult in chars + bundles:
        s = item_to_latex(item, q)
        terms.append(s if mult == 1 else f"{mult}\\,{s}")
    return "+".join(terms)


_COLUMN_LATEX = {
    "central": lambda c: "I_2" if c.eps == 1 else "-I_2",
    "split": lambda c: r"\mathbf{d}(g^{%d})" % c.k,
    "nonsplit": lambda c: r"\mathbf{d}'(\xi^{%d})" % c.k,
    "unipotent": lambda c: ("" if c.eps == 1 else "-") + (
        "u_+" if c.tau == 1 else "u_-"),
    "sigma": lambda c: r"\sigma_+" if c.tau == 1 else r"\sigma_-",
    "sigmap": lambda c: r"\sigma'_+" if c.tau == 1 else r"\sigma'_-",
    "one": lambda c: "1",
    "torusbar": lambda c: r"\bar{t}^{%d}" % c.k,
    "c3": lambda c: "x" if c.k == 1 else "x^2",
}


def column_to_json(col: ColumnLabel) -> dict:
    return {
        "level": col.level,
        "label": col.text(),
        "param": {"kind": col.kind, "eps": col.eps, "k": col.k, "tau": col.tau},
    }


def column_from_json(obj) -> ColumnLabel:
    p = obj["param"]
    return ColumnLabel(obj["level"], p["kind"], eps=p["eps"], k=p["k"], tau=p["tau"])


# ---------------------------------------------------------------------------
# trivial source table


def table_to_json(t: TrivSourceTable) -> dict:
    return {
        "q": t.q,
        "ell": t.ell,
        "group": t.group,
        "regime": t.regime,
        "n": t.n,
        "columns": [column_to_json(c) for c in t.columns],
        "rows": [
            {
                "level": r.level,
                "block": r.block,
                "tag": r.tag,
                "character": [[item_to_str(i), m] for i, m in r.character],
                "green": (
                    None if r.green is None
                    else [[item_to_str(i), m] for i, m in r.green]
                ),
            }
            for r in t.rows
        ],
        "matrix": [[a.to_json() for a in row] for row in t.matrix],
        "conventions": t.conventions,
        "provenance": {f"{i},{v}": s for (i, v), s in sorted(t.provenance.items())},
    }


def table_from_json(obj) -> TrivSourceTable:
    rows = tuple(
        TSRow(
            r["level"], r["block"], r["tag"],
            tuple((item_from_str(s), m) for s, m in r["character"]),
            None if r["green"] is None
            else tuple((item_from_str(s), m) for s, m in r["green"]),
        )
        for r in obj["rows"]
    )
    columns = tuple(column_from_json(c) for c in obj["columns"])
    matrix = [[CycNum.from_json(a) for a in row] for row in obj["matrix"]]
    prov = {}
    for key, s in obj["provenance"].items():
        i, v = key.split(",")
        prov[(int(i), int(v))] = s
    return TrivSourceTable(
        obj["q"], obj["ell"], obj["group"], obj["regime"], obj["n"],
        rows, columns, matrix, obj["conventions"], prov,
    )


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1)


def table_to_latex(t: TrivSourceTable) -> str:
    ncol = len(t.columns)
    lines = [
        "%% Triv_%d(%s), q = %d" % (t.ell, t.group.upper(), t.q),
        r"\begin{array}{|l||" + "c|" * ncol + "}",
        r"\hline",
        " & " + " & ".join(_COLUMN_LATEX[c.kind](c) for c in t.columns) + r" \\",
        r"\hline\hline",
    ]
    prev_level = None
    for i, r in enumerate(t.rows):
        if prev_level is not None and r.level != prev_level:
            lines.append(r"\hline")
        prev_level = r.level
        cells = [row_to_latex(r, t.q)]
        cells += [a.latex() for a in t.matrix[i]]
        lines.append(" & ".join(cells) + r" \\")
    lines += [r"\hline", r"\end{array}"]
    return "\n".join(lines) + "\n"


def table_to_csv(t: TrivSourceTable, approx: bool = False) -> str:
    lines = ["row," + ",".join(f'"{c.text()}"' for c in t.columns)]
    for i, r in enumerate(t.rows):
        cells = []
        for a in t.matrix[i]:
            if approx:
                z, _ = a.approx()
                cells.append(f"{z.real:.6g}{z.imag:+.6g}j" if abs(z.imag) > 1e-9
                             else f"{z.real:.6g}")
            else:
                cells.append(f'"{a!r}"')
        lines.append(f'"{r.label()}",' + ",".join(cells))
    return "\n".join(lines) + "\n"


def table_to_text(t: TrivSourceTable) -> str:
    header = ["row"] + [c.text() for c in t.columns]
    body = [[t.rows[i].label()] + [repr(a) for a in t.matrix[i]]
            for i in range(len(t.rows))]
    widths = [max(len(r[j]) for r in [header] + body) for j in range(len(header))]
    fmt = "  ".join("{:>%d}" % w for w in widths)
    return "\n".join(fmt.format(*r) for r in [header] + body) + "\n"


# ---------------------------------------------------------------------------
# character tables, blocks


def chartab_to_json(tab: CharacterTable) -> dict:
    return {
        "group": tab.group,
        "q": tab.q,
        "order": tab.order,
        "classes": [
            {"label": cls.text(), "size": tab.sizes[cls],
             "param": {"kind": cls.kind, "eps": cls.eps, "k": cls.k, "tau": cls.tau}}
            for cls in tab.classes
        ],
        "chars": [charid_to_str(c) for c in tab.chars],
        "values": [
            [tab.value(cid, cls).to_json() for cls in tab.classes]
            for cid in tab.chars
        ],
    }


def chartab_to_latex(tab: CharacterTable) -> str:
    lines = [
        r"\begin{array}{|l||" + "c|" * len(tab.classes) + "}",
        r"\hline",
        " & " + " & ".join(c.text().replace("'", r"{'}") for c in tab.classes) + r" \\",
        r"\hline\hline",
    ]
    for cid in tab.chars:
        cells = [item_to_latex(cid, tab.q)]
        cells += [tab.value(cid, cls).latex() for cls in tab.classes]
        lines.append(" & ".join(cells) + r" \\")
    lines += [r"\hline", r"\end{array}"]
    return "\n".join(lines) + "\n"


def chartab_to_csv(tab: CharacterTable) -> str:
    lines = ["char," + ",".join(f'"{c.text()}"' for c in tab.classes)]
    for cid in tab.chars:
        cells = [f'"{tab.value(cid, cls)!r}"' for cls in tab.classes]
        lines.append(f'"{cid.text()}",' + ",".join(cells))
    return "\n".join(lines) + "\n"


def blocks_to_json(blocks) -> list:
    out = []
    for b in blocks:
        entry = {
            "id": b.id,
            "type": b.block_type,
            "defect": b.defect_name,
            "defect_order": b.defect_order,
            "e": b.e,
            "m": b.m,
            "W_is_trivial": b.W_is_trivial,
            "chars": [charid_to_str(c) for c in b.chars],
            "bundle": None if b.bundle is None else item_to_str(b.bundle),
            "pims": [
                [[item_to_str(i), m] for i, m in pim] for pim in pim_characters(b)
            ],
        }
        if b.tree_vertices is not None:
            tree = brauer_tree(b)
            entry["tree"] = {
                "vertices": [[item_to_str(i), s] for i, s in tree.vertices],
                "edges": list(tree.edges),
            }
        elif b.dec_rows is not None:
            entry["decomposition"] = {
                "rows": [charid_to_str(c) for c in b.dec_rows],
                "cols": list(b.dec_cols),
                "entries": [list(r) for r in b.dec_entries],
            }
        out.append(entry)
    return out

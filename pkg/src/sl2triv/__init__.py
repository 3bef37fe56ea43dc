"""Trivial source character tables of SL2(q) and PSL2(q).

Exact construction over cyclotomic fields of Triv_ell(SL2(q)) for odd ell
dividing q-1 or q+1, and of Triv_2(PSL2(q)) and Triv_2(SL2(q)) for
q = +-3 mod 8, together with a brute-force fixed-point species oracle
that certifies the tables on enumerable q.
"""

from .blocks import block_distribution, brauer_correspondent, brauer_tree, pim_characters
from .chartables import CharId, inner_product, irr_dicyclic, irr_psl2, irr_sl2
from .cyclotomic import CycNum, cyc, gauss_sqrt_q0, zeta
from .groups import ClassLabel, build_field, class_reps, ell_subgroup_chain, ellprime_columns, identify_class
from .oracle import Report, decompose, perm_species, verify
from .trivsource import TrivSourceTable, TSRow, assemble, green_rows, ts_rows

__all__ = [
    "CharId", "ClassLabel", "CycNum", "Report", "TSRow", "TrivSourceTable",
    "assemble", "block_distribution", "brauer_correspondent", "brauer_tree",
    "build_field", "class_reps", "cyc", "decompose", "ell_subgroup_chain",
    "ellprime_columns", "gauss_sqrt_q0", "green_rows", "identify_class",
    "inner_product", "irr_dicyclic", "irr_psl2", "irr_sl2", "perm_species",
    "pim_characters", "ts_rows", "verify", "zeta",
]

__version__ = "0.1.0"

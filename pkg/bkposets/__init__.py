"""
Bender-Knuth moves on linear extensions of finite posets.
"""

from bkposets.errors import BKError, CapError, DegreeCapError
from bkposets.families import Partition, ferrers, m_poset, minuscule_ordinal, n_poset, named, shifted_ferrers, zigzag
from bkposets.linext import LinearExtension, LinExtSpace, bk_move, enumerate_extensions, evacuation, promotion, q_jk
from bkposets.permgroup import PermutationGroup, bk_group
from bkposets.poset import Poset, antichain, chain, disjoint_union, dual, from_covers, ordinal_sum
from bkposets.relations import (
    cactus_failures,
    comparability,
    is_le_cactus,
    is_le_primitive,
    is_le_symmetric,
    relation_report,
    stab_size,
)
from bkposets.spec_parser import parse_spec

__all__ = [
    "BKError",
    "CapError",
    "DegreeCapError",
    "LinExtSpace",
    "LinearExtension",
    "Partition",
    "PermutationGroup",
    "Poset",
    "antichain",
    "bk_group",
    "bk_move",
    "cactus_failures",
    "chain",
    "comparability",
    "disjoint_union",
    "dual",
    "enumerate_extensions",
    "evacuation",
    "ferrers",
    "from_covers",
    "is_le_cactus",
    "is_le_primitive",
    "is_le_symmetric",
    "m_poset",
    "minuscule_ordinal",
    "n_poset",
    "named",
    "ordinal_sum",
    "parse_spec",
    "promotion",
    "q_jk",
    "relation_report",
    "shifted_ferrers",
    "stab_size",
    "zigzag",
]

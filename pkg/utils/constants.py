"""
Reference constants: census counts, named cover sets, exit codes and DOT layout.
Tunable limits are loaded from .env via config/settings.py
"""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CensusCounts:
    """Unlabeled poset counts by element number (n = 0..7)."""
    BY_SIZE: tuple[int, ...] = (1, 1, 2, 5, 16, 63, 318, 2045)


@dataclass(frozen=True)
class NamedCovers:
    """0-indexed cover sets of the built-in named posets."""
    # a, b < c, d
    BUTTERFLY: tuple[tuple[int, int], ...] = ((0, 2), (0, 3), (1, 2), (1, 3))
    # smallest jeu-de-taquin poset failing a cactus relation, labels 1..9 shifted down by one
    JDT9: tuple[tuple[int, int], ...] = (
        (0, 1), (1, 2), (1, 3), (2, 4), (3, 6), (4, 5), (4, 6), (4, 7), (5, 8), (6, 8), (7, 8),
    )
    # x1, x2 < y1, y2 and x3 < y2  (x = 0..2, y1 = 3, y2 = 4)
    CACTUS5: tuple[tuple[int, int], ...] = ((0, 3), (0, 4), (1, 3), (1, 4), (2, 4))
    # two 4-chains v1..v4 and v5..v8 joined by v2 < v7
    CHAIN_BRIDGE: tuple[tuple[int, int], ...] = ((0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7), (1, 6))


@dataclass(frozen=True)
class ReferenceValues:
    """Exact values reproduced by the verify suite."""
    STAB_ANTICHAIN_SUM_PLUS_POINT: int = 466560
    STAB_VALUES: frozenset[int] = field(default_factory=lambda: frozenset({6, 12, 36}))
    JDT9_TRIPLE: tuple[int, int, int] = (3, 5, 9)
    A3_A1_TRIPLE: tuple[int, int, int] = (1, 3, 4)
    SHIFTED_EXAMPLE: tuple[int, ...] = (4, 3, 2)
    T_DECOMPOSE_SP: tuple[int, ...] = (1, 2, 4, 5, 6, 9)
    T_DECOMPOSE_SQ: tuple[int, ...] = (3, 7, 8, 10)
    T_DECOMPOSE_SP_AFTER_T3: tuple[int, ...] = (1, 2, 3, 5, 6, 9)
    # P: a < d, a < f, b < e, c < e on a..f; Q: g, h < i, j; Q ids shifted by 6 in the word
    T_DECOMPOSE_P: tuple[tuple[int, int], ...] = ((0, 3), (0, 5), (1, 4), (2, 4))
    T_DECOMPOSE_Q: tuple[tuple[int, int], ...] = ((0, 2), (0, 3), (1, 2), (1, 3))
    T_DECOMPOSE_WORD: tuple[int, ...] = (0, 1, 6, 2, 4, 3, 7, 8, 5, 9)
    TABLEAU_T2_BEFORE: tuple[tuple[int, ...], ...] = (
        (1, 1, 1, 1, 2, 2, 2, 2, 3),
        (2, 2, 3, 3, 3, 4),
        (3, 4, 4, 5),
    )
    TABLEAU_T2_AFTER: tuple[tuple[int, ...], ...] = (
        (1, 1, 1, 1, 2, 2, 3, 3, 3),
        (2, 2, 2, 3, 3, 4),
        (3, 4, 4, 5),
    )


@dataclass(frozen=True)
class ExitCodes:
    """Process exit codes of the command-line front end."""
    OK: int = 0
    VERIFY_FAILED: int = 1
    USAGE: int = 2
    DEGREE_CAP: int = 3


@dataclass(frozen=True)
class DotLayout:
    """Strings used by the DOT exporter."""
    GRAPH_NAME: str = "linext"
    VERTEX_SEPARATOR: str = "-"
    EDGE_LABEL: str = "t{}"


CENSUS = CensusCounts()
NAMED = NamedCovers()
REFERENCE = ReferenceValues()
EXIT = ExitCodes()
DOT = DotLayout()

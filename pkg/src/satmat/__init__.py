"""Containment, saturation, and semisaturation of d-dimensional 0-1 matrices.

The package provides: dense bit-packed matrices with dominance geometry
(diagonals, staircases, shells, cross sections), exact containment with
witnesses, saturation and semisaturation verdicts, the classical explicit
constructions (nested shells, greedy, offset block, corner block), the
bounded-semisaturation classification, and exact brute-force search for the
extremal weights at desk scale.
"""

from .classification import (
    SsatVerdict,
    classify_ssat,
    lone_entry_condition,
    lone_in_hyperplane,
    property_i,
    property_ii,
)
from .constructions import (
    PatternFitError,
    bottom_staircase,
    cell_order,
    corner_block,
    diagonal_concatenation,
    greedy_saturate,
    has_corner_only_shell,
    identity_layers,
    identity_pattern,
    offset_block,
    staircase_decompose,
    strip_shell,
)
from .containment import (
    Embedding,
    anchored_contains,
    contains,
    embedding_is_valid,
    embeddings_count,
    enumerate_embeddings,
    potentially_matches,
)
from .core import (
    DEFAULT_CELL_LIMIT,
    Coord,
    CrossSectionSpec,
    Matrix01,
    ParseError,
    Relation,
    Shape,
    comparable,
    diagonal_key,
    diagonal_through,
    diagonals,
    entries_above,
    entries_below,
    format_01m,
    is_complete_staircase,
    is_semiabove,
    is_semibelow,
    is_staircase,
    iter_faces,
    iter_i_rows,
    order_relation,
    parse_01m,
    shell,
)
from .exact import (
    BudgetExceededError,
    RecurrenceReport,
    SearchBudget,
    SearchResult,
    exact_ex,
    exact_sat,
    exact_ssat,
    verify_recurrence,
)
from .saturation import SaturationReport, avoids, is_saturating, is_semisaturating

__all__ = [
    "BudgetExceededError",
    "Coord",
    "CrossSectionSpec",
    "DEFAULT_CELL_LIMIT",
    "Embedding",
    "Matrix01",
    "ParseError",
    "PatternFitError",
    "RecurrenceReport",
    "Relation",
    "SaturationReport",
    "SearchBudget",
    "SearchResult",
    "Shape",
    "SsatVerdict",
    "anchored_contains",
    "avoids",
    "bottom_staircase",
    "cell_order",
    "classify_ssat",
    "comparable",
    "contains",
    "corner_block",
    "diagonal_concatenation",
    "diagonal_key",
    "diagonal_through",
    "diagonals",
    "embedding_is_valid",
    "embeddings_count",
    "entries_above",
    "entries_below",
    "enumerate_embeddings",
    "exact_ex",
    "exact_sat",
    "exact_ssat",
    "format_01m",
    "greedy_saturate",
    "has_corner_only_shell",
    "identity_layers",
    "identity_pattern",
    "is_complete_staircase",
    "is_saturating",
    "is_semiabove",
    "is_semibelow",
    "is_semisaturating",
    "is_staircase",
    "iter_faces",
    "iter_i_rows",
    "lone_entry_condition",
    "lone_in_hyperplane",
    "offset_block",
    "order_relation",
    "parse_01m",
    "potentially_matches",
    "property_i",
    "property_ii",
    "shell",
    "staircase_decompose",
    "strip_shell",
    "verify_recurrence",
]

__version__ = "0.1.0"

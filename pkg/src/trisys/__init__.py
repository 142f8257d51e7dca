"""Triple systems without hypergraph triangles: detection, constructions and exact extremal search."""

from .core import (
    CANONICAL_LIMIT,
    CanonicalLimitError,
    TripleSystem,
    are_isomorphic,
    build_system,
    canonical_form,
    canonical_labeling,
    canonical_system,
    complete_system,
    format_3uh,
    link,
    own_pairs,
    pair_degree,
    parse_3uh,
    read_system,
    shadow,
    write_system,
)
from .detect import Config, count_occurrences, find_occurrences, is_free, parse_configs
from .formulas import Status, formula_entry, formula_value
from .search import SearchLimitError, SearchResult, lower_bound_witness, max_free

__all__ = [
    "CANONICAL_LIMIT",
    "CanonicalLimitError",
    "Config",
    "SearchLimitError",
    "SearchResult",
    "Status",
    "TripleSystem",
    "are_isomorphic",
    "build_system",
    "canonical_form",
    "canonical_labeling",
    "canonical_system",
    "complete_system",
    "count_occurrences",
    "find_occurrences",
    "format_3uh",
    "formula_entry",
    "formula_value",
    "is_free",
    "link",
    "lower_bound_witness",
    "max_free",
    "parse_configs",
    "own_pairs",
    "pair_degree",
    "parse_3uh",
    "read_system",
    "shadow",
    "write_system",
]

__version__ = "0.1.0"

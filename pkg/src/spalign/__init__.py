"""Multiple-alignment parsing with compression scoring and pronoun resolution."""

from .alignment import (
    Alignment,
    AlignmentColumn,
    Cell,
    Instance,
    MergeOrderConflict,
    Violation,
    bare_alignment,
    canonical_key,
    merge,
    projection,
    validate_alignment,
)
from .core import (
    BadIdPrefix,
    DuplicatePatternId,
    EmptyPattern,
    Grammar,
    GrammarError,
    Pattern,
    RawPattern,
    Status,
    SymbolTable,
    build_grammar,
    scale_grammar,
)
from .grammar_io import GrammarSyntaxError, parse_grammar, serialize_grammar
from .oracle import BoundsExceeded, OracleResult, oracle_enumerate
from .render import WidthOverflow, render_alignment
from .scoring import (
    EmptyInput,
    InvalidAlignment,
    Score,
    delta_cd,
    relative_probabilities,
    score,
)
from .search import HitSet, SearchConfig, pairwise_align, search

__all__ = [
    "Alignment",
    "AlignmentColumn",
    "BadIdPrefix",
    "BoundsExceeded",
    "Cell",
    "DuplicatePatternId",
    "EmptyInput",
    "EmptyPattern",
    "Grammar",
    "GrammarError",
    "GrammarSyntaxError",
    "HitSet",
    "Instance",
    "InvalidAlignment",
    "MergeOrderConflict",
    "OracleResult",
    "Pattern",
    "RawPattern",
    "Score",
    "SearchConfig",
    "Status",
    "SymbolTable",
    "Violation",
    "WidthOverflow",
    "bare_alignment",
    "build_grammar",
    "canonical_key",
    "delta_cd",
    "merge",
    "oracle_enumerate",
    "pairwise_align",
    "parse_grammar",
    "projection",
    "relative_probabilities",
    "render_alignment",
    "scale_grammar",
    "score",
    "search",
    "serialize_grammar",
    "validate_alignment",
]

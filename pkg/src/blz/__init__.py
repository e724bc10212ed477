"""Bounded-access Lempel-Ziv (c-BLZ) parsing toolkit."""

from .core import (
    AccessIndex,
    HopProfile,
    InvalidParsing,
    MalformedStream,
    Parsing,
    Phrase,
    SymbolTable,
    Triple,
    access_char,
    compute_hops,
    decode,
    encode,
    symbols,
    validate_parsing,
)
from .parsers import (
    SolveResult,
    SolverBudget,
    exact_blz,
    exact_lz_bruteforce,
    greedy_bounded_blz,
    greedy_lz76,
)
from .reduction import (
    Graph,
    ReductionInstance,
    ReductionParams,
    build_reduction,
    extract_cover,
    is_cover,
    target_size,
    vertex_cover_exact,
    witness_parsing,
)
from .squarefree import BoundReport, audit_lower_bound, is_square_free, thue_word

__version__ = "0.1.0"

"""Matching book embeddings of cycle bundles over a cycle.

Build Cartesian-style bundles of two cycles (the fibre cycle twisted by a
shift or reflection when it closes up), decompose them into fibre and
residual 2-factors, produce optimal matching book embeddings for the solved
parameter families, reduce the coprime-shift family to circulant graphs,
and verify everything independently with a validator and a brute-force
search.
"""

from .bundle_decomp import (
    CirculantReduction,
    Decomposition,
    DecompositionError,
    DiophantineSolution,
    fiber_cycles,
    reflection_residual_cycles,
    residual_cycles,
    shift_residual_cycles,
    shrink,
    single_jump_cycles,
    solve_position,
    to_circulant,
)
from .constructions import (
    CompletionError,
    ConstructionResult,
    Unsupported,
    embed,
    embed_reflection_s_even,
    embed_reflection_s_odd,
    embed_shift_even_gcd,
    embed_shift_odd_gcd,
)
from .graph_core import (
    REFL_NONE,
    REFL_ONE,
    REFL_TWO,
    BundleSpec,
    Graph,
    InvalidSpecError,
    Reflection,
    Shift,
    SpecFormatError,
    bundle,
    circulant,
    cycle_graph,
    format_bundle_spec,
    is_bipartite,
    max_degree,
    normalize_shift,
    parse_bundle_spec,
    predict_bipartite,
    vertex_index,
    vertex_pair,
)
from .layout_engine import (
    BLUE,
    COLOR_NAMES,
    DISPERSABLE,
    GREEN,
    NEARLY_DISPERSABLE,
    NEITHER,
    PURPLE,
    RED,
    YELLOW,
    BookEmbedding,
    CoverageError,
    ValidationReport,
    chords_cross,
    classify,
    validate,
)
from .oracle import (
    CertifyResult,
    MbtResult,
    OracleError,
    PageSearchResult,
    SearchBudget,
    brute_force_mbt,
    certify,
    check_isomorphism,
    lower_bound,
    search_fixed_pages,
)

__version__ = "0.1.0"

__all__ = [
    "BLUE",
    "BookEmbedding",
    "BundleSpec",
    "CertifyResult",
    "CirculantReduction",
    "COLOR_NAMES",
    "CompletionError",
    "ConstructionResult",
    "CoverageError",
    "Decomposition",
    "DecompositionError",
    "DiophantineSolution",
    "DISPERSABLE",
    "GREEN",
    "Graph",
    "InvalidSpecError",
    "MbtResult",
    "NEARLY_DISPERSABLE",
    "NEITHER",
    "OracleError",
    "PageSearchResult",
    "PURPLE",
    "RED",
    "REFL_NONE",
    "REFL_ONE",
    "REFL_TWO",
    "Reflection",
    "SearchBudget",
    "Shift",
    "SpecFormatError",
    "Unsupported",
    "ValidationReport",
    "YELLOW",
    "brute_force_mbt",
    "bundle",
    "certify",
    "check_isomorphism",
    "chords_cross",
    "circulant",
    "classify",
    "cycle_graph",
    "embed",
    "embed_reflection_s_even",
    "embed_reflection_s_odd",
    "embed_shift_even_gcd",
    "embed_shift_odd_gcd",
    "fiber_cycles",
    "format_bundle_spec",
    "is_bipartite",
    "lower_bound",
    "max_degree",
    "normalize_shift",
    "parse_bundle_spec",
    "predict_bipartite",
    "reflection_residual_cycles",
    "residual_cycles",
    "search_fixed_pages",
    "shift_residual_cycles",
    "shrink",
    "single_jump_cycles",
    "solve_position",
    "to_circulant",
    "validate",
    "vertex_index",
    "vertex_pair",
]

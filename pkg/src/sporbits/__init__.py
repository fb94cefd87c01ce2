"""Computations with symplectic orbit closures on the complete flag variety.

Orbits are parametrized by fixed-point-free involutions; this package
implements the involution arithmetic, the reverse Bruhat order and its rank
polynomials, interval graphs and the pointwise smoothness test, containment
of the 17 obstruction patterns, and an exact-rational classifier mapping a
flag matrix to its orbit.
"""

from .involutions import (
    DEFAULT_MAX_DEGREE,
    FpfInvolution,
    InvolutionError,
    SizeLimitError,
    Transposition,
    all_transpositions,
    conjugate,
    delete_pair_standardize,
    encapsulation_count,
    enumerate_fpf,
    format_involution,
    open_orbit,
    parse_involution,
    rank,
    reverse_complement,
    w0,
)
from .bruhat import (
    Interval,
    PatternObstruction,
    RankPolynomial,
    bracket_product,
    factor_rank_poly,
    interval,
    is_palindromic,
    is_rationally_smooth,
    rank_poly,
    reverse_leq,
)
from .patterns import (
    BAD_PATTERNS,
    BOTTOM_VERTEX_TABLE,
    PatternWitness,
    avoids_all_bad,
    bad_pattern_witness,
    includes_pattern,
    irregular_certificate,
    standardize,
)
from .graphs import (
    BruhatGraph,
    LemmaReport,
    LocalDegreeReport,
    SingularLocus,
    bottom_edge_labels,
    build_graph,
    graph_to_json,
    is_regular,
    lemma_check,
    local_degree_test,
    rationally_singular_locus,
    to_dot,
    vertex_degree,
)
from .geometry import (
    ConsistencyError,
    FlagError,
    FlagMatrix,
    classify_flag,
    flag_to_json,
    gram_basis_flag,
    gram_target,
    parse_flag_json,
    random_symplectic,
    standard_form,
    transform_flag,
)

__version__ = "0.1.0"

__all__ = [
    "BAD_PATTERNS",
    "BOTTOM_VERTEX_TABLE",
    "BruhatGraph",
    "ConsistencyError",
    "DEFAULT_MAX_DEGREE",
    "FlagError",
    "FlagMatrix",
    "FpfInvolution",
    "Interval",
    "InvolutionError",
    "LemmaReport",
    "LocalDegreeReport",
    "PatternObstruction",
    "PatternWitness",
    "RankPolynomial",
    "SingularLocus",
    "SizeLimitError",
    "Transposition",
    "all_transpositions",
    "avoids_all_bad",
    "bad_pattern_witness",
    "bottom_edge_labels",
    "bracket_product",
    "build_graph",
    "classify_flag",
    "conjugate",
    "delete_pair_standardize",
    "encapsulation_count",
    "enumerate_fpf",
    "factor_rank_poly",
    "flag_to_json",
    "format_involution",
    "gram_basis_flag",
    "gram_target",
    "graph_to_json",
    "includes_pattern",
    "interval",
    "irregular_certificate",
    "is_palindromic",
    "is_rationally_smooth",
    "is_regular",
    "lemma_check",
    "local_degree_test",
    "open_orbit",
    "parse_flag_json",
    "parse_involution",
    "rank",
    "rank_poly",
    "rationally_singular_locus",
    "random_symplectic",
    "reverse_complement",
    "reverse_leq",
    "standard_form",
    "standardize",
    "to_dot",
    "transform_flag",
    "vertex_degree",
    "w0",
]

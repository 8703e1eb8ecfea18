"""Toolkit for ordered (perfect) matchings.

Classify edge and triple relations, compute exact largest lines, stacks,
and waves, extract guaranteed homogeneous witnesses, generate canonical and
extremal matchings, sample uniformly at random with a reproducible Monte
Carlo harness, and find order-isomorphic twins.
"""

from .core import (
    Edge,
    Matching,
    Relation,
    TripleMatching,
    TripleRelation,
    classify_pair,
    classify_triple_pair,
    contains_pattern,
    order_isomorphic,
    parse_word,
    relation_census,
    to_word,
    triple_relation_census,
)
from .constructions import (
    Permutation,
    from_permutation,
    is_permutational,
    make_line,
    make_stack,
    make_wave,
    stacked_waves,
    to_permutation,
    triple_optimality_16,
)
from .patterns import (
    EsParams,
    EsWitness,
    Landscape,
    StructureKind,
    TripleEsParams,
    decompose_landscape,
    es_witness,
    es_witness_triples,
    is_landscape,
    largest_homogeneous_triples,
    largest_line,
    largest_semi_line,
    largest_stack,
    largest_wave,
    semi_line_to_line,
    verify_witness,
)
from .random import (
    ExperimentConfig,
    StatsReport,
    SummaryStats,
    count_matchings,
    count_triple_matchings,
    enumerate_all,
    run_experiment,
    sample_uniform,
    sample_uniform_triples,
    sample_via_permutation,
    short_edge_count,
    stream,
)
from .twins import (
    AuxiliaryGraph,
    BlockTwinParams,
    PermutationTwins,
    TwinSet,
    auxiliary_graph,
    block_twins,
    default_block_size,
    exact_twins,
    perm_twins_exhaustive,
    perm_twins_greedy,
    split_twins,
    verify_twins,
)
from . import errors

__version__ = "0.1.0"

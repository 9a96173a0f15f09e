"""Exact independence ratios and extremal periodic densities of distance graphs."""

from .core import (
    BlockList,
    BlockStructure,
    BlockSyntaxError,
    DistanceSet,
    ExpansionLimitError,
    IndependenceVerdict,
    NormalizedSet,
    block_density,
    expand_blocks,
    normalize,
    parse_block_notation,
    power_distance_set,
    structure_from_sizes,
    verify_periodic_independent,
)
from .ratio import independence_ratio
from .registry import (
    Family,
    FormulaVerdict,
    Prediction,
    closed_form,
    get_family,
    list_families,
    verify_family,
)
from .search import (
    AlphaTable,
    BudgetExceeded,
    RatioReport,
    SearchBudget,
    alpha_circulant,
    alpha_interval,
    brute_force_alpha_interval,
    compute_ratio,
)
from .stategraph import (
    Coloring,
    CycleWitness,
    Domination,
    EngineCaps,
    IdentifyingCode,
    Independence,
    InexactResultError,
    InfeasibleError,
    StateGraph,
    StateSpaceError,
    build_state_graph,
    extremal_mean_cycle,
    fractional_chromatic,
    independence_ratio_exact,
    min_dominating_density,
    min_identifying_density,
    periodic_coloring,
)

__version__ = "0.1.0"

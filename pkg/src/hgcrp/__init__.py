"""Solvers and checkers for hedonic games with common ranking property."""

from .checks import (
    Deviation,
    apply_move,
    check_properties,
    find_blocking_coalition,
    find_is_deviation,
    find_nash_deviation,
    find_pareto_dominator,
    is_perfect,
    pareto_dominates,
)
from .errors import (
    BudgetExceeded,
    HGCRPError,
    InstanceError,
    ParseError,
    RationalOverflow,
    ResidualNotListed,
    SizeBoundError,
    Unbounded,
)
from .exact import (
    EnumerationBudget,
    enumerate_ir_partitions,
    perfect_partition,
    psi_max_partition,
    socially_optimal,
)
from .generators import (
    GraphSpec,
    SetCoverSpec,
    from_exact_cover,
    from_independent_set,
    pos_family,
    random_instance,
)
from .greedy import greedy_solve
from .matching import WeightedGraph, match2_opt, match2_pcis, max_weight_matching
from .metrics import enumerate_core_stable, price_of_anarchy, price_of_stability, welfare_summary
from .model import (
    Instance,
    Partition,
    induced_partition,
    parse_instance,
    parse_partition,
    psi,
    psi_compare,
    serialize_instance,
    serialize_partition,
    utility_of,
    welfare,
)

__version__ = "0.1.0"

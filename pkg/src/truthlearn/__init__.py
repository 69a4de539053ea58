"""Sequential truth learning on networks.

Agents guess a hidden bit in a fixed decision order, each combining a
noisy private signal with the published actions of earlier neighbors.
This package generates the graphs, constructs decision orderings, runs
majority-rule or exact-Bayesian cascades, and estimates per-node and
network learning rates by Monte Carlo or exact enumeration, with
closed-form bounds for cross-checking.
"""

from .analysis import (
    BoundReport,
    aggregation_success_bound,
    butterfly_recurrence,
    chernoff_tails,
    expected_isolated,
    giant_component_fraction,
    sparse_ceiling,
)
from .decision import (
    BAYESIAN,
    MAJORITY,
    MAX_BAYES_VERTICES,
    ActionVector,
    BayesCapacityError,
    BayesTable,
    ModelConfig,
    SignalVector,
    build_bayes_table,
    majority_decide,
    run_cascade,
    sample_signals,
)
from .graph import (
    ComponentPartition,
    EdgeListParseError,
    Graph,
    connected_components,
    degree_stats,
    from_edges,
    gen_butterfly,
    gen_erdos_renyi,
    gen_grid,
    gen_preferential_attachment,
    greedy_independent_neighbors,
    load_edge_list,
    to_edge_list,
)
from .ordering import (
    Ordering,
    OrderingCertificate,
    aggregator_ordering,
    arrival_ordering,
    bottom_up_ordering,
    grid_loglog_ordering,
    random_ordering,
    spiral_ordering,
    two_neighbors_high_value_ordering,
    two_neighbors_ordering,
)
from .simulate import (
    LearningReport,
    TrialOutcome,
    cascade_stats,
    estimate_learning,
    exact_learning_rate,
)

__version__ = "0.1.0"

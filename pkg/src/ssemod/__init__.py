"""Modularity clustering of regular graphs through small-set expansion."""

from .distinguisher import (
    DistinguisherReport,
    dstar_lower_bound,
    guess_grid,
    mu_feasible_range,
    run,
    verify_paper_bounds,
)
from .errors import (
    BudgetExceededError,
    ExtractionError,
    GraphFormatError,
    NotRegularError,
    PreconditionError,
)
from .estimator import ModularityDistinguisher
from .graph import (
    Clustering,
    Graph,
    TwoPartition,
    complement,
    dump_graph,
    induced_subgraph,
    is_regular,
    load_graph,
    read_graph,
)
from .metrics import (
    expansion,
    measure,
    modularity_clustering,
    modularity_set,
    two_cluster_objective,
)
from .oracle import opt2_exact, opt_exact, sse_exact
from .profile import DESK, PAPER, ParamProfile
from .spectral import ResidualView, eigenvalues, threshold_rank, walk_matrix
from .sse import extract_partition, sse_high_rank_extract, sse_low_rank

__version__ = "0.1.0"

"""Probabilistic Euclidean geometry of weighted graphs via lazy random walks."""

from .analysis import Analysis, analyze
from .graph import (
    DisconnectedGraphError,
    Graph,
    GraphError,
    IsolatedVertexError,
    ParseError,
    complete_graph,
    cycle_graph,
    generate,
    is_connected,
    lattice2d,
    parse_edge_list,
    path_graph,
    random_connected,
    serialize_edge_list,
    volume,
    weighted_degrees,
)
from .metric import (
    angle,
    angle_matrix,
    distance,
    distance_matrix,
    embedding_coords,
    first_passage,
    hitting_matrix,
    hitting_spectral,
    inner_product,
    metric_ball,
    squared_distance,
    squared_norm,
)
from .oracle import effective_resistance, hitting_matrix_solve, hitting_solve, simulate_hitting
from .spectral import MetricSpace, Spectrum, eigh, green_apply, homogeneous_coordinates
from .walk import (
    LazyWalk,
    detailed_balance_violation,
    evolve,
    stationary_distribution,
    symmetrize,
    transition_matrix,
)

__version__ = "0.1.0"

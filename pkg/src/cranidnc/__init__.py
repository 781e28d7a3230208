"""Coded-scheduling optimizer and Monte Carlo benchmark for cloud radio access networks."""

from cranidnc.channel import (
    CapacityMatrix,
    ChannelState,
    NetworkDims,
    PowerProfile,
    capacity,
    capacity_matrix,
    sinr,
)
from cranidnc.clique import (
    CliqueResult,
    WeightedGraph,
    is_clique,
    max_weight_clique_exact,
    max_weight_clique_greedy,
)
from cranidnc.graph import CranGraph, Vertex, build_graph, candidate_rates
from cranidnc.scheduler import (
    ProblemInstance,
    Schedule,
    ThroughputReport,
    clique_to_schedule,
    oracle_best_schedule,
    propose_schedule,
    sum_rate,
    validate_schedule,
)
from cranidnc.sideinfo import (
    EncodedFile,
    SideInformation,
    decoded_file,
    is_instantly_decodable,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityMatrix",
    "ChannelState",
    "CliqueResult",
    "CranGraph",
    "EncodedFile",
    "NetworkDims",
    "PowerProfile",
    "ProblemInstance",
    "Schedule",
    "SideInformation",
    "ThroughputReport",
    "Vertex",
    "WeightedGraph",
    "build_graph",
    "candidate_rates",
    "capacity",
    "capacity_matrix",
    "clique_to_schedule",
    "decoded_file",
    "is_clique",
    "is_instantly_decodable",
    "max_weight_clique_exact",
    "max_weight_clique_greedy",
    "oracle_best_schedule",
    "propose_schedule",
    "sinr",
    "sum_rate",
    "validate_schedule",
]

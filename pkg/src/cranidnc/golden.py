"""Hand-built miniature instances with known optimal schedules.

The unit-rate case has three users wanting files 0, 1, 2 across two
single-block RRHs with every capacity at 1 bit/s/Hz; users 0 and 1 hold each
other's wanted file, so serving their XOR pair from one RRH while the other
RRH serves user 2 reaches the optimum of 3, against 2 for any uncoded plan.

The mixed-rate case keeps the same wants but gives every user the other two
files and an asymmetric capacity matrix, producing a conflict graph whose
best clique combines a solo high-rate transmission with a coded pair for a
total weight of 7.
"""

from __future__ import annotations

import numpy as np

from cranidnc.channel import CapacityMatrix, NetworkDims
from cranidnc.scheduler import ProblemInstance
from cranidnc.sideinfo import SideInformation

__all__ = [
    "unit_rate_case",
    "mixed_rate_case",
    "UNIT_RATE_CODED_OPTIMUM",
    "UNIT_RATE_UNCODED_OPTIMUM",
    "MIXED_RATE_OPTIMUM",
    "MIXED_RATE_CLIQUES",
    "MIXED_RATE_CLIQUE_WEIGHTS",
]

UNIT_RATE_CODED_OPTIMUM = 3.0
UNIT_RATE_UNCODED_OPTIMUM = 2.0
MIXED_RATE_OPTIMUM = 7.0

# Reference cliques of the mixed-rate conflict graph, as (b, z, u, f, r)
# association tuples, with their total weights.
MIXED_RATE_CLIQUES: tuple[tuple[tuple[int, int, int, int, float], ...], ...] = (
    ((0, 0, 0, 0, 1.0), (1, 0, 1, 1, 1.0)),
    ((1, 0, 2, 2, 2.0), (0, 0, 0, 0, 1.0)),
    ((1, 0, 1, 1, 1.0), (0, 0, 2, 2, 2.0)),
    ((1, 0, 0, 0, 1.0), (1, 0, 1, 1, 1.0), (1, 0, 2, 2, 1.0)),
    ((0, 0, 0, 0, 1.0), (0, 0, 1, 1, 1.0), (0, 0, 2, 2, 1.0)),
    ((1, 0, 0, 0, 2.0), (0, 0, 1, 1, 2.0), (0, 0, 2, 2, 2.0)),
    ((0, 0, 1, 1, 3.0), (1, 0, 0, 0, 2.0), (1, 0, 2, 2, 2.0)),
)
MIXED_RATE_CLIQUE_WEIGHTS = (2.0, 3.0, 3.0, 3.0, 3.0, 6.0, 7.0)


def unit_rate_case() -> ProblemInstance:
    dims = NetworkDims(num_rrhs=2, num_rrbs_per_rrh=1, num_users=3, num_files=3)
    capacities = CapacityMatrix(np.ones((2, 1, 3)))
    side_info = SideInformation.from_lists(
        has=[{1}, {0}, set()],
        wants=[{0}, {1}, {2}],
        num_files=3,
    )
    return ProblemInstance(dims, capacities, side_info, file_size_bits=1.0e6)


def mixed_rate_case() -> ProblemInstance:
    dims = NetworkDims(num_rrhs=2, num_rrbs_per_rrh=1, num_users=3, num_files=3)
    rate = np.zeros((2, 1, 3))
    rate[0, 0, :] = (1.0, 3.0, 2.0)
    rate[1, 0, :] = (2.0, 1.0, 2.0)
    side_info = SideInformation.from_lists(
        has=[{1, 2}, {0, 2}, {0, 1}],
        wants=[{0}, {1}, {2}],
        num_files=3,
    )
    return ProblemInstance(dims, CapacityMatrix(rate), side_info, file_size_bits=1.0e6)

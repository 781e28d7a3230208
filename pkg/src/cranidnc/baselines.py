"""Comparison schedulers: rate-unaware coding, rate-greedy mixing, uncoded.

classical_idnc picks XOR combinations to maximize targeted users while
ignoring capacities, then transmits each RRB at the minimum capacity of its
targets. rlnc assigns every user to its best RRB and mixes all files there.
heu_shd serves a single user per RRB at that user's own capacity.
"""

from __future__ import annotations

import numpy as np

from cranidnc.clique import (
    DEFAULT_EXACT_VERTEX_BUDGET,
    WeightedGraph,
    solve_max_weight_clique,
)
from cranidnc.graph import CranGraph, Vertex, adjacency_from_fields
from cranidnc.scheduler import (
    ProblemInstance,
    Schedule,
    ScheduleEntry,
    ThroughputReport,
    build_report,
    clique_to_schedule,
    validate_schedule,
)
from cranidnc.sideinfo import EncodedFile

__all__ = ["classical_idnc", "rlnc", "heu_shd", "CLASSICAL_EXACT_VERTEX_BUDGET"]

# Unit-weight graphs give branch-and-bound no weight ordering to prune on,
# so the rate-free baseline must fall back to greedy much sooner than the
# weighted solvers do.
CLASSICAL_EXACT_VERTEX_BUDGET = 60


def _checked(schedule: Schedule, instance: ProblemInstance, label: str, *,
             check_decodability: bool = True) -> tuple[Schedule, ThroughputReport]:
    violations = validate_schedule(schedule, instance.capacities, instance.side_info,
                                   check_decodability=check_decodability)
    if violations:
        raise RuntimeError(f"{label} produced an infeasible schedule: " + "; ".join(violations))
    report = build_report(schedule, instance.file_size_bits, instance.dims.num_users)
    return schedule, report


def classical_idnc(instance: ProblemInstance, *,
                   vertex_budget: int = CLASSICAL_EXACT_VERTEX_BUDGET,
                   ) -> tuple[Schedule, ThroughputReport]:
    """Rate-unaware coded scheduler.

    Maximizes the number of targeted users on a rate-free conflict graph
    (unit vertex weights, no equal-rate requirement), then sets each RRB's
    rate to the minimum capacity among its targets. RRBs whose minimum is
    zero deliver nothing and are dropped.
    """
    dims = instance.dims
    si = instance.side_info
    associations: list[tuple[int, int, int, int]] = []
    for b in range(dims.num_rrhs):
        for z in range(dims.num_rrbs_per_rrh):
            for u in range(dims.num_users):
                for f in sorted(si.wants[u]):
                    associations.append((b, z, u, f))
    n = len(associations)
    if n == 0:
        return _checked(Schedule({}), instance, "classical_idnc")
    vb, vz, vu, vf = (np.array(col, dtype=np.int64) for col in zip(*associations))
    adjacency = adjacency_from_fields(vb, vz, vu, vf, None, si)
    result, _ = solve_max_weight_clique(WeightedGraph(adjacency, np.ones(n)),
                                        vertex_budget=vertex_budget)
    groups: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for i in sorted(result.members):
        b, z, u, f = associations[i]
        groups.setdefault((b, z), []).append((u, f))
    entries: dict[tuple[int, int], ScheduleEntry] = {}
    for (b, z), pairs in sorted(groups.items()):
        rate = float(min(instance.capacities.rate[b, z, u] for u, _ in pairs))
        if rate <= 0.0:
            continue
        entries[(b, z)] = ScheduleEntry(
            kappa=EncodedFile(frozenset(f for _, f in pairs)),
            rate=rate,
            targeted=frozenset(u for u, _ in pairs),
        )
    return _checked(Schedule(entries), instance, "classical_idnc")


def rlnc(instance: ProblemInstance) -> tuple[Schedule, ThroughputReport]:
    """Rate-greedy full mixing.

    Each requesting user joins the RRB where its capacity peaks (ties to the
    lexicographically first RRB); every loaded RRB mixes the whole file
    library and transmits at the minimum capacity of its users. Throughput
    credits every assigned user at the RRB rate, so feasibility here skips
    the instant-decodability requirement.
    """
    dims = instance.dims
    si = instance.side_info
    cm = instance.capacities.rate
    assignments: dict[tuple[int, int], list[int]] = {}
    for u in range(dims.num_users):
        if not si.wants[u]:
            continue
        flat = int(np.argmax(cm[:, :, u]))
        b, z = divmod(flat, dims.num_rrbs_per_rrh)
        assignments.setdefault((b, z), []).append(u)
    all_files = frozenset(range(dims.num_files))
    entries: dict[tuple[int, int], ScheduleEntry] = {}
    for (b, z), users in sorted(assignments.items()):
        rate = float(min(cm[b, z, u] for u in users))
        if rate <= 0.0:
            continue
        entries[(b, z)] = ScheduleEntry(EncodedFile(all_files), rate, frozenset(users))
    return _checked(Schedule(entries), instance, "rlnc", check_decodability=False)


def _uncoded_graph(instance: ProblemInstance) -> CranGraph:
    """Conflict graph restricted to one user per RRB at its own capacity."""
    dims = instance.dims
    si = instance.side_info
    cm = instance.capacities.rate
    vertices: list[Vertex] = []
    for b in range(dims.num_rrhs):
        for z in range(dims.num_rrbs_per_rrh):
            for u in range(dims.num_users):
                rate = float(cm[b, z, u])
                if rate <= 0.0:
                    continue
                for f in sorted(si.wants[u]):
                    vertices.append(Vertex(len(vertices), b, z, u, f, rate))
    n = len(vertices)
    vb = np.fromiter((v.b for v in vertices), dtype=np.int64, count=n)
    vz = np.fromiter((v.z for v in vertices), dtype=np.int64, count=n)
    vu = np.fromiter((v.u for v in vertices), dtype=np.int64, count=n)
    vf = np.fromiter((v.f for v in vertices), dtype=np.int64, count=n)
    vr = np.fromiter((v.r for v in vertices), dtype=np.float64, count=n)
    adjacency = adjacency_from_fields(vb, vz, vu, vf, vr, si, local_edges=False)
    return CranGraph(tuple(vertices), adjacency, vr.copy())


def heu_shd(instance: ProblemInstance, *,
            vertex_budget: int = DEFAULT_EXACT_VERTEX_BUDGET,
            ) -> tuple[Schedule, ThroughputReport]:
    """Uncoded scheduler: at most one user per RRB, many RRBs of one RRH per user."""
    g = _uncoded_graph(instance)
    if g.num_vertices == 0:
        return _checked(Schedule({}), instance, "heu_shd")
    result, _ = solve_max_weight_clique(g.as_weighted_graph(), vertex_budget=vertex_budget)
    schedule = clique_to_schedule(result, g)
    return _checked(schedule, instance, "heu_shd")

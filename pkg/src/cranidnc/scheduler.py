"""Schedule extraction, feasibility validation, and the proposed pipeline.

A schedule assigns each active RRB an XOR combination, a transmission rate,
and a targeted user set. The solved clique maps onto it directly: per RRB,
the combination is the distinct files of the clique vertices there, the
targeted users their union, and the rate their common value.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from cranidnc.channel import CapacityMatrix, NetworkDims
from cranidnc.clique import (
    CliqueResult,
    max_weight_clique_exact,
    max_weight_clique_greedy,
)
from cranidnc.graph import CranGraph, build_graph
from cranidnc.sideinfo import EncodedFile, SideInformation, is_instantly_decodable

__all__ = [
    "ProblemInstance",
    "ScheduleEntry",
    "Schedule",
    "ThroughputReport",
    "clique_to_schedule",
    "validate_schedule",
    "sum_rate",
    "build_report",
    "propose_schedule",
    "oracle_best_schedule",
    "format_schedule",
    "parse_schedule",
]


@dataclass(frozen=True)
class ProblemInstance:
    """One scheduling frame: topology, capacities, side information, file size."""

    dims: NetworkDims
    capacities: CapacityMatrix
    side_info: SideInformation
    file_size_bits: float


@dataclass(frozen=True)
class ScheduleEntry:
    kappa: EncodedFile
    rate: float
    targeted: frozenset[int]


@dataclass(frozen=True)
class Schedule:
    """Per-(rrh, rrb) transmissions; silent RRBs carry no entry."""

    entries: dict[tuple[int, int], ScheduleEntry]

    def items(self):
        return sorted(self.entries.items())


@dataclass(frozen=True)
class ThroughputReport:
    """Objective value plus delivered-bit accounting for one frame."""

    sum_rate: float
    delivered_bits: float
    per_user: dict[int, float]


def sum_rate(s: Schedule) -> float:
    """Frame objective: sum over entries of targeted-user count times rate."""
    total = 0.0
    for _, entry in s.items():
        total += len(entry.targeted) * entry.rate
    return total


def build_report(s: Schedule, file_size_bits: float, num_users: int) -> ThroughputReport:
    per_user: dict[int, float] = {}
    deliveries = 0
    for _, entry in s.items():
        deliveries += len(entry.targeted)
        for u in entry.targeted:
            per_user[u] = per_user.get(u, 0.0) + entry.rate
    return ThroughputReport(sum_rate(s), deliveries * float(file_size_bits), per_user)


def clique_to_schedule(c: CliqueResult, g: CranGraph) -> Schedule:
    """Combine the clique's vertices into per-RRB transmissions."""
    ids = sorted(c.members)
    if ids:
        if ids[0] < 0 or ids[-1] >= g.num_vertices:
            raise IndexError("clique contains unknown vertex ids")
        sub = g.adjacency[np.ix_(ids, ids)]
        if not np.all(sub | np.eye(len(ids), dtype=bool)):
            raise ValueError("vertex set is not a clique of the graph")
    groups: dict[tuple[int, int], list] = defaultdict(list)
    for i in ids:
        v = g.vertices[i]
        groups[(v.b, v.z)].append(v)
    entries: dict[tuple[int, int], ScheduleEntry] = {}
    for key in sorted(groups):
        members = groups[key]
        rates = {v.r for v in members}
        if len(rates) != 1:
            raise RuntimeError(f"clique vertices of RRB {key} disagree on rate: {sorted(rates)}")
        entries[key] = ScheduleEntry(
            kappa=EncodedFile(frozenset(v.f for v in members)),
            rate=rates.pop(),
            targeted=frozenset(v.u for v in members),
        )
    return Schedule(entries)


def validate_schedule(s: Schedule, cm: CapacityMatrix, si: SideInformation, *,
                      check_decodability: bool = True) -> list[str]:
    """All feasibility violations of a schedule (empty list means feasible).

    Checks the single-RRH-per-user rule, per-user rate feasibility, instant
    decodability of each combination (optional), and combination sanity.
    """
    violations: list[str] = []
    num_rrhs, num_rrbs, num_users = cm.shape
    user_rrhs: dict[int, set[int]] = defaultdict(set)
    for (b, z), entry in s.items():
        where = f"rrb({b},{z})"
        if not (0 <= b < num_rrhs and 0 <= z < num_rrbs):
            violations.append(f"{where}: index: RRB outside the network")
            continue
        if any(not 0 <= f < si.num_files for f in entry.kappa.files):
            violations.append(f"{where}: kappa: file index outside the library")
        if not entry.targeted:
            violations.append(f"{where}: targeted: empty user set")
        if not entry.rate > 0:
            violations.append(f"{where}: rate: must be positive, got {entry.rate}")
        for u in sorted(entry.targeted):
            if not 0 <= u < num_users:
                violations.append(f"{where}: user: index {u} outside the network")
                continue
            user_rrhs[u].add(b)
            if entry.rate > cm.rate[b, z, u]:
                violations.append(
                    f"{where}: rate: {entry.rate} exceeds capacity "
                    f"{cm.rate[b, z, u]} of user {u}")
            if check_decodability and not is_instantly_decodable(entry.kappa, u, si):
                violations.append(
                    f"{where}: decode: {sorted(entry.kappa.files)} not instantly "
                    f"decodable for user {u}")
    for u in sorted(user_rrhs):
        if len(user_rrhs[u]) > 1:
            violations.append(f"user {u}: cc: connected to RRHs {sorted(user_rrhs[u])}")
    return violations


def propose_schedule(instance: ProblemInstance, solver: str = "exact", *,
                     graph: CranGraph | None = None,
                     ) -> tuple[Schedule, ThroughputReport]:
    """End-to-end pipeline: build graph, solve clique, extract, validate, report."""
    g = graph
    if g is None:
        g = build_graph(instance.capacities, instance.side_info, instance.dims)
    wg = g.as_weighted_graph()
    if solver == "exact":
        result = max_weight_clique_exact(wg)
    elif solver == "greedy":
        result = max_weight_clique_greedy(wg)
    else:
        raise ValueError(f"unknown solver {solver!r}")
    schedule = clique_to_schedule(result, g)
    violations = validate_schedule(schedule, instance.capacities, instance.side_info)
    if violations:
        raise RuntimeError("extracted schedule is infeasible: " + "; ".join(violations))
    report = build_report(schedule, instance.file_size_bits, instance.dims.num_users)
    return schedule, report


def oracle_best_schedule(instance: ProblemInstance, *, max_users: int = 3,
                         max_rrhs: int = 2, max_rrbs: int = 2, max_files: int = 3,
                         ) -> tuple[Schedule, float]:
    """Exhaustive optimum over every feasible frame, for tiny instances only.

    Enumerates per RRB every (combination, rate, targeted subset) with rates
    drawn from the user capacities on that RRB, then searches the cross-RRB
    product under the single-RRH-per-user rule. Deliberately independent of
    the conflict-graph pipeline.
    """
    dims = instance.dims
    if (dims.num_users > max_users or dims.num_rrhs > max_rrhs
            or dims.num_rrbs_per_rrh > max_rrbs or dims.num_files > max_files):
        raise ValueError("instance exceeds the oracle enumeration budget")
    si = instance.side_info
    cm = instance.capacities
    users = range(dims.num_users)
    file_subsets = [
        frozenset(combo)
        for size in range(1, dims.num_files + 1)
        for combo in itertools.combinations(range(dims.num_files), size)
    ]

    rrbs = [(b, z) for b in range(dims.num_rrhs) for z in range(dims.num_rrbs_per_rrh)]
    # Per RRB: targeted set -> (best rate, witness combination). Rate choice is
    # independent across RRBs once the targeted sets are fixed.
    per_rrb_options: list[list[tuple[frozenset[int], float, frozenset[int]]]] = []
    for b, z in rrbs:
        column = cm.rate[b, z, :]
        rates = sorted({float(x) for x in column if x > 0.0}, reverse=True)
        best: dict[frozenset[int], tuple[float, frozenset[int]]] = {}
        for kappa_files in file_subsets:
            kappa = EncodedFile(kappa_files)
            decodable = [u for u in users if is_instantly_decodable(kappa, u, si)]
            for rate in rates:
                eligible = [u for u in decodable if rate <= column[u]]
                for size in range(1, len(eligible) + 1):
                    for combo in itertools.combinations(eligible, size):
                        targeted = frozenset(combo)
                        current = best.get(targeted)
                        if current is None or rate > current[0]:
                            best[targeted] = (rate, kappa_files)
        options = [(targeted, rate, kappa_files)
                   for targeted, (rate, kappa_files) in sorted(best.items(), key=lambda kv: sorted(kv[0]))]
        per_rrb_options.append(options)

    suffix_best = [0.0] * (len(rrbs) + 1)
    for i in range(len(rrbs) - 1, -1, -1):
        local = max((len(t) * r for t, r, _ in per_rrb_options[i]), default=0.0)
        suffix_best[i] = suffix_best[i + 1] + local

    best_value = -1.0
    best_entries: dict[tuple[int, int], ScheduleEntry] = {}

    def search(i: int, value: float, user_rrh: dict[int, int],
               chosen: dict[tuple[int, int], ScheduleEntry]) -> None:
        nonlocal best_value, best_entries
        if value + suffix_best[i] <= best_value:
            return
        if i == len(rrbs):
            if value > best_value:
                best_value = value
                best_entries = dict(chosen)
            return
        b, z = rrbs[i]
        # Leaving the RRB silent is always an option.
        search(i + 1, value, user_rrh, chosen)
        for targeted, rate, kappa_files in per_rrb_options[i]:
            if any(user_rrh.get(u, b) != b for u in targeted):
                continue
            added = {u: b for u in targeted if u not in user_rrh}
            user_rrh.update(added)
            chosen[(b, z)] = ScheduleEntry(EncodedFile(kappa_files), rate, targeted)
            search(i + 1, value + len(targeted) * rate, user_rrh, chosen)
            del chosen[(b, z)]
            for u in added:
                del user_rrh[u]

    search(0, 0.0, {}, {})
    schedule = Schedule({key: best_entries[key] for key in sorted(best_entries)})
    return schedule, sum_rate(schedule)


def format_schedule(s: Schedule) -> str:
    """One line per entry: `b z rate file,file,... user,user,...`."""
    lines = []
    for (b, z), entry in s.items():
        files = ",".join(str(f) for f in sorted(entry.kappa.files))
        targets = ",".join(str(u) for u in sorted(entry.targeted))
        lines.append(f"{b} {z} {entry.rate!r} {files} {targets}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_schedule(text: str) -> Schedule:
    entries: dict[tuple[int, int], ScheduleEntry] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        b_str, z_str, rate_str, files_str, users_str = line.split()
        key = (int(b_str), int(z_str))
        entries[key] = ScheduleEntry(
            kappa=EncodedFile(frozenset(int(f) for f in files_str.split(","))),
            rate=float(rate_str),
            targeted=frozenset(int(u) for u in users_str.split(",")),
        )
    return Schedule({key: entries[key] for key in sorted(entries)})

"""Maximum-weight clique search: exact branch-and-bound and greedy heuristic.

The exact solver explores vertices in descending-weight order and prunes a
branch whenever the running weight plus the total weight of the remaining
candidates cannot beat the incumbent. The greedy heuristic repeatedly picks
the vertex with the best weight-times-neighborhood-weight score and restricts
the candidate pool to its neighborhood, which returns a maximal clique in
quadratic time.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "DEFAULT_EXACT_VERTEX_BUDGET",
    "WeightedGraph",
    "CliqueResult",
    "is_clique",
    "max_weight_clique_exact",
    "max_weight_clique_greedy",
    "solve_max_weight_clique",
    "read_dimacs",
]

# Above this vertex count the orchestration layer falls back to the greedy
# heuristic (the exact problem is NP-complete). Dense scheduling graphs at
# ~350 vertices stay sub-second for branch-and-bound; ~550 already takes
# minutes.
DEFAULT_EXACT_VERTEX_BUDGET = 300


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph with strictly positive vertex weights."""

    adjacency: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        adj = np.array(self.adjacency, dtype=bool)
        w = np.array(self.weights, dtype=float)
        if adj.shape != (len(w), len(w)):
            raise ValueError("adjacency must be square over the weight vector")
        if adj.size and np.any(adj != adj.T):
            raise ValueError("adjacency must be symmetric")
        if adj.size and np.any(np.diag(adj)):
            raise ValueError("adjacency must be irreflexive")
        if np.any(~np.isfinite(w)) or np.any(w <= 0):
            raise ValueError("weights must be finite and strictly positive")
        object.__setattr__(self, "adjacency", adj)
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return len(self.weights)

    @cached_property
    def _neighbor_masks(self) -> tuple[int, ...]:
        return tuple(
            int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")
            for row in self.adjacency
        )


@dataclass(frozen=True)
class CliqueResult:
    members: frozenset[int]
    total_weight: float


def _canonical_weight(weights: np.ndarray, members) -> float:
    total = 0.0
    for v in sorted(members):
        total += float(weights[v])
    return total


def is_clique(g: WeightedGraph, s) -> bool:
    """True when every pair in s is adjacent (empty and singleton sets pass)."""
    ids = sorted(set(s))
    for v in ids:
        if not 0 <= v < g.n:
            raise IndexError(f"vertex id {v} out of range [0, {g.n})")
    if len(ids) < 2:
        return True
    sub = g.adjacency[np.ix_(ids, ids)]
    return bool(np.all(sub | np.eye(len(ids), dtype=bool)))


def max_weight_clique_greedy(g: WeightedGraph) -> CliqueResult:
    """Quadratic heuristic: highest weight*(1 + candidate-neighborhood weight) first.

    Ties go to the lowest vertex id; the returned clique is maximal.
    """
    n = g.n
    if n == 0:
        return CliqueResult(frozenset(), 0.0)
    adj = g.adjacency
    adjf = adj.astype(np.float64)
    w = g.weights
    cand = np.ones(n, dtype=bool)
    members: list[int] = []
    while cand.any():
        wc = np.where(cand, w, 0.0)
        neighbor_weight = adjf @ wc
        scores = np.where(cand, w * (1.0 + neighbor_weight), -np.inf)
        v = int(np.argmax(scores))
        members.append(v)
        cand &= adj[v]
    return CliqueResult(frozenset(members), _canonical_weight(w, members))


def max_weight_clique_exact(g: WeightedGraph) -> CliqueResult:
    """Branch-and-bound optimum; prunes on the sum of remaining candidate weights.

    Deterministic: vertices are expanded in descending-weight (then id) order
    and the incumbent is only replaced on strict improvement.
    """
    n = g.n
    if n == 0:
        return CliqueResult(frozenset(), 0.0)
    order = sorted(range(n), key=lambda v: (-g.weights[v], v))
    w = [float(g.weights[v]) for v in order]
    reordered = g.adjacency[np.ix_(order, order)]
    masks = [
        int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")
        for row in reordered
    ]

    seed = max_weight_clique_greedy(g)
    best_weight = seed.total_weight
    best_members = seed.members

    def mask_weight(mask: int) -> float:
        total = 0.0
        while mask:
            low = mask & -mask
            total += w[low.bit_length() - 1]
            mask ^= low
        return total

    def expand(chosen: list[int], chosen_weight: float, cand: int, cand_weight: float) -> None:
        nonlocal best_weight, best_members
        while cand:
            if chosen_weight + cand_weight <= best_weight:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            extended = cand & masks[v]
            if extended:
                expand(chosen + [v], chosen_weight + w[v], extended, mask_weight(extended))
            elif chosen_weight + w[v] > best_weight:
                members = frozenset(order[i] for i in chosen + [v])
                best_members = members
                best_weight = _canonical_weight(g.weights, members)
            cand_weight -= w[v]

    previous_limit = sys.getrecursionlimit()
    if previous_limit < n + 100:
        sys.setrecursionlimit(n + 100)
    try:
        expand([], 0.0, (1 << n) - 1, sum(w))
    finally:
        if previous_limit < n + 100:
            sys.setrecursionlimit(previous_limit)
    return CliqueResult(best_members, best_weight)


def solve_max_weight_clique(g: WeightedGraph, method: str = "auto",
                            vertex_budget: int = DEFAULT_EXACT_VERTEX_BUDGET,
                            ) -> tuple[CliqueResult, str]:
    """Dispatch to the exact solver inside the vertex budget, greedy outside."""
    if method == "auto":
        method = "exact" if g.n <= vertex_budget else "greedy"
    if method == "exact":
        return max_weight_clique_exact(g), "exact"
    if method == "greedy":
        return max_weight_clique_greedy(g), "greedy"
    raise ValueError(f"unknown solver method {method!r}")


def read_dimacs(path: str) -> WeightedGraph:
    """Read the edge-list format produced by the graph exporter.

    Vertices are 1-based in the file; missing `w` lines default to weight 1.
    """
    n = None
    weights = None
    edges: list[tuple[int, int]] = []
    with open(path, encoding="ascii") as handle:
        for line in handle:
            tokens = line.split()
            if not tokens or tokens[0] == "c":
                continue
            kind = tokens[0]
            if kind == "p":
                n = int(tokens[2])
                weights = np.ones(n)
            elif kind == "w":
                if weights is None:
                    raise ValueError("w line before p line")
                weights[int(tokens[1]) - 1] = float(tokens[2])
            elif kind == "e":
                edges.append((int(tokens[1]) - 1, int(tokens[2]) - 1))
            else:
                raise ValueError(f"unrecognized line: {line.rstrip()}")
    if n is None:
        raise ValueError("missing p line")
    adjacency = np.zeros((n, n), dtype=bool)
    for i, j in edges:
        adjacency[i, j] = adjacency[j, i] = True
    return WeightedGraph(adjacency, weights)

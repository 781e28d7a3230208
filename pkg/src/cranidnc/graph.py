"""Conflict-graph construction for joint user/RRB/file/rate scheduling.

Each vertex is a 5-tuple association (rrh b, rrb z, user u, file f, rate r).
Within one (b, z) block two vertices are compatible when the implied XOR
combination stays decodable for both users (mutual has, or same file) and
both carry the same transmission rate. Across blocks, compatibility encodes
that a user may occupy several RRBs of one RRH but never two RRHs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import TextIO

import numpy as np

from cranidnc.channel import CapacityMatrix, NetworkDims
from cranidnc.sideinfo import SideInformation

__all__ = [
    "Vertex",
    "CranGraph",
    "candidate_rates",
    "lc_adjacent",
    "gc_adjacent",
    "build_graph",
    "write_dimacs",
]


@dataclass(frozen=True)
class Vertex:
    """One candidate association: serve user u file f on RRB (b, z) at rate r."""

    id: int
    b: int
    z: int
    u: int
    f: int
    r: float

    @property
    def key(self) -> tuple[int, int, int, int, float]:
        return (self.b, self.z, self.u, self.f, self.r)


@dataclass(frozen=True)
class CranGraph:
    """Weighted conflict graph over all candidate associations.

    adjacency is a symmetric irreflexive boolean matrix; weight(v) equals the
    vertex rate, so clique weight equals schedule sum rate.
    """

    vertices: tuple[Vertex, ...]
    adjacency: np.ndarray
    weights: np.ndarray

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return int(np.triu(self.adjacency, 1).sum())

    @cached_property
    def _index(self) -> dict[tuple[int, int, int, int, float], int]:
        return {v.key: v.id for v in self.vertices}

    def find_vertex(self, b: int, z: int, u: int, f: int, r: float) -> int | None:
        """Vertex id for the exact association tuple, or None."""
        return self._index.get((b, z, u, f, r))

    def as_weighted_graph(self):
        from cranidnc.clique import WeightedGraph

        return WeightedGraph(self.adjacency, self.weights)


def candidate_rates(b: int, z: int, u: int, cm: CapacityMatrix) -> set[float]:
    """Rates worth instantiating for user u on RRB (b, z).

    These are the capacities of the users on this RRB, restricted to values
    user u can itself sustain. Any optimal RRB rate equals some targeted
    user's capacity, so this finite set loses nothing.
    """
    num_rrhs, num_rrbs, _ = cm.shape
    if not 0 <= b < num_rrhs:
        raise IndexError(f"rrh index {b} out of range")
    if not 0 <= z < num_rrbs:
        raise IndexError(f"rrb index {z} out of range")
    column = cm.rate[b, z, :]
    own = column[u]
    return {float(x) for x in column if 0.0 < x <= own}


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


def lc_adjacent(v: Vertex, v2: Vertex, si: SideInformation) -> bool:
    """Compatibility of two associations on the same RRB.

    True when the pair is jointly decodable (mutual has, or same file) and
    both vertices carry the same rate.
    """
    _require((v.b, v.z) == (v2.b, v2.z), "lc_adjacent requires vertices of one RRB")
    _require(v.id != v2.id, "lc_adjacent requires distinct vertices")
    decodable = (v.f in si.has[v2.u] and v2.f in si.has[v.u]) or v.f == v2.f
    return decodable and v.r == v2.r


def gc_adjacent(v: Vertex, v2: Vertex, si: SideInformation) -> bool:
    """Compatibility of two associations on different RRBs.

    Same user on one RRH (GC1), same-RRH blocks carrying a compatible file
    pair (GC2), or two distinct users anywhere (GC3).
    """
    _require((v.b, v.z) != (v2.b, v2.z), "gc_adjacent requires vertices of different RRBs")
    gc1 = v.u == v2.u and v.b == v2.b
    gc2 = v.b == v2.b and (v.f == v2.f or (v.f in si.has[v2.u] and v2.f in si.has[v.u]))
    gc3 = v.u != v2.u and (v.b, v.z) != (v2.b, v2.z)
    return gc1 or gc2 or gc3


def adjacency_from_fields(vb: np.ndarray, vz: np.ndarray, vu: np.ndarray,
                          vf: np.ndarray, vr: np.ndarray | None,
                          si: SideInformation, *,
                          local_edges: bool = True) -> np.ndarray:
    """Vectorized pairwise evaluation of the local/global conditions.

    vr=None drops the equal-rate requirement (rate-unaware variant);
    local_edges=False empties every within-RRB edge set (uncoded variant).
    """
    n = len(vb)
    if n == 0:
        return np.zeros((0, 0), dtype=bool)
    has_matrix = np.zeros((si.num_users, si.num_files), dtype=bool)
    for u, held in enumerate(si.has):
        for f in held:
            has_matrix[u, f] = True
    in_has = has_matrix[vu[:, None], vf[None, :]]  # [i, j] = f_j in has(u_i)
    mutual = in_has & in_has.T
    same_f = vf[:, None] == vf[None, :]
    same_b = vb[:, None] == vb[None, :]
    same_bz = same_b & (vz[:, None] == vz[None, :])
    same_u = vu[:, None] == vu[None, :]
    if local_edges:
        lc = mutual | same_f
        if vr is not None:
            lc &= vr[:, None] == vr[None, :]
    else:
        lc = np.zeros((n, n), dtype=bool)
    gc = (same_u & same_b) | (same_b & (same_f | mutual)) | ~same_u
    adjacency = np.where(same_bz, lc, gc)
    np.fill_diagonal(adjacency, False)
    return adjacency


def build_graph(cm: CapacityMatrix, si: SideInformation, dims: NetworkDims) -> CranGraph:
    """Full conflict graph: one vertex per (b, z, u, wanted file, candidate rate).

    Vertex ids follow lexicographic (b, z, u, f, r) order; all-empty wants
    yields a valid empty graph.
    """
    if si.num_users != dims.num_users:
        raise ValueError("side information does not cover the user population")
    vertices: list[Vertex] = []
    for b in range(dims.num_rrhs):
        for z in range(dims.num_rrbs_per_rrh):
            for u in range(dims.num_users):
                rates = sorted(candidate_rates(b, z, u, cm))
                if not rates:
                    continue
                for f in sorted(si.wants[u]):
                    for r in rates:
                        vertices.append(Vertex(len(vertices), b, z, u, f, r))
    n = len(vertices)
    vb = np.fromiter((v.b for v in vertices), dtype=np.int64, count=n)
    vz = np.fromiter((v.z for v in vertices), dtype=np.int64, count=n)
    vu = np.fromiter((v.u for v in vertices), dtype=np.int64, count=n)
    vf = np.fromiter((v.f for v in vertices), dtype=np.int64, count=n)
    vr = np.fromiter((v.r for v in vertices), dtype=np.float64, count=n)
    adjacency = adjacency_from_fields(vb, vz, vu, vf, vr, si)
    return CranGraph(tuple(vertices), adjacency, vr.copy())


def write_dimacs(graph, target: str | TextIO) -> None:
    """Edge-list text export: `p edge n m`, `w i weight`, `e i j` (1-based)."""
    adjacency = graph.adjacency
    weights = graph.weights
    n = len(weights)
    rows, cols = np.nonzero(np.triu(adjacency, 1))
    lines = [f"p edge {n} {len(rows)}"]
    lines.extend(f"w {i + 1} {float(weights[i])!r}" for i in range(n))
    lines.extend(f"e {i + 1} {j + 1}" for i, j in zip(rows.tolist(), cols.tolist()))
    text = "\n".join(lines) + "\n"
    if isinstance(target, str):
        with open(target, "w", encoding="ascii") as handle:
            handle.write(text)
    else:
        target.write(text)

"""
Geometry - Cheeger and dual Cheeger constants, graph distances and
Ollivier-Ricci curvature over exact Wasserstein-1 distances

Every stored value is an exact Fraction. The exhaustive searches run over
numpy chunks and only the winning candidate is rebuilt in exact arithmetic.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple

import networkx as nx
import numpy as np

from core.errors import BadParams, IdenticalVertices, TooLarge
from core.flow import MinCostFlow
from utils.constants import CHEEGER_MAX_VERTICES, DUAL_CHEEGER_MAX_VERTICES, ENUMERATION_CHUNK
from utils.log import logger


@dataclass(frozen=True)
class CheegerResult:
    value: Fraction
    approx: float
    witness_subset: Tuple[int, ...]


@dataclass(frozen=True)
class DualCheegerResult:
    value: Fraction
    approx: float
    witness: Tuple[Tuple[int, ...], Tuple[int, ...]]


@dataclass(frozen=True)
class CurvatureEntry:
    v: int
    w: int
    w1: Fraction
    kappa: Fraction


@dataclass(frozen=True)
class CurvatureReport:
    """Per-edge Ollivier-Ricci curvature; k_min is the minimum over edges"""

    entries: Tuple[CurvatureEntry, ...]
    k_min: Fraction

    def kappa(self, v, w):
        key = (v, w) if v < w else (w, v)
        for entry in self.entries:
            if (entry.v, entry.w) == key:
                return entry.kappa
        raise KeyError(key)


def _edge_arrays(g):
    edges = np.array(g.edges, dtype=np.int64).reshape(-1, 2)
    return edges[:, 0], edges[:, 1]


def cut_size(g, subset):
    """|E(U, V \\ U)|"""
    inside = set(subset)
    return sum(1 for u, v in g.edges if (u in inside) != (v in inside))


def cheeger_quotient(g, subset):
    """|E(U, V \\ U)| / min(vol U, vol V \\ U) for a nonempty proper subset U"""
    inside = set(subset)
    if not inside or len(inside) >= g.n or not inside <= set(range(g.n)):
        raise BadParams(f"{sorted(inside)} is not a nonempty proper vertex subset")
    volume = g.volume(inside)
    return Fraction(cut_size(g, inside), min(volume, 2 * g.m - volume))


def dual_cheeger_quotient(g, first, second):
    """2 |E(V1, V2)| / (vol V1 + vol V2) for disjoint nonempty V1, V2"""
    first, second = set(first), set(second)
    if not first or not second or first & second:
        raise BadParams("dual Cheeger sets must be nonempty and disjoint")
    crossing = sum(1 for u, v in g.edges
                   if (u in first and v in second) or (u in second and v in first))
    return Fraction(2 * crossing, g.volume(first) + g.volume(second))


def cheeger(g):
    """Exact h(G) by exhaustive search over subsets containing vertex 0"""
    if g.n > CHEEGER_MAX_VERTICES:
        raise TooLarge(f"cheeger enumerates 2^(n-1) subsets; n = {g.n} exceeds {CHEEGER_MAX_VERTICES}")
    eu, ev = _edge_arrays(g)
    degrees = np.array(g.degrees, dtype=np.int64)
    total_volume = 2 * g.m
    shifts = np.arange(g.n - 1, dtype=np.int64)
    # masks index the membership of vertices 1..n-1; the all-ones mask is U = V
    count = (1 << (g.n - 1)) - 1

    best_value, best_mask = None, None
    for start in range(0, count, ENUMERATION_CHUNK):
        masks = np.arange(start, min(start + ENUMERATION_CHUNK, count), dtype=np.int64)
        bits = np.ones((len(masks), g.n), dtype=bool)
        bits[:, 1:] = (masks[:, None] >> shifts) & 1
        cut = np.count_nonzero(bits[:, eu] != bits[:, ev], axis=1)
        volume = bits @ degrees
        quotient = cut / np.minimum(volume, total_volume - volume)
        i = int(np.argmin(quotient))
        if best_value is None or quotient[i] < best_value:
            best_value, best_mask = float(quotient[i]), int(masks[i])

    witness = (0,) + tuple(k + 1 for k in range(g.n - 1) if best_mask >> k & 1)
    value = cheeger_quotient(g, witness)
    logger.debug(f"🔍 cheeger: h = {value} over {count} subsets")
    return CheegerResult(value=value, approx=float(value), witness_subset=witness)


def dual_cheeger(g):
    """Exact dual Cheeger constant by exhaustive 3-colouring (V1 / V2 / neither)"""
    if g.n > DUAL_CHEEGER_MAX_VERTICES:
        raise TooLarge(f"dual_cheeger enumerates 3^n colourings; n = {g.n} exceeds "
                       f"{DUAL_CHEEGER_MAX_VERTICES}")
    eu, ev = _edge_arrays(g)
    degrees = np.array(g.degrees, dtype=np.int64)
    powers = 3 ** np.arange(g.n, dtype=np.int64)
    count = 3 ** g.n

    best_value, best_code = None, None
    for start in range(0, count, ENUMERATION_CHUNK):
        codes = np.arange(start, min(start + ENUMERATION_CHUNK, count), dtype=np.int64)
        colours = (codes[:, None] // powers) % 3
        first, second = colours == 1, colours == 2
        valid = first.any(axis=1) & second.any(axis=1)
        if not valid.any():
            continue
        # colour 1 times colour 2 is the only product equal to 2
        crossing = np.count_nonzero(colours[:, eu] * colours[:, ev] == 2, axis=1)
        volume = (first | second) @ degrees
        quotient = np.full(len(codes), -1.0)
        quotient[valid] = 2.0 * crossing[valid] / volume[valid]
        i = int(np.argmax(quotient))
        if best_value is None or quotient[i] > best_value:
            best_value, best_code = float(quotient[i]), int(codes[i])

    digits = [best_code // 3 ** k % 3 for k in range(g.n)]
    first = tuple(k for k, c in enumerate(digits) if c == 1)
    second = tuple(k for k, c in enumerate(digits) if c == 2)
    value = dual_cheeger_quotient(g, first, second)
    logger.debug(f"🔍 dual_cheeger: value {value} over {count} colourings")
    return DualCheegerResult(value=value, approx=float(value), witness=(first, second))


@lru_cache(maxsize=128)
def _distance_matrix(g):
    dist = np.zeros((g.n, g.n), dtype=np.int64)
    for source, lengths in nx.all_pairs_shortest_path_length(g._nx):
        for target, length in lengths.items():
            dist[source, target] = length
    dist.setflags(write=False)
    return dist


def shortest_path_dist(g):
    """All-pairs BFS distances as an n x n integer array"""
    return _distance_matrix(g).copy()


def wasserstein1(g, v, w):
    """Exact W1 between the uniform neighbour measures of v and w

    Masses are scaled by d_v * d_w so every supply is an integer; the integer
    min-cost flow optimum divided by d_v * d_w is the exact distance.
    """
    v, w = g.check_vertex(v), g.check_vertex(w)
    if v == w:
        raise IdenticalVertices(f"wasserstein1 needs distinct vertices, got {v} twice")
    dist = _distance_matrix(g)
    sources, sinks = g.neighbors(v), g.neighbors(w)
    dv, dw = len(sources), len(sinks)
    total = dv * dw

    # node 0 = source, 1..dv supply side, dv+1..dv+dw demand side, last = sink
    sink = dv + dw + 1
    solver = MinCostFlow(dv + dw + 2)
    for i, x in enumerate(sources, start=1):
        solver.add_edge(0, i, dw, 0)
        for j, y in enumerate(sinks, start=dv + 1):
            solver.add_edge(i, j, total, int(dist[x, y]))
    for j in range(dv + 1, dv + dw + 1):
        solver.add_edge(j, sink, dv, 0)

    flow, cost = solver.solve(0, sink, total)
    if flow != total:
        raise BadParams(f"transport from {v} to {w} moved {flow} of {total} units")
    return Fraction(cost, total)


def ollivier_ricci(g):
    """kappa(v, w) = 1 - W1(m_v, m_w) on every edge; adjacent pairs have d(v, w) = 1"""
    entries = []
    for v, w in g.edges:
        w1 = wasserstein1(g, v, w)
        entries.append(CurvatureEntry(v=v, w=w, w1=w1, kappa=1 - w1))
    k_min = min(entry.kappa for entry in entries)
    logger.debug(f"🔍 ollivier_ricci: {len(entries)} edges, k_min = {k_min}")
    return CurvatureReport(entries=tuple(entries), k_min=k_min)

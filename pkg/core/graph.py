"""
Graph core - validated simple connected graphs, their matrices, generators
and edge-list ingestion

Vertices are 0-based everywhere in this module. Generator orderings are fixed:
star has its center at index 0, path has its endpoints at 0 and n-1, cycle
closes the path with the edge (0, n-1), complete_bipartite puts the first part
on indices 0..a-1.
"""

import hashlib
import io
import math
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Tuple

import networkx as nx
import numpy as np

from core.errors import (
    BadParams, Disconnected, DuplicateEdge, GiveUp, IndexOutOfRange,
    ParseError, SelfLoop, TrivialGraph,
)
from utils.constants import GENERATOR_FAMILIES, RANDOM_RETRY_BUDGET
from utils.log import logger

Edge = Tuple[int, int]


class MatrixKind(Enum):
    """The three graph matrices whose vertex energies are studied"""

    ADJACENCY = 'adjacency'
    LAPLACIAN = 'laplacian'
    NORMALIZED = 'normalized'

    @classmethod
    def parse(cls, name):
        try:
            return cls(name.lower())
        except ValueError:
            raise BadParams(f"unknown matrix kind '{name}'") from None


@dataclass(frozen=True)
class Graph:
    """Immutable simple connected graph; build it with build_graph()"""

    n: int
    edges: Tuple[Edge, ...]
    degrees: Tuple[int, ...]

    @property
    def m(self):
        return len(self.edges)

    @cached_property
    def neighbor_sets(self):
        adjacency = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adjacency[u].add(v)
            adjacency[v].add(u)
        return tuple(frozenset(s) for s in adjacency)

    @cached_property
    def _nx(self):
        G = nx.Graph()
        G.add_nodes_from(range(self.n))
        G.add_edges_from(self.edges)
        return G

    def to_networkx(self):
        """Return a fresh networkx copy; the graph itself stays immutable"""
        return self._nx.copy()

    def check_vertex(self, v):
        if not isinstance(v, (int, np.integer)) or not 0 <= v < self.n:
            raise IndexOutOfRange(f"vertex {v} not in [0, {self.n})")
        return int(v)

    def neighbors(self, v):
        return sorted(self.neighbor_sets[self.check_vertex(v)])

    def adjacent(self, v, w):
        return w in self.neighbor_sets[self.check_vertex(v)]

    @property
    def d_min(self):
        return min(self.degrees)

    @property
    def d_max(self):
        return max(self.degrees)

    @property
    def mean_degree(self):
        """2m/n as an exact fraction"""
        return Fraction(2 * self.m, self.n)

    def is_regular(self):
        return self.d_min == self.d_max

    def volume(self, vertices):
        return sum(self.degrees[v] for v in vertices)


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """Dense, exactly symmetric, read-only real matrix"""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise BadParams(f"matrix must be square, got shape {entries.shape}")
        if not np.array_equal(entries, entries.T):
            raise BadParams("matrix is not exactly symmetric")
        entries.setflags(write=False)
        object.__setattr__(self, 'entries', entries)

    @property
    def order(self):
        return self.entries.shape[0]

    def __getitem__(self, index):
        return self.entries[index]

    def shifted(self, c):
        """M - cI, still exactly symmetric"""
        return SymMatrix(self.entries - float(c) * np.eye(self.order))


def build_graph(n, edges: Iterable[Sequence[int]]):
    """Validate a vertex count and edge list into a Graph"""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise BadParams(f"vertex count must be a positive integer, got {n!r}")
    n = int(n)

    seen = set()
    for pair in edges:
        if len(pair) != 2:
            raise BadParams(f"edge {pair!r} is not a pair")
        u, v = (int(x) for x in pair)
        for x in (u, v):
            if not 0 <= x < n:
                raise IndexOutOfRange(f"edge ({u}, {v}) has vertex {x} outside [0, {n})")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdge(f"duplicate edge {key}")
        seen.add(key)

    if n == 1:
        raise TrivialGraph("a single vertex has no edges")

    degrees = [0] * n
    for u, v in seen:
        degrees[u] += 1
        degrees[v] += 1

    g = Graph(n=n, edges=tuple(sorted(seen)), degrees=tuple(degrees))
    if not nx.is_connected(g._nx):
        component = nx.node_connected_component(g._nx, 0)
        missing = sorted(set(range(n)) - component)
        raise Disconnected(f"vertices {missing} are not reachable from vertex 0")
    return g


def from_networkx(G):
    """Relabel a networkx graph to 0..n-1 in sorted node order and validate it"""
    index = {node: i for i, node in enumerate(sorted(G.nodes()))}
    return build_graph(len(index), [(index[u], index[v]) for u, v in G.edges()])


def trace_shift(g, kind):
    """tr(M)/n computed exactly from integers: 0, 2m/n or 1"""
    if kind is MatrixKind.ADJACENCY:
        return Fraction(0)
    if kind is MatrixKind.LAPLACIAN:
        return g.mean_degree
    return Fraction(1)


def matrix(g, kind):
    """Build A, L = D - A or the normalized Laplacian I - D^-1/2 A D^-1/2"""
    M = np.zeros((g.n, g.n))
    if kind is MatrixKind.ADJACENCY:
        for u, v in g.edges:
            M[u, v] = M[v, u] = 1.0
    elif kind is MatrixKind.LAPLACIAN:
        for u, v in g.edges:
            M[u, v] = M[v, u] = -1.0
        M[np.diag_indices(g.n)] = g.degrees
    else:
        for u, v in g.edges:
            M[u, v] = M[v, u] = -1.0 / math.sqrt(g.degrees[u] * g.degrees[v])
        M[np.diag_indices(g.n)] = 1.0
    return SymMatrix(M)


def generator(family, *params):
    """Canonically ordered star, path, cycle, complete or complete_bipartite graph"""
    if family not in GENERATOR_FAMILIES:
        raise BadParams(f"unknown family '{family}'; expected one of {sorted(GENERATOR_FAMILIES)}")
    expected = 2 if family == 'complete_bipartite' else 1
    if len(params) != expected or not all(isinstance(p, (int, np.integer)) for p in params):
        raise BadParams(f"{family} takes {expected} integer parameter(s), got {params!r}")
    smallest = GENERATOR_FAMILIES[family]
    if any(p < smallest for p in params):
        raise BadParams(f"{family} needs every parameter >= {smallest}, got {params!r}")

    if family == 'star':
        G = nx.star_graph(params[0] - 1)
    elif family == 'path':
        G = nx.path_graph(params[0])
    elif family == 'cycle':
        G = nx.cycle_graph(params[0])
    elif family == 'complete':
        G = nx.complete_graph(params[0])
    else:
        G = nx.complete_bipartite_graph(params[0], params[1])
    return from_networkx(G)


def parse_generator_spec(spec):
    """Parse the 'family:param[,param]' micro-grammar, e.g. 'complete_bipartite:2,3'"""
    family, sep, raw = spec.partition(':')
    if not sep or not raw:
        raise BadParams(f"generator spec '{spec}' must look like family:param[,param]")
    try:
        params = [int(p) for p in raw.split(',')]
    except ValueError:
        raise BadParams(f"generator spec '{spec}' has non-integer parameters") from None
    return generator(family.strip(), *params)


def triangle_count(g, v):
    """Number of triangles through v (adjacent pairs of neighbors)"""
    return nx.triangles(g._nx, g.check_vertex(v))


def parse_edge_list(text):
    """Read the edge-list format: vertex count, then one 'u v' pair per line"""
    stream = io.StringIO(text) if isinstance(text, str) else text
    n = None
    pairs = []
    for line_number, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1:
                raise ParseError(f"expected the vertex count, got '{line}'", line_number)
            try:
                n = int(fields[0])
            except ValueError:
                raise ParseError(f"vertex count '{fields[0]}' is not an integer", line_number) from None
            continue
        if len(fields) != 2:
            raise ParseError(f"expected two vertex indices, got '{line}'", line_number)
        try:
            pairs.append((int(fields[0]), int(fields[1])))
        except ValueError:
            raise ParseError(f"non-integer vertex index in '{line}'", line_number) from None
    if n is None:
        raise ParseError("missing vertex count")
    return build_graph(n, pairs)


def format_edge_list(g):
    """Write the edge-list format with edges sorted lexicographically"""
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def graph_fingerprint(g):
    return hashlib.sha256(format_edge_list(g).encode('utf-8')).hexdigest()


def random_connected(n, p, seed, max_rejections=RANDOM_RETRY_BUDGET):
    """G(n, p) conditioned on connectivity by rejection; deterministic per seed"""
    if not 0 < p <= 1:
        raise BadParams(f"edge probability must lie in (0, 1], got {p}")
    if n < 2:
        raise BadParams(f"random graphs need n >= 2, got {n}")
    rng = random.Random(seed)
    for attempt in range(max_rejections + 1):
        G = nx.gnp_random_graph(n, p, seed=rng)
        if nx.is_connected(G):
            if attempt:
                logger.debug(f"🔍 G({n}, {p}) seed {seed}: connected after {attempt} rejections")
            return from_networkx(G)
    raise GiveUp(f"no connected G({n}, {p}) after {max_rejections} rejections (seed {seed})")

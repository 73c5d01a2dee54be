"""
Analysis - certificates for every vertex and graph energy bound, the bound
improvement chains, Randic indices, edge energies and the conjecture scanner

A certificate stores both sides of an inequality. Its slack is oriented so
that slack >= 0 means the inequality holds; nothing here raises on failure.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import partial
from typing import Optional, Tuple

import networkx as nx
import numpy as np

from core.errors import BadParams, NotAnEdge
from core.geometry import cheeger, dual_cheeger, ollivier_ricci
from core.graph import Graph, MatrixKind, format_edge_list, graph_fingerprint
from core.spectral import decomposition, vertex_energies
from utils.constants import CERTIFICATE_TOLERANCE, EQUALITY_TOLERANCE
from utils.log import logger


class TheoremId(Enum):
    CS_AGM_PRODUCT = 'cs_agm_product'
    CS_AGM_SUM = 'cs_agm_sum'
    MCCLELLAND = 'mcclelland_laplacian'
    LAPLACIAN_LOWER = 'laplacian_lower'
    KELMANS = 'laplacian_spectral_radius'
    NLE_UPPER = 'nle_upper'
    NLE_LOWER = 'nle_lower'
    NLE_DEGREE_LOWER = 'nle_degree_lower'
    NLE_DEGREE_UPPER = 'nle_degree_upper'
    DEGREE_ENERGY_LOWER = 'degree_energy_lower'
    DEGREE_ENERGY_UPPER = 'degree_energy_upper'
    RANDIC_LAPLACIAN = 'randic_laplacian'
    RANDIC_NORMALIZED = 'randic_normalized'
    CHEEGER_VERTEX = 'cheeger_vertex'
    CHEEGER_TOTAL = 'cheeger_total'
    CURVATURE_VERTEX = 'curvature_vertex'
    CURVATURE_TOTAL = 'curvature_total'
    CHEEGER_SPECTRAL = 'cheeger_spectral_gap'
    DUAL_CHEEGER_SPECTRAL = 'dual_cheeger_spectral_radius'
    OLLIVIER_LOWER = 'ollivier_lower'
    OLLIVIER_UPPER = 'ollivier_upper'
    CHAIN_LAPLACIAN = 'chain_laplacian'
    CHAIN_NORMALIZED = 'chain_normalized'
    REGULAR_LAPLACIAN = 'regular_laplacian'
    REGULAR_NORMALIZED = 'regular_normalized'


@dataclass(frozen=True)
class Scope:
    """level is 'graph', 'vertex', 'edge', 'eigenvalue' or 'chain' (step of a bound chain)"""

    level: str
    indices: Tuple[int, ...] = ()

    def __str__(self):
        if not self.indices:
            return self.level
        return f"{self.level}({', '.join(str(i) for i in self.indices)})"


GRAPH_SCOPE = Scope('graph')


@dataclass(frozen=True)
class InequalityCertificate:
    """lhs <relation> rhs with relation one of '<=', '>=' or '=='"""

    theorem_id: TheoremId
    scope: Scope
    lhs: float
    rhs: float
    relation: str
    equality_predicate: Optional[bool] = None

    def __post_init__(self):
        if self.relation not in ('<=', '>=', '=='):
            raise BadParams(f"unknown relation '{self.relation}'")

    @property
    def slack(self):
        if self.relation == '<=':
            return self.rhs - self.lhs
        if self.relation == '>=':
            return self.lhs - self.rhs
        return -abs(self.lhs - self.rhs)

    def holds(self, tol=CERTIFICATE_TOLERANCE):
        return self.slack >= -tol

    def tight(self, tol=EQUALITY_TOLERANCE):
        """Numeric equality, to be compared with equality_predicate"""
        return abs(self.slack) <= tol


@dataclass(frozen=True)
class RandicValues:
    r_half: float
    r_one: float


@dataclass(frozen=True)
class BoundChain:
    """energy <= per-vertex bound sum <= aggregated Cauchy-Schwarz bound"""

    kind: MatrixKind
    terms: Tuple[float, float, float]
    certificates: Tuple[InequalityCertificate, InequalityCertificate]

    def ordered(self, tol=CERTIFICATE_TOLERANCE):
        return all(c.holds(tol) for c in self.certificates)


@dataclass(frozen=True)
class BoundImprovementReport:
    laplacian: BoundChain
    normalized: BoundChain

    @property
    def certificates(self):
        return self.laplacian.certificates + self.normalized.certificates


@dataclass(frozen=True)
class ScanVertex:
    adjacency: float
    normalized: float
    lower: float
    upper: float

    @property
    def margin(self):
        return min(self.adjacency - self.lower, self.upper - self.adjacency)


@dataclass(frozen=True)
class ConjectureScanRecord:
    label: str
    n: int
    edge_hash: str
    seed: Optional[int]
    edges: Tuple[Tuple[int, int], ...]
    vertices: Tuple[ScanVertex, ...]
    verdict: str
    vertex: Optional[int] = field(default=None)
    margin: float = field(default=0.0)

    @property
    def violated(self):
        return self.verdict == 'violated'

    def recompute_verdict(self, tol=CERTIFICATE_TOLERANCE):
        return _verdict(self.vertices, tol)


def _neighbor_inverse_degree_mean(g, v):
    """S_v = (1/d_v) sum over w ~ v of 1/d_w"""
    return math.fsum(1.0 / g.degrees[w] for w in g.neighbors(v)) / g.degrees[v]


def is_star_center(g, v):
    return g.m == g.n - 1 and g.degrees[v] == g.n - 1


def is_complete_bipartite(g):
    """2-colour by BFS, then require every cross pair to be an edge"""
    G = g._nx
    if not nx.is_bipartite(G):
        return False
    colouring = nx.bipartite.color(G)
    side = sum(1 for c in colouring.values() if c == 0)
    return g.m == side * (g.n - side)


def randic(g):
    r_half = math.fsum(1.0 / math.sqrt(g.degrees[u] * g.degrees[v]) for u, v in g.edges)
    r_one = math.fsum(1.0 / (g.degrees[u] * g.degrees[v]) for u, v in g.edges)
    return RandicValues(r_half=r_half, r_one=r_one)


def check_cs_agm(g, kind):
    """E(v) E(w) >= M_vw^2 and E(v) + E(w) >= 2 |M_vw| on every edge"""
    energies = vertex_energies(g, kind)
    certificates = []
    for v, w in g.edges:
        if kind is MatrixKind.NORMALIZED:
            product = 1.0 / (g.degrees[v] * g.degrees[w])
        else:
            product = 1.0
        scope = Scope('edge', (v, w))
        certificates.append(InequalityCertificate(
            TheoremId.CS_AGM_PRODUCT, scope, energies[v] * energies[w], product, '>='))
        certificates.append(InequalityCertificate(
            TheoremId.CS_AGM_SUM, scope, energies[v] + energies[w], 2.0 * math.sqrt(product), '>='))
    return certificates


def check_mcclelland(g):
    """LE(v) <= sqrt(d_v + (2m/n - d_v)^2), tight iff n <= 2"""
    energies = vertex_energies(g, MatrixKind.LAPLACIAN)
    mean = float(g.mean_degree)
    return [
        InequalityCertificate(
            TheoremId.MCCLELLAND, Scope('vertex', (v,)), energies[v],
            math.sqrt(d + (mean - d) ** 2), '<=', equality_predicate=g.n <= 2)
        for v, d in enumerate(g.degrees)
    ]


def _spectrum_within(values, allowed, tol):
    return all(any(abs(lam - a) <= tol for a in allowed) for lam in values)


def check_laplacian_lower(g, equality_tol=EQUALITY_TOLERANCE):
    """LE(v) >= ((2m/n - d_v)^2 + d_v) / n' with n' = max(2m/n, n - 2m/n), plus lambda_max(L) <= n"""
    energies = vertex_energies(g, MatrixKind.LAPLACIAN)
    eigenvalues = decomposition(g, MatrixKind.LAPLACIAN).eigenvalues
    mean = g.mean_degree
    n_prime = max(mean, g.n - mean)
    spectrum_predicate = _spectrum_within(
        eigenvalues, (0.0, float(mean), float(g.n)), equality_tol)

    certificates = [
        InequalityCertificate(
            TheoremId.LAPLACIAN_LOWER, Scope('vertex', (v,)), energies[v],
            float(((mean - d) ** 2 + d) / n_prime), '>=', equality_predicate=spectrum_predicate)
        for v, d in enumerate(g.degrees)
    ]
    complement_disconnected = not nx.is_connected(nx.complement(g._nx))
    certificates.append(InequalityCertificate(
        TheoremId.KELMANS, GRAPH_SCOPE, float(eigenvalues[-1]), float(g.n), '<=',
        equality_predicate=complement_disconnected))
    return certificates


def check_nle_bounds(g):
    """Vertex bounds on the normalized Laplacian energy and the graph-level degree sandwich"""
    normalized = vertex_energies(g, MatrixKind.NORMALIZED)
    complete_bipartite = is_complete_bipartite(g)
    certificates = []
    for v in range(g.n):
        s = _neighbor_inverse_degree_mean(g, v)
        scope = Scope('vertex', (v,))
        certificates.extend([
            InequalityCertificate(TheoremId.NLE_UPPER, scope, normalized[v], math.sqrt(s), '<=',
                                  equality_predicate=is_star_center(g, v)),
            InequalityCertificate(TheoremId.NLE_LOWER, scope, normalized[v], s, '>=',
                                  equality_predicate=complete_bipartite),
            InequalityCertificate(TheoremId.NLE_DEGREE_LOWER, scope, normalized[v],
                                  1.0 / g.d_max, '>='),
            InequalityCertificate(TheoremId.NLE_DEGREE_UPPER, scope, normalized[v],
                                  1.0 / math.sqrt(g.d_min), '<='),
        ])

    normalized_total = math.fsum(normalized)
    adjacency_total = math.fsum(vertex_energies(g, MatrixKind.ADJACENCY))
    certificates.append(InequalityCertificate(
        TheoremId.DEGREE_ENERGY_LOWER, GRAPH_SCOPE, adjacency_total, g.d_min * normalized_total, '>='))
    certificates.append(InequalityCertificate(
        TheoremId.DEGREE_ENERGY_UPPER, GRAPH_SCOPE, adjacency_total, g.d_max * normalized_total, '<='))
    return certificates


def check_randic_theorems(g):
    values = randic(g)
    return [
        InequalityCertificate(TheoremId.RANDIC_LAPLACIAN, GRAPH_SCOPE,
                              math.fsum(vertex_energies(g, MatrixKind.LAPLACIAN)),
                              2.0 * values.r_half, '>='),
        InequalityCertificate(TheoremId.RANDIC_NORMALIZED, GRAPH_SCOPE,
                              math.fsum(vertex_energies(g, MatrixKind.NORMALIZED)),
                              2.0 * values.r_one, '>='),
    ]


def geometric_alpha(h, h_dual):
    """max(sqrt(1 - h^2), sqrt(1 - (1 - h_dual)^2))"""
    return max(math.sqrt(float(1 - h * h)), math.sqrt(float(1 - (1 - h_dual) ** 2)))


def check_geometric_bounds(g):
    """Cheeger and curvature bounds on LE(v), their graph corollaries and the spectral sandwiches"""
    normalized = vertex_energies(g, MatrixKind.NORMALIZED)
    eigenvalues = decomposition(g, MatrixKind.NORMALIZED).eigenvalues
    h = cheeger(g).value
    h_dual = dual_cheeger(g).value
    k = ollivier_ricci(g).k_min
    alpha = geometric_alpha(h, h_dual)
    k_float = float(k)

    certificates = []
    for v, d in enumerate(g.degrees):
        share = Fraction(d, 2 * g.m)
        scope = Scope('vertex', (v,))
        certificates.append(InequalityCertificate(
            TheoremId.CHEEGER_VERTEX, scope, normalized[v],
            float(share) + alpha * float(1 - share), '<='))
        certificates.append(InequalityCertificate(
            TheoremId.CURVATURE_VERTEX, scope, normalized[v], float(1 - k * (1 - share)), '<='))

    total = math.fsum(normalized)
    certificates.append(InequalityCertificate(
        TheoremId.CHEEGER_TOTAL, GRAPH_SCOPE, total, 1.0 + alpha * (g.n - 1), '<='))
    certificates.append(InequalityCertificate(
        TheoremId.CURVATURE_TOTAL, GRAPH_SCOPE, total, float(g.n - k * (g.n - 1)), '<='))

    # eigenvalue 0 is simple for connected graphs; index 1 is the spectral gap
    certificates.append(InequalityCertificate(
        TheoremId.CHEEGER_SPECTRAL, Scope('eigenvalue', (1,)), float(eigenvalues[1]),
        1.0 - math.sqrt(float(1 - h * h)), '>='))
    certificates.append(InequalityCertificate(
        TheoremId.DUAL_CHEEGER_SPECTRAL, Scope('eigenvalue', (g.n - 1,)), float(eigenvalues[-1]),
        1.0 + math.sqrt(float(1 - (1 - h_dual) ** 2)), '<='))
    for j in range(1, g.n):
        scope = Scope('eigenvalue', (j,))
        lam = float(eigenvalues[j])
        certificates.append(InequalityCertificate(TheoremId.OLLIVIER_LOWER, scope, lam, k_float, '>='))
        certificates.append(InequalityCertificate(TheoremId.OLLIVIER_UPPER, scope, lam, 2.0 - k_float, '<='))
    return certificates


def check_regular_collapse(g):
    """On d-regular graphs LE(v) = E(v) and E(v) = d * NLE(v); empty otherwise"""
    if not g.is_regular():
        return []
    d = g.d_min
    adjacency = vertex_energies(g, MatrixKind.ADJACENCY)
    laplacian = vertex_energies(g, MatrixKind.LAPLACIAN)
    normalized = vertex_energies(g, MatrixKind.NORMALIZED)
    certificates = []
    for v in range(g.n):
        scope = Scope('vertex', (v,))
        certificates.append(InequalityCertificate(
            TheoremId.REGULAR_LAPLACIAN, scope, laplacian[v], adjacency[v], '==', True))
        certificates.append(InequalityCertificate(
            TheoremId.REGULAR_NORMALIZED, scope, adjacency[v], d * normalized[v], '==', True))
    return certificates


def _chain(kind, theorem_id, energy, per_vertex):
    middle = math.fsum(math.sqrt(t) for t in per_vertex)
    outer = math.sqrt(len(per_vertex) * math.fsum(per_vertex))
    certificates = (
        InequalityCertificate(theorem_id, Scope('chain', (1,)), energy, middle, '<='),
        InequalityCertificate(theorem_id, Scope('chain', (2,)), middle, outer, '<='),
    )
    return BoundChain(kind=kind, terms=(energy, middle, outer), certificates=certificates)


def bound_improvement_report(g):
    """The per-vertex bound sums sit between the energy and the aggregated bounds"""
    mean = float(g.mean_degree)
    laplacian = _chain(
        MatrixKind.LAPLACIAN, TheoremId.CHAIN_LAPLACIAN,
        math.fsum(vertex_energies(g, MatrixKind.LAPLACIAN)),
        [d + (d - mean) ** 2 for d in g.degrees])
    # sum of S_v over all vertices is 2 R_-1, so the outer term is sqrt(2 n R_-1)
    normalized = _chain(
        MatrixKind.NORMALIZED, TheoremId.CHAIN_NORMALIZED,
        math.fsum(vertex_energies(g, MatrixKind.NORMALIZED)),
        [_neighbor_inverse_degree_mean(g, v) for v in range(g.n)])
    return BoundImprovementReport(laplacian=laplacian, normalized=normalized)


def edge_energy(g, kind, v, w):
    """E(v)/d_v + E(w)/d_w for an edge {v, w}"""
    v, w = g.check_vertex(v), g.check_vertex(w)
    if not g.adjacent(v, w):
        raise NotAnEdge(f"({v}, {w}) is not an edge")
    energies = vertex_energies(g, kind)
    return energies[v] / g.degrees[v] + energies[w] / g.degrees[w]


SUITES = {
    'csagm': lambda g: [c for kind in MatrixKind for c in check_cs_agm(g, kind)],
    'mcclelland': check_mcclelland,
    'lower': check_laplacian_lower,
    'nle': check_nle_bounds,
    'randic': check_randic_theorems,
    'geometry': check_geometric_bounds,
    'chains': lambda g: list(bound_improvement_report(g).certificates),
    'regular': check_regular_collapse,
}


def run_suite(g, suite, equality_tol=EQUALITY_TOLERANCE):
    """Certificates of one named suite, or of every suite for 'all'"""
    suites = dict(SUITES, lower=partial(check_laplacian_lower, equality_tol=equality_tol))
    if suite == 'all':
        return [c for name in suites for c in suites[name](g)]
    if suite not in suites:
        raise BadParams(f"unknown suite '{suite}'; expected 'all' or one of {sorted(suites)}")
    return suites[suite](g)


def failed_certificates(certificates, tol=CERTIFICATE_TOLERANCE):
    return [c for c in certificates if not c.holds(tol)]


def _verdict(vertices, tol):
    """('holds' | 'violated', vertex with the smallest margin, that margin)"""
    margins = [vertex.margin for vertex in vertices]
    worst = int(np.argmin(margins))
    verdict = 'violated' if margins[worst] < -tol else 'holds'
    return verdict, worst, margins[worst]


def scan_graph(entry, tol=CERTIFICATE_TOLERANCE):
    """Evaluate d_min NLE(v) <= E(v) <= d_max NLE(v) at every vertex of one graph"""
    g = entry if isinstance(entry, Graph) else entry.graph
    label = getattr(entry, 'label', f"n{g.n}")
    seed = getattr(entry, 'seed', None)

    adjacency = vertex_energies(g, MatrixKind.ADJACENCY)
    normalized = vertex_energies(g, MatrixKind.NORMALIZED)
    vertices = tuple(
        ScanVertex(adjacency=adjacency[v], normalized=normalized[v],
                   lower=g.d_min * normalized[v], upper=g.d_max * normalized[v])
        for v in range(g.n))
    verdict, vertex, margin = _verdict(vertices, tol)
    if verdict == 'violated':
        logger.warning(f"⚠️ Conjecture violated on {label} at vertex {vertex} "
                       f"(margin {margin:.3e}, seed {seed}):\n{format_edge_list(g)}")
    return ConjectureScanRecord(
        label=label, n=g.n, edge_hash=graph_fingerprint(g), seed=seed, edges=g.edges,
        vertices=vertices, verdict=verdict, vertex=vertex, margin=margin)


def conjecture_scan(corpus, tol=CERTIFICATE_TOLERANCE):
    """One record per graph, in corpus order; violations are reported, never raised"""
    records = [scan_graph(entry, tol) for entry in corpus]
    violations = sum(1 for r in records if r.violated)
    logger.debug(f"📊 conjecture scan: {len(records)} graphs, {violations} violations")
    return records

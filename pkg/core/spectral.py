"""
Spectral engine - Jacobi eigensolver, matrix absolute value and vertex
energies from the eigendecomposition

The energy of vertex v for a symmetric graph matrix M is the v-th diagonal
entry of |M - (tr(M)/n) I|, i.e. sum_j U_vj^2 |lambda_j - tr(M)/n|.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

from core.errors import BadParams, NoConvergence
from core.graph import MatrixKind, SymMatrix, matrix, trace_shift, triangle_count
from utils.constants import JACOBI_MAX_SWEEPS, JACOBI_THRESHOLD
from utils.log import logger


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenvalues ascending; column j of vectors pairs with eigenvalues[j]"""

    eigenvalues: np.ndarray
    vectors: np.ndarray

    @property
    def order(self):
        return len(self.eigenvalues)

    def apply(self, fn):
        """U fn(Lambda) U^T as a plain array"""
        return (self.vectors * fn(self.eigenvalues)) @ self.vectors.T

    def reconstruct(self):
        return self.apply(lambda lam: lam)


@dataclass(frozen=True)
class VertexSpectralDistribution:
    """Spectral measure of M with respect to the functional M -> M_vv"""

    atoms: Tuple[Tuple[float, float], ...]

    @property
    def total_weight(self):
        return math.fsum(w for _, w in self.atoms)

    def moment(self, k):
        return math.fsum(w * lam ** k for lam, w in self.atoms)

    def weight_at(self, value, tol=1e-8):
        """Mass at an eigenvalue; independent of the basis chosen inside an eigenspace"""
        return math.fsum(w for lam, w in self.atoms if abs(lam - value) <= tol)


@dataclass(frozen=True)
class VertexEnergyReport:
    kind: MatrixKind
    energies: Tuple[float, ...]
    total: float
    method: str
    residuals: Optional[Tuple[float, ...]] = field(default=None)


def _jacobi_rotate(A, V, p, q):
    apq = A[p, q]
    theta = (A[q, q] - A[p, p]) / (2.0 * apq)
    if abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
        if theta < 0:
            t = -t
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c

    col_p = A[:, p].copy()
    col_q = A[:, q]
    A[:, p] = c * col_p - s * col_q
    A[:, q] = s * col_p + c * col_q
    row_p = A[p, :].copy()
    row_q = A[q, :]
    A[p, :] = c * row_p - s * row_q
    A[q, :] = s * row_p + c * row_q
    A[p, q] = A[q, p] = 0.0

    vec_p = V[:, p].copy()
    vec_q = V[:, q]
    V[:, p] = c * vec_p - s * vec_q
    V[:, q] = s * vec_p + c * vec_q


def eig_sym(M, max_sweeps=JACOBI_MAX_SWEEPS, threshold=JACOBI_THRESHOLD):
    """Cyclic Jacobi eigendecomposition of a symmetric matrix"""
    A = np.array(M.entries if isinstance(M, SymMatrix) else M, dtype=float)
    n = A.shape[0]
    V = np.eye(n)
    target = threshold * np.linalg.norm(A)
    upper = np.triu_indices(n, k=1)

    for sweep in range(max_sweeps + 1):
        off = math.sqrt(2.0 * float(np.sum(A[upper] ** 2)))
        if off <= target:
            break
        if sweep == max_sweeps:
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps "
                                f"(off-diagonal norm {off:.3e}, target {target:.3e})")
        for p in range(n - 1):
            for q in range(p + 1, n):
                if A[p, q] != 0.0:
                    _jacobi_rotate(A, V, p, q)
    logger.debug(f"🔍 Jacobi converged after {sweep} sweeps (n={n})")

    eigenvalues = np.diag(A).copy()
    order = np.argsort(eigenvalues, kind='stable')
    eigenvalues = eigenvalues[order]
    vectors = V[:, order]
    eigenvalues.setflags(write=False)
    vectors.setflags(write=False)
    return SpectralDecomposition(eigenvalues=eigenvalues, vectors=vectors)


def matrix_abs(M):
    """|M| = U |Lambda| U^T"""
    X = eig_sym(M).apply(np.abs)
    return SymMatrix((X + X.T) / 2.0)


@lru_cache(maxsize=512)
def decomposition(g, kind):
    """Cached eigendecomposition of the graph matrix of the given kind"""
    return eig_sym(matrix(g, kind))


def _energies(g, kind):
    dec = decomposition(g, kind)
    weights = dec.vectors ** 2
    return weights @ np.abs(dec.eigenvalues - float(trace_shift(g, kind)))


def vertex_energies(g, kind):
    """All vertex energies in vertex order"""
    return tuple(float(e) for e in _energies(g, kind))


def vertex_energy(g, kind, v):
    """Energy of vertex v: sum_j U_vj^2 |lambda_j - tr(M)/n|"""
    v = g.check_vertex(v)
    return float(_energies(g, kind)[v])


def vertex_distribution(g, kind, v):
    v = g.check_vertex(v)
    dec = decomposition(g, kind)
    weights = dec.vectors[v, :] ** 2
    return VertexSpectralDistribution(
        atoms=tuple((float(lam), float(w)) for lam, w in zip(dec.eigenvalues, weights)))


def energy_report(g, kind):
    """Per-vertex energies; residuals compare against diag |M - (tr(M)/n) I|"""
    energies = _energies(g, kind)
    shifted = matrix(g, kind).shifted(trace_shift(g, kind))
    diagonal = np.diag(matrix_abs(shifted).entries)
    residuals = np.abs(energies - diagonal)
    return VertexEnergyReport(
        kind=kind,
        energies=tuple(float(e) for e in energies),
        total=math.fsum(energies),
        method='spectral',
        residuals=tuple(float(r) for r in residuals),
    )


def graph_energy(g, kind):
    """tr |M - (tr(M)/n) I|"""
    return math.fsum(_energies(g, kind))


def moment(g, kind, v, k):
    """[M^k]_vv for k = 1, 2, 3, counted from degrees and triangles"""
    v = g.check_vertex(v)
    if k not in (1, 2, 3):
        raise BadParams(f"moment order must be 1, 2 or 3, got {k}")
    d = g.degrees[v]
    neighbors = g.neighbors(v)

    if kind is MatrixKind.ADJACENCY:
        return (0, d, 2 * triangle_count(g, v))[k - 1]

    if kind is MatrixKind.LAPLACIAN:
        if k == 1:
            return d
        if k == 2:
            return d * d + d
        # [A^3]_vv counts each triangle through v twice
        return d ** 3 + 2 * d * d + sum(g.degrees[w] for w in neighbors) - 2 * triangle_count(g, v)

    # normalized Laplacian: (I - N)^k with N = D^-1/2 A D^-1/2, N_vv = 0
    if k == 1:
        return 1.0
    second = math.fsum(1.0 / g.degrees[w] for w in neighbors) / d
    if k == 2:
        return 1.0 + second
    closed_walks = 0.0
    for i, a in enumerate(neighbors):
        for b in neighbors[i + 1:]:
            if g.adjacent(a, b):
                closed_walks += 2.0 / (g.degrees[a] * g.degrees[b])
    return 1.0 + 3.0 * second - closed_walks / d


def spectral_moment(g, kind, v, k):
    """[U Lambda^k U^T]_vv, the spectral side of moment()"""
    v = g.check_vertex(v)
    dec = decomposition(g, kind)
    return float(np.sum(dec.vectors[v, :] ** 2 * dec.eigenvalues ** k))

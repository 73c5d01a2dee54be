"""
Coulson engine - vertex energies from characteristic polynomials only

For M_s = M - (tr(M)/n) I and its principal minor at v,

    E(v) = (1/pi) * integral over R of (1 - ix * P(ix) / Q(ix)) dx,

with Q = det(zI - M_s) and P = det(zI - minor). The integrand is evaluated as
R(ix)/Q(ix) where R = Q - zP is formed coefficient-wise, the real line is
folded onto [0, inf) and mapped to [0, pi/2) by x = tan(theta).

Coefficients come from an exact integer Faddeev-LeVerrier run: every shifted
matrix kind is similar to B/s for an integer matrix B and integer scale s.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Tuple

import numpy as np

from core.errors import BadParams, IndexOutOfRange, NearPole, QuadratureNoConvergence
from core.graph import MatrixKind, SymMatrix, matrix, trace_shift
from core.spectral import VertexEnergyReport, decomposition
from utils.constants import (
    IMAGINARY_RESIDUAL_LIMIT, NEAR_POLE_DISTANCE, QUADRATURE_MAX_DEPTH, QUADRATURE_TOLERANCE,
)
from utils.log import logger


@dataclass(frozen=True)
class CharPoly:
    """Monic det(xI - M), coefficients in descending powers of x"""

    coefficients: Tuple[float, ...]

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def __call__(self, z):
        return horner(self.coefficients, z)


@dataclass(frozen=True)
class ResolventDiag:
    """Psi_v(z) = P(z)/Q(z) for the shifted matrix and its minor at v"""

    numerator: CharPoly
    denominator: CharPoly
    vertex: int

    def __call__(self, z):
        return poly_ratio(self.numerator.coefficients, self.denominator.coefficients, z)


def horner(coefficients, z):
    acc = 0j if isinstance(z, complex) else 0.0
    for c in coefficients:
        acc = acc * z + c
    return acc


def poly_ratio(numerator, denominator, z):
    """p(z)/q(z) for deg p < deg q, Horner in 1/z when |z| > 1 to avoid overflow"""
    if abs(z) <= 1.0:
        return horner(numerator, z) / horner(denominator, z)
    w = 1.0 / z
    shift = (len(denominator) - 1) - (len(numerator) - 1)
    top = horner(list(reversed(numerator)), w)
    bottom = horner(list(reversed(denominator)), w)
    return w ** shift * top / bottom


def _faddeev_leverrier_exact(B):
    """Integer Faddeev-LeVerrier: coefficients c_0 = 1, ..., c_n of det(xI - B)"""
    n = len(B)
    coefficients = [1]
    if n == 0:
        return coefficients
    A = np.array(B, dtype=object)
    identity = np.array([[int(i == j) for j in range(n)] for i in range(n)], dtype=object)
    N = np.zeros((n, n), dtype=object)
    for k in range(1, n + 1):
        N = A.dot(N) + coefficients[-1] * identity
        AN = A.dot(N)
        trace = sum(AN[i, i] for i in range(n))
        # the trace of AN is divisible by k for integer B
        coefficients.append(-trace // k)
    return coefficients


def _faddeev_leverrier_float(entries):
    n = entries.shape[0]
    coefficients = [1.0]
    N = np.zeros((n, n))
    identity = np.eye(n)
    for k in range(1, n + 1):
        N = entries @ N + coefficients[-1] * identity
        coefficients.append(-float(np.trace(entries @ N)) / k)
    return coefficients


def char_poly(M):
    """Monic characteristic polynomial via Faddeev-LeVerrier

    Integer matrices take the exact route, so their coefficients are exact
    integers; anything else runs the same recurrence in floating point.
    """
    entries = M.entries if isinstance(M, SymMatrix) else np.asarray(M, dtype=float)
    if np.all(entries == np.round(entries)):
        integers = [[int(x) for x in row] for row in np.round(entries)]
        return CharPoly(tuple(float(c) for c in _faddeev_leverrier_exact(integers)))
    return CharPoly(tuple(_faddeev_leverrier_float(entries)))


def principal_minor(M, i):
    """M with row i and column i removed"""
    entries = M.entries if isinstance(M, SymMatrix) else np.asarray(M, dtype=float)
    n = entries.shape[0]
    if n < 2:
        raise BadParams("principal minors need order >= 2")
    if not 0 <= i < n:
        raise IndexOutOfRange(f"row {i} not in [0, {n})")
    keep = [k for k in range(n) if k != i]
    return SymMatrix(entries[np.ix_(keep, keep)])


def _scaled_shifted(g, kind):
    """Integer matrix B and scale s with M - (tr(M)/n) I similar to B / s"""
    if kind is MatrixKind.ADJACENCY:
        B = [[0] * g.n for _ in range(g.n)]
        for u, v in g.edges:
            B[u][v] = B[v][u] = 1
        return B, 1
    if kind is MatrixKind.LAPLACIAN:
        # n L - 2m I
        B = [[0] * g.n for _ in range(g.n)]
        for u, v in g.edges:
            B[u][v] = B[v][u] = -g.n
        for i, d in enumerate(g.degrees):
            B[i][i] = g.n * d - 2 * g.m
        return B, g.n
    # normalized: L_norm - I = -D^-1/2 A D^-1/2, similar to -D^-1 A
    scale = reduce(math.lcm, g.degrees)
    B = [[0] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        B[u][v] = -scale // g.degrees[u]
        B[v][u] = -scale // g.degrees[v]
    return B, scale


def _rescale(coefficients, scale):
    """det(xI - B/s) from det(xI - B): c_k -> c_k / s^k, exactly"""
    return [Fraction(c, scale ** k) for k, c in enumerate(coefficients)]


@lru_cache(maxsize=128)
def _shifted_char_poly(g, kind):
    """Exact coefficients (Fractions) of Q = det(zI - M_s)"""
    B, scale = _scaled_shifted(g, kind)
    return tuple(_rescale(_faddeev_leverrier_exact(B), scale))


@lru_cache(maxsize=1024)
def _shifted_polynomials(g, kind, v):
    """Exact coefficient lists for Q = det(zI - M_s) and P = det(zI - minor_v)"""
    B, scale = _scaled_shifted(g, kind)
    minor = [row[:v] + row[v + 1:] for k, row in enumerate(B) if k != v]
    p = _rescale(_faddeev_leverrier_exact(minor), scale)
    return _shifted_char_poly(g, kind), tuple(p)


def resolvent(g, kind, v):
    """The exact-coefficient ResolventDiag for vertex v"""
    v = g.check_vertex(v)
    q, p = _shifted_polynomials(g, kind, v)
    return ResolventDiag(
        numerator=CharPoly(tuple(float(c) for c in p)),
        denominator=CharPoly(tuple(float(c) for c in q)),
        vertex=v,
    )


@lru_cache(maxsize=256)
def _integrand_polynomials(g, kind, v):
    """R = Q - zP and Q as floats, with their common exact factor z^k removed"""
    q, p = _shifted_polynomials(g, kind, v)
    r = [qc - pc for qc, pc in zip(q[1:], p[1:])] + [q[-1]]
    while len(q) > 1 and q[-1] == 0 and r and r[-1] == 0:
        q = q[:-1]
        r = r[:-1]
    return tuple(float(c) for c in r), tuple(float(c) for c in q)


def resolvent_diag(g, kind, v, z):
    """Psi_v(z) = det[(z - tr(M)/n) I - minor] / det[(z - tr(M)/n) I - M]"""
    v = g.check_vertex(v)
    z = complex(z)
    shifted = decomposition(g, kind).eigenvalues - float(trace_shift(g, kind))
    nearest = float(np.min(np.abs(shifted - z)))
    if nearest < NEAR_POLE_DISTANCE:
        raise NearPole(f"z = {z} lies within {nearest:.3e} of a shifted eigenvalue")
    return resolvent(g, kind, v)(z)


def resolvent_eigen_sum(g, kind, v, z):
    """sum_j U_vj^2 / (z - (lambda_j - tr(M)/n)), the spectral side of resolvent_diag"""
    v = g.check_vertex(v)
    dec = decomposition(g, kind)
    shifted = dec.eigenvalues - float(trace_shift(g, kind))
    return complex(np.sum(dec.vectors[v, :] ** 2 / (complex(z) - shifted)))


def _folded_integrand(r, q, tail_limit):
    """theta -> (f(x) + f(-x)) (1 + x^2) with x = tan(theta), f(x) = R(ix)/Q(ix)"""
    def integrand(theta):
        if theta >= math.pi / 2:
            return complex(tail_limit)
        x = math.tan(theta)
        pair = poly_ratio(r, q, 1j * x) + poly_ratio(r, q, -1j * x)
        return pair * (1.0 + x * x)
    return integrand


def _tail_limit(r, q):
    """Limit of 2 Re f(x) x^2 as x -> inf, from the 1/z^2 term of R/Q"""
    if not r:
        return 0.0
    r1 = r[1] if len(r) > 1 else 0.0
    # R/Q = r0/z + (r1 - r0 q1)/z^2 + ...; z^2 = -x^2
    return -2.0 * (r1 - r[0] * q[1])


def adaptive_simpson(f, a, b, tol=QUADRATURE_TOLERANCE, max_depth=QUADRATURE_MAX_DEPTH):
    """Adaptive Simpson quadrature of a complex-valued f on [a, b]"""
    fa, fm, fb = f(a), f((a + b) / 2), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    stats = {'evaluations': 3, 'deepest': 0}

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = (a + b) / 2
        lm, rm = (a + m) / 2, (m + b) / 2
        flm, frm = f(lm), f(rm)
        stats['evaluations'] += 2
        stats['deepest'] = max(stats['deepest'], depth)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        floor = 1e-15 * max(1.0, abs(left + right))
        if abs(delta) <= 15.0 * max(tol, floor):
            return left + right + delta / 15.0
        if depth >= max_depth:
            raise QuadratureNoConvergence(
                f"adaptive Simpson hit depth {max_depth} on [{a:.6g}, {b:.6g}] "
                f"with error estimate {abs(delta) / 15.0:.3e}")
        return (recurse(a, m, fa, flm, fm, left, tol / 2.0, depth + 1)
                + recurse(m, b, fm, frm, fb, right, tol / 2.0, depth + 1))

    result = recurse(a, b, fa, fm, fb, whole, tol, 1)
    logger.debug(f"🔍 Simpson: {stats['evaluations']} evaluations, depth {stats['deepest']}")
    return result


def coulson_integral(g, kind, v, tol=QUADRATURE_TOLERANCE, max_depth=QUADRATURE_MAX_DEPTH):
    """(energy, imaginary residual) of the folded Coulson integral at vertex v"""
    v = g.check_vertex(v)
    r, q = _integrand_polynomials(g, kind, v)
    integrand = _folded_integrand(r, q, _tail_limit(r, q))
    value = adaptive_simpson(integrand, 0.0, math.pi / 2, tol, max_depth) / math.pi
    return value.real, abs(value.imag)


def _checked_integral(g, kind, v, tol, max_depth):
    energy, residual = coulson_integral(g, kind, v, tol, max_depth)
    if residual > IMAGINARY_RESIDUAL_LIMIT:
        raise QuadratureNoConvergence(
            f"imaginary residual {residual:.3e} at vertex {v} exceeds {IMAGINARY_RESIDUAL_LIMIT:g}")
    return energy, residual


def coulson_energy(g, kind, v, tol=QUADRATURE_TOLERANCE, max_depth=QUADRATURE_MAX_DEPTH):
    """Vertex energy from the Coulson integral formula"""
    return _checked_integral(g, kind, v, tol, max_depth)[0]


def coulson_report(g, kind, tol=QUADRATURE_TOLERANCE, max_depth=QUADRATURE_MAX_DEPTH):
    """Per-vertex Coulson energies; residuals are the imaginary parts"""
    energies, residuals = [], []
    for v in range(g.n):
        energy, residual = _checked_integral(g, kind, v, tol, max_depth)
        energies.append(energy)
        residuals.append(residual)
    return VertexEnergyReport(
        kind=kind,
        energies=tuple(energies),
        total=math.fsum(energies),
        method='coulson',
        residuals=tuple(residuals),
    )


def coulson_total_energy(g, kind, tol=QUADRATURE_TOLERANCE, max_depth=QUADRATURE_MAX_DEPTH):
    """Graph energy (1/pi) * integral of [n - ix Q'(ix)/Q(ix)] dx"""
    q = _shifted_char_poly(g, kind)
    n = len(q) - 1
    # n Q - z Q' has degree n - 1: coefficient of z^(n-k) is k q_k
    r = [k * q[k] for k in range(1, n + 1)]
    q_tail = list(q)
    while len(q_tail) > 1 and q_tail[-1] == 0 and r[-1] == 0:
        q_tail.pop()
        r.pop()
    r = [float(c) for c in r]
    q_float = [float(c) for c in q_tail]
    integrand = _folded_integrand(r, q_float, _tail_limit(r, q_float))
    value = adaptive_simpson(integrand, 0.0, math.pi / 2, tol, max_depth) / math.pi
    return value.real

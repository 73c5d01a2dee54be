"""Tests for characteristic polynomials, the resolvent and the Coulson integral"""

import cmath
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings

from core.corpus import family_corpus, random_corpus
from core.coulson import (
    adaptive_simpson, char_poly, coulson_energy, coulson_integral, coulson_report,
    coulson_total_energy, principal_minor, resolvent, resolvent_diag, resolvent_eigen_sum,
)
from core.errors import BadParams, IndexOutOfRange, NearPole, QuadratureNoConvergence
from core.graph import MatrixKind, SymMatrix, generator, matrix
from core.spectral import decomposition, energy_report, vertex_energies, vertex_energy
from strategies import connected_graphs

L, N, A = MatrixKind.LAPLACIAN, MatrixKind.NORMALIZED, MatrixKind.ADJACENCY


class TestCharPoly:
    def test_k2_laplacian(self, k2):
        assert char_poly(matrix(k2, L)).coefficients == (1, -2, 0)

    def test_path3_adjacency(self):
        assert char_poly(matrix(generator('path', 3), A)).coefficients == (1, 0, -2, 0)

    def test_star_laplacian(self, star4):
        poly = char_poly(matrix(star4, L))
        assert poly.coefficients == (1, -6, 9, -4, 0)
        assert poly.degree == 4
        assert poly(4.0) == 0

    def test_float_route_matches_numpy(self, paw):
        M = matrix(paw, N).entries
        assert char_poly(M).coefficients == pytest.approx(np.poly(M), abs=1e-9)

    @settings(max_examples=30, deadline=None)
    @given(connected_graphs())
    def test_roots_and_trace(self, g):
        for kind in MatrixKind:
            M = matrix(g, kind)
            poly = char_poly(M)
            scale = max(1.0, max(abs(c) for c in poly.coefficients))
            assert poly.coefficients[1] == pytest.approx(-np.trace(M.entries), abs=1e-9 * scale)
            for lam in np.linalg.eigvalsh(M.entries):
                assert abs(poly(float(lam))) <= 1e-6 * scale


class TestPrincipalMinor:
    def test_k2(self, k2):
        assert principal_minor(matrix(k2, L), 0).entries.tolist() == [[1.0]]

    def test_star_center(self, star4):
        assert np.array_equal(principal_minor(matrix(star4, L), 0).entries, np.eye(3))

    def test_path3_middle(self):
        minor = principal_minor(matrix(generator('path', 3), A), 1)
        assert np.array_equal(minor.entries, np.zeros((2, 2)))

    def test_bad_index(self, k2):
        with pytest.raises(IndexOutOfRange):
            principal_minor(matrix(k2, L), 2)

    def test_order_one(self):
        with pytest.raises(BadParams):
            principal_minor(SymMatrix([[1.0]]), 0)


class TestResolvent:
    def test_k2_at_three(self, k2):
        # shifted eigenvalues are -1 and 1 with equal weights
        assert resolvent_diag(k2, L, 0, 3) == pytest.approx(0.375, abs=1e-12)
        assert resolvent_eigen_sum(k2, L, 0, 3) == pytest.approx(0.375, abs=1e-12)

    def test_degree_drop(self, paw):
        psi = resolvent(paw, L, 2)
        assert psi.numerator.degree == psi.denominator.degree - 1
        assert psi.vertex == 2

    @pytest.mark.parametrize("z", [1e4, 1e6, -1e5j])
    def test_leading_asymptotics(self, paw, z):
        assert z * resolvent_diag(paw, L, 0, z) == pytest.approx(1.0, abs=1e-3)

    def test_star_on_imaginary_axis(self, star4):
        direct = resolvent_diag(star4, L, 0, 5j)
        spectral = resolvent_eigen_sum(star4, L, 0, 5j)
        assert abs(direct - spectral) <= 1e-8 * abs(spectral)

    def test_near_pole(self, k2):
        with pytest.raises(NearPole):
            resolvent_diag(k2, L, 0, 1.0)

    @settings(max_examples=25, deadline=None)
    @given(connected_graphs())
    def test_determinant_form_matches_eigen_sum(self, g):
        rng = random.Random(g.n * 1009 + g.m)
        for kind in MatrixKind:
            for _ in range(20):
                z = complex(rng.uniform(-3, 3), rng.choice([-1, 1]) * rng.uniform(0.1, 3))
                v = rng.randrange(g.n)
                direct = resolvent_diag(g, kind, v, z)
                spectral = resolvent_eigen_sum(g, kind, v, z)
                assert abs(direct - spectral) <= 1e-8 * max(1.0, abs(spectral))


class TestCoulsonEnergy:
    def test_star_center(self, star4):
        assert coulson_energy(star4, L, 0) == pytest.approx(2.25, abs=1e-6)

    def test_k2(self, k2):
        assert coulson_energy(k2, L, 0) == pytest.approx(1.0, abs=1e-6)
        assert coulson_energy(k2, L, 1) == pytest.approx(1.0, abs=1e-6)

    def test_path4_endpoint(self, path4):
        assert coulson_energy(path4, L, 0) == pytest.approx(vertex_energy(path4, L, 0), abs=1e-6)

    def test_imaginary_residual_is_small(self, paw):
        for kind in MatrixKind:
            for v in range(paw.n):
                _, residual = coulson_integral(paw, kind, v)
                assert residual <= 1e-6

    def test_report(self, star4):
        report = coulson_report(star4, N)
        assert report.method == 'coulson'
        assert report.energies == pytest.approx([1, 1 / 3, 1 / 3, 1 / 3], abs=1e-6)
        assert report.total == pytest.approx(2.0, abs=1e-6)

    def test_large_residual_is_rejected(self, star4, monkeypatch):
        monkeypatch.setattr('core.coulson.coulson_integral', lambda *args: (1.0, 1e-3))
        with pytest.raises(QuadratureNoConvergence, match="imaginary residual"):
            coulson_energy(star4, L, 0)
        with pytest.raises(QuadratureNoConvergence, match="imaginary residual"):
            coulson_report(star4, L)

    @pytest.mark.parametrize("entry", family_corpus(2, 12), ids=lambda e: e.label)
    def test_families_agree_with_spectral(self, entry):
        for kind in (L, N, A):
            assert coulson_report(entry.graph, kind).energies == pytest.approx(
                vertex_energies(entry.graph, kind), abs=1e-6)

    @pytest.mark.parametrize("entry", random_corpus(100, 2, 10, seed=11), ids=lambda e: e.label)
    def test_random_graphs_agree_with_spectral(self, entry):
        for kind in (L, N):
            assert coulson_report(entry.graph, kind).energies == pytest.approx(
                vertex_energies(entry.graph, kind), abs=1e-6)

    def test_graph_level_formula(self, paw, star4):
        for g in (paw, star4, generator('cycle', 7)):
            for kind in MatrixKind:
                assert coulson_total_energy(g, kind) == pytest.approx(
                    energy_report(g, kind).total, abs=1e-6)

    def test_zero_shifted_eigenvalue_is_removable(self):
        # A(P_3) has eigenvalue 0, so Q(0) = 0 at every vertex
        g = generator('path', 3)
        assert 0.0 in [round(x, 12) for x in decomposition(g, A).eigenvalues]
        for v in range(3):
            assert coulson_energy(g, A, v) == pytest.approx(vertex_energy(g, A, v), abs=1e-6)


class TestAdaptiveSimpson:
    def test_polynomial_is_exact(self):
        assert adaptive_simpson(lambda t: complex(t ** 3), 0.0, 2.0) == pytest.approx(4.0)

    def test_smooth_integrand(self):
        value = adaptive_simpson(lambda t: cmath.exp(1j * t), 0.0, math.pi)
        assert value == pytest.approx(2j, abs=1e-8)

    def test_depth_cap(self):
        with pytest.raises(QuadratureNoConvergence):
            adaptive_simpson(lambda t: complex(math.exp(50 * t)), 0.0, 1.0, tol=1e-12, max_depth=1)

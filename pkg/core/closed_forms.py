"""
Closed forms - exact vertex energies of stars and paths

Vertex labels in this module are 1-based: k = 1 is the star center and the
path runs v_1 ... v_n. Conversion to 0-based indices happens at the boundary
with the spectral engine (label k is vertex k - 1 of the generated graph).
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from core.errors import BadIndex, NoClosedForm
from core.graph import MatrixKind, generator
from core.spectral import vertex_energies
from utils.constants import ENERGY_TOLERANCE
from utils.log import logger


@dataclass(frozen=True)
class ClosedFormValue:
    family: str
    n: int
    vertex_label: int
    kind: MatrixKind
    value: float


@dataclass(frozen=True)
class FormulaErratum:
    """A (n, k) where the closed path formula disagrees with the spectral engine"""

    n: int
    k: int
    formula: float
    spectral: float

    @property
    def deviation(self):
        return abs(self.formula - self.spectral)


def _check_label(n, k):
    if not isinstance(n, int) or n < 2:
        raise BadIndex(f"closed forms need n >= 2, got {n!r}")
    if k is not None and not (isinstance(k, int) and 1 <= k <= n):
        raise BadIndex(f"vertex label {k!r} not in [1, {n}]")


def star_laplacian_fraction(n, k):
    _check_label(n, k)
    if k == 1:
        return Fraction((n - 1) * (n * n - 2 * n + 4), n * n)
    return Fraction(n ** 3 - n * n - 2 * n + 4, n * n * (n - 1))


def star_normalized_fraction(n, k):
    _check_label(n, k)
    return Fraction(1) if k == 1 else Fraction(1, n - 1)


def star_totals_fraction(n):
    """(Laplacian total, normalized total) = ((n-2)^2/n + n, 2)"""
    _check_label(n, None)
    return Fraction((n - 2) ** 2, n) + n, Fraction(2)


def star_laplacian_energy(n, k):
    """(n-1)(n^2-2n+4)/n^2 at the center, (n^3-n^2-2n+4)/(n^2 (n-1)) at a leaf"""
    return float(star_laplacian_fraction(n, k))


def star_normalized_energy(n, k):
    """1 at the center, 1/(n-1) at a leaf"""
    return float(star_normalized_fraction(n, k))


def star_adjacency_energy(n, k):
    """sqrt(n-1) at the center, 1/sqrt(n-1) at a leaf; center = (n-1) * leaf"""
    _check_label(n, k)
    root = math.sqrt(n - 1)
    return root if k == 1 else 1.0 / root


def star_totals(n):
    laplacian, normalized = star_totals_fraction(n)
    return float(laplacian), float(normalized)


def path_laplacian_energy(n, k):
    """2(n-1)/n^2 + 4 sum_{i=1}^{n-1} cos^2(pi i k/n - pi i/2n)/n * |1/n - cos(pi i/n)|

    The eigenvalues of L(P_n) are 2(1 - cos(pi i/n)); shifting by 2(n-1)/n
    leaves 2(1/n - cos(pi i/n)), and the normalized eigenvector entries are
    sqrt(2/n) cos(pi i (k - 1/2)/n) for i >= 1.
    """
    _check_label(n, k)
    terms = (
        math.cos(math.pi * i * k / n - math.pi * i / (2 * n)) ** 2 / n
        * abs(1.0 / n - math.cos(math.pi * i / n))
        for i in range(1, n)
    )
    return 2.0 * (n - 1) / (n * n) + 4.0 * math.fsum(terms)


def validate_path_formula(n_max=30, tol=ENERGY_TOLERANCE):
    """Compare the path formula with the spectral engine for every (n, k), 2 <= n <= n_max"""
    errata = []
    for n in range(2, n_max + 1):
        spectral = vertex_energies(generator('path', n), MatrixKind.LAPLACIAN)
        for k in range(1, n + 1):
            formula = path_laplacian_energy(n, k)
            if abs(formula - spectral[k - 1]) > tol:
                erratum = FormulaErratum(n=n, k=k, formula=formula, spectral=spectral[k - 1])
                logger.warning(f"⚠️ Path formula erratum at n={n}, k={k}: "
                               f"formula {formula:.12g} vs spectral {spectral[k - 1]:.12g}")
                errata.append(erratum)
    if not errata:
        logger.debug(f"✅ Path formula agrees with the spectral engine for n <= {n_max}")
    return errata


_FORMULAS = {
    ('star', MatrixKind.LAPLACIAN): star_laplacian_energy,
    ('star', MatrixKind.NORMALIZED): star_normalized_energy,
    ('star', MatrixKind.ADJACENCY): star_adjacency_energy,
    ('path', MatrixKind.LAPLACIAN): path_laplacian_energy,
}


def closed_form_energies(family, params, kind) -> Tuple[ClosedFormValue, ...]:
    """Every vertex value of a generator family that has a closed form for this kind"""
    formula = _FORMULAS.get((family, kind))
    if formula is None or len(params) != 1:
        raise NoClosedForm(f"no closed form for {family} with {kind.value} energies")
    n = params[0]
    return tuple(
        ClosedFormValue(family=family, n=n, vertex_label=k, kind=kind, value=formula(n, k))
        for k in range(1, n + 1))

"""Tests for report serialization"""

from fractions import Fraction

import numpy as np
import pytest

from core.analysis import GRAPH_SCOPE, InequalityCertificate, TheoremId
from core.graph import MatrixKind
from core.reports import RunReport, certificate_record, rational, round_real, to_plain


def test_round_real():
    assert round_real(1 / 3) == 0.333333333333
    assert round_real(np.float64(2.0)) == 2.0
    assert round_real(float('nan')) == 'nan'


def test_rational():
    assert rational(Fraction(2, 3)) == {'num': 2, 'den': 3, 'value': 0.666666666667}
    assert rational(1) == {'num': 1, 'den': 1, 'value': 1.0}


def test_to_plain():
    payload = {'kind': MatrixKind.NORMALIZED, 'values': (np.int64(3), True, None),
               'ratio': Fraction(1, 4)}
    assert to_plain(payload) == {'kind': 'normalized', 'values': [3, True, None],
                                 'ratio': {'num': 1, 'den': 4, 'value': 0.25}}
    with pytest.raises(TypeError):
        to_plain({'bad': object()})


def test_hash_ignores_wall_time():
    first = RunReport(['energy'], {'source': 'gen:star:4'}, {'total': 5.0}, wall_time=0.1)
    second = RunReport(['energy'], {'source': 'gen:star:4'}, {'total': 5.0}, wall_time=9.0)
    assert first.report_hash() == second.report_hash()
    assert first.to_json() != second.to_json()
    changed = RunReport(['energy'], {'source': 'gen:star:4'}, {'total': 5.5})
    assert changed.report_hash() != first.report_hash()


def test_certificate_record():
    cert = InequalityCertificate(TheoremId.KELMANS, GRAPH_SCOPE, 4.0, 4.0, '<=', True)
    record = to_plain(certificate_record(cert, 1e-9))
    assert record == {'theorem': 'laplacian_spectral_radius', 'scope': 'graph', 'relation': '<=',
                      'lhs': 4.0, 'rhs': 4.0, 'slack': 0.0, 'holds': True, 'tight': True,
                      'equality_predicate': True}


def test_certificate_record_equality_tolerance():
    cert = InequalityCertificate(TheoremId.KELMANS, GRAPH_SCOPE, 3.5, 4.0, '<=', False)
    assert certificate_record(cert, 1e-9)['tight'] is False
    assert certificate_record(cert, 1e-9, equality_tol=0.5)['tight'] is True

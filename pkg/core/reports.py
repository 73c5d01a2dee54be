"""
Run reports - JSON documents with a fixed field order

Reals are rounded to 12 significant digits and rationals are written as
{"num": p, "den": q, "value": p/q}. Identical inputs give byte-identical
reports apart from the wall_time field, which the report hash leaves out.
"""

import hashlib
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List

import numpy as np

from utils.constants import APP_VERSION, EQUALITY_TOLERANCE, REPORT_SIGNIFICANT_DIGITS


def round_real(x, digits=REPORT_SIGNIFICANT_DIGITS):
    x = float(x)
    if not math.isfinite(x):
        return str(x)
    return float(f"{x:.{digits}g}")


def rational(value):
    value = Fraction(value)
    return {'num': value.numerator, 'den': value.denominator, 'value': round_real(value)}


def to_plain(obj):
    """Convert report payloads into JSON-ready values, keeping key order"""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_real(obj)
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [to_plain(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__} in a report")


@dataclass
class RunReport:
    command: List[str]
    graph: Dict[str, Any]
    results: Dict[str, Any]
    tool_version: str = APP_VERSION
    wall_time: float = field(default=0.0)

    def document(self, include_wall_time=True):
        doc = {
            'command': list(self.command),
            'graph': to_plain(self.graph),
            'results': to_plain(self.results),
            'tool_version': self.tool_version,
        }
        if include_wall_time:
            doc['wall_time'] = round(self.wall_time, 3)
        return doc

    def to_json(self):
        return json.dumps(self.document(), indent=2, ensure_ascii=False) + "\n"

    def report_hash(self):
        """sha256 of the report without its wall time"""
        body = json.dumps(self.document(include_wall_time=False), sort_keys=False,
                          separators=(',', ':'), ensure_ascii=False)
        return hashlib.sha256(body.encode('utf-8')).hexdigest()


def certificate_record(certificate, tol, equality_tol=EQUALITY_TOLERANCE):
    return {
        'theorem': certificate.theorem_id,
        'scope': str(certificate.scope),
        'relation': certificate.relation,
        'lhs': certificate.lhs,
        'rhs': certificate.rhs,
        'slack': certificate.slack,
        'holds': certificate.holds(tol),
        'tight': certificate.tight(equality_tol),
        'equality_predicate': certificate.equality_predicate,
    }


def scan_record(record):
    return {
        'label': record.label,
        'n': record.n,
        'edge_hash': record.edge_hash,
        'seed': None if record.seed is None else str(record.seed),
        'edges': [list(e) for e in record.edges],
        'vertices': [
            {'adjacency': v.adjacency, 'normalized': v.normalized,
             'lower': v.lower, 'upper': v.upper}
            for v in record.vertices
        ],
        'verdict': record.verdict,
        'vertex': record.vertex,
        'margin': record.margin,
    }


def curvature_record(report):
    return {
        'edges': [
            {'v': e.v, 'w': e.w, 'w1': e.w1, 'kappa': e.kappa}
            for e in report.entries
        ],
        'k_min': report.k_min,
    }

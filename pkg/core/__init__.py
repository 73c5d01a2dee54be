"""
Core functionality for Vertex Energies
"""

from .errors import VertexEnergyError
from .graph import Graph, MatrixKind, build_graph, generator, matrix, parse_edge_list
from .spectral import energy_report, vertex_energy
from .coulson import coulson_energy
from .geometry import cheeger, dual_cheeger, ollivier_ricci, wasserstein1
from .analysis import conjecture_scan, run_suite
from .database import ScanDatabase

__all__ = ['VertexEnergyError', 'Graph', 'MatrixKind', 'build_graph', 'generator', 'matrix',
           'parse_edge_list', 'energy_report', 'vertex_energy', 'coulson_energy', 'cheeger',
           'dual_cheeger', 'ollivier_ricci', 'wasserstein1', 'conjecture_scan', 'run_suite',
           'ScanDatabase']

"""Application constants and configuration"""

import os

# Application info
APP_NAME = "Vertex Energies"
APP_VERSION = "0.3"

# Matrix kinds accepted on the command line
KIND_NAMES = ['adjacency', 'laplacian', 'normalized']

# Generator families and their minimal sizes
GENERATOR_FAMILIES = {
    'star': 2,
    'path': 2,
    'cycle': 3,
    'complete': 2,
    'complete_bipartite': 1,
}

# Numerical tolerances
ENERGY_TOLERANCE = 1e-9
COULSON_TOLERANCE = 1e-6
CERTIFICATE_TOLERANCE = 1e-9
EQUALITY_TOLERANCE = 1e-8
NEAR_POLE_DISTANCE = 1e-8

# Jacobi eigensolver
JACOBI_THRESHOLD = 1e-14   # off-diagonal Frobenius norm relative to ||M||_F
JACOBI_MAX_SWEEPS = 100

# Coulson quadrature (adaptive Simpson on the tangent-substituted domain)
QUADRATURE_TOLERANCE = 1e-8
QUADRATURE_MAX_DEPTH = 40
IMAGINARY_RESIDUAL_LIMIT = 1e-6

# Random connected graphs
RANDOM_RETRY_BUDGET = 10000

# Exhaustive geometry searches
CHEEGER_MAX_VERTICES = 24
DUAL_CHEEGER_MAX_VERTICES = 15
ENUMERATION_CHUNK = 1 << 16

# Default corpus
CORPUS_MIN_N = 2
CORPUS_MAX_N = 12
CORPUS_RANDOM_COUNT = 500
CORPUS_RANDOM_MIN_N = 4
CORPUS_RANDOM_MAX_N = 10
CORPUS_P_VALUES = (0.3, 0.5, 0.8)
CORPUS_SEED = 2024

# Reports
REPORT_SIGNIFICANT_DIGITS = 12

# Exit codes
EXIT_OK = 0
EXIT_CERTIFICATE_FAILURE = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_NUMERICAL = 4

# Default settings (overridable from a JSON settings file)
DEFAULT_SETTINGS = {
    'coulson_tolerance': COULSON_TOLERANCE,
    'certificate_tolerance': CERTIFICATE_TOLERANCE,
    'equality_tolerance': EQUALITY_TOLERANCE,
    'quadrature_tolerance': QUADRATURE_TOLERANCE,
    'quadrature_max_depth': QUADRATURE_MAX_DEPTH,
    'random_retry_budget': RANDOM_RETRY_BUDGET,
    'workers': 1,
    'verbose': False,
}

# Database schema for the scan archive
DB_SCHEMA = {
    'scan_runs_table': '''
        CREATE TABLE IF NOT EXISTS scan_runs (
            id INTEGER PRIMARY KEY AUTOINCREMENT,
            command TEXT,
            seed TEXT,
            graph_count INTEGER,
            violation_count INTEGER,
            report_hash TEXT,
            tool_version TEXT,
            date_added TIMESTAMP DEFAULT CURRENT_TIMESTAMP
        )
    ''',
    'scan_records_table': '''
        CREATE TABLE IF NOT EXISTS scan_records (
            id INTEGER PRIMARY KEY AUTOINCREMENT,
            run_id INTEGER,
            position INTEGER,
            label TEXT,
            n INTEGER,
            edge_hash TEXT,
            seed TEXT,
            edge_list TEXT,
            verdict TEXT,
            vertex INTEGER,
            margin REAL,
            FOREIGN KEY (run_id) REFERENCES scan_runs (id)
        )
    ''',
}


# App directories
def get_app_dirs():
    """Get application directories"""
    script_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

    return {
        'base': script_dir,
        'database': os.path.join(script_dir, 'scan_archive.db'),
        'settings': os.path.join(script_dir, 'energy_settings.json'),
    }

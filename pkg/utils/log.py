"""Package logger for status and diagnostic messages"""

import logging
import sys

logger = logging.getLogger("vertex_energies")

if not logger.handlers:
    _handler = logging.StreamHandler(sys.stderr)
    _handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(_handler)
    logger.setLevel(logging.WARNING)


def set_verbose(verbose=True):
    """Switch between DEBUG output and warnings only"""
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)

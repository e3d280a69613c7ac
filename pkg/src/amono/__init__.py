"""Exact monodromy computations for A-hypergeometric systems.

Pipeline: validate (A, alpha) -> index sets and gamma choices -> secondary
fan chambers -> Mellin-Barnes basis -> transition matrices and local
monodromy generators -> invariant Hermitian form and its signature.
"""

from .catalog import catalog
from .errors import AmonoError
from .report import run_pipeline
from .spec_io import SystemSpec, emit_spec, parse_spec

__version__ = "0.1.0"

__all__ = ["catalog", "run_pipeline", "SystemSpec", "parse_spec", "emit_spec", "AmonoError"]

"""Exact knot invariants and clasp-number bounds."""

from .diagram import Diagram, PdCode, orient, parse_dt, parse_pd
from .invariants import alexander, conway, jones
from .laurent import LaurentPoly

__version__ = "0.1.0"

__all__ = [
    "Diagram",
    "LaurentPoly",
    "PdCode",
    "alexander",
    "conway",
    "jones",
    "orient",
    "parse_dt",
    "parse_pd",
]

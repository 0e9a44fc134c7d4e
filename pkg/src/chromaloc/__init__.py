"""Chromatic polynomials, chromatic measures and their local (Benjamini-Schramm) limits."""

from .graph import SimpleGraph, canonical_code, generate, parse_graph6, emit_graph6
from .chromatic import chromatic_dc, chromatic_expansion, chromatic_coefficients
from .spectra import SOKAL_C, find_roots, power_sums_newton
from .hom import hom_count, inj_count

__all__ = [
    "SimpleGraph", "canonical_code", "generate", "parse_graph6", "emit_graph6",
    "chromatic_dc", "chromatic_expansion", "chromatic_coefficients",
    "SOKAL_C", "find_roots", "power_sums_newton", "hom_count", "inj_count",
]
__version__ = "0.1.0"

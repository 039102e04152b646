"""Exact computations with q-polynomials and linear sets on PG(1, q^n)."""

from .gf import Elem, FieldCtx, field_new, rel_norm, rel_trace
from .linpoly import QPoly, is_scattered, qp_eval, qp_inverse, qp_rank
from .linset import LinearSet, ProjPoint, SemilinearMap, linset_of, weight_spectrum
from .parser import format_qpoly, parse_elem, parse_qpoly

__version__ = "0.1.0"

__all__ = [
    "Elem", "FieldCtx", "field_new", "rel_norm", "rel_trace",
    "QPoly", "is_scattered", "qp_eval", "qp_inverse", "qp_rank",
    "LinearSet", "ProjPoint", "SemilinearMap", "linset_of", "weight_spectrum",
    "format_qpoly", "parse_elem", "parse_qpoly",
]

"""Coherent-sheaf slope algebra on the Fargues-Fontaine curve."""

from .slopes import INFINITY, Slope, hom_slope_data, reduce
from .sheaves import (
    BCInvariant,
    CoherentSheaf,
    O,
    T,
    TiltedObject,
    chi,
    direct_sum,
    ext1,
    ext2,
    h0,
    h1,
    hn,
    hom,
    k0_class,
    normalize,
)
from .tilting import (
    double_tilt,
    hn_minus,
    hom_tilted,
    ext1_tilted,
    tilt,
    tilted_invariants,
)
from .bc import breen_tables, dim_ht, effective_presentation, r0tau
from .parser import ParseError, parse_object, parse_poly, parse_sheaf

__version__ = "0.1.0"

__all__ = [
    "BCInvariant",
    "CoherentSheaf",
    "INFINITY",
    "O",
    "ParseError",
    "Slope",
    "T",
    "TiltedObject",
    "breen_tables",
    "chi",
    "dim_ht",
    "direct_sum",
    "double_tilt",
    "effective_presentation",
    "ext1",
    "ext1_tilted",
    "ext2",
    "h0",
    "h1",
    "hn",
    "hn_minus",
    "hom",
    "hom_slope_data",
    "hom_tilted",
    "k0_class",
    "normalize",
    "parse_object",
    "parse_poly",
    "parse_sheaf",
    "r0tau",
    "reduce",
    "tilt",
    "tilted_invariants",
]

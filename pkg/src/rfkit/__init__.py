"""Exact computations for symplectic embeddings of ellipsoids into polydiscs."""

from .classes import YClass, enumerate_obstructive, is_exceptional, is_obstructive_at, mu, psi
from .cremona import XVector, reduce_exceptional, reduce_packing
from .ech import cb_lower, ellipsoid_caps, polydisc_caps
from .exact import Quad, parse_rat
from .rf import n_b, rf_beta, rf_value, verify_rf
from .weights import weight_expansion

__version__ = "0.1.0"

__all__ = [
    "Quad", "XVector", "YClass", "cb_lower", "ellipsoid_caps", "enumerate_obstructive",
    "is_exceptional", "is_obstructive_at", "mu", "n_b", "parse_rat", "polydisc_caps", "psi",
    "reduce_exceptional", "reduce_packing", "rf_beta", "rf_value", "verify_rf",
    "weight_expansion",
]

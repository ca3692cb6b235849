"""Exact verification of root/weight lattices, invariant pairings, and
tensor discriminants, backed by the C++ core."""

import json as _json

from ._latrep import (
    InputError,
    FeasibilityError,
    VerificationError,
    __version__,
    discriminant_valuations,
    dual_lattice,
    index_valuation,
    invariant_forms,
    rref_modp,
    snf,
    valuation,
)
from . import _latrep as _core


def verify_craig(n, ell):
    """Root/weight lattice report for (n, ell) as a dict."""
    return _json.loads(_core.verify_craig_json(n, ell))


def is_well_rounded(generators, ell):
    """Algebra-span evidence for integer generator matrices mod ell."""
    return _json.loads(_core.is_well_rounded_json(generators, ell))


def composite_demo(m, n, ell):
    """Composite tensor-chain verdict as a dict."""
    return _json.loads(_core.composite_demo_json(m, n, ell))


__all__ = [
    "InputError",
    "FeasibilityError",
    "VerificationError",
    "__version__",
    "composite_demo",
    "discriminant_valuations",
    "dual_lattice",
    "index_valuation",
    "invariant_forms",
    "is_well_rounded",
    "rref_modp",
    "snf",
    "valuation",
    "verify_craig",
]

"""Exact computations with necklace polynomials and their cyclotomic factors."""

from .exactmath import (
    HypothesisNotMet,
    Poly,
    cyclotomic,
    cyclotomic_divides,
    euler_phi,
    mobius,
    poly_divrem,
    poly_mul,
    reduce_mod_xm,
)
from .frobenius import FrobElt, frob_apply, frob_of_poly, phi_op
from .necklace import (
    CycloFactorReport,
    cyclotomic_factors,
    divides_xm,
    necklace_M,
    necklace_S,
    verify_conjecture,
)

__version__ = "0.1.0"

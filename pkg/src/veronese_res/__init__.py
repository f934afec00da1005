"""Explicit minimal free resolutions of plane curves in the Veronese embedding P^2 -> P^5."""
from .complexes import BettiTable, GradedFreeModule, GradedMatrix, ResolutionComplex
from .lift import lift_even, lift_odd, parity_split
from .poly import QQ, PrimeField, Polynomial, Ring, graded_basis, parse_poly, render
from .resolution import block_accessors, build, build_even, build_odd
from .veronese import minors, theta, veronese_complex
from .verify import (
    check_complex,
    check_minimal,
    graded_exactness,
    hilbert_from_resolution,
    hilbert_oracle,
    syzygy_oracle,
    theta_vanishing_check,
)

__version__ = "0.1.0"

__all__ = [
    "BettiTable", "GradedFreeModule", "GradedMatrix", "ResolutionComplex",
    "lift_even", "lift_odd", "parity_split",
    "QQ", "PrimeField", "Polynomial", "Ring", "graded_basis", "parse_poly", "render",
    "block_accessors", "build", "build_even", "build_odd",
    "minors", "theta", "veronese_complex",
    "check_complex", "check_minimal", "graded_exactness", "hilbert_from_resolution",
    "hilbert_oracle", "syzygy_oracle", "theta_vanishing_check",
]

"""Finite-ring laboratory for n-Jordan homomorphisms."""

from njordan.rings import (
    AdditiveBasis,
    AxiomViolation,
    CarrierTooLarge,
    FiniteRing,
    additive_group_basis,
    char_exceeds,
    cyclic_ring,
    direct_product,
    matrix_ring,
    ring_from_tables,
    zero_mul_ring,
)

__version__ = "0.1.0"

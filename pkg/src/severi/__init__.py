"""Topological profiles of degenerate plane curves and their landscape graph."""

from .canon import are_isomorphic, canonical_form, canonical_key
from .profiles import (
    DomainError,
    EnumerationContext,
    FVertex,
    PVertex,
    TopologicalProfile,
    ValidationReport,
    WeightedEdge,
    distinguished_f_vertex,
    height,
    is_small,
    validate_profile,
)

__version__ = "0.1.0"

"""Exact spectral exponents for homogeneous Hörmander vector fields."""

from .errors import (Divergent, HoermanderViolation, HomogeneityViolation, InputError,
                     LinearDependence, NeedsResolution, ParseError, WeylExpError)
from .exponents import (ExponentResult, IndexPairSet, combine_charts, compute_exponents,
                        eigen_law, exponents_from_charts, exponents_from_index_set)
from .nsw import VectorFieldSystem, classify, nsw_profile, pointwise_dimension
from .polyalg import DilationWeights, Poly, VectorField, lie_bracket
from .sysfile import load_system, parse_system

__version__ = "0.1.0"

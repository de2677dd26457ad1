"""Pseudo-random operators of the circular ensembles and their statistics."""

from .ensembles import (
    Architecture,
    CircuitSpec,
    Ensemble,
    ZMode,
    build,
    build_coe,
    build_cse,
    build_cue,
    build_transpose_circuit,
    make_spec,
)
from .linalg import NumericalError, SpectralDecomposition, eig_unitary, unitarity_defect

__version__ = "0.1.0"

"""Weak revivals for the Dirichlet Schrodinger equation with complex potential."""

from .grid import GridFunction, inner, l2_norm, sine_mode
from .kernels import BACKEND
from .potential import Potential
from .revivals import RationalTime, gauss_indicator, odd_periodic_extension, revival_superposition
from .spectral import EigenPair, eigen_sweep, find_eigenvalue, shoot

__all__ = [
    "BACKEND",
    "EigenPair",
    "GridFunction",
    "Potential",
    "RationalTime",
    "eigen_sweep",
    "find_eigenvalue",
    "gauss_indicator",
    "inner",
    "l2_norm",
    "odd_periodic_extension",
    "revival_superposition",
    "shoot",
    "sine_mode",
]

"""Relative-entropy non-Gaussianity of continuous-variable states."""

from .fock import FockState, make_coherent, make_fock, make_gaussian, make_thermal, moments
from .gaussian import GaussianMoments, gaussian_entropy, symplectic_eigenvalues
from .measure import NonGReport, delta, max_nong_bound
from .settings import DEFAULT, Tolerances

__all__ = [
    "DEFAULT",
    "FockState",
    "GaussianMoments",
    "NonGReport",
    "Tolerances",
    "delta",
    "gaussian_entropy",
    "make_coherent",
    "make_fock",
    "make_gaussian",
    "make_thermal",
    "max_nong_bound",
    "moments",
    "symplectic_eigenvalues",
]

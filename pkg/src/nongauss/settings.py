"""Numerical tolerances and the exception hierarchy shared by every module."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Single settings record threaded explicitly through the library.

    All entropies are in nats.
    """

    tail: float = 1e-12  # population allowed in the top 3 Fock levels
    hermitian: float = 1e-12
    psd: float = 1e-10  # eigenvalues below -psd are an error, above are clipped
    norm: float = 1e-12
    symplectic_clamp: float = 1e-9
    symplectic_error: float = 1e-6
    delta_clamp: float = 1e-8
    delta_error: float = 1e-6
    dim_ladder_start: int = 32
    dim_cap: int = 4096
    mixed_two_mode_cap: int = 256
    overflow: float = 1e-9  # Schmidt-coefficient mass pushed past the truncation


DEFAULT = Tolerances()


class NonGError(Exception):
    """Base class for library errors."""


class ValidationError(NonGError, ValueError):
    """Malformed input: wrong arity, bad parameters, non-Hermitian matrices."""


class TruncationError(NonGError):
    """The truncated Fock representation is not accurate enough."""

    def __init__(self, message: str, tail_mass: float | None = None):
        super().__init__(message)
        self.tail_mass = tail_mass


class DimensionCapError(TruncationError):
    """No dimension on the doubling ladder certifies the state; use an analytic path."""


class UnphysicalError(NonGError):
    """A covariance matrix violates the uncertainty principle."""


class NumericalError(NonGError):
    """An internal consistency check failed beyond its noise floor."""

"""Gaussification of Schmidt-form states and Kerr de-Gaussification of coherent states."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from . import fock
from .fock import FockState, moments
from .gaussian import GaussianMoments, gaussian_entropy
from .measure import delta_from_moments
from .settings import DEFAULT, DimensionCapError, NumericalError, Tolerances, TruncationError, ValidationError

ANALYTIC_THRESHOLD = 100.0


# ---------------------------------------------------------------- Gaussification


@dataclass(frozen=True, eq=False)
class SchmidtCoeffs:
    """Real coefficients of sum_n alphas[n] |n, n>; ``overflow`` is mass lost past the end."""

    alphas: np.ndarray
    overflow: float = 0.0

    def __post_init__(self):
        a = np.array(self.alphas, dtype=float).reshape(-1)
        a.setflags(write=False)
        object.__setattr__(self, "alphas", a)

    @classmethod
    def initial(cls, lam: float, dim: int) -> "SchmidtCoeffs":
        """(|0,0> + lam |1,1>) / sqrt(1 + lam^2)."""
        a = np.zeros(dim)
        a[0], a[1] = 1.0, lam
        return cls(a / math.hypot(1.0, lam))

    @classmethod
    def twin_beam(cls, lam: float, dim: int) -> "SchmidtCoeffs":
        a = lam ** np.arange(dim, dtype=float)
        return cls(a / np.linalg.norm(a))

    @property
    def dim(self) -> int:
        return self.alphas.size

    @property
    def tail_mass(self) -> float:
        return float(np.sum(self.alphas[-fock.TAIL_LEVELS :] ** 2))

    def padded(self, dim: int) -> "SchmidtCoeffs":
        a = np.zeros(dim)
        k = min(dim, self.dim)
        a[:k] = self.alphas[:k]
        return SchmidtCoeffs(a, self.overflow)

    def state(self) -> FockState:
        return fock.make_schmidt(self.alphas)


@functools.lru_cache(maxsize=8)
def _log_binomial_half(n_max: int) -> tuple[np.ndarray, ...]:
    """Rows log[C(n, r) 2^-n] for n < n_max."""
    rows = []
    for n in range(n_max):
        r = np.arange(n + 1)
        rows.append(gammaln(n + 1) - gammaln(r + 1) - gammaln(n - r + 1) - n * math.log(2.0))
    return tuple(rows)


def gaussification_step(c: SchmidtCoeffs, tol: Tolerances = DEFAULT) -> SchmidtCoeffs:
    """One round: a'_n = 2^-n sum_r C(n, r) a_r a_{n-r}, then renormalize.

    Coefficients with n >= dim are dropped and their normalized weight is
    reported as ``overflow``; above ``tol.overflow`` this is a TruncationError.
    """
    a = c.alphas
    L = a.size
    if abs(np.dot(a, a) - 1.0) > 1e-9:
        raise ValidationError("Schmidt coefficients are not normalized")
    full = np.zeros(2 * L - 1)
    rows = _log_binomial_half(2 * L - 1)
    for n in range(2 * L - 1):
        lo, hi = max(0, n - L + 1), min(n, L - 1)
        r = np.arange(lo, hi + 1)
        full[n] = np.sum(np.exp(rows[n][lo : hi + 1]) * a[r] * a[n - r])
    total = float(np.dot(full, full))
    kept = full[:L]
    overflow = 1.0 - float(np.dot(kept, kept)) / total
    if overflow > tol.overflow:
        raise TruncationError(f"Gaussification overflow {overflow:.3e} at dim {L}", overflow)
    return SchmidtCoeffs(kept / math.sqrt(np.dot(kept, kept)), overflow)


def schmidt_moments(c: SchmidtCoeffs) -> GaussianMoments:
    """CM of sum_n a_n |n, n> from <a_A a_B> = sum a_n a_{n+1} (n+1) and <n> = sum a_n^2 n."""
    a = c.alphas
    n = np.arange(a.size)
    nbar = float(np.dot(a * a, n))
    corr = float(np.dot(a[:-1] * a[1:], n[1:]))
    z = np.diag([1.0, -1.0])
    sigma = np.block([[(nbar + 0.5) * np.eye(2), corr * z], [corr * z, (nbar + 0.5) * np.eye(2)]])
    return GaussianMoments(np.zeros(4), sigma, tail_mass=c.tail_mass)


def schmidt_delta(c: SchmidtCoeffs, tol: Tolerances = DEFAULT) -> float:
    return delta_from_moments(0.0, schmidt_moments(c), tol)


def _trajectory_at(lam: float, steps: int, dim: int, tol: Tolerances):
    c = SchmidtCoeffs.initial(lam, dim)
    out = [(0, schmidt_delta(c, tol))]
    for k in range(1, steps + 1):
        c = gaussification_step(c, tol)
        if c.tail_mass > tol.tail:
            raise TruncationError(f"Schmidt tail {c.tail_mass:.3e} at dim {dim}", c.tail_mass)
        out.append((k, schmidt_delta(c, tol)))
    return out


def gaussification_trajectory(
    lam: float, steps: int, dim: int | None = None, tol: Tolerances = DEFAULT
) -> list[tuple[int, float]]:
    """delta after each of ``steps`` rounds, starting from (|00> + lam|11>)/norm.

    Without ``dim`` the truncation climbs the doubling ladder (from 64) until
    no round overflows.
    """
    if not 0 <= lam <= 1:
        raise ValidationError("lambda must lie in [0, 1]")
    if steps < 0:
        raise ValidationError("steps must be non-negative")
    if dim is not None:
        return _trajectory_at(lam, steps, dim, tol)
    d = max(64, tol.dim_ladder_start)
    while d <= tol.dim_cap:
        try:
            return _trajectory_at(lam, steps, d, tol)
        except TruncationError:
            d *= 2
    raise DimensionCapError(f"Gaussification at lambda={lam} needs more than {tol.dim_cap} levels")


# ---------------------------------------------------------------- Kerr


@dataclass(frozen=True)
class KerrConfig:
    gamma: float
    alpha: complex

    @property
    def nbar(self) -> float:
        return abs(self.alpha) ** 2


def kerr_evolve(cfg: KerrConfig, dim: int | None = None, tol: Tolerances = DEFAULT) -> FockState:
    """exp(-i gamma n^2) applied to the coherent amplitudes."""
    coh = fock.make_coherent(cfg.alpha, dim, tol)
    n = np.arange(coh.dim, dtype=float)
    return FockState(coh.data * np.exp(-1j * np.mod(cfg.gamma * n * n, 2 * math.pi)))


def kerr_moments_analytic(cfg: KerrConfig) -> GaussianMoments:
    """Closed-form moments of the Kerr-evolved coherent state, valid at any photon number.

    <a>   = alpha e^{-i g} exp(n (e^{-2ig} - 1))
    <a^2> = alpha^2 e^{-4ig} exp(n (e^{-4ig} - 1))
    The centered combinations are formed with expm1 to avoid cancellation at
    large n.
    """
    g, alpha = float(cfg.gamma), complex(cfg.alpha)
    n = abs(alpha) ** 2
    u = np.expm1(-2j * g)  # e^{-2ig} - 1
    e1 = np.exp(n * u)
    A = alpha * np.exp(-1j * g) * e1
    # <a^dag a> - |<a>|^2 = n (1 - |e1|^2), |e1|^2 = exp(-4 n sin^2 g)
    n_c = -n * math.expm1(-4.0 * n * math.sin(g) ** 2)
    # <a^2> - <a>^2 = alpha^2 e^{-2ig} e1^2 (exp(-2ig + n u^2) - 1)
    M = alpha**2 * np.exp(-2j * g) * e1**2 * np.expm1(-2j * g + n * u * u)
    X = math.sqrt(2) * np.array([A.real, A.imag])
    sigma = np.array(
        [[M.real + n_c + 0.5, M.imag], [M.imag, -M.real + n_c + 0.5]]
    )
    return GaussianMoments(X, sigma)


@functools.lru_cache(maxsize=1)
def analytic_gate(tol: Tolerances = DEFAULT) -> float:
    """Dual-path check that must hold before the analytic moments are trusted far out.

    Returns the largest |delta_numeric - delta_analytic| over nbar <= 4 and
    gamma in {0.01, 0.1, 0.5}; raises NumericalError above 1e-6.
    """
    worst = 0.0
    for g in (0.01, 0.1, 0.5):
        for nbar in (0.25, 1.0, 2.0, 4.0):
            a = _kerr_delta_numeric(nbar, g, tol)
            b = _kerr_delta_analytic(nbar, g, tol)
            worst = max(worst, abs(a - b))
    if worst > 1e-6:
        raise NumericalError(f"Kerr analytic moments disagree with Fock numerics by {worst:.3e}")
    return worst


def _kerr_delta_numeric(nbar: float, gamma: float, tol: Tolerances) -> float:
    state = kerr_evolve(KerrConfig(gamma, math.sqrt(nbar)), tol=tol)
    return delta_from_moments(0.0, moments(state), tol)


def _kerr_delta_analytic(nbar: float, gamma: float, tol: Tolerances) -> float:
    return gaussian_entropy(kerr_moments_analytic(KerrConfig(gamma, math.sqrt(nbar))), tol)


def kerr_delta(nbar: float, gamma: float, method: str = "auto", tol: Tolerances = DEFAULT) -> float:
    """delta of a Kerr-evolved coherent state; the state is pure so delta = S(tau)."""
    if nbar < 0:
        raise ValidationError("mean photon number must be non-negative")
    if method == "auto":
        method = "numeric" if nbar < ANALYTIC_THRESHOLD else "analytic"
    if method == "numeric":
        try:
            return _kerr_delta_numeric(nbar, gamma, tol)
        except DimensionCapError as err:
            raise DimensionCapError(
                f"nbar={nbar:g} is beyond the Fock budget; use method='analytic'", err.tail_mass
            ) from err
    if method == "analytic":
        if nbar > ANALYTIC_THRESHOLD:
            analytic_gate(tol)
        return _kerr_delta_analytic(nbar, gamma, tol)
    raise ValidationError(f"unknown method {method!r}")

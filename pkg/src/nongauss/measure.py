"""Relative-entropy non-Gaussianity and the quantities built on it.

delta[rho] = S(rho || tau) = S(tau) - S(rho), where tau is the Gaussian state
with the first and second moments of rho.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.special import gammaln

from . import fock
from .fock import FockState, make_gaussian, moments, von_neumann_entropy
from .gaussian import (
    GaussianMoments,
    entropy_of_nu,
    gaussian_entropy,
    single_mode_decomposition,
    symplectic_eigenvalues,
    thermal_entropy,
)
from .settings import DEFAULT, DimensionCapError, NumericalError, Tolerances, TruncationError, ValidationError

DILATION_CAP = 64


@dataclass(frozen=True)
class NonGReport:
    delta: float  # raw s_tau - s_rho
    s_tau: float
    s_rho: float
    dim_used: int
    tail_mass: float
    nus: tuple[float, ...]

    @property
    def value(self) -> float:
        """delta with truncation noise in [-delta_clamp, 0) mapped to 0."""
        return max(self.delta, 0.0) if self.delta >= -DEFAULT.delta_clamp else self.delta


def delta(rho: FockState, tol: Tolerances = DEFAULT) -> NonGReport:
    m = moments(rho)
    nus = symplectic_eigenvalues(m, tol)
    s_tau = float(np.sum(entropy_of_nu(nus)))
    s_rho = von_neumann_entropy(rho, tol)
    d = s_tau - s_rho
    if d < -tol.delta_error:
        raise NumericalError(f"negative non-Gaussianity {d:.3e}: moments or entropy are inconsistent")
    return NonGReport(d, s_tau, s_rho, rho.dim, rho.tail_mass, tuple(float(v) for v in nus))


def delta_from_moments(s_rho: float, m: GaussianMoments, tol: Tolerances = DEFAULT) -> float:
    """S(tau) - S(rho) when S(rho) is known in closed form (0 for pure states)."""
    if s_rho < 0:
        raise ValidationError("entropy must be non-negative")
    return gaussian_entropy(m, tol) - s_rho


def max_nong_bound(N: float, d: int = 1) -> float:
    """Largest delta at mean photon number N over d modes: d * S(nu(N/d))."""
    if N < 0:
        raise ValidationError("mean photon number must be non-negative")
    if d < 1:
        raise ValidationError("need at least one mode")
    return d * thermal_entropy(N / d)


# ---------------------------------------------------------------- maximally non-Gaussian states


@dataclass(frozen=True)
class MaxNonGSpec:
    """Superposition sum_k amps[k] |base + levels[k]> with level gaps of at least 3."""

    base: int
    levels: tuple[int, ...]
    amps: tuple[complex, ...]

    def __post_init__(self):
        levels = tuple(int(v) for v in self.levels)
        amps = tuple(complex(a) for a in self.amps)
        if not levels or len(levels) != len(amps):
            raise ValidationError("levels and amplitudes must be non-empty and of equal length")
        if self.base < 0 or levels[0] < 0:
            raise ValidationError("levels must be non-negative")
        if any(b - a < 3 for a, b in zip(levels, levels[1:])):
            raise ValidationError(f"levels {levels} violate the spacing rule (gaps >= 3)")
        norm = math.sqrt(sum(abs(a) ** 2 for a in amps))
        if abs(norm - 1.0) > 1e-12:
            amps = tuple(a / norm for a in amps)
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "amps", amps)

    @property
    def mean_photons(self) -> float:
        return self.base + sum(abs(a) ** 2 * lvl for a, lvl in zip(self.amps, self.levels))


def make_max_nong_state(spec: MaxNonGSpec, dim: int | None = None, tol: Tolerances = DEFAULT) -> FockState:
    top = spec.base + spec.levels[-1]
    if dim is None:
        dim = top + 4
    if top >= dim:
        raise ValidationError(f"level {top} does not fit in dim {dim}")
    state = fock.make_superposition([spec.base + lvl for lvl in spec.levels], spec.amps, dim)
    N = spec.mean_photons
    m = moments(state)
    if np.max(np.abs(m.X)) > 1e-9 or np.max(np.abs(m.sigma - (N + 0.5) * np.eye(2))) > 1e-9:
        raise NumericalError("maximal state does not have the thermal covariance matrix")
    if abs(delta(state, tol).delta - max_nong_bound(N, 1)) > 1e-8:
        raise NumericalError("maximal state does not reach the bound")
    return state


# ---------------------------------------------------------------- Holevo bound


@dataclass(frozen=True)
class Ensemble:
    entries: tuple[tuple[float, FockState], ...]

    def __post_init__(self):
        entries = tuple((float(p), rho) for p, rho in self.entries)
        if not entries:
            raise ValidationError("empty ensemble")
        if any(p < 0 for p, _ in entries):
            raise ValidationError("negative probability")
        if abs(sum(p for p, _ in entries) - 1.0) > 1e-12:
            raise ValidationError("probabilities do not sum to 1")
        shapes = {(rho.dim, rho.modes) for _, rho in entries}
        if len(shapes) != 1:
            raise ValidationError("ensemble members must share dimension and mode count")
        object.__setattr__(self, "entries", entries)

    def average(self) -> FockState:
        mat = sum(p * rho.density() for p, rho in self.entries)
        return FockState(0.5 * (mat + mat.conj().T), self.entries[0][1].modes)


@dataclass(frozen=True)
class HolevoResult:
    chi: float
    s_tau: float
    delta_bar: float
    mean_member_entropy: float
    chi_direct: float


def holevo_bound(e: Ensemble, tol: Tolerances = DEFAULT) -> HolevoResult:
    """chi via S(tau) - delta[rho_bar] - sum p S(rho_k), cross-checked against S(rho_bar) - ..."""
    avg = e.average()
    report = delta(avg, tol)
    members = sum(p * von_neumann_entropy(rho, tol) for p, rho in e.entries)
    chi = report.s_tau - report.delta - members
    chi_direct = von_neumann_entropy(avg, tol) - members
    if abs(chi - chi_direct) > 1e-9:
        raise NumericalError(f"Holevo decompositions disagree: {chi} vs {chi_direct}")
    return HolevoResult(chi, report.s_tau, report.delta, members, chi_direct)


def thermal_encoding(nth: float, dim: int) -> Ensemble:
    """Fock states |n> with geometric weights: the eigen-ensemble of nu(nth)."""
    w = fock.thermal_weights(nth, dim)
    w = w / w.sum()
    return Ensemble(tuple((float(p), fock.make_fock(n, dim)) for n, p in enumerate(w) if p > 0))


def eigenstate_encoding_chi(rho: FockState, tol: Tolerances = DEFAULT) -> float:
    """Holevo quantity S(tau) - delta[rho] for symbols encoded on the eigenstates of rho."""
    report = delta(rho, tol)
    chi = report.s_tau - report.delta
    direct = von_neumann_entropy(rho, tol)
    if abs(chi - direct) > 1e-9:
        raise NumericalError(f"eigenstate encoding mismatch {chi} vs {direct}")
    return chi


# ---------------------------------------------------------------- channels


def identity_channel(rho: FockState) -> FockState:
    return rho


@dataclass(frozen=True)
class KerrChannel:
    """rho -> U rho U^dag with U = exp(-i gamma (a^dag a)^2)."""

    gamma: float

    def __call__(self, rho: FockState) -> FockState:
        n = np.arange(rho.dim, dtype=float)
        phase = np.exp(-1j * np.mod(self.gamma * n * n, 2 * math.pi))
        if rho.is_pure:
            return FockState(rho.data * phase)
        return FockState(rho.data * np.outer(phase, phase.conj()))


@dataclass(frozen=True)
class AttenuationChannel:
    """Pure-loss channel of transmissivity eta, applied through its Kraus form.

    rho'_{mn} = sum_l sqrt(C(m+l, l) C(n+l, l)) eta^{(m+n)/2} (1-eta)^l rho_{m+l, n+l}
    """

    eta: float

    def __call__(self, rho: FockState) -> FockState:
        if rho.modes != 1:
            raise ValidationError("attenuation acts on single-mode states")
        if not 0 <= self.eta <= 1:
            raise ValidationError("transmissivity must lie in [0, 1]")
        d = rho.dim
        src = rho.density()
        out = np.zeros_like(src)
        n = np.arange(d)
        log_eta = math.log(self.eta) if self.eta > 0 else -np.inf
        log_loss = math.log1p(-self.eta) if self.eta < 1 else -np.inf
        for l in range(d):
            k = d - l
            if l == 0:
                log_w = 0.5 * log_eta * n[:k] if self.eta > 0 else np.where(n[:k] == 0, 0.0, -np.inf)
            else:
                if self.eta == 1:
                    break
                log_w = (
                    0.5 * (gammaln(n[:k] + l + 1) - gammaln(n[:k] + 1) - gammaln(l + 1))
                    + (0.5 * log_eta * n[:k] if self.eta > 0 else np.where(n[:k] == 0, 0.0, -np.inf))
                    + 0.5 * l * log_loss
                )
            w = np.exp(log_w)
            out[:k, :k] += np.outer(w, w) * src[l:, l:]
        out = 0.5 * (out + out.conj().T)
        return FockState(out / np.trace(out).real)


@dataclass(frozen=True)
class BeamsplitterChannel:
    """Couple to a Gaussian ancilla through a beamsplitter, then trace it out.

    Transmissivity is eta = cos^2(theta). The joint density is never formed;
    eigenvectors of rho and ancilla Fock levels are propagated one at a time. Vacuum ancilla gives pure loss; a thermal
    ancilla gives a thermalizing channel.
    """

    eta: float
    ancilla_nth: float = 0.0

    def __call__(self, rho: FockState, tol: Tolerances = DEFAULT) -> FockState:
        if rho.modes != 1:
            raise ValidationError("the channel acts on single-mode states")
        d = rho.dim
        if d > DILATION_CAP:
            raise DimensionCapError(f"dilated channel is limited to {DILATION_CAP} levels, got {d}")
        env = fock.make_thermal(self.ancilla_nth, d, tol) if self.ancilla_nth else fock.make_fock(0, d)
        env_weights = np.diag(env.density()).real
        if rho.is_pure:
            cols = rho.data[:, None]
        else:
            w, v = np.linalg.eigh(rho.density())
            keep = w > 1e-16
            cols = v[:, keep] * np.sqrt(w[keep])
        theta = math.acos(math.sqrt(self.eta))
        out = np.zeros((d, d), complex)
        # push (eigenvector x ancilla level k) through the beamsplitter, then trace the ancilla
        for k, pk in enumerate(env_weights):
            if pk < 1e-18:
                continue
            joint = np.zeros((d, d, cols.shape[1]), complex)
            joint[:, k, :] = cols
            t = fock._apply_beamsplitter_columns(joint.reshape(d * d, -1), d, theta).reshape(d, d, -1)
            out += pk * np.einsum("abj,cbj->ac", t, t.conj())
        out = 0.5 * (out + out.conj().T)
        kept = float(np.trace(out).real)
        return fock._check_tail(FockState(out / kept), max(0.0, 1.0 - kept), 10 * tol.tail, "dilated channel")


@dataclass(frozen=True)
class ChannelGrid:
    """Gaussian inputs D(alpha) S(r) nu(nth), organized by total energy.

    Each energy level E splits into (displacement, squeezing, thermal) shares
    on a simplex grid with ``splits`` steps; the displacement phase relative
    to the squeezing axis takes ``phases`` values in [0, pi).
    """

    energies: int = 4
    splits: int = 3
    phases: int = 3

    def points(self, energy_cap: float) -> list[tuple[float, complex, complex, float]]:
        pts = [(0.0, 0j, 0j, 0.0)]
        for E in np.linspace(0.0, energy_cap, self.energies + 1)[1:]:
            for i in range(self.splits + 1):
                for j in range(self.splits + 1 - i):
                    fa, fs = i / self.splits, j / self.splits
                    ft = 1.0 - fa - fs
                    nth = ft * E
                    r = math.asinh(math.sqrt(fs * E / (2 * nth + 1)))
                    phases = np.arange(self.phases) * math.pi / self.phases if fa > 0 else [0.0]
                    for ph in phases:
                        alpha = math.sqrt(fa * E) * complex(math.cos(ph), math.sin(ph))
                        pts.append((float(E), alpha, complex(r), float(nth)))
        return pts


@dataclass(frozen=True)
class ChannelNonGResult:
    lower_bound: float
    argmax: tuple[float, complex, complex, float]  # (energy, alpha, zeta, nth)
    evaluated: int
    skipped: int


def _channel_point(args):
    channel, point, tol = args
    energy, alpha, zeta, nth = point
    try:
        rho = make_gaussian(alpha, zeta, nth, tol=tol)
        out = channel(rho)
        return delta(out, tol).value
    except TruncationError:
        return None


def channel_nong(
    channel: Callable[[FockState], FockState],
    energy_cap: float,
    grid: ChannelGrid = ChannelGrid(),
    jobs: int = 1,
    tol: Tolerances = DEFAULT,
) -> ChannelNonGResult:
    """Grid lower bound on max over Gaussian inputs of delta[channel(rho)].

    Inputs are capped at mean photon number ``energy_cap``. Points whose
    output fails truncation certification are skipped and counted.
    """
    if energy_cap < 0:
        raise ValidationError("energy cap must be non-negative")
    pts = grid.points(energy_cap)
    tasks = [(channel, p, tol) for p in pts]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_channel_point, tasks))
    else:
        values = [_channel_point(t) for t in tasks]
    best, arg, skipped = -math.inf, pts[0], 0
    for p, v in zip(pts, values):
        if v is None:
            skipped += 1
        elif v > best:
            best, arg = v, p
    if best == -math.inf:
        raise TruncationError("every grid point failed truncation certification")
    return ChannelNonGResult(best, arg, len(pts) - skipped, skipped)


# ---------------------------------------------------------------- materializing tau


def reference_state(rho: FockState, dim: int | None = None, tol: Tolerances = DEFAULT) -> FockState:
    """Fock representation of the single-mode reference Gaussian state tau."""
    alpha, zeta, nth = single_mode_decomposition(moments(rho), tol)
    return make_gaussian(alpha, zeta, nth, dim, tol)


def conditional_entropy(rho: FockState, tol: Tolerances = DEFAULT) -> float:
    """S(A|B) = S(rho_AB) - S(rho_B) for a two-mode state, B = mode 1."""
    if rho.modes != 2:
        raise ValidationError("two-mode state expected")
    return von_neumann_entropy(rho, tol) - von_neumann_entropy(fock.partial_trace(rho, 1), tol)

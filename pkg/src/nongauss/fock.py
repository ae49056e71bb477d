"""Truncated Fock-basis states of one or two bosonic modes.

Two-mode amplitudes are stored mode-major: index ``n0 * dim + n1``.
Quadratures follow q = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)),
so the vacuum covariance matrix is I/2.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import sparse, stats
from scipy.linalg import expm
from scipy.special import entr, gammaln

from .gaussian import GaussianMoments
from .settings import (
    DEFAULT,
    DimensionCapError,
    Tolerances,
    TruncationError,
    ValidationError,
)

TAIL_LEVELS = 3


@dataclass(frozen=True, eq=False)
class LadderOperators:
    dim: int
    a: np.ndarray
    n_op: np.ndarray
    q: np.ndarray
    p: np.ndarray


@functools.lru_cache(maxsize=32)
def ladder(dim: int) -> LadderOperators:
    """Truncated ladder, number and quadrature matrices (read-only)."""
    a = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)
    n_op = np.diag(np.arange(dim, dtype=float)).astype(complex)
    q = (a + a.conj().T) / math.sqrt(2)
    p = (a - a.conj().T) / (1j * math.sqrt(2))
    for m in (a, n_op, q, p):
        m.setflags(write=False)
    return LadderOperators(dim, a, n_op, q, p)


@dataclass(frozen=True, eq=False)
class FockState:
    """Pure state (amplitude vector) or density matrix in a truncated basis.

    Instances are immutable: the payload array is flagged read-only. Use the
    ``pure`` / ``mixed`` constructors to get normalization and validation.
    """

    data: np.ndarray
    modes: int = 1

    def __post_init__(self):
        data = np.asarray(self.data, dtype=complex)
        if self.modes not in (1, 2):
            raise ValidationError(f"only 1 or 2 modes are supported, got {self.modes}")
        if data.ndim not in (1, 2) or (data.ndim == 2 and data.shape[0] != data.shape[1]):
            raise ValidationError(f"payload must be a vector or square matrix, got {data.shape}")
        size = data.shape[0]
        dim = int(round(size ** (1.0 / self.modes)))
        if dim**self.modes != size or dim < 1:
            raise ValidationError(f"size {size} is not dim**{self.modes}")
        if data.ndim == 2 and self.modes == 2 and dim > DEFAULT.mixed_two_mode_cap:
            raise ValidationError(
                f"mixed two-mode states are capped at dim {DEFAULT.mixed_two_mode_cap} per mode"
            )
        if data is self.data:
            data = data.copy()
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @classmethod
    def pure(cls, vec, modes: int = 1, normalize: bool = True) -> "FockState":
        vec = np.array(vec, dtype=complex)
        norm = np.linalg.norm(vec)
        if norm == 0:
            raise ValidationError("zero vector")
        if normalize:
            vec = vec / norm
        return cls(vec, modes)

    @classmethod
    def mixed(cls, mat, modes: int = 1, tol: Tolerances = DEFAULT) -> "FockState":
        mat = np.array(mat, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValidationError(f"density matrix must be square, got {mat.shape}")
        if np.max(np.abs(mat - mat.conj().T), initial=0.0) > tol.hermitian:
            raise ValidationError("density matrix is not Hermitian")
        mat = 0.5 * (mat + mat.conj().T)
        tr = np.trace(mat).real
        if tr <= 0:
            raise ValidationError("density matrix has non-positive trace")
        return cls(mat / tr, modes)

    @property
    def dim(self) -> int:
        return int(round(self.data.shape[0] ** (1.0 / self.modes)))

    @property
    def is_pure(self) -> bool:
        return self.data.ndim == 1

    def density(self) -> np.ndarray:
        if self.is_pure:
            return np.outer(self.data, self.data.conj())
        return np.array(self.data)

    def trace(self) -> float:
        if self.is_pure:
            return float(np.vdot(self.data, self.data).real)
        return float(np.trace(self.data).real)

    def tensor_view(self) -> np.ndarray:
        """Payload reshaped to one axis per mode (kets first, then bras)."""
        d, m = self.dim, self.modes
        shape = (d,) * m if self.is_pure else (d,) * (2 * m)
        return self.data.reshape(shape)

    def populations(self, mode: int = 0) -> np.ndarray:
        if self.is_pure:
            probs = np.abs(self.data) ** 2
        else:
            probs = np.diag(self.data).real
        probs = probs.reshape((self.dim,) * self.modes)
        others = tuple(k for k in range(self.modes) if k != mode)
        return probs.sum(axis=others) if others else probs

    @property
    def tail_mass(self) -> float:
        """Largest population held in the top three Fock levels of any mode."""
        return max(
            float(self.populations(k)[-TAIL_LEVELS:].sum()) for k in range(self.modes)
        )

    def mean_photons(self, mode: int | None = None) -> float:
        n = np.arange(self.dim)
        modes = range(self.modes) if mode is None else [mode]
        return float(sum(self.populations(k) @ n for k in modes))

    def resized(self, dim: int) -> "FockState":
        """Zero-pad (or crop, if the dropped levels are empty) to a new dimension."""
        if self.modes != 1:
            raise ValidationError("resizing is implemented for single-mode states only")
        if dim < self.dim and self.populations()[dim:].sum() > DEFAULT.tail:
            raise TruncationError("cropping would discard population")
        k = min(dim, self.dim)
        if self.is_pure:
            vec = np.zeros(dim, complex)
            vec[:k] = self.data[:k]
            return FockState(vec)
        mat = np.zeros((dim, dim), complex)
        mat[:k, :k] = self.data[:k, :k]
        return FockState(mat)


def _check_tail(state: FockState, lost: float, limit: float, what: str) -> FockState:
    tail = lost + state.tail_mass
    if tail > limit:
        raise TruncationError(
            f"{what}: tail mass {tail:.3e} exceeds {limit:.1e} at dim {state.dim}", tail
        )
    return state


# ---------------------------------------------------------------- constructors


def make_fock(n: int, dim: int) -> FockState:
    if not 0 <= n < dim:
        raise ValidationError(f"Fock level {n} out of range for dim {dim}")
    vec = np.zeros(dim, complex)
    vec[n] = 1.0
    return FockState(vec)


def make_superposition(levels: Sequence[int], amps: Sequence[complex], dim: int) -> FockState:
    vec = np.zeros(dim, complex)
    for level, amp in zip(levels, amps, strict=True):
        if not 0 <= level < dim:
            raise ValidationError(f"Fock level {level} out of range for dim {dim}")
        vec[level] += amp
    return FockState.pure(vec)


def coherent_amplitudes(alpha: complex, dim: int) -> np.ndarray:
    """Untruncated-normalized amplitudes e^{-|a|^2/2} a^n / sqrt(n!) for n < dim."""
    n = np.arange(dim)
    if alpha == 0:
        out = np.zeros(dim, complex)
        out[0] = 1.0
        return out
    log_mag = -0.5 * abs(alpha) ** 2 + n * math.log(abs(alpha)) - 0.5 * gammaln(n + 1)
    return np.exp(log_mag + 1j * n * np.angle(alpha))


def auto_dim(nbar: float, kind: str = "coherent", tol: Tolerances = DEFAULT) -> int:
    """Smallest dimension on the doubling ladder certifying the tail mass.

    ``kind`` selects the photon-number law used for the certificate:
    ``"coherent"`` (Poisson with mean ``nbar``) or ``"thermal"`` (geometric).
    """
    if nbar < 0:
        raise ValidationError("mean photon number must be non-negative")
    if nbar >= tol.dim_cap:
        raise DimensionCapError(
            f"mean photon number {nbar:g} exceeds the Fock cap {tol.dim_cap}; use the analytic path"
        )
    dim = tol.dim_ladder_start
    while dim <= tol.dim_cap:
        cut = dim - TAIL_LEVELS
        if kind == "coherent":
            tail = stats.poisson.sf(cut - 1, nbar) if nbar > 0 else 0.0
        elif kind == "thermal":
            tail = (nbar / (nbar + 1.0)) ** cut if nbar > 0 else 0.0
        else:
            raise ValidationError(f"unknown distribution kind {kind!r}")
        if tail < tol.tail:
            return dim
        dim *= 2
    raise DimensionCapError(
        f"no dimension up to {tol.dim_cap} certifies nbar={nbar:g}; use the analytic path"
    )


def escalate(
    builder: Callable[[int], FockState], tol: Tolerances = DEFAULT, start: int | None = None
) -> FockState:
    """Call ``builder(dim)`` up the doubling ladder until it stops raising TruncationError."""
    dim = start or tol.dim_ladder_start
    last = None
    while dim <= tol.dim_cap:
        try:
            return builder(dim)
        except DimensionCapError:
            raise
        except TruncationError as err:
            last = err
        dim *= 2
    raise DimensionCapError(
        f"no dimension up to {tol.dim_cap} certifies the state; use the analytic path",
        getattr(last, "tail_mass", None),
    )


def make_coherent(alpha: complex, dim: int | None = None, tol: Tolerances = DEFAULT) -> FockState:
    if dim is None:
        dim = auto_dim(abs(alpha) ** 2, "coherent", tol)
    amps = coherent_amplitudes(alpha, dim)
    lost = max(0.0, 1.0 - float(np.sum(np.abs(amps) ** 2)))
    state = FockState.pure(amps)
    return _check_tail(state, lost, tol.tail, "coherent state")


def make_cat(alpha: complex, sign: int = 1, dim: int | None = None, tol: Tolerances = DEFAULT) -> FockState:
    """Normalized (|alpha> + sign |-alpha>)."""
    if dim is None:
        dim = auto_dim(abs(alpha) ** 2, "coherent", tol)
    amps = coherent_amplitudes(alpha, dim) + sign * coherent_amplitudes(-alpha, dim)
    state = FockState.pure(amps)
    return _check_tail(state, 0.0, tol.tail, "cat state")


def thermal_weights(nth: float, dim: int) -> np.ndarray:
    if nth < 0:
        raise ValidationError("thermal photon number must be non-negative")
    if nth == 0:
        w = np.zeros(dim)
        w[0] = 1.0
        return w
    q = nth / (nth + 1.0)
    return (1.0 - q) * q ** np.arange(dim)


def make_thermal(nth: float, dim: int | None = None, tol: Tolerances = DEFAULT) -> FockState:
    if dim is None:
        dim = auto_dim(nth, "thermal", tol)
    w = thermal_weights(nth, dim)
    lost = max(0.0, 1.0 - w.sum())
    state = FockState(np.diag(w / w.sum()).astype(complex))
    return _check_tail(state, lost, tol.tail, "thermal state")


def make_schmidt(coeffs: Sequence[float]) -> FockState:
    """Two-mode pure state sum_n c_n |n, n> with dim = len(coeffs)."""
    coeffs = np.asarray(coeffs, dtype=complex)
    d = coeffs.size
    vec = np.zeros(d * d, complex)
    vec[np.arange(d) * (d + 1)] = coeffs
    return FockState.pure(vec, modes=2)


def make_gaussian(
    alpha: complex = 0.0,
    zeta: complex = 0.0,
    nth: float = 0.0,
    dim: int | None = None,
    tol: Tolerances = DEFAULT,
) -> FockState:
    """Single-mode Gaussian state D(alpha) S(zeta) nu(nth) S^dag D^dag.

    Without ``dim`` the doubling ladder is climbed until the tail certifies.
    """
    if dim is None:
        return escalate(lambda d: make_gaussian(alpha, zeta, nth, d, tol), tol)
    work = _working_dim(dim)
    u = np.eye(work, dtype=complex)
    if zeta != 0:
        u = _single_mode_unitary(Squeezing(zeta), work)
    if alpha != 0:
        u = _single_mode_unitary(Displacement(alpha), work) @ u
    w = thermal_weights(nth, work)
    keep = int(np.count_nonzero(w > 1e-22))
    lost_thermal = max(0.0, 1.0 - w[:keep].sum())
    block = u[:dim, :keep]
    if keep == 1:
        vec = block[:, 0]
        lost = lost_thermal + max(0.0, 1.0 - float(np.vdot(vec, vec).real))
        state = FockState.pure(vec)
    else:
        mat = (block * w[:keep]) @ block.conj().T
        mat = 0.5 * (mat + mat.conj().T)
        lost = lost_thermal + max(0.0, w[:keep].sum() - float(np.trace(mat).real))
        state = FockState(mat / np.trace(mat).real)
    return _check_tail(state, lost, tol.tail, "Gaussian state")


# ---------------------------------------------------------------- composition


def tensor(a: FockState, b: FockState) -> FockState:
    if a.modes != 1 or b.modes != 1:
        raise ValidationError("tensor expects two single-mode states")
    if a.dim != b.dim:
        raise ValidationError(f"dimension mismatch {a.dim} vs {b.dim}")
    if a.is_pure and b.is_pure:
        return FockState(np.kron(a.data, b.data), modes=2)
    return FockState(np.kron(a.density(), b.density()), modes=2)


def partial_trace(rho: FockState, keep: int) -> FockState:
    """Reduced state of mode ``keep`` of a two-mode state."""
    if rho.modes != 2:
        raise ValidationError("partial trace needs a two-mode state")
    if keep not in (0, 1):
        raise ValidationError(f"mode index must be 0 or 1, got {keep}")
    d = rho.dim
    if rho.is_pure:
        m = rho.data.reshape(d, d)
        if keep == 1:
            m = m.T
        red = m @ m.conj().T
    else:
        t = rho.data.reshape(d, d, d, d)
        red = np.einsum("ijkj->ik", t) if keep == 0 else np.einsum("ijil->jl", t)
    red = 0.5 * (red + red.conj().T)
    return FockState(red)


# ---------------------------------------------------------------- entropy and moments


def von_neumann_entropy(rho: FockState, tol: Tolerances = DEFAULT) -> float:
    """-Tr[rho ln rho] in nats; pure states short-circuit to 0."""
    if rho.is_pure:
        return 0.0
    mat = rho.data
    if np.max(np.abs(mat - mat.conj().T)) > tol.hermitian:
        raise ValidationError("density matrix is not Hermitian")
    evals = np.linalg.eigvalsh(mat)
    if evals[0] < -tol.psd:
        raise ValidationError(f"density matrix has negative eigenvalue {evals[0]:.3e}")
    return float(entr(np.clip(evals, 0.0, 1.0)).sum())


def _lower(t: np.ndarray, axis: int) -> np.ndarray:
    """Apply the annihilation operator along one tensor axis (real, so also valid on bras)."""
    d = t.shape[axis]
    out = np.zeros_like(t)
    src = [slice(None)] * t.ndim
    dst = [slice(None)] * t.ndim
    src[axis] = slice(1, d)
    dst[axis] = slice(0, d - 1)
    shape = [1] * t.ndim
    shape[axis] = d - 1
    out[tuple(dst)] = t[tuple(src)] * np.sqrt(np.arange(1, d)).reshape(shape)
    return out


@functools.lru_cache(maxsize=16)
def _sparse_lowering(dim: int, modes: int) -> tuple:
    a = sparse.diags(np.sqrt(np.arange(1, dim, dtype=float)), 1, format="csr")
    eye = sparse.identity(dim, format="csr")
    ops = []
    for k in range(modes):
        full = a if k == 0 else eye
        for j in range(1, modes):
            full = sparse.kron(full, a if j == k else eye, format="csr")
        ops.append(full)
    return tuple(ops)


def _normal_ordered(rho: FockState):
    """<a_k>, <a_k^2>, <a_k^dag a_k>, <a_j a_k>, <a_j^dag a_k> for all modes.

    Only lowering operators are applied, so the values are exact for the
    truncated state: no boundary artefacts from the truncated a^dag.
    """
    m = rho.modes
    t = rho.tensor_view()
    A = np.zeros(m, complex)
    B = np.zeros(m, complex)
    N = np.zeros(m)
    C = np.zeros((m, m), complex)
    D = np.zeros((m, m), complex)
    if rho.is_pure:
        low = [_lower(t, k) for k in range(m)]
        for k in range(m):
            A[k] = np.vdot(t, low[k])
            B[k] = np.vdot(t, _lower(low[k], k))
            N[k] = np.vdot(low[k], low[k]).real
            for j in range(m):
                C[j, k] = np.vdot(t, _lower(low[k], j))
                D[j, k] = np.vdot(low[j], low[k])
    else:
        R = rho.data
        low = _sparse_lowering(rho.dim, m)

        def ev(op):
            # Tr(op rho) touching only the nonzeros of op
            op = op.tocoo()
            return np.sum(op.data * R[op.col, op.row])

        for k in range(m):
            A[k] = ev(low[k])
            B[k] = ev(low[k] @ low[k])
            N[k] = ev(low[k].T @ low[k]).real
            for j in range(m):
                C[j, k] = ev(low[j] @ low[k])
                D[j, k] = ev(low[j].T @ low[k])
    return A, B, N, C, D


def moments(rho: FockState) -> GaussianMoments:
    """First moments X and covariance matrix sigma, ordering (q1, p1, q2, p2)."""
    A, B, N, C, D = _normal_ordered(rho)
    m = rho.modes
    X = np.empty(2 * m)
    X[0::2] = math.sqrt(2) * A.real
    X[1::2] = math.sqrt(2) * A.imag
    sigma = np.zeros((2 * m, 2 * m))
    for k in range(m):
        M = B[k] - A[k] ** 2
        Nc = N[k] - abs(A[k]) ** 2
        sigma[2 * k, 2 * k] = M.real + Nc + 0.5
        sigma[2 * k + 1, 2 * k + 1] = -M.real + Nc + 0.5
        sigma[2 * k, 2 * k + 1] = sigma[2 * k + 1, 2 * k] = M.imag
    for j in range(m):
        for k in range(m):
            if j == k:
                continue
            qq = C[j, k].real + D[j, k].real
            pp = -C[j, k].real + D[j, k].real
            qp = C[j, k].imag + D[j, k].imag
            sigma[2 * j, 2 * k] = qq - X[2 * j] * X[2 * k]
            sigma[2 * j + 1, 2 * k + 1] = pp - X[2 * j + 1] * X[2 * k + 1]

            sigma[2 * j, 2 * k + 1] = sigma[2 * k + 1, 2 * j] = qp - X[2 * j] * X[2 * k + 1]
    sigma = 0.5 * (sigma + sigma.T)
    return GaussianMoments(X, sigma, tail_mass=rho.tail_mass)


# ---------------------------------------------------------------- Gaussian unitaries


@dataclass(frozen=True)
class Displacement:
    alpha: complex
    mode: int = 0

    def generator(self, a: np.ndarray) -> np.ndarray:
        return self.alpha * a.conj().T - np.conj(self.alpha) * a

    def symplectic(self, d: int):
        shift = np.zeros(2 * d)
        shift[2 * self.mode] = math.sqrt(2) * complex(self.alpha).real
        shift[2 * self.mode + 1] = math.sqrt(2) * complex(self.alpha).imag
        return np.eye(2 * d), shift


@dataclass(frozen=True)
class Squeezing:
    """S(zeta) = exp(zeta a^dag^2 / 2 - zeta^* a^2 / 2)."""

    zeta: complex
    mode: int = 0

    def generator(self, a: np.ndarray) -> np.ndarray:
        ad = a.conj().T
        return 0.5 * self.zeta * (ad @ ad) - 0.5 * np.conj(self.zeta) * (a @ a)

    def symplectic(self, d: int):
        r, phi = abs(self.zeta), np.angle(self.zeta)
        block = math.cosh(r) * np.eye(2) + math.sinh(r) * np.array(
            [[math.cos(phi), math.sin(phi)], [math.sin(phi), -math.cos(phi)]]
        )
        return _embed_block(block, self.mode, d), np.zeros(2 * d)


@dataclass(frozen=True)
class Phase:
    """exp(-i theta a^dag a)."""

    theta: float
    mode: int = 0

    def generator(self, a: np.ndarray) -> np.ndarray:
        return -1j * self.theta * (a.conj().T @ a)

    def symplectic(self, d: int):
        c, s = math.cos(self.theta), math.sin(self.theta)
        return _embed_block(np.array([[c, s], [-s, c]]), self.mode, d), np.zeros(2 * d)


@dataclass(frozen=True)
class Beamsplitter:
    """exp(theta (a_i^dag a_j - a_i a_j^dag)) for modes (i, j)."""

    theta: float
    modes: tuple[int, int] = (0, 1)

    def symplectic(self, d: int):
        i, j = self.modes
        c, s = math.cos(self.theta), math.sin(self.theta)
        S = np.eye(2 * d)
        for off in (0, 1):
            S[2 * i + off, 2 * i + off] = c
            S[2 * i + off, 2 * j + off] = s
            S[2 * j + off, 2 * i + off] = -s
            S[2 * j + off, 2 * j + off] = c
        return S, np.zeros(2 * d)


GaussianOp = Displacement | Squeezing | Phase | Beamsplitter


def _embed_block(block: np.ndarray, mode: int, d: int) -> np.ndarray:
    S = np.eye(2 * d)
    S[2 * mode : 2 * mode + 2, 2 * mode : 2 * mode + 2] = block
    return S


def _working_dim(dim: int) -> int:
    return dim + max(16, dim // 4)


def _single_mode_unitary(op, work: int) -> np.ndarray:
    if work > 512:
        return _exp_generator(op, work)
    return _cached_unitary(op, work)


@functools.lru_cache(maxsize=64)
def _cached_unitary(op, work: int) -> np.ndarray:
    return _exp_generator(op, work)


def _exp_generator(op, work: int) -> np.ndarray:
    """exp of the truncated generator, via the eigenbasis of i*generator."""
    if isinstance(op, Phase):
        return np.diag(np.exp(-1j * op.theta * np.arange(work)))
    gen = op.generator(np.asarray(ladder(work).a))
    w, v = np.linalg.eigh(1j * gen)
    u = (v * np.exp(-1j * w)) @ v.conj().T
    u.setflags(write=False)
    return u


@functools.lru_cache(maxsize=32)
def _beamsplitter_blocks(dim: int, theta: float):
    """Exact per-total-photon-number blocks restricted to the truncated box."""
    blocks = []
    for total in range(2 * dim - 1):
        n0 = np.arange(total + 1)
        coupling = theta * np.sqrt((n0[:-1] + 1.0) * (total - n0[:-1]))
        gen = np.diag(coupling, -1) - np.diag(coupling, 1)
        u = expm(gen)
        valid = n0[(n0 < dim) & (total - n0 < dim)]
        flat = valid * dim + (total - valid)
        blocks.append((flat, u[np.ix_(valid, valid)]))
    return blocks


def _apply_beamsplitter_columns(m: np.ndarray, dim: int, theta: float) -> np.ndarray:
    out = np.zeros_like(m)
    for flat, block in _beamsplitter_blocks(dim, theta):
        out[flat] = block @ m[flat]
    return out


def _apply_along(t: np.ndarray, u: np.ndarray, axis: int) -> np.ndarray:
    return np.moveaxis(np.tensordot(u, t, axes=(1, axis)), 0, axis)


def apply_gaussian_unitary(
    state: FockState, op: GaussianOp, tol: Tolerances = DEFAULT
) -> FockState:
    """Evolve by a Gaussian unitary; raises TruncationError if the result leaks."""
    d, m = state.dim, state.modes
    if isinstance(op, Beamsplitter):
        if m != 2 or sorted(op.modes) != [0, 1]:
            raise ValidationError("beamsplitter needs a two-mode state and modes (0, 1)")
        theta = op.theta if tuple(op.modes) == (0, 1) else -op.theta
        if state.is_pure:
            out = _apply_beamsplitter_columns(state.data[:, None], d, theta)[:, 0]
        else:
            half = _apply_beamsplitter_columns(state.data, d, theta)
            out = _apply_beamsplitter_columns(half.conj().T, d, theta)
    else:
        if not 0 <= op.mode < m:
            raise ValidationError(f"mode {op.mode} out of range")
        u = _single_mode_unitary(op, _working_dim(d) if not isinstance(op, Phase) else d)[:d, :d]
        t = state.tensor_view()
        t = _apply_along(t, u, op.mode)
        if not state.is_pure:
            t = _apply_along(t, u.conj(), m + op.mode)
        out = t.reshape(state.data.shape)
    if state.is_pure:
        kept = float(np.vdot(out, out).real)
        new = FockState(out / math.sqrt(kept), m)
    else:
        out = 0.5 * (out + out.conj().T)
        kept = float(np.trace(out).real)
        new = FockState(out / kept, m)
    return _check_tail(new, max(0.0, 1.0 - kept), 10 * tol.tail, type(op).__name__)


def apply_all(state: FockState, ops: Iterable[GaussianOp], tol: Tolerances = DEFAULT) -> FockState:
    for op in ops:
        state = apply_gaussian_unitary(state, op, tol)
    return state

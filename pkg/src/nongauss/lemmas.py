"""Randomized property checks for the non-Gaussianity measure.

Each suite draws its own generator from ``(seed, suite)`` so results do not
depend on which other suites ran first.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import fock
from .fock import FockState
from .gaussian import Verdict, entanglement_witness, gaussian_conditional_entropy, thermal_entropy, twin_beam_moments
from .measure import (
    AttenuationChannel,
    BeamsplitterChannel,
    Ensemble,
    conditional_entropy,
    delta,
    eigenstate_encoding_chi,
    holevo_bound,
    max_nong_bound,
    reference_state,
    thermal_encoding,
)
from .settings import DEFAULT, NonGError, Tolerances, ValidationError

SUITES = ("L1", "L2", "L3", "L4", "L5", "L6", "L7", "maximality", "witness", "holevo")


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: int
    total: int
    worst: float  # largest violation margin seen (<= 0 means every sample passed)
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.passed}/{self.total} worst={self.worst:.3e} {self.note}".rstrip()


class _Tally:
    def __init__(self, name: str):
        self.name, self.passed, self.total, self.worst = name, 0, 0, -math.inf

    def add(self, margin: float):
        """Record one sample; ``margin`` <= 0 passes."""
        self.total += 1
        self.passed += margin <= 0
        self.worst = max(self.worst, margin)

    def fail(self):
        self.total += 1
        self.worst = max(self.worst, math.inf)

    def result(self, note: str = "") -> PropertyResult:
        return PropertyResult(self.name, self.passed, self.total, self.worst, note)


# ---------------------------------------------------------------- samplers


def random_pure(rng: np.random.Generator, dim: int, support: int = 5) -> FockState:
    vec = np.zeros(dim, complex)
    vec[:support] = rng.normal(size=support) + 1j * rng.normal(size=support)
    return FockState.pure(vec)


def random_mixed(rng: np.random.Generator, dim: int, support: int = 5, rank: int = 3) -> FockState:
    g = np.zeros((dim, rank), complex)
    g[:support] = rng.normal(size=(support, rank)) + 1j * rng.normal(size=(support, rank))
    return FockState.mixed(g @ g.conj().T)


def random_state(rng: np.random.Generator, dim: int, support: int = 5) -> FockState:
    if rng.random() < 0.5:
        return random_pure(rng, dim, support)
    return random_mixed(rng, dim, support, rank=int(rng.integers(2, 4)))


def random_two_mode(rng: np.random.Generator, dim: int, support: int = 4) -> FockState:
    if rng.random() < 0.5:
        t = np.zeros((dim, dim), complex)
        t[:support, :support] = rng.normal(size=(support, support)) + 1j * rng.normal(size=(support, support))
        return FockState.pure(t.reshape(-1), modes=2)
    rank = int(rng.integers(2, 4))
    g = np.zeros((dim, dim, rank), complex)
    shape = (support, support, rank)
    g[:support, :support] = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    g = g.reshape(dim * dim, rank)
    return FockState.mixed(g @ g.conj().T, modes=2)


def random_gaussian_params(rng: np.random.Generator, alpha_max=2.0, zeta_max=1.0, nth_max=3.0):
    """(alpha, zeta, nth) uniform over the discs |alpha| <= alpha_max, |zeta| <= zeta_max."""
    alpha = alpha_max * math.sqrt(rng.random()) * complex(np.exp(2j * math.pi * rng.random()))
    zeta = zeta_max * math.sqrt(rng.random()) * complex(np.exp(2j * math.pi * rng.random()))
    return alpha, zeta, nth_max * rng.random()


def random_gaussian(rng: np.random.Generator, kind: str | None = None, tol: Tolerances = DEFAULT) -> FockState:
    """Coherent, squeezed, thermal, or displaced-squeezed-thermal sample."""
    kind = kind or rng.choice(["coherent", "squeezed", "thermal", "composite"])
    alpha, zeta, nth = random_gaussian_params(rng)
    if kind == "coherent":
        zeta, nth = 0j, 0.0
    elif kind == "squeezed":
        alpha, nth = 0j, 0.0
    elif kind == "thermal":
        alpha, zeta = 0j, 0j
    return fock.make_gaussian(alpha, zeta, nth, dim=None, tol=tol)


# ---------------------------------------------------------------- suites


def check_l1(rng, samples: int, tol: Tolerances = DEFAULT):
    """Faithfulness on Gaussian samples, nonnegativity on arbitrary ones."""
    gauss = _Tally("L1 gaussian delta < 1e-6")
    worst_abs = 0.0
    kinds = ["coherent", "squeezed", "thermal", "composite"]
    for i in range(samples):
        rho = random_gaussian(rng, kinds[i % 4], tol)
        d = delta(rho, tol).delta
        worst_abs = max(worst_abs, abs(d))
        gauss.add(abs(d) - 1e-6)
    nonneg = _Tally("L1 delta >= -1e-8")
    for _ in range(samples):
        rho = random_state(rng, 24)
        nonneg.add(-1e-8 - delta(rho, tol).delta)
    return [gauss.result(f"max|delta|={worst_abs:.3e}"), nonneg.result()]


def check_l2(rng, samples: int, tol: Tolerances = DEFAULT):
    """delta[(1-eps) rho + eps nu] approaches delta[rho] monotonically as eps -> 0."""
    t = _Tally("L2 continuity trend")
    eps = (1e-1, 1e-2, 1e-3, 1e-4)
    for _ in range(samples):
        rho = random_state(rng, 48)
        nu = fock.make_thermal(rho.mean_photons(), tol=tol)
        dim = max(nu.dim, rho.dim)
        rho, nu = rho.resized(dim), nu.resized(dim)
        base = delta(rho, tol).delta
        gaps = []
        for e in eps:
            mix = FockState((1 - e) * rho.density() + e * nu.density())
            gaps.append(abs(delta(mix, tol).delta - base))
        t.add(max(b - a for a, b in zip(gaps, gaps[1:])))
    return [t.result()]


def check_l3(rng, samples: int, tol: Tolerances = DEFAULT):
    """Additivity on product states, plus the Gaussian-factor corollary."""
    add = _Tally("L3 additivity")
    cor = _Tally("L3 corollary (Gaussian factor)")
    dim = 16
    for _ in range(samples):
        r1, r2 = random_state(rng, dim, 4), random_state(rng, dim, 4)
        d12 = delta(fock.tensor(r1, r2), tol).delta
        add.add(abs(d12 - delta(r1, tol).delta - delta(r2, tol).delta) - 1e-8)
        alpha = 0.25 * math.sqrt(rng.random()) * complex(np.exp(2j * math.pi * rng.random()))
        g = fock.make_gaussian(alpha, 0.0, 0.02 * rng.random(), dim=dim)
        cor.add(abs(delta(fock.tensor(r1, g), tol).delta - delta(r1, tol).delta) - 1e-8)
    return [add.result(), cor.result()]


def check_l4(rng, samples: int, tol: Tolerances = DEFAULT):
    """Convexity on the family p rho + (1-p) tau_rho, which shares moments by construction."""
    t = _Tally("L4 convexity at fixed moments")
    for _ in range(samples):
        rho = random_state(rng, 24, 4)
        tau = reference_state(rho, tol=tol)
        dim = max(tau.dim, rho.dim)
        rho, tau = rho.resized(dim), tau.resized(dim)
        d_rho = delta(rho, tol).delta
        margin = -math.inf
        for p in np.arange(1, 10) / 10:
            mix = FockState(p * rho.density() + (1 - p) * tau.density())
            margin = max(margin, delta(mix, tol).delta - p * d_rho - 1e-8)
        t.add(margin)
    return [t.result()]


def check_l5(rng, samples: int, tol: Tolerances = DEFAULT):
    """Invariance under displacement, squeezing, phase rotation and beamsplitters."""
    t = _Tally("L5 symplectic invariance (1e-6)")
    for _ in range(samples):
        rho = random_state(rng, 64, 4)
        ops = [
            fock.Displacement(0.5 * math.sqrt(rng.random()) * np.exp(2j * math.pi * rng.random())),
            fock.Squeezing(0.3 * math.sqrt(rng.random()) * np.exp(2j * math.pi * rng.random())),
            fock.Phase(2 * math.pi * rng.random()),
        ]
        out = fock.apply_all(rho, ops, tol)
        t.add(abs(delta(out, tol).delta - delta(rho, tol).delta) - 1e-6)
        pair = random_two_mode(rng, 12, 3)
        bs = fock.apply_gaussian_unitary(pair, fock.Beamsplitter(math.pi * rng.random()), tol)
        t.add(abs(delta(bs, tol).delta - delta(pair, tol).delta) - 1e-6)
    return [t.result()]


def check_l6(rng, samples: int, tol: Tolerances = DEFAULT):
    t = _Tally("L6 partial-trace monotonicity")
    for _ in range(samples):
        rho = random_two_mode(rng, 8, 4)
        d = delta(rho, tol).delta
        for keep in (0, 1):
            t.add(delta(fock.partial_trace(rho, keep), tol).delta - d - 1e-8)
    return [t.result()]


def check_l7(rng, samples: int, tol: Tolerances = DEFAULT):
    """Monotonicity under loss (Kraus form) and beamsplitter-with-thermal-ancilla channels."""
    t = _Tally("L7 Gaussian-channel monotonicity")
    for _ in range(samples):
        rho = random_state(rng, 24, 4)
        d = delta(rho, tol).delta
        eta = rng.random()
        t.add(delta(AttenuationChannel(eta)(rho), tol).delta - d - 1e-8)
        chan = BeamsplitterChannel(eta, ancilla_nth=0.2 * rng.random())
        t.add(delta(chan(rho, tol), tol).delta - d - 1e-8)
    return [t.result()]


def check_maximality(rng, samples: int, tol: Tolerances = DEFAULT):
    t = _Tally("maximality delta <= bound(N)")
    for _ in range(samples):
        rho = random_state(rng, 32, int(rng.integers(1, 8)))
        t.add(delta(rho, tol).delta - max_nong_bound(rho.mean_photons(), 1) - 1e-8)
    return [t.result()]


def check_witness(rng, samples: int, tol: Tolerances = DEFAULT):
    sound = _Tally("witness silent on product states")
    for _ in range(samples):
        prod = fock.tensor(random_state(rng, 8, 4), random_state(rng, 8, 4))
        sound.add(0.0 if entanglement_witness(prod, tol=tol).verdict is Verdict.INCONCLUSIVE else 1.0)
    twin = _Tally("witness flags twin beams")
    for lam in np.arange(1, 10) / 10:
        res = entanglement_witness(twin_beam_moments(lam), tol=tol)
        expected = -thermal_entropy(lam**2 / (1 - lam**2))
        twin.add(max(abs(res.s_a_given_b - expected) - 1e-8, 0.0 if res.verdict is Verdict.ENTANGLED else 1.0))
    bound = _Tally("S(A|B) <= S_G(A|B)")
    for _ in range(samples):
        rho = random_two_mode(rng, 8, 4)
        m = fock.moments(rho)
        bound.add(conditional_entropy(rho, tol) - gaussian_conditional_entropy(m, (0,), (1,), tol) - 1e-8)
    return [sound.result(), twin.result(), bound.result()]


def check_holevo(rng, samples: int, tol: Tolerances = DEFAULT):
    t = _Tally("holevo decompositions agree")
    for _ in range(samples):
        k = int(rng.integers(2, 5))
        p = rng.random(k)
        p = p / p.sum()
        p[-1] = 1.0 - p[:-1].sum()
        members = tuple((float(pi), random_state(rng, 16, 4)) for pi in p)
        try:
            res = holevo_bound(Ensemble(members), tol)
            t.add(abs(res.chi - res.chi_direct) - 1e-9)
        except NonGError:
            t.fail()
    enc = _Tally("thermal eigen-encoding chi = 2 ln 2")
    chi = holevo_bound(thermal_encoding(1.0, 64), tol).chi
    enc.add(abs(chi - 2 * math.log(2)) - 1e-9)
    enc.add(abs(eigenstate_encoding_chi(fock.make_thermal(1.0, 64), tol) - 2 * math.log(2)) - 1e-9)
    return [t.result(), enc.result()]


CHECKS: dict[str, Callable] = {
    "L1": check_l1,
    "L2": check_l2,
    "L3": check_l3,
    "L4": check_l4,
    "L5": check_l5,
    "L6": check_l6,
    "L7": check_l7,
    "maximality": check_maximality,
    "witness": check_witness,
    "holevo": check_holevo,
}


def run_suite(name: str, samples: int = 20, seed: int = 0, tol: Tolerances = DEFAULT) -> list[PropertyResult]:
    if name == "all":
        return [r for suite in SUITES for r in run_suite(suite, samples, seed, tol)]
    if name not in CHECKS:
        raise ValidationError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    rng = np.random.default_rng([seed, zlib.crc32(name.encode())])
    return CHECKS[name](rng, samples, tol)

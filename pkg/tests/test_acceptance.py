"""Acceptance criteria; each test prints one PASS/FAIL line (also echoed in the terminal summary)."""

import csv
import io
import math
import subprocess
import sys
import time

import numpy as np
from oracles import random_symplectic, two_mode_nus

from nongauss import cli, fock, gaussian, lemmas, measure, protocols
from nongauss.gaussian import thermal_entropy
from nongauss.protocols import SchmidtCoeffs

SEED = 20240611


def test_01_faithfulness(criterion):
    rng = np.random.default_rng(SEED)
    kinds = ["coherent", "squeezed", "thermal", "composite"]
    start = time.perf_counter()
    worst = max(abs(measure.delta(lemmas.random_gaussian(rng, kinds[i % 4])).delta) for i in range(50))
    elapsed = time.perf_counter() - start
    criterion(
        "1 faithfulness: 50 Gaussian states delta < 1e-6 in < 30 s",
        worst < 1e-6 and elapsed < 30,
        f"max|delta|={worst:.2e} time={elapsed:.1f}s",
    )


def test_02_fock_values(criterion):
    errs = [abs(measure.delta(fock.make_fock(n, n + 8)).value - thermal_entropy(n)) for n in range(1, 21)]
    one = measure.delta(fock.make_fock(1, 8)).value
    criterion(
        "2 Fock values: delta[|N>] closed form within 1e-9, N=1..20",
        max(errs) < 1e-9 and abs(one - 1.386294361) < 1e-9,
        f"max err={max(errs):.2e} delta[|1>]={one:.9f}",
    )


def test_03_lemma_suites(criterion):
    start = time.perf_counter()
    results = [r for s in ("L3", "L4", "L5", "L6", "L7") for r in lemmas.run_suite(s, 20, seed=SEED)]
    elapsed = time.perf_counter() - start
    for r in results:
        print("   ", r.line())
    criterion(
        "3 lemma suites L3-L7: 20 samples, fixed seed, < 2 min",
        all(r.ok for r in results) and elapsed < 120,
        f"{sum(r.ok for r in results)}/{len(results)} properties time={elapsed:.1f}s",
    )


def test_04_symplectic_oracle(criterion):
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(1000):
        m = gaussian.thermal_moments(rng.uniform(0, 4, 2)).transformed(random_symplectic(rng, 2, depth=1))
        worst = max(worst, np.max(np.abs(gaussian.symplectic_eigenvalues(m) - two_mode_nus(m.sigma))))
    criterion(
        "4 symplectic spectrum vs two-mode invariant closed form within 1e-10 (1000 CMs)",
        worst < 1e-10,
        f"max diff={worst:.2e}",
    )


def _window(rows, step):
    """Largest grid lambda below which every delta at ``step`` is < 1e-3."""
    edge = 0.0
    for lam, s, d in rows:
        if s != step:
            continue
        if d is None or d >= 1e-3:
            break
        edge = lam
    return edge


def test_05_gaussification(criterion):
    lam = 0.5
    step1 = protocols.gaussification_step(SchmidtCoeffs.initial(lam, 16)).alphas
    hand = np.zeros(16)
    hand[:3] = [1.0, lam, lam**2 / 2]
    hand /= np.linalg.norm(hand)
    err1 = np.max(np.abs(step1 - hand))

    fixed_err = 0.0
    for lam_tb in (0.2, 0.5, 0.8):
        c = SchmidtCoeffs.twin_beam(lam_tb, 256)
        fixed_err = max(fixed_err, np.max(np.abs(protocols.gaussification_step(c).alphas - c.alphas)))

    traj = [d for _, d in protocols.gaussification_trajectory(0.5, 3)]
    decreasing = all(b < a for a, b in zip(traj, traj[1:]))

    rows = []
    for lam_g in np.linspace(0, 1, 101):
        t = dict(protocols.gaussification_trajectory(float(lam_g), 3))
        rows += [(float(lam_g), s, t[s]) for s in range(4)]
    windows = [_window(rows, s) for s in range(4)]
    widening = all(b > a for a, b in zip(windows, windows[1:]))

    criterion(
        "5 Gaussification: step-1 convolution, twin-beam fixed point, decrease at 0.5, widening window",
        err1 < 1e-12 and fixed_err < 1e-12 and decreasing and widening,
        f"step1 err={err1:.1e} fixed err={fixed_err:.1e} delta(0.5)={[round(x, 5) for x in traj]} windows={windows}",
    )


def test_06_kerr_dual_path(criterion):
    worst = 0.0
    for gamma in (0.01, 0.1, 0.5):
        for nbar in np.linspace(0.05, 4.0, 16):
            a = protocols.kerr_delta(float(nbar), gamma, "numeric")
            b = protocols.kerr_delta(float(nbar), gamma, "analytic")
            worst = max(worst, abs(a - b))
    protocols.analytic_gate.cache_clear()
    protocols.kerr_delta(1e3, 0.01)
    gated = protocols.analytic_gate.cache_info().currsize == 1
    criterion(
        "6 Kerr dual path: numeric vs analytic within 1e-6 (nbar <= 4), gate runs before nbar > 100",
        worst < 1e-6 and gated,
        f"max diff={worst:.2e} gate evaluated={gated}",
    )


def test_07_kerr_shape(criterion, tmp_path):
    out = tmp_path / "kerr.csv"
    start = time.perf_counter()
    code = cli.main(["kerr", "--out", str(out)])
    elapsed = time.perf_counter() - start
    curves: dict[float, list[tuple[float, float, float]]] = {}
    for row in csv.DictReader(io.StringIO(out.read_text())):
        curves.setdefault(float(row["gamma"]), []).append(
            (float(row["nbar"]), float(row["delta"]), float(row["delta_max"]))
        )
    monotone = True
    for pts in curves.values():
        ds = [d for _, d, _ in pts]
        sat = next((i for i, (_, d, m) in enumerate(pts) if d >= 0.99 * m and m > 0), len(pts))
        monotone &= all(b >= a - 1e-12 for a, b in zip(ds[: sat + 1], ds[1 : sat + 1]))
    gammas = sorted(curves)
    ordered = all(
        hi[1] >= lo[1] - 1e-12 for g0, g1 in zip(gammas, gammas[1:]) for lo, hi in zip(curves[g0], curves[g1])
    )
    below = all(d <= m + 1e-12 for pts in curves.values() for _, d, m in pts)
    criterion(
        "7 Kerr figure shape: monotone, ordered by gamma, under the envelope, sweep < 60 s",
        code == 0 and monotone and ordered and below and elapsed < 60 and len(gammas) == 3,
        f"rows={sum(map(len, curves.values()))} monotone={monotone} ordered={ordered} envelope={below} "
        f"time={elapsed:.1f}s",
    )


def test_08_witness(criterion):
    worst = 0.0
    flagged = True
    for lam in np.arange(1, 10) / 10:
        # geometric weights lam^(2n): cut where the discarded mass is below 1e-14
        dim = int(math.ceil(math.log(1e-14) / (2 * math.log(lam)))) + 1
        coeffs = SchmidtCoeffs.twin_beam(lam, dim)
        assert coeffs.tail_mass < 1e-12
        res = gaussian.entanglement_witness(coeffs.state())
        expected = -thermal_entropy(lam**2 / (1 - lam**2))
        worst = max(worst, abs(res.s_a_given_b - expected))
        flagged &= res.verdict is gaussian.Verdict.ENTANGLED
    rng = np.random.default_rng(SEED)
    false_alarms = 0
    for i in range(100):
        if i % 2:
            a, b = lemmas.random_state(rng, 8, 4), lemmas.random_state(rng, 8, 4)
        else:
            a = fock.make_gaussian(*lemmas.random_gaussian_params(rng, 0.5, 0.3, 0.3))
            b = fock.make_gaussian(*lemmas.random_gaussian_params(rng, 0.5, 0.3, 0.3))
            d = max(a.dim, b.dim)
            a, b = a.resized(d), b.resized(d)
        false_alarms += gaussian.entanglement_witness(fock.tensor(a, b)).verdict is gaussian.Verdict.ENTANGLED
    criterion(
        "8 witness: twin beams flagged with exact S_G(A|B) within 1e-8, product states never flagged",
        flagged and worst < 1e-8 and false_alarms == 0,
        f"max err={worst:.2e} false alarms={false_alarms}/100",
    )


def test_09_holevo(criterion):
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(20):
        k = int(rng.integers(2, 6))
        p = rng.dirichlet(np.ones(k))
        p[-1] = 1.0 - p[:-1].sum()
        members = tuple((float(pi), lemmas.random_state(rng, 16, 5)) for pi in p)
        res = measure.holevo_bound(measure.Ensemble(members))
        worst = max(worst, abs(res.chi - res.chi_direct))
    chi = measure.holevo_bound(measure.thermal_encoding(1.0, 64)).chi
    criterion(
        "9 Holevo: two expressions agree within 1e-9 (20 ensembles), nu(1) eigen-encoding gives 2 ln 2",
        worst < 1e-9 and abs(chi - 2 * math.log(2)) < 1e-9,
        f"max diff={worst:.2e} chi={chi:.12f}",
    )


def _cli_bytes(args, tmp_path, name):
    out = tmp_path / name
    subprocess.run([sys.executable, "-m", "nongauss.cli", *args, "--out", str(out)], check=True)
    return out.read_bytes()


def test_10_determinism(criterion, tmp_path):
    g_args = ["gaussify", "--lambdas", "0:1:21", "--steps", "0,1,2,3"]
    k_args = ["kerr", "--per-decade", "3"]
    same_g = _cli_bytes(g_args, tmp_path, "g1.csv") == _cli_bytes([*g_args, "--jobs", "2"], tmp_path, "g2.csv")
    same_k = _cli_bytes(k_args, tmp_path, "k1.csv") == _cli_bytes(k_args, tmp_path, "k2.csv")
    verify = [
        subprocess.run(
            [sys.executable, "-m", "nongauss.cli", "verify", "--suite", "L4", "--seed", "5", "--samples", "5"],
            capture_output=True,
            check=True,
        ).stdout
        for _ in range(2)
    ]
    criterion(
        "10 determinism: repeated CLI sweeps give byte-identical CSV",
        same_g and same_k and verify[0] == verify[1],
        f"gaussify={same_g} kerr={same_k} verify={verify[0] == verify[1]}",
    )

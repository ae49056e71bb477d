import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import dense_moments

from nongauss import fock, measure, protocols
from nongauss.gaussian import thermal_entropy
from nongauss.protocols import KerrConfig, SchmidtCoeffs
from nongauss.settings import DimensionCapError, TruncationError, ValidationError


def test_first_step_is_hand_convolution():
    lam = 0.5
    out = protocols.gaussification_step(SchmidtCoeffs.initial(lam, 8))
    ref = np.array([1.0, lam, lam**2 / 2])
    ref /= np.linalg.norm(ref)
    assert np.allclose(out.alphas[:3], ref, atol=1e-12, rtol=0)
    assert np.all(out.alphas[3:] == 0)


@given(st.floats(0.0, 0.95))
def test_twin_beam_is_fixed_point(lam):
    c = SchmidtCoeffs.twin_beam(lam, 256)
    if c.tail_mass > 1e-14:
        return
    out = protocols.gaussification_step(c)
    assert np.allclose(out.alphas, c.alphas, atol=1e-12, rtol=0)


def test_vacuum_is_fixed_point():
    c = SchmidtCoeffs.initial(0.0, 16)
    assert np.array_equal(protocols.gaussification_step(c).alphas, c.alphas)


@given(st.lists(st.floats(-1, 1), min_size=2, max_size=6))
def test_step_keeps_normalization(raw):
    a = np.array(raw)
    if np.linalg.norm(a) < 1e-3:
        return
    c = SchmidtCoeffs(a / np.linalg.norm(a)).padded(64)
    out = protocols.gaussification_step(c)
    assert np.dot(out.alphas, out.alphas) == pytest.approx(1.0, abs=1e-13)


def test_overflow_is_reported():
    c = SchmidtCoeffs(np.ones(4) / 2)
    with pytest.raises(TruncationError):
        protocols.gaussification_step(c)


@pytest.mark.parametrize("lam", [0.3, 0.8])
def test_schmidt_moments_match_dense_traces(lam):
    c = protocols.gaussification_step(SchmidtCoeffs.initial(lam, 6))
    X, sigma = dense_moments(c.state().density(), 6, 2)
    m = protocols.schmidt_moments(c)
    assert np.allclose(m.X, X, atol=1e-13) and np.allclose(m.sigma, sigma, atol=1e-13)
    assert protocols.schmidt_delta(c) == pytest.approx(measure.delta(c.state()).value, abs=1e-10)


def test_zero_lambda_trajectory_is_flat():
    assert all(d == 0 for _, d in protocols.gaussification_trajectory(0.0, 5))


def test_trajectory_decreases_at_half():
    ds = [d for _, d in protocols.gaussification_trajectory(0.5, 3)]
    assert all(b < a for a, b in zip(ds, ds[1:]))


def test_trajectory_validation():
    with pytest.raises(ValidationError):
        protocols.gaussification_trajectory(1.1, 2)
    with pytest.raises(ValidationError):
        protocols.gaussification_trajectory(0.5, -1)


def test_unit_lambda_at_twenty_steps_exceeds_budget():
    with pytest.raises(DimensionCapError):
        protocols.gaussification_trajectory(1.0, 20)


@pytest.mark.xfail(strict=True, reason="near lambda=1 the model decreases monotonically; no growth at step 3")
def test_step_three_more_nongaussian_near_unit_lambda():
    for lam in (0.95, 0.98, 1.0):
        ds = [d for _, d in protocols.gaussification_trajectory(lam, 3)]
        if ds[3] > ds[2]:
            return
    raise AssertionError("delta at step 3 never exceeds step 2 for lambda near 1")


# ---------------------------------------------------------------- Kerr


def test_kerr_evolution_keeps_populations():
    cfg = KerrConfig(0.3, 1.2)
    s = protocols.kerr_evolve(cfg)
    assert np.allclose(s.populations(), fock.make_coherent(1.2).populations())


@pytest.mark.parametrize("gamma", [0.01, 0.1, 0.5])
@pytest.mark.parametrize("nbar", [0.25, 1.0, 4.0])
def test_analytic_moments_match_fock_moments(gamma, nbar):
    cfg = KerrConfig(gamma, math.sqrt(nbar) * np.exp(0.4j))
    num = fock.moments(protocols.kerr_evolve(cfg))
    ana = protocols.kerr_moments_analytic(cfg)
    assert np.allclose(num.X, ana.X, atol=1e-11)
    assert np.allclose(num.sigma, ana.sigma, atol=1e-10)


def test_gate_passes():
    assert protocols.analytic_gate() < 1e-6


def test_kerr_at_gamma_pi_returns_to_coherent():
    # exp(-i pi n^2) = (-1)^n maps |alpha> to |-alpha>
    assert protocols.kerr_delta(2.0, math.pi, "numeric") == pytest.approx(0.0, abs=1e-9)


def test_large_nbar_saturates_at_bound():
    n = 1e9
    d = protocols.kerr_delta(n, 1e-2)
    assert d <= measure.max_nong_bound(n)
    assert d == pytest.approx(thermal_entropy(n), abs=1e-6)


def test_numeric_path_refuses_huge_nbar():
    with pytest.raises(DimensionCapError):
        protocols.kerr_delta(1e6, 0.1, "numeric")


def test_auto_path_switches_method():
    assert protocols.kerr_delta(10, 0.01) == protocols.kerr_delta(10, 0.01, "numeric")
    assert protocols.kerr_delta(1e3, 0.01) == protocols.kerr_delta(1e3, 0.01, "analytic")
    with pytest.raises(ValidationError):
        protocols.kerr_delta(1.0, 0.1, "magic")


@given(st.floats(0.01, 1e8), st.floats(1e-6, 0.5))
def test_kerr_delta_below_envelope(nbar, gamma):
    assert protocols.kerr_delta(nbar, gamma, "analytic") <= measure.max_nong_bound(nbar) + 1e-12

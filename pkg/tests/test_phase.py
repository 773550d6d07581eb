import numpy as np
import pytest

from relvlasov import phase
from relvlasov.algebra import weights as wt


def sample_points(n, seed=0, t_max=100.0):
    rng = np.random.default_rng(seed)
    t = rng.uniform(0.0, t_max, n)
    # radii up to ~100, speeds in [0.1, 10]
    xdir = rng.normal(size=(n, 3))
    xdir /= np.linalg.norm(xdir, axis=1, keepdims=True)
    x = xdir * rng.uniform(0.0, 100.0, (n, 1))
    vdir = rng.normal(size=(n, 3))
    vdir /= np.linalg.norm(vdir, axis=1, keepdims=True)
    v = vdir * rng.uniform(0.1, 10.0, (n, 1))
    return t, x, v


def test_weight_examples():
    p = phase.PhasePoint(2.0, (1.0, 0.0, 0.0), (3.0, 0.0, 0.0))
    assert phase.eval_weight("s", p) == pytest.approx(1.0)
    # z at the spacetime origin: only v^mu/v0 terms survive
    p0 = phase.PhasePoint(0.0, (0.0, 0.0, 0.0), (0.3, -2.0, 1.1))
    assert phase.eval_weight("z", p0) == pytest.approx(np.sqrt(2.0))
    p12 = phase.PhasePoint(0.0, (1.0, 0.0, 0.0), (0.0, 2.0, 0.0))
    assert phase.eval_weight("z12", p12) == pytest.approx(1.0)


def test_rejects_zero_velocity():
    with pytest.raises(ValueError):
        phase.PhasePoint(0.0, (1.0, 0.0, 0.0), (0.0, 0.0, 0.0))
    with pytest.raises(ValueError):
        phase.eval_weight("s", t=0.0, x=np.zeros(3), v=np.zeros(3))


def test_cutoff_support_and_midpoint():
    assert phase.chi(0.4) == 0.0
    assert phase.chi(0.5) == 0.0
    assert phase.chi(1.0) == 1.0
    assert phase.chi(1.2) == 1.0
    assert phase.chi(0.75) == pytest.approx(0.5)
    # monotone nondecreasing, derivative consistent by finite differences
    s = np.linspace(0.3, 1.2, 400)
    vals = phase.chi(s)
    assert np.all(np.diff(vals) >= -1e-15)
    h = 1e-6
    fd = (phase.chi(s + h) - phase.chi(s - h)) / (2 * h)
    assert np.max(np.abs(fd - phase.chi_prime(s))) < 1e-7


def test_cutoff_is_c2_at_junctions():
    # chi'' vanishes at both junctions: the one-sided finite-difference
    # second derivative tends to 0 as the stencil approaches the joint
    h = 1e-5
    for s0, sign in ((0.5, +1), (1.0, -1)):
        d2 = (phase.chi_prime(s0 + sign * 2 * h) - phase.chi_prime(s0 + sign * h)) / (sign * h)
        assert abs(d2) < 1e-2
        # and chi' itself is continuous (zero) there
        assert phase.chi_prime(s0) == pytest.approx(0.0, abs=1e-12)


def test_tau_examples():
    assert phase.tau(t=0.0, r=0.0) == pytest.approx((1.0, 1.0))
    assert phase.tau(t=3.0, r=3.0) == pytest.approx((np.sqrt(37.0), 1.0))
    assert phase.tau(t=4.0, r=1.0) == pytest.approx((np.sqrt(26.0), np.sqrt(10.0)))


def test_tau_minus_bounded_by_z_on_large_sample():
    t, x, v = sample_points(100_000, seed=1)
    z = phase.eval_weight("z", t=t, x=x, v=v)
    _, tm = phase.tau(t=t, r=np.linalg.norm(x, axis=1))
    assert np.all(tm <= z + 1e-12)


def test_angular_velocity_decay_constant():
    # tau_plus * |vslash|/v0 <= C (1 + |s| + sum |zij|) with a single fitted C
    t, x, v = sample_points(100_000, seed=2)
    w = np.linalg.norm(v, axis=1)
    tp, _ = phase.tau(t=t, r=np.linalg.norm(x, axis=1))
    lhs = tp * phase.vslash(x, v) / w
    rhs = 1.0 + np.abs(phase.eval_weight("s", t=t, x=x, v=v))
    for wid in ("z12", "z13", "z23"):
        rhs += np.abs(phase.eval_weight(wid, t=t, x=x, v=v))
    fitted = np.max(lhs / rhs)
    print(f"fitted constant for tau_plus |vslash|/v0: {fitted:.3f}")
    assert np.isfinite(fitted)
    assert fitted < 10.0


def test_lifted_fields_control_z_squared():
    # |Zhat(z^2)| <= C z^2 with a fitted constant, via the exact kernel
    t, x, v = sample_points(20_000, seed=3)
    z2 = phase.z_squared(t, x, v)
    worst = 0.0
    z2_expr = wt.z_squared()
    for name, op in wt.commutation_fields().items():
        func = op.apply(z2_expr).to_callable()
        ratio = np.max(np.abs(func(t, x, v)) / z2)
        worst = max(worst, ratio)
    print(f"fitted constant for |Zhat(z^2)|/z^2: {worst:.3f}")
    assert np.isfinite(worst)
    assert worst < 10.0


def test_numeric_weights_match_exact_kernel():
    t, x, v = sample_points(2_000, seed=4, t_max=10.0)
    for wid in phase.WEIGHT_IDS + ("morawetz",):
        expr = wt.morawetz() if wid == "morawetz" else wt.weight(wid)
        exact = expr.to_callable()(t, x, v)
        numeric = phase.eval_weight(wid, t=t, x=x, v=v)
        scale = np.maximum(np.abs(exact), 1.0)
        assert np.max(np.abs(exact - numeric) / scale) < 1e-12
    # z^2 closed form against the exact sum of squares
    exact_z2 = wt.z_squared().to_callable()(t, x, v)
    assert np.max(np.abs(exact_z2 - phase.z_squared(t, x, v)) / np.abs(exact_z2)) < 1e-12


def test_vslash_limit_at_origin():
    assert phase.vslash(np.zeros(3), np.array([0.0, 3.0, 4.0])) == pytest.approx(5.0)
    # pure radial motion has no angular part
    assert phase.vslash(np.array([2.0, 0.0, 0.0]), np.array([3.0, 0.0, 0.0])) == pytest.approx(0.0)

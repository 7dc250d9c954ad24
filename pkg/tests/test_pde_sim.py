import math

import numpy as np
import pytest

from kinkfactor.errors import DomainError, InstabilityError, NoFrontError, PlacementError
from kinkfactor.factorizer import KinkSolution
from kinkfactor.frame import exact_alphas, exact_kink
from kinkfactor.pde_sim import (
    FieldState,
    GridConfig,
    _advance,
    energy,
    front_position,
    init_state,
    measure_speed,
    run,
    step,
)

A2 = 3 / math.sqrt(17)


@pytest.fixture(scope="module")
def cfg2():
    return GridConfig(lambda0=2.0)


@pytest.fixture(scope="module")
def run2(cfg2):
    return run(cfg2, exact_kink(A2, 2.0), A2)


def test_grid_config_validation():
    cfg = GridConfig(lambda0=1.0)
    assert cfg.n_cells == 2400 and cfg.x.size == 2401 and cfg.n_steps == 1500
    assert cfg.x[0] == -40.0 and cfg.x[-1] == pytest.approx(80.0)
    with pytest.raises(DomainError):
        GridConfig(lambda0=1.0, dt=0.03)
    with pytest.raises(DomainError):
        GridConfig(lambda0=1.0, dx=0.07)
    with pytest.raises(DomainError):
        GridConfig(lambda0=1.0, x_min=0.0, x_max=4.0)
    with pytest.raises(DomainError):
        GridConfig(lambda0=-1.0)


@pytest.mark.parametrize("value", [0.0, -1.0, 1.0])
def test_flat_states_are_fixed_points(value):
    cfg = GridConfig(lambda0=1.5, x_min=0.0, x_max=10.0, dx=0.1, dt=0.05)
    st = init_state(cfg, value, 0.3)
    assert np.all(st.u_prev == value) and np.all(st.u_curr == value)
    st = _advance(st, cfg, 10_000)
    assert np.max(np.abs(st.u_curr - value)) < 1e-12
    assert np.max(np.abs(st.u_prev - value)) < 1e-12


def test_step_does_not_mutate(cfg2):
    st = init_state(cfg2, exact_kink(A2, 2.0), A2)
    before = st.u_curr.copy()
    nxt = step(st, cfg2)
    assert np.array_equal(st.u_curr, before)
    assert nxt.t == pytest.approx(cfg2.dt)
    assert np.array_equal(nxt.u_prev, before)


def test_single_cell_stencil():
    cfg = GridConfig(lambda0=0.0, x_min=0.0, x_max=10.0, dx=0.1, dt=0.04)
    eps = 1e-3
    u = np.zeros(101)
    u[50] = eps
    st = FieldState(u.copy(), u.copy(), 0.0)
    out = step(st, cfg).u_curr
    r = cfg.dt**2 / cfg.dx**2
    expect = np.zeros(101)
    expect[49] = expect[51] = r * eps
    expect[50] = 2 * eps - eps + r * (-2 * eps) + cfg.dt**2 * (eps - eps**3)
    assert np.nonzero(out)[0].tolist() == [49, 50, 51]
    assert out == pytest.approx(expect, abs=1e-18)


def test_damped_single_cell():
    cfg = GridConfig(lambda0=3.0, x_min=0.0, x_max=10.0, dx=0.1, dt=0.04)
    u_prev = np.zeros(101)
    u_curr = np.zeros(101)
    u_prev[50], u_curr[50] = 0.2, 0.3
    out = step(FieldState(u_prev, u_curr), cfg).u_curr
    d = 0.5 * cfg.lambda0 * cfg.dt
    r = cfg.dt**2 / cfg.dx**2
    want = (2 * 0.3 - 0.2 + r * (-0.6) + cfg.dt**2 * (0.3 - 0.027) + d * 0.2) / (1 + d)
    assert out[50] == pytest.approx(want, rel=1e-14)


def test_init_state_placement(cfg2):
    k = exact_kink(A2, 2.0)
    st = init_state(cfg2, k, A2)
    mid = np.argmin(np.abs(cfg2.x))
    assert cfg2.x[mid] == pytest.approx(0.0, abs=1e-12)
    assert st.u_curr[mid] == pytest.approx(-0.5, abs=1e-12)
    assert st.u_curr[0] == -1.0 and st.u_curr[-1] == 0.0
    assert st.u_prev[0] == -1.0 and st.u_prev[-1] == 0.0
    # u_prev is the profile at t = -dt: shifted left by alpha*dt
    assert st.u_prev[mid] == pytest.approx(k(A2 * cfg2.dt), abs=1e-15)
    with pytest.raises(PlacementError):
        init_state(cfg2, KinkSolution(-1.0, 1.0, tau0=75.0), A2)
    with pytest.raises(PlacementError):
        init_state(cfg2, KinkSolution(-1.0, 1.0, tau0=-35.0), A2)


def test_odd_symmetry(cfg2):
    k = exact_kink(A2, 2.0)
    a = init_state(cfg2, k, A2)
    b = FieldState(-a.u_prev, -a.u_curr)
    for _ in range(50):
        a, b = step(a, cfg2), step(b, cfg2)
        assert np.max(np.abs(a.u_curr + b.u_curr)) < 1e-12


def test_instability_reported():
    cfg = GridConfig(lambda0=0.0, x_min=0.0, x_max=10.0, dx=0.1, dt=0.05)
    u = np.zeros(101)
    u[50] = 1e200
    with pytest.raises(InstabilityError) as exc:
        step(FieldState(u.copy(), u.copy()), cfg)
    assert exc.value.t == pytest.approx(cfg.dt)


def test_front_position():
    x = np.linspace(0, 1, 11)
    assert front_position(x, -1 + x, -0.5) == pytest.approx(0.5)
    assert front_position(x, np.zeros(11), -0.5) is None


def test_measure_speed_exact_line():
    ts = np.linspace(0, 30, 61)
    fit = measure_speed(list(zip(ts, 0.7 * ts + 1.0)))
    assert fit.speed == pytest.approx(0.7, abs=1e-12)
    assert fit.intercept == pytest.approx(1.0, abs=1e-10)
    assert fit.rms_residual < 1e-12
    assert min(t for t, _ in fit.crossings) >= 5.0
    assert max(t for t, _ in fit.crossings) <= 24.0


def test_measure_speed_jitter():
    rng = np.random.default_rng(20040208)
    dx = 0.05
    ts = np.linspace(0, 30, 61)
    xs = 0.7 * ts + 1.0 + rng.uniform(-dx / 2, dx / 2, ts.size)
    fit = measure_speed(list(zip(ts, xs)))
    assert abs(fit.speed - 0.7) < 1e-3


def test_measure_speed_errors():
    with pytest.raises(NoFrontError):
        measure_speed([])
    with pytest.raises(NoFrontError):
        measure_speed([(t, t) for t in np.linspace(0, 30, 8)])


def test_flat_run_has_no_front(cfg2):
    res = run(cfg2, 0.0, 0.0)
    assert res.crossings == []
    with pytest.raises(NoFrontError):
        measure_speed(res.crossings)


def test_run_speed_lambda2(run2):
    fit = measure_speed(run2.crossings)
    assert abs(fit.speed - A2) / A2 < 0.02
    assert len(run2.snapshots) == 61
    assert run2.snapshots[0][0] == 0.0


def test_run_converges(run2):
    fine = GridConfig(lambda0=2.0, dx=0.025, dt=0.01, output_every=50)
    res = run(fine, exact_kink(A2, 2.0), A2, keep_snapshots=False)
    s1 = measure_speed(run2.crossings).speed
    s2 = measure_speed(res.crossings).speed
    # refinement moves the speed by less than the coarse run's error
    assert abs(s1 - s2) < abs(s1 - A2)
    assert abs(s2 - A2) < abs(s1 - A2)


def test_undamped_static_interface_does_not_translate(run2):
    cfg = GridConfig(lambda0=0.0)
    res = run(cfg, KinkSolution(-1.0, 1.0), 0.0, keep_snapshots=False)
    fit0 = measure_speed(res.crossings)
    fit2 = measure_speed(run2.crossings)
    assert fit0.rms_residual > 1e3 * fit2.rms_residual
    assert fit0.rms_residual > 0.1


def test_energy_constants():
    cfg = GridConfig(lambda0=1.0, x_min=-5.0, x_max=5.0, dx=0.1, dt=0.05)
    zero = np.zeros(cfg.x.size)
    assert energy(FieldState(zero, zero.copy()), cfg) == 0.0
    one = -np.ones(cfg.x.size)
    assert energy(FieldState(one, one.copy()), cfg) == pytest.approx(-0.25 * 10.0, abs=1e-12)


@pytest.mark.parametrize("lam", [1.0, 2.0, 4.0])
def test_energy_non_increasing(lam):
    cfg = GridConfig(lambda0=lam, t_max=10.0)
    alpha = exact_alphas(lam)[0].alpha
    st = init_state(cfg, exact_kink(alpha, lam), alpha)
    e_prev = energy(st, cfg)
    for _ in range(cfg.n_steps):
        st = _advance(st, cfg, 1)
        e = energy(st, cfg)
        assert e <= e_prev + 1e-3 * cfg.dt
        e_prev = e

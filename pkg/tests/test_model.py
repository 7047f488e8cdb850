import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kwlab import model
from kwlab.algebra import SIGMA, herm_inner, norm


def test_theta_examples():
    th, x = model.theta(1.0 + 0.0j, 1.0)
    assert abs(th - math.log(1 + math.sqrt(2))) < 1e-12  # arcsinh(1)
    th2, _ = model.theta(1e6 + 0.0j, 1.0)
    assert th2 < 2e-6
    _, x = model.theta(4.0 + 0.0j, 3.0)
    assert abs(x - 5.0) < 1e-14
    th3, x3 = model.theta(0.0j, 2.0)
    assert math.isinf(th3) and abs(x3 - 2.0) < 1e-14
    with pytest.raises(ValueError):
        model.theta(1.0 + 0.0j, -1.0)


def test_nahm_pole_member():
    ms = model.ModelSolution(0)
    p = model.FieldPoint(t=0.7, z=0.5 + 0.3j)
    ev = model.evaluate(ms, p)
    assert abs(ev.alpha + 1.0 / (2 * 0.7)) < 1e-14
    assert abs(norm(ev.phi) - 1.0 / (math.sqrt(2) * 0.7)) < 1e-13
    for i, field in enumerate((ev.a1, ev.a2, ev.a3)):
        assert np.max(np.abs(field + SIGMA[i] / (2 * 0.7))) < 1e-14
    assert norm(ev.B3) == 0.0 and norm(ev.E1) == 0.0 and norm(ev.E2) == 0.0
    assert abs(ev.Aphi) < 1e-14


def test_m0_curvature_vanishes_widely():
    ms = model.ModelSolution(0)
    rng = np.random.default_rng(3)
    for p in model.sample_points(rng, 100):
        ev = model.evaluate(ms, p)
        assert max(norm(ev.B3), norm(ev.E1), norm(ev.E2)) < 1e-14


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_reduced_equations(m):
    ms = model.ModelSolution(m)
    p = model.FieldPoint(1.0, 0.7 + 0.2j)
    res = model.verify_reduced_eqs(ms, p, 1e-4)
    assert max(res.values()) < 1e-8


def test_reduced_equations_richardson():
    ms = model.ModelSolution(2)
    p = model.FieldPoint(1.0, 0.7 + 0.2j)
    r1 = model.verify_reduced_eqs(ms, p, 1e-4)
    r2 = model.verify_reduced_eqs(ms, p, 5e-5)
    for k in r1:
        if r2[k] > 1e-14:
            assert abs(r1[k] / r2[k] - 4.0) < 0.5


def test_b3_negative_control():
    # deleting the |phi|^2 term must leave an O(1) residual
    ms = model.ModelSolution(1)
    p = model.FieldPoint(1.0, 0.7 + 0.2j)
    ev = model.evaluate(ms, p)
    h = 1e-4 * min(p.t, abs(p.z))
    ap = model.evaluate(ms, model.FieldPoint(p.t + h, p.z)).alpha
    am = model.evaluate(ms, model.FieldPoint(p.t - h, p.z)).alpha
    dadt = (ap - am) / (2 * h)
    broken = norm(ev.B3 - dadt * SIGMA[2])
    assert broken > 1e-2
    full = norm(ev.B3 - (dadt - herm_inner(ev.phi, ev.phi).real) * SIGMA[2])
    assert full < 1e-8


@given(
    st.floats(min_value=0.2, max_value=2.5),
    st.floats(min_value=-2.0, max_value=2.0),
    st.floats(min_value=0.1, max_value=2.0),
    st.floats(min_value=0.25, max_value=4.0),
    st.integers(min_value=0, max_value=4),
)
@settings(max_examples=40, deadline=None)
def test_scaling_equivariance_property(t, z1, z2, lam, m):
    ms = model.ModelSolution(m)
    p = model.FieldPoint(t, complex(z1, z2 + 0.3))
    q = model.FieldPoint(lam * t, lam * p.z)
    ev, evq = model.evaluate(ms, p), model.evaluate(ms, q)
    assert np.max(np.abs(lam * evq.a1 - ev.a1)) < 1e-12
    assert np.max(np.abs(lam * evq.a3 - ev.a3)) < 1e-12
    assert abs(evq.Aphi - ev.Aphi) < 1e-12
    assert np.max(np.abs(lam ** 2 * evq.B3 - ev.B3)) < 1e-12


@pytest.mark.parametrize("m", [0, 1, 3])
def test_property_report(m):
    rng = np.random.default_rng(7 + m)
    rep = model.verify_properties(model.ModelSolution(m), model.sample_points(rng, 150))
    assert rep["alpha_range_ok"]
    assert rep["dalpha_dt_positive"]
    assert rep["phi_bound_ok"]
    assert rep["phi_bound_equality"] == (m == 0)
    assert rep["scaling_equivariance_err"] < 1e-12
    assert rep["curvature_x3_over_t_sup"] < 20.0  # finite reported constant


def test_phi_lies_in_lplus():
    from kwlab.algebra import l_decompose
    for m in (0, 2):
        ev = model.evaluate(model.ModelSolution(m), model.FieldPoint(0.8, 0.4 - 0.6j))
        d = l_decompose(ev.phi)
        assert np.max(np.abs(d.minus)) < 1e-14
        assert abs(d.zero) < 1e-14
        assert np.max(np.abs(d.plus - ev.phi)) < 1e-14
        assert ev.alpha < 0.0


def test_sigma3_covariantly_constant():
    # the connection is proportional to sigma3, so [A_i, sigma3] = 0 and the
    # constant section sigma3 is covariantly constant
    ms = model.ModelSolution(2)
    p = model.FieldPoint(0.8, 0.4 - 0.6j)
    a1c, a2c, a3c = model.connection_at(ms, p)
    for ac in (a1c, a2c, a3c):
        assert np.max(np.abs(ac @ SIGMA[2] - SIGMA[2] @ ac)) < 1e-14


def test_case4():
    ms = model.ModelSolution(1)
    p = model.FieldPoint(1.0, 0.7 + 0.2j)
    for pdeg in (1, 2):
        rep = model.case4_solution(ms, pdeg, p, 1e-4)
        assert rep["res_t"] < 1e-7 and rep["res_dbar"] < 1e-7
        assert abs(rep["ray_exponent"] - (pdeg + 1)) < 1e-3
    with pytest.raises(ValueError):
        model.case4_solution(ms, 0, p, 1e-4)
    # the pairing section lands in L^-
    from kwlab.algebra import l_decompose
    sig = model.case4_section(ms, 1, p)
    d = l_decompose(sig)
    assert np.max(np.abs(d.plus)) < 1e-12 and abs(d.zero) < 1e-12


def test_case4_pairing_normalization():
    ms = model.ModelSolution(2)
    p = model.FieldPoint(0.9, 0.5 + 0.1j)
    sig = model.case4_section(ms, 3, p)
    phi = model.evaluate(ms, p).phi
    pairing = -0.5 * np.trace(phi @ sig)
    assert abs(pairing - p.z ** 3) < 1e-12

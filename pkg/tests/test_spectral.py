import numpy as np
import pytest

from kwlab import spectral as sp


def test_hardy_halfline_base_family():
    r = sp.hardy_halfline_ratio(lambda t: t * np.exp(-t), lambda t: np.exp(-t) * (1 - t))
    assert r <= 4.0
    assert abs(r - 2.0) < 1e-3  # exact value for t e^{-t}


def test_hardy_near_extremal_sweep():
    sweep = sp.hardy_near_extremal_sweep()
    vals = list(sweep.values())
    assert max(vals) <= 4.0 + 1e-9
    assert max(vals) > 3.5
    # ratios increase as the exponent approaches 1/2
    eps_sorted = sorted(sweep)
    assert sweep[eps_sorted[0]] > sweep[eps_sorted[-1]]


def test_hardy_scale_invariance():
    # the ratio is homogeneous of degree zero in f
    r1 = sp.hardy_halfline_ratio(lambda t: t * np.exp(-t), lambda t: np.exp(-t) * (1 - t))
    c = 37.5
    r2 = sp.hardy_halfline_ratio(lambda t: c * t * np.exp(-t),
                                 lambda t: c * np.exp(-t) * (1 - t))
    assert abs(r1 - r2) < 1e-12


def test_hardy_cone_and_profile():
    assert sp.hardy_cone_ratio(1.0, 1.0) <= 4.0 / 9.0
    assert sp.hardy_cone_ratio(2.0, 0.7) <= 4.0 / 9.0
    # scale invariance in s
    assert abs(sp.hardy_cone_ratio(1.0, 0.5) - sp.hardy_cone_ratio(1.0, 2.0)) < 1e-3
    assert sp.hardy_profile_ratio(1.0) <= 4.0
    assert sp.hardy_profile_ratio(3.0) <= 4.0


def test_hemisphere_ground_state():
    he = sp.hemisphere_eig0(2000)
    assert abs(he["eigenvalue"] - 2.0) < 1e-3
    assert he["eigenfunction_distance_to_cos"] < 1e-2
    assert abs(he["second_eigenvalue"] - 12.0) < 0.05
    with pytest.raises(ValueError):
        sp.hemisphere_eig0(50)


def test_rayleigh_zero_potential():
    res = sp.rayleigh_min(sp.SLProblem())
    assert abs(res["mu"] - 2.0) < 5e-3
    assert res["converged"]
    # refinement moves the value toward 2 (signed error reported, not asserted)
    assert abs(res["mu"] - 2.0) <= abs(res["mu_coarse"] - 2.0) + 1e-9


def test_rayleigh_angular_mode():
    mu0 = sp.rayleigh_min(sp.SLProblem())["mu"]
    mu1 = sp.rayleigh_min(sp.SLProblem(angular_mode=1))["mu"]
    assert mu1 > mu0 + 0.5


def test_rayleigh_potential_monotonicity():
    # nested case potentials: 0 <= case2 <= case3 pointwise for each m
    mus = {}
    for case in ("b3ct", "case2", "case3"):
        mus[case] = sp.rayleigh_min(sp.SLProblem(potential=sp.case_potential(case, 1)))["mu"]
    assert mus["b3ct"] <= mus["case2"] + 1e-9
    assert mus["case2"] <= mus["case3"] + 1e-9


@pytest.mark.parametrize("case,m,floor", [
    ("b3ct", 1, 2.0 - 5e-3),
    ("case2", 1, 2.0),
    ("case3", 1, 6.0 - 5e-3),
    ("case3", 2, 11.0 - 5e-3),
])
def test_exclusions(case, m, floor):
    rep = sp.exclusion_report(case, m)
    assert rep["mu_min"] >= floor
    assert rep["covers_0_to_3half"]
    lo, hi = rep["excluded_interval"]
    assert lo <= 0.0 <= 1.5 <= hi
    assert lo <= 0.5 <= hi  # the half-integer degree is always excluded


def test_exclusion_errors():
    with pytest.raises(ValueError):
        sp.exclusion_report("case2", 0)
    with pytest.raises(ValueError):
        sp.case_potential("case9")


def test_radial_closed_forms():
    st = sp.radial_ode_solve(1.0, 1.0, (0.1, 10.0))
    aa, bb = sp.radial_closed_form("decaying", st.x_grid, 1.0)
    assert np.max(np.abs(st.a - aa) / np.abs(aa)) < 1e-8
    assert np.max(np.abs(st.b - bb) / np.abs(bb)) < 1e-8
    a0, b0 = sp.radial_closed_form("growing", 0.1, 1.0)
    st2 = sp.radial_ode_solve(1.0, 1.0, (0.1, 10.0), init=[float(a0), float(b0)])
    ga, gb = sp.radial_closed_form("growing", st2.x_grid, 1.0)
    assert np.max(np.abs(st2.a - ga) / np.abs(ga)) < 1e-8
    # independence of the two solutions
    det = aa[0] * gb[0] - bb[0] * ga[0]
    assert abs(det) > 10.0


def test_radial_identity_residual():
    st = sp.radial_ode_solve(1.3, 0.8, (0.2, 8.0), init=[1.0, 0.3])
    assert st.identity_residual < 1e-8
    st2 = sp.radial_ode_solve(0.6, -1.2, (0.3, 6.0), init=[0.2, 1.0])
    assert st2.identity_residual < 1e-8


@pytest.mark.parametrize("lam,want", [
    (1.0, True), (0.75, True), (1.25, True),
    (0.0, False), (2.0, False), (0.4, False), (1.7, False),
])
def test_admissibility_window(lam, want):
    rep = sp.radial_admissible(lam, 1.0)
    assert rep["admissible"] == want


def test_weighted_integral_sign_counting():
    # for an admissible solution the two weighted integrals carry opposite
    # coefficients and the combination vanishes
    for lam in (1.0, 1.2):
        sol = sp.radial_ode_solve(lam, 1.0, (14.0, 1e-12),
                                  init=[1.0, 1.0], n_out=4000)
        xs = sol.x_grid
        a2 = sol.a ** 2
        b2 = sol.b ** 2
        A = np.trapezoid(a2 * xs ** 2, xs)
        B = np.trapezoid(b2 * xs ** 2, xs)
        combo = (lam - 0.5) * A + (lam - 1.5) * B
        scale = abs(lam - 0.5) * A + abs(lam - 1.5) * B
        assert (lam - 0.5) > 0 and (lam - 1.5) < 0
        assert abs(combo) / scale < 1e-6


def test_radial_errors():
    with pytest.raises(ValueError):
        sp.radial_ode_solve(1.0, 0.0)
    with pytest.raises(ValueError):
        sp.radial_admissible(1.0, 0.0)

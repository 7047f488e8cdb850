"""Registered checks behind the command-line verification suites.

Each suite function returns a list of CheckResult; all randomness comes from
the seed, so identical invocations give identical reports.  Tolerances are
the module defaults times the global tolerance scale.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import algebra, clifford, model, spectral
from . import operator as op
from .backgrounds import TrivialBackground, make_background
from .flow import FlowConfig, FlowTrace, lojasiewicz_fit, run_flow
from .modes import (
    ModeVector, k_lattice, kuranishi_w, linearized_decay, positive_spectrum_field,
    random_mode_vector, symbol,
)
from .reporting import CheckResult, SuiteReport
from .torus import TorusField, gauge_transform, gradient_check, random_field, cs_functional

SUITE_NAMES = ("algebra", "clifford", "model", "operator", "spectral", "flow-smoke")


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("KWLAB_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn, items):
    """Order-preserving map, parallel over threads when KWLAB_THREADS > 1."""
    n = thread_count()
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


def algebra_suite(seed: int, tol_scale: float = 1.0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []
    s1, s2, s3 = (algebra.basis_sigma(i) for i in (1, 2, 3))
    out.append(CheckResult.from_bound(
        "product_table", "sigma_i sigma_j = -delta_ij - eps_ijk sigma_k",
        max(np.max(np.abs(s1 @ s2 + s3)), np.max(np.abs(s1 @ s1 + np.eye(2)))),
        1e-14 * tol_scale))
    out.append(CheckResult.from_bound(
        "orthonormal_basis", "<sigma_i, sigma_j> = delta_ij",
        max(abs(algebra.inner(s1, s1) - 1), abs(algebra.inner(s1, s2))),
        1e-14 * tol_scale))
    out.append(CheckResult.from_bound(
        "null_square", "<(sigma1 - i sigma2)^2> = 0",
        abs(algebra.inner(algebra.E_PLUS, algebra.E_PLUS)), 1e-14 * tol_scale))
    out.append(CheckResult.from_bound(
        "bracket_value", "[sigma1, sigma2] = -2 sigma3",
        float(np.max(np.abs(algebra.bracket(s1, s2) + 2 * s3))), 1e-14 * tol_scale))
    worst_rec = 0.0
    worst_inner = 0.0
    worst_eig = 0.0
    for _ in range(1000):
        v = algebra.random_sl2c(rng)
        d = algebra.l_decompose(v)
        worst_rec = max(worst_rec, float(np.max(np.abs(d.reconstruct() - v))))
        worst_eig = max(
            worst_eig,
            float(np.max(np.abs(algebra.ad_half_isigma3(d.plus) - d.plus))),
            float(np.max(np.abs(algebra.ad_half_isigma3(d.minus) + d.minus))),
        )
        u = algebra.random_su2(rng)
        worst_inner = max(worst_inner, abs(algebra.inner(u, u).imag))
        if algebra.inner(u, u).real < -1e-15:
            worst_inner = math.inf
    out.append(CheckResult.from_bound(
        "l_decompose_reconstruct", "v = v_plus + v_0 sigma3 + v_minus",
        worst_rec, 1e-12 * tol_scale))
    out.append(CheckResult.from_bound(
        "l_eigenspaces", "[i/2 sigma3, v_pm] = +- v_pm", worst_eig, 1e-12 * tol_scale))
    out.append(CheckResult.from_bound(
        "su2_inner_real_positive", "<u, u> real and >= 0 on su(2)",
        worst_inner, 1e-13 * tol_scale))
    u = algebra.random_sl2c(rng)
    v = algebra.random_sl2c(rng)
    pu = algebra.l_decompose(u).plus
    pv = algebra.l_decompose(v).plus
    out.append(CheckResult.from_bound(
        "lplus_isotropic", "trace pairing and bracket vanish on L+ x L+",
        max(abs(algebra.inner(pu, pv)), float(np.max(np.abs(algebra.bracket(pu, pv))))),
        1e-12 * tol_scale))
    out.append(CheckResult.from_bound(
        "star_involution", "star(star(v)) = v; star swaps L+ and L-",
        max(float(np.max(np.abs(algebra.star(algebra.star(u)) - u))),
            float(np.max(np.abs(algebra.l_decompose(algebra.star(pu)).plus)))),
        1e-12 * tol_scale))
    return out


def clifford_suite(seed: int, tol_scale: float = 1.0) -> list[CheckResult]:
    out = []
    for name, ok in clifford.relation_checks():
        out.append(CheckResult.from_bool(name.replace(" ", "_"), name, ok))
    q = clifford.q_endo()
    ev = sorted(clifford.antisymmetric_spectrum(q))
    want = sorted([-3.0] * 4 + [-1.0] * 8 + [1.0] * 8 + [3.0] * 4)
    out.append(CheckResult.from_bound(
        "q_spectrum", "eigenvalues of rho1 rho2 - [sigma3,.] are +-3i, +-i",
        float(np.max(np.abs(np.array(ev) - want))), 1e-10 * tol_scale))
    L = clifford.l_endo()
    out.append(CheckResult.from_bound(
        "l_square", "L^2 = 1 and L symmetric",
        max(float(np.max(np.abs(L @ L - np.eye(24)))), float(np.max(np.abs(L - L.T)))),
        1e-13 * tol_scale))
    out.append(CheckResult.from_bound(
        "ql_commute", "[Q, L] = 0", float(np.max(np.abs(q @ L - L @ q))),
        1e-13 * tol_scale))
    y8 = clifford.y_auto_8()
    ymap = np.zeros((8, 8))
    for i in range(3):
        ymap[i, i + 4] = -1.0
        ymap[i + 4, i] = 1.0
    ymap[3, 7] = 1.0
    ymap[7, 3] = -1.0
    out.append(CheckResult.from_bool(
        "y_square", "Y^2 = -1", bool(np.array_equal(y8 @ y8, -np.eye(8)))))
    out.append(CheckResult.from_bool(
        "y_componentwise", "Y: (b, bt, c, ct) -> (-c, ct, b, -bt)",
        bool(np.array_equal(y8, ymap))))
    u = clifford.u_endo(0.4, -1.1, 0.6)
    out.append(CheckResult.from_bound(
        "u_orthogonal", "U^T U = 1; U(1,0,0) = 1",
        max(float(np.max(np.abs(u.T @ u - np.eye(8)))),
            float(np.max(np.abs(clifford.u_endo(1, 0, 0) - np.eye(8))))),
        1e-13 * tol_scale))
    for t in (1.0, 2.0):
        evs, mult = clifford.nahm_pole_spectrum(t)
        want_set = sorted([-2 / t, -1 / t, 1 / t, 2 / t])
        got_set = sorted(mult.keys())
        err = float(np.max(np.abs(np.array(got_set) - want_set))) if len(got_set) == 4 else math.inf
        dev = float(np.max(np.abs(evs - np.round(evs * t) / t)))
        out.append(CheckResult.from_bound(
            f"pole_endo_eigenvalues_t{t:g}",
            "eigenvalues of rho_i [a_i, .] at the pole are +-1/t, +-2/t",
            max(err, dev), 1e-10 * tol_scale,
            location=f"multiplicities {mult}"))
    return out


def model_suite(seed: int, tol_scale: float = 1.0, m: int = 1, samples: int = 200) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    ms = model.ModelSolution(m)
    out = []
    th, x = model.theta(4.0 + 0.0j, 3.0)
    out.append(CheckResult.from_bound(
        "theta_pythagoras", "x = sqrt(t^2 + |z|^2); sinh Theta = t/|z|",
        max(abs(x - 5.0), abs(math.sinh(th) - 0.75)), 1e-14 * tol_scale))
    pts = model.sample_points(rng, max(10, samples // 10))
    res_items = pmap(lambda p: model.verify_reduced_eqs(ms, p, 1e-4), pts)
    worst = max(max(r.values()) for r in res_items)
    out.append(CheckResult.from_bound(
        "reduced_equations", "first-order relations among alpha, phi, E, B",
        worst, 1e-6 * tol_scale))
    p0 = model.FieldPoint(1.0, 0.7 + 0.2j)
    r1 = model.verify_reduced_eqs(ms, p0, 1e-4)
    r2 = model.verify_reduced_eqs(ms, p0, 5e-5)
    ratios = [r1[k] / r2[k] for k in r1 if r2[k] > 1e-14]
    ratio = max(ratios) if ratios else 4.0
    out.append(CheckResult.from_bound(
        "reduced_equations_order", "residuals shrink at 2nd order",
        abs(ratio - 4.0), 0.5 * tol_scale))
    rep = model.verify_properties(ms, model.sample_points(rng, samples))
    out.append(CheckResult.from_bool(
        "alpha_range", "2 t alpha in [-(m+1), -1], alpha < 0",
        rep["alpha_range_ok"],
        location=f"range [{rep['alpha_scaled_min']:.6f}, {rep['alpha_scaled_max']:.6f}]"))
    out.append(CheckResult.from_bool(
        "alpha_t_monotone", "d alpha / dt > 0", rep["dalpha_dt_positive"]))
    out.append(CheckResult.from_bool(
        "phi_bound", "|phi| sqrt(2) t <= 1, equality only at m = 0",
        rep["phi_bound_ok"] and (rep["phi_bound_equality"] == (m == 0)),
        location=f"max {rep['phi_bound_max']:.6f}"))
    out.append(CheckResult.from_bound(
        "scaling_equivariance", "fields fixed by (t, z) -> (lambda t, lambda z)",
        rep["scaling_equivariance_err"], 1e-12 * tol_scale))
    out.append(CheckResult(
        "curvature_decay", "|B3|, |E1|, |E2| <= C t / x^3", "pass",
        metric=rep["curvature_x3_over_t_sup"], tolerance=None,
        worst_location="reported constant"))
    if m >= 1:
        c4 = model.case4_solution(ms, m, p0, 1e-4)
        out.append(CheckResult.from_bound(
            "decoupled_sector_solution",
            "holomorphic-pairing section solves its two first-order equations",
            max(c4["res_t"], c4["res_dbar"]), 1e-7 * tol_scale))
        out.append(CheckResult.from_bound(
            "decoupled_sector_exponent", "|section| ~ x^(p+1) along rays",
            abs(c4["ray_exponent"] - (m + 1)), 1e-3 * tol_scale))
    return out


def operator_suite(seed: int, tol_scale: float = 1.0, background: str = "model:1",
                   points: int = 200) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []
    bg = make_background(background)
    center = (1.0, 0.7, 0.4) if not isinstance(bg, TrivialBackground) else (1.0, 0.0, 0.0)
    sec = op.random_section(rng, center=center, spread=0.25)
    P = np.column_stack([
        center[0] + rng.uniform(-0.2, 0.2, points),
        center[1] + rng.uniform(-0.2, 0.2, points),
        center[2] + rng.uniform(-0.2, 0.2, points),
        rng.uniform(0, 2 * math.pi, points),
    ])
    outs = {d: op.apply_D(bg, sec, P, 1e-5, depiction=d)
            for d in ("components", "matrix", "clifford")}
    scale = max(op.spinor_max(outs["matrix"]), 1e-30)
    diff = max(op.spinor_max(outs["components"] - outs["matrix"]),
               op.spinor_max(outs["clifford"] - outs["matrix"])) / scale
    out.append(CheckResult.from_bound(
        "three_depictions", "slot formulas = 8x8 table = clifford contraction",
        diff, 1e-9 * tol_scale, location=f"{points} points on {background}"))
    p0 = np.array([center[0], center[1], center[2], 0.3])
    out.append(CheckResult.from_bound(
        "y_intertwine", "D Y = -Y D^dag",
        op.y_intertwine(bg, sec, p0, 1e-5), 1e-8 * tol_scale))
    if not isinstance(bg, TrivialBackground):
        b1 = op.bochner_check(bg, sec, p0, 1e-3)
        b2 = op.bochner_check(bg, sec, p0, 5e-4)
        out.append(CheckResult.from_bound(
            "weitzenbock_remainder", "D^dag D - grad^dag grad - commutator = X",
            b1["residual"] / max(b1["scale"], 1e-30), 1e-4 * tol_scale))
        out.append(CheckResult.from_bound(
            "weitzenbock_order", "remainder comparison is 2nd order",
            abs(b1["residual"] / max(b2["residual"], 1e-300) - 4.0), 1.0 * tol_scale))
        rep = op.bochner_block_report(bg, p0)
        out.append(CheckResult(
            "weitzenbock_blocks", "blockwise extraction vs assembled remainder",
            "pass" if not rep["flagged_blocks"] else "flagged",
            metric=rep["worst_block_diff"], tolerance=1e-3 * tol_scale,
            worst_location=str(rep["flagged_blocks"]) if rep["flagged_blocks"] else None))
    X24 = op.x_matrix24(bg, p0)
    zero_rows = max(float(np.max(np.abs(X24[6:9, :]))), float(np.max(np.abs(X24[21:24, :]))),
                    float(np.max(np.abs(X24[:, 6:9]))), float(np.max(np.abs(X24[:, 21:24]))))
    out.append(CheckResult.from_bound(
        "remainder_structure", "X symmetric; rows/cols 3 and 8 vanish",
        max(float(np.max(np.abs(X24 - X24.T))), zero_rows), 1e-10 * tol_scale))
    if not isinstance(bg, TrivialBackground):
        blobs = [(rng.normal(size=(8, 3)),
                  np.asarray(center) + rng.uniform(-0.15, 0.15, 3),
                  rng.uniform(0.5, 0.9), 0, 0.0) for _ in range(2)]
        xi = op.GaussTrigSection(blobs)
        lam = 2.0
        pull = op.FuncSection(lambda Q: xi.value(
            np.concatenate([Q[..., :3] * lam, Q[..., 3:]], axis=-1)))
        p2 = p0.copy()
        p2[:3] *= lam
        o1 = op.omega_apply(bg, pull, p0, 1e-5)
        o2 = op.omega_apply(bg, xi, p2, lam * 1e-5)
        out.append(CheckResult.from_bound(
            "omega_scale_invariance", "Omega commutes with the rescaling action",
            op.spinor_max(o1 - o2), 1e-8 * tol_scale))
        qxi = op.FuncSection(lambda Q: op.apply_q_endo(xi.value(Q)))
        c1 = op.apply_q_endo(op.omega_apply(bg, xi, p0, 1e-5))
        c2 = op.omega_apply(bg, qxi, p0, 1e-5)
        out.append(CheckResult.from_bound(
            "omega_q_commute", "[Q, Omega] = 0", op.spinor_max(c1 - c2),
            1e-8 * tol_scale))
    # flat-torus checks (exact derivatives)
    tsec = op.random_torus_section(rng, k_max=2, n_terms=3)
    Pt = np.column_stack([np.ones(32), rng.uniform(0, 2 * math.pi, (32, 3))])
    out.append(CheckResult.from_bound(
        "spatial_identification",
        "spatial part = complexified (star d, d, d^dag) complex",
        op.spatial_identification(TrivialBackground(), tsec, Pt), 1e-9 * tol_scale))
    psi = op.random_torus_section(rng, k_max=1, n_terms=3, t_center=2.0, t_width=0.35)
    eta = op.random_torus_section(rng, k_max=1, n_terms=3, t_center=2.0, t_width=0.35)
    out.append(CheckResult.from_bound(
        "adjoint_duality", "int <D psi, xi> = int <psi, D^dag xi>",
        op.duality_gap(TrivialBackground(), psi, eta, t_range=(0.0, 4.0), nt=40, nx=8),
        1e-6 * tol_scale))
    pg = op.pythagoras_gap(TrivialBackground(), psi, t_range=(0.0, 4.0), nt=40, nx=8)
    out.append(CheckResult.from_bound(
        "norm_split", "|D psi|^2 integrates to |grad_t psi|^2 + |L psi|^2",
        pg["rel_gap"], 1e-9 * tol_scale))
    spec_entries = {tuple(e["k"]): e["eigenvalues"] for e in op.lattice_L_spectrum(1)}
    e100 = spec_entries[(1, 0, 0)]
    e110 = spec_entries[(1, 1, 0)]
    ok = (np.allclose(np.abs(e100), 1.0, atol=1e-12)
          and int(np.sum(e100 > 0)) == 12
          and np.allclose(np.abs(e110), math.sqrt(2), atol=1e-12)
          and np.allclose(spec_entries[(0, 0, 0)], 0.0))
    out.append(CheckResult.from_bool(
        "symbol_spectrum", "mode symbol eigenvalues are +-|k| with multiplicity 12",
        ok))
    return out


def spectral_suite(seed: int, tol_scale: float = 1.0) -> list[CheckResult]:
    out = []
    hs = spectral.hardy_suite()
    out.append(CheckResult.from_bound(
        "hardy_halfline", "int f^2/t^2 <= 4 int f'^2",
        hs["halfline"]["ratio_sup"], 4.0 + 1e-9 * tol_scale))
    out.append(CheckResult.from_bool(
        "hardy_halfline_sharp", "near-extremal family exceeds 3.5",
        hs["halfline"]["sweep_reaches"] > 3.5,
        location=f"sweep max {hs['halfline']['sweep_reaches']:.4f}"))
    out.append(CheckResult.from_bound(
        "hardy_cone", "int psi^2/x^2 <= 4/9 of the gradient energy",
        hs["cone"]["ratio_sup"], 4.0 / 9.0 + 1e-9 * tol_scale))
    out.append(CheckResult.from_bound(
        "hardy_profile", "weighted profile inequality with constant 4",
        hs["profile"]["ratio_sup"], 4.0 + 1e-9 * tol_scale))
    he = spectral.hemisphere_eig0(2000)
    out.append(CheckResult.from_bound(
        "hemisphere_ground", "lowest polar Dirichlet eigenvalue is 2",
        abs(he["eigenvalue"] - 2.0), 1e-3 * tol_scale,
        location=f"second eigenvalue {he['second_eigenvalue']:.4f} (reported)"))
    out.append(CheckResult.from_bound(
        "hemisphere_eigenfunction", "ground eigenfunction is cos(theta)",
        he["eigenfunction_distance_to_cos"], 1e-2 * tol_scale))
    r0 = spectral.rayleigh_min(spectral.SLProblem())
    out.append(CheckResult.from_bound(
        "rayleigh_zero_potential", "flat-coordinate Rayleigh minimum is 2",
        abs(r0["mu"] - 2.0), 5e-3 * tol_scale))
    r1 = spectral.rayleigh_min(spectral.SLProblem(angular_mode=1))
    out.append(CheckResult.from_bool(
        "rayleigh_angular_mode", "angular mode raises the minimum above 2",
        r1["mu"] > 2.0, location=f"mu = {r1['mu']:.4f}"))
    for case, m in (("b3ct", 1), ("case2", 1), ("case3", 1)):
        rep = spectral.exclusion_report(case, m)
        loc = (f"mu_min = {rep['mu_min']:.4f}, excluded "
               f"({rep['excluded_interval'][0]:.3f}, {rep['excluded_interval'][1]:.3f})")
        out.append(CheckResult.from_bool(
            f"exclusion_{case}", "excluded degree interval covers [0, 3/2]",
            rep["covers_0_to_3half"], location=loc))
        if case == "case3":
            out.append(CheckResult.from_bool(
                "exclusion_case3_bound", "case-3 minimum exceeds 2 + (m+1)^2",
                rep["mu_min"] >= 6.0 - 5e-3 * tol_scale,
                location=f"mu_min = {rep['mu_min']:.4f}"))
    st = spectral.radial_ode_solve(1.0, 1.0, (0.1, 10.0))
    aa, bb = spectral.radial_closed_form("decaying", st.x_grid, 1.0)
    err = max(float(np.max(np.abs(st.a - aa) / np.abs(aa))),
              float(np.max(np.abs(st.b - bb) / np.abs(bb))))
    out.append(CheckResult.from_bound(
        "radial_closed_form", "decaying solution (1/x) e^{-kx} (1,1) reproduced",
        err, 1e-8 * tol_scale))
    st2 = spectral.radial_ode_solve(1.3, 0.8, (0.2, 8.0), init=[1.0, 0.3])
    out.append(CheckResult.from_bound(
        "radial_identity", "x^3/2 (b^2-a^2)' + x^2((lam-2)a^2 + lam b^2) = 0",
        st2.identity_residual, 1e-8 * tol_scale))
    verdicts = {lam: spectral.radial_admissible(lam, 1.0)["admissible"]
                for lam in (0.0, 1.0, 2.0)}
    out.append(CheckResult.from_bool(
        "radial_admissibility", "integrable window is 1/2 < lambda < 3/2",
        verdicts[1.0] and not verdicts[0.0] and not verdicts[2.0],
        location=str(verdicts)))
    return out


def flow_smoke_suite(seed: int, tol_scale: float = 1.0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []
    F0 = TorusField(8)
    tr0 = run_flow(F0, FlowConfig(dt=0.01, steps=10))
    out.append(CheckResult.from_bound(
        "zero_fixed_point", "the flat point is stationary",
        float(np.max(np.abs(tr0.cs))), 1e-14 * tol_scale))
    try:
        run_flow(F0, FlowConfig(dt=1.0, steps=1))
        out.append(CheckResult.from_bool("cfl_guard", "plumbing", False))
    except ValueError:
        out.append(CheckResult.from_bool("cfl_guard", "plumbing", True))
    F = random_field(rng, 12, amplitude=5e-2)
    d = (random_field(rng, 12, amplitude=1.0).A, random_field(rng, 12, amplitude=1.0).a)
    gc = gradient_check(F, d, s_list=(1e-4,))
    out.append(CheckResult.from_bound(
        "gradient_check", "directional derivative of cs matches the gradient",
        max(gc["relative_errors"].values()), 1e-6 * tol_scale))
    F.scheme = "spectral"
    xs = np.arange(12) * (2 * math.pi / 12)
    X = np.meshgrid(xs, xs, xs, indexing="ij")
    phi = np.zeros((3, 12, 12, 12))
    phi[0] = 0.01 * np.sin(X[0]) * np.cos(X[2])
    phi[2] = 0.01 * np.cos(X[1])
    drift = abs(cs_functional(gauge_transform(F, phi)) - cs_functional(F))
    F.scheme = "fd4"
    out.append(CheckResult.from_bound(
        "gauge_invariance", "cs is invariant under gauge transformations",
        drift, 1e-8 * tol_scale))
    Fd = positive_spectrum_field(rng, 12, amplitude=0.05, abelian=True,
                                 modes=[(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    tr = run_flow(Fd, FlowConfig(dt=0.05 * Fd.h, steps=160))
    s = tr.summary()
    out.append(CheckResult.from_bool(
        "monotone_cs", "cs is non-decreasing along the flow", s["monotone"],
        location=f"worst decrease {s['worst_decrease']:.2e}"))
    out.append(CheckResult.from_bound(
        "energy_identity", "d cs/dt = int(|E|^2 + |da/dt|^2)",
        s["energy_identity_max_relerr"], 1e-3 * tol_scale))
    out.append(CheckResult.from_bound(
        "two_rate_forms", "the two expressions for d cs/dt agree",
        s["two_forms_max_relerr"], 1e-3 * tol_scale))
    fit = lojasiewicz_fit(tr)
    out.append(CheckResult.from_bool(
        "linear_regime_rate", "deficit decays exponentially at twice the gap",
        fit["model"] == "exponential" and abs(fit["rate"] - 2.0) < 0.05,
        location=f"rate {fit.get('rate', 0):.4f}"))
    t = np.linspace(0, 6, 400)
    fake = FlowTrace(times=t, cs=1 - np.exp(-3 * t), grad_norm_sq=3 * np.exp(-3 * t),
                     constraint_drift=0 * t, sup_a=0 * t,
                     energy_identity_relerr=0 * t, two_forms_relerr=0 * t)
    sf = lojasiewicz_fit(fake)
    out.append(CheckResult.from_bound(
        "decay_fit_oracle", "synthetic exponential trace is fit to 1%",
        abs(sf["rate"] - 3.0) / 3.0, 1e-2 * tol_scale))
    ks = k_lattice(1)
    idx = {tuple(k): i for i, k in enumerate(ks)}
    coeffs = np.zeros((len(ks), 8, 3), complex)
    evals, vecs = np.linalg.eigh(symbol(np.array([1, 0, 0])))
    vplus = vecs[:, int(np.argmax(evals))]
    amp = rng.normal(size=3) + 1j * rng.normal(size=3)
    coeffs[idx[(1, 0, 0)]] = vplus[:, None] * amp[None, :]
    coeffs[idx[(-1, 0, 0)]] = coeffs[idx[(1, 0, 0)]].conj()
    dec = linearized_decay(1, ModeVector(ks, coeffs), T=3.0, dt=0.05)
    err = float(np.max(np.abs(dec["f_plus"] - dec["f_plus"][0] * np.exp(-dec["times"]))))
    out.append(CheckResult.from_bound(
        "single_mode_decay", "pure positive mode decays exactly as e^{-t}",
        err, 1e-8 * tol_scale))
    phi = random_mode_vector(rng, 1, scale=0.01, slots=[0, 1, 2, 4, 5, 6])
    _, diag = kuranishi_w(phi, 1)
    out.append(CheckResult.from_bool(
        "contraction_fixed_point", "quadratic fixed-point iteration contracts",
        diag["max_ratio"] < 1.0 and diag["fixed_point_residual"] < 1e-10,
        location=f"ratio {diag['max_ratio']:.3f}"))
    return out


SUITES = {
    "algebra": algebra_suite,
    "clifford": clifford_suite,
    "model": model_suite,
    "operator": operator_suite,
    "spectral": spectral_suite,
    "flow-smoke": flow_smoke_suite,
}


def run_suite(name: str, seed: int = 0, tol_scale: float = 1.0, **kwargs) -> SuiteReport:
    import time

    start = time.perf_counter()
    if name == "all":
        checks = []
        for sub in SUITE_NAMES:
            sub_checks = SUITES[sub](seed, tol_scale)
            for c in sub_checks:
                c.check_id = f"{sub}.{c.check_id}"
            checks.extend(sub_checks)
        return SuiteReport(suite="all", seed=seed, checks=checks,
                           wall_time_s=time.perf_counter() - start)
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    checks = SUITES[name](seed, tol_scale, **kwargs)
    return SuiteReport(suite=name, seed=seed, checks=checks,
                       wall_time_s=time.perf_counter() - start)

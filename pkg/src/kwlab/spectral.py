"""1D spectral reductions: Hardy ratios, hemisphere eigenvalues, exclusion
windows, and the radial ODE system of the mode-by-mode adjoint analysis.

Hemisphere reduction.  The round metric on the unit hemisphere S+ (the x = 1
locus in (0,inf) x R^2), written in the profile coordinate Theta and the
longitude phi, is conformally flat with factor sech^2(Theta).  The Dirichlet
integral of a function is conformally invariant in two dimensions, so for a
separated function f(Theta) e^{i n phi} the quadratic forms reduce to

    energy(f) = int (f'^2 + n^2 f^2) dTheta + int W(Theta) sech^2(Theta) f^2 dTheta
    mass(f)   = int f^2 sech^2(Theta) dTheta

where W is the potential as it appears multiplying |f|^2 in the hemisphere
integral (round measure); the sech^2 factor is the conversion to the flat
dTheta measure and applies to every zeroth-order term, mass and potential
alike.  Theta = 0 is the equator (Dirichlet), Theta -> inf is the pole.

The generalized Rayleigh minimum mu = min energy/mass bounds the allowed
homogeneity degrees lambda of separated solutions through
lambda(lambda -+ 1) > mu; ``exclusion_report`` turns the computed mu into
the excluded lambda interval for each reduced sector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import eigh_tridiagonal


# ---------------------------------------------------------------------------
# Hardy-type ratios


def _trapz(y, x):
    return float(np.trapezoid(y, x))


def hardy_halfline_ratio(f: Callable, df: Callable, grid=None) -> float:
    """int f^2/t^2 dt over int f'^2 dt on (0, inf); the sharp constant is 4."""
    if grid is None:
        grid = np.geomspace(1e-10, 60.0, 20000)
    fv = f(grid)
    dv = df(grid)
    return _trapz(fv * fv / grid ** 2, grid) / _trapz(dv * dv, grid)


def hardy_near_extremal_sweep(eps_list=(0.2, 0.1, 0.05, 0.02, 0.01)) -> dict:
    """Ratios for f = t^(1/2+eps) e^{-t}; they approach 4 from below.

    The mass integral behaves like Gamma(2 eps) ~ 1/(2 eps), so the grid has
    to reach far below machine-scale t to capture it; the integrand powers
    stay well inside double range.
    """
    grid = np.geomspace(1e-90, 90.0, 40000)
    out = {}
    for eps in eps_list:
        p = 0.5 + eps

        def f(t, p=p):
            return t ** p * np.exp(-t)

        def df(t, p=p):
            return (p * t ** (p - 1) - t ** p) * np.exp(-t)

        out[eps] = hardy_halfline_ratio(f, df, grid=grid)
    return out


def hardy_cone_ratio(a: float = 1.0, s: float = 1.0, n_grid: int = 600, span: float = 8.0) -> float:
    """int psi^2/x^2 over int |grad psi|^2 for psi = t^a exp(-x^2/(2 s^2))
    on the half-space t > 0 (x3-invariant); the constant is 4/9.

    2D quadrature in (t, r) with the measure 2 pi r dr dt.
    """
    t = np.linspace(1e-6, span * s, n_grid)
    r = np.linspace(1e-6, span * s, n_grid)
    T, R = np.meshgrid(t, r, indexing="ij")
    X2 = T * T + R * R
    psi = T ** a * np.exp(-X2 / (2 * s * s))
    dpsi_dt = (a * T ** (a - 1) - T ** (a + 1) / s ** 2) * np.exp(-X2 / (2 * s * s))
    dpsi_dr = -R / s ** 2 * psi
    w = R  # 2 pi cancels in the ratio
    num = np.trapezoid(np.trapezoid(psi * psi / X2 * w, r, axis=1), t)
    den = np.trapezoid(np.trapezoid((dpsi_dt ** 2 + dpsi_dr ** 2) * w, r, axis=1), t)
    return float(num / den)


def hardy_profile_ratio(kappa: float = 1.0, n_grid: int = 40000) -> float:
    """int f^2/sinh^2 over int f'^2/cosh^2 on (0, inf) for f = tanh^kappa;
    bounded by 4 for bounded f vanishing at 0."""
    th = np.geomspace(1e-8, 40.0, n_grid)
    f = np.tanh(th) ** kappa
    df = kappa * np.tanh(th) ** (kappa - 1) / np.cosh(th) ** 2
    num = _trapz(f * f / np.sinh(th) ** 2, th)
    den = _trapz(df * df / np.cosh(th) ** 2, th)
    return num / den


def hardy_suite() -> dict:
    """Supremum ratios for the three weighted inequalities, with constants."""
    base = hardy_halfline_ratio(lambda t: t * np.exp(-t),
                                lambda t: np.exp(-t) * (1 - t))
    sweep = hardy_near_extremal_sweep()
    cone = max(hardy_cone_ratio(a, s) for a in (1.0, 2.0) for s in (0.7, 1.0, 1.6))
    profile = max(hardy_profile_ratio(k) for k in (1.0, 2.0, 4.0))
    return {
        "halfline": {
            "constant": 4.0,
            "ratio_base": base,
            "ratio_sweep": sweep,
            "ratio_sup": max(max(sweep.values()), base),
            "pass": max(max(sweep.values()), base) <= 4.0 + 1e-9,
            "sweep_reaches": max(sweep.values()),
        },
        "cone": {
            "constant": 4.0 / 9.0,
            "ratio_sup": cone,
            "pass": cone <= 4.0 / 9.0 + 1e-9,
        },
        "profile": {
            "constant": 4.0,
            "ratio_sup": profile,
            "pass": profile <= 4.0 + 1e-9,
        },
    }


# ---------------------------------------------------------------------------
# Hemisphere polar eigenproblem


def hemisphere_eig0(n_mesh: int = 2000) -> dict:
    """Lowest Dirichlet eigenvalue of -(1/sin) d/dtheta (sin d/dtheta .) on
    the polar interval [0, pi/2]: Dirichlet at pi/2, natural regularity at 0.

    The lowest eigenvalue is 2 with eigenfunction cos(theta); the second is
    reported (no assertion).  Cell-centered conservative differences; the
    sin(theta) face weight vanishes at theta = 0, so regularity there is
    automatic.
    """
    if n_mesh < 100:
        raise ValueError("mesh too coarse")
    hh = (math.pi / 2) / n_mesh
    centers = (np.arange(n_mesh) + 0.5) * hh
    faces = np.arange(n_mesh + 1) * hh
    sf = np.sin(faces)
    mass = np.sin(centers) * hh
    main = (sf[:-1] + sf[1:]) / hh
    main[-1] = sf[-2] / hh + 2.0 * sf[-1] / hh  # Dirichlet ghost at pi/2
    off = -sf[1:-1] / hh
    d = main / mass
    e = off / np.sqrt(mass[:-1] * mass[1:])
    vals, vecs = eigh_tridiagonal(d, e, select="i", select_range=(0, 1))
    f = vecs[:, 0] / np.sqrt(mass)  # undo the symmetrizing similarity
    f = f / np.sqrt(np.sum(f * f * mass))
    ref = np.cos(centers)
    ref = ref / np.sqrt(np.sum(ref * ref * mass))
    if np.dot(f, ref * mass) < 0:
        f = -f
    dist = math.sqrt(np.sum((f - ref) ** 2 * mass))
    return {
        "eigenvalue": float(vals[0]),
        "second_eigenvalue": float(vals[1]),
        "eigenfunction_distance_to_cos": dist,
        "theta": centers,
        "eigenfunction": f,
    }


# ---------------------------------------------------------------------------
# Sturm-Liouville reductions in the profile coordinate


@dataclass
class SLProblem:
    """1D reduction on Theta in [theta_min, theta_max].

    The equator end theta_min carries the Dirichlet condition (it is the
    true hemisphere boundary); the pole end theta_max gets the natural
    (regularity) condition, since Theta -> inf is an interior point of the
    hemisphere where the coordinate merely degenerates.  A Dirichlet wall at
    the pole end would bias the minimum upward by O(1/theta_max), i.e. far
    beyond the target accuracy at the default truncation.

    potential is W(Theta) as it multiplies |f|^2 in the hemisphere (round
    measure) integral; it enters the flat-measure energy with the same
    sech^2 weight as the mass term.  W must be >= 0 on the mesh.
    """

    theta_min: float = 1e-6
    theta_max: float = 30.0
    n_mesh: int = 2000
    angular_mode: int = 0
    potential: Callable | None = None

    def __post_init__(self):
        if self.angular_mode < 0:
            raise ValueError("angular mode must be >= 0")

    def w_values(self, th: np.ndarray) -> np.ndarray:
        if self.potential is None:
            return np.zeros_like(th)
        w = np.asarray(self.potential(th), dtype=float)
        if np.any(w < -1e-12):
            raise ValueError("potential must be nonnegative on the mesh")
        return w


def _sl_min_once(prob: SLProblem, n_mesh: int) -> float:
    """Smallest generalized Rayleigh quotient by inverse-power iteration.

    The mass weight sech^2 underflows to ~1e-26 at the default truncation,
    which would wreck a symmetrized dense/tridiagonal eigensolve (absolute
    backward error scales with the matrix norm).  Inverse iteration on
    K^{-1} M only ever factorizes the well-conditioned stiffness K, so the
    tiny mass entries are harmless.
    """
    from scipy.linalg import solve_banded

    hh = (prob.theta_max - prob.theta_min) / n_mesh
    th = prob.theta_min + hh * np.arange(1, n_mesh + 1)
    sech2 = 1.0 / np.cosh(th) ** 2
    wv = prob.w_values(th)
    diag_k = np.full(n_mesh, 2.0 / hh)
    diag_k[-1] = 1.0 / hh  # natural condition at the pole end
    diag_k += (prob.angular_mode ** 2 + wv * sech2) * hh
    off_k = np.full(n_mesh - 1, -1.0 / hh)
    mass = sech2 * hh
    ab = np.zeros((3, n_mesh))
    ab[0, 1:] = off_k
    ab[1, :] = diag_k
    ab[2, :-1] = off_k
    v = np.tanh(th)
    mu_prev = np.inf
    for _ in range(400):
        w = solve_banded((1, 1), ab, mass * v)
        v = w / np.sqrt(np.sum(mass * w * w))
        kv = diag_k * v
        kv[:-1] += off_k * v[1:]
        kv[1:] += off_k * v[:-1]
        mu = float(np.sum(v * kv) / np.sum(mass * v * v))
        if abs(mu - mu_prev) <= 1e-12 * max(abs(mu), 1.0):
            return mu
        mu_prev = mu
    return mu_prev


def rayleigh_min(prob: SLProblem, rel_tol: float = 5e-4, max_doublings: int = 4) -> dict:
    """Minimum generalized Rayleigh quotient, refined until successive mesh
    doublings agree to rel_tol (3 significant digits by default)."""
    n = prob.n_mesh
    prev = _sl_min_once(prob, n)
    for _ in range(max_doublings):
        n *= 2
        cur = _sl_min_once(prob, n)
        if abs(cur - prev) <= rel_tol * max(abs(cur), 1.0):
            return {"mu": cur, "mu_coarse": prev, "n_mesh": n, "converged": True}
        prev = cur
    raise RuntimeError("Rayleigh minimum did not converge under mesh doubling")


def case_potential(case: str, m: int = 1) -> Callable | None:
    """Round-measure potentials of the three decoupled sectors.

    'b3ct' keeps W = 0: that sector only needs the kinetic lower bound 2
    (its matrix potential is nonnegative), so the commutator term is
    deliberately dropped as a lower-bound substitution.
    """
    n = m + 1
    if case == "b3ct":
        return None
    if case == "case2":
        return lambda th: 2.0 * n ** 2 * np.cosh(th) ** 2 / np.sinh(n * th) ** 2
    if case == "case3":
        return lambda th: (
            n ** 2 * (np.cosh(n * th) ** 2 + np.cosh(th) ** 2) / np.sinh(n * th) ** 2
        )
    raise ValueError(f"unknown case {case!r}")


def exclusion_report(case: str, m: int = 1) -> dict:
    """Rayleigh minimum of the case and the lambda interval it excludes.

    'b3ct' and 'case2' exclude the lambda with lambda(lambda-1) <= mu;
    'case3' those with lambda(lambda+1) <= mu.  The interval [0, 3/2] must
    always be inside the excluded interval.
    """
    if case in ("case2", "case3") and m < 1:
        raise ValueError("cases with a pole index need m >= 1")
    prob = SLProblem(potential=case_potential(case, m))
    res = rayleigh_min(prob)
    mu = res["mu"]
    disc = math.sqrt(1.0 + 4.0 * mu)
    if case in ("b3ct", "case2"):
        lo, hi = (1.0 - disc) / 2.0, (1.0 + disc) / 2.0
        quad = "lambda(lambda-1)"
    else:
        lo, hi = (-1.0 - disc) / 2.0, (-1.0 + disc) / 2.0
        quad = "lambda(lambda+1)"
    covers = lo <= 0.0 and hi >= 1.5
    if not covers:
        raise AssertionError(f"{case}: excluded interval fails to cover [0, 3/2]")
    return {
        "case": case,
        "m": m,
        "mu_min": mu,
        "quadratic": quad,
        "excluded_interval": (lo, hi),
        "covers_0_to_3half": covers,
        "n_mesh": res["n_mesh"],
    }


# ---------------------------------------------------------------------------
# The radial ODE system of the mode-by-mode analysis


@dataclass
class RadialODEState:
    lam: float
    k: float
    x_grid: np.ndarray
    a: np.ndarray
    b: np.ndarray
    identity_residual: float = 0.0
    sol: object = field(default=None, repr=False)


def _radial_rhs(lam: float, k: float):
    # sign convention: chosen so that at lambda = 1 the decaying closed form
    # is (a, b) = (1/x) e^{-kx} (1, 1) and the growing one (1/x) e^{kx} (1, -1)
    def rhs(x, y):
        a, b = y
        return [(lam - 2.0) / x * a - k * b, -lam / x * b - k * a]

    return rhs


def radial_closed_form(kind: str, x, k: float = 1.0):
    """The two lambda = 1 solutions: 'decaying' (1/x)e^{-kx}(1,1) and
    'growing' (1/x)e^{kx}(1,-1)."""
    x = np.asarray(x, dtype=float)
    if kind == "decaying":
        return np.exp(-k * x) / x, np.exp(-k * x) / x
    if kind == "growing":
        return np.exp(k * x) / x, -np.exp(k * x) / x
    raise ValueError(kind)


def radial_ode_solve(lam: float, k: float, x_range=(0.1, 10.0), init=None,
                     n_out: int = 400) -> RadialODEState:
    """Integrate the 2x2 first-order system from x_range[0] to x_range[1].

    init defaults to the decaying closed form at the left endpoint (for any
    lambda it is simply used as given).  The returned state carries the
    residual of the conservation identity

        x^3/2 d/dx(b^2 - a^2) + x^2 ((lam-2) a^2 + lam b^2) = 0,

    evaluated with 4th-order differences of the dense output.
    """
    if k == 0:
        raise ValueError("need k != 0")
    x0, x1 = x_range
    if init is None:
        a0, b0 = radial_closed_form("decaying", x0, k)
        init = [float(a0), float(b0)]
    sol = solve_ivp(_radial_rhs(lam, k), (x0, x1), init, method="DOP853",
                    rtol=1e-12, atol=1e-14, dense_output=True)
    if not sol.success:
        raise RuntimeError(f"integration failed: {sol.message}")
    xg = np.geomspace(min(x0, x1), max(x0, x1), n_out)
    vals = sol.sol(xg)
    a, b = vals[0], vals[1]
    # identity residual with independent differencing of the dense output,
    # normalized by the local term scale (the solution spans many decades)
    res = 0.0
    for x in np.geomspace(min(x0, x1) * 1.1, max(x0, x1) * 0.9, 40):
        hh = 1e-3 * x
        g = lambda xx: float(np.diff(sol.sol(xx) ** 2, axis=0)[0])  # b^2 - a^2
        d = (-g(x + 2 * hh) + 8 * g(x + hh) - 8 * g(x - hh) + g(x - 2 * hh)) / (12 * hh)
        av, bv = sol.sol(x)
        t1 = 0.5 * x ** 3 * d
        t2 = x ** 2 * ((lam - 2.0) * av ** 2 + lam * bv ** 2)
        res = max(res, abs(t1 + t2) / max(1.0, abs(t1), abs(t2)))
    return RadialODEState(lam=lam, k=k, x_grid=xg, a=a, b=b,
                          identity_residual=res, sol=sol)


def radial_admissible(lam: float, k: float, x_min: float = 1e-4,
                      x_max: float | None = None) -> dict:
    """Decide whether the solution decaying at infinity has finite
    int (a^2 + b^2) x^2 dx near 0.

    Integrates inward from x_max with the decaying asymptotic direction
    (1, 1) e^{-|k| x}; fits the local exponent of g = x^2 (a^2 + b^2) over
    [x_min, 100 x_min] and calls the solution admissible when the fitted
    exponent exceeds -1 (so the integral converges under range extension;
    verified by extending x_min fourfold).  An ill-conditioned fit (local
    slopes scattered by more than 0.2) widens the range once and retries.
    """
    if k == 0:
        raise ValueError("need k != 0")
    kk = abs(k)
    if x_max is None:
        x_max = max(14.0 / kk, 14.0)
    init = [1.0, 1.0 if k > 0 else -1.0]

    def run(xm):
        sol = solve_ivp(_radial_rhs(lam, k), (x_max, xm), init, method="DOP853",
                        rtol=1e-11, atol=1e-300, dense_output=True)
        if not sol.success:
            raise RuntimeError(sol.message)
        return sol

    def fit(sol, lo, hi):
        xs = np.geomspace(lo, hi, 60)
        g = xs ** 2 * np.sum(sol.sol(xs) ** 2, axis=0)
        logs = np.log(g)
        slope, _ = np.polyfit(np.log(xs), logs, 1)
        local = np.diff(logs) / np.diff(np.log(xs))
        return float(slope), float(np.max(np.abs(local - slope)))

    sol = run(x_min)
    slope, scatter = fit(sol, x_min, 100 * x_min)
    if scatter > 0.2:
        sol = run(x_min / 10)
        slope, scatter = fit(sol, x_min / 10, 1000 * x_min)
        if scatter > 0.2:
            raise RuntimeError("ambiguous indicial fit; widen the range further")
    # convergence of the integral under extension of the lower endpoint
    sol_ext = run(x_min / 4.0)
    xs1 = np.geomspace(x_min, x_max, 4000)
    xs2 = np.geomspace(x_min / 4.0, x_max, 4000)
    i1 = _trapz(xs1 ** 2 * np.sum(sol.sol(xs1) ** 2, axis=0), xs1)
    i2 = _trapz(xs2 ** 2 * np.sum(sol_ext.sol(xs2) ** 2, axis=0), xs2)
    extension_growth = abs(i2 - i1) / max(i1, 1e-300)
    admissible = slope > -1.0 + 0.05 and extension_growth < 0.05
    return {
        "lambda": lam,
        "k": k,
        "admissible": bool(admissible),
        "exponent_at_zero": slope,
        "fit_scatter": scatter,
        "extension_growth": extension_growth,
        "x2dx_integral": i1,
    }

"""su(2) field calculus on a periodic N^3 grid over the flat 3-torus.

Fields store sigma-basis coefficients: a connection triple A and a Higgs
triple a each have shape (3, 3, N, N, N) = (form component, sigma
coefficient, grid).  Real coefficients make every stored value exactly
traceless anti-Hermitian.  The commutator in this representation is
[u, v] = -2 u x v (coefficient cross product) and <u, v> is the plain dot
product of coefficients.

Derivatives are 4th-order centered differences on the periodic grid by
default; a spectral variant is available where an identity has to hold to
round-off (e.g. the gauge invariance spot check).

Conventions pinned by the directional-derivative identity of the functional:

    cs(A, a)   = int ( <a_k, B_k> - <[a_1, a_2], a_3> )
    B_k        = eps_kij (d_i A_j + 1/2 [A_i, A_j])
    grad cs    = (curl_A a,  B - star(a wedge a)),
    curl_A u_k = eps_kij (d_i u_j + [A_i, u_j]),
    star(a wedge a)_k = 1/2 eps_kij [a_i, a_j].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

EPS = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    EPS[_i, _j, _k] = 1.0
    EPS[_j, _i, _k] = -1.0


def comm(u, v):
    """[u, v] on sigma coefficients: -2 (u x v), cross along axis 0."""
    return -2.0 * np.cross(u, v, axis=0)


def dot(u, v):
    """Pointwise <u, v>: sum over the sigma-coefficient axis."""
    return np.sum(u * v, axis=0)


@dataclass
class TorusField:
    """A pair (A, a) of su(2)-valued triples on the N^3 periodic grid."""

    N: int
    L: float = 2.0 * math.pi
    A: np.ndarray = None
    a: np.ndarray = None
    scheme: str = "fd4"

    def __post_init__(self):
        shape = (3, 3, self.N, self.N, self.N)
        if self.A is None:
            self.A = np.zeros(shape)
        if self.a is None:
            self.a = np.zeros(shape)
        if self.A.shape != shape or self.a.shape != shape:
            raise ValueError(f"fields must have shape {shape}")

    @property
    def h(self) -> float:
        return self.L / self.N

    def copy(self) -> "TorusField":
        return TorusField(self.N, self.L, self.A.copy(), self.a.copy(), self.scheme)

    def deriv(self, f: np.ndarray, i: int) -> np.ndarray:
        """d f / d x_{i+1} on the last three axes (periodic)."""
        ax = f.ndim - 3 + i
        if self.scheme == "fd4":
            return (
                -np.roll(f, -2, axis=ax)
                + 8.0 * np.roll(f, -1, axis=ax)
                - 8.0 * np.roll(f, 1, axis=ax)
                + np.roll(f, 2, axis=ax)
            ) / (12.0 * self.h)
        if self.scheme == "spectral":
            k = np.fft.fftfreq(self.N, d=self.h) * 2.0 * math.pi
            shape = [1] * f.ndim
            shape[ax] = self.N
            return np.fft.ifftn(
                np.fft.fftn(f, axes=(ax,)) * (1j * k.reshape(shape)), axes=(ax,)
            ).real
        raise ValueError(f"unknown scheme {self.scheme!r}")

    def integrate(self, density: np.ndarray) -> float:
        """Trapezoid = mean * volume on the periodic grid."""
        return float(np.mean(density) * self.L ** 3)


def b_field(F: TorusField) -> np.ndarray:
    """B_k = eps_kij (d_i A_j + 1/2 [A_i, A_j])."""
    out = np.zeros_like(F.A)
    for k in range(3):
        acc = 0.0
        for i in range(3):
            for j in range(3):
                e = EPS[k, i, j]
                if e == 0.0:
                    continue
                acc = acc + e * (F.deriv(F.A[j], i) + 0.5 * comm(F.A[i], F.A[j]))
        out[k] = acc
    return out


def curl_cov(F: TorusField, u: np.ndarray) -> np.ndarray:
    """(curl_A u)_k = eps_kij (d_i u_j + [A_i, u_j])."""
    out = np.zeros_like(u)
    for k in range(3):
        acc = 0.0
        for i in range(3):
            for j in range(3):
                e = EPS[k, i, j]
                if e == 0.0:
                    continue
                acc = acc + e * (F.deriv(u[j], i) + comm(F.A[i], u[j]))
        out[k] = acc
    return out


def star_wedge(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """star(u wedge v)_k = 1/2 eps_kij [u_i, v_j] (equal arguments halve)."""
    out = np.zeros_like(u)
    for k in range(3):
        acc = 0.0
        for i in range(3):
            for j in range(3):
                e = EPS[k, i, j]
                if e == 0.0:
                    continue
                acc = acc + 0.5 * e * comm(u[i], v[j])
        out[k] = acc
    return out


def div_cov(F: TorusField, u: np.ndarray) -> np.ndarray:
    """sum_i (d_i u_i + [A_i, u_i]); the constraint scalar for u = a."""
    acc = 0.0
    for i in range(3):
        acc = acc + F.deriv(u[i], i) + comm(F.A[i], u[i])
    return acc


def cs_functional(F: TorusField) -> float:
    """int ( sum_k <a_k, B_k> - <[a_1, a_2], a_3> )."""
    B = b_field(F)
    density = sum(dot(F.a[k], B[k]) for k in range(3))
    density = density - dot(comm(F.a[0], F.a[1]), F.a[2])
    return F.integrate(density)


def gradient(F: TorusField) -> tuple[np.ndarray, np.ndarray]:
    """(gA, ga) = (curl_A a, B - star(a wedge a))."""
    gA = curl_cov(F, F.a)
    ga = b_field(F) - star_wedge(F.a, F.a)
    return gA, ga


def grad_norm_sq(F: TorusField) -> float:
    gA, ga = gradient(F)
    return F.integrate(dot(gA, gA).sum(axis=0) + dot(ga, ga).sum(axis=0))


def l2_inner(F: TorusField, u1, v1, u2, v2) -> float:
    """The field-space inner product int (<u1, u2> + <v1, v2>)."""
    return F.integrate(dot(u1, u2).sum(axis=0) + dot(v1, v2).sum(axis=0))


def gradient_check(F: TorusField, direction, s_list=(1e-3, 5e-4, 2.5e-4)) -> dict:
    """Centered-difference directional derivative of cs against the inner
    product with the gradient; returns relative errors per step (O(s^2))."""
    db, dc = direction
    gA, ga = gradient(F)
    exact = l2_inner(F, gA, ga, db, dc)
    errs = {}
    for s in s_list:
        Fp = F.copy()
        Fp.A = F.A + s * db
        Fp.a = F.a + s * dc
        Fm = F.copy()
        Fm.A = F.A - s * db
        Fm.a = F.a - s * dc
        fd = (cs_functional(Fp) - cs_functional(Fm)) / (2 * s)
        errs[s] = abs(fd - exact) / max(abs(exact), 1e-14)
    return {"exact": exact, "relative_errors": errs}


# ---------------------------------------------------------------------------
# pointwise su(2) exponentials and gauge transformations


def su2_exp_coeffs(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """exp(sum v_a sigma_a) = cos|v| + sin|v|/|v| * (v . sigma): returns the
    (cos, sinc*v) data, i.e. quaternion components of the group element."""
    mag = np.sqrt(np.sum(v * v, axis=0))
    small = mag < 1e-12
    safe = np.where(small, 1.0, mag)
    sinc = np.where(small, 1.0, np.sin(safe) / safe)
    return np.cos(mag), sinc[None] * v


def _quat_mul(w1, v1, w2, v2):
    """(w1 + v1.sigma)(w2 + v2.sigma) via sigma_a sigma_b = -delta + sigma-cross.

    sigma_a sigma_b = -delta_ab - eps_abc sigma_c with this basis.
    """
    w = w1 * w2 - np.sum(v1 * v2, axis=0)
    v = w1[None] * v2 + w2[None] * v1 - np.cross(v1, v2, axis=0)
    return w, v


def _quat_conj_action(w, v, u):
    """g u g^{-1} for u = u.sigma, g = w + v.sigma (unit quaternion)."""
    # g u g^- with g^- = w - v.sigma
    wu, vu = _quat_mul(w, v, np.zeros_like(w), u)
    wf, vf = _quat_mul(wu, vu, w, -v)
    return vf


def gauge_transform(F: TorusField, phi: np.ndarray, scheme: str | None = None) -> TorusField:
    """Apply g = exp(phi . sigma): A -> g A g^-1 - (dg) g^-1, a -> g a g^-1.

    phi has shape (3, N, N, N).  The derivative of g uses the same scheme as
    the field (or the override), acting on the quaternion components.
    """
    out = F.copy()
    if scheme is not None:
        out.scheme = scheme
    w, v = su2_exp_coeffs(phi)
    for comp in range(3):
        out.A[comp] = _quat_conj_action(w, v, F.A[comp])
        out.a[comp] = _quat_conj_action(w, v, F.a[comp])
        # -(d g) g^{-1} = -(dw + dv.sigma)(w - v.sigma): su(2) part
        dw = out.deriv(w, comp)
        dv = out.deriv(v, comp)
        _, dg_part = _quat_mul(dw, dv, w, -v)
        out.A[comp] = out.A[comp] - dg_part
    out.scheme = F.scheme
    return out


def random_field(rng: np.random.Generator, N: int, L: float = 2 * math.pi,
                 amplitude: float = 1e-2, k_max: int = 1) -> TorusField:
    """Smooth random (A, a): a few low Fourier modes per component."""
    F = TorusField(N, L)
    xs = np.arange(N) * (L / N)
    X = np.meshgrid(xs, xs, xs, indexing="ij")
    w = 2 * math.pi / L
    for slot in (F.A, F.a):
        for comp in range(3):
            for _ in range(3):
                k = rng.integers(-k_max, k_max + 1, size=3)
                ph = rng.uniform(0, 2 * math.pi)
                cf = rng.normal(scale=amplitude, size=3)
                arg = w * (k[0] * X[0] + k[1] * X[1] + k[2] * X[2]) + ph
                slot[comp] += cf[:, None, None, None] * np.cos(arg)[None]
    return F


def abelian_field(N: int, L: float = 2 * math.pi, amplitude: float = 0.1) -> TorusField:
    """A = 0, a = amplitude sigma3 sin(x1) dx2: abelian, so cs vanishes."""
    F = TorusField(N, L)
    xs = np.arange(N) * (L / N)
    X1 = np.meshgrid(xs, xs, xs, indexing="ij")[0]
    F.a[1, 2] = amplitude * np.sin(2 * math.pi * X1 / L)
    return F

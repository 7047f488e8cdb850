"""Background pairs (connection, Higgs 1-form) that the linearized operator sees.

A background provides, at batched points P of shape (..., 4) with coordinates
(t, x1, x2, x3):

    A_at(P)  -> (..., 3, 2, 2)   spatial connection components (no dt part)
    a_at(P)  -> (..., 3, 2, 2)   Higgs components (no dt part, su(2) valued)

and, where the zeroth-order curvature data is needed,

    curvature_at(P) -> (E1, E2, B3) su(2) values   (all other components zero)
    dcov_a_at(P)    -> (..., 2, 2, 2, 2)  grad_i a_j for i, j in {1, 2}

Four kinds: trivial (A = a = 0 anywhere), the pole background
a_i = -sigma_i/(2t), the integer-m model family, and trigonometric
time-independent data on a flat 3-torus.
"""

from __future__ import annotations

import math

import numpy as np

from .algebra import SIGMA
from .model import AXIS_RADIUS, ModelSolution, fields

_ZERO2 = np.zeros((2, 2), dtype=complex)


def _batch(P):
    P = np.asarray(P, dtype=float)
    if P.shape[-1] != 4:
        raise ValueError("points must have shape (..., 4): (t, x1, x2, x3)")
    return P


class TrivialBackground:
    """A = 0, a = 0 on flat space; every point is admissible."""

    is_flat = True

    def domain_check(self, P) -> None:
        _batch(P)

    def A_at(self, P):
        P = _batch(P)
        return np.zeros(P.shape[:-1] + (3, 2, 2), dtype=complex)

    a_at = A_at

    def curvature_at(self, P):
        z = self.A_at(P)
        return z[..., 0, :, :], z[..., 1, :, :], z[..., 2, :, :]

    def dcov_a_at(self, P):
        P = _batch(P)
        return np.zeros(P.shape[:-1] + (2, 2, 2, 2), dtype=complex)


class NahmBackground:
    """Product connection with a_i = -sigma_i/(2t); flat, grad_i a_j = 0."""

    is_flat = True

    def domain_check(self, P) -> None:
        P = _batch(P)
        if np.any(P[..., 0] <= 0):
            raise ValueError("pole background needs t > 0")

    def A_at(self, P):
        P = _batch(P)
        return np.zeros(P.shape[:-1] + (3, 2, 2), dtype=complex)

    def a_at(self, P):
        P = _batch(P)
        self.domain_check(P)
        t = P[..., 0]
        out = np.empty(P.shape[:-1] + (3, 2, 2), dtype=complex)
        for i in range(3):
            out[..., i, :, :] = (-1.0 / (2.0 * t))[..., None, None] * SIGMA[i]
        return out

    def curvature_at(self, P):
        P = _batch(P)
        z = np.zeros(P.shape[:-1] + (2, 2), dtype=complex)
        return z, z.copy(), z.copy()

    def dcov_a_at(self, P):
        P = _batch(P)
        return np.zeros(P.shape[:-1] + (2, 2, 2, 2), dtype=complex)


class ModelBackground:
    """The integer-m model solution as an operator background.

    Points must keep |z| = |x1 + i x2| outside the axis disk; the fields are
    x3-independent and scale equivariant.  grad_i a_j for i, j in {1, 2} is
    computed with 4th-order centered differences of the closed-form fields
    plus the connection commutator (step 1e-3 of the local scale, so its
    error is far below any test stencil's).
    """

    is_flat = True
    axis_exclusion = 1e-8

    def __init__(self, m: int, ell: float = 2 * math.pi):
        self.solution = ModelSolution(m, ell)

    def domain_check(self, P) -> None:
        P = _batch(P)
        if np.any(P[..., 0] <= 0):
            raise ValueError("model background needs t > 0")
        r = np.hypot(P[..., 1], P[..., 2])
        if np.any(r < self.axis_exclusion):
            raise ValueError("point inside the excluded axis disk")

    def _fields(self, P):
        P = _batch(P)
        t = P[..., 0]
        z = P[..., 1] + 1j * P[..., 2]
        return t, z, fields(self.solution, t, z)

    def a_at(self, P):
        t, z, f = self._fields(P)
        pc = f["phi_coef"]
        out = np.empty(np.shape(t) + (3, 2, 2), dtype=complex)
        out[..., 0, :, :] = (
            pc.real[..., None, None] * SIGMA[0] + pc.imag[..., None, None] * SIGMA[1]
        )
        out[..., 1, :, :] = (
            pc.real[..., None, None] * SIGMA[1] - pc.imag[..., None, None] * SIGMA[0]
        )
        out[..., 2, :, :] = f["alpha"][..., None, None] * SIGMA[2]
        return out

    def A_at(self, P):
        t, z, f = self._fields(P)
        r2 = np.abs(z) ** 2
        r2 = np.where(r2 < AXIS_RADIUS ** 2, 1.0, r2)
        coef = f["Aphi"] / r2
        out = np.zeros(np.shape(t) + (3, 2, 2), dtype=complex)
        out[..., 0, :, :] = (-coef * z.imag)[..., None, None] * SIGMA[2]
        out[..., 1, :, :] = (coef * z.real)[..., None, None] * SIGMA[2]
        return out

    def curvature_at(self, P):
        t, z, f = self._fields(P)
        e_coef = f["e_coef"]
        e1 = (-e_coef * z.imag)[..., None, None] * SIGMA[2]
        e2 = (e_coef * z.real)[..., None, None] * SIGMA[2]
        b3 = f["b3"][..., None, None] * SIGMA[2]
        return e1, e2, b3

    def dcov_a_at(self, P):
        P = _batch(P)
        t = P[..., 0]
        r = np.hypot(P[..., 1], P[..., 2])
        h = 1e-3 * np.minimum(t, r)
        out = np.zeros(P.shape[:-1] + (2, 2, 2, 2), dtype=complex)
        A = self.A_at(P)
        a0 = self.a_at(P)
        for i in range(2):
            shifts = []
            for step in (2.0, 1.0, -1.0, -2.0):
                Q = P.copy()
                Q[..., 1 + i] = Q[..., 1 + i] + step * h
                shifts.append(self.a_at(Q))
            f2, f1, fm1, fm2 = shifts
            da = (-f2 + 8.0 * f1 - 8.0 * fm1 + fm2) / (12.0 * h)[..., None, None, None]
            for j in range(2):
                comm = A[..., i, :, :] @ a0[..., j, :, :] - a0[..., j, :, :] @ A[..., i, :, :]
                out[..., i, j, :, :] = da[..., j, :, :] + comm
        return out


class TorusTrigBackground:
    """Time-independent trigonometric (A, a) on the flat torus of side L.

    Built from a list of terms (slot, comp, k, phase, coeffs) where slot is
    'A' or 'a', comp in {0,1,2}, k an integer 3-vector, and coeffs a real
    3-vector of sigma coefficients; each term contributes
    coeffs . sigma * cos(2 pi k.x / L + phase) to that component.  Exact
    spatial derivatives are available, so curvature data is analytic.
    """

    is_flat = True

    def __init__(self, terms, L: float = 2 * math.pi):
        self.terms = list(terms)
        self.L = L

    def domain_check(self, P) -> None:
        _batch(P)

    def _sum(self, P, slot: str, deriv: int | None = None):
        P = _batch(P)
        out = np.zeros(P.shape[:-1] + (3, 2, 2), dtype=complex)
        w = 2.0 * math.pi / self.L
        for (sl, comp, k, phase, coeffs) in self.terms:
            if sl != slot:
                continue
            k = np.asarray(k, dtype=float)
            arg = w * (P[..., 1] * k[0] + P[..., 2] * k[1] + P[..., 3] * k[2]) + phase
            val = np.cos(arg)
            if deriv is not None:
                val = -np.sin(arg) * (w * k[deriv])
            mat = sum(c * s for c, s in zip(coeffs, SIGMA))
            out[..., comp, :, :] += val[..., None, None] * mat
        return out

    def A_at(self, P):
        return self._sum(P, "A")

    def a_at(self, P):
        return self._sum(P, "a")

    def dA_at(self, P, i: int):
        """Plain derivative d A / d x_{i+1}, exact."""
        return self._sum(P, "A", deriv=i)

    def da_at(self, P, i: int):
        return self._sum(P, "a", deriv=i)

    def curvature_at(self, P):
        # E_i = [grad_t, grad_i] = 0 (time independent);
        # B3 = d1 A2 - d2 A1 + [A1, A2]
        A = self.A_at(P)
        d1A = self.dA_at(P, 0)
        d2A = self.dA_at(P, 1)
        b3 = (
            d1A[..., 1, :, :]
            - d2A[..., 0, :, :]
            + A[..., 0, :, :] @ A[..., 1, :, :]
            - A[..., 1, :, :] @ A[..., 0, :, :]
        )
        z = np.zeros_like(b3)
        return z, z.copy(), b3

    def dcov_a_at(self, P):
        P = _batch(P)
        A = self.A_at(P)
        a0 = self.a_at(P)
        out = np.zeros(P.shape[:-1] + (2, 2, 2, 2), dtype=complex)
        for i in range(2):
            da = self.da_at(P, i)
            for j in range(2):
                comm = A[..., i, :, :] @ a0[..., j, :, :] - a0[..., j, :, :] @ A[..., i, :, :]
                out[..., i, j, :, :] = da[..., j, :, :] + comm
        return out


def make_background(kind: str, m: int = 1):
    """Parse 'trivial' | 'nahm' | 'model:m' into a background object."""
    if kind == "trivial":
        return TrivialBackground()
    if kind == "nahm":
        return NahmBackground()
    if kind.startswith("model"):
        if ":" in kind:
            m = int(kind.split(":", 1)[1])
        return ModelBackground(m)
    raise ValueError(f"unknown background kind {kind!r}")

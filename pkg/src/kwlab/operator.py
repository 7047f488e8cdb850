"""The linearized operator on 8-component su(2)-valued fields, three ways.

A field value is an array of shape (..., 8, 2, 2): eight sl(2,C) slots
ordered (b1, b2, b3, bt, c1, c2, c3, ct).  The operator acts as

    D psi = grad_t psi + gamma_i grad_i psi + rho_i [a_i, psi]

and is implemented in three independent forms that must agree pointwise:

    'components'  the slot-by-slot formulas using d_A, the 3D Hodge star
                  and wedge commutators,
    'matrix'      an 8x8 table of symbolic entries (d_t, grad_i, [a_i, .])
                  instantiated per point -- the reference form,
    'clifford'    the gamma/rho contraction above.

The formal L2 adjoint is D^dag = -grad_t + gamma_i grad_i + rho_i [a_i, .].

Also here: the Weitzenbock remainder X of D^dag D (an 8x8 grid of su(2)
entries acting by commutator, rows/columns 3 and 8 identically zero), the
radial factorization operator Omega on x3-invariant sections, the
automorphism Y with D Y = -Y D^dag, the flat-torus symbol spectrum of the
spatial part, and quadrature checks (adjoint duality, the Pythagoras split
of |D psi|^2, and the identification of the spatial part with the
complexified exterior-derivative complex).
"""

from __future__ import annotations

import math

import numpy as np

from .algebra import SIGMA
from .clifford import GAMMA, RHO, ad_matrix, y_auto_8

EPS3 = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    EPS3[_i, _j, _k] = 1.0
    EPS3[_j, _i, _k] = -1.0

# The 8x8 symbolic table of the operator: 'dt' means grad_t, ('d', k) means
# grad_k, ('a', k) means [a_k, .]; the integer is the sign.
_D = lambda k, s: ("d", k, s)
_A = lambda k, s: ("a", k, s)
_T = ("dt", 1)
OP_TABLE = [
    [_T, _A(3, 1), _A(2, -1), _D(1, -1), None, _D(3, 1), _D(2, -1), _A(1, 1)],
    [_A(3, -1), _T, _A(1, 1), _D(2, -1), _D(3, -1), None, _D(1, 1), _A(2, 1)],
    [_A(2, 1), _A(1, -1), _T, _D(3, -1), _D(2, 1), _D(1, -1), None, _A(3, 1)],
    [_D(1, 1), _D(2, 1), _D(3, 1), _T, _A(1, 1), _A(2, 1), _A(3, 1), None],
    [None, _D(3, 1), _D(2, -1), _A(1, -1), _T, _A(3, -1), _A(2, 1), _D(1, -1)],
    [_D(3, -1), None, _D(1, 1), _A(2, -1), _A(3, 1), _T, _A(1, -1), _D(2, -1)],
    [_D(2, 1), _D(1, -1), None, _A(3, -1), _A(2, -1), _A(1, 1), _T, _D(3, -1)],
    [_A(1, -1), _A(2, -1), _A(3, -1), None, _D(1, 1), _D(2, 1), _D(3, 1), _T],
]


def comm(x, y):
    """Batched commutator of (..., 2, 2) arrays."""
    return x @ y - y @ x


def spinor_slot_norms(v) -> np.ndarray:
    """Hermitian norm of each of the 8 slots; shape (..., 8)."""
    return np.sqrt(
        0.5 * np.einsum("...ij,...ij->...", v.conj(), v).real
    )


def spinor_norm(v) -> np.ndarray:
    return np.sqrt(np.sum(spinor_slot_norms(v) ** 2, axis=-1))


def spinor_max(v) -> float:
    return float(np.max(spinor_slot_norms(v)))


def random_spinor_coeffs(rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """A random constant spinor value, shape (8, 2, 2)."""
    c = rng.normal(scale=scale, size=(8, 3))
    return np.einsum("sa,aij->sij", c, np.stack(SIGMA))


class FuncSection:
    """A section given by a batched callable P (...,4) -> (...,8,2,2)."""

    def __init__(self, value, deriv=None):
        self._value = value
        self._deriv = deriv

    def value(self, P):
        return self._value(np.asarray(P, dtype=float))

    @property
    def has_exact_derivs(self):
        return self._deriv is not None

    def deriv(self, P, mu: int):
        if self._deriv is None:
            raise ValueError("section has no exact derivatives")
        return self._deriv(np.asarray(P, dtype=float), mu)


class GaussTrigSection(FuncSection):
    """Smooth test fields: sums of Gaussian blobs in (t, x1, x2) times a
    circle harmonic in x3, with exact derivatives.

    blobs: list of (amp (8,3) real, center (3,), width, n_x3, phase).
    """

    def __init__(self, blobs, ell: float = 2 * math.pi):
        self.blobs = [
            (np.einsum("sa,aij->sij", np.asarray(a, float), np.stack(SIGMA)),
             np.asarray(c, float), float(s), int(n), float(ph))
            for (a, c, s, n, ph) in blobs
        ]
        self.ell = ell
        super().__init__(self._val, self._der)

    def _envelopes(self, P):
        w = 2 * math.pi / self.ell
        out = []
        for amp, c, s, n, ph in self.blobs:
            d = P[..., :3] - c
            g = np.exp(-np.sum(d * d, axis=-1) / (2 * s * s))
            trig = np.cos(n * w * P[..., 3] + ph)
            out.append((amp, d, s, n, ph, g, trig, w))
        return out

    def _val(self, P):
        out = 0.0
        for amp, d, s, n, ph, g, trig, w in self._envelopes(P):
            out = out + (g * trig)[..., None, None, None] * amp
        return out

    def _der(self, P, mu):
        out = 0.0
        for amp, d, s, n, ph, g, trig, w in self._envelopes(P):
            if mu < 3:
                f = -d[..., mu] / (s * s) * g * trig
            else:
                f = -g * np.sin(n * w * P[..., 3] + ph) * n * w
            out = out + f[..., None, None, None] * amp
        return out


def random_section(rng: np.random.Generator, center=(1.0, 0.0, 0.0), spread=0.8,
                   n_blobs: int = 3, ell: float = 2 * math.pi) -> GaussTrigSection:
    blobs = []
    for _ in range(n_blobs):
        amp = rng.normal(size=(8, 3))
        c = np.asarray(center, float) + rng.uniform(-spread, spread, size=3)
        s = rng.uniform(0.6, 1.4)
        n = int(rng.integers(0, 3))
        ph = rng.uniform(0, 2 * math.pi)
        blobs.append((amp, c, s, n, ph))
    return GaussTrigSection(blobs, ell=ell)


class TorusTrigSection(FuncSection):
    """Periodic test fields on the torus, optionally with a Gaussian factor
    in t; exact derivatives.

    terms: list of (amp (8,3) real, k (3,) int, phase); value is
    sum amp cos(2 pi k.x / L + phase) times the t-envelope.
    """

    def __init__(self, terms, L: float = 2 * math.pi, t_center=None, t_width: float = 0.5):
        self.terms = [
            (np.einsum("sa,aij->sij", np.asarray(a, float), np.stack(SIGMA)),
             np.asarray(k, float), float(ph))
            for (a, k, ph) in terms
        ]
        self.L = L
        self.t_center = t_center
        self.t_width = t_width
        super().__init__(self._val, self._der)

    def _env(self, P):
        if self.t_center is None:
            return np.ones(P.shape[:-1]), np.zeros(P.shape[:-1])
        u = (P[..., 0] - self.t_center) / self.t_width
        g = np.exp(-0.5 * u * u)
        return g, -u / self.t_width * g

    def _val(self, P):
        w = 2 * math.pi / self.L
        g, _ = self._env(P)
        out = 0.0
        for amp, k, ph in self.terms:
            arg = w * np.einsum("...i,i->...", P[..., 1:], k) + ph
            out = out + (g * np.cos(arg))[..., None, None, None] * amp
        return out

    def _der(self, P, mu):
        w = 2 * math.pi / self.L
        g, dg = self._env(P)
        out = 0.0
        for amp, k, ph in self.terms:
            arg = w * np.einsum("...i,i->...", P[..., 1:], k) + ph
            if mu == 0:
                f = dg * np.cos(arg)
            else:
                f = -g * np.sin(arg) * w * k[mu - 1]
            out = out + f[..., None, None, None] * amp
        return out


def random_torus_section(rng: np.random.Generator, k_max: int = 2, n_terms: int = 4,
                         L: float = 2 * math.pi, t_center=None, t_width=0.5) -> TorusTrigSection:
    terms = []
    for _ in range(n_terms):
        amp = rng.normal(size=(8, 3))
        k = rng.integers(-k_max, k_max + 1, size=3)
        terms.append((amp, k, rng.uniform(0, 2 * math.pi)))
    return TorusTrigSection(terms, L=L, t_center=t_center, t_width=t_width)


def covariant_grads(bg, sec, P, h: float | None, order: int = 2):
    """(value, grads) with grads[..., mu, 8, 2, 2] = grad_mu psi for mu = t,1,2,3.

    Exact derivatives are used when h is None and the section provides them;
    otherwise centered differences of order 2 or 4 at step h.  The connection
    commutator [A_mu, psi] is added for the three spatial directions.
    """
    P = np.asarray(P, dtype=float)
    val = sec.value(P)
    grads = np.empty(P.shape[:-1] + (4,) + val.shape[len(P.shape[:-1]):], dtype=complex)
    if h is None:
        if not getattr(sec, "has_exact_derivs", False):
            raise ValueError("need a step h for a section without exact derivatives")
        for mu in range(4):
            grads[..., mu, :, :, :] = sec.deriv(P, mu)
    else:
        if order == 2:
            steps, weights = (1.0, -1.0), (0.5, -0.5)
        elif order == 4:
            steps, weights = (2.0, 1.0, -1.0, -2.0), (-1 / 12, 8 / 12, -8 / 12, 1 / 12)
        else:
            raise ValueError("order must be 2 or 4")
        shifted = []
        for mu in range(4):
            for s in steps:
                Q = P.copy()
                Q[..., mu] += s * h
                shifted.append(Q)
        stack = sec.value(np.stack(shifted))
        idx = 0
        for mu in range(4):
            acc = 0.0
            for w in weights:
                acc = acc + w * stack[idx]
                idx += 1
            grads[..., mu, :, :, :] = acc / h
    A = bg.A_at(P)
    for i in range(3):
        Ai = A[..., i, :, :][..., None, :, :]
        grads[..., 1 + i, :, :, :] += comm(Ai, val)
    return val, grads


def _assemble_components(val, grads, a):
    """Slot formulas: the 1-form/function split with d_A, star and wedges."""
    b = val[..., 0:3, :, :]
    bt = val[..., 3, :, :]
    c = val[..., 4:7, :, :]
    ct = val[..., 7, :, :]
    g = grads  # (..., mu, slot, 2, 2)
    out = np.empty_like(val)
    for k in range(3):
        pk = g[..., 0, k, :, :] - g[..., 1 + k, 3, :, :] + comm(a[..., k, :, :], ct)
        qk = g[..., 0, 4 + k, :, :] - g[..., 1 + k, 7, :, :] - comm(a[..., k, :, :], bt)
        for i in range(3):
            for j in range(3):
                e = EPS3[k, i, j]
                if e == 0.0:
                    continue
                pk = pk - e * g[..., 1 + i, 4 + j, :, :] - e * comm(b[..., i, :, :], a[..., j, :, :])
                qk = qk - e * g[..., 1 + i, j, :, :] + e * comm(c[..., i, :, :], a[..., j, :, :])
        out[..., k, :, :] = pk
        out[..., 4 + k, :, :] = qk
    pt = g[..., 0, 3, :, :]
    qt = g[..., 0, 7, :, :]
    for i in range(3):
        pt = pt + g[..., 1 + i, i, :, :] + comm(a[..., i, :, :], c[..., i, :, :])
        qt = qt + g[..., 1 + i, 4 + i, :, :] - comm(a[..., i, :, :], b[..., i, :, :])
    out[..., 3, :, :] = pt
    out[..., 7, :, :] = qt
    return out


def _assemble_matrix(val, grads, a, dt_sign: float = 1.0):
    """Instantiate the symbolic 8x8 table entry by entry."""
    out = np.zeros_like(val)
    for r in range(8):
        acc = 0.0
        for col in range(8):
            entry = OP_TABLE[r][col]
            if entry is None:
                continue
            if entry[0] == "dt":
                acc = acc + dt_sign * grads[..., 0, col, :, :]
            elif entry[0] == "d":
                _, k, s = entry
                acc = acc + s * grads[..., k, col, :, :]
            else:
                _, k, s = entry
                acc = acc + s * comm(a[..., k - 1, :, :], val[..., col, :, :])
        out[..., r, :, :] = acc
    return out


def _assemble_clifford(val, grads, a, dt_sign: float = 1.0, skip_gamma3: bool = False):
    out = dt_sign * grads[..., 0, :, :, :]
    for i in range(3):
        if skip_gamma3 and i == 2:
            continue
        out = out + np.einsum("rs,...sij->...rij", GAMMA[i].astype(float), grads[..., 1 + i, :, :, :])
    for i in range(3):
        ai = a[..., i, :, :][..., None, :, :]
        out = out + np.einsum("rs,...sij->...rij", RHO[i].astype(float), comm(ai, val))
    return out


def apply_D(bg, sec, P, h: float | None = 1e-5, depiction: str = "matrix",
            order: int = 2):
    """D psi at P in the chosen depiction; the three agree pointwise."""
    bg.domain_check(P)
    val, grads = covariant_grads(bg, sec, P, h, order)
    a = bg.a_at(P)
    if depiction == "components":
        return _assemble_components(val, grads, a)
    if depiction == "matrix":
        return _assemble_matrix(val, grads, a)
    if depiction == "clifford":
        return _assemble_clifford(val, grads, a)
    raise ValueError(f"unknown depiction {depiction!r}")


def apply_D_dagger(bg, sec, P, h: float | None = 1e-5, order: int = 2):
    """The formal L2 adjoint: -grad_t + gamma_i grad_i + rho_i [a_i, .]."""
    bg.domain_check(P)
    val, grads = covariant_grads(bg, sec, P, h, order)
    return _assemble_clifford(val, grads, bg.a_at(P), dt_sign=-1.0)


def apply_spatial(bg, sec, P, h: float | None = 1e-5, order: int = 2):
    """D minus its grad_t term (the symmetric spatial part)."""
    bg.domain_check(P)
    val, grads = covariant_grads(bg, sec, P, h, order)
    return _assemble_clifford(val, grads, bg.a_at(P), dt_sign=0.0)


def apply_Xi(bg, sec, P, h: float | None = 1e-5, order: int = 2):
    """D minus its gamma3 grad_3 term (acts within x3-invariant sections)."""
    bg.domain_check(P)
    val, grads = covariant_grads(bg, sec, P, h, order)
    return _assemble_clifford(val, grads, bg.a_at(P), skip_gamma3=True)


# ---------------------------------------------------------------------------
# Weitzenbock remainder


def x_blocks(bg, P) -> np.ndarray:
    """The remainder of D^dag D as an 8x8 grid of su(2) entries, (...,8,8,2,2).

    Entry (r, s) acts on slot s by commutator and contributes to output
    slot r.  Rows/columns 3 and 8 (0-indexed 2 and 7) vanish identically.
    Valid for x3-invariant flat backgrounds.
    """
    P = np.asarray(P, dtype=float)
    e1, e2, b3 = bg.curvature_at(P)
    dca = bg.dcov_a_at(P)
    a = bg.a_at(P)
    c12 = comm(a[..., 0, :, :], a[..., 1, :, :])
    c23 = comm(a[..., 1, :, :], a[..., 2, :, :])
    c31 = comm(a[..., 2, :, :], a[..., 0, :, :])
    A11 = dca[..., 0, 0, :, :]
    A12 = dca[..., 0, 1, :, :]
    A21 = dca[..., 1, 0, :, :]
    A22 = dca[..., 1, 1, :, :]
    # First-derivative blocks: the operator algebra gives
    # sum_{ij} gamma_i rho_j ad(grad_i a_j), whose (b1,b2)x(c1,c2) entries are
    # the symmetrized combinations below (equal to 2 grad_i a_j on
    # x3-invariant solutions, where A11 = -A22 and A12 = A21).  Extracted on
    # basis spinors, the remainder confirms these and every other entry.
    S11 = A11 - A22
    S12 = A12 + A21
    X = np.zeros(P.shape[:-1] + (8, 8, 2, 2), dtype=complex)
    X[..., 0, 1, :, :] = -2 * b3
    X[..., 0, 3, :, :] = 2 * e1
    X[..., 0, 4, :, :] = -S11
    X[..., 0, 5, :, :] = -S12
    X[..., 0, 6, :, :] = 2 * e2
    X[..., 1, 0, :, :] = 2 * b3
    X[..., 1, 3, :, :] = 2 * e2
    X[..., 1, 4, :, :] = -S12
    X[..., 1, 5, :, :] = S11
    X[..., 1, 6, :, :] = -2 * e1
    X[..., 3, 0, :, :] = -2 * e1
    X[..., 3, 1, :, :] = -2 * e2
    X[..., 3, 4, :, :] = 2 * c23
    X[..., 3, 5, :, :] = 2 * c31
    X[..., 3, 6, :, :] = 2 * c12 - 2 * b3
    X[..., 4, 0, :, :] = S11
    X[..., 4, 1, :, :] = S12
    X[..., 4, 3, :, :] = -2 * c23
    X[..., 4, 5, :, :] = -2 * c12
    X[..., 4, 6, :, :] = 2 * c31
    X[..., 5, 0, :, :] = S12
    X[..., 5, 1, :, :] = -S11
    X[..., 5, 3, :, :] = -2 * c31
    X[..., 5, 4, :, :] = 2 * c12
    X[..., 5, 6, :, :] = -2 * c23
    X[..., 6, 0, :, :] = -2 * e2
    X[..., 6, 1, :, :] = 2 * e1
    X[..., 6, 3, :, :] = -2 * c12 + 2 * b3
    X[..., 6, 4, :, :] = -2 * c31
    X[..., 6, 5, :, :] = 2 * c23
    return X


def apply_x(X, val):
    """Apply an x_blocks grid to a spinor value: out_r = sum_s [X_rs, val_s]."""
    out = np.zeros_like(val)
    for r in range(8):
        acc = 0.0
        for s in range(8):
            acc = acc + comm(X[..., r, s, :, :], val[..., s, :, :])
        out[..., r, :, :] = acc
    return out


def x_matrix24(bg, p) -> np.ndarray:
    """The remainder at a single point as a real 24x24 matrix (sigma basis)."""
    X = x_blocks(bg, np.asarray(p, float))
    out = np.zeros((24, 24))
    for r in range(8):
        for s in range(8):
            out[3 * r:3 * r + 3, 3 * s:3 * s + 3] = ad_matrix(X[r, s])
    return out


def bochner_block_report(bg, p, h: float = 5e-4, tol: float = 1e-3) -> dict:
    """Extract the true remainder on the 24 basis spinors and diff it
    blockwise against the assembled grid.

    Any block whose mismatch exceeds tol (relative to the larger of the two
    block norms, floor 1) is flagged rather than silently absorbed; healthy
    backgrounds produce an empty flag list.
    """
    p = np.asarray(p, dtype=float)
    m_true = np.zeros((24, 24))
    for s in range(8):
        for aa in range(3):
            v = np.zeros((8, 2, 2), dtype=complex)
            v[s] = SIGMA[aa]
            sec = FuncSection(lambda P, v=v: np.broadcast_to(v, P.shape[:-1] + (8, 2, 2)).copy())
            out = bochner_check(bg, sec, p, h)["remainder"]
            for r in range(8):
                for bb in range(3):
                    m_true[3 * r + bb, 3 * s + aa] = (
                        -0.5 * np.trace(SIGMA[bb] @ out[r])
                    ).real
    m_asm = x_matrix24(bg, p)
    flagged = []
    worst = 0.0
    for r in range(8):
        for s in range(8):
            bt = m_true[3 * r:3 * r + 3, 3 * s:3 * s + 3]
            ba = m_asm[3 * r:3 * r + 3, 3 * s:3 * s + 3]
            scale = max(np.linalg.norm(bt), np.linalg.norm(ba), 1.0)
            d = float(np.linalg.norm(bt - ba) / scale)
            worst = max(worst, d)
            if d > tol:
                flagged.append({"block": (r + 1, s + 1), "relative_diff": d})
    return {"flagged_blocks": flagged, "worst_block_diff": worst}


def laplacian_cov(bg, sec, P, h: float, order: int = 2):
    """sum_mu grad_mu grad_mu psi by nested centered differences."""
    def first(mu):
        def f(Q):
            _, g = covariant_grads(bg, sec, Q, h, order)
            return g[..., mu, :, :, :]
        return FuncSection(f)

    P = np.asarray(P, dtype=float)
    out = 0.0
    for mu in range(4):
        _, g2 = covariant_grads(bg, first(mu), P, h, order)
        out = out + g2[..., mu, :, :, :]
    return out


def bochner_check(bg, sec, p, h: float) -> dict:
    """Compare D^dag D - (grad^dag grad + sum_i [a_i, [., a_i]]) with the
    assembled remainder at a point; returns the residual and both sides.
    """
    p = np.asarray(p, dtype=float)
    inner_D = FuncSection(lambda Q: apply_D(bg, sec, Q, h, depiction="clifford"))
    ddag_d = apply_D_dagger(bg, inner_D, p, h)
    lap = laplacian_cov(bg, sec, p, h)
    val = sec.value(p)
    a = bg.a_at(p)
    commterm = 0.0
    for i in range(3):
        ai = a[..., i, :, :][..., None, :, :]
        commterm = commterm + comm(ai, comm(val, ai))
    remainder = ddag_d + lap - commterm
    xpsi = apply_x(x_blocks(bg, p), val)
    resid = spinor_max(remainder - xpsi)
    scale = max(spinor_max(xpsi), spinor_max(remainder), 1e-30)
    return {"residual": resid, "scale": scale, "remainder": remainder, "x_psi": xpsi}


# ---------------------------------------------------------------------------
# Radial factorization and the algebraic automorphism


def _apply_endo8(m8, val):
    return np.einsum("rs,...sij->...rij", np.asarray(m8, dtype=float), val)


def u_inv_section(sec) -> FuncSection:
    """The section q -> U(q)^{-1} psi(q); U = (t + z1 g1 + z2 g2)/x."""

    def value(P):
        P = np.asarray(P, dtype=float)
        x = np.sqrt(P[..., 0] ** 2 + P[..., 1] ** 2 + P[..., 2] ** 2)
        u = (
            P[..., 0][..., None, None] * np.eye(8)
            + P[..., 1][..., None, None] * GAMMA[0]
            + P[..., 2][..., None, None] * GAMMA[1]
        ) / x[..., None, None]
        uinv = np.swapaxes(u, -1, -2)  # orthogonal
        return np.einsum("...rs,...sij->...rij", uinv, sec.value(P))

    return FuncSection(value)


def omega_apply(bg, sec, p, h: float) -> np.ndarray:
    """Omega xi = x (Xi(U^{-1} xi) - grad_x xi) at p, for x3-invariant xi.

    Omega commutes with both grad_x and multiplication by x, so it is
    invariant under the coordinate rescaling (t, z) -> (lambda t, lambda z).
    """
    p = np.asarray(p, dtype=float)
    x = math.sqrt(p[0] ** 2 + p[1] ** 2 + p[2] ** 2)
    term1 = apply_Xi(bg, u_inv_section(sec), p, h)
    _, g = covariant_grads(bg, sec, p, h)
    nabla_x = (p[0] * g[0] + p[1] * g[1] + p[2] * g[2]) / x
    return x * (term1 - nabla_x)


def apply_q_endo(val):
    """Q = rho1 rho2 - [sigma3, .] acting on a spinor value."""
    out = _apply_endo8(RHO[0] @ RHO[1], val)
    s3 = SIGMA[2]
    return out - (np.einsum("ij,...sjk->...sik", s3, val) - np.einsum("...sij,jk->...sik", val, s3))


def y_apply(val):
    return _apply_endo8(y_auto_8(), val)


def y_intertwine(bg, sec, p, h: float) -> float:
    """|D(Y psi) + Y(D^dag psi)| at p (should vanish identically)."""
    ysec = FuncSection(lambda Q: y_apply(sec.value(Q)))
    lhs = apply_D(bg, ysec, p, h, depiction="clifford")
    rhs = y_apply(apply_D_dagger(bg, sec, p, h))
    return spinor_max(lhs + rhs)


# ---------------------------------------------------------------------------
# Flat-torus symbol spectrum of the spatial part


def lattice_L_spectrum(k_max: int, L: float = 2 * math.pi) -> list[dict]:
    """Eigenvalues of the spatial-part symbol per Fourier mode |k|_inf <= k_max.

    At the trivial background the symbol of gamma_i grad_i on the mode
    exp(i k.x) is i (gamma . k) (2 pi / L), Hermitian with eigenvalues
    +-|k| (2 pi / L); each value carries multiplicity 12 on the 24-dim
    fiber (4 from the component index times 3 su(2) directions).
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    w = 2 * math.pi / L
    out = []
    rng = range(-k_max, k_max + 1)
    for k1 in rng:
        for k2 in rng:
            for k3 in rng:
                gk = w * (k1 * GAMMA[0] + k2 * GAMMA[1] + k3 * GAMMA[2])
                ev = np.linalg.eigvalsh(1j * gk.astype(complex))
                ev24 = np.repeat(np.sort(ev), 3)
                out.append({"k": (k1, k2, k3), "eigenvalues": ev24})
    return out


def smallest_nonzero_symbol_eig(k_max: int, L: float = 2 * math.pi) -> float:
    vals = []
    for entry in lattice_L_spectrum(k_max, L):
        vals.extend(abs(v) for v in entry["eigenvalues"] if abs(v) > 1e-12)
    return min(vals)


# ---------------------------------------------------------------------------
# Quadrature checks on periodic boxes


def _box_grid(t_range, nt, nx, L):
    t = np.linspace(t_range[0], t_range[1], nt)
    xs = np.arange(nx) * (L / nx)
    T, X1, X2, X3 = np.meshgrid(t, xs, xs, xs, indexing="ij")
    P = np.stack([T, X1, X2, X3], axis=-1)
    wt = np.full(nt, t_range[1] - t_range[0]) / (nt - 1)
    wt[0] *= 0.5
    wt[-1] *= 0.5
    vol_x = (L / nx) ** 3
    return P, wt, vol_x


def _pair(u, v):
    """Pointwise spinor pairing sum_slots <u_s, v_s> (Hermitian form)."""
    return 0.5 * np.einsum("...sij,...sij->...", u.conj(), v).real


def duality_gap(bg, psi, xi, t_range=(0.5, 3.5), nt=40, nx=8, L=2 * math.pi,
                h: float | None = None) -> float:
    """| int <D psi, xi> - int <psi, D^dag xi> | over a periodic box.

    psi and xi should decay at both t endpoints (Gaussian t-envelopes well
    inside the range); trapezoid in t, exact trapezoid in the periodic
    directions.
    """
    P, wt, vol_x = _box_grid(t_range, nt, nx, L)
    dpsi = apply_D(bg, psi, P, h, depiction="clifford")
    ddagxi = apply_D_dagger(bg, xi, P, h)
    xival = xi.value(P)
    psival = psi.value(P)
    f1 = _pair(dpsi, xival)
    f2 = _pair(psival, ddagxi)
    i1 = np.sum(np.einsum("t...,t->t...", f1, wt)) * vol_x
    i2 = np.sum(np.einsum("t...,t->t...", f2, wt)) * vol_x
    norm1 = np.sum(np.einsum("t...,t->t...", _pair(psival, psival), wt)) * vol_x
    return abs(i1 - i2) / max(1.0, norm1)


def pythagoras_gap(bg, psi, t_range=(0.5, 3.5), nt=40, nx=8, L=2 * math.pi,
                   h: float | None = None) -> dict:
    """For t-independent backgrounds: int |D psi|^2 against
    int |grad_t psi|^2 + int |L psi|^2 (cross term drops by symmetry of the
    spatial part); returns both sides and the relative gap.
    """
    P, wt, vol_x = _box_grid(t_range, nt, nx, L)
    val, grads = covariant_grads(bg, psi, P, h if h is not None else None)
    a = bg.a_at(P)
    dpsi = _assemble_clifford(val, grads, a)
    lpsi = _assemble_clifford(val, grads, a, dt_sign=0.0)
    tpsi = grads[..., 0, :, :, :]

    def integ(f):
        return float(np.sum(np.einsum("t...,t->t...", f, wt)) * vol_x)

    lhs = integ(_pair(dpsi, dpsi))
    rhs = integ(_pair(tpsi, tpsi)) + integ(_pair(lpsi, lpsi))
    return {"lhs": lhs, "rhs": rhs, "rel_gap": abs(lhs - rhs) / max(abs(lhs), 1e-30)}


# ---------------------------------------------------------------------------
# Identification of the spatial part with the complexified complex


def spatial_identification(bg, sec, P) -> float:
    """Residual of the identification of the spatial part of the operator
    with -(star d_C eta + d_{C*} v, d_C^dag eta) in the complexified picture,
    where eta = b + i c, v = ct + i bt, C = A + i a and C* = A - i a.

    The section must provide exact derivatives (trigonometric fields) so the
    comparison is free of differencing error.
    """
    P = np.asarray(P, dtype=float)
    if not getattr(sec, "has_exact_derivs", False):
        raise ValueError("spatial identification wants exact derivatives")
    val, grads = covariant_grads(bg, sec, P, None)
    a = bg.a_at(P)
    A = bg.A_at(P)
    out = _assemble_clifford(val, grads, a, dt_sign=0.0)
    # complexified data
    eta = val[..., 0:3, :, :] + 1j * val[..., 4:7, :, :]
    v = val[..., 7, :, :] + 1j * val[..., 3, :, :]
    # plain spatial derivatives of eta and v (strip the connection addition)
    d_eta = np.empty(P.shape[:-1] + (3, 3, 2, 2), dtype=complex)  # (mu, comp)
    d_v = np.empty(P.shape[:-1] + (3, 2, 2), dtype=complex)
    for mu in range(3):
        db = sec.deriv(P, 1 + mu)
        d_eta[..., mu, :, :, :] = db[..., 0:3, :, :] + 1j * db[..., 4:7, :, :]
        d_v[..., mu, :, :] = db[..., 7, :, :] + 1j * db[..., 3, :, :]
    Cp = A + 1j * a  # connection C
    Cm = A - 1j * a  # connection C*
    # star d_C eta: (d_C eta)_{ij} = grad_i eta_j - grad_j eta_i
    grad_eta = np.empty_like(d_eta)
    for mu in range(3):
        for j in range(3):
            grad_eta[..., mu, j, :, :] = d_eta[..., mu, j, :, :] + comm(Cp[..., mu, :, :], eta[..., j, :, :])
    star_d_eta = np.empty(P.shape[:-1] + (3, 2, 2), dtype=complex)
    for k in range(3):
        acc = 0.0
        for i in range(3):
            for j in range(3):
                if EPS3[k, i, j] != 0.0:
                    acc = acc + EPS3[k, i, j] * grad_eta[..., i, j, :, :]
        star_d_eta[..., k, :, :] = acc
    # d_{C*} v
    d_cstar_v = np.empty(P.shape[:-1] + (3, 2, 2), dtype=complex)
    for mu in range(3):
        d_cstar_v[..., mu, :, :] = d_v[..., mu, :, :] + comm(Cm[..., mu, :, :], v)
    # d_C^dag eta = -sum_i grad^{C*}_i eta_i
    ddag = 0.0
    for i in range(3):
        ddag = ddag - (d_eta[..., i, i, :, :] + comm(Cm[..., i, :, :], eta[..., i, :, :]))
    # assemble the complexified image of the spatial operator output
    form1 = out[..., 4:7, :, :] + 1j * out[..., 0:3, :, :]   # q + i p
    form0 = out[..., 3, :, :] + 1j * out[..., 7, :, :]       # pt + i qt
    want1 = -(star_d_eta + d_cstar_v)
    want0 = -ddag
    r1 = float(np.max(np.abs(form1 - want1)))
    r0 = float(np.max(np.abs(form0 - want0)))
    return max(r1, r0)

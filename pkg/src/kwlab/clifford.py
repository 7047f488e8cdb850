"""The 8x8 Clifford generators and every constant endomorphism built from them.

Two triples of integer 8x8 matrices, gamma_{1,2,3} and rho_{1,2,3}, generate
the algebra:

    gamma_i gamma_j + gamma_j gamma_i = -2 delta_ij
    rho_i  rho_j  + rho_j  rho_i   = -2 delta_ij
    gamma_i rho_j + rho_j gamma_i  = 0

All six are antisymmetric, traceless, with entries in {-1, 0, 1} and a single
nonzero entry per row, so every relation check below is exact integer
arithmetic.  The gamma_i are precisely the coefficient matrices of the three
spatial derivative slots in the 8x8 form of the linearized operator, and the
rho_i the coefficient matrices of the three Higgs-commutator slots.

Constant 24x24 endomorphisms acting on 8-component su(2)-valued vectors are
assembled as Kronecker products: an 8x8 matrix acts on the component index,
and ad(xi) (a real 3x3 matrix in the sigma-coefficient basis) acts on the
su(2) values.
"""

from __future__ import annotations

import numpy as np

from .algebra import SIGMA, bracket, su2_to_coeffs

_G1 = [
    [0, 0, 0, -1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, -1, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, -1],
    [0, 0, 1, 0, 0, 0, 0, 0],
    [0, -1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0],
]
_G2 = [
    [0, 0, 0, 0, 0, 0, -1, 0],
    [0, 0, 0, -1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, -1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, -1],
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0],
]
_G3 = [
    [0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, -1, 0, 0, 0],
    [0, 0, 0, -1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0],
    [-1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, -1],
    [0, 0, 0, 0, 0, 0, 1, 0],
]
_R1 = [
    [0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 1, 0, 0, 0, 0, 0],
    [0, -1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, -1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, -1, 0],
    [0, 0, 0, 0, 0, 1, 0, 0],
    [-1, 0, 0, 0, 0, 0, 0, 0],
]
_R2 = [
    [0, 0, -1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1],
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, -1, 0, 0, 0, 0],
    [0, 0, 0, 0, -1, 0, 0, 0],
    [0, -1, 0, 0, 0, 0, 0, 0],
]
_R3 = [
    [0, 1, 0, 0, 0, 0, 0, 0],
    [-1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, -1, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, -1, 0, 0, 0, 0],
    [0, 0, -1, 0, 0, 0, 0, 0],
]

GAMMA = tuple(np.array(m, dtype=np.int64) for m in (_G1, _G2, _G3))
RHO = tuple(np.array(m, dtype=np.int64) for m in (_R1, _R2, _R3))

_I8 = np.eye(8, dtype=np.int64)
_I3 = np.eye(3)


def load_clifford() -> dict[str, np.ndarray]:
    """The six generators, as exact integer matrices."""
    return {
        "gamma1": GAMMA[0].copy(),
        "gamma2": GAMMA[1].copy(),
        "gamma3": GAMMA[2].copy(),
        "rho1": RHO[0].copy(),
        "rho2": RHO[1].copy(),
        "rho3": RHO[2].copy(),
    }


def relation_checks() -> list[tuple[str, bool]]:
    """Every defining relation, checked in integer arithmetic (zero tolerance)."""
    out: list[tuple[str, bool]] = []
    for name, mats in (("gamma", GAMMA), ("rho", RHO)):
        for i in range(3):
            m = mats[i]
            out.append((f"{name}{i+1} antisymmetric", bool(np.array_equal(m.T, -m))))
            out.append((f"{name}{i+1} traceless", int(np.trace(m)) == 0))
            out.append(
                (
                    f"{name}{i+1} one nonzero entry per row, entries in {{-1,0,1}}",
                    bool(
                        np.all(np.sum(m != 0, axis=1) == 1)
                        and np.all(np.isin(m, [-1, 0, 1]))
                    ),
                )
            )
    for i in range(3):
        for j in range(3):
            gg = GAMMA[i] @ GAMMA[j] + GAMMA[j] @ GAMMA[i]
            rr = RHO[i] @ RHO[j] + RHO[j] @ RHO[i]
            gr = GAMMA[i] @ RHO[j] + RHO[j] @ GAMMA[i]
            want = -2 * _I8 if i == j else 0 * _I8
            out.append((f"gamma{i+1} gamma{j+1} anticommutator", bool(np.array_equal(gg, want))))
            out.append((f"rho{i+1} rho{j+1} anticommutator", bool(np.array_equal(rr, want))))
            out.append((f"gamma{i+1} rho{j+1} anticommute", bool(np.array_equal(gr, 0 * _I8))))
    # Parity consequences of the anticommutation table: an even product of
    # rho's commutes with each gamma, the odd product rho1 rho2 rho3
    # anticommutes with each gamma.
    r12 = RHO[0] @ RHO[1]
    r123 = RHO[0] @ RHO[1] @ RHO[2]
    for i in range(3):
        out.append(
            (
                f"rho1 rho2 commutes with gamma{i+1}",
                bool(np.array_equal(r12 @ GAMMA[i], GAMMA[i] @ r12)),
            )
        )
        out.append(
            (
                f"rho1 rho2 rho3 anticommutes with gamma{i+1}",
                bool(np.array_equal(r123 @ GAMMA[i], -GAMMA[i] @ r123)),
            )
        )
    return out


def assert_relations() -> None:
    bad = [name for name, ok in relation_checks() if not ok]
    if bad:
        raise AssertionError(f"Clifford relations violated: {bad}")


def ad_matrix(xi: np.ndarray) -> np.ndarray:
    """Real 3x3 matrix of ad(xi) = [xi, .] in the sigma-coefficient basis.

    Antisymmetric whenever xi is su(2).
    """
    cols = [su2_to_coeffs(bracket(xi, SIGMA[a])) for a in range(3)]
    return np.array(cols, dtype=float).T


def comp_action(m8: np.ndarray) -> np.ndarray:
    """Lift an 8x8 component-index matrix to the 24-dim space (trivial on su(2))."""
    return np.kron(np.asarray(m8, dtype=float), _I3)


def value_action(xi: np.ndarray) -> np.ndarray:
    """Lift ad(xi) on su(2) values to the 24-dim space (trivial on components)."""
    return np.kron(np.eye(8), ad_matrix(xi))


def q_endo() -> np.ndarray:
    """Q = rho1 rho2 - [sigma3, .] as a real antisymmetric 24x24 matrix."""
    return comp_action(RHO[0] @ RHO[1]) - value_action(SIGMA[2])


def l_endo() -> np.ndarray:
    """L: psi -> -rho1 rho2 gamma3 (-psi_0 sigma3 + psi_perp); symmetric, L^2 = 1."""
    reflect = np.diag([1.0, 1.0, -1.0])  # flips the sigma3 coefficient
    return -np.kron((RHO[0] @ RHO[1] @ GAMMA[2]).astype(float), reflect)


def y_auto_8() -> np.ndarray:
    """The 8x8 automorphism gamma1 gamma2 gamma3 rho1 rho2 rho3; squares to -1."""
    return (GAMMA[0] @ GAMMA[1] @ GAMMA[2] @ RHO[0] @ RHO[1] @ RHO[2]).astype(float)


def y_endo() -> np.ndarray:
    return comp_action(y_auto_8())


def u_endo(t: float, z1: float, z2: float) -> np.ndarray:
    """U = (t + z1 gamma1 + z2 gamma2) / x with x = sqrt(t^2+z1^2+z2^2); orthogonal."""
    x = np.sqrt(t * t + z1 * z1 + z2 * z2)
    if x == 0.0:
        raise ValueError("U is undefined at the origin")
    return (t * np.eye(8) + z1 * GAMMA[0] + z2 * GAMMA[1]) / x


def higgs_commutator_endo(a_components) -> np.ndarray:
    """sum_i rho_i [a_i, .] as a 24x24 matrix, for su(2) values a_i."""
    out = np.zeros((24, 24))
    for i in range(3):
        out += np.kron(RHO[i].astype(float), ad_matrix(a_components[i]))
    return out


def nahm_pole_endo(t: float) -> np.ndarray:
    """rho_i [a_i, .] at the Nahm pole a_i = -sigma_i/(2t); symmetric 24x24."""
    if t <= 0:
        raise ValueError(f"need t > 0, got {t}")
    return higgs_commutator_endo([-s / (2.0 * t) for s in SIGMA])


def nahm_pole_spectrum(t: float) -> tuple[np.ndarray, dict[float, int]]:
    """Eigenvalues of the Nahm-pole endomorphism and their multiplicities.

    The eigenvalue set is {-2/t, -1/t, 1/t, 2/t}; the multiplicities are
    computed, not asserted, and sum to 24.
    """
    evals = np.linalg.eigvalsh(nahm_pole_endo(t))
    mult: dict[float, int] = {}
    for lam in evals:
        key = round(float(lam) * t)  # cluster at the exact values k/t
        mult[key] = mult.get(key, 0) + 1
    return evals, {k / t: v for k, v in sorted(mult.items())}


def antisymmetric_spectrum(m: np.ndarray, tol: float = 1e-10) -> list[float]:
    """Imaginary parts of the eigenvalues of a real antisymmetric matrix.

    Returned sorted; the real parts are checked to vanish to tol.
    """
    evals = np.linalg.eigvals(np.asarray(m, dtype=float))
    if np.max(np.abs(evals.real)) > tol:
        raise ValueError("matrix is not antisymmetric enough: real eigenvalue parts")
    return sorted(float(v) for v in evals.imag)


def derived_endos() -> dict[str, np.ndarray]:
    return {"Q": q_endo(), "L": l_endo(), "Y": y_auto_8()}


assert_relations()

"""su(2) / sl(2,C) arithmetic with the sign conventions used throughout.

Basis: sigma_i = i * (i-th Pauli matrix), so that

    sigma_i^2 = -1,   sigma_1 sigma_2 = -sigma_3   (cyclic).

Note the minus sign in the product rule; it is deliberate and the whole
package depends on it.  The product table is asserted on import so a wrong
realization fails immediately.

Inner product on su(2): <u, v> = -1/2 trace(u v), which makes
{sigma_1, sigma_2, sigma_3} orthonormal.  On sl(2,C) the same bilinear
trace pairing is kept, and the positive-definite Hermitian product is
<u, v>_H = 1/2 trace(u^dag v) (equivalently <star(u) v> with
star(u) = -u^dag).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TOL_ALGEBRA = 1e-12

_PAULI = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)

#: sigma_i = i * Pauli_i, anti-Hermitian, traceless, sigma1 sigma2 = -sigma3
SIGMA = tuple(1j * p for p in _PAULI)

IDENTITY2 = np.eye(2, dtype=complex)

# Raising/lowering combinations: E_PLUS spans L^+, E_MINUS spans L^-.
E_PLUS = SIGMA[0] - 1j * SIGMA[1]
E_MINUS = SIGMA[0] + 1j * SIGMA[1]


def basis_sigma(i: int) -> np.ndarray:
    """Return sigma_i for i in {1, 2, 3} (copies, safe to mutate)."""
    if i not in (1, 2, 3):
        raise ValueError(f"sigma index must be 1, 2 or 3, got {i}")
    return SIGMA[i - 1].copy()


def inner(u: np.ndarray, v: np.ndarray) -> complex:
    """Trace pairing -1/2 trace(u v); real and >= 0 on su(2) diagonal."""
    return -0.5 * np.trace(u @ v)


def herm_inner(u: np.ndarray, v: np.ndarray) -> complex:
    """Positive-definite Hermitian product 1/2 trace(u^dag v) on sl(2,C)."""
    return 0.5 * np.trace(u.conj().T @ v)


def norm(u: np.ndarray) -> float:
    """Hermitian norm; agrees with sqrt(inner(u,u)) on su(2)."""
    return float(np.sqrt(max(herm_inner(u, u).real, 0.0)))


def bracket(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Commutator u v - v u."""
    return u @ v - v @ u


def star(v: np.ndarray) -> np.ndarray:
    """The involution v -> -v^dag; fixes su(2), swaps L^+ and L^-."""
    return -v.conj().T


def is_traceless(u: np.ndarray, tol: float = TOL_ALGEBRA) -> bool:
    return abs(np.trace(u)) <= tol


def is_su2(u: np.ndarray, tol: float = TOL_ALGEBRA) -> bool:
    """Anti-Hermitian and traceless."""
    return is_traceless(u, tol) and np.max(np.abs(u + u.conj().T)) <= tol


def su2_to_coeffs(u: np.ndarray) -> np.ndarray:
    """Coefficients (v1,v2,v3) with u = sum v_a sigma_a; real for su(2) input."""
    c = np.array([inner(basis_sigma(a), u) for a in (1, 2, 3)])
    if np.max(np.abs(c.imag)) <= 1e-12:
        return c.real
    return c


def coeffs_to_su2(v) -> np.ndarray:
    v = np.asarray(v)
    return v[0] * SIGMA[0] + v[1] * SIGMA[1] + v[2] * SIGMA[2]


@dataclass
class LDecomp:
    """Decomposition of an sl(2,C) element along L^+ + C sigma_3 + L^-.

    L^+/- are the +-1 eigenspaces of ad(i/2 sigma_3); with the sigma
    realization above, [i/2 sigma_3, sigma_1 - i sigma_2] = +(sigma_1 - i sigma_2),
    so L^+ = C (sigma_1 - i sigma_2) and L^- = C (sigma_1 + i sigma_2).
    (The same subspaces are the -i / +i eigenspaces of ad(1/2 sigma_3).)
    """

    plus: np.ndarray
    zero: complex
    minus: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return self.plus + self.zero * SIGMA[2] + self.minus


def l_decompose(v: np.ndarray) -> LDecomp:
    """Split v in sl(2,C) into its L^+, C sigma_3 and L^- parts.

    With v = [[a, b], [c, -a]]: the sigma_3 coefficient is -i a, the L^-
    part is proportional to the upper-triangular generator and the L^+
    part to the lower-triangular one.
    """
    a = v[0, 0]
    b = v[0, 1]
    c = v[1, 0]
    zero = -1j * a
    plus = (-1j * c / 2.0) * E_PLUS
    minus = (-1j * b / 2.0) * E_MINUS
    return LDecomp(plus=plus, zero=zero, minus=minus)


def ad_half_isigma3(v: np.ndarray) -> np.ndarray:
    """[i/2 sigma_3, v]; L^+ and L^- are its +-1 eigenspaces."""
    return bracket(0.5j * SIGMA[2], v)


def random_su2(rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    return coeffs_to_su2(rng.normal(scale=scale, size=3))


def random_sl2c(rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    re = rng.normal(scale=scale, size=3)
    im = rng.normal(scale=scale, size=3)
    return coeffs_to_su2(re + 1j * im)


def _assert_product_table() -> None:
    """Fail fast if the realized basis violates the product conventions."""
    s1, s2, s3 = SIGMA
    checks = [
        (s1 @ s1, -IDENTITY2),
        (s2 @ s2, -IDENTITY2),
        (s3 @ s3, -IDENTITY2),
        (s1 @ s2, -s3),
        (s2 @ s3, -s1),
        (s3 @ s1, -s2),
    ]
    for got, want in checks:
        if np.max(np.abs(got - want)) > 1e-14:
            raise AssertionError("sigma basis violates its product table")
    # phi = sigma1 - i sigma2 must be the +1 eigenvector of ad(i/2 sigma3)
    if np.max(np.abs(ad_half_isigma3(E_PLUS) - E_PLUS)) > 1e-14:
        raise AssertionError("L^+ eigenvector convention broken")


_assert_product_table()

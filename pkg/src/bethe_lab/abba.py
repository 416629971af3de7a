"""Algebraic Bethe ansatz operators for the periodic spin-1/2 XXX chain.

The monodromy matrix is the ordered product T(L) = L_n(L) ... L_1(L) of
local operators

    L_k(L) = L * I (x) 1 + (i/2) sum_a sigma^a (x) sigma^a_k,

viewed as a 2x2 matrix [[A, B], [C, D]] over the auxiliary space.  B
builds magnons on the all-up vacuum; A + D is the transfer matrix whose
logarithmic derivative at L = i/2 reproduces the Hamiltonian.

Everything here is computed by applying the site-by-site block recursion
directly to state vectors (or to matrix column stacks), which keeps the
cost at O(n 2^n) per application and lets the same code run either in
complex128 or, for the severely cancelling Nepomechie-Wang vectors, in
mpmath arbitrary precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from . import hilbert
from .baesolver import RootSet, TOL_EQUAL, TOL_SINGULAR, singular_partners

C1_SCHEME = "c1"
C2_SCHEME = "c2"
NAIVE_SCHEME = "naive"

# below this value of epsilon^n the vector cancellation outruns float64
AUTO_MP_THRESHOLD = 1e-8


class PoleError(ValueError):
    """Evaluation requested at a pole of the expression."""


class SingularRootError(ValueError):
    """Plain Bethe vector is undefined at the pair {i/2, -i/2}."""


@dataclass(frozen=True)
class RegularizationParams:
    """Perturbation L1 = i/2 + eps + c eps^n, L2 = -i/2 + eps."""

    epsilon: float
    c: complex
    scheme: str = C1_SCHEME

    def __post_init__(self):
        if not 0 < self.epsilon <= 0.1:
            raise ValueError("epsilon must lie in (0, 0.1]")
        if not (math.isfinite(self.c.real) and math.isfinite(self.c.imag)):
            raise ValueError("regularization constant must be finite")


@dataclass
class MonodromyBlocks:
    """Dense auxiliary-space blocks of the monodromy matrix at one rapidity."""

    lam: complex
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray

    @property
    def tau(self) -> np.ndarray:
        return self.a + self.d


def r_matrix(lam: complex) -> np.ndarray:
    """4x4 rational R-matrix (1/(L+i)) ((L/2 + i) I + (L/2) sum sigma (x) sigma)."""
    lam = complex(lam)
    if abs(lam + 1j) < 1e-12:
        raise PoleError("R-matrix has a pole at lambda = -i")
    ss = sum(np.kron(hilbert.PAULI[a], hilbert.PAULI[a]) for a in (1, 2, 3))
    return ((lam / 2 + 1j) * np.eye(4, dtype=complex) + (lam / 2) * ss) / (lam + 1j)


def l_operator(k: int, lam: complex, n: int) -> list[list[np.ndarray]]:
    """The 2x2 auxiliary-space blocks of L_k as dense 2^n matrices."""
    lam = complex(lam)
    eye = np.eye(1 << n, dtype=complex)
    s1 = hilbert.pauli_site(1, k, n)
    s2 = hilbert.pauli_site(2, k, n)
    s3 = hilbert.pauli_site(3, k, n)
    return [
        [lam * eye + 0.5j * s3, 0.5j * (s1 - 1j * s2)],
        [0.5j * (s1 + 1j * s2), lam * eye - 0.5j * s3],
    ]


def _site_flip(psi: np.ndarray, select: np.ndarray, partner: np.ndarray) -> np.ndarray:
    """sigma^{+/-}_k action: rows in ``select`` copy their bit-flipped partner."""
    out = np.zeros_like(psi)
    out[select] = psi[partner[select]]
    return out


def apply_monodromy(lam, n: int, psi: np.ndarray):
    """Apply the four monodromy blocks at rapidity ``lam`` to ``psi``.

    ``psi`` has shape (2^n,) or (2^n, m); returns (A psi, B psi, C psi,
    D psi).  Passing an mpmath rapidity together with an object-dtype
    ``psi`` runs the recursion in arbitrary precision.
    """
    dim = 1 << n
    psi = np.asarray(psi)
    if psi.shape[0] != dim:
        raise ValueError(f"state vector has dim {psi.shape[0]}, expected {dim}")
    mp_mode = isinstance(lam, (mp.mpf, mp.mpc)) or psi.dtype == object
    if mp_mode:
        lam = mp.mpc(lam)
        half_i = mp.mpc(0, 0.5)
        unit_i = mp.mpc(0, 1)
    else:
        lam = complex(lam)
        half_i = 0.5j
        unit_i = 1j
    b_idx = np.arange(dim)
    extra = (1,) * (psi.ndim - 1)
    a = bv = c = d = None
    for k in range(1, n + 1):
        mask = 1 << (n - k)
        down = (b_idx & mask) != 0
        partner = b_idx ^ mask
        zsign = np.where(down, -1.0, 1.0)
        dplus = (lam + half_i * zsign).reshape(dim, *extra)
        dminus = (lam - half_i * zsign).reshape(dim, *extra)
        if k == 1:
            a = dplus * psi
            bv = unit_i * _site_flip(psi, down, partner)
            c = unit_i * _site_flip(psi, ~down, partner)
            d = dminus * psi
        else:
            a, bv, c, d = (
                dplus * a + unit_i * _site_flip(c, down, partner),
                dplus * bv + unit_i * _site_flip(d, down, partner),
                unit_i * _site_flip(a, ~down, partner) + dminus * c,
                unit_i * _site_flip(bv, ~down, partner) + dminus * d,
            )
    return a, bv, c, d


def monodromy(lam: complex, n: int) -> MonodromyBlocks:
    """Dense monodromy blocks, built by applying the recursion to the identity."""
    hilbert._check_n(n)
    eye = np.eye(1 << n, dtype=complex)
    a, b, c, d = apply_monodromy(lam, n, eye)
    return MonodromyBlocks(complex(lam), a, b, c, d)


def transfer_matrix(lam: complex, n: int) -> np.ndarray:
    blocks = monodromy(lam, n)
    return blocks.tau


def transfer_apply(lam, n: int, psi: np.ndarray) -> np.ndarray:
    """(A + D) psi without building dense blocks."""
    a, _, _, d = apply_monodromy(lam, n, psi)
    return a + d


def _check_regular_roots(roots, tol_equal=TOL_EQUAL, tol_singular=TOL_SINGULAR):
    roots = [complex(z) for z in roots]
    for i, zi in enumerate(roots):
        for zj in roots[i + 1 :]:
            if abs(zi - zj) <= tol_equal:
                raise ValueError(f"coinciding rapidities {zi} and {zj}")
    for z in roots:
        if min(abs(z - 0.5j), abs(z + 0.5j)) <= tol_singular:
            raise SingularRootError(
                "rapidity at +/- i/2; build the state with regularized_nw_vector"
            )
    return roots


def bethe_vector(rootset: RootSet) -> np.ndarray:
    """B(L_1) ... B(L_ell) |0>, living in the ell-magnon sector."""
    roots = _check_regular_roots(rootset.roots)
    psi = hilbert.vacuum_state(rootset.n)
    for lam in roots:
        psi = apply_monodromy(lam, rootset.n, psi)[1]
    return psi


def perturbed_singular_roots(others, n: int, params: RegularizationParams):
    """Regularized rapidity list (L1, L2, L3, ...) for a singular solution."""
    eps = params.epsilon
    lam1 = 0.5j + eps + params.c * eps**n
    lam2 = -0.5j + eps
    return [lam1, lam2, *[complex(z) for z in others]]


def _auto_dps(eps: float, n: int) -> int:
    return 30 + int(math.ceil(-n * math.log10(eps)))


def regularized_nw_vector(
    rootset: RootSet, params: RegularizationParams, dps: int | None = None
) -> np.ndarray:
    """The Nepomechie-Wang vector eps^-n B(L1) B(L2) B(L3) ... |0>.

    For a physical singular solution this converges, as eps -> 0, to a
    non-zero eigenvector of the Hamiltonian.  The product collapses by a
    factor eps^n, so once eps^n falls below float64 resolution the
    recursion is run in mpmath (``dps=None`` selects the precision
    automatically; ``dps=0`` forces float64).
    """
    n = rootset.n
    others = singular_partners(rootset.roots)
    if others is None:
        raise ValueError("root set does not contain the singular pair {i/2, -i/2}")
    eps = params.epsilon
    if dps is None:
        dps = _auto_dps(eps, n) if eps**n < AUTO_MP_THRESHOLD else 0
    if dps == 0:
        psi = hilbert.vacuum_state(n)
        for lam in reversed(perturbed_singular_roots(others, n, params)):
            psi = apply_monodromy(lam, n, psi)[1]
        return psi / eps**n
    with mp.workdps(dps):
        eps_mp = mp.mpf(eps)
        c_mp = mp.mpc(params.c)
        lam1 = mp.mpc(0, 0.5) + eps_mp + c_mp * eps_mp**n
        lam2 = mp.mpc(0, -0.5) + eps_mp
        lams = [lam1, lam2] + [mp.mpc(z) for z in others]
        psi = np.array([mp.mpc(0)] * (1 << n), dtype=object)
        psi[0] = mp.mpc(1)
        for lam in reversed(lams):
            psi = apply_monodromy(lam, n, psi)[1]
        psi = psi / eps_mp**n
        return np.array([complex(z) for z in psi], dtype=complex)


@dataclass
class RegularizationSweep:
    """Convergence record of the regularized vector along an epsilon ladder.

    ``residuals`` are the per-rung values ||H psi - E psi|| / ||psi||;
    they shrink linearly in epsilon (the perturbation drags the state
    direction at first order), so the zero-epsilon state is estimated by
    first-order Richardson extrapolation of adjacent rungs.
    ``limit_residuals`` and ``angles`` track those extrapolated
    directions; the last entries certify the limit.
    """

    scheme: str
    epsilons: tuple[float, ...]
    residuals: tuple[float, ...]
    limit_residuals: tuple[float, ...]
    angles: tuple[float, ...]
    converged: bool
    vectors: list[np.ndarray]
    limit_vector: np.ndarray | None

    @property
    def limit_residual(self) -> float:
        return self.limit_residuals[-1] if self.limit_residuals else float("inf")


def _phase_align(reference: np.ndarray, vec: np.ndarray) -> np.ndarray:
    overlap = np.vdot(reference, vec)
    if abs(overlap) == 0:
        return vec
    return vec * (overlap.conjugate() / abs(overlap))


def regularization_sweep(
    rootset: RootSet,
    c: complex,
    scheme: str = C1_SCHEME,
    ladder: tuple[float, ...] = (1e-2, 5e-3, 2.5e-3),
    j: float = 1.0,
    energy: float | None = None,
    dps: int | None = None,
) -> RegularizationSweep:
    """Track the eigenvector residual of the regularized vector as eps shrinks.

    Convergence requires the per-rung residuals to decrease
    monotonically and the direction of the extrapolated limit to move by
    less than 1e-3 radians between the last two ladder steps.  The
    residual is measured against the supplied energy (Rayleigh quotient
    when omitted).
    """
    if len(ladder) < 2:
        raise ValueError("the epsilon ladder needs at least two rungs")
    h = hilbert.hamiltonian(rootset.n, j)

    def resid(vec: np.ndarray) -> float:
        e = energy if energy is not None else float(np.real(vec.conj() @ (h @ vec)))
        return float(np.linalg.norm(h @ vec - e * vec))

    vectors: list[np.ndarray] = []
    residuals: list[float] = []
    for eps in ladder:
        psi = regularized_nw_vector(
            rootset, RegularizationParams(eps, complex(c), scheme), dps=dps
        )
        norm = np.linalg.norm(psi)
        if norm > 0:
            psi = psi / norm
            if vectors:
                psi = _phase_align(vectors[-1], psi)
            residuals.append(resid(psi))
        else:
            residuals.append(float("inf"))
        vectors.append(psi)

    limit_vectors: list[np.ndarray] = []
    limit_residuals: list[float] = []
    for (ea, va), (eb, vb) in zip(zip(ladder, vectors), zip(ladder[1:], vectors[1:])):
        lim = (ea * vb - eb * va) / (ea - eb)
        norm = np.linalg.norm(lim)
        if norm == 0:
            continue
        lim = lim / norm
        limit_vectors.append(lim)
        limit_residuals.append(resid(lim))
    angles = []
    for prev, cur in zip(limit_vectors, limit_vectors[1:]):
        overlap = min(1.0, abs(np.vdot(prev, cur)))
        angles.append(float(math.acos(overlap)))
    monotone = all(b < a for a, b in zip(residuals, residuals[1:]))
    converged = (
        monotone
        and bool(angles)
        and angles[-1] < 1e-3
        and bool(limit_residuals)
        and limit_residuals[-1] <= 1e-3
    )
    return RegularizationSweep(
        scheme,
        tuple(ladder),
        tuple(residuals),
        tuple(limit_residuals),
        tuple(angles),
        converged,
        vectors,
        limit_vectors[-1] if limit_vectors else None,
    )


def transfer_eigenvalue(lam: complex, roots, n: int | None = None) -> complex:
    """Transfer-matrix eigenvalue on the Bethe state with the given roots.

    (L + i/2)^n prod (L - L_j - i)/(L - L_j)
      + (L - i/2)^n prod (L_j - L - i)/(L_j - L)
    """
    if isinstance(roots, RootSet):
        n = roots.n
        roots = roots.roots
    if n is None:
        raise ValueError("n required when passing a bare root sequence")
    lam = complex(lam)
    first = (lam + 0.5j) ** n
    second = (lam - 0.5j) ** n
    for z in roots:
        z = complex(z)
        if abs(lam - z) < 1e-12:
            raise PoleError(f"evaluation point collides with root {z}")
        first *= (lam - z - 1j) / (lam - z)
        second *= (z - lam - 1j) / (z - lam)
    return first + second


def unwanted_term(lam: complex, k: int, roots, n: int | None = None) -> complex:
    """Coefficient of the k-th unwanted term in tau acting on a Bethe state.

    Vanishes exactly when the k-th Bethe equation holds; for the
    regularized singular pair it scales like eps^(n+1).
    """
    if isinstance(roots, RootSet):
        n = roots.n
        roots = roots.roots
    if n is None:
        raise ValueError("n required when passing a bare root sequence")
    roots = [complex(z) for z in roots]
    lam = complex(lam)
    lk = roots[k]
    if abs(lam - lk) < 1e-12:
        raise PoleError("evaluation point collides with the selected root")
    plus = (lk + 0.5j) ** n
    minus = (lk - 0.5j) ** n
    for j_, z in enumerate(roots):
        if j_ == k:
            continue
        plus *= (lk - z - 1j) / (lk - z)
        minus *= (z - lk - 1j) / (z - lk)
    return 1j / (lam - lk) * (plus - minus)

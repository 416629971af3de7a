"""Energy evaluation for regular and physical singular Bethe solutions.

Regular solutions use the closed form

    E = -(J/2) sum_j 1 / (L_j^2 + 1/4).

Singular solutions {i/2, -i/2, L_3, ...} regularized the Nepomechie-Wang
way carry the finite energy

    E = -J - (J/2) sum_{j>=3} 1 / (L_j^2 + 1/4),

and both are cross-checked here against the independent route

    E = (J/2) (i d/dL log Lambda(L)|_{L=i/2} - n)

with the derivative taken by central differences of the transfer-matrix
eigenvalue, extrapolated in epsilon for the singular case.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abba import (
    C1_SCHEME,
    C2_SCHEME,
    NAIVE_SCHEME,
    RegularizationParams,
    perturbed_singular_roots,
    transfer_eigenvalue,
)
from .baesolver import RootSet, nw_constants, singular_partners

REGULAR_FORMULA = "regular_formula"
NW_THEOREM = "nw_theorem"
LAMBDA_LOGDERIV = "lambda_logderiv"

IMAG_LEAK_TOL = 1e-8


class DegenerateDenominatorError(ZeroDivisionError):
    """Transfer eigenvalue vanishes at i/2; the log-derivative is undefined."""


@dataclass(frozen=True)
class EnergyResult:
    energy: float
    method: str
    imag_leak: float

    @property
    def valid(self) -> bool:
        return self.imag_leak <= IMAG_LEAK_TOL


def _pack(value: complex, method: str) -> EnergyResult:
    return EnergyResult(float(value.real) + 0.0, method, abs(value.imag))


def energy_regular(rootset: RootSet, j: float = 1.0) -> EnergyResult:
    """Closed-form energy of a regular solution, in units of J."""
    if singular_partners(rootset.roots) is not None:
        raise ValueError("singular root set; use energy_nw")
    total = 0j
    for z in rootset.roots:
        total += 1.0 / (complex(z) ** 2 + 0.25)
    return _pack(-(j / 2.0) * total, REGULAR_FORMULA)


def energy_nw(rootset: RootSet, j: float = 1.0) -> EnergyResult:
    """Finite energy of a regularized singular solution, in units of J."""
    others = singular_partners(rootset.roots)
    if others is None:
        raise ValueError("root set does not contain the singular pair {i/2, -i/2}")
    total = 0j
    for z in others:
        total += 1.0 / (complex(z) ** 2 + 0.25)
    return _pack(-j - (j / 2.0) * total, NW_THEOREM)


def energy_of(rootset: RootSet, j: float = 1.0) -> EnergyResult:
    """Dispatch on the classification tag."""
    from .baesolver import PHYSICAL_SINGULAR, REGULAR

    if rootset.classification == REGULAR:
        return energy_regular(rootset, j)
    if rootset.classification == PHYSICAL_SINGULAR:
        return energy_nw(rootset, j)
    raise ValueError(f"no energy defined for classification {rootset.classification!r}")


def _logderiv_value(roots, n: int, j: float, h: float) -> complex:
    lam0 = 0.5j
    lam_val = transfer_eigenvalue(lam0, roots, n)
    if abs(lam_val) < 1e-100:
        raise DegenerateDenominatorError(
            "transfer eigenvalue vanishes at i/2; cannot form the log-derivative"
        )
    deriv = (
        transfer_eigenvalue(lam0 + h, roots, n)
        - transfer_eigenvalue(lam0 - h, roots, n)
    ) / (2.0 * h)
    return (j / 2.0) * (1j * deriv / lam_val - n)


def _scheme_constant(rootset: RootSet, scheme: str) -> complex:
    if scheme == NAIVE_SCHEME:
        return 0j
    c1, c2 = nw_constants(rootset)
    if scheme == C1_SCHEME:
        return c1
    if scheme == C2_SCHEME:
        return c2
    raise ValueError(f"unknown regularization scheme {scheme!r}")


def energy_logderiv(
    rootset: RootSet,
    j: float = 1.0,
    eps_ladder: tuple[float, ...] = (1e-2, 5e-3, 2.5e-3),
    scheme: str = C1_SCHEME,
    h: float = 1e-6,
) -> EnergyResult:
    """Energy via the log-derivative of the transfer eigenvalue at i/2.

    Regular sets are evaluated directly; singular ones are evaluated on
    the regularized roots for each epsilon of the ladder and Richardson
    extrapolated (first order) from the two smallest epsilons.
    """
    n = rootset.n
    others = singular_partners(rootset.roots)
    if others is None:
        return _pack(_logderiv_value(rootset.roots, n, j, h), LAMBDA_LOGDERIV)
    if len(eps_ladder) < 2:
        raise ValueError("singular extrapolation needs at least two epsilon values")
    c = _scheme_constant(rootset, scheme)
    values = []
    for eps in eps_ladder:
        roots = perturbed_singular_roots(others, n, RegularizationParams(eps, c, scheme))
        values.append(_logderiv_value(roots, n, j, h))
    e1, e2 = eps_ladder[-2], eps_ladder[-1]
    extrap = (e1 * values[-1] - e2 * values[-2]) / (e1 - e2)
    return _pack(extrap, LAMBDA_LOGDERIV)


def derivation_step_ratios(
    rootset: RootSet, epsilon: float, scheme: str = C1_SCHEME
) -> tuple[complex, complex]:
    """The two scalar checkpoints of the singular-energy derivation.

    Splitting i dLambda/dL at L = i/2 into the no-derivative piece A_0
    and the per-root pieces A_j, the ratio A_0 / Lambda(i/2) equals n
    identically, while (A_1 + A_2) / Lambda(i/2) tends to -2 as the
    regularization is removed.  Both ratios are returned at the given
    epsilon.
    """
    n = rootset.n
    others = singular_partners(rootset.roots)
    if others is None:
        raise ValueError("step ratios are defined for singular root sets")
    c = _scheme_constant(rootset, scheme)
    roots = perturbed_singular_roots(others, n, RegularizationParams(epsilon, c, scheme))
    lam0 = 0.5j
    denom = 1j**n
    for z in roots:
        denom *= (z + 0.5j) / (z - 0.5j)
    a0 = 1j * n * (lam0 + 0.5j) ** (n - 1)
    for z in roots:
        a0 *= (lam0 - z - 1j) / (lam0 - z)
    pair_sum = 0j
    for jj in (0, 1):
        aj = 1j * (lam0 + 0.5j) ** n * 1j / (roots[jj] - lam0) ** 2
        for m, z in enumerate(roots):
            if m == jj:
                continue
            aj *= (lam0 - z - 1j) / (lam0 - z)
        pair_sum += aj
    return a0 / denom, pair_sum / denom

"""Numerical solver and classifier for the Bethe ansatz equations.

The Bethe equations for the length-n XXX chain,

    ((L_k + i/2)/(L_k - i/2))^n = prod_{j != k} (L_k - L_j + i)/(L_k - L_j - i),

are handled in the pole-free polynomial form

    F_k = (L_k + i/2)^n prod_{j != k} (L_k - L_j - i)
        - (L_k - i/2)^n prod_{j != k} (L_k - L_j + i) = 0.

Singular solutions contain the exact pair {i/2, -i/2}; fixing that pair
and cancelling its contribution leaves the reduced system

    G_k = (L_k + i/2)^(n-1) (L_k - 3i/2) prod' (L_k - L_j - i)
        - (L_k - i/2)^(n-1) (L_k + 3i/2) prod' (L_k - L_j + i) = 0

for the remaining roots, which is what the dedicated singular pass
solves.  A singular solution is physical when the two admissible
regularization constants agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

import numpy as np

REGULAR = "regular"
PHYSICAL_SINGULAR = "physical_singular"
NONPHYSICAL_SINGULAR = "nonphysical_singular"
STRANGE = "strange"
UNCLASSIFIED = "unclassified"

TOL_EQUAL = 1e-9
TOL_SINGULAR = 1e-6
DEDUP_TOL = 1e-7
NEWTON_TOL = 1e-11

_DIVERGED_ABS = 50.0  # iterates beyond this radius are written off


class StrangeRootsError(ValueError):
    """Root set has coinciding components (violates the Pauli principle)."""


@dataclass(frozen=True)
class RootSet:
    """A candidate or confirmed solution of the Bethe equations."""

    n: int
    roots: tuple[complex, ...]
    classification: str = UNCLASSIFIED
    residual: float = float("nan")

    @property
    def ell(self) -> int:
        return len(self.roots)

    def is_singular(self) -> bool:
        return singular_partners(self.roots) is not None


@dataclass(frozen=True)
class SolverConfig:
    max_newton_iters: int = 60
    newton_tol: float = NEWTON_TOL
    n_random_starts: int = 300  # per seed family and sector
    seed: int = 42
    seed_strategies: frozenset[str] = frozenset(
        {"random_real", "random_complex", "string_hypothesis", "symmetric_pairs"}
    )
    tol_equal: float = TOL_EQUAL
    tol_singular: float = TOL_SINGULAR
    dedup_tol: float = DEDUP_TOL
    # converged iterates whose roots huddle closer than this are Newton
    # stalls at a coincident-root (strange) zero, where the Jacobian
    # degenerates; they are snapped to the coincident representative
    # rather than refined.  Genuine desk-scale solutions keep their
    # roots separated by > 1e-2.
    strange_guard: float = 1e-4

    def __post_init__(self):
        if self.max_newton_iters < 1:
            raise ValueError("max_newton_iters must be >= 1")
        for name in ("newton_tol", "tol_equal", "tol_singular", "dedup_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class NewtonResult:
    converged: bool
    roots: tuple[complex, ...]
    residual: float
    iterations: int
    message: str = ""


def canonical_roots(roots) -> tuple[complex, ...]:
    """Deterministic root order: descending real part, then descending imag."""
    key = lambda z: (-round(z.real, 9), -round(z.imag, 9))
    return tuple(sorted((complex(z) for z in roots), key=key))


def singular_partners(roots, tol: float = TOL_SINGULAR):
    """If the set contains the pair {i/2, -i/2}, return the other roots."""
    roots = [complex(z) for z in roots]
    i_up = [k for k, z in enumerate(roots) if abs(z - 0.5j) <= tol]
    i_dn = [k for k, z in enumerate(roots) if abs(z + 0.5j) <= tol]
    if not i_up or not i_dn:
        return None
    drop = {i_up[0], i_dn[0]}
    return tuple(z for k, z in enumerate(roots) if k not in drop)


def _has_duplicates(roots, tol: float) -> bool:
    roots = list(roots)
    return any(
        abs(a - b) <= tol for a, b in itertools.combinations(roots, 2)
    )


def _power_sums(roots) -> np.ndarray:
    z = np.asarray(roots, dtype=complex)
    return np.array([np.sum(z**m) for m in range(1, len(z) + 1)])


def multiset_eq(a, b, tol: float) -> bool:
    """Whether two root multisets coincide within ``tol`` per root."""
    a = [complex(z) for z in a]
    b = [complex(z) for z in b]
    if len(a) != len(b):
        return False
    if len(a) == 0:
        return True
    scale = max(1.0, max(abs(z) for z in a + b))
    if np.abs(_power_sums(a) - _power_sums(b)).max() > 10 * tol * len(a) * scale ** len(a):
        return False
    # confirm with an exact min-over-permutations matching (ell is small)
    best = min(
        max(abs(x - y) for x, y in zip(a, perm))
        for perm in itertools.permutations(b)
    )
    return best <= tol


def _is_self_conjugate(roots, tol: float) -> bool:
    return multiset_eq(roots, [z.conjugate() for z in roots], tol)


# ---------------------------------------------------------------------------
# residual system, batched over starts
# ---------------------------------------------------------------------------


def _system(lam: np.ndarray, n: int, reduced: bool):
    """F and its scale for a batch of root vectors, shape (batch, m)."""
    bsz, m = lam.shape
    u = lam + 0.5j
    v = lam - 0.5j
    if reduced:
        p = n - 1
        em = lam - 1.5j
        ep = lam + 1.5j
    else:
        p = n
        em = np.ones_like(lam)
        ep = np.ones_like(lam)
    diff = lam[:, :, None] - lam[:, None, :]
    dm = diff - 1j
    dp = diff + 1j
    eye = np.eye(m, dtype=bool)
    dm[:, eye] = 1.0
    dp[:, eye] = 1.0
    pm = dm.prod(axis=2)
    pp = dp.prod(axis=2)
    f = u**p * em * pm - v**p * ep * pp
    scale = np.abs(u) ** p * np.abs(em) * np.abs(dm).prod(axis=2) + np.abs(
        v
    ) ** p * np.abs(ep) * np.abs(dp).prod(axis=2)
    return f, scale, (u, v, em, ep, dm, dp, pm, pp, p)


def _residuals(lam: np.ndarray, n: int, reduced: bool) -> np.ndarray:
    f, scale, _ = _system(lam, n, reduced)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(scale > 0, np.abs(f) / np.maximum(scale, 1e-300), np.abs(f))
    r = np.where(np.isfinite(r), r, np.inf)
    return r.max(axis=1)


def _jacobian(lam: np.ndarray, n: int, reduced: bool):
    """Analytic Jacobian dF_k/dL_m for the batch, plus F itself."""
    bsz, m = lam.shape
    f, _, (u, v, em, ep, dm, dp, pm, pp, p) = _system(lam, n, reduced)
    de = 1.0 if reduced else 0.0
    jac = np.zeros((bsz, m, m), dtype=complex)
    idx = list(range(m))
    for k in range(m):
        # leave-one-out products over j != k, mm
        loo_m = {}
        loo_p = {}
        for mm in range(m):
            if mm == k:
                continue
            keep = [j for j in idx if j != k and j != mm]
            loo_m[mm] = dm[:, k, keep].prod(axis=1) if keep else np.ones(bsz, dtype=complex)
            loo_p[mm] = dp[:, k, keep].prod(axis=1) if keep else np.ones(bsz, dtype=complex)
        sum_m = sum(loo_m.values()) if loo_m else np.zeros(bsz, dtype=complex)
        sum_p = sum(loo_p.values()) if loo_p else np.zeros(bsz, dtype=complex)
        jac[:, k, k] = (
            (p * u[:, k] ** (p - 1) * em[:, k] + u[:, k] ** p * de) * pm[:, k]
            + u[:, k] ** p * em[:, k] * sum_m
            - (p * v[:, k] ** (p - 1) * ep[:, k] + v[:, k] ** p * de) * pp[:, k]
            - v[:, k] ** p * ep[:, k] * sum_p
        )
        for mm in range(m):
            if mm == k:
                continue
            jac[:, k, mm] = (
                -u[:, k] ** p * em[:, k] * loo_m[mm]
                + v[:, k] ** p * ep[:, k] * loo_p[mm]
            )
    return f, jac


def _batch_newton(starts: np.ndarray, n: int, cfg: SolverConfig, reduced: bool):
    """Damped Newton on every start; returns (roots, residuals, converged, iters)."""
    lam = np.array(starts, dtype=complex)
    bsz, m = lam.shape
    res = _residuals(lam, n, reduced)
    iters = np.zeros(bsz, dtype=int)
    dead = ~np.isfinite(res)
    for _ in range(cfg.max_newton_iters):
        active = (res > cfg.newton_tol) & ~dead
        if not active.any():
            break
        ai = np.where(active)[0]
        f, jac = _jacobian(lam[ai], n, reduced)
        try:
            step = np.linalg.solve(jac, -f[..., None])[..., 0]
        except np.linalg.LinAlgError:
            step = -(np.linalg.pinv(jac) @ f[..., None])[..., 0]
        step = np.where(np.isfinite(step), step, 0.0)
        # keep steps bounded; Newton far from a root can explode
        norms = np.abs(step).max(axis=1)
        big = norms > 4.0
        step[big] *= (4.0 / norms[big])[:, None]

        alpha = np.ones(len(ai))
        cur = res[ai]
        cand = lam[ai] + step
        cand_res = _residuals(cand, n, reduced)
        improved = cand_res < cur
        for _half in range(20):
            if improved.all():
                break
            bad = ~improved
            alpha[bad] /= 2.0
            cand[bad] = lam[ai][bad] + alpha[bad, None] * step[bad]
            cand_res[bad] = _residuals(cand[bad], n, reduced)
            improved = improved | (cand_res < cur)
        moved = ai[improved]
        lam[moved] = cand[improved]
        res[moved] = cand_res[improved]
        iters[moved] += 1
        dead[ai[~improved]] = True  # 20 halvings without progress
        dead |= np.abs(lam).max(axis=1) > _DIVERGED_ABS
    conv = (res <= cfg.newton_tol) & ~dead & np.isfinite(res)
    return lam, res, conv, iters


# float64 cannot certify roots whose string deviations fall below ~1e-5
# (the residual floors at eps/deviation: already ~1e-7 for the 1e-9
# deviations that appear at n=10); iterates stalling under this
# threshold are re-verified with an arbitrary-precision Newton, which
# either certifies them below newton_tol or rejects them.
_STALL_RES = 1e-5


def _mp_system(lam, n: int, reduced: bool):
    import mpmath as mp

    m = len(lam)
    p = n - 1 if reduced else n
    half = mp.mpc(0, "0.5")
    f = []
    scale = []
    jac = mp.zeros(m, m)
    for k in range(m):
        u = lam[k] + half
        v = lam[k] - half
        em = lam[k] - 3 * half if reduced else mp.mpc(1)
        ep = lam[k] + 3 * half if reduced else mp.mpc(1)
        de = mp.mpc(1) if reduced else mp.mpc(0)
        pm = mp.mpc(1)
        pp = mp.mpc(1)
        am = mp.mpf(1)
        ap = mp.mpf(1)
        for j in range(m):
            if j == k:
                continue
            dm = lam[k] - lam[j] - 2 * half
            dp = lam[k] - lam[j] + 2 * half
            pm *= dm
            pp *= dp
            am *= abs(dm)
            ap *= abs(dp)
        f.append(u**p * em * pm - v**p * ep * pp)
        scale.append(abs(u) ** p * abs(em) * am + abs(v) ** p * abs(ep) * ap)
        for mm in range(m):
            if mm == k:
                lm = mp.mpc(0)
                lp = mp.mpc(0)
                for q in range(m):
                    if q == k:
                        continue
                    t1 = mp.mpc(1)
                    t2 = mp.mpc(1)
                    for j in range(m):
                        if j in (k, q):
                            continue
                        t1 *= lam[k] - lam[j] - 2 * half
                        t2 *= lam[k] - lam[j] + 2 * half
                    lm += t1
                    lp += t2
                jac[k, k] = (
                    (p * u ** (p - 1) * em + u**p * de) * pm
                    + u**p * em * lm
                    - (p * v ** (p - 1) * ep + v**p * de) * pp
                    - v**p * ep * lp
                )
            else:
                t1 = mp.mpc(1)
                t2 = mp.mpc(1)
                for j in range(m):
                    if j in (k, mm):
                        continue
                    t1 *= lam[k] - lam[j] - 2 * half
                    t2 *= lam[k] - lam[j] + 2 * half
                jac[k, mm] = -(u**p) * em * t1 + v**p * ep * t2
    return f, scale, jac


def _mp_polish(roots, n: int, cfg: SolverConfig, reduced: bool, dps: int = 50):
    """Arbitrary-precision Newton verification of a stalled candidate.

    Returns (roots, residual, ok); the residual is evaluated at ``dps``
    digits, which certifies string deviations far below the float64
    noise floor.
    """
    import mpmath as mp

    with mp.workdps(dps):
        lam = [mp.mpc(z) for z in roots]
        res = mp.inf
        for _ in range(50):
            f, scale, jac = _mp_system(lam, n, reduced)
            res = max(
                (abs(fk) / sk if sk > 0 else abs(fk)) for fk, sk in zip(f, scale)
            )
            if res < 1e-30:
                break
            try:
                delta = mp.lu_solve(jac, [-fk for fk in f])
            except ZeroDivisionError:
                return tuple(complex(z) for z in lam), float(res), False
            if max(abs(d) for d in delta) > 1.0:
                return tuple(complex(z) for z in lam), float(res), False
            lam = [z + d for z, d in zip(lam, delta)]
        ok = res <= cfg.newton_tol
        return tuple(complex(z) for z in lam), float(res), bool(ok)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def bae_residual(roots, n: int, tol_equal: float = TOL_EQUAL) -> float:
    """Relative residual of the Bethe equations in pole-free form.

    Root sets containing the singular pair {i/2, -i/2} are scored with
    the reduced system for the remaining roots (the pair itself is an
    exact factor there).
    """
    roots = [complex(z) for z in roots]
    if _has_duplicates(roots, tol_equal):
        raise StrangeRootsError(f"coinciding roots within {tol_equal}: {roots}")
    if not roots:
        return 0.0
    others = singular_partners(roots)
    if others is not None:
        if not others:
            return 0.0
        lam = np.array([others], dtype=complex)
        return float(_residuals(lam, n, reduced=True)[0])
    lam = np.array([roots], dtype=complex)
    return float(_residuals(lam, n, reduced=False)[0])


def newton_refine(start, n: int, cfg: SolverConfig | None = None) -> NewtonResult:
    """Damped Newton from one start vector on the full polynomial system."""
    cfg = cfg or SolverConfig()
    start = [complex(z) for z in start]
    if _has_duplicates(start, cfg.tol_equal):
        raise StrangeRootsError("start has coinciding entries; Jacobian would be singular")
    lam, res, conv, iters = _batch_newton(
        np.array([start], dtype=complex), n, cfg, reduced=False
    )
    roots = canonical_roots(lam[0])
    if conv[0]:
        return NewtonResult(True, roots, float(res[0]), int(iters[0]))
    return NewtonResult(
        False, roots, float(res[0]), int(iters[0]), "did not reach newton_tol"
    )


def nw_constants(roots: RootSet | tuple, n: int | None = None) -> tuple[complex, complex]:
    """The two Nepomechie-Wang regularization constants of a singular set.

    c1 = -(2 / i^(n+1)) prod_{j>=3} (L_j - 3i/2)/(L_j + i/2)
    c2 =   2 * i^(n+1)  prod_{j>=3} (L_j + 3i/2)/(L_j - i/2)

    Their equality is the physicality criterion.
    """
    if isinstance(roots, RootSet):
        n = roots.n
        root_vals = roots.roots
    else:
        if n is None:
            raise ValueError("n required when passing a bare root sequence")
        root_vals = roots
    others = singular_partners(root_vals)
    if others is None:
        raise ValueError("root set does not contain the singular pair {i/2, -i/2}")
    for z in others:
        if abs(z + 0.5j) <= TOL_SINGULAR or abs(z - 0.5j) <= TOL_SINGULAR:
            raise ZeroDivisionError(f"non-pair root {z} sits on a pole of the c formulas")
    ipow = 1j ** (n + 1)
    c1 = -2.0 / ipow
    c2 = 2.0 * ipow
    for z in others:
        c1 *= (z - 1.5j) / (z + 0.5j)
        c2 *= (z + 1.5j) / (z - 0.5j)
    return complex(c1), complex(c2)


def classify(rootset: RootSet, cfg: SolverConfig | None = None) -> RootSet:
    """Tag a converged root set as regular / physical / non-physical / strange."""
    cfg = cfg or SolverConfig()
    roots = rootset.roots
    if _has_duplicates(roots, cfg.tol_equal):
        return replace(rootset, classification=STRANGE)
    if singular_partners(roots, cfg.tol_singular) is not None:
        c1, c2 = nw_constants(rootset)
        if abs(c1 - c2) <= 1e-8 * max(1.0, abs(c1), abs(c2)):
            return replace(rootset, classification=PHYSICAL_SINGULAR)
        return replace(rootset, classification=NONPHYSICAL_SINGULAR)
    return replace(rootset, classification=REGULAR)


# ---------------------------------------------------------------------------
# multi-start driver
# ---------------------------------------------------------------------------


def _string_roots(center: float, length: int, rng: np.random.Generator) -> list[complex]:
    """Conjugate-closed string seed with jittered widths.

    Exact strings have consecutive spacings of exactly i, which lies on
    a degenerate hyperplane of the polynomial system (a product factor
    vanishes there), so the imaginary offsets are scaled away from it.
    """
    roots = [0j] * length
    for a in range(length // 2):
        offset = 0.5 * (length - 1 - 2 * a) * float(rng.uniform(0.8, 1.25))
        roots[a] = center + 1j * offset
        roots[length - 1 - a] = center - 1j * offset
    if length % 2:
        roots[length // 2] = complex(center, 0.0)
    return roots


def _starts(n: int, ell: int, cfg: SolverConfig, rng: np.random.Generator) -> np.ndarray:
    blocks: list[np.ndarray] = []
    # richer sectors have more solutions and narrower basins
    cnt = cfg.n_random_starts * max(1, ell)
    if "random_real" in cfg.seed_strategies:
        blocks.append(rng.uniform(-2.0, 2.0, size=(cnt, ell)) + 0j)
    if "random_complex" in cfg.seed_strategies:
        blocks.append(
            rng.uniform(-2.0, 2.0, size=(cnt, ell))
            + 1j * rng.uniform(-1.5, 1.5, size=(cnt, ell))
        )
    if "string_hypothesis" in cfg.seed_strategies:
        from .rigged import partitions

        parts = partitions(ell)
        rows = []
        for _ in range(cnt):
            content = parts[rng.integers(len(parts))]
            roots: list[complex] = []
            for length in content:
                roots.extend(_string_roots(float(rng.uniform(-1.5, 1.5)), length, rng))
            rows.append(roots)
        blocks.append(np.array(rows, dtype=complex))
    if "symmetric_pairs" in cfg.seed_strategies:
        # parity-symmetric seeds: +/-x pairs on the real axis and +/-iy
        # pairs on the imaginary axis (the latter reach the purely
        # imaginary singular companions that live just outside the
        # random_complex box)
        rows = []
        for _ in range(cnt):
            roots = []
            for _ in range(ell // 2):
                if rng.uniform() < 0.5:
                    x = float(rng.uniform(0.02, 2.0))
                    roots.extend([x, -x])
                else:
                    y = float(rng.uniform(0.05, 2.2))
                    roots.extend([1j * y, -1j * y])
            if ell % 2:
                roots.append(float(rng.uniform(-0.3, 0.3)))
            rows.append(roots)
        blocks.append(np.array(rows, dtype=complex))
    starts = np.concatenate(blocks, axis=0)
    # nudge apart any coinciding seed entries; Newton needs distinct roots
    for row in starts:
        for a, b in itertools.combinations(range(ell), 2):
            if abs(row[a] - row[b]) < 1e-3:
                row[b] += 0.05 * (1 + a + b)
    return starts


def _min_separation(roots) -> float:
    pairs = list(itertools.combinations(roots, 2))
    return min((abs(a - b) for a, b in pairs), default=float("inf"))


def _snap_coincident(roots, guard: float) -> tuple[complex, ...]:
    """Merge root clusters tighter than ``guard`` onto their means."""
    remaining = [complex(z) for z in roots]
    out: list[complex] = []
    while remaining:
        seed_root = remaining.pop(0)
        cluster = [seed_root]
        rest = []
        for z in remaining:
            (cluster if abs(z - seed_root) <= guard else rest).append(z)
        remaining = rest
        mean = sum(cluster) / len(cluster)
        if abs(mean.imag) < guard:
            mean = complex(mean.real, 0.0)
        out.extend([mean] * len(cluster))
    return canonical_roots(out)


def _snap_real_axis(roots, n: int, cfg: SolverConfig, reduced: bool):
    """Zero out float-noise imaginary parts when that keeps the residual."""
    snapped = tuple(
        complex(z.real, 0.0) if abs(z.imag) < 1e-11 else z for z in roots
    )
    if snapped == tuple(roots) or not snapped:
        return tuple(roots)
    before = float(_residuals(np.array([roots], dtype=complex), n, reduced)[0])
    after = float(_residuals(np.array([snapped], dtype=complex), n, reduced)[0])
    if after <= max(cfg.newton_tol, 2.0 * before):
        return snapped
    return tuple(roots)


def _collect_candidates(lam, res, conv, n: int, cfg: SolverConfig, reduced: bool):
    """Converged rows plus mp-certified stalled rows as (roots, residual)."""
    accepted: list[tuple[tuple[complex, ...], float]] = []
    stalled: list[tuple[complex, ...]] = []
    for row, r, ok in zip(lam, res, conv):
        roots = canonical_roots(row)
        if ok:
            accepted.append((roots, float(r)))
        elif np.isfinite(r) and r <= _STALL_RES:
            stalled.append(roots)
    for roots in _dedup(stalled, cfg.dedup_tol):
        polished, pres, ok = _mp_polish(roots, n, cfg, reduced)
        if ok:
            accepted.append((canonical_roots(polished), pres))
    return accepted


def _dedup(cands: list[tuple[complex, ...]], tol: float) -> list[tuple[complex, ...]]:
    kept: list[tuple[complex, ...]] = []
    for roots in cands:
        if not any(multiset_eq(roots, prev, tol) for prev in kept):
            kept.append(roots)
    return kept


def _dedup_pairs(cands, tol: float):
    """Deduplicate (roots, residual) pairs, keeping the smaller residual."""
    kept: list[list] = []
    for roots, res in cands:
        for entry in kept:
            if multiset_eq(roots, entry[0], tol):
                if res < entry[1]:
                    entry[0], entry[1] = roots, res
                break
        else:
            kept.append([roots, res])
    return [(roots, res) for roots, res in kept]


def _parity_close_pairs(cands, tol: float):
    """Add the negated partner of every solution (the system is odd in L)."""
    out = [list(c) for c in cands]
    for roots, res in cands:
        neg = canonical_roots([-z for z in roots])
        if not any(multiset_eq(neg, prev[0], tol) for prev in out):
            out.append([neg, res])
    return [(roots, res) for roots, res in out]


def _solve_reduced(n: int, ell: int, cfg: SolverConfig):
    """Solve for the non-pair roots of singular candidates {i/2, -i/2, ...}."""
    m = ell - 2
    if m == 0:
        return [((), 0.0)]
    rng = np.random.default_rng((cfg.seed, n, ell, 7))
    starts = _starts(n, m, cfg, rng)
    lam, res, conv, _ = _batch_newton(starts, n, cfg, reduced=True)
    cands = []
    for roots, rres in _collect_candidates(lam, res, conv, n, cfg, reduced=True):
        roots = _snap_real_axis(roots, n, cfg, reduced=True)
        if _min_separation(roots) < cfg.strange_guard:
            continue  # stalled at a coincident-root configuration
        # extra roots may not collide with the fixed pair
        if any(min(abs(z - 0.5j), abs(z + 0.5j)) <= cfg.tol_singular for z in roots):
            continue
        if not _is_self_conjugate(roots, cfg.dedup_tol):
            continue
        cands.append((canonical_roots(roots), rres))
    return _parity_close_pairs(_dedup_pairs(cands, cfg.dedup_tol), cfg.dedup_tol)


def solve_sector(n: int, ell: int, cfg: SolverConfig | None = None) -> list[RootSet]:
    """All Bethe root sets found for the (n, ell) sector, deduplicated and tagged.

    Regular candidates come from multi-start damped Newton on the full
    polynomial system; singular candidates from the reduced system with
    the pair {i/2, -i/2} held exactly.  Self-conjugacy is enforced;
    completeness is audited (not guaranteed) against the rigged
    configuration census by the caller.
    """
    cfg = cfg or SolverConfig()
    if not 0 <= 2 * ell <= n:
        raise ValueError(f"need 0 <= ell <= n/2, got ell={ell}, n={n}")
    if ell == 0:
        return [RootSet(n, (), REGULAR, 0.0)]

    rng = np.random.default_rng((cfg.seed, n, ell))
    starts = _starts(n, ell, cfg, rng)
    lam, res, conv, _ = _batch_newton(starts, n, cfg, reduced=False)

    regular_cands: list[tuple[tuple[complex, ...], float]] = []
    strange_cands: list[tuple[complex, ...]] = []
    for roots, rres in _collect_candidates(lam, res, conv, n, cfg, reduced=False):
        roots = _snap_real_axis(roots, n, cfg, reduced=False)
        if singular_partners(roots, cfg.tol_singular) is not None:
            continue  # rediscovered properly by the reduced pass
        if _min_separation(roots) < cfg.strange_guard:
            snapped = _snap_coincident(roots, cfg.strange_guard)
            if _is_self_conjugate(snapped, cfg.strange_guard):
                strange_cands.append(snapped)
            continue
        if not _is_self_conjugate(roots, cfg.dedup_tol):
            continue
        regular_cands.append((canonical_roots(roots), rres))

    out: list[RootSet] = []
    for roots, rres in _parity_close_pairs(
        _dedup_pairs(regular_cands, cfg.dedup_tol), cfg.dedup_tol
    ):
        out.append(classify(RootSet(n, roots, residual=rres), cfg))
    for roots in _dedup(strange_cands, cfg.strange_guard * 10):
        out.append(RootSet(n, roots, STRANGE, float("nan")))

    if ell >= 2:
        for extra, rres in _solve_reduced(n, ell, cfg):
            roots = canonical_roots((0.5j, -0.5j, *extra))
            out.append(classify(RootSet(n, roots, residual=rres), cfg))

    out.sort(
        key=lambda rs: tuple(
            (-round(z.real, 9), -round(z.imag, 9)) for z in rs.roots
        )
    )
    return out


def sector_target_count(n: int, ell: int) -> int:
    """Highest-weight state count C(n,ell) - C(n,ell-1) the solver aims for."""
    from .hilbert import binomial

    return binomial(n, ell) - binomial(n, ell - 1)

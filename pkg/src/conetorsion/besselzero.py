"""Positive zeros of J_nu, J_nu', and the mixed combination a*J_nu(z) + z*J_nu'(z).

Strategy: Dirichlet zeros come from vectorized, bracket-safeguarded Newton
iteration seeded by McMahon's asymptotic expansion, with a sequential
scan-and-bisect repair for the low indices where the expansion is poor
(large order nu).  Derivative and mixed zeros are then bracketed by the
interlacing property — the logarithmic derivative z J'/J decreases from +inf
to -inf across each interval between consecutive J_nu zeros (Mittag-Leffler
expansion), so each interval holds exactly one mixed zero whenever
alpha + nu > 0 — and refined by vectorized bisection plus Newton polish.

The mixed boundary parameter must satisfy alpha^2 < nu^2, or be +inf
(Dirichlet alias).  The single boundary point alpha = +nu is also accepted:
there the combination collapses to z*J_{nu-1}(z) by the standard recurrence,
so its zeros are the (nu-1)-order Dirichlet zeros and remain simple and
interlaced; the spectral-shift self-test relies on this case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.special as sc
from scipy.optimize import brentq

from .errors import ConvergenceError, ValidationError

KINDS = ("dirichlet", "neumann", "mixed")

_RESIDUAL_TOL = 1e-12
_SIMPLICITY_TOL = 1e-8


@dataclass(frozen=True)
class ZeroRequest:
    nu: float
    kind: str
    count: int
    alpha: float | None = None

    def __post_init__(self):
        if not (math.isfinite(self.nu) and self.nu >= 0.0):
            raise ValidationError(f"order must be finite and >= 0, got nu={self.nu}")
        if self.kind not in KINDS:
            raise ValidationError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not (isinstance(self.count, int) and self.count >= 1):
            raise ValidationError(f"count must be a positive integer, got {self.count!r}")
        if self.kind == "mixed":
            a = self.alpha
            if a is None:
                raise ValidationError("mixed kind requires a boundary parameter alpha")
            if a != math.inf and not (a * a < self.nu * self.nu or a == self.nu):
                raise ValidationError(
                    "invalid alpha: mixed boundary parameter needs alpha^2 < nu^2 "
                    f"(or alpha=+nu, or alpha=inf for Dirichlet); got alpha={a}, nu={self.nu}")
        elif self.alpha is not None:
            raise ValidationError(f"alpha is only meaningful for kind 'mixed', got kind={self.kind!r}")


@dataclass(frozen=True)
class ZeroList:
    request: ZeroRequest
    zeros: np.ndarray = field(repr=False)
    residuals: np.ndarray = field(repr=False)
    fprimes: np.ndarray = field(repr=False)

    def eigenvalues(self) -> np.ndarray:
        """Squared zeros — the spectrum of the associated model operator."""
        return self.zeros ** 2


def mcmahon_guess(nu: float, kind: str, index: int, alpha: float | None = None) -> float:
    """McMahon asymptotic estimate of the index-th positive zero (seed only).

    Every correction carries the factor that vanishes at the closed-form
    orders (mu - 1 = 0 at nu = 1/2 for Dirichlet), so e.g. the half-integer
    Dirichlet guesses are exactly index*pi.  For J_0' the origin is a
    stationary point, which costs one index in the phase.
    """
    if index < 1:
        raise ValidationError(f"zero index must be >= 1, got {index}")
    mu = 4.0 * nu * nu
    if kind == "dirichlet":
        b = (index + 0.5 * nu - 0.25) * math.pi
        e = 8.0 * b
        return (b - (mu - 1.0) / e
                - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e ** 3)
                - 32.0 * (mu - 1.0) * (83.0 * mu ** 2 - 982.0 * mu + 3779.0) / (15.0 * e ** 5)
                - 64.0 * (mu - 1.0) * (6949.0 * mu ** 3 - 153855.0 * mu ** 2
                                       + 1585743.0 * mu - 6277237.0) / (105.0 * e ** 7))
    s = index + 1 if (kind == "neumann" and nu == 0.0) else index
    b = (s + 0.5 * nu - 0.75) * math.pi
    e = 8.0 * b
    guess = (b - (mu + 3.0) / e
             - 4.0 * (7.0 * mu ** 2 + 82.0 * mu - 9.0) / (3.0 * e ** 3)
             - 32.0 * (83.0 * mu ** 3 + 2075.0 * mu ** 2 - 3039.0 * mu + 3537.0) / (15.0 * e ** 5))
    if kind == "mixed" and alpha is not None and alpha != math.inf:
        guess += alpha / b
    return guess


# ---------------------------------------------------------------------------
# function/derivative evaluators per kind (vectorized over z)

def _f_dirichlet(nu, z):
    return sc.jv(nu, z), sc.jvp(nu, z)


def _f_neumann(nu, z):
    j = sc.jv(nu, z)
    jp = sc.jvp(nu, z)
    jpp = -jp / z - (1.0 - nu * nu / (z * z)) * j
    return jp, jpp


def _f_mixed(nu, alpha, z):
    j = sc.jv(nu, z)
    jp = sc.jvp(nu, z)
    f = alpha * j + z * jp
    fp = alpha * jp - (z - nu * nu / z) * j   # via the Bessel ODE
    return f, fp


def _dirichlet_zeros(nu: float, count: int) -> np.ndarray:
    idx = np.arange(1, count + 1)
    seeds = np.array([mcmahon_guess(nu, "dirichlet", int(i)) for i in idx])

    halfgap = 0.5 * np.diff(seeds, prepend=seeds[0] - math.pi)
    halfgap = np.maximum(halfgap, 0.45 * math.pi)
    lo, hi = seeds - halfgap, seeds + halfgap

    z = seeds.copy()
    ok = np.zeros(count, dtype=bool)
    for _ in range(60):
        f, fp = _f_dirichlet(nu, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(fp != 0.0, f / fp, 0.0)
        znew = z - step
        # clip runaway steps back into the McMahon window
        bad = (znew <= lo) | (znew >= hi) | ~np.isfinite(znew)
        znew = np.where(bad, 0.5 * (np.clip(z, lo, hi) + np.where(step > 0, lo, hi)), znew)
        done = np.abs(znew - z) <= 1e-14 * np.abs(znew)
        z = znew
        ok |= done
        if ok.all():
            break

    # validate; repair the (low-index) failures by sequential scanning
    good = ok & (z > max(nu, 0.0)) & np.isfinite(z)
    if count > 1:
        gaps_ok = np.empty(count, dtype=bool)
        gaps_ok[0] = True
        gaps_ok[1:] = np.diff(z) > math.pi - 1e-9
        good &= gaps_ok & gaps_ok[np.roll(np.arange(count), -1) % count]
    resid = np.abs(sc.jv(nu, z))
    good &= resid <= 1e-9 * np.maximum(1.0, z)
    if not good.all():
        n_repair = int(np.max(np.nonzero(~good)[0])) + 1
        z[:n_repair] = _scan_zeros(nu, n_repair)
        # one more vectorized polish over everything
        for _ in range(3):
            f, fp = _f_dirichlet(nu, z)
            z = z - np.where(fp != 0.0, f / fp, 0.0)
    return z


def _scan_zeros(nu: float, count: int) -> np.ndarray:
    """Sequential sign-change scan + brentq; slow but assumption-free."""
    if nu >= 1.0:
        start = nu + 0.9 * nu ** (1.0 / 3.0)   # below the first zero
    else:
        start = 0.3
    step = max(0.4, 0.45 * nu ** (1.0 / 3.0))
    found = []
    x, fx = start, float(sc.jv(nu, start))
    if fx == 0.0:  # ridiculously unlucky grid point / underflow
        x *= 1.0 + 1e-9
        fx = float(sc.jv(nu, x))
    budget = 200000
    while len(found) < count and budget > 0:
        budget -= 1
        y = x + step
        fy = float(sc.jv(nu, y))
        if fx * fy < 0.0:
            found.append(brentq(lambda t: float(sc.jv(nu, t)), x, y,
                                xtol=1e-15, rtol=4 * np.finfo(float).eps))
            step = max(0.4, min(step, math.pi / 3))
        x, fx = y, fy
    if len(found) < count:
        raise ConvergenceError(
            f"scan failed to find {count} zeros of J_{nu} (found {len(found)})")
    return np.array(found)


def _bisect_interlaced(nu: float, count: int, fpair, left_edge: float) -> np.ndarray:
    """One zero per interval between consecutive J_nu zeros (plus the head
    interval starting at left_edge), located by vectorized bisection and
    polished by Newton.  fpair(z) -> (f(z), f'(z)); sign of f at 0+ must be +.
    """
    anchors = _dirichlet_zeros(nu, count)
    lo = np.concatenate([[left_edge], anchors[:-1]])
    hi = anchors.copy()
    flo_sign = np.empty(count)
    flo_sign[0] = 1.0  # sign of f just right of 0 is that of alpha+nu > 0
    if count > 1:
        fa, _ = fpair(anchors[:-1])
        flo_sign[1:] = np.sign(fa)
    for _ in range(54):
        mid = 0.5 * (lo + hi)
        fm, _ = fpair(mid)
        sm = np.sign(fm)
        take_lo = (sm == flo_sign) | (sm == 0.0)
        lo = np.where(take_lo, mid, lo)
        hi = np.where(take_lo, hi, mid)
    z = 0.5 * (lo + hi)
    for _ in range(3):
        f, fp = fpair(z)
        step = np.where(fp != 0.0, f / fp, 0.0)
        z = np.clip(z - step, lo, hi)
    return z


def zeros(req: ZeroRequest) -> ZeroList:
    """First `count` positive zeros for the request, validated for strict
    increase, small residual, and simplicity."""
    nu, count = req.nu, req.count
    kind = req.kind
    if kind == "mixed" and req.alpha == math.inf:
        kind = "dirichlet"

    if kind == "dirichlet":
        z = _dirichlet_zeros(nu, count)
        f, fp = _f_dirichlet(nu, z)
    elif kind == "neumann":
        if nu == 0.0:
            # J_0' = -J_1: reuse the Dirichlet machinery at order 1
            z = _dirichlet_zeros(1.0, count)
            for _ in range(2):
                f, fp = _f_neumann(0.0, z)
                z = z - np.where(fp != 0.0, f / fp, 0.0)
            f, fp = _f_neumann(0.0, z)
        else:
            z = _bisect_interlaced(nu, count, lambda t: _f_neumann(nu, t), 0.0)
            f, fp = _f_neumann(nu, z)
    else:
        alpha = float(req.alpha)
        z = _bisect_interlaced(nu, count, lambda t: _f_mixed(nu, alpha, t), 0.0)
        f, fp = _f_mixed(nu, alpha, z)

    resid = np.abs(f)
    if not np.all(np.diff(z) > 0.0) or not np.all(z > 0.0):
        raise ConvergenceError(f"zero list for {req} is not strictly increasing")
    if not np.all(resid <= _RESIDUAL_TOL * np.maximum(1.0, z)):
        worst = float(np.max(resid / np.maximum(1.0, z)))
        raise ConvergenceError(f"zero residuals too large for {req}: {worst:.3e}")
    if not np.all(np.abs(fp) > _SIMPLICITY_TOL):
        raise ConvergenceError(f"non-simple zero detected for {req}")
    return ZeroList(request=req, zeros=z, residuals=resid, fprimes=fp)

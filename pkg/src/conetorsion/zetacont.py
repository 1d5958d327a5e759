"""Spectral-zeta analytic continuation from eigenvalue streams.

For a positive eigenvalue multiset {x_j} with trace Z(t) = sum_j m_j e^(-x_j t)
and small-t behaviour Z(t) ~ H(t) = sum_p c_p t^p, the Mellin transform

    Gamma(s) zeta(s) = I(s) + sum_p c_p / (s + p),
    I(s) = int_tmin^1 t^(s-1) (Z(t) - H(t)) dt + int_1^T t^(s-1) Z(t) dt,

(split fixed at t = 1) continues zeta meromorphically.  All outputs follow:

    zeta(0)    = c_0,
    zeta'(0)   = I(0) + sum_{p != 0} c_p / p + gamma c_0,
    Res  (w)   = c_{-w} / Gamma(w),
    PP   (w)   = [I(w) + sum_{p != -w} c_p/(w+p) - c_{-w} psi(w)] / Gamma(w),
    zeta (-m)  = (-1)^m m! c_m           (negative integers),

with PP reducing to the plain value at regular points.  Shifted derivatives
zeta'(0, a) = d/ds sum_j m_j (x_j + a)^(-s)|_0 come from two independent
routes: directly (the same machinery applied to e^(-a t) Z(t)), and through
the subtracted-logarithm relation to the unshifted data (shifted_from_base).

Streams may carry an exact trace evaluator (theta functions, geometric
series) — then t_min is essentially 0 — or only eigenvalues, in which case
the trace is trustworthy down to t_floor = Lambda / x_max and the heat
expansion is extended by a windowed least-squares fit just above t_floor.
The freely refitted leading coefficient is compared against the supplied one
(inconsistent-heat guard), and every truncation/quadrature contribution is
accumulated into error_estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import ConvergenceError, ValidationError
from .specfun import EULER_GAMMA, digamma, ln_gamma

_EXP_CUTOFF = 45.0          # e^-45 ~ 2.9e-20: below double-precision relevance


def _fsum(values) -> float:
    return math.fsum(np.asarray(values, dtype=float).ravel().tolist())


def merge_ties(values, mults, rel: float = 1e-12):
    """Merge eigenvalues equal within rel (ascending input), summing mults."""
    values = np.asarray(values, dtype=float)
    mults = np.asarray(mults, dtype=float)
    if values.size == 0:
        return values, mults
    out_v, out_m = [values[0]], [mults[0]]
    for v, m in zip(values[1:], mults[1:]):
        if v - out_v[-1] <= rel * max(1.0, abs(v)):
            out_m[-1] += m
        else:
            out_v.append(v)
            out_m.append(m)
    return np.array(out_v), np.array(out_m)


@dataclass(frozen=True)
class HeatCoefficients:
    """Small-t trace expansion sum_j c_j t^((j - dim)/2) for a dim-dimensional base."""
    dim: int
    coeffs: tuple

    def powers(self) -> tuple:
        return tuple(((j - self.dim) / 2.0, float(c))
                     for j, c in enumerate(self.coeffs))


class SpectrumStream:
    """Ascending positive eigenvalues with multiplicities and optional structure.

    heat_fn: exact trace evaluator valid for every t > 0 (overrides the
    eigenvalue sum); heat_powers: exact leading small-t powers [(p, c), ...];
    density_exponent d: counting function N(x) ~ C x^d, used for tail
    estimates; progression: (c, m) tag when the values are exactly {c k}.
    """

    def __init__(self, values, mults=None, *, name: str = "",
                 heat_fn=None, heat_powers=(), density_exponent=None,
                 progression=None):
        values = np.atleast_1d(np.asarray(values, dtype=float))
        if mults is None:
            mults = np.ones_like(values)
        mults = np.atleast_1d(np.asarray(mults, dtype=float))
        if values.size == 0:
            raise ValidationError("spectrum stream must not be empty")
        if np.any(values <= 0.0):
            raise ValidationError("spectrum stream values must be positive")
        order = np.argsort(values, kind="stable")
        values, mults = merge_ties(values[order], mults[order])
        self.values = values
        self.mults = mults
        self.name = name
        self.heat_fn = heat_fn
        self.heat_powers = tuple((float(p), float(c)) for p, c in heat_powers)
        self.density_exponent = density_exponent
        self.progression = progression

    @property
    def min_value(self) -> float:
        return float(self.values[0])

    @property
    def max_value(self) -> float:
        return float(self.values[-1])

    def total_count(self) -> float:
        return float(np.sum(self.mults))

    def t_floor(self, cutoff: float = _EXP_CUTOFF) -> float:
        """Smallest t at which the truncated eigenvalue sum is still exact
        to ~e^-cutoff relative; 0 when an exact trace evaluator is attached."""
        if self.heat_fn is not None:
            return 0.0
        return cutoff / self.max_value

    def trace(self, t) -> np.ndarray:
        """Z(t) = sum m_j exp(-x_j t) (vectorized over t, ascending + fsum)."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        if self.heat_fn is not None:
            return np.asarray(self.heat_fn(t), dtype=float)
        ex = np.exp(-np.outer(t, self.values)) * self.mults
        return np.array([math.fsum(row.tolist()) for row in ex])


def progression_stream(c: float, m: int, count: int,
                       exact_trace: bool = True) -> SpectrumStream:
    """Materialized arithmetic progression {c k}_{k=1..count} with mult m.

    With exact_trace the geometric closed form m/(e^(c t)-1) and its exact
    Bernoulli small-t powers ride along, so the numeric engine can be held to
    the closed-form answers at full precision.
    """
    if c <= 0 or m < 1 or count < 1:
        raise ValidationError("progression needs c > 0, m >= 1, count >= 1")
    k = np.arange(1, count + 1, dtype=float)
    heat_fn = None
    powers = ()
    if exact_trace:
        heat_fn = lambda t: m / np.expm1(c * t)
        # 1/(e^(ct)-1) = 1/(ct) - 1/2 + ct/12 - (ct)^3/720 + (ct)^5/30240 - ...
        powers = ((-1.0, m / c), (0.0, -m / 2.0), (1.0, m * c / 12.0),
                  (3.0, -m * c ** 3 / 720.0), (5.0, m * c ** 5 / 30240.0),
                  (7.0, -m * c ** 7 / 1209600.0))
    return SpectrumStream(c * k, m * np.ones_like(k), name=f"progression({c},{m})",
                          heat_fn=heat_fn, heat_powers=powers,
                          density_exponent=1.0, progression=(float(c), int(m)))


@dataclass
class ZetaFunctionData:
    """Continuation outputs; pp stores the plain value at regular points."""
    deriv0: float
    deriv0_shifted: dict = field(default_factory=dict)
    residues: dict = field(default_factory=dict)
    pp: dict = field(default_factory=dict)
    error_estimate: float = 0.0
    zeta0: float = math.nan
    values: dict = field(default_factory=dict)


def zeta_data_exact(c: float, m: int, alphas=(), pole_range: int = 1) -> ZetaFunctionData:
    """Closed-form data for the arithmetic progression {c k}, multiplicity m.

    zeta(s) = m c^(-s) zeta_R(s) and zeta(s, a) = m c^(-s) zeta_H(s, 1+a/c);
    everything below is the s-expansion of those at s = 0 and s = i.
    """
    from .specfun import LOG_2PI, hurwitz_zeta_prime0, riemann_zeta
    if c <= 0 or m < 1:
        raise ValidationError("progression descriptor needs c > 0 and integer m >= 1")
    lc = math.log(c)
    data = ZetaFunctionData(deriv0=m * (0.5 * lc - 0.5 * LOG_2PI))
    data.zeta0 = -m / 2.0
    for alpha in alphas:
        a = float(alpha)
        if 1.0 + a / c <= 0.0:
            raise ValidationError(f"shift {a} reaches past the smallest eigenvalue {c}")
        data.deriv0_shifted[a] = m * (lc * (0.5 + a / c) + hurwitz_zeta_prime0(1.0 + a / c))
    for i in range(1, pole_range + 1):
        if i == 1:
            data.residues[1] = m / c
            data.pp[1] = m * (EULER_GAMMA - lc) / c
        else:
            data.residues[i] = 0.0
            val = m * c ** (-i) * riemann_zeta(float(i))
            data.pp[i] = val
            data.values[i] = val
    data.error_estimate = 0.0
    return data


# ---------------------------------------------------------------------------
# quadrature grid

def _log_panels(a: float, b: float, nodes: int, per_decade: int = 1):
    """Gauss-Legendre nodes/weights for int_a^b f(t) dt on a log axis,
    per_decade panels per decade: returns (t, w) with int = sum w f(t)."""
    if not (0.0 < a < b):
        raise ValidationError(f"bad quadrature range [{a}, {b}]")
    x, w = leggauss(nodes)
    la, lb = math.log(a), math.log(b)
    npan = max(1, int(math.ceil(per_decade * (lb - la) / math.log(10.0))))
    edges = np.linspace(la, lb, npan + 1)
    ts, ws = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
        u = mid + half * x
        ts.append(np.exp(u))
        ws.append(w * half * np.exp(u))   # dt = e^u du
    return np.concatenate(ts), np.concatenate(ws)


class MellinZeta:
    """Continuation engine for one stream (see module docstring).

    Heat powers used for H(t): the stream's exact powers, optionally replaced
    by an explicit HeatCoefficients, optionally extended by fit_extra fitted
    half-power steps when no exact trace evaluator exists.
    """

    def __init__(self, stream: SpectrumStream, heat: HeatCoefficients | None = None,
                 *, fit_extra: int = 5, nodes: int = 24, s_max: float = 1.0,
                 t_min: float | None = None):
        self.stream = stream
        powers = list(heat.powers() if heat is not None else stream.heat_powers)
        powers.sort()
        self._fit_note = 0.0
        self._heat_mismatch = None

        if stream.heat_fn is not None:
            self.powers = powers
            self.t_min = t_min if t_min is not None else self._choose_t_min()
        else:
            floor = stream.t_floor()
            if floor >= 0.05:
                raise ConvergenceError(
                    f"insufficient spectrum: trace floor t={floor:.3g} leaves no "
                    "asymptotic window below the Mellin split point")
            self.t_min = floor
            self.powers = self._fit_heat_powers(powers, fit_extra)

        # shared node grids; T adapted to the largest Mellin power requested
        x_min = stream.min_value
        T = max((_EXP_CUTOFF + 3.4 * max(s_max - 1.0, 0.0)) / x_min, 1.5)
        self._ts, self._ws = _log_panels(self.t_min, 1.0, nodes)
        self._tl, self._wl = _log_panels(1.0, T, nodes, per_decade=3)
        self._T = T
        self._zs = stream.trace(self._ts)
        self._zl = stream.trace(self._tl)
        self._hs = self._heat_eval(self._ts)
        # coarse grid for the quadrature error probe
        ts2, ws2 = _log_panels(self.t_min, 1.0, nodes // 2 + 2)
        tl2, wl2 = _log_panels(1.0, T, nodes // 2 + 2, per_decade=3)
        self._probe = (ts2, ws2, stream.trace(ts2) - self._heat_eval(ts2),
                       tl2, wl2, stream.trace(tl2))

    # -- heat model -------------------------------------------------------
    def _choose_t_min(self) -> float:
        """Largest t at which Z - H has already collapsed to rounding noise.

        Below that point the subtracted integrand is pure cancellation noise
        (|Z| ~ c t^p_min against an equal H), so integrating deeper only
        accumulates roundoff; above it the heat model is incomplete.  The
        sub-t_min remainder this leaves behind is covered by error_estimate.
        """
        probes = 0.25 * 2.0 ** -np.arange(0, 22, dtype=float)
        z = self.stream.trace(probes)
        h = self._heat_eval(probes)
        ratio = np.abs(z - h) / np.maximum(np.abs(z), 1e-300)
        ok = np.nonzero(ratio <= 1e-13)[0]
        if ok.size:
            return float(probes[ok[0]])
        return float(probes[int(np.argmin(ratio))])

    def _heat_eval(self, t: np.ndarray, powers=None) -> np.ndarray:
        powers = self.powers if powers is None else powers
        out = np.zeros_like(t)
        for p, c in powers:
            out += c * t ** p
        return out

    def _fit_heat_powers(self, supplied, fit_extra):
        """Extend the supplied powers by least squares on a window just above
        the trace floor, and cross-check the supplied leading coefficient."""
        if fit_extra <= 0:
            return supplied
        lo = self.t_min
        # keep the window shallow: extrapolation bias of the truncated power
        # model scales with the window top, so past ~2.5 decades more width
        # only hurts; but insist on enough span to separate the powers
        hi = min(lo * 300.0, 0.05)
        if hi < lo * 50.0:
            raise ConvergenceError(
                "insufficient spectrum: no usable fitting window above the trace floor")
        tw = np.exp(np.linspace(math.log(lo), math.log(hi), 160))
        zw = self.stream.trace(tw)
        base = np.zeros_like(tw)
        for p, c in supplied:
            base += c * tw ** p
        resid = zw - base
        pmax = max((p for p, _ in supplied), default=-1.0)
        # a power is identifiable only while t^p pokes above the float noise
        # of the evaluated trace on the window; fitting columns below that
        # floor is a degenerate least-squares problem producing garbage
        noise = 1e-13 * float(np.max(np.abs(zw)))
        candidates = [pmax + 0.5 * (j + 1) for j in range(fit_extra)]
        new_powers = [p for p in candidates
                      if (hi ** p if p > 0 else lo ** p) >= 3.0 * noise]
        if float(np.max(np.abs(resid))) <= 10.0 * noise or not new_powers:
            # supplied data already model the trace to noise level here; the
            # only bias left is a noise-scale ambiguity under t_min
            self._fit_note = noise * (abs(math.log(lo)) + 1.0)
            self._check_supplied(supplied, tw, zw, [])
            return supplied
        coef, rms = _power_fit(tw, resid, new_powers)
        fitted = supplied + [(p, c) for p, c in zip(new_powers, coef)]

        # honest bias estimate, weighting each coefficient shift by its
        # deriv0 sensitivity (the sub-t_min integral int_0^tmin t^(p-1) dt it
        # controls: |ln t_min| at p = 0, t_min^p / p elsewhere)
        def weight(p):
            return abs(math.log(lo)) + 1.0 if p == 0.0 else abs(lo ** p / p)
        bias = rms * weight(0.0)
        if hi >= lo * 200.0:
            # same model refit on the lower quarter of the window: shifts
            # measure the model's own truncation + noise amplification
            tw2 = np.exp(np.linspace(math.log(lo), math.log(hi / 4.0), 160))
            zw2 = self.stream.trace(tw2)
            base2 = np.zeros_like(tw2)
            for p, c in supplied:
                base2 += c * tw2 ** p
            coef2, _ = _power_fit(tw2, zw2 - base2, new_powers)
            bias += _fsum([abs(c1 - c2) * weight(p) for p, c1, c2
                           in zip(new_powers, coef, coef2)])
        elif fit_extra > 2:
            # window too shallow to subdivide: compare against a smaller model
            coef2, _ = _power_fit(tw, resid, new_powers[:-2])
            bias += _fsum([abs(c1 - c2) * weight(p) for p, c1, c2
                           in zip(new_powers, coef, coef2)])
        self._fit_note = bias
        self._check_supplied(supplied, tw, zw, new_powers)
        return fitted

    def _check_supplied(self, supplied, tw, zw, new_powers):
        """Inconsistent-heat guard: free refit of the leading supplied power."""
        if not supplied:
            return
        p0, c0 = min(supplied, key=lambda pc: pc[0])
        others = np.zeros_like(tw)
        for p, c in supplied:
            if p != p0:
                others += c * tw ** p
        free, _ = _power_fit(tw, zw - others, [p0] + list(new_powers))
        mismatch = abs(free[0] - c0)
        if mismatch > max(1e-4, 1e-3 * abs(c0)):
            raise ValidationError(
                f"inconsistent heat data: supplied coefficient {c0:.6g} for "
                f"t^{p0} but the stream fits {free[0]:.6g}")
        self._heat_mismatch = mismatch

    # -- core integrals -----------------------------------------------------
    def integral(self, s: float) -> float:
        pnext = max((p for p, _ in self.powers), default=-1.0) + 0.5
        if s + pnext <= 0.0:
            raise ValidationError(
                f"Mellin exponent s={s} needs heat powers beyond t^{-s}")
        small = _fsum(self._ws * self._ts ** (s - 1.0) * (self._zs - self._hs))
        large = _fsum(self._wl * self._tl ** (s - 1.0) * self._zl)
        return small + large

    def _integral_probe(self, s: float) -> float:
        ts2, ws2, d2, tl2, wl2, z2 = self._probe
        return (_fsum(ws2 * ts2 ** (s - 1.0) * d2)
                + _fsum(wl2 * tl2 ** (s - 1.0) * z2))

    def _pole_sum(self, s: float, skip: float | None = None) -> float:
        return _fsum([c / (s + p) for p, c in self.powers
                      if skip is None or p != skip])

    def coefficient(self, p: float) -> float:
        """Heat coefficient of t^p in the working model H (0 when absent)."""
        return _fsum([c for q, c in self.powers if q == p])

    # -- zeta data ----------------------------------------------------------
    def zeta0(self) -> float:
        return self.coefficient(0.0)

    def deriv0(self) -> float:
        c0 = self.coefficient(0.0)
        return self.integral(0.0) + self._pole_sum(0.0, skip=0.0) + EULER_GAMMA * c0

    def residue(self, w: float) -> float:
        if w <= 0.0:
            raise ValidationError("residues are extracted at w > 0 only")
        return self.coefficient(-w) / math.exp(float(ln_gamma(w)))

    def pp(self, w: float) -> float:
        """Finite part at w > 0 (equals the plain value at regular points)."""
        if w <= 0.0:
            raise ValidationError("PP extraction implemented for w > 0 only")
        cw = self.coefficient(-w)
        num = self.integral(w) + self._pole_sum(w, skip=-w) - cw * float(digamma(w))
        return num / math.exp(float(ln_gamma(w)))

    def value(self, w: float) -> float:
        """zeta(w) at a regular point (any real w, poles excluded)."""
        if w == 0.0:
            return self.zeta0()
        if w > 0.0:
            if self.coefficient(-w) != 0.0:
                raise ValidationError(f"zeta has a pole at s={w}; use residue/pp")
            return self.pp(w)
        m = round(-w)
        if abs(w + m) < 1e-12:             # negative integer: Gamma pole
            sign = 1.0 if m % 2 == 0 else -1.0
            return sign * math.gamma(m + 1.0) * self.coefficient(float(m))
        num = self.integral(w) + self._pole_sum(w)
        # reciprocal Gamma via reflection keeps negative w honest
        from .specfun import sinpi
        inv_gamma = sinpi(w) / math.pi * math.exp(float(ln_gamma(1.0 - w)))
        return num * inv_gamma

    def deriv0_shifted(self, alpha: float) -> float:
        """zeta'(0, alpha) by the direct route: trace e^(-alpha t) Z(t)."""
        a = float(alpha)
        if a == 0.0:
            return self.deriv0()
        if a <= -self.stream.min_value:
            raise ValidationError(
                f"shift {a} reaches past the smallest eigenvalue "
                f"{self.stream.min_value} (zero mode)")
        pmax = max(p for p, _ in self.powers)
        shifted: dict[float, float] = {}
        for p, c in self.powers:
            j = 0
            while p + j <= pmax:
                shifted[p + j] = shifted.get(p + j, 0.0) + c * (-a) ** j / math.factorial(j)
                j += 1
        powers = sorted(shifted.items())
        es, el = np.exp(-a * self._ts), np.exp(-a * self._tl)
        hs = np.zeros_like(self._ts)
        for p, c in powers:
            hs += c * self._ts ** p
        i0 = (_fsum(self._ws * (self._zs * es - hs) / self._ts)
              + _fsum(self._wl * self._zl * el / self._tl))
        c0 = _fsum([c for p, c in powers if p == 0.0])
        tail = _fsum([c / p for p, c in powers if p != 0.0])
        # large-t truncation of the shifted trace decays like e^-(x_min+a)T
        return i0 + tail + EULER_GAMMA * c0

    # -- error accounting ---------------------------------------------------
    def error_estimate(self, s_list=(0.0,)) -> float:
        quad = max(abs(self.integral(s) - self._integral_probe(s)) for s in s_list)
        pnext = max(p for p, _ in self.powers) + 0.5
        win = self._ts <= self.t_min * 16.0
        resid = self._zs[win] - self._hs[win]
        cnext = float(np.max(np.abs(resid) / self._ts[win] ** pnext)) if np.any(win) else 0.0
        s_lo = min(s_list)
        smalltail = cnext * self.t_min ** (pnext + s_lo) / max(pnext + s_lo, 0.5)
        zT = float(self.stream.trace(np.array([self._T]))[0])
        bigtail = zT * self._T ** (max(s_list) - 1.0) / self.stream.min_value
        return quad + smalltail + bigtail + self._fit_note


def zeta_data_numeric(stream: SpectrumStream, heat: HeatCoefficients | None = None,
                      alphas=(), pole_range: int = 1,
                      target_tol: float | None = None, *,
                      fit_extra: int = 5, nodes: int = 24) -> ZetaFunctionData:
    """Full continuation data by the numeric Mellin-split route."""
    eng = MellinZeta(stream, heat, fit_extra=fit_extra, nodes=nodes,
                     s_max=float(max(pole_range, 1)))
    data = ZetaFunctionData(deriv0=eng.deriv0())
    data.zeta0 = eng.zeta0()
    for i in range(1, pole_range + 1):
        data.residues[i] = eng.residue(float(i))
        data.pp[i] = eng.pp(float(i))
        if data.residues[i] == 0.0:
            data.values[i] = data.pp[i]
    for alpha in alphas:
        data.deriv0_shifted[float(alpha)] = eng.deriv0_shifted(float(alpha))
    s_list = [0.0] + [float(i) for i in range(1, pole_range + 1)]
    data.error_estimate = eng.error_estimate(s_list)
    if target_tol is not None and data.error_estimate > target_tol:
        raise ConvergenceError(
            f"insufficient spectrum: estimated error {data.error_estimate:.3e} "
            f"exceeds the target {target_tol:.3e}")
    return data


def _power_fit(t: np.ndarray, y: np.ndarray, powers) -> tuple[np.ndarray, float]:
    """Least-squares fit y ~ sum_k a_k t^powers[k] with column scaling."""
    cols = np.stack([t ** p for p in powers], axis=1)
    scale = np.max(np.abs(cols), axis=0)
    sol, *_ = np.linalg.lstsq(cols / scale, y, rcond=None)
    coef = sol / scale
    rms = float(np.sqrt(np.mean((cols @ coef - y) ** 2)))
    return coef, rms


def shifted_from_base(stream: SpectrumStream, base: ZetaFunctionData,
                      alpha: float, rmax: int = 16) -> tuple[float, float]:
    """zeta'(0, alpha) through the subtracted-logarithm relation.

    K(alpha) = sum_j m_j [ -log(1 + a/x_j) + sum_{r<=R} (-1)^(r+1) (a/x_j)^r / r ]
    is an absolutely convergent lattice sum (each term is the tail of the log
    series, summed directly to avoid cancellation), and

    zeta'(0,a) = zeta'(0) + K(a)
                 - sum_{i=1..R} (-1)^(i+1) (a^i/i) [Res(i)(gamma + psi(i)) + PP(i)].

    Returns (value, error_estimate); the estimate covers the stream tail
    beyond its truncation radius (via density_exponent) and the series tail.
    """
    a = float(alpha)
    if a == 0.0:
        return base.deriv0, base.error_estimate
    x = stream.values
    if a <= -stream.min_value:
        raise ValidationError(f"shift {a} reaches past the smallest eigenvalue {x[0]}")
    w = a / x
    if np.max(np.abs(w)) >= 0.75:
        raise ValidationError("relation path needs |alpha| < 3/4 of the smallest eigenvalue")
    # tail of the log series: sum_{r>R} (-1)^r w^r / r, summed termwise
    term = (-w) ** (rmax + 1) / (rmax + 1) * (-1.0) ** (rmax + 1)
    # build sum_{r=R+1}^{R+60} (-1)^r w^r / r directly
    tail = np.zeros_like(w)
    wr = w ** (rmax + 1)
    for r in range(rmax + 1, rmax + 61):
        sign = 1.0 if r % 2 == 0 else -1.0
        tail += sign * wr / r
        wr = wr * w
    K = _fsum(stream.mults * tail)

    corr = []
    for i in range(1, rmax + 1):
        res_i = base.residues.get(i, 0.0)
        if res_i != 0.0:
            bracket = res_i * (EULER_GAMMA + float(digamma(float(i)))) + base.pp[i]
        else:
            bracket = base.values.get(i, base.pp.get(i))
            if bracket is None:
                raise ValidationError(f"relation path needs zeta({i}) in the base data")
        sign = 1.0 if i % 2 == 1 else -1.0
        corr.append(sign * a ** i / i * bracket)
    value = base.deriv0 + K - _fsum(corr)

    # error: series remainder at the smallest eigenvalue + stream tail
    wmin = abs(a) / stream.min_value
    series_rem = float(np.sum(stream.mults[:8]) * wmin ** (rmax + 61) / (1.0 - wmin))
    tail_est = 0.0
    if stream.density_exponent is not None:
        d = stream.density_exponent
        V = stream.max_value
        cdens = stream.total_count() / V ** d
        if rmax + 1 > d:
            tail_est = cdens * d * abs(a) ** (rmax + 1) / (
                (rmax + 1) * (rmax + 1 - d)) * V ** (d - rmax - 1)
    return value, base.error_estimate + series_rem + tail_est


def sqrt_stream(q_stream: SpectrumStream, q_engine: MellinZeta, *,
                jmax: int = 6, name: str = "") -> SpectrumStream:
    """Square-root lift: eigenvalues sqrt(x_j) of a stream with values x_j.

    The lifted trace G(t) = sum_j m_j e^(-sqrt(x_j) t) is evaluated through
    the subordination identity
        G(t) = t/(2 sqrt(pi)) int_0^inf u^(-3/2) e^(-t^2/(4u)) Z_Q(u) du,
    which needs only the (exact) trace of the square stream, and its small-t
    powers come from the Mellin poles of Gamma(s) zeta_nu(s), zeta_nu(s) =
    zeta_Q(s/2): t^(-2w0) terms from each pole w0 of zeta_Q, zeta_Q(0) at
    t^0, and (-1)^j zeta_Q(-j/2)/j! at t^j.
    """
    if q_stream.heat_fn is None:
        raise ValidationError("sqrt_stream needs a stream with an exact trace evaluator")
    powers = []
    for p, c in q_engine.powers:
        if p < 0.0:
            w0 = -p
            coeff = 2.0 * c * math.exp(float(ln_gamma(2.0 * w0)) - float(ln_gamma(w0)))
            powers.append((-2.0 * w0, coeff))
    powers.append((0.0, q_engine.zeta0()))
    for j in range(1, jmax + 1):
        sign = 1.0 if j % 2 == 0 else -1.0
        powers.append((float(j), sign * q_engine.value(-0.5 * j) / math.factorial(j)))

    nu_vals = np.sqrt(q_stream.values)
    qmin = q_stream.min_value
    numax = float(np.sqrt(q_stream.max_value))
    t_direct = _EXP_CUTOFF / numax
    ex_nodes, ex_w = leggauss(24)

    def lifted_trace(t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.empty_like(t)
        direct = t >= t_direct
        if np.any(direct):
            ex = np.exp(-np.outer(t[direct], nu_vals)) * q_stream.mults
            out[direct] = [math.fsum(row.tolist()) for row in ex]
        small = ~direct
        for i in np.nonzero(small)[0]:
            ti = t[i]
            u_lo = ti * ti / (4.0 * (_EXP_CUTOFF + 5.0))
            u_hi = (_EXP_CUTOFF + 5.0) / qmin
            uu, wu = _log_panels(u_lo, u_hi, 24)
            zq = q_stream.trace(uu)
            integ = _fsum(wu * uu ** (-1.5) * np.exp(-ti * ti / (4.0 * uu)) * zq)
            out[i] = ti / (2.0 * math.sqrt(math.pi)) * integ
        return out

    d = None if q_stream.density_exponent is None else 2.0 * q_stream.density_exponent
    return SpectrumStream(nu_vals, q_stream.mults.copy(),
                          name=name or f"sqrt({q_stream.name})",
                          heat_fn=lifted_trace, heat_powers=powers,
                          density_exponent=d)

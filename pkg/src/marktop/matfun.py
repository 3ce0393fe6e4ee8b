"""Matrix functions of SPD arguments through rational interpolants.

Arguments come in three flavors (dense symmetric, Toeplitz-like in
generator form, diagonal-by-eigenvalues) wrapped in MatArg together with
spectral bounds [c, d].  On top of the interpolant evaluation sit the
residual certificate, automatic degree selection with the stop-one-before
rule, the scaled Denman-Beavers Newton square root, and inverse scaling
and squaring drivers for the logarithm and fractional powers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import tlalgebra as tl
from .approx import (Geometry, NodeSet, apriori_bound, blaschke_eta,
                     build_geometry, optimal_nodes, stopping_threshold)
from .errors import (BoundInvalid, DegreeUnavailable, DimensionError,
                     MarktopError, NoConvergence, PoleCollision)
from .interp import PartialFraction, RationalInterpolant, ThieleCF, fit_interpolant
from .markov import MarkovSpec, log_spec, power_spec, worst_case_spec

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class MatArg:
    """Matrix argument with spectral bounds c <= lambda_min, lambda_max <= d.

    kind is "dense" (symmetric ndarray), "tl" (TLMatrix) or "diagonal"
    (1-D array of eigenvalues).
    """

    kind: str
    data: object
    c: float
    d: float

    def __post_init__(self):
        if self.kind not in ("dense", "tl", "diagonal"):
            raise DimensionError(f"unknown MatArg kind {self.kind!r}")
        if not (0 < self.c <= self.d):
            raise DimensionError(f"need 0 < c <= d, got [{self.c}, {self.d}]")

    @property
    def n(self) -> int:
        if self.kind == "tl":
            return self.data.n
        return len(self.data)


def dense_arg(a, c: float, d: float) -> MatArg:
    return MatArg("dense", np.asarray(a, dtype=float), c, d)

def tl_arg(a: tl.TLMatrix, c: float, d: float) -> MatArg:
    return MatArg("tl", a, c, d)

def diag_arg(eigs, c: float | None = None, d: float | None = None) -> MatArg:
    e = np.asarray(eigs, dtype=float)
    return MatArg("diagonal", e, float(e.min()) if c is None else c,
                  float(e.max()) if d is None else d)


# ---------------------------------------------------------------------------
# Small dispatch layer over the three argument kinds
# ---------------------------------------------------------------------------

def _identity(a: MatArg):
    if a.kind == "dense":
        return np.eye(a.n)
    if a.kind == "tl":
        return tl.identity_tl(a.n)
    return np.ones(a.n)


def _wrap(a: MatArg, data) -> MatArg:
    return MatArg(a.kind, data, a.c, a.d)


def _shift(a: MatArg, data, z: float):
    if a.kind == "dense":
        return data - z * np.eye(a.n)
    if a.kind == "tl":
        return tl.shift(data, z)
    return data - z


def _scale(a: MatArg, data, alpha: float):
    if a.kind == "tl":
        return tl.scale(data, alpha)
    return alpha * data


def _add(a: MatArg, x, y):
    if a.kind == "tl":
        return tl.compress(tl.add(x, y))
    return x + y


def _mul(a: MatArg, x, y):
    if a.kind == "dense":
        return x @ y
    if a.kind == "tl":
        return tl.multiply(x, y)
    return x * y


def _inv(a: MatArg, x):
    if a.kind == "dense":
        return np.linalg.inv(x)
    if a.kind == "tl":
        return tl.invert(x)
    return 1.0 / x


def _norm(a: MatArg, x) -> float:
    if a.kind == "dense":
        return float(np.linalg.norm(x, 2))
    if a.kind == "tl":
        return tl.norm_est(x)
    return float(np.max(np.abs(x)))


def mat_to_dense(a: MatArg) -> np.ndarray:
    if a.kind == "dense":
        return a.data
    if a.kind == "tl":
        return tl.to_dense(a.data)
    return np.diag(a.data)


# ---------------------------------------------------------------------------
# Interpolant evaluation at a matrix argument
# ---------------------------------------------------------------------------

def eval_rational_at_matrix(r, a: MatArg) -> MatArg:
    """r(A) in the representation native to r: partial fractions sum shifted
    inverses, barycentric forms P(A) Q(A)^{-1}, Thiele runs its backward
    recurrence.  Diagonal arguments apply r entrywise on the spectrum."""
    rep = r.rep if isinstance(r, RationalInterpolant) else r
    if isinstance(rep, PartialFraction):
        tol = 1e-10 * max(a.d - a.c, 1.0)
        for x in rep.poles:
            if a.c - tol <= x <= a.d + tol:
                raise PoleCollision(f"pole {x} inside spectral interval [{a.c}, {a.d}]")
    if a.kind == "diagonal":
        return _wrap(a, np.asarray(rep(a.data), dtype=float))
    if isinstance(rep, PartialFraction):
        acc = None
        for x, res in zip(rep.poles, rep.residuals):
            term = _scale(a, _inv(a, _shift(a, a.data, x)), res)
            acc = term if acc is None else _add(a, acc, term)
        return _wrap(a, acc)
    if isinstance(rep, ThieleCF):
        p, zt = rep.params, rep.nodes
        out = _scale(a, _identity(a), p[-1])
        for j in range(len(p) - 2, -1, -1):
            out = _add(a, _scale(a, _identity(a), p[j]),
                       _mul(a, _shift(a, a.data, zt[j]), _inv(a, out)))
        if rep.reciprocal:
            out = _inv(a, out)
        return _wrap(a, out)
    # barycentric: accumulate prod_{k != j} (A - t_k I) via prefix/suffix
    t = rep.support
    mlen = len(t)
    prefix = [_identity(a)]
    for k in range(mlen - 1):
        prefix.append(_mul(a, prefix[-1], _shift(a, a.data, t[k])))
    suffix = [_identity(a)]
    for k in range(mlen - 1, 0, -1):
        suffix.append(_mul(a, _shift(a, a.data, t[k]), suffix[-1]))
    suffix.reverse()
    num = den = None
    for j in range(mlen):
        pj = _mul(a, prefix[j], suffix[j])
        nj = _scale(a, pj, rep.values[j] * rep.weights[j])
        dj = _scale(a, pj, rep.weights[j])
        num = nj if num is None else _add(a, num, nj)
        den = dj if den is None else _add(a, den, dj)
    return _wrap(a, _mul(a, num, _inv(a, den)))


def residual_sqrt(a: MatArg, r_nu, g: Geometry) -> float:
    """Spectral-norm residual of the worst-case interpolant:
    || I - r_nu(A) (1/|alpha|)(A - alpha I)(A - beta I) r_nu(A) ||,
    with the limit || I - r_nu(A)^2 (A - beta I) || when alpha = -inf."""
    alpha, beta = g.alpha, g.beta
    if a.kind == "diagonal":
        lam = a.data
        rv = np.asarray(r_nu(lam), dtype=float)
        if math.isinf(alpha):
            resid = 1.0 - rv * rv * (lam - beta)
        else:
            resid = 1.0 - rv * (lam - alpha) * (lam - beta) * rv / abs(alpha)
        return float(np.max(np.abs(resid)))
    e = eval_rational_at_matrix(r_nu, a)
    if math.isinf(alpha):
        w = _shift(a, a.data, beta)
    else:
        w = _scale(a, _mul(a, _shift(a, a.data, alpha), _shift(a, a.data, beta)),
                   1.0 / abs(alpha))
    prod = _mul(a, e.data, _mul(a, w, e.data))
    resid = _add(a, _identity(a), _scale(a, prod, -1.0))
    return _norm(a, resid)


_ETA_APOST_MAX = (math.sqrt(2.0) - 1.0) ** 2


def aposteriori_bound(a: MatArg, r_m, r_mp, g: Geometry) -> float:
    """(1+delta)/(1-delta) * || I - r_m(A) r_{m+m'}(A)^{-1} || with
    delta = 4 eta~/(1-eta~)^2 from the enriched node set of r_mp."""
    nodes_m = tuple(r_m.nodes)
    nodes_mp = tuple(r_mp.nodes)
    if len(nodes_mp) <= len(nodes_m):
        raise BoundInvalid("reference interpolant must use strictly more nodes")
    eta = blaschke_eta(g, nodes_mp)
    if eta > _ETA_APOST_MAX:
        raise BoundInvalid(f"eta = {eta:.3g} > (sqrt(2)-1)^2, bound not applicable")
    delta = 4.0 * eta / (1.0 - eta) ** 2
    if delta >= 1.0:
        raise BoundInvalid(f"delta = {delta:.3g} >= 1")
    em = eval_rational_at_matrix(r_m, a)
    emp = eval_rational_at_matrix(r_mp, a)
    quot = _mul(a, em.data, _inv(a, emp.data))
    dev = _add(a, _identity(a), _scale(a, quot, -1.0))
    return (1.0 + delta) / (1.0 - delta) * _norm(a, dev)


# ---------------------------------------------------------------------------
# Automatic degree selection
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MatFunResult:
    approximation: MatArg
    m: int
    history: tuple  # rows (m, residual, apriori or None, accepted)
    representation: str
    not_triggered: bool = False
    scaling: tuple | None = None  # (ell, k, gamma_prime) when applicable


def auto_degree(spec: MarkovSpec, a: MatArg, g: Geometry, rep: str = "pfd",
                m_max: int = 20) -> MatFunResult:
    """Increase m while the worst-case residual stays below five times the
    a priori bound; return the last accepted degree (stop one before the
    first violation)."""
    nu = worst_case_spec(g.alpha, g.beta)
    interval = (g.alpha, g.beta)
    history = []
    prev = None
    for m in range(1, m_max + 1):
        try:
            thr = stopping_threshold(g, m)
            apr = apriori_bound(g, m)
        except BoundInvalid:
            thr = math.inf
            apr = None
        try:
            nodes = optimal_nodes(g, m)
            r_mu = fit_interpolant(spec, nodes, rep, interval=interval)
            r_nu = fit_interpolant(nu, nodes, rep, interval=interval)
            approx = eval_rational_at_matrix(r_mu, a)
            resid = residual_sqrt(a, r_nu, g)
        except MarktopError:
            # fit or evaluation degenerates once the error reaches the
            # rounding floor; treat as a rejected index and stop
            resid = math.inf
            approx = None
        accepted = resid < thr
        history.append((m, resid, apr, accepted))
        if not accepted:
            if prev is None:
                raise DegreeUnavailable(
                    f"residual {resid:.3g} >= threshold {thr:.3g} already at m=1")
            return MatFunResult(prev[1], prev[0], tuple(history), rep)
        prev = (m, approx)
    return MatFunResult(prev[1], prev[0], tuple(history), rep, not_triggered=True)


# ---------------------------------------------------------------------------
# Scaled Denman-Beavers Newton square root (product form)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SqrtResult:
    x: MatArg
    residuals: tuple[float, ...]  # ||I - M_k|| after each step
    mus: tuple[float, ...]
    phase2_start: int
    final_residual: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "final_residual",
                           self.residuals[-1] if self.residuals else math.inf)


_MAX_NEWTON = 25
_PHASE2_BUDGET = 5


def sqrt_db_newton(b: MatArg, tol: float | None = None) -> SqrtResult:
    """Product-form Denman-Beavers iteration with the optimal scaling
    schedule; mu is frozen at 1 once (1 - mu^4)/mu^4 <= 1e-3."""
    c, d = b.c, b.d
    if tol is None:
        tol = 10.0 * b.n * _EPS * (d / c)
    mu = 1.0 / (c * d) ** 0.25
    mu_next = math.sqrt(2.0 * (c * d) ** 0.25 / (math.sqrt(c) + math.sqrt(d)))
    x = b.data
    m = b.data
    phase = 1
    phase2_start = -1
    phase2_steps = 0
    residuals = []
    mus = []
    for k in range(_MAX_NEWTON):
        # mu may start above 1 when cd < 1; the switch tests closeness to 1
        if phase == 1 and abs(1.0 - mu ** 4) / mu ** 4 <= 1e-3:
            phase = 2
            phase2_start = k
            mu = 1.0
        mus.append(mu)
        minv = _inv(b, m)
        m = _add(b, _scale(b, _identity(b), 0.5),
                 _add(b, _scale(b, m, mu * mu / 4.0),
                      _scale(b, minv, 1.0 / (4.0 * mu * mu))))
        x = _mul(b, _add(b, _identity(b), _scale(b, minv, 1.0 / (mu * mu))),
                 _scale(b, x, mu / 2.0))
        res = _norm(b, _add(b, _identity(b), _scale(b, m, -1.0)))
        residuals.append(res)
        if phase == 2:
            phase2_steps += 1
        if res <= tol or (phase == 2 and phase2_steps >= _PHASE2_BUDGET):
            sq_c, sq_d = math.sqrt(c), math.sqrt(d)
            return SqrtResult(MatArg(b.kind, x, sq_c, sq_d), tuple(residuals),
                              tuple(mus), phase2_start)
        if phase == 1:
            mu = mu_next
            mu_next = math.sqrt(2.0 * mu / (1.0 + mu * mu))
    raise NoConvergence(f"Newton square root: ||I - M|| = {residuals[-1]:.3g} "
                        f"after {_MAX_NEWTON} iterations (tol {tol:.3g})")


# ---------------------------------------------------------------------------
# Inverse scaling and squaring drivers
# ---------------------------------------------------------------------------

def _choice_ell(c: float, d: float) -> int:
    ell = 0
    while (d / c) ** (1.0 / 2 ** ell) > 10.0:
        ell += 1
    return ell


def _contract(a: MatArg, ell: int) -> MatArg:
    out = a
    for _ in range(ell):
        out = sqrt_db_newton(out).x
    return out


def log_via_scaling(a: MatArg, rep: str = "pfd", m_max: int = 20) -> MatFunResult:
    """log(A) = 2^ell log(A^(1/2^ell)) with the inner log through the
    Markov function log(z)/(z-1): log(B) = (B - I) r_m(B)."""
    ell = _choice_ell(a.c, a.d)
    a_ell = _contract(a, ell)
    spec = log_spec()
    g = build_geometry(spec.alpha, spec.beta, a_ell.c, a_ell.d)
    inner = auto_degree(spec, a_ell, g, rep, m_max)
    out = _scale(a, _mul(a, _shift(a, a_ell.data, 1.0), inner.approximation.data),
                 float(2 ** ell))
    approx = MatArg(a.kind, out, inner.approximation.c, inner.approximation.d)
    return MatFunResult(approx, inner.m, inner.history, rep,
                        inner.not_triggered, scaling=(ell, 0, None))


def frac_power(a: MatArg, gamma: float, rep: str = "pfd",
               m_max: int = 20) -> MatFunResult:
    """A^gamma by inverse scaling and squaring: write 2^ell gamma = k + g'
    with k integer and g' in [-1, 0), then A^gamma = r(A_ell) A_ell^k where
    r approximates z^g' and A_ell = A^(1/2^ell)."""
    if gamma == 0.0:
        ident = MatArg(a.kind, _identity(a), 1.0, 1.0)
        return MatFunResult(ident, 0, (), rep, scaling=(0, 0, 0.0))
    ell = _choice_ell(a.c, a.d)
    gp_total = 2 ** ell * gamma
    a_ell = _contract(a, ell)
    lo = min(a.c ** gamma, a.d ** gamma)
    hi = max(a.c ** gamma, a.d ** gamma)
    if gp_total == int(gp_total):
        # 2^ell gamma integral: plain integer power, no interpolant needed
        k = int(gp_total)
        out = _identity(a)
        base = a_ell.data if k > 0 else _inv(a, a_ell.data)
        for _ in range(abs(k)):
            out = _mul(a, out, base)
        return MatFunResult(MatArg(a.kind, out, lo, hi), 0, (), rep,
                            scaling=(ell, k, 0.0))
    k = math.floor(gp_total) + 1
    gp = gp_total - k
    spec = power_spec(gp)
    g = build_geometry(spec.alpha, spec.beta, a_ell.c, a_ell.d)
    inner = auto_degree(spec, a_ell, g, rep, m_max)
    out = inner.approximation.data
    if k > 0:
        for _ in range(k):
            out = _mul(a, out, a_ell.data)
    elif k < 0:
        a_inv = _inv(a, a_ell.data)
        for _ in range(-k):
            out = _mul(a, out, a_inv)
    approx = MatArg(a.kind, out, lo, hi)
    return MatFunResult(approx, inner.m, inner.history, rep,
                        inner.not_triggered, scaling=(ell, k, gp))

"""Scalar inequalities that drive the operator bounds.

Each function evaluates one inequality at explicit numbers and returns a
ScalarCheck (a tuple of them for chains) carrying lhs/rhs/slack, so fuzz
drivers aggregate slacks instead of booleans.  Preconditions raise; a
returned check always refers to a well-posed instance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadParametersError, BadWindowError, DomainError, NotConjugateError, PreconditionFailedError
from .scalarfn import ScalarFunction

REL_TOL = 1e-12


@dataclass(frozen=True)
class ScalarCheck:
    """One evaluated inequality lhs <= rhs."""

    lhs: float
    rhs: float
    rel_tol: float = REL_TOL

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.slack >= -self.rel_tol * max(1.0, abs(self.rhs))


def _require_nonneg(**vals) -> None:
    for name, v in vals.items():
        v = float(v)
        if not np.isfinite(v) or v < 0.0:
            raise DomainError("%s must be finite and >= 0, got %r" % (name, v))


def conjugate_exponent(p: float) -> float:
    p = float(p)
    if p <= 1.0:
        raise NotConjugateError("conjugate exponent needs p > 1, got %r" % p)
    return p / (p - 1.0)


def require_conjugate(p: float, q: float, tol: float = 1e-12) -> None:
    if p <= 1.0 or q <= 1.0 or abs(1.0 / p + 1.0 / q - 1.0) > tol:
        raise NotConjugateError("exponents (%r, %r) are not a conjugate pair" % (p, q))


def jensen_chain(sigma: float, tau: float, alpha: float, r: float) -> tuple[ScalarCheck, ScalarCheck]:
    """sigma^a tau^(1-a)  <=  a sigma + (1-a) tau  <=  (a sigma^r + (1-a) tau^r)^(1/r).

    Two checks, one per link; r >= 1, alpha in [0, 1].
    """
    _require_nonneg(sigma=sigma, tau=tau)
    if not 0.0 <= alpha <= 1.0:
        raise BadParametersError("weight must lie in [0, 1], got %r" % alpha)
    if r < 1.0:
        raise BadParametersError("outer exponent needs r >= 1, got %r" % r)
    geo = sigma**alpha * tau ** (1.0 - alpha)
    ari = alpha * sigma + (1.0 - alpha) * tau
    pow_mean = (alpha * sigma**r + (1.0 - alpha) * tau**r) ** (1.0 / r)
    return ScalarCheck(geo, ari), ScalarCheck(ari, pow_mean)


def young_refined(sigma: float, tau: float, p: float, q: float) -> ScalarCheck:
    """sigma tau + r0 (sigma^(p/2) - tau^(q/2))^2  <=  sigma^p/p + tau^q/q.

    r0 = min(1/p, 1/q); the squared term is the Young-gap refinement.
    """
    _require_nonneg(sigma=sigma, tau=tau)
    require_conjugate(p, q)
    r0 = min(1.0 / p, 1.0 / q)
    lhs = sigma * tau + r0 * (sigma ** (p / 2.0) - tau ** (q / 2.0)) ** 2
    rhs = sigma**p / p + tau**q / q
    return ScalarCheck(lhs, rhs)


def young_generalized(sigma: float, tau: float, p: float, q: float, m: int, r: float) -> ScalarCheck:
    """(sigma^(1/p) tau^(1/q))^m + r0^m (sigma^(m/2) - tau^(m/2))^2
       <=  (sigma^r/p + tau^r/q)^(m/r)   for r >= 1 and integer m >= 1.

    Fails for fractional m (e.g. m = 0.23), so the integrality check is
    load-bearing, not cosmetic.
    """
    _require_nonneg(sigma=sigma, tau=tau)
    require_conjugate(p, q)
    if r < 1.0:
        raise BadParametersError("outer exponent needs r >= 1, got %r" % r)
    if m < 1 or abs(m - round(m)) > 1e-12:
        raise BadParametersError("iteration count must be a positive integer, got %r" % (m,))
    m = float(round(m))
    r0 = min(1.0 / p, 1.0 / q)
    lhs = (sigma ** (1.0 / p) * tau ** (1.0 / q)) ** m + r0**m * (sigma ** (m / 2.0) - tau ** (m / 2.0)) ** 2
    rhs = (sigma**r / p + tau**r / q) ** (m / r)
    return ScalarCheck(lhs, rhs)


def young_generalized_eq4(sigma: float, tau: float, m: int, r: float) -> ScalarCheck:
    """p = q = 2 slice: (sigma tau)^(m/2) + 2^-m (sigma^(m/2) - tau^(m/2))^2
    <= 2^(-m/r) (sigma^r + tau^r)^(m/r)."""
    return young_generalized(sigma, tau, 2.0, 2.0, m, r)


def young_generalized_eq5(sigma: float, tau: float, r: float) -> ScalarCheck:
    """m = 1, p = q = 2 slice: the refined AM bounded by the r-power mean."""
    return young_generalized(sigma, tau, 2.0, 2.0, 1.0, r)


def agm_refined(mu: float, nu: float, delta: float, Delta: float) -> ScalarCheck:
    """((Delta + delta) / (2 sqrt(delta Delta))) sqrt(mu nu)  <=  (mu + nu)/2
    whenever the window [delta, Delta] separates mu from nu."""
    _require_nonneg(mu=mu, nu=nu)
    if not 0.0 < delta < Delta:
        raise BadWindowError("need 0 < delta < Delta, got (%r, %r)" % (delta, Delta))
    lo, hi = min(mu, nu), max(mu, nu)
    if not (lo <= delta and Delta <= hi):
        raise PreconditionFailedError(
            "window [%g, %g] does not separate %g from %g" % (delta, Delta, mu, nu),
            margins={"low": delta - lo, "high": hi - Delta},
        )
    lhs = (Delta + delta) / (2.0 * np.sqrt(delta * Delta)) * np.sqrt(mu * nu)
    rhs = (mu + nu) / 2.0
    return ScalarCheck(lhs, rhs)


def power_sum_convexity(sigmas, r: float) -> ScalarCheck:
    """(sum sigma_i)^r <= n^(r-1) sum sigma_i^r for r >= 1, sigma_i >= 0."""
    s = np.asarray(sigmas, dtype=float)
    if s.ndim != 1 or s.size == 0:
        raise BadParametersError("need a non-empty 1-d array of terms")
    if np.any(s < 0.0) or not np.all(np.isfinite(s)):
        raise DomainError("terms must be finite and >= 0")
    if r < 1.0:
        raise BadParametersError("needs r >= 1, got %r" % r)
    n = s.size
    return ScalarCheck(float(s.sum() ** r), float(n ** (r - 1.0) * np.sum(s**r)))


def _derivative(f: ScalarFunction, x: float) -> float:
    if f.kind == "power":
        r = f.exponent
        if x == 0.0:
            return 1.0 if r == 1.0 else 0.0  # r > 1: derivative 0; r = 1: slope 1
        return r * x ** (r - 1.0)
    h = 1e-6 * max(1.0, abs(x))
    lo = max(x - h, 0.0)
    return float((f(x + h) - f(lo)) / (x + h - lo))


def superquadratic_gap(f: ScalarFunction, t: float, anchor: float) -> ScalarCheck:
    """f(anchor) + f'(anchor)(t - anchor) + f(|t - anchor|)  <=  f(t).

    The defining gap estimate for superquadratic f; both points >= 0.
    For non-power f the slope is a finite difference, so flags must be
    vouched for by the caller.
    """
    _require_nonneg(t=t, anchor=anchor)
    f.require("superquadratic")
    c = _derivative(f, anchor)
    lhs = float(f(anchor)) + c * (t - anchor) + float(f(abs(t - anchor)))
    return ScalarCheck(lhs, float(f(t)))


def subadditivity_gap(f: ScalarFunction, alpha: float, t: float) -> ScalarCheck:
    """f(alpha t) <= alpha f(t) for convex f with f(0) = 0, alpha in [0, 1]."""
    _require_nonneg(t=t)
    if not 0.0 <= alpha <= 1.0:
        raise BadParametersError("scaling must lie in [0, 1], got %r" % alpha)
    f.require("convex", "zero_at_zero", "nonnegative")
    return ScalarCheck(float(f(alpha * t)), alpha * float(f(t)))

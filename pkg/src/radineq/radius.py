"""Certified numerical radius.

w(A) = sup over unit vectors of |<A xi, xi>| equals the maximum over
angles theta of lambda_max(H_theta), where

    H_theta = cos(theta) X + sin(theta) Y,
    X = (A + A*)/2,  Y = (A - A*)/(2i).

The map g(theta) = lambda_max(H_theta) is a pointwise supremum of
cosine curves r cos(theta - phi) with r <= w(A).  On an interval of
width h < pi whose larger endpoint value m is nonnegative this gives
the certified interval bound

    sup g <= m / cos(h/2),

because a curve peaking inside the interval sits within h/2 of one
endpoint.  Branch-and-bound on those bounds yields a two-sided bracket
[lo, hi] with hi - lo below tolerance, plus the maximizing angle and a
witness vector.  A Lipschitz bound (|g' | <= ||A||) is kept as a
fallback for very wide or negative intervals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadParametersError, NotUnitVectorError, NumericalBreakdownError
from .linalg import as_matrix, dagger, gauge_fix, operator_norm

DEFAULT_TOL = 1e-9
DEFAULT_GRID = 720
DEFAULT_MAX_EVALS = 2_000_000


@dataclass(frozen=True)
class RadiusBracket:
    """Two-sided enclosure lo <= w(A) <= hi with a witness unit vector.

    ``witness`` attains |<A xi, xi>| = lo (up to eigensolver accuracy) at
    angle ``theta_star``; ``evals`` counts lambda_max evaluations.
    """

    lo: float
    hi: float
    theta_star: float
    witness: np.ndarray
    evals: int
    converged: bool

    @property
    def argmax_theta(self) -> float:
        return self.theta_star

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)


def rayleigh(a, xi, unit_tol: float = 1e-8) -> complex:
    """<A xi, xi> for a unit vector xi."""
    a = as_matrix(a)
    xi = np.asarray(xi, dtype=np.complex128).reshape(-1)
    nrm = float(np.linalg.norm(xi))
    if abs(nrm - 1.0) > unit_tol:
        raise NotUnitVectorError("expected a unit vector, got norm %r" % nrm)
    return complex(np.vdot(xi, a @ xi))


def _cartesian_parts(a: np.ndarray):
    x = (a + dagger(a)) / 2.0
    y = (a - dagger(a)) / 2.0j
    return x, y


def _g_batch(x: np.ndarray, y: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """lambda_max(cos t X + sin t Y) for a whole vector of angles at once."""
    c = np.cos(thetas)[:, None, None]
    s = np.sin(thetas)[:, None, None]
    h = c * x + s * y
    return np.linalg.eigvalsh(h)[:, -1]


def _interval_ub(ga: np.ndarray, gb: np.ndarray, h: float, lip: float) -> np.ndarray:
    """Certified sup bound for g on intervals of common width h."""
    m = np.maximum(ga, gb)
    cosine = np.where(m > 0.0, m / np.cos(0.5 * h), m)
    return np.minimum(cosine, m + lip * (0.5 * h))


def numerical_radius(
    a,
    tol: float = DEFAULT_TOL,
    grid: int = DEFAULT_GRID,
    max_evals: int = DEFAULT_MAX_EVALS,
) -> RadiusBracket:
    """Certified bracket for the numerical radius.

    Runs a uniform angular grid followed by level-synchronous interval
    bisection; an interval survives a level only while its certified sup
    bound exceeds the best value found plus ``tol``, so the returned
    bracket satisfies hi - lo <= tol absolutely.  All lambda_max
    evaluations in a level run as one stacked eigvalsh call.
    """
    a = as_matrix(a)
    n = a.shape[0]
    if tol < 1e-13:
        raise BadParametersError("bracket tolerance below 1e-13 is not certifiable, got %r" % tol)
    if not np.all(np.isfinite(a)):
        raise NumericalBreakdownError("matrix contains non-finite entries")
    nrm = operator_norm(a)
    if nrm == 0.0:
        e0 = np.zeros(n, dtype=np.complex128)
        e0[0] = 1.0
        return RadiusBracket(0.0, 0.0, 0.0, e0, 0, True)

    x, y = _cartesian_parts(a)
    lip = nrm

    thetas = np.linspace(0.0, 2.0 * np.pi, int(grid), endpoint=False)
    g = _g_batch(x, y, thetas)
    evals = int(grid)

    k = int(np.argmax(g))
    lo = float(g[k])
    theta_star = float(thetas[k])

    # Wrap-around interval list: [theta_i, theta_i + h) covering the circle.
    h = 2.0 * np.pi / grid
    left = thetas
    gl = g
    gr = np.roll(g, -1)

    converged = True
    cap = lo  # largest certified sup bound among discarded intervals
    while left.size:
        target = tol
        ub = _interval_ub(gl, gr, h, lip)
        keep = ub > lo + target
        dropped = ub[~keep]
        if dropped.size:
            cap = max(cap, float(np.max(dropped)))
        if not np.any(keep):
            break
        if evals >= max_evals:
            cap = max(cap, float(np.max(ub[keep])))
            converged = False
            hi = max(lo, cap)
            witness = _witness(x, y, theta_star)
            lo = max(lo, float(abs(np.vdot(witness, a @ witness))))
            return RadiusBracket(min(lo, hi), hi, theta_star, witness, evals, converged)

        left = left[keep]
        gl = gl[keep]
        gr = gr[keep]
        mids = left + 0.5 * h
        gm = _g_batch(x, y, mids)
        evals += int(mids.size)

        kbest = int(np.argmax(gm))
        if float(gm[kbest]) > lo:
            lo = float(gm[kbest])
            theta_star = float(mids[kbest])

        # Split each surviving interval at its midpoint.
        left = np.concatenate([left, mids])
        gl = np.concatenate([gl, gm])
        gr = np.concatenate([gm, gr])
        h *= 0.5

    witness = _witness(x, y, theta_star)
    lo_witness = float(abs(np.vdot(witness, a @ witness)))
    lo = max(lo, lo_witness)
    # Every interval was eventually discarded with certified sup <= cap,
    # and cap never exceeded lo + tol at the moment of discard.
    hi = max(lo, cap)
    return RadiusBracket(lo, hi, theta_star, witness, evals, converged)


def _witness(x: np.ndarray, y: np.ndarray, theta: float) -> np.ndarray:
    h = np.cos(theta) * x + np.sin(theta) * y
    vals, vecs = np.linalg.eigh(h)
    return gauge_fix(vecs[:, -1])


def _polish(a: np.ndarray, xi: np.ndarray, sweeps: int = 60) -> float:
    """Rayleigh-quotient ascent using only matrix-vector products.

    Repeatedly rotates A by the phase of the current Rayleigh value and
    power-iterates on the shifted Hermitian part.  Monotone in practice
    and independent of the eigensolver path used by numerical_radius.
    """
    n = a.shape[0]
    shift = float(np.linalg.norm(a)) + 1.0
    best = abs(np.vdot(xi, a @ xi))
    for _ in range(sweeps):
        z = np.vdot(xi, a @ xi)
        phase = z / abs(z) if abs(z) > 0 else 1.0
        # One power step on (Re(conj(phase) A) + shift I) applied to xi.
        v = 0.5 * (np.conj(phase) * (a @ xi) + phase * (dagger(a) @ xi)) + shift * xi
        nv = float(np.linalg.norm(v))
        if nv == 0.0:
            break
        xi = v / nv
        cur = abs(np.vdot(xi, a @ xi))
        if cur <= best + 1e-15:
            best = max(best, cur)
            break
        best = cur
    return float(best)


def radius_brute_oracle(a, samples: int = 100_000, seed: int = 0) -> float:
    """Lower-bound oracle: max |<A xi, xi>| over sampled unit vectors.

    Combines pseudo-random complex Gaussian directions, a deterministic
    angular lattice in dimension 2, and an ascent polish of the best
    candidates.  Every probe is a genuine unit vector, so the result
    never exceeds w(A).
    """
    a = as_matrix(a)
    n = a.shape[0]
    rng = np.random.default_rng(seed)

    best_val = 0.0
    best_vecs = []

    chunk = 20_000
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        z = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        z /= np.linalg.norm(z, axis=1, keepdims=True)
        q = np.abs(np.einsum("ij,jk,ik->i", z.conj(), a, z))
        j = int(np.argmax(q))
        if q[j] > best_val:
            best_val = float(q[j])
            best_vecs.append(z[j])
        done += m

    if n == 2:
        # xi = (cos t, sin t e^{i p}): |<A xi, xi>| only needs one relative phase.
        ts = np.linspace(0.0, np.pi / 2, 181)
        ps = np.linspace(0.0, 2.0 * np.pi, 361, endpoint=False)
        tt, pp = np.meshgrid(ts, ps, indexing="ij")
        z = np.stack(
            [np.cos(tt).ravel(), (np.sin(tt) * np.exp(1j * pp)).ravel()], axis=1
        )
        q = np.abs(np.einsum("ij,jk,ik->i", z.conj(), a, z))
        j = int(np.argmax(q))
        if q[j] > best_val:
            best_val = float(q[j])
        best_vecs.append(z[j])

    for xi in best_vecs[-4:]:
        best_val = max(best_val, _polish(a, xi.copy()))
    return best_val

"""Infima of correction functionals over the complex unit sphere.

The refined bounds subtract a term inf_{|xi|=1} F(xi) from their right
sides.  Any upper estimate of the infimum therefore gives a *smaller*
claimed correction and a *larger* net right side... which would weaken
the check, so the optimizer here is used the other way round: its value
is an upper bound on the infimum, and the evaluators subtract it, making
the verified inequality stricter than the stated one, never looser.

Built-in functional shapes:

  sum-of-squared-gaps   coeff * sum_t (<P_t x,x>^a_t - <Q_t x,x>^b_t)^2
  jensen gap            psi(<X x,x>) + psi(<Y x,x>) - 2 psi((<Xx,x>+<Yx,x>)/2)
  quadratic form        <M x,x>

All three are phase-invariant, so the optimizer works on the projective
sphere; a CUSTOM functional may not be, in which case the global phase
is scanned too.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import minimize

from .errors import BadKindError, BadParametersError, DomainError
from .linalg import (
    abs_power,
    abs_power_star,
    as_matrix,
    dagger,
    gauge_fix,
    herm_part,
    hermitian_eig,
    lambda_max,
    matrix_function,
    matrix_power_int,
    operator_norm,
    psd_power,
)
from .scalarfn import ScalarFunction

KINDS = ("RHO", "PSI_N1", "ETA_N3", "OMEGA_SCH2", "GAMMA_PSI", "SUPQ_DEFICIT", "CUSTOM")

DEFAULT_RESTARTS = 32
DEFAULT_TOL = 1e-8
MAX_ITERS = 500          # hard cap on projected-gradient sweeps
FD_STEP = 1e-6           # forward-difference step in the real embedding


@dataclass(frozen=True)
class SphereOptResult:
    """Upper estimate of inf F with the unit vector attaining it.

    ``value`` is exactly F(witness), so re-evaluation reproduces it.
    """

    value: float
    witness: np.ndarray
    evaluations: int
    converged: bool


@dataclass
class SphereFunctional:
    """A real functional on unit vectors, batch-evaluable.

    ``pairs`` holds (P, a, Q, b) terms for the squared-gap shape; exactly
    one of pairs / jensen / quad / fn is set, selected by ``mode``.
    """

    dim: int
    kind: str
    mode: str
    coefficient: float = 1.0
    pairs: list = field(default_factory=list)
    jensen: Optional[tuple] = None      # (X, Y, psi)
    quad: Optional[np.ndarray] = None
    fn: Optional[Callable[[np.ndarray], np.ndarray]] = None
    gauge_invariant: bool = True
    nonnegative: bool = True

    def _forms(self, z: np.ndarray, m: np.ndarray) -> np.ndarray:
        # batch of quadratic forms <M z_k, z_k>; PSD roundoff clipped at 0
        vals = np.einsum("ki,ij,kj->k", z.conj(), m, z).real
        return np.clip(vals, 0.0, None) if self.nonnegative else vals

    def evaluate_batch(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        if z.ndim == 1:
            z = z[None, :]
        if z.shape[1] != self.dim:
            raise BadParametersError("vectors of length %d, functional dim %d" % (z.shape[1], self.dim))
        norms = np.linalg.norm(z, axis=1, keepdims=True)
        if np.any(norms == 0.0):
            raise DomainError("zero vector cannot be normalized onto the sphere")
        z = z / norms
        if self.mode == "pairs":
            acc = np.zeros(z.shape[0])
            for p, a, q, b in self.pairs:
                acc += (self._forms(z, p) ** a - self._forms(z, q) ** b) ** 2
            return self.coefficient * acc
        if self.mode == "jensen":
            x_, y_, psi = self.jensen
            u = self._forms(z, x_)
            v = self._forms(z, y_)
            return self.coefficient * (psi(u) + psi(v) - 2.0 * psi((u + v) / 2.0))
        if self.mode == "quad":
            return self.coefficient * self._forms(z, self.quad)
        return np.asarray(self.fn(z), dtype=float)

    def evaluate(self, xi: np.ndarray) -> float:
        return float(self.evaluate_batch(np.asarray(xi, dtype=complex)[None, :])[0])

    def eval_real(self, x: np.ndarray) -> np.ndarray:
        """Evaluate on rows of a real (k, 2 dim) embedding [Re | Im]."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        z = x[:, : self.dim] + 1j * x[:, self.dim :]
        return self.evaluate_batch(z)

    def seed_matrices(self) -> list:
        if self.mode == "pairs":
            out = []
            for p, _, q, _ in self.pairs[:4]:
                out.append(p - q)
            return out
        if self.mode == "jensen":
            x_, y_, _ = self.jensen
            return [x_ - y_, x_, y_]
        if self.mode == "quad":
            return [self.quad]
        return []


def _pair_terms_sch(case, power_s: float, power_t: float):
    """S_ij = X psi^2(|A_i^j*|) X*,  T_ij = (A_i^(m-j) B_i)* phi^2(|A_i^j|) A_i^(m-j) B_i,
    raised to ``power_s`` / ``power_t``; shared by RHO and OMEGA_SCH2."""
    xs, as_, bs = case.ops("X_i"), case.ops("A_i"), case.ops("B_i")
    m = int(case.params["m"])
    psi, phi = case.functions["psi"], case.functions["phi"]
    terms = []
    for j in range(1, m + 1):
        for x, a, b in zip(xs, as_, bs):
            aj = matrix_power_int(a, j)
            rest = matrix_power_int(a, m - j) @ b
            s = herm_part(x @ matrix_function(abs_power_star(aj, 1.0), lambda t: psi(t) ** 2) @ dagger(x))
            t = herm_part(dagger(rest) @ matrix_function(abs_power(aj, 1.0), lambda u: phi(u) ** 2) @ rest)
            terms.append((psd_power(s, power_s), psd_power(t, power_t)))
    return terms, m, len(xs)


def _pair_terms_dc(case, power_s: float, power_t: float):
    """|C_i^j A_i|^(2 power_s) and |(D_i C_i^(m-j))*|^(2 power_t) terms,
    shared by PSI_N1 and ETA_N3."""
    as_, cs, ds = case.ops("A_i"), case.ops("C_i"), case.ops("D_i")
    m = int(case.params["m"])
    terms = []
    for j in range(1, m + 1):
        for a, c, d in zip(as_, cs, ds):
            g1 = matrix_power_int(c, j) @ a
            g2 = d @ matrix_power_int(c, m - j)
            terms.append((abs_power(g1, 2.0 * power_s), abs_power_star(g2, 2.0 * power_t)))
    return terms, m, len(as_)


def build_correction_functional(kind: str, case, operands=None, psi: Optional[ScalarFunction] = None) -> SphereFunctional:
    """Assemble the correction functional a refined bound subtracts.

    RHO / PSI_N1 / ETA_N3 / OMEGA_SCH2 / SUPQ_DEFICIT read the operators
    straight from the case; GAMMA_PSI takes the (X, Y) pair via
    ``operands`` because each corollary conjugates different powers, and
    CUSTOM takes a batch callable.
    """
    if kind not in KINDS:
        raise BadKindError("unknown functional kind %r (known: %s)" % (kind, ", ".join(KINDS)))
    if case is None and kind != "GAMMA_PSI":
        raise BadParametersError("functional kind %r needs a case" % kind)
    dim = case.dim if case is not None else as_matrix(operands[0]).shape[0]

    if kind in ("RHO", "OMEGA_SCH2", "PSI_N1", "ETA_N3"):
        p, q = float(case.params["p"]), float(case.params["q"])
        if abs(1.0 / p + 1.0 / q - 1.0) > 1e-12:
            raise BadParametersError(
                "exponents must be conjugate: 1/%g + 1/%g = %r" % (p, q, 1.0 / p + 1.0 / q)
            )

    if kind == "RHO":
        r = float(case.params["r"])
        p, q = float(case.params["p"]), float(case.params["q"])
        terms, m, n = _pair_terms_sch(case, r, r)
        pairs = [(s, p / 2.0, t, q / 2.0) for s, t in terms]
        return SphereFunctional(dim, kind, "pairs", n ** (2.0 * r - 1.0) / m, pairs)
    if kind == "OMEGA_SCH2":
        k = float(case.params["k"])
        p, q = float(case.params["p"]), float(case.params["q"])
        terms, m, n = _pair_terms_sch(case, p, q)
        pairs = [(s, k / 2.0, t, k / 2.0) for s, t in terms]
        return SphereFunctional(dim, kind, "pairs", n ** (2.0 * k - 1.0) / m, pairs)
    if kind == "PSI_N1":
        p, q = float(case.params["p"]), float(case.params["q"])
        terms, m, n = _pair_terms_dc(case, 1.0, 1.0)
        pairs = [(s, p / 2.0, t, q / 2.0) for s, t in terms]
        return SphereFunctional(dim, kind, "pairs", n / m, pairs)
    if kind == "ETA_N3":
        k = float(case.params["k"])
        p, q = float(case.params["p"]), float(case.params["q"])
        terms, m, n = _pair_terms_dc(case, p, q)
        pairs = [(s, k / 2.0, t, k / 2.0) for s, t in terms]
        return SphereFunctional(dim, kind, "pairs", n ** (2.0 * k - 1.0) / m, pairs)
    if kind == "GAMMA_PSI":
        if operands is None or len(operands) != 2:
            raise BadParametersError("jensen-gap functional needs operands=(X, Y)")
        f = psi or case.functions["psi"]
        f.require("convex")
        x_, y_ = as_matrix(operands[0]), as_matrix(operands[1])
        return SphereFunctional(x_.shape[0], kind, "jensen", 1.0, jensen=(x_, y_, f))
    if kind == "SUPQ_DEFICIT":
        f = psi or case.functions["psi"]
        a = case.op("A")
        absa = abs_power(a, 1.0)
        gap = operator_norm(a) * np.eye(a.shape[0]) - absa   # ||A|| I - |A| is PSD
        # clip roundoff negatives against ||A||, not the gap's own scale:
        # for near-unitary A the whole gap matrix is numerically zero
        dec = hermitian_eig(herm_part(gap))
        m_ = dec.apply(np.asarray(f(np.clip(dec.values, 0.0, None)), dtype=float))
        return SphereFunctional(a.shape[0], kind, "quad", 1.0, quad=herm_part(m_))
    # CUSTOM
    if operands is None or not callable(operands):
        raise BadParametersError("custom functional needs a batch callable as operands")
    return SphereFunctional(int(dim), kind, "custom", fn=operands, gauge_invariant=False, nonnegative=False)


def _start_block(functional: SphereFunctional, restarts: int, presample: int,
                 rng: np.random.Generator) -> tuple[np.ndarray, int]:
    n = functional.dim
    cols = []
    for m in functional.seed_matrices():
        cols.append(hermitian_eig(herm_part(m)).vectors.T)
    seeds = np.concatenate(cols, axis=0)[: 4 * n] if cols else np.zeros((0, n), dtype=complex)
    pool = max(presample, restarts)
    rand = rng.standard_normal((pool, n)) + 1j * rng.standard_normal((pool, n))
    rand = rand / np.linalg.norm(rand, axis=1, keepdims=True)
    pre_evals = 0
    if pool > restarts:
        fv = functional.evaluate_batch(rand)
        pre_evals = pool
        rand = rand[np.argsort(fv)[:restarts]]
    z = np.concatenate([seeds, rand], axis=0)
    z = z / np.linalg.norm(z, axis=1, keepdims=True)
    return np.concatenate([z.real, z.imag], axis=1), pre_evals


def infimum_unit_sphere(
    functional: SphereFunctional,
    restarts: int = DEFAULT_RESTARTS,
    tol: float = DEFAULT_TOL,
    max_iters: int = MAX_ITERS,
    seed: int = 0,
    polish: bool = True,
    presample: int = 0,
) -> SphereOptResult:
    """Multistart projected gradient descent on the unit sphere.

    All restarts advance in lockstep, one batched functional call per
    sweep; a Nelder-Mead polish runs from the best point.  ``presample``
    screens that many random points and keeps only the best ``restarts``
    as starts, which buys global coverage far cheaper than extra descent
    lanes.  The returned value is F(witness) exactly.
    """
    if restarts < 1:
        raise BadParametersError("needs at least one restart")
    n = functional.dim
    rng = np.random.default_rng(seed)
    x, evals = _start_block(functional, restarts, presample, rng)
    rows = x.shape[0]

    val = functional.eval_real(x)
    evals += rows
    step = np.full(rows, 0.25)
    alive = np.ones(rows, dtype=bool)
    converged = False
    fd_block = np.eye(2 * n) * FD_STEP
    for _ in range(max_iters):
        if not alive.any():
            converged = True
            break
        idx = np.where(alive)[0]
        xa = x[idx]
        base = val[idx]
        shifted = (xa[:, None, :] + fd_block[None, :, :]).reshape(-1, 2 * n)
        grad = (functional.eval_real(shifted).reshape(len(idx), 2 * n) - base[:, None]) / FD_STEP
        evals += shifted.shape[0]
        # tangential component only: radial moves are killed by renormalization
        grad -= (np.sum(grad * xa, axis=1) / np.sum(xa * xa, axis=1))[:, None] * xa
        cand = xa - step[idx][:, None] * grad
        cand /= np.linalg.norm(cand, axis=1, keepdims=True)
        cval = functional.eval_real(cand)
        evals += len(idx)
        better = cval < base - 1e-15 * np.maximum(1.0, np.abs(base))
        take = idx[better]
        x[take] = cand[better]
        val[take] = cval[better]
        shrink = idx[~better]
        step[shrink] *= 0.5
        alive[idx] = step[idx] > tol
    else:
        converged = not alive.any()

    if n == 2:
        # coarse global sweep; dim 2 is cheap and multimodal cases exist
        t = np.linspace(0.0, np.pi / 2.0, 61)
        ph = np.linspace(0.0, 2.0 * np.pi, 121, endpoint=False)
        tt, pp = np.meshgrid(t, ph, indexing="ij")
        z = np.stack([np.cos(tt).ravel(), (np.sin(tt) * np.exp(1j * pp)).ravel()], axis=1)
        lv = functional.evaluate_batch(z)
        evals += z.shape[0]
        k = int(np.argmin(lv))
        if lv[k] < val.min():
            x = np.vstack([x, np.concatenate([z[k].real, z[k].imag])])
            val = np.append(val, lv[k])

    best = int(np.argmin(val))
    xbest, vbest = x[best], val[best]
    if polish:
        res = minimize(
            lambda v: float(functional.eval_real(v / np.linalg.norm(v))[0]),
            xbest,
            method="Nelder-Mead",
            options={"maxfev": 200 * n, "xatol": 1e-12, "fatol": 1e-14},
        )
        evals += res.nfev
        if res.fun < vbest:
            xbest, vbest = res.x / np.linalg.norm(res.x), float(res.fun)

    witness = xbest[:n] + 1j * xbest[n:]
    witness = witness / np.linalg.norm(witness)
    if functional.gauge_invariant:
        witness = gauge_fix(witness)
    value = functional.evaluate(witness)
    evals += 1
    return SphereOptResult(value=value, witness=witness, evaluations=evals, converged=converged)


def lattice_infimum_oracle(functional: SphereFunctional, resolution: int = 200, stages: int = 3) -> SphereOptResult:
    """Exhaustive angular scan for dim 2, refined by window zoom.

    A unit vector is (cos t, sin t e^(i phi)) up to global phase; the
    phase-invariant shapes need only the (t, phi) grid, a CUSTOM one is
    scanned over the global phase as well.
    """
    if functional.dim != 2:
        raise DomainError("lattice oracle is defined for dim 2 only, got dim %d" % functional.dim)
    if resolution < 8:
        raise BadParametersError("resolution too coarse: %d" % resolution)
    t_lo, t_hi = 0.0, np.pi / 2.0
    p_lo, p_hi = 0.0, 2.0 * np.pi
    g_lo, g_hi = 0.0, 2.0 * np.pi
    evals = 0
    best = (np.inf, None)
    for stage in range(stages):
        t = np.linspace(t_lo, t_hi, resolution)
        ph = np.linspace(p_lo, p_hi, resolution, endpoint=(stage > 0))
        tt, pp = np.meshgrid(t, ph, indexing="ij")
        z = np.stack([np.cos(tt).ravel(), (np.sin(tt) * np.exp(1j * pp)).ravel()], axis=1)
        if functional.gauge_invariant:
            lv = functional.evaluate_batch(z)
            evals += z.shape[0]
            k = int(np.argmin(lv))
            cand = (float(lv[k]), z[k], tt.ravel()[k], pp.ravel()[k], 0.0)
        else:
            cand = (np.inf, None, 0.0, 0.0, 0.0)
            for g in np.linspace(g_lo, g_hi, resolution, endpoint=(stage > 0)):
                zg = z * np.exp(1j * g)
                lv = functional.evaluate_batch(zg)
                evals += z.shape[0]
                k = int(np.argmin(lv))
                if lv[k] < cand[0]:
                    cand = (float(lv[k]), zg[k], tt.ravel()[k], pp.ravel()[k], g)
        if cand[0] < best[0]:
            best = (cand[0], cand[1])
        # zoom: shrink every scanned window around the argmin
        tc, pc, gc = cand[2], cand[3], cand[4]
        t_span = (t_hi - t_lo) * 4.0 / resolution
        p_span = (p_hi - p_lo) * 4.0 / resolution
        t_lo, t_hi = max(0.0, tc - t_span), min(np.pi / 2.0, tc + t_span)
        p_lo, p_hi = pc - p_span, pc + p_span
        if not functional.gauge_invariant:
            g_span = (g_hi - g_lo) * 4.0 / resolution
            g_lo, g_hi = gc - g_span, gc + g_span
    witness = best[1]
    if functional.gauge_invariant:
        witness = gauge_fix(witness)
    value = functional.evaluate(witness)
    return SphereOptResult(value=value, witness=witness, evaluations=evals + 1, converged=True)

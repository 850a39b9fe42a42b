"""Bound registry: one evaluator per catalogued inequality.

Conventions enforced across every evaluator:

- A certified radius bracket is rounded against the check: a radius on
  the small side of ``<=`` contributes its upper endpoint, one on the
  large side its lower endpoint, so bracket uncertainty can only make
  the check stricter, never let a violation slip through.
- Corrections are sphere infima computed as upper estimates of the true
  infimum and subtracted from the right side; that again only tightens
  the check.  Reported corrections are clipped at zero (the true infima
  are nonnegative), with the raw optimizer value kept in ``details``.
- Operator-order claims L <= R (Loewner) are scalarized at the bottom
  eigenvector of R - L, where the quadratic-form gap equals
  lambda_min(R - L) exactly.
- Two-sided chains report the binding link in lhs/rhs and keep every
  link in ``details``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .cases import InequalityCase
from .errors import BadKindError, BadWindowError, DomainError, PreconditionFailedError
from .linalg import (
    abs_op,
    abs_power,
    abs_power_star,
    dagger,
    exp_r_scalar,
    herm_part,
    hermitian_eig,
    lambda_max,
    lambda_min,
    matrix_function,
    matrix_power_int,
    operator_norm,
    polar_unitary,
    psd_power,
    weighted_means,
)
from .radius import RadiusBracket, numerical_radius
from .scalarfn import ScalarFunction, check_pair, power
from .sphere import (
    SphereFunctional,
    _pair_terms_dc,
    _pair_terms_sch,
    build_correction_functional,
    infimum_unit_sphere,
)

HOLDS = "holds"
VIOLATED = "violated"
PRE_FAILED = "precondition-failed"

PRE_TOL = 1e-9  # slop allowed when re-verifying generated window hypotheses


@dataclass(frozen=True)
class EvalOptions:
    """Numerical knobs shared by every evaluator.

    The defaults favor accuracy; ``FAST_OPTIONS`` trades bracket width
    and sphere-search depth for speed in bulk runs.  Both keep every
    quantity on the conservative side of its check.
    """

    rel_tol: float = 1e-8
    radius_tol: float = 1e-9
    radius_grid: int = 720
    sphere_restarts: int = 24
    sphere_presample: int = 256
    sphere_iters: int = 500
    sphere_polish: bool = True
    sphere_seed: int = 0


FAST_OPTIONS = EvalOptions(
    radius_grid=144,
    sphere_restarts=4,
    sphere_presample=128,
    sphere_iters=60,
    sphere_polish=False,
)


@dataclass(frozen=True)
class CheckResult:
    bound_id: str
    status: str
    lhs: float
    rhs_raw: float
    correction: float
    rhs_net: float
    slack: float
    rel_tol: float
    details: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status == HOLDS


@dataclass(frozen=True)
class Bound:
    bound_id: str
    formula: str
    evaluate: Callable[[InequalityCase, EvalOptions], CheckResult]
    has_correction: bool = False
    falsification_only: bool = False

    def make_case(self, dim: int, rng: np.random.Generator) -> InequalityCase:
        from .generators import case_for_bound

        return case_for_bound(self.bound_id, dim, rng)


REGISTRY: dict[str, Bound] = {}


def _register(bound_id: str, formula: str, has_correction: bool = False,
              falsification_only: bool = False):
    def deco(fn):
        REGISTRY[bound_id] = Bound(bound_id, formula, fn, has_correction, falsification_only)
        return fn

    return deco


def all_bound_ids(include_falsification_only: bool = False) -> list[str]:
    return [bid for bid, b in REGISTRY.items()
            if include_falsification_only or not b.falsification_only]


def evaluate_bound(bound_id: str, case: InequalityCase,
                   opts: Optional[EvalOptions] = None) -> CheckResult:
    bound = REGISTRY.get(bound_id)
    if bound is None:
        raise BadKindError("unknown bound %r" % bound_id)
    opts = opts or EvalOptions()
    try:
        return bound.evaluate(case, opts)
    except (PreconditionFailedError, BadWindowError, DomainError) as exc:
        details = {"reason": str(exc)}
        margins = getattr(exc, "margins", None)
        if margins:
            details["margins"] = {k: float(v) for k, v in margins.items()}
        return CheckResult(bound_id, PRE_FAILED, float("nan"), float("nan"), 0.0,
                           float("nan"), float("nan"), opts.rel_tol, details)


# -- shared pieces -------------------------------------------------------------


def _w(a: np.ndarray, opts: EvalOptions) -> RadiusBracket:
    return numerical_radius(a, tol=opts.radius_tol, grid=opts.radius_grid)


def _inf(functional: SphereFunctional, opts: EvalOptions) -> tuple[float, float]:
    """(clipped correction, raw optimizer value)."""
    res = infimum_unit_sphere(
        functional,
        restarts=opts.sphere_restarts,
        max_iters=opts.sphere_iters,
        polish=opts.sphere_polish,
        presample=opts.sphere_presample,
        seed=opts.sphere_seed,
    )
    return max(res.value, 0.0), res.value


def _finish(bound_id: str, lhs: float, rhs_raw: float, opts: EvalOptions,
            correction: float = 0.0, **details) -> CheckResult:
    rhs_net = rhs_raw - correction
    slack = rhs_net - lhs
    status = HOLDS if slack >= -opts.rel_tol * max(1.0, abs(rhs_net)) else VIOLATED
    return CheckResult(bound_id, status, float(lhs), float(rhs_raw), float(correction),
                       float(rhs_net), float(slack), opts.rel_tol, details)


def _chain(bound_id: str, links: list[tuple[str, float, float]], opts: EvalOptions,
           **details) -> CheckResult:
    """Several claims lhs_k <= rhs_k at once; the binding link is reported."""
    ok = True
    rel = []
    link_detail = {}
    for name, lhs, rhs in links:
        slack = rhs - lhs
        ok = ok and slack >= -opts.rel_tol * max(1.0, abs(rhs))
        rel.append(slack / max(1.0, abs(rhs)))
        link_detail[name] = {"lhs": float(lhs), "rhs": float(rhs), "slack": float(slack)}
    k = int(np.argmin(rel))
    name, lhs, rhs = links[k]
    details.update(links=link_detail, binding=name)
    return CheckResult(bound_id, HOLDS if ok else VIOLATED, float(lhs), float(rhs), 0.0,
                       float(rhs), float(rhs - lhs), opts.rel_tol, details)


def _order_links(claims: list[tuple[str, float, np.ndarray, np.ndarray]]):
    """Scalarize factor * L <= R at the bottom eigenvector of R - factor L."""
    links = []
    for name, factor, left, right in claims:
        diff = herm_part(right - factor * left)
        dec = hermitian_eig(diff)
        xi = dec.vectors[:, 0]
        lo = float(np.real(np.vdot(xi, (factor * left) @ xi)))
        hi = float(np.real(np.vdot(xi, right @ xi)))
        links.append((name, lo, hi))
    return links


def _ip(u: np.ndarray, v: np.ndarray) -> complex:
    """Inner product linear in the first slot."""
    return complex(np.vdot(v, u))


def _quadform(m: np.ndarray, xi: np.ndarray) -> float:
    return float(np.real(np.vdot(xi, m @ xi)))


def _mf2(base: np.ndarray, f: ScalarFunction) -> np.ndarray:
    return matrix_function(base, lambda t: f(t) ** 2)


def _sum_dca(case: InequalityCase) -> np.ndarray:
    m = int(case.params["m"])
    acc = None
    for a, c, d in zip(case.ops("A_i"), case.ops("C_i"), case.ops("D_i")):
        term = d @ matrix_power_int(c, m) @ a
        acc = term if acc is None else acc + term
    return acc


def _sum_xab(case: InequalityCase) -> np.ndarray:
    m = int(case.params["m"])
    acc = None
    for x, a, b in zip(case.ops("X_i"), case.ops("A_i"), case.ops("B_i")):
        term = x @ matrix_power_int(a, m) @ b
        acc = term if acc is None else acc + term
    return acc


def check_sandwich(x: np.ndarray, y: np.ndarray, delta: float, Delta: float,
                   tol: float = PRE_TOL) -> tuple[bool, dict]:
    """Verify that the window [delta, Delta] separates the PSD pair.

    Returns ``(swapped, margins)`` where ``swapped`` is False when x sits
    below delta and y above Delta, True for the reverse; raises
    PreconditionFailedError when neither orientation verifies, and
    BadWindowError for an empty window.
    """
    if not 0.0 < delta < Delta:
        raise BadWindowError("need 0 < delta < Delta, got (%r, %r)" % (delta, Delta))
    top_x, bot_x = lambda_max(x), lambda_min(x)
    top_y, bot_y = lambda_max(y), lambda_min(y)
    margins = {
        "x_below_delta": delta - top_x,
        "y_above_Delta": bot_y - Delta,
        "y_below_delta": delta - top_y,
        "x_above_Delta": bot_x - Delta,
    }
    scale = max(1.0, delta, Delta)
    if margins["x_below_delta"] >= -tol * scale and margins["y_above_Delta"] >= -tol * scale:
        return False, margins
    if margins["y_below_delta"] >= -tol * scale and margins["x_above_Delta"] >= -tol * scale:
        return True, margins
    raise PreconditionFailedError("window [%g, %g] does not separate the pair" % (delta, Delta),
                                  margins=margins)


def compare_tightness(results: list[CheckResult]) -> list[tuple[str, float]]:
    """Per bound, the largest lhs / rhs_net ratio seen (1.0 = tight).

    Results with rhs_net == 0 are skipped; a zero lhs against a positive
    rhs_net scores 0.  Sorted most-to-least tight.
    """
    best: dict[str, float] = {}
    for res in results:
        if res.status == PRE_FAILED or res.rhs_net == 0.0 or not np.isfinite(res.rhs_net):
            continue
        ratio = 0.0 if (res.lhs == 0.0 and res.rhs_net > 0.0) else res.lhs / res.rhs_net
        if res.bound_id not in best or ratio > best[res.bound_id]:
            best[res.bound_id] = ratio
    return sorted(best.items(), key=lambda kv: kv[1], reverse=True)


# -- plain radius/norm bounds --------------------------------------------------


@_register("B-N1-SANDWICH", "||T||/2 <= w(T) <= ||T||")
def _b_n1_sandwich(case, opts):
    a = case.op("A")
    nrm = operator_norm(a)
    br = _w(a, opts)
    return _chain("B-N1-SANDWICH", [("lower", 0.5 * nrm, br.lo), ("upper", br.hi, nrm)],
                  opts, norm=nrm, w_lo=br.lo, w_hi=br.hi)


@_register("B-POWER", "w(T^n) <= w(T)^n")
def _b_power(case, opts):
    a = case.op("A")
    n = int(case.params["n_pow"])
    lhs = _w(matrix_power_int(a, n), opts).hi
    rhs = _w(a, opts).lo ** n
    return _finish("B-POWER", lhs, rhs, opts, n_pow=n)


@_register("B-MUNA6", "w(A) <= |||A| + |A*||| / 2")
def _b_muna6(case, opts):
    a = case.op("A")
    lhs = _w(a, opts).hi
    rhs = 0.5 * operator_norm(abs_op(a) + abs_op(dagger(a)))
    return _finish("B-MUNA6", lhs, rhs, opts)


@_register("B-MUNA6-PRINTED", "w(A) <= |||A|^2 + |A*||| / 2 (falsified form)",
           falsification_only=True)
def _b_muna6_printed(case, opts):
    a = case.op("A")
    lhs = _w(a, opts).hi
    rhs = 0.5 * operator_norm(dagger(a) @ a + abs_op(dagger(a)))
    return _finish("B-MUNA6-PRINTED", lhs, rhs, opts)


@_register("B-MUNA7-L", "||A*A + AA*|| / 4 <= w(A)^2")
def _b_muna7_l(case, opts):
    a = case.op("A")
    lhs = 0.25 * operator_norm(dagger(a) @ a + a @ dagger(a))
    rhs = _w(a, opts).lo ** 2
    return _finish("B-MUNA7-L", lhs, rhs, opts)


@_register("B-MUNA7-U", "w(A)^2 <= ||A*A + AA*|| / 2")
def _b_muna7_u(case, opts):
    a = case.op("A")
    lhs = _w(a, opts).hi ** 2
    rhs = 0.5 * operator_norm(dagger(a) @ a + a @ dagger(a))
    return _finish("B-MUNA7-U", lhs, rhs, opts)


@_register("B-MUNA7.5", "||A + B||^2 <= |||A|^2 + |B|^2|| + |||A*|^2 + |B*|^2||")
def _b_muna75(case, opts):
    a, b = case.op("A"), case.op("B")
    lhs = operator_norm(a + b) ** 2
    rhs = operator_norm(dagger(a) @ a + dagger(b) @ b) + operator_norm(a @ dagger(a) + b @ dagger(b))
    return _finish("B-MUNA7.5", lhs, rhs, opts)


@_register("B-MUNA8a", "w(A)^r <= || |A|^(2 r lam) + |A*|^(2 r (1-lam)) || / 2")
def _b_muna8a(case, opts):
    a = case.op("A")
    r, lam = float(case.params["r"]), float(case.params["lam"])
    lhs = _w(a, opts).hi ** r
    rhs = 0.5 * operator_norm(abs_power(a, 2.0 * r * lam) + abs_power_star(a, 2.0 * r * (1.0 - lam)))
    return _finish("B-MUNA8a", lhs, rhs, opts, r=r, lam=lam)


@_register("B-MUNA8b", "w(A)^(2r) <= || lam |A|^(2r) + (1-lam) |A*|^(2r) ||")
def _b_muna8b(case, opts):
    a = case.op("A")
    r, lam = float(case.params["r"]), float(case.params["lam"])
    lhs = _w(a, opts).hi ** (2.0 * r)
    rhs = operator_norm(lam * abs_power(a, 2.0 * r) + (1.0 - lam) * abs_power_star(a, 2.0 * r))
    return _finish("B-MUNA8b", lhs, rhs, opts, r=r, lam=lam)


@_register("B-MUNA9",
           "w(ATB + CSD) <= || A|T*|^(2-2alpha)A* + B*|T|^(2alpha)B"
           " + C|S*|^(2-2alpha)C* + D*|S|^(2alpha)D || / 2")
def _b_muna9(case, opts):
    a, b, c, d = (case.op(k) for k in "ABCD")
    t, s = case.op("T"), case.op("S")
    alpha = float(case.params["alpha"])
    lhs = _w(a @ t @ b + c @ s @ d, opts).hi
    rhs = 0.5 * operator_norm(
        a @ abs_power_star(t, 2.0 * (1.0 - alpha)) @ dagger(a)
        + dagger(b) @ abs_power(t, 2.0 * alpha) @ b
        + c @ abs_power_star(s, 2.0 * (1.0 - alpha)) @ dagger(c)
        + dagger(d) @ abs_power(s, 2.0 * alpha) @ d
    )
    return _finish("B-MUNA9", lhs, rhs, opts, alpha=alpha)


def _product_bound(case, opts, factor, bid):
    a, b = case.op("A"), case.op("B")
    lhs = _w(a @ b, opts).hi
    rhs = factor * _w(a, opts).lo * _w(b, opts).lo
    return _finish(bid, lhs, rhs, opts, factor=factor)


@_register("B-PRODUCT-4", "w(AB) <= 4 w(A) w(B)")
def _b_product_4(case, opts):
    return _product_bound(case, opts, 4.0, "B-PRODUCT-4")


@_register("B-PRODUCT-2", "w(AB) <= 2 w(A) w(B) for commuting A, B")
def _b_product_2(case, opts):
    a, b = case.op("A"), case.op("B")
    comm = operator_norm(a @ b - b @ a)
    scale = max(1.0, operator_norm(a) * operator_norm(b))
    if comm > 1e-8 * scale:
        raise PreconditionFailedError("operators do not commute",
                                      margins={"commutator_norm": comm})
    return _product_bound(case, opts, 2.0, "B-PRODUCT-2")


@_register("B-PRODUCT-1", "w(AB) <= w(A) w(B) for normal A, B")
def _b_product_1(case, opts):
    a, b = case.op("A"), case.op("B")
    margins = {
        "A_normality": operator_norm(dagger(a) @ a - a @ dagger(a)),
        "B_normality": operator_norm(dagger(b) @ b - b @ dagger(b)),
    }
    scale = max(1.0, operator_norm(a) * operator_norm(b))
    if any(v > 1e-8 * scale for v in margins.values()):
        raise PreconditionFailedError("need normal operators", margins=margins)
    return _product_bound(case, opts, 1.0, "B-PRODUCT-1")


@_register("B-WATFA1", "w(B*A)^r <= || |A|^(2r) + |B|^(2r) || / 2")
def _b_watfa1(case, opts):
    a, b = case.op("A"), case.op("B")
    r = float(case.params["r"])
    lhs = _w(dagger(b) @ a, opts).hi ** r
    rhs = 0.5 * operator_norm(abs_power(a, 2.0 * r) + abs_power(b, 2.0 * r))
    return _finish("B-WATFA1", lhs, rhs, opts, r=r)


@_register("B-WATFA1-PRINTED", "w(B*A)^r <= || |A|^(2r) + |B*|^(2r) || / 2 (falsified form)",
           falsification_only=True)
def _b_watfa1_printed(case, opts):
    a, b = case.op("A"), case.op("B")
    r = float(case.params["r"])
    lhs = _w(dagger(b) @ a, opts).hi ** r
    rhs = 0.5 * operator_norm(abs_power(a, 2.0 * r) + abs_power_star(b, 2.0 * r))
    return _finish("B-WATFA1-PRINTED", lhs, rhs, opts, r=r)


@_register("B-SHAB1",
           "w(A*XB)^r <= || (A*|X*|^(2nu)A)^r + (B*|X|^(2-2nu)B)^r || / 2")
def _b_shab1(case, opts):
    a, b, x = case.op("A"), case.op("B"), case.op("X")
    r, nu = float(case.params["r"]), float(case.params["nu"])
    lhs = _w(dagger(a) @ x @ b, opts).hi ** r
    left = psd_power(herm_part(dagger(a) @ abs_power_star(x, 2.0 * nu) @ a), r)
    right = psd_power(herm_part(dagger(b) @ abs_power(x, 2.0 * (1.0 - nu)) @ b), r)
    rhs = 0.5 * operator_norm(left + right)
    return _finish("B-SHAB1", lhs, rhs, opts, r=r, nu=nu)


@_register("B-WATFA2",
           "w(sum_i X_i A_i^m B_i)^r <= n^(2r-1)/(2m) sum_j"
           " || sum_i E_ij^r + W_ij^r ||,  E = X phi^2(|A^j*|) X*,"
           " W = (A^(m-j)B)* psi^2(|A^j|) A^(m-j)B")
def _b_watfa2(case, opts):
    xs, as_, bs = case.ops("X_i"), case.ops("A_i"), case.ops("B_i")
    m, n = int(case.params["m"]), case.n_ops
    r = float(case.params["r"])
    psi, phi = case.function("psi"), case.function("phi")
    check_pair(psi, phi)
    lhs = _w(_sum_xab(case), opts).hi ** r
    total = 0.0
    for j in range(1, m + 1):
        acc = None
        for x, a, b in zip(xs, as_, bs):
            aj = matrix_power_int(a, j)
            rest = matrix_power_int(a, m - j) @ b
            e = herm_part(x @ _mf2(abs_power_star(aj, 1.0), phi) @ dagger(x))
            w_ = herm_part(dagger(rest) @ _mf2(abs_power(aj, 1.0), psi) @ rest)
            term = psd_power(e, r) + psd_power(w_, r)
            acc = term if acc is None else acc + term
        total += operator_norm(acc)
    rhs = n ** (2.0 * r - 1.0) / (2.0 * m) * total
    return _finish("B-WATFA2", lhs, rhs, opts, r=r, m=m, n_ops=n)


# -- vector-level lemmas --------------------------------------------------------


@_register("LEM-INPROD",
           "|<eta,xi>|^2 + |<eta,zeta>|^2 <= ||eta||^2 max(||xi||^2, ||zeta||^2)"
           " + |<xi,zeta>| for ||eta|| <= 1")
def _lem_inprod(case, opts):
    eta, xi, zeta = case.vector("eta"), case.vector("xi"), case.vector("zeta")
    n_eta = float(np.linalg.norm(eta))
    if n_eta > 1.0 + 1e-12:
        raise PreconditionFailedError("needs ||eta|| <= 1", margins={"eta_norm": n_eta})
    lhs = abs(_ip(eta, xi)) ** 2 + abs(_ip(eta, zeta)) ** 2
    rhs = n_eta ** 2 * max(np.linalg.norm(xi) ** 2, np.linalg.norm(zeta) ** 2) + abs(_ip(xi, zeta))
    return _finish("LEM-INPROD", lhs, rhs, opts, eta_norm=n_eta)


@_register("LEM-D1",
           "|<DCBA xi, zeta>|^2 <= <|BA|^2 xi, xi> <|(DC)*|^2 zeta, zeta>")
def _lem_d1(case, opts):
    a, b, c, d = (case.op(k) for k in "ABCD")
    xi, zeta = case.vector("xi"), case.vector("zeta")
    ba, dc = b @ a, d @ c
    lhs = abs(_ip(dc @ ba @ xi, zeta)) ** 2
    rhs = _quadform(dagger(ba) @ ba, xi) * _quadform(dc @ dagger(dc), zeta)
    details = {}
    sv = np.linalg.svd(dc, compute_uv=False)
    vec = ba @ xi
    if sv.min() > 1e-6 * max(sv.max(), 1.0) and np.linalg.norm(vec) > 1e-8:
        # the two sides meet at zeta proportional to ((DC)*)^(-1) B A xi
        z_eq = np.linalg.solve(dagger(dc), vec)
        gap = (_quadform(dagger(ba) @ ba, xi) * _quadform(dc @ dagger(dc), z_eq)
               - abs(_ip(dc @ ba @ xi, z_eq)) ** 2)
        scale = max(1.0, _quadform(dagger(ba) @ ba, xi) * _quadform(dc @ dagger(dc), z_eq))
        details["equality_gap"] = float(gap / scale)
    return _finish("LEM-D1", lhs, rhs, opts, **details)


@_register("LEM-HM-i", "<T xi, xi>^r <= <T^r xi, xi> for psd T, r >= 1")
def _lem_hm_i(case, opts):
    t, xi = case.op("T"), case.vector("xi")
    r = float(case.params["r"])
    lhs = max(_quadform(t, xi), 0.0) ** r
    rhs = _quadform(psd_power(t, r), xi)
    return _finish("LEM-HM-i", lhs, rhs, opts, r=r)


@_register("LEM-HM-ii", "<T^r xi, xi> <= <T xi, xi>^r for psd T, 0 < r <= 1")
def _lem_hm_ii(case, opts):
    t, xi = case.op("T"), case.vector("xi")
    r = float(case.params["r"])
    lhs = _quadform(psd_power(t, r), xi)
    rhs = max(_quadform(t, xi), 0.0) ** r
    return _finish("LEM-HM-ii", lhs, rhs, opts, r=r)


@_register("LEM-HM-iii", "<T xi, xi>^r <= <T^r xi, xi> for invertible psd T, r < 0")
def _lem_hm_iii(case, opts):
    t, xi = case.op("T"), case.vector("xi")
    r = float(case.params["r"])
    bottom = lambda_min(t)
    if bottom <= 1e-10:
        raise PreconditionFailedError("needs strictly positive T", margins={"lambda_min": bottom})
    lhs = _quadform(t, xi) ** r
    rhs = _quadform(psd_power(t, r), xi)
    return _finish("LEM-HM-iii", lhs, rhs, opts, r=r)


@_register("LEM-MP", "psi(<T xi, xi>) <= <psi(T) xi, xi> for convex psi, Hermitian T")
def _lem_mp(case, opts):
    t, xi = case.op("T"), case.vector("xi")
    psi = case.function("psi")
    psi.require("convex")
    lhs = psi(_quadform(t, xi))
    rhs = _quadform(matrix_function(t, psi), xi)
    return _finish("LEM-MP", lhs, rhs, opts)


@_register("LEM-AS",
           "||psi(mu T + (1-mu) S)|| <= ||mu psi(T) + (1-mu) psi(S)||"
           " for psd T, S and nondecreasing convex psi >= 0")
def _lem_as(case, opts):
    t, s = case.op("T"), case.op("S")
    mu = float(case.params["mu"])
    psi = case.function("psi")
    psi.require("nonnegative", "increasing", "convex")
    lhs = operator_norm(matrix_function(herm_part(mu * t + (1.0 - mu) * s), psi))
    rhs = operator_norm(mu * matrix_function(t, psi) + (1.0 - mu) * matrix_function(s, psi))
    return _finish("LEM-AS", lhs, rhs, opts, mu=mu)


@_register("LEM-MC", "|<A xi, zeta>| <= ||psi(|A|) xi|| ||phi(|A*|) zeta||, psi phi = t")
def _lem_mc(case, opts):
    a = case.op("A")
    xi, zeta = case.vector("xi"), case.vector("zeta")
    psi, phi = case.function("psi"), case.function("phi")
    check_pair(psi, phi)
    lhs = abs(_ip(a @ xi, zeta))
    rhs = (np.linalg.norm(matrix_function(abs_op(a), psi) @ xi)
           * np.linalg.norm(matrix_function(abs_op(dagger(a)), phi) @ zeta))
    return _finish("LEM-MC", lhs, rhs, opts)


@_register("LEM-FURUTA",
           "exp_r1(nu(1-nu)/2 ((h'-1)/h')^2) T#S <= T&S <="
           " exp_r2(nu(1-nu)/2 (h-1)^2) T#S for 0 < m <= T <= m' < M' <= S <= M,"
           " h = M/m, h' = M'/m' (# geometric, & arithmetic, nu-weighted)")
def _lem_furuta(case, opts):
    t, s = case.op("T"), case.op("S")
    nu = float(case.params["nu"])
    r1, r2 = float(case.params["r1"]), float(case.params["r2"])
    m_lo, m_hi = float(case.params["m_lo"]), float(case.params["m_hi"])
    big_lo, big_hi = float(case.params["M_lo"]), float(case.params["M_hi"])
    if not (0.0 < m_lo <= m_hi < big_lo <= big_hi):
        raise BadWindowError("window edges must satisfy 0 < m <= m' < M' <= M")
    if not (-1.0 <= r1 < 0.0 < r2 <= 1.0):
        raise PreconditionFailedError("needs r1 in [-1, 0) and r2 in (0, 1]",
                                      margins={"r1": r1, "r2": r2})

    def inside(op, lo, hi):
        return lambda_min(op) >= lo - PRE_TOL and lambda_max(op) <= hi + PRE_TOL

    if inside(t, m_lo, m_hi) and inside(s, big_lo, big_hi):
        pass
    elif inside(s, m_lo, m_hi) and inside(t, big_lo, big_hi):
        # swapped sandwich: same means with the weight reflected
        t, s, nu = s, t, 1.0 - nu
    else:
        raise PreconditionFailedError(
            "neither operator ordering matches the window",
            margins={"T_min": lambda_min(t), "T_max": lambda_max(t),
                     "S_min": lambda_min(s), "S_max": lambda_max(s)})

    h = big_hi / m_lo
    h_prime = big_lo / m_hi
    base = nu * (1.0 - nu) / 2.0
    f_lo = exp_r_scalar(base * ((h_prime - 1.0) / h_prime) ** 2, r1)
    f_hi = exp_r_scalar(base * (h - 1.0) ** 2, r2)
    arith, geom = weighted_means(t, s, nu)
    links = _order_links([("lower", f_lo, geom, arith)])
    upper = _order_links([("upper", 1.0, arith, f_hi * geom)])
    return _chain("LEM-FURUTA", links + upper, opts,
                  f_lo=f_lo, f_hi=f_hi, h=h, h_prime=h_prime, nu=nu)


# -- norm bounds for sums of products -------------------------------------------


def _a1_parts(case):
    a, b, c, d = (case.op(k) for k in "ABCD")
    g1 = dagger(a) @ b          # A*B
    g2 = c @ dagger(d)          # CD*
    p = dagger(g1) @ g1         # |A*B|^2
    q = dagger(g2) @ g2         # |CD*|^2
    return a, b, c, d, g1, g2, p, q


@_register("TH-A1",
           "||B*A + DC*||^2 <= (|| |A*B|^2 + |CD*|^2 || + || |A*B|^2 - |CD*|^2 ||)/2"
           " + w(DC* A*B) + 2 ||B*A|| ||DC*||")
def _th_a1(case, opts):
    a, b, c, d, g1, g2, p, q = _a1_parts(case)
    lhs = operator_norm(dagger(b) @ a + d @ dagger(c)) ** 2
    rhs = (0.5 * (operator_norm(p + q) + operator_norm(p - q))
           + _w(d @ dagger(c) @ g1, opts).lo
           + 2.0 * operator_norm(dagger(b) @ a) * operator_norm(d @ dagger(c)))
    return _finish("TH-A1", lhs, rhs, opts)


@_register("TH-A1-PRINTED",
           "||B*A + DC*||^2 <= (|| |A*B|^2 + |CD*|^2 || + || |A*B|^2 - |CD*|^2 ||)/2"
           " + w(CD* A*B) + 2 ||B*A|| ||DC*|| (falsified form)",
           falsification_only=True)
def _th_a1_printed(case, opts):
    a, b, c, d, g1, g2, p, q = _a1_parts(case)
    lhs = operator_norm(dagger(b) @ a + d @ dagger(c)) ** 2
    rhs = (0.5 * (operator_norm(p + q) + operator_norm(p - q))
           + _w(g2 @ g1, opts).lo
           + 2.0 * operator_norm(dagger(b) @ a) * operator_norm(d @ dagger(c)))
    return _finish("TH-A1-PRINTED", lhs, rhs, opts)


@_register("COR-A1S",
           "||S*S + SS*||^2 <= (|| |S|^4 + |S*|^4 || + || |S|^4 - |S*|^4 ||)/2"
           " + w(|S*|^4) + 2 |||S|^2|| |||S*|^2||")
def _cor_a1s(case, opts):
    s = case.op("S")
    p = abs_power(s, 4.0)
    q = abs_power_star(s, 4.0)
    lhs = operator_norm(dagger(s) @ s + s @ dagger(s)) ** 2
    rhs = (0.5 * (operator_norm(p + q) + operator_norm(p - q))
           + _w(q, opts).lo
           + 2.0 * operator_norm(dagger(s) @ s) * operator_norm(s @ dagger(s)))
    return _finish("COR-A1S", lhs, rhs, opts)


@_register("COR-A1W",
           "w(B*A + DC*)^2 <= (|| |A*B|^2 + |CD*|^2 || + || |A*B|^2 - |CD*|^2 ||)/2"
           " + w(DC* A*B) + 2 w(B*A) w(DC*)")
def _cor_a1w(case, opts):
    a, b, c, d, g1, g2, p, q = _a1_parts(case)
    lhs = _w(dagger(b) @ a + d @ dagger(c), opts).hi ** 2
    rhs = (0.5 * (operator_norm(p + q) + operator_norm(p - q))
           + _w(d @ dagger(c) @ g1, opts).lo
           + 2.0 * _w(dagger(b) @ a, opts).lo * _w(d @ dagger(c), opts).lo)
    return _finish("COR-A1W", lhs, rhs, opts)


# -- four-factor products with a convex envelope ---------------------------------


def _dcba(case):
    a, b, c, d = (case.op(k) for k in "ABCD")
    return d @ c, b @ a


@_register("TH-RAHMA1-T1",
           "psi(w(DCBA)^2) <= || mu psi(|BA|^(2/mu))"
           " + (1-mu) psi(|(DC)*|^(2/(1-mu))) ||")
def _th_rahma1_t1(case, opts):
    dc, ba = _dcba(case)
    mu = float(case.params["mu"])
    psi = case.function("psi")
    psi.require("nonnegative", "increasing", "convex")
    lhs = psi(_w(dc @ ba, opts).hi ** 2)
    rhs = operator_norm(mu * matrix_function(abs_power(ba, 2.0 / mu), psi)
                        + (1.0 - mu) * matrix_function(abs_power_star(dc, 2.0 / (1.0 - mu)), psi))
    return _finish("TH-RAHMA1-T1", lhs, rhs, opts, mu=mu)


@_register("TH-RAHMA1-T2",
           "w(DCBA)^(2r) <= || mu |BA|^(2r/mu) + (1-mu) |(DC)*|^(2r/(1-mu)) ||")
def _th_rahma1_t2(case, opts):
    dc, ba = _dcba(case)
    mu, r = float(case.params["mu"]), float(case.params["r"])
    lhs = _w(dc @ ba, opts).hi ** (2.0 * r)
    rhs = operator_norm(mu * abs_power(ba, 2.0 * r / mu)
                        + (1.0 - mu) * abs_power_star(dc, 2.0 * r / (1.0 - mu)))
    return _finish("TH-RAHMA1-T2", lhs, rhs, opts, mu=mu, r=r)


@_register("TH-RAHMA1-T3",
           "w(DCBA)^2 <= || mu |BA|^(2/mu) + (1-mu) |(DC)*|^(2/(1-mu)) ||")
def _th_rahma1_t3(case, opts):
    dc, ba = _dcba(case)
    mu = float(case.params["mu"])
    lhs = _w(dc @ ba, opts).hi ** 2
    rhs = operator_norm(mu * abs_power(ba, 2.0 / mu)
                        + (1.0 - mu) * abs_power_star(dc, 2.0 / (1.0 - mu)))
    return _finish("TH-RAHMA1-T3", lhs, rhs, opts, mu=mu)


@_register("TH-PROF1",
           "psi(w(DCBA)) <= sqrt(delta Delta)/(delta + Delta)"
           " || psi(|BA|^2) + psi(|(DC)*|^2) || when the window [delta, Delta]"
           " separates |BA|^2 from |(DC)*|^2 (either orientation), psi(0) = 0")
def _th_prof1(case, opts):
    dc, ba = _dcba(case)
    delta, Delta = float(case.params["delta"]), float(case.params["Delta"])
    psi = case.function("psi")
    psi.require("nonnegative", "increasing", "convex", "zero_at_zero")
    x = dagger(ba) @ ba
    y = dc @ dagger(dc)
    swapped, margins = check_sandwich(x, y, delta, Delta)
    lhs = psi(_w(dc @ ba, opts).hi)
    coef = np.sqrt(delta * Delta) / (delta + Delta)
    rhs = coef * operator_norm(matrix_function(x, psi) + matrix_function(y, psi))
    return _finish("TH-PROF1", lhs, rhs, opts, coef=coef, swapped=swapped, **margins)


@_register("COR-PROF1",
           "psi(w(U|T|^beta U|T|^alpha)) <= sqrt(delta Delta)/(delta + Delta)"
           " || psi(|T|^(2 beta)) + psi(|T*|^(2 alpha)) ||, U the polar unitary,"
           " alpha + beta >= 1, window separating the powered moduli")
def _cor_prof1(case, opts):
    t = case.op("T")
    alpha, beta = float(case.params["alpha"]), float(case.params["beta"])
    delta, Delta = float(case.params["delta"]), float(case.params["Delta"])
    psi = case.function("psi")
    psi.require("nonnegative", "increasing", "convex", "zero_at_zero")
    if alpha < 0 or beta < 0 or alpha + beta < 1.0 - 1e-12:
        raise PreconditionFailedError("needs alpha, beta >= 0 with alpha + beta >= 1",
                                      margins={"alpha": alpha, "beta": beta})
    x = abs_power(t, 2.0 * beta)
    y = abs_power_star(t, 2.0 * alpha)
    swapped, margins = check_sandwich(x, y, delta, Delta)
    u = polar_unitary(t)
    op = u @ abs_power(t, beta) @ u @ abs_power(t, alpha)
    lhs = psi(_w(op, opts).hi)
    coef = np.sqrt(delta * Delta) / (delta + Delta)
    rhs = coef * operator_norm(matrix_function(x, psi) + matrix_function(y, psi))
    return _finish("COR-PROF1", lhs, rhs, opts, coef=coef, swapped=swapped,
                   alpha=alpha, beta=beta, **margins)


@_register("REM-R23-i",
           "w(DCBA)^r <= sqrt(delta Delta)/(delta + Delta)"
           " || |BA|^(2r) + |(DC)*|^(2r) || under the TH-PROF1 window")
def _rem_r23_i(case, opts):
    dc, ba = _dcba(case)
    delta, Delta = float(case.params["delta"]), float(case.params["Delta"])
    r = float(case.params["r"])
    swapped, margins = check_sandwich(dagger(ba) @ ba, dc @ dagger(dc), delta, Delta)
    lhs = _w(dc @ ba, opts).hi ** r
    coef = np.sqrt(delta * Delta) / (delta + Delta)
    rhs = coef * operator_norm(abs_power(ba, 2.0 * r) + abs_power_star(dc, 2.0 * r))
    return _finish("REM-R23-i", lhs, rhs, opts, coef=coef, r=r, swapped=swapped, **margins)


@_register("REM-R23-ii",
           "w(S*T)^r <= sqrt(delta Delta)/(delta + Delta) || |T|^(2r) + |S|^(2r) ||"
           " when [delta, Delta] separates |T|^2 from |S|^2")
def _rem_r23_ii(case, opts):
    s, t = case.op("S"), case.op("T")
    delta, Delta = float(case.params["delta"]), float(case.params["Delta"])
    r = float(case.params["r"])
    swapped, margins = check_sandwich(dagger(t) @ t, dagger(s) @ s, delta, Delta)
    lhs = _w(dagger(s) @ t, opts).hi ** r
    coef = np.sqrt(delta * Delta) / (delta + Delta)
    rhs = coef * operator_norm(abs_power(t, 2.0 * r) + abs_power(s, 2.0 * r))
    return _finish("REM-R23-ii", lhs, rhs, opts, coef=coef, r=r, swapped=swapped, **margins)


@_register("REM-R23-iii",
           "w(T)^r <= sqrt(delta Delta)/(delta + Delta) || |T|^(2r) + I ||"
           " when lammax(|T|^2) <= delta < Delta <= 1"
           " or 1 <= delta < Delta <= lammin(|T|^2)")
def _rem_r23_iii(case, opts):
    t = case.op("T")
    delta, Delta = float(case.params["delta"]), float(case.params["Delta"])
    r = float(case.params["r"])
    if not 0.0 < delta < Delta:
        raise BadWindowError("need 0 < delta < Delta, got (%r, %r)" % (delta, Delta))
    x = dagger(t) @ t
    top, bot = lambda_max(x), lambda_min(x)
    low_side = top <= delta + PRE_TOL and Delta <= 1.0 + PRE_TOL
    high_side = 1.0 - PRE_TOL <= delta and bot >= Delta - PRE_TOL
    if not (low_side or high_side):
        raise PreconditionFailedError(
            "window must separate |T|^2 from the identity",
            margins={"lammax": top, "lammin": bot, "delta": delta, "Delta": Delta})
    lhs = _w(t, opts).hi ** r
    coef = np.sqrt(delta * Delta) / (delta + Delta)
    rhs = coef * operator_norm(abs_power(t, 2.0 * r) + np.eye(case.dim))
    return _finish("REM-R23-iii", lhs, rhs, opts, coef=coef, r=r,
                   low_side=bool(low_side))


@_register("TH-BOSHRA22",
           "psi(w(DCBA)) <= || psi(|BA|^2) + psi(|(DC)*|^2) || / (2 gamma),"
           " gamma = (1 - (1 - 1/h')^2 / 8)^(-1), h' = M'/m', when"
           " lammax of one product square <= m' < M' <= lammin of the other,"
           " psi(0) = 0")
def _th_boshra22(case, opts):
    dc, ba = _dcba(case)
    m_prime, big_m_prime = float(case.params["m_prime"]), float(case.params["M_prime"])
    psi = case.function("psi")
    psi.require("nonnegative", "increasing", "convex", "zero_at_zero")
    swapped, margins = check_sandwich(dagger(ba) @ ba, dc @ dagger(dc), m_prime, big_m_prime)
    h_prime = big_m_prime / m_prime
    gamma = 1.0 / (1.0 - (1.0 - 1.0 / h_prime) ** 2 / 8.0)
    lhs = psi(_w(dc @ ba, opts).hi)
    x = dagger(ba) @ ba
    y = dc @ dagger(dc)
    rhs = operator_norm(matrix_function(x, psi) + matrix_function(y, psi)) / (2.0 * gamma)
    return _finish("TH-BOSHRA22", lhs, rhs, opts, gamma=gamma, h_prime=h_prime,
                   swapped=swapped, **margins)


# -- corrected (sphere-infimum) bounds -------------------------------------------


@_register("TH-MOHMMM",
           "psi(w(DCBA)^2) <= || (1-nu) psi(|BA|^(2/(1-nu)))"
           " + nu psi(|(DC)*|^(2/nu)) || - min(nu, 1-nu) inf_xi jensen-gap(psi)",
           has_correction=True)
def _th_mohmmm(case, opts):
    dc, ba = _dcba(case)
    nu = float(case.params["nu"])
    psi = case.function("psi")
    psi.require("nonnegative", "increasing", "convex")
    x = abs_power(ba, 2.0 / (1.0 - nu))
    y = abs_power_star(dc, 2.0 / nu)
    lhs = psi(_w(dc @ ba, opts).hi ** 2)
    rhs_raw = operator_norm((1.0 - nu) * matrix_function(x, psi) + nu * matrix_function(y, psi))
    functional = build_correction_functional("GAMMA_PSI", None, operands=(x, y), psi=psi)
    gamma, raw = _inf(functional, opts)
    r0 = min(nu, 1.0 - nu)
    return _finish("TH-MOHMMM", lhs, rhs_raw, opts, correction=r0 * gamma,
                   nu=nu, infimum=raw)


def _maka_common(case, opts, op, x, y, bid, extra):
    nu = float(case.params["nu"])
    psi = case.function("psi")
    psi.require("nonnegative", "increasing", "convex")
    lhs = psi(_w(op, opts).hi ** 2)
    rhs_raw = operator_norm((1.0 - nu) * matrix_function(x, psi) + nu * matrix_function(y, psi))
    functional = build_correction_functional("GAMMA_PSI", None, operands=(x, y), psi=psi)
    gamma, raw = _inf(functional, opts)
    r0 = min(nu, 1.0 - nu)
    return _finish(bid, lhs, rhs_raw, opts, correction=r0 * gamma,
                   nu=nu, infimum=raw, **extra)


@_register("COR-MAKA1",
           "psi(w(U|T|^beta U|T|^alpha)^2) <= || (1-nu) psi(|T|^(2beta/(1-nu)))"
           " + nu psi(|T*|^(2alpha/nu)) || - min(nu, 1-nu) inf jensen-gap,"
           " alpha + beta >= 1, U the polar unitary",
           has_correction=True)
def _cor_maka1(case, opts):
    t = case.op("T")
    alpha, beta, nu = (float(case.params[k]) for k in ("alpha", "beta", "nu"))
    if alpha < 0 or beta < 0 or alpha + beta < 1.0 - 1e-12:
        raise PreconditionFailedError("needs alpha, beta >= 0 with alpha + beta >= 1",
                                      margins={"alpha": alpha, "beta": beta})
    u = polar_unitary(t)
    op = u @ abs_power(t, beta) @ u @ abs_power(t, alpha)
    x = abs_power(t, 2.0 * beta / (1.0 - nu))
    y = abs_power_star(t, 2.0 * alpha / nu)
    return _maka_common(case, opts, op, x, y, "COR-MAKA1", {"alpha": alpha, "beta": beta})


@_register("COR-MAKA2",
           "psi(w(T*|T*|^(alpha+beta-2)T)^2) <= || (1-nu) psi(|T|^(2beta/(1-nu)))"
           " + nu psi(|T|^(2alpha/nu)) || - min(nu, 1-nu) inf jensen-gap,"
           " alpha + beta >= 2 (the operand contracts to |T|^(alpha+beta))",
           has_correction=True)
def _cor_maka2(case, opts):
    t = case.op("T")
    alpha, beta = float(case.params["alpha"]), float(case.params["beta"])
    if alpha < 0 or beta < 0 or alpha + beta < 2.0 - 1e-12:
        raise PreconditionFailedError("needs alpha, beta >= 0 with alpha + beta >= 2",
                                      margins={"alpha": alpha, "beta": beta})
    nu = float(case.params["nu"])
    op = abs_power(t, alpha + beta)
    x = abs_power(t, 2.0 * beta / (1.0 - nu))
    y = abs_power(t, 2.0 * alpha / nu)
    return _maka_common(case, opts, op, x, y, "COR-MAKA2", {"alpha": alpha, "beta": beta})


@_register("COR-MAKA3",
           "psi(w(|T|^alpha T^2 |T|^beta)^2) <= || (1-nu) psi(|T|^((2beta+2)/(1-nu)))"
           " + nu psi((|T|^alpha T T* |T|^alpha)^(1/nu)) ||"
           " - min(nu, 1-nu) inf jensen-gap",
           has_correction=True)
def _cor_maka3(case, opts):
    t = case.op("T")
    alpha, beta = float(case.params["alpha"]), float(case.params["beta"])
    if alpha < 0 or beta < 0:
        raise PreconditionFailedError("needs alpha, beta >= 0",
                                      margins={"alpha": alpha, "beta": beta})
    nu = float(case.params["nu"])
    pa = abs_power(t, alpha)
    op = pa @ t @ t @ abs_power(t, beta)
    x = abs_power(t, (2.0 * beta + 2.0) / (1.0 - nu))
    y = psd_power(herm_part(pa @ t @ dagger(t) @ pa), 1.0 / nu)
    return _maka_common(case, opts, op, x, y, "COR-MAKA3", {"alpha": alpha, "beta": beta})


@_register("TH-SUPQAD",
           "psi(w(A)) <= ||psi(|A|)|| - inf_xi <psi(||A|| I - |A|) xi, xi>"
           " for superquadratic psi",
           has_correction=True)
def _th_supqad(case, opts):
    a = case.op("A")
    psi = case.function("psi")
    psi.require("nonnegative", "superquadratic")
    lhs = psi(_w(a, opts).hi)
    rhs_raw = operator_norm(matrix_function(abs_op(a), psi))
    functional = build_correction_functional("SUPQ_DEFICIT", case, psi=psi)
    deficit, raw = _inf(functional, opts)
    return _finish("TH-SUPQAD", lhs, rhs_raw, opts, correction=deficit, infimum=raw)


@_register("COR-SUPQAD",
           "w(A)^r <= ||A||^r - inf_xi ||(||A|| I - |A|)^(r/2) xi||^2 for r >= 2",
           has_correction=True)
def _cor_supqad(case, opts):
    a = case.op("A")
    r = float(case.params["r"])
    if r < 2.0 - 1e-12:
        raise PreconditionFailedError("needs r >= 2", margins={"r": r})
    lhs = _w(a, opts).hi ** r
    rhs_raw = operator_norm(a) ** r
    functional = build_correction_functional("SUPQ_DEFICIT", case, psi=power(r))
    deficit, raw = _inf(functional, opts)
    return _finish("COR-SUPQAD", lhs, rhs_raw, opts, correction=deficit, r=r, infimum=raw)


# -- families D_i C_i^m A_i -------------------------------------------------------


def _grouped_norm_sum(terms, n, weight_s=1.0, weight_t=1.0):
    """sum_j || sum_i ws S_ij + wt T_ij || with terms listed j-major."""
    total = 0.0
    for start in range(0, len(terms), n):
        acc = None
        for s, t in terms[start:start + n]:
            term = weight_s * s + weight_t * t
            acc = term if acc is None else acc + term
        total += operator_norm(acc)
    return total


@_register("TH-3.1",
           "w(sum_i D_i C_i^m A_i)^r <= n^(r-1)/(2m) sum_j"
           " || sum_i |C_i^j A_i|^(2r) + |(D_i C_i^(m-j))*|^(2r) ||")
def _th_31(case, opts):
    r = float(case.params["r"])
    terms, m, n = _pair_terms_dc(case, r, r)
    lhs = _w(_sum_dca(case), opts).hi ** r
    rhs = n ** (r - 1.0) / (2.0 * m) * _grouped_norm_sum(terms, n)
    return _finish("TH-3.1", lhs, rhs, opts, r=r, m=m, n_ops=n)


@_register("COR-3.2",
           "w(sum_i C_i^m)^r <= n^(r-1)/(2m) sum_j"
           " || sum_i |C_i^j|^(2r) + |(C_i^(m-j))*|^(2r) ||")
def _cor_32(case, opts):
    cs = case.ops("C_i")
    m, n = int(case.params["m"]), case.n_ops
    r = float(case.params["r"])
    acc = None
    for c in cs:
        term = matrix_power_int(c, m)
        acc = term if acc is None else acc + term
    lhs = _w(acc, opts).hi ** r
    total = 0.0
    for j in range(1, m + 1):
        inner = None
        for c in cs:
            term = (abs_power(matrix_power_int(c, j), 2.0 * r)
                    + abs_power_star(matrix_power_int(c, m - j), 2.0 * r))
            inner = term if inner is None else inner + term
        total += operator_norm(inner)
    rhs = n ** (r - 1.0) / (2.0 * m) * total
    return _finish("COR-3.2", lhs, rhs, opts, r=r, m=m, n_ops=n)


@_register("COR-POWERS",
           "w(C^m)^r <= 1/(2m) sum_j || |C^j|^(2r) + |(C^(m-j))*|^(2r) ||")
def _cor_powers(case, opts):
    c = case.op("C")
    m = int(case.params["m"])
    r = float(case.params["r"])
    lhs = _w(matrix_power_int(c, m), opts).hi ** r
    total = 0.0
    for j in range(1, m + 1):
        total += operator_norm(abs_power(matrix_power_int(c, j), 2.0 * r)
                               + abs_power_star(matrix_power_int(c, m - j), 2.0 * r))
    rhs = total / (2.0 * m)
    return _finish("COR-POWERS", lhs, rhs, opts, r=r, m=m)


@_register("TH-ALPHA",
           "w(sum_i D_i C_i^m A_i) <= 1/m sum_j sum_i"
           " || alpha |C_i^j A_i|^(2r/alpha)"
           " + (1-alpha) |(D_i C_i^(m-j))*|^(2r/(1-alpha)) ||^(1/(2r))")
def _th_alpha(case, opts):
    r, alpha = float(case.params["r"]), float(case.params["alpha"])
    terms, m, n = _pair_terms_dc(case, r / alpha, r / (1.0 - alpha))
    lhs = _w(_sum_dca(case), opts).hi
    total = 0.0
    for s, t in terms:
        total += operator_norm(alpha * s + (1.0 - alpha) * t) ** (1.0 / (2.0 * r))
    rhs = total / m
    return _finish("TH-ALPHA", lhs, rhs, opts, r=r, alpha=alpha, m=m, n_ops=n)


@_register("TH-N1",
           "w(sum_i D_i C_i^m A_i)^2 <= n/m sum_j"
           " || sum_i |C_i^j A_i|^(2p)/p + |(D_i C_i^(m-j))*|^(2q)/q ||"
           " - min(1/p, 1/q) inf_xi sum_ij"
           " (<|C_i^j A_i|^2 xi, xi>^(p/2) - <|(D_i C_i^(m-j))*|^2 xi, xi>^(q/2))^2 n/m",
           has_correction=True)
def _th_n1(case, opts):
    p, q = float(case.params["p"]), float(case.params["q"])
    terms, m, n = _pair_terms_dc(case, p, q)
    lhs = _w(_sum_dca(case), opts).hi ** 2
    rhs_raw = n / m * _grouped_norm_sum(terms, n, 1.0 / p, 1.0 / q)
    functional = build_correction_functional("PSI_N1", case)
    inf_v, raw = _inf(functional, opts)
    r0 = min(1.0 / p, 1.0 / q)
    return _finish("TH-N1", lhs, rhs_raw, opts, correction=r0 * inf_v,
                   p=p, q=q, m=m, n_ops=n, infimum=raw)


@_register("TH-N3",
           "w(sum_i D_i C_i^m A_i)^(2k) <= n^(2k-1)/m sum_j sum_i"
           " || |C_i^j A_i|^(2rp)/p + |(D_i C_i^(m-j))*|^(2rq)/q ||^(k/r)"
           " - min(1/p, 1/q)^k inf_xi eta(xi)",
           has_correction=True)
def _th_n3(case, opts):
    p, q = float(case.params["p"]), float(case.params["q"])
    k, r = float(case.params["k"]), float(case.params["r"])
    terms, m, n = _pair_terms_dc(case, r * p, r * q)
    lhs = _w(_sum_dca(case), opts).hi ** (2.0 * k)
    total = 0.0
    for s, t in terms:
        total += operator_norm(s / p + t / q) ** (k / r)
    rhs_raw = n ** (2.0 * k - 1.0) / m * total
    functional = build_correction_functional("ETA_N3", case)
    inf_v, raw = _inf(functional, opts)
    r0 = min(1.0 / p, 1.0 / q) ** k
    return _finish("TH-N3", lhs, rhs_raw, opts, correction=r0 * inf_v,
                   p=p, q=q, k=k, r=r, m=m, n_ops=n, infimum=raw)


@_register("COR-N3",
           "w(sum_i D_i C_i^m A_i)^2 <= n 2^(-1/r)/m sum_j sum_i"
           " || |C_i^j A_i|^(4r) + |(D_i C_i^(m-j))*|^(4r) ||^(1/r)"
           " - inf_xi eta(xi)/2",
           has_correction=True)
def _cor_n3(case, opts):
    r = float(case.params["r"])
    terms, m, n = _pair_terms_dc(case, 2.0 * r, 2.0 * r)
    lhs = _w(_sum_dca(case), opts).hi ** 2
    total = 0.0
    for s, t in terms:
        total += operator_norm(s + t) ** (1.0 / r)
    rhs_raw = n * 2.0 ** (-1.0 / r) / m * total
    quads, _, _ = _pair_terms_dc(case, 2.0, 2.0)
    pairs = [(s, 0.5, t, 0.5) for s, t in quads]
    functional = SphereFunctional(case.dim, "ETA_N3", "pairs", n / m, pairs)
    inf_v, raw = _inf(functional, opts)
    return _finish("COR-N3", lhs, rhs_raw, opts, correction=0.5 * inf_v,
                   r=r, m=m, n_ops=n, infimum=raw)


# -- families X_i A_i^m B_i with a Schwarz function pair ---------------------------


@_register("TH-SCH1",
           "w(sum_i X_i A_i^m B_i)^(2r) <= n^(2r-1)/m sum_j"
           " || sum_i S_ij^(pr)/p + T_ij^(qr)/q || - min(1/p, 1/q) inf_xi rho(xi),"
           " S = X psi^2(|A^j*|) X*, T = (A^(m-j)B)* phi^2(|A^j|) A^(m-j)B",
           has_correction=True)
def _th_sch1(case, opts):
    p, q = float(case.params["p"]), float(case.params["q"])
    r = float(case.params["r"])
    check_pair(case.function("psi"), case.function("phi"))
    terms, m, n = _pair_terms_sch(case, p * r, q * r)
    lhs = _w(_sum_xab(case), opts).hi ** (2.0 * r)
    rhs_raw = n ** (2.0 * r - 1.0) / m * _grouped_norm_sum(terms, n, 1.0 / p, 1.0 / q)
    functional = build_correction_functional("RHO", case)
    inf_v, raw = _inf(functional, opts)
    r0 = min(1.0 / p, 1.0 / q)
    return _finish("TH-SCH1", lhs, rhs_raw, opts, correction=r0 * inf_v,
                   p=p, q=q, r=r, m=m, n_ops=n, infimum=raw)


def _ok_terms(case, lam, power_s, power_t, with_x=True):
    """Power-pair Schwarz terms psi = t^lam, phi = t^(1-lam), built from
    singular-value powers instead of a function-calculus pass."""
    as_ = case.ops("A_i")
    xs = case.ops("X_i") if with_x else [np.eye(case.dim)] * len(as_)
    bs = case.ops("B_i") if with_x else [np.eye(case.dim)] * len(as_)
    m = int(case.params["m"])
    out = []
    for j in range(1, m + 1):
        for x, a, b in zip(xs, as_, bs):
            aj = matrix_power_int(a, j)
            rest = matrix_power_int(a, m - j) @ b
            s = herm_part(x @ abs_power_star(aj, 2.0 * lam) @ dagger(x))
            t = herm_part(dagger(rest) @ abs_power(aj, 2.0 * (1.0 - lam)) @ rest)
            out.append((psd_power(s, power_s), psd_power(t, power_t)))
    return out, m, len(as_)


@_register("COR-OK1",
           "TH-SCH1 with the power pair psi = t^lam, phi = t^(1-lam),"
           " computed through singular-value powers",
           has_correction=True)
def _cor_ok1(case, opts):
    p, q = float(case.params["p"]), float(case.params["q"])
    r, lam = float(case.params["r"]), float(case.params["lam"])
    terms, m, n = _ok_terms(case, lam, p * r, q * r)
    lhs = _w(_sum_xab(case), opts).hi ** (2.0 * r)
    rhs_raw = n ** (2.0 * r - 1.0) / m * _grouped_norm_sum(terms, n, 1.0 / p, 1.0 / q)
    base, _, _ = _ok_terms(case, lam, r, r)
    pairs = [(s, p / 2.0, t, q / 2.0) for s, t in base]
    functional = SphereFunctional(case.dim, "RHO", "pairs", n ** (2.0 * r - 1.0) / m, pairs)
    inf_v, raw = _inf(functional, opts)
    r0 = min(1.0 / p, 1.0 / q)
    return _finish("COR-OK1", lhs, rhs_raw, opts, correction=r0 * inf_v,
                   p=p, q=q, r=r, lam=lam, m=m, n_ops=n, infimum=raw)


@_register("COR-OK2",
           "w(sum_i A_i^m)^(2r) <= n^(2r-1)/m sum_j"
           " || sum_i psi^2(|A^j*|)^(pr)/p"
           " + ((A^(m-j))* phi^2(|A^j|) A^(m-j))^(qr)/q ||"
           " - min(1/p, 1/q) inf_xi rho(xi)",
           has_correction=True)
def _cor_ok2(case, opts):
    p, q = float(case.params["p"]), float(case.params["q"])
    r = float(case.params["r"])
    psi, phi = case.function("psi"), case.function("phi")
    check_pair(psi, phi)
    as_ = case.ops("A_i")
    m, n = int(case.params["m"]), case.n_ops
    acc = None
    for a in as_:
        term = matrix_power_int(a, m)
        acc = term if acc is None else acc + term
    lhs = _w(acc, opts).hi ** (2.0 * r)
    terms = []
    for j in range(1, m + 1):
        for a in as_:
            aj = matrix_power_int(a, j)
            rest = matrix_power_int(a, m - j)
            s = herm_part(_mf2(abs_power_star(aj, 1.0), psi))
            t = herm_part(dagger(rest) @ _mf2(abs_power(aj, 1.0), phi) @ rest)
            terms.append((s, t))
    total = 0.0
    for start in range(0, len(terms), n):
        inner = None
        for s, t in terms[start:start + n]:
            term = psd_power(s, p * r) / p + psd_power(t, q * r) / q
            inner = term if inner is None else inner + term
        total += operator_norm(inner)
    rhs_raw = n ** (2.0 * r - 1.0) / m * total
    pairs = [(psd_power(s, r), p / 2.0, psd_power(t, r), q / 2.0) for s, t in terms]
    functional = SphereFunctional(case.dim, "RHO", "pairs", n ** (2.0 * r - 1.0) / m, pairs)
    inf_v, raw = _inf(functional, opts)
    r0 = min(1.0 / p, 1.0 / q)
    return _finish("COR-OK2", lhs, rhs_raw, opts, correction=r0 * inf_v,
                   p=p, q=q, r=r, m=m, n_ops=n, infimum=raw)


@_register("COR-OK3",
           "w(A^m)^(2r) <= 1/m sum_j || |A^j*|^(2 lam p r)/p"
           " + ((A^(m-j))* |A^j|^(2(1-lam)) A^(m-j))^(qr)/q ||"
           " - min(1/p, 1/q) inf_xi rho(xi)",
           has_correction=True)
def _cor_ok3(case, opts):
    p, q = float(case.params["p"]), float(case.params["q"])
    r, lam = float(case.params["r"]), float(case.params["lam"])
    a = case.op("A")
    m = int(case.params["m"])
    aug = replace(case, operators={"A_i": (a,)},
                  params={**case.params, "n_ops": 1})
    terms, _, _ = _ok_terms(aug, lam, p * r, q * r, with_x=False)
    lhs = _w(matrix_power_int(a, m), opts).hi ** (2.0 * r)
    total = 0.0
    for s, t in terms:
        total += operator_norm(s / p + t / q)
    rhs_raw = total / m
    base, _, _ = _ok_terms(aug, lam, r, r, with_x=False)
    pairs = [(s, p / 2.0, t, q / 2.0) for s, t in base]
    functional = SphereFunctional(case.dim, "RHO", "pairs", 1.0 / m, pairs)
    inf_v, raw = _inf(functional, opts)
    r0 = min(1.0 / p, 1.0 / q)
    return _finish("COR-OK3", lhs, rhs_raw, opts, correction=r0 * inf_v,
                   p=p, q=q, r=r, lam=lam, m=m, infimum=raw)


@_register("TH-SCH2",
           "w(sum_i X_i A_i^m B_i)^(2k) <= n^(2k-1)/m sum_j sum_i"
           " || S_ij^(pr)/p + T_ij^(qr)/q ||^(k/r)"
           " - min(1/p, 1/q)^k inf_xi omega(xi)",
           has_correction=True)
def _th_sch2(case, opts):
    p, q = float(case.params["p"]), float(case.params["q"])
    k, r = float(case.params["k"]), float(case.params["r"])
    check_pair(case.function("psi"), case.function("phi"))
    terms, m, n = _pair_terms_sch(case, p * r, q * r)
    lhs = _w(_sum_xab(case), opts).hi ** (2.0 * k)
    total = 0.0
    for s, t in terms:
        total += operator_norm(s / p + t / q) ** (k / r)
    rhs_raw = n ** (2.0 * k - 1.0) / m * total
    functional = build_correction_functional("OMEGA_SCH2", case)
    inf_v, raw = _inf(functional, opts)
    r0 = min(1.0 / p, 1.0 / q) ** k
    return _finish("TH-SCH2", lhs, rhs_raw, opts, correction=r0 * inf_v,
                   p=p, q=q, k=k, r=r, m=m, n_ops=n, infimum=raw)


@_register("COR-SCH2",
           "w(sum_i X_i A_i^m B_i)^2 <= n/(m 2^(1/r)) sum_j sum_i"
           " || S_ij^(2r) + T_ij^(2r) ||^(1/r) - inf_xi omega(xi)/2",
           has_correction=True)
def _cor_sch2(case, opts):
    r = float(case.params["r"])
    check_pair(case.function("psi"), case.function("phi"))
    terms, m, n = _pair_terms_sch(case, 2.0 * r, 2.0 * r)
    lhs = _w(_sum_xab(case), opts).hi ** 2
    total = 0.0
    for s, t in terms:
        total += operator_norm(s + t) ** (1.0 / r)
    rhs_raw = n / (m * 2.0 ** (1.0 / r)) * total
    quads, _, _ = _pair_terms_sch(case, 2.0, 2.0)
    pairs = [(s, 0.5, t, 0.5) for s, t in quads]
    functional = SphereFunctional(case.dim, "OMEGA_SCH2", "pairs", n / m, pairs)
    inf_v, raw = _inf(functional, opts)
    return _finish("COR-SCH2", lhs, rhs_raw, opts, correction=0.5 * inf_v,
                   r=r, m=m, n_ops=n, infimum=raw)

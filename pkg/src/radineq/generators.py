"""Random case generators.

Every generator takes an explicit ``numpy.random.Generator`` so a trial
is fully determined by its seed; nothing touches global RNG state.
Operators are drawn at unit operator norm and then rescaled, which keeps
the high powers appearing in the bounds (exponents up to ~24) inside a
tame floating range.

Constrained kinds (sandwich windows, spectra inside intervals) are built
constructively from prescribed singular values or eigenvalues rather
than by rejection, so precondition failures in the harness stay rare
and generation never stalls.
"""

from __future__ import annotations

import numpy as np

from .cases import InequalityCase
from .errors import BadKindError, BadParametersError, BadWindowError, GenerationFailedError
from .linalg import dagger, herm_part, operator_norm
from .scalarfn import mixed_schwarz_pair, power

GENERATOR_KINDS = (
    "ginibre",
    "hermitian",
    "psd",
    "unitary",
    "normal",
    "nilpotent",
    "sandwich",
    "commuting-pair",
    "normal-pair",
)


# -- primitive ensembles ----------------------------------------------------

def _gaussian(dim: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))


def _unit(a: np.ndarray) -> np.ndarray:
    nrm = operator_norm(a)
    if nrm == 0.0:
        raise GenerationFailedError("degenerate zero draw")
    return a / nrm


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(_gaussian(dim, rng))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def ginibre(dim: int, rng: np.random.Generator) -> np.ndarray:
    return _unit(_gaussian(dim, rng))


def hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    return _unit(herm_part(_gaussian(dim, rng)))


def psd(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = _gaussian(dim, rng)
    return _unit(herm_part(g @ dagger(g)))


def normal(dim: int, rng: np.random.Generator) -> np.ndarray:
    u = haar_unitary(dim, rng)
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    z = z / np.max(np.abs(z))
    return u @ np.diag(z) @ dagger(u)


def nilpotent(dim: int, rng: np.random.Generator) -> np.ndarray:
    if dim < 2:
        raise BadParametersError("nilpotent draw needs dim >= 2")
    a = np.triu(_gaussian(dim, rng), k=1)
    return _unit(a)


def commuting_pair(dim: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Two polynomials of one normal operator: commuting but generic."""
    n = normal(dim, rng)
    c0, c1, c2 = (rng.standard_normal(3) + 1j * rng.standard_normal(3)) / 2.0
    d0, d1, d2 = (rng.standard_normal(3) + 1j * rng.standard_normal(3)) / 2.0
    eye = np.eye(dim)
    return _unit(c0 * eye + c1 * n + c2 * n @ n), _unit(d0 * eye + d1 * n + d2 * n @ n)


def normal_pair(dim: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    return normal(dim, rng), normal(dim, rng)


def operator_with_singular_values(dim: int, svals, rng: np.random.Generator) -> np.ndarray:
    s = np.sort(np.asarray(svals, dtype=float))[::-1]
    if s.shape != (dim,) or np.any(s < 0.0):
        raise BadParametersError("need %d nonnegative singular values" % dim)
    return haar_unitary(dim, rng) @ np.diag(s) @ dagger(haar_unitary(dim, rng))


def hermitian_with_spectrum(dim: int, lo: float, hi: float, rng: np.random.Generator) -> np.ndarray:
    """Random Hermitian with spectrum inside [lo, hi], both ends attained."""
    if not lo <= hi:
        raise BadWindowError("empty spectrum window [%r, %r]" % (lo, hi))
    vals = np.sort(rng.uniform(lo, hi, dim))
    vals[0], vals[-1] = lo, hi
    u = haar_unitary(dim, rng)
    return herm_part(u @ np.diag(vals) @ dagger(u))


def split_factors(g: np.ndarray, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Factor G = B A with both factors of comparable size (sqrt split)."""
    u, s, vh = np.linalg.svd(g)
    w = haar_unitary(g.shape[0], rng)
    root = np.sqrt(s)
    b = u @ np.diag(root) @ dagger(w)
    a = w @ np.diag(root) @ vh
    return b, a


def random_operator(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Mixture over the unconstrained ensembles, biased toward ginibre."""
    u = rng.random()
    if u < 0.55:
        return ginibre(dim, rng)
    if u < 0.70:
        return normal(dim, rng)
    if u < 0.80:
        return hermitian(dim, rng)
    if u < 0.90 and dim >= 2:
        return nilpotent(dim, rng)
    return haar_unitary(dim, rng)


def unit_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


# -- the two named entry points ----------------------------------------------

def generate_case(kind: str, dim: int, rng: np.random.Generator, **kw) -> InequalityCase:
    """One case of the requested ensemble under role "A" (pairs use "A", "B")."""
    if dim < 1:
        raise BadParametersError("dimension must be >= 1, got %r" % dim)
    if kind == "sandwich":
        return make_sandwich_case(dim, kw.get("delta", 0.5), kw.get("Delta", 1.0), rng,
                                  margin=kw.get("margin", 1e-6))
    if kind == "commuting-pair":
        a, b = commuting_pair(dim, rng)
        return InequalityCase(operators={"A": a, "B": b}, label=kind)
    if kind == "normal-pair":
        a, b = normal_pair(dim, rng)
        return InequalityCase(operators={"A": a, "B": b}, label=kind)
    single = {
        "ginibre": ginibre,
        "hermitian": hermitian,
        "psd": psd,
        "unitary": haar_unitary,
        "normal": normal,
        "nilpotent": nilpotent,
    }
    if kind not in single:
        raise BadKindError("unknown generator kind %r (known: %s)" % (kind, ", ".join(GENERATOR_KINDS)))
    return InequalityCase(operators={"A": single[kind](dim, rng)}, label=kind)


def make_sandwich_case(dim: int, delta: float, Delta: float, rng: np.random.Generator,
                       margin: float = 1e-6, swap: bool = False) -> InequalityCase:
    """Roles A, B, C, D with sv(B A) <= sqrt(delta)(1 - margin) and
    sv((D C)*) >= sqrt(Delta)(1 + margin); ``swap=True`` flips which
    product sits under the window.
    """
    if not 0.0 < delta < Delta:
        raise BadWindowError("need 0 < delta < Delta, got (%r, %r)" % (delta, Delta))
    if margin < 1e-10:
        raise BadParametersError("margin must be >= 1e-10, got %r" % margin)
    top = np.sqrt(delta) * (1.0 - margin)
    low_sv = rng.uniform(0.25 * top, top, dim)
    low_sv[rng.integers(dim)] = top
    bot = np.sqrt(Delta) * (1.0 + margin)
    high_sv = rng.uniform(bot, 2.0 * bot, dim)
    high_sv[rng.integers(dim)] = bot
    g_low = operator_with_singular_values(dim, low_sv, rng)
    g_high = operator_with_singular_values(dim, high_sv, rng)
    if swap:
        g_ba, g_dc_star = g_high, g_low
    else:
        g_ba, g_dc_star = g_low, g_high
    b, a = split_factors(g_ba, rng)
    d, c = split_factors(dagger(g_dc_star), rng)
    return InequalityCase(
        operators={"A": a, "B": b, "C": c, "D": d},
        params={"delta": float(delta), "Delta": float(Delta), "margin": float(margin)},
        label="sandwich",
    )


# -- per-bound builders -------------------------------------------------------

def _scale(rng, lo=0.4, hi=1.6):
    return rng.uniform(lo, hi)


def _quad(dim, rng):
    return {k: random_operator(dim, rng) for k in ("A", "B", "C", "D")}


def _family(dim, rng, roles, n):
    return {role: [random_operator(dim, rng) for _ in range(n)] for role in roles}


def _nm(rng):
    return int(rng.integers(1, 4)), int(rng.integers(1, 4))


def _psi_power(rng, lo=1.0, hi=2.5):
    return power(rng.uniform(lo, hi))


def _window(rng, lo=0.15, hi=1.0, gap=(1.1, 3.0)):
    d = rng.uniform(lo, hi)
    return d, d * rng.uniform(*gap)


def _maka_t(dim, rng):
    # keep T comfortably non-singular so display and contracted operand agree
    s = np.sort(rng.uniform(0.25, 1.0, dim))[::-1]
    s[0] = 1.0
    return operator_with_singular_values(dim, s, rng) * _scale(rng, 0.5, 1.4)


def _powered_window_t(dim: int, rng: np.random.Generator):
    """T plus (alpha, beta, delta, Delta) with the spectra of |T|^(2 beta)
    and |T*|^(2 alpha) separated by [delta, Delta] in one of the two
    orientations.  All singular values sit on one side of 1 so a pair of
    unequal exponents separates the powered spectra.
    """
    below_one = bool(rng.random() < 0.5)
    beta_side_low = bool(rng.random() < 0.5)  # orientation: |T|^(2 beta) under the window
    c = rng.uniform(0.35, 0.75) if below_one else rng.uniform(1.3, 2.4)
    sv = c * np.exp(rng.uniform(0.0, 0.08, dim))
    lo_exp = rng.uniform(0.55, 1.1)
    hi_exp = lo_exp + rng.uniform(0.35, 1.2)
    # smaller base needs the larger exponent on the low side, and vice versa
    if below_one == beta_side_low:
        beta, alpha = hi_exp, lo_exp
    else:
        beta, alpha = lo_exp, hi_exp
    if alpha + beta < 1.0:  # hypothesis floor
        bump = (1.0 - alpha - beta) / 2.0 + 0.05
        alpha, beta = alpha + bump, beta + bump
    t = operator_with_singular_values(dim, sv, rng)
    pow_beta = np.sort(sv**(2.0 * beta))
    pow_alpha = np.sort(sv**(2.0 * alpha))
    if beta_side_low:
        low_edge, high_edge = pow_beta[-1], pow_alpha[0]
    else:
        low_edge, high_edge = pow_alpha[-1], pow_beta[0]
    if not low_edge < high_edge:
        raise GenerationFailedError("powered spectra failed to separate")
    u1, u2 = np.sort(rng.uniform(0.02, 0.98, 2))
    delta = low_edge + u1 * (high_edge - low_edge) * 0.45
    Delta = high_edge - (1.0 - u2) * (high_edge - low_edge) * 0.45
    if not delta < Delta:
        delta, Delta = low_edge * 1.0000001, high_edge * 0.9999999
    return t, alpha, beta, float(delta), float(Delta)


def _separated_products(dim: int, rng: np.random.Generator):
    """A, B, C, D with lammax(|BA|^2) <= m' < M' <= lammin(|(DC)*|^2)
    (or the swapped orientation), plus the window edges."""
    m_prime, big_m_prime = _window(rng, 0.2, 1.0, (1.2, 4.0))
    swap = bool(rng.random() < 0.5)
    case = make_sandwich_case(dim, m_prime * 0.9, big_m_prime * 1.1, rng, margin=1e-4, swap=swap)
    ops = dict(case.operators)
    return ops, float(m_prime), float(big_m_prime)


def _scaled_pair_windows(dim: int, rng: np.random.Generator):
    """S, T with the window [delta, Delta] separating |T|^2 from |S|^2."""
    delta, Delta = _window(rng, 0.15, 1.0, (1.15, 3.0))
    swap = bool(rng.random() < 0.5)
    lo_top = np.sqrt(delta) * (1.0 - 1e-4)
    hi_bot = np.sqrt(Delta) * (1.0 + 1e-4)
    t_sv = rng.uniform(0.3 * lo_top, lo_top, dim)
    t_sv[rng.integers(dim)] = lo_top
    s_sv = rng.uniform(hi_bot, 1.8 * hi_bot, dim)
    s_sv[rng.integers(dim)] = hi_bot
    t = operator_with_singular_values(dim, t_sv, rng)
    s = operator_with_singular_values(dim, s_sv, rng)
    if swap:
        s, t = t, s
    return s, t, float(delta), float(Delta)


def case_for_bound(bound_id: str, dim: int, rng: np.random.Generator) -> InequalityCase:
    """A random case satisfying the named bound's hypotheses."""
    builder = _BUILDERS.get(bound_id)
    if builder is None:
        raise BadKindError("no case builder for bound %r" % bound_id)
    case = builder(dim, rng)
    case.label = bound_id
    return case


def _b_single(dim, rng, **params):
    return InequalityCase(operators={"A": random_operator(dim, rng) * _scale(rng, 0.3, 1.8)}, params=params)


def _b_power(dim, rng):
    return InequalityCase(operators={"A": random_operator(dim, rng) * _scale(rng, 0.5, 1.3)},
                          params={"n_pow": int(rng.integers(2, 5))})


def _b_muna8(dim, rng):
    return _b_single(dim, rng, r=rng.uniform(1.0, 3.0), lam=rng.uniform(0.25, 0.75))


def _b_muna9(dim, rng):
    ops = {k: random_operator(dim, rng) for k in ("A", "B", "C", "D", "T", "S")}
    return InequalityCase(operators=ops, params={"alpha": rng.uniform(0.25, 0.75)})


def _b_pair(dim, rng, kind=None, **params):
    if kind == "commuting":
        a, b = commuting_pair(dim, rng)
    elif kind == "normal":
        a, b = normal_pair(dim, rng)
    else:
        a, b = random_operator(dim, rng), random_operator(dim, rng)
    return InequalityCase(operators={"A": a * _scale(rng, 0.5, 1.4), "B": b * _scale(rng, 0.5, 1.4)},
                          params=params)


def _b_shab1(dim, rng):
    ops = {"A": random_operator(dim, rng), "B": random_operator(dim, rng), "X": random_operator(dim, rng)}
    return InequalityCase(operators=ops, params={"r": rng.uniform(1.0, 3.0), "nu": rng.uniform(0.25, 0.75)})


def _b_watfa2(dim, rng):
    n, m = _nm(rng)
    psi, phi = mixed_schwarz_pair(rng.uniform(0.25, 0.75))
    ops = _family(dim, rng, ("X_i", "A_i", "B_i"), n)
    return InequalityCase(operators=ops, params={"n_ops": n, "m": m, "r": rng.uniform(1.0, 2.5)},
                          functions={"psi": psi, "phi": phi})


def _b_inprod(dim, rng):
    eta = unit_vector(dim, rng) * rng.uniform(0.0, 1.0)
    return InequalityCase(vectors={"eta": eta, "xi": unit_vector(dim, rng) * rng.uniform(0.2, 2.0),
                                   "zeta": unit_vector(dim, rng) * rng.uniform(0.2, 2.0)})


def _b_d1(dim, rng):
    ops = _quad(dim, rng)
    return InequalityCase(operators=ops, vectors={"xi": unit_vector(dim, rng) * rng.uniform(0.5, 1.5),
                                                  "zeta": unit_vector(dim, rng) * rng.uniform(0.5, 1.5)})


def _b_hm(dim, rng, regime):
    if regime == "i":
        r = rng.uniform(1.0, 3.0)
        t = psd(dim, rng) * _scale(rng, 0.3, 2.0)
    elif regime == "ii":
        r = rng.uniform(0.05, 1.0)
        t = psd(dim, rng) * _scale(rng, 0.3, 2.0)
    else:
        r = rng.uniform(-2.0, -0.05)
        t = herm_part(psd(dim, rng) + rng.uniform(0.15, 0.6) * np.eye(dim))
    return InequalityCase(operators={"T": t}, params={"r": r}, vectors={"xi": unit_vector(dim, rng)})


def _b_mp(dim, rng):
    return InequalityCase(operators={"T": psd(dim, rng) * _scale(rng, 0.3, 2.0)},
                          functions={"psi": _psi_power(rng, 1.0, 3.0)},
                          vectors={"xi": unit_vector(dim, rng)})


def _b_as(dim, rng):
    return InequalityCase(operators={"T": psd(dim, rng) * _scale(rng), "S": psd(dim, rng) * _scale(rng)},
                          params={"mu": rng.uniform(0.25, 0.75)},
                          functions={"psi": _psi_power(rng, 1.0, 3.0)})


def _b_mc(dim, rng):
    psi, phi = mixed_schwarz_pair(rng.uniform(0.25, 0.75))
    return InequalityCase(operators={"A": random_operator(dim, rng) * _scale(rng)},
                          functions={"psi": psi, "phi": phi},
                          vectors={"xi": unit_vector(dim, rng), "zeta": unit_vector(dim, rng)})


def _b_furuta(dim, rng):
    m_lo = rng.uniform(0.1, 1.0)
    m_hi = m_lo * rng.uniform(1.0, 2.5)
    big_m_lo = m_hi * rng.uniform(1.001, 3.0)
    big_m_hi = big_m_lo * rng.uniform(1.0, 2.5)
    t = hermitian_with_spectrum(dim, m_lo, m_hi, rng)
    s = hermitian_with_spectrum(dim, big_m_lo, big_m_hi, rng)
    if rng.random() < 0.5:
        t, s = s, t
    return InequalityCase(
        operators={"T": t, "S": s},
        params={"nu": rng.uniform(0.0, 1.0), "r1": rng.uniform(-1.0, -0.02), "r2": rng.uniform(0.02, 1.0),
                "m_lo": m_lo, "m_hi": m_hi, "M_lo": big_m_lo, "M_hi": big_m_hi},
    )


def _b_rahma(dim, rng, which):
    params = {"mu": rng.uniform(0.25, 0.75)}
    fns = {}
    if which == 1:
        fns["psi"] = _psi_power(rng)
    elif which == 2:
        params["r"] = rng.uniform(1.0, 2.5)
    return InequalityCase(operators=_quad(dim, rng), params=params, functions=fns)


def _b_prof1(dim, rng):
    delta, Delta = _window(rng)
    case = make_sandwich_case(dim, delta, Delta, rng, margin=1e-4, swap=bool(rng.random() < 0.5))
    case.functions["psi"] = _psi_power(rng)
    return case


def _b_cor_prof1(dim, rng):
    t, alpha, beta, delta, Delta = _powered_window_t(dim, rng)
    return InequalityCase(operators={"T": t},
                          params={"alpha": alpha, "beta": beta, "delta": delta, "Delta": Delta},
                          functions={"psi": _psi_power(rng)})


def _b_r23(dim, rng, which):
    r = rng.uniform(1.0, 3.0)
    if which == "i":
        delta, Delta = _window(rng)
        case = make_sandwich_case(dim, delta, Delta, rng, margin=1e-4, swap=bool(rng.random() < 0.5))
        case.params["r"] = r
        return case
    if which == "ii":
        s, t, delta, Delta = _scaled_pair_windows(dim, rng)
        return InequalityCase(operators={"S": s, "T": t},
                              params={"r": r, "delta": delta, "Delta": Delta})
    # iii: window against the identity, both clauses
    if rng.random() < 0.5:
        top = rng.uniform(0.3, 0.95)
        sv = rng.uniform(0.2 * top, top, dim)
        sv[rng.integers(dim)] = top
        lo_edge, hi_edge = top**2, 1.0
    else:
        bot = rng.uniform(1.05, 2.0)
        sv = rng.uniform(bot, 1.8 * bot, dim)
        sv[rng.integers(dim)] = bot
        lo_edge, hi_edge = 1.0, bot**2
    t = operator_with_singular_values(dim, sv, rng)
    u1, u2 = np.sort(rng.uniform(0.05, 0.95, 2))
    delta = lo_edge + u1 * (hi_edge - lo_edge) * 0.45
    Delta = hi_edge - (1.0 - u2) * (hi_edge - lo_edge) * 0.45
    if not delta < Delta:
        delta, Delta = lo_edge * (1 + 1e-9), hi_edge * (1 - 1e-9)
    return InequalityCase(operators={"T": t}, params={"r": r, "delta": float(delta), "Delta": float(Delta)})


def _b_boshra22(dim, rng):
    ops, m_prime, big_m_prime = _separated_products(dim, rng)
    return InequalityCase(operators=ops, params={"m_prime": m_prime, "M_prime": big_m_prime},
                          functions={"psi": _psi_power(rng)})


def _b_mohmmm(dim, rng):
    return InequalityCase(operators=_quad(dim, rng), params={"nu": rng.uniform(0.25, 0.75)},
                          functions={"psi": _psi_power(rng)})


def _b_maka(dim, rng, which):
    t = _maka_t(dim, rng)
    nu = rng.uniform(0.25, 0.75)
    if which == 1:
        alpha = rng.uniform(0.2, 1.5)
        beta = max(0.0, 1.0 - alpha) + rng.uniform(0.05, 1.2)
    elif which == 2:
        alpha = rng.uniform(0.5, 2.0)
        beta = max(0.0, 2.0 - alpha) + rng.uniform(0.05, 1.0)
    else:
        alpha, beta = rng.uniform(0.2, 1.5, 2)
    return InequalityCase(operators={"T": t}, params={"alpha": alpha, "beta": beta, "nu": nu},
                          functions={"psi": _psi_power(rng)})


def _b_supqad(dim, rng, power_only: bool):
    a = random_operator(dim, rng) * _scale(rng, 0.3, 1.8)
    r = rng.uniform(2.0, 4.0)
    if power_only:
        return InequalityCase(operators={"A": a}, params={"r": r})
    return InequalityCase(operators={"A": a}, functions={"psi": power(r)})


def _b_dc_family(dim, rng, **extra):
    n, m = _nm(rng)
    ops = _family(dim, rng, ("A_i", "C_i", "D_i"), n)
    params = {"n_ops": n, "m": m}
    params.update(extra)
    return InequalityCase(operators=ops, params=params)


def _b_th31(dim, rng):
    return _b_dc_family(dim, rng, r=rng.uniform(1.0, 3.0))


def _b_cor32(dim, rng):
    n, m = _nm(rng)
    return InequalityCase(operators={"C_i": [random_operator(dim, rng) for _ in range(n)]},
                          params={"n_ops": n, "m": m, "r": rng.uniform(1.0, 3.0)})


def _b_cor_powers(dim, rng):
    return InequalityCase(operators={"C": random_operator(dim, rng)},
                          params={"m": int(rng.integers(1, 4)), "r": rng.uniform(1.0, 3.0)})


def _b_alpha(dim, rng):
    return _b_dc_family(dim, rng, r=rng.uniform(1.0, 2.5), alpha=rng.uniform(0.15, 0.85))


def _conjugate(rng, lo=1.2, hi=4.0):
    p = rng.uniform(lo, hi)
    return p, p / (p - 1.0)


def _b_n1(dim, rng):
    p, q = _conjugate(rng)
    return _b_dc_family(dim, rng, p=p, q=q)


def _b_n3(dim, rng):
    p, q = _conjugate(rng)
    return _b_dc_family(dim, rng, p=p, q=q, k=int(rng.integers(1, 3)), r=rng.uniform(1.0, 2.5))


def _b_cor_n3(dim, rng):
    return _b_dc_family(dim, rng, r=rng.uniform(1.0, 2.5))


def _b_sch(dim, rng, k=None):
    n, m = _nm(rng)
    p, q = _conjugate(rng)
    psi, phi = mixed_schwarz_pair(rng.uniform(0.25, 0.75))
    ops = _family(dim, rng, ("X_i", "A_i", "B_i"), n)
    params = {"n_ops": n, "m": m, "p": p, "q": q, "r": rng.uniform(1.0, 2.5)}
    if k is not None:
        params["k"] = k
    return InequalityCase(operators=ops, params=params, functions={"psi": psi, "phi": phi})


def _b_ok1(dim, rng):
    case = _b_sch(dim, rng)
    case.params["lam"] = case.functions["psi"].exponent
    return case


def _b_ok2(dim, rng):
    n, m = _nm(rng)
    p, q = _conjugate(rng)
    psi, phi = mixed_schwarz_pair(rng.uniform(0.25, 0.75))
    return InequalityCase(operators={"A_i": [random_operator(dim, rng) for _ in range(n)]},
                          params={"n_ops": n, "m": m, "p": p, "q": q, "r": rng.uniform(1.0, 2.5)},
                          functions={"psi": psi, "phi": phi})


def _b_ok3(dim, rng):
    p, q = _conjugate(rng)
    lam = rng.uniform(0.25, 0.75)
    return InequalityCase(operators={"A": random_operator(dim, rng)},
                          params={"m": int(rng.integers(1, 4)), "p": p, "q": q,
                                  "r": rng.uniform(1.0, 2.5), "lam": lam})


def _b_cor_sch2(dim, rng):
    n, m = _nm(rng)
    psi, phi = mixed_schwarz_pair(rng.uniform(0.25, 0.75))
    ops = _family(dim, rng, ("X_i", "A_i", "B_i"), n)
    return InequalityCase(operators=ops, params={"n_ops": n, "m": m, "r": rng.uniform(1.0, 2.5)},
                          functions={"psi": psi, "phi": phi})


_BUILDERS = {
    "B-N1-SANDWICH": lambda d, g: _b_single(d, g),
    "B-POWER": _b_power,
    "B-MUNA6": lambda d, g: _b_single(d, g),
    "B-MUNA6-PRINTED": lambda d, g: _b_single(d, g),
    "B-MUNA7-L": lambda d, g: _b_single(d, g),
    "B-MUNA7-U": lambda d, g: _b_single(d, g),
    "B-MUNA7.5": lambda d, g: _b_pair(d, g),
    "B-MUNA8a": _b_muna8,
    "B-MUNA8b": _b_muna8,
    "B-MUNA9": _b_muna9,
    "B-PRODUCT-4": lambda d, g: _b_pair(d, g),
    "B-PRODUCT-2": lambda d, g: _b_pair(d, g, kind="commuting"),
    "B-PRODUCT-1": lambda d, g: _b_pair(d, g, kind="normal"),
    "B-WATFA1": lambda d, g: _b_pair(d, g, r=g.uniform(1.0, 3.0)),
    "B-WATFA1-PRINTED": lambda d, g: _b_pair(d, g, r=g.uniform(1.0, 3.0)),
    "B-SHAB1": _b_shab1,
    "B-WATFA2": _b_watfa2,
    "LEM-INPROD": _b_inprod,
    "LEM-D1": _b_d1,
    "LEM-HM-i": lambda d, g: _b_hm(d, g, "i"),
    "LEM-HM-ii": lambda d, g: _b_hm(d, g, "ii"),
    "LEM-HM-iii": lambda d, g: _b_hm(d, g, "iii"),
    "LEM-MP": _b_mp,
    "LEM-AS": _b_as,
    "LEM-MC": _b_mc,
    "LEM-FURUTA": _b_furuta,
    "TH-A1": lambda d, g: InequalityCase(operators=_quad(d, g)),
    "TH-A1-PRINTED": lambda d, g: InequalityCase(operators=_quad(d, g)),
    "COR-A1S": lambda d, g: InequalityCase(operators={"S": random_operator(d, g) * _scale(g)}),
    "COR-A1W": lambda d, g: InequalityCase(operators=_quad(d, g)),
    "TH-RAHMA1-T1": lambda d, g: _b_rahma(d, g, 1),
    "TH-RAHMA1-T2": lambda d, g: _b_rahma(d, g, 2),
    "TH-RAHMA1-T3": lambda d, g: _b_rahma(d, g, 3),
    "TH-PROF1": _b_prof1,
    "COR-PROF1": _b_cor_prof1,
    "REM-R23-i": lambda d, g: _b_r23(d, g, "i"),
    "REM-R23-ii": lambda d, g: _b_r23(d, g, "ii"),
    "REM-R23-iii": lambda d, g: _b_r23(d, g, "iii"),
    "TH-BOSHRA22": _b_boshra22,
    "TH-MOHMMM": _b_mohmmm,
    "COR-MAKA1": lambda d, g: _b_maka(d, g, 1),
    "COR-MAKA2": lambda d, g: _b_maka(d, g, 2),
    "COR-MAKA3": lambda d, g: _b_maka(d, g, 3),
    "TH-SUPQAD": lambda d, g: _b_supqad(d, g, power_only=False),
    "COR-SUPQAD": lambda d, g: _b_supqad(d, g, power_only=True),
    "TH-3.1": _b_th31,
    "COR-3.2": _b_cor32,
    "COR-POWERS": _b_cor_powers,
    "TH-ALPHA": _b_alpha,
    "TH-N1": _b_n1,
    "TH-N3": _b_n3,
    "COR-N3": _b_cor_n3,
    "TH-SCH1": lambda d, g: _b_sch(d, g),
    "COR-OK1": _b_ok1,
    "COR-OK2": _b_ok2,
    "COR-OK3": _b_ok3,
    "TH-SCH2": lambda d, g: _b_sch(d, g, k=int(g.integers(1, 3))),
    "COR-SCH2": _b_cor_sch2,
}

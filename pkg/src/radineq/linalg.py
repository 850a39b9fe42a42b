"""Core matrix operations: Hermitian eigensolver wrapper, operator norm,
absolute value, functional calculus, polar factors, weighted operator
means, and the deformed exponential.

Everything works on square complex128 ndarrays. LAPACK (via numpy) does
the factorization work; this module owns the tolerance policy, the
kernel conventions, and the error surface.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadParametersError,
    DomainError,
    NoConvergenceError,
    NotHermitianError,
    NotInvertibleError,
    NumericalBreakdownError,
    UndefinedValueError,
)
from .scalarfn import ScalarFunction

# Relative tolerance policy, shared by every routine in the package.
HERM_TOL = 1e-10        # ||H - H*|| / ||H|| allowed before NotHermitian
PSD_CLIP_TOL = 1e-10    # eigenvalues of A*A in [-tol*||A*A||, 0) clip to 0
SIGMA_TOL = 1e-12       # singular values below tol*sigma_max treated as 0
INV_TOL = 1e-12         # lambda_min/lambda_max below this is singular


def as_matrix(a) -> np.ndarray:
    """Coerce to a square complex128 matrix."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise BadParametersError("expected a square matrix, got shape %r" % (m.shape,))
    return m


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def herm_part(a: np.ndarray) -> np.ndarray:
    return (a + dagger(a)) / 2.0


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending, real) and orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.values.shape[0])

    def apply(self, fvals: np.ndarray) -> np.ndarray:
        """Assemble V diag(fvals) V*."""
        v = self.vectors
        return (v * np.asarray(fvals, dtype=np.complex128)) @ dagger(v)


@dataclass(frozen=True)
class PolarFactors:
    """A = U P with P = |A| PSD and U a partial isometry vanishing on ker(P)."""

    unitary_part: np.ndarray
    positive_part: np.ndarray


def hermitian_eig(h, herm_tol: float = HERM_TOL) -> SpectralDecomposition:
    """Spectral decomposition of a Hermitian matrix.

    Rejects inputs whose skew part exceeds ``herm_tol`` relative to the
    matrix norm; symmetrizes the remainder so LAPACK sees an exactly
    Hermitian matrix.
    """
    h = as_matrix(h)
    scale = np.linalg.norm(h)
    if scale > 0 and np.linalg.norm(h - dagger(h)) > herm_tol * scale:
        raise NotHermitianError(
            "matrix is not Hermitian: ||H - H*|| = %.3e vs ||H|| = %.3e"
            % (np.linalg.norm(h - dagger(h)), scale)
        )
    try:
        vals, vecs = np.linalg.eigh(herm_part(h))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergenceError("eigensolver did not converge: %s" % exc) from exc
    return SpectralDecomposition(values=vals, vectors=vecs)


def eigvalsh(h) -> np.ndarray:
    """Eigenvalues only (ascending), same Hermitian policy as hermitian_eig."""
    return hermitian_eig(h).values


def lambda_min(h) -> float:
    return float(eigvalsh(h)[0])


def lambda_max(h) -> float:
    return float(eigvalsh(h)[-1])


def operator_norm(a) -> float:
    """Largest singular value."""
    a = as_matrix(a)
    if not np.all(np.isfinite(a)):
        raise NumericalBreakdownError("matrix contains non-finite entries")
    return float(np.linalg.svd(a, compute_uv=False)[0])


def svd(a):
    """Thin wrapper returning (U, sigma, Vh) with tiny sigmas zeroed."""
    a = as_matrix(a)
    u, s, vh = np.linalg.svd(a)
    if s.size and s[0] > 0:
        s = np.where(s < SIGMA_TOL * s[0], 0.0, s)
    return u, s, vh


def _clip_psd_spectrum(vals: np.ndarray, scale: float, clip_tol: float) -> np.ndarray:
    floor = -clip_tol * max(scale, 0.0)
    if np.any(vals < floor):
        raise NumericalBreakdownError(
            "spectrum significantly below zero: min = %.3e, allowed floor = %.3e"
            % (float(vals.min()), floor)
        )
    return np.clip(vals, 0.0, None)


def abs_op(a, clip_tol: float = PSD_CLIP_TOL) -> np.ndarray:
    """|A| = (A*A)^(1/2) through the spectral decomposition of A*A.

    Eigenvalues of A*A inside [-clip_tol*||A*A||, 0) clip to zero;
    anything below that window raises NumericalBreakdown.
    """
    a = as_matrix(a)
    gram = dagger(a) @ a
    dec = hermitian_eig(gram)
    vals = _clip_psd_spectrum(dec.values, float(dec.values[-1]) if dec.dim else 0.0, clip_tol)
    out = dec.apply(np.sqrt(vals))
    return herm_part(out)


def matrix_function(p, f, clip_tol: float = PSD_CLIP_TOL) -> np.ndarray:
    """f(P) = V diag(f(lambda)) V* for Hermitian P.

    ``f`` may be a ScalarFunction or any callable on real arrays. Small
    negative eigenvalues are clipped to 0 before evaluation so that
    fractional powers of PSD inputs stay real.
    """
    dec = hermitian_eig(p)
    vals = dec.values
    if isinstance(f, ScalarFunction) or getattr(f, "kind", None) in ("power", "custom"):
        scale = float(np.max(np.abs(vals))) if dec.dim else 0.0
        vals = _clip_psd_spectrum(vals, scale, clip_tol)
        fvals = f(vals)
    else:
        fvals = np.asarray(f(vals), dtype=float)
    out = dec.apply(fvals)
    return herm_part(out)


def psd_power(p, s: float, clip_tol: float = PSD_CLIP_TOL) -> np.ndarray:
    """P**s for Hermitian PSD P, with 0**s = 0 for s > 0."""
    dec = hermitian_eig(p)
    scale = float(np.max(np.abs(dec.values))) if dec.dim else 0.0
    vals = _clip_psd_spectrum(dec.values, scale, clip_tol)
    if s < 0 and np.any(vals <= INV_TOL * max(scale, 1e-300)):
        raise NotInvertibleError("negative power of a singular PSD matrix")
    fvals = np.power(vals, s)
    return herm_part(dec.apply(fvals))


def abs_power(a, s: float) -> np.ndarray:
    """|A|**s computed from the singular value decomposition of A.

    More accurate than powering abs_op(A) when A has small singular
    values, because sigma is found directly instead of via sqrt(A*A).
    """
    a = as_matrix(a)
    u, sig, vh = np.linalg.svd(a)
    sig = np.where(sig < SIGMA_TOL * (sig[0] if sig.size else 0.0), 0.0, sig)
    if s < 0 and np.any(sig == 0.0):
        raise NotInvertibleError("negative power of |A| for singular A")
    v = dagger(vh)
    return herm_part((v * np.power(sig, s)) @ dagger(v))


def abs_power_star(a, s: float) -> np.ndarray:
    """|A*|**s from the same SVD (left singular vectors)."""
    a = as_matrix(a)
    u, sig, vh = np.linalg.svd(a)
    sig = np.where(sig < SIGMA_TOL * (sig[0] if sig.size else 0.0), 0.0, sig)
    if s < 0 and np.any(sig == 0.0):
        raise NotInvertibleError("negative power of |A*| for singular A")
    return herm_part((u * np.power(sig, s)) @ dagger(u))


def matrix_power_int(a, k: int) -> np.ndarray:
    """A**k for integer k >= 0 by repeated squaring."""
    a = as_matrix(a)
    if k < 0 or k != int(k):
        raise BadParametersError("integer matrix power needs k >= 0, got %r" % (k,))
    return np.linalg.matrix_power(a, int(k))


def polar_decomposition(a, sigma_tol: float = SIGMA_TOL) -> PolarFactors:
    """A = U P with P = |A| and U the partial isometry vanishing on ker(P).

    Singular values below ``sigma_tol * sigma_max`` count as zero, so the
    corresponding directions are dropped from U and U*U is the orthogonal
    projection onto range(P).
    """
    a = as_matrix(a)
    u, sig, vh = np.linalg.svd(a)
    cut = sigma_tol * (sig[0] if sig.size else 0.0)
    keep = sig > cut
    v = dagger(vh)
    p = herm_part((v * np.where(keep, sig, 0.0)) @ dagger(v))
    iso = u[:, keep] @ dagger(v[:, keep])
    return PolarFactors(unitary_part=iso, positive_part=p)


def _require_weight(nu: float) -> float:
    nu = float(nu)
    if not 0.0 <= nu <= 1.0:
        raise DomainError("mean weight must lie in [0, 1], got %r" % nu)
    return nu


def weighted_arithmetic_mean(t, s, nu: float, as_printed: bool = False) -> np.ndarray:
    """(1-nu) T + nu S, the weight convention matching the geometric mean.

    ``as_printed=True`` returns nu T + (1-nu) S instead (the reversed
    convention that some sources display); both reduce to the same
    midpoint at nu = 1/2.
    """
    nu = _require_weight(nu)
    t = as_matrix(t)
    s = as_matrix(s)
    if as_printed:
        return nu * t + (1.0 - nu) * s
    return (1.0 - nu) * t + nu * s


def weighted_geometric_mean(t, s, nu: float, inv_tol: float = INV_TOL) -> np.ndarray:
    """T #_nu S = T^(1/2) (T^(-1/2) S T^(-1/2))^nu T^(1/2) for T > 0, S >= 0."""
    nu = _require_weight(nu)
    t = as_matrix(t)
    s = as_matrix(s)
    dec = hermitian_eig(t)
    top = float(dec.values[-1])
    if top <= 0 or float(dec.values[0]) <= inv_tol * top:
        raise NotInvertibleError("geometric mean needs strictly positive T")
    rt = dec.apply(np.sqrt(dec.values))
    irt = dec.apply(1.0 / np.sqrt(dec.values))
    mid = herm_part(irt @ s @ irt)
    out = rt @ psd_power(mid, nu) @ rt
    return herm_part(out)


def weighted_means(t, s, nu: float, as_printed: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """Both nu-weighted means at once: (arithmetic, geometric)."""
    return (
        weighted_arithmetic_mean(t, s, nu, as_printed=as_printed),
        weighted_geometric_mean(t, s, nu),
    )


def polar_unitary(a, herm_tol: float = HERM_TOL) -> np.ndarray:
    """The unitary U = u v* from A = u diag(sigma) v*, so A = U |A|.

    Unlike the partial isometry of ``polar_decomposition`` this is a full
    unitary (an arbitrary rotation on ker A), which keeps products like
    U |A|^b U |A|^a defined for singular A.
    """
    a = as_matrix(a)
    u, _, vh = np.linalg.svd(a)
    return u @ vh


def exp_r_scalar(x: float, r: float) -> float:
    """Deformed exponential (1 + r x)^(1/r) for r in [-1, 1] \\ {0}."""
    r = float(r)
    x = float(x)
    if r == 0.0 or not -1.0 <= r <= 1.0:
        raise BadParametersError("deformation parameter must lie in [-1,1] minus 0, got %r" % r)
    base = 1.0 + r * x
    if base <= 0.0:
        raise UndefinedValueError("deformed exponential undefined: 1 + r*x = %r <= 0" % base)
    return float(base ** (1.0 / r))


# ---------------------------------------------------------------------------
# Matrix exchange format: {"dim": n, "re": [[...]], "im": [[...]]}
# ---------------------------------------------------------------------------

def matrix_to_json(a) -> dict:
    a = as_matrix(a)
    return {
        "dim": int(a.shape[0]),
        "re": a.real.tolist(),
        "im": a.imag.tolist(),
    }


def matrix_from_json(obj) -> np.ndarray:
    try:
        dim = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise BadParametersError("malformed matrix payload: %s" % exc) from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise BadParametersError(
            "matrix payload shape mismatch: dim=%d, re=%r, im=%r" % (dim, re.shape, im.shape)
        )
    return re + 1j * im


def vector_to_json(v) -> dict:
    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    return {"dim": int(v.shape[0]), "re": v.real.tolist(), "im": v.imag.tolist()}


def vector_from_json(obj) -> np.ndarray:
    try:
        dim = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float).reshape(-1)
        im = np.asarray(obj["im"], dtype=float).reshape(-1)
    except (KeyError, TypeError, ValueError) as exc:
        raise BadParametersError("malformed vector payload: %s" % exc) from exc
    if re.shape != (dim,) or im.shape != (dim,):
        raise BadParametersError("vector payload shape mismatch")
    return re + 1j * im


def gauge_fix(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rotate a global phase so the first non-negligible entry is real >= 0."""
    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    nrm = np.linalg.norm(v)
    if nrm == 0:
        return v
    for x in v:
        if abs(x) > tol * nrm:
            return v * (abs(x) / x)
    return v

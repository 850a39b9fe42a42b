"""Scalar functions applied to operators through functional calculus.

The registry bounds only ever need power functions ``t -> t**r`` on
``[0, inf)``, but user-supplied callables are accepted as long as the
caller vouches for the structural flags (monotonicity, convexity, ...)
that each inequality requires.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import BadFunctionError, DomainError


@dataclass(frozen=True)
class ScalarFunction:
    """A scalar function on [0, inf) together with its structural flags.

    ``exponent`` is set for power functions and drives exact exponent
    arithmetic in the bound evaluators; ``fn`` is the fallback callable
    for everything else.
    """

    kind: str  # "power" or "custom"
    exponent: Optional[float] = None
    fn: Optional[Callable[[np.ndarray], np.ndarray]] = None
    name: str = ""
    nonnegative: bool = True
    increasing: bool = True
    convex: bool = False
    superquadratic: bool = False
    zero_at_zero: bool = True
    flags: dict = field(default_factory=dict, compare=False)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t < -1e-12):
            raise DomainError("scalar function evaluated below 0: min(t)=%r" % float(np.min(t)))
        t = np.clip(t, 0.0, None)
        if self.kind == "power":
            if self.exponent is None:
                raise BadFunctionError("power function without exponent")
            with np.errstate(divide="ignore"):
                out = np.power(t, self.exponent)
            # 0**0 and 0**negative are not needed by any registered bound
            if self.exponent < 0 and np.any(t == 0.0):
                raise DomainError("negative power at t = 0")
            return out
        if self.fn is None:
            raise BadFunctionError("custom scalar function without callable")
        return np.asarray(self.fn(t), dtype=float)

    def require(self, *names: str) -> "ScalarFunction":
        """Raise unless every named flag is set; returns self for chaining."""
        for nm in names:
            if not getattr(self, nm, False):
                raise BadFunctionError(
                    "scalar function %s lacks required property %r" % (self.describe(), nm)
                )
        return self

    def describe(self) -> str:
        if self.kind == "power":
            return "t^%g" % self.exponent
        return self.name or "custom"


def power(r: float) -> ScalarFunction:
    """The power function t -> t**r on [0, inf) with flags derived from r."""
    r = float(r)
    return ScalarFunction(
        kind="power",
        exponent=r,
        name="t^%g" % r,
        nonnegative=True,
        increasing=r > 0,
        convex=r >= 1.0 or r <= 0.0,
        superquadratic=r >= 2.0,
        zero_at_zero=r > 0,
    )


def custom(fn: Callable[[np.ndarray], np.ndarray], name: str = "custom", **flags) -> ScalarFunction:
    """Wrap a callable; the caller asserts the structural flags."""
    known = {"nonnegative", "increasing", "convex", "superquadratic", "zero_at_zero"}
    kw = {k: bool(v) for k, v in flags.items() if k in known}
    extra = {k: v for k, v in flags.items() if k not in known}
    return ScalarFunction(kind="custom", fn=fn, name=name, flags=extra, **kw)


def mixed_schwarz_pair(lam: float) -> tuple[ScalarFunction, ScalarFunction]:
    """The power pair (t^lam, t^(1-lam)) with psi(t) * phi(t) = t.

    This is the only pair shape the registered bounds use; 0 < lam < 1
    keeps both factors nonnegative and increasing.
    """
    lam = float(lam)
    if not 0.0 < lam < 1.0:
        raise BadFunctionError("pair weight must lie in (0, 1), got %r" % lam)
    return power(lam), power(1.0 - lam)


def check_pair(psi: ScalarFunction, phi: ScalarFunction, tol: float = 1e-12) -> None:
    """Verify psi(t) * phi(t) = t on a probe grid (exact for power pairs)."""
    if psi.kind == "power" and phi.kind == "power":
        if abs(psi.exponent + phi.exponent - 1.0) > tol:
            raise BadFunctionError(
                "power pair exponents %g + %g != 1" % (psi.exponent, phi.exponent)
            )
        return
    t = np.linspace(0.05, 4.0, 23)
    if np.max(np.abs(psi(t) * phi(t) - t)) > 1e-9 * 4.0:
        raise BadFunctionError("pair fails psi(t)*phi(t) = t on probe grid")

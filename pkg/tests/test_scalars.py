"""Scalar inequality oracles: fuzz, documented equality cases, presets."""

import numpy as np
import pytest

from radineq.errors import (
    BadFunctionError,
    BadWindowError,
    NotConjugateError,
    PreconditionFailedError,
)
from radineq.scalarfn import custom, power
from radineq.scalars import (
    agm_refined,
    conjugate_exponent,
    jensen_chain,
    power_sum_convexity,
    subadditivity_gap,
    superquadratic_gap,
    young_generalized,
    young_generalized_eq4,
    young_generalized_eq5,
    young_refined,
)

FUZZ = 2000  # per-operation; the acceptance suite runs the full 1e5


def test_conjugate_exponent():
    assert conjugate_exponent(2.0) == pytest.approx(2.0, abs=1e-15)
    assert conjugate_exponent(3.0) == pytest.approx(1.5, abs=1e-15)
    with pytest.raises(NotConjugateError):
        conjugate_exponent(1.0)


def test_jensen_chain_examples():
    a, b = jensen_chain(5.0, 5.0, 0.3, 2.0)
    assert abs(a.slack) <= 1e-12 and abs(b.slack) <= 1e-12
    a, b = jensen_chain(2.0, 3.0, 0.4, 1.0)
    assert abs(b.slack) <= 1e-12
    a, b = jensen_chain(4.0, 1.0, 0.5, 2.0)
    assert a.lhs == pytest.approx(2.0, abs=1e-12)
    assert a.rhs == pytest.approx(2.5, abs=1e-12)
    assert b.rhs == pytest.approx(np.sqrt(8.5), abs=1e-12)


def test_young_refined_examples():
    rng = np.random.default_rng(0)
    for _ in range(30):
        s, t = rng.uniform(0.05, 4.0, 2)
        assert abs(young_refined(s, t, 2.0, 2.0).slack) <= 1e-12
    c = young_refined(1.0, 1.0, 3.0, 1.5)
    assert abs(c.slack) <= 1e-12
    c = young_refined(2.0, 1.0, 3.0, 1.5)
    assert c.lhs == pytest.approx(2.0 + (1.0 / 3.0) * (2.0**1.5 - 1.0) ** 2, rel=1e-12)
    assert c.rhs == pytest.approx(8.0 / 3.0 + 2.0 / 3.0, rel=1e-12)
    with pytest.raises(NotConjugateError):
        young_refined(1.0, 1.0, 3.0, 1.4)


def test_young_refined_tightens_plain_young():
    rng = np.random.default_rng(1)
    for _ in range(FUZZ // 10):
        s, t = rng.uniform(0.05, 4.0, 2)
        p = rng.uniform(1.05, 5.0)
        q = conjugate_exponent(p)
        refined = young_refined(s, t, p, q)
        plain_slack = s**p / p + t**q / q - s * t
        assert refined.slack <= plain_slack + 1e-12


def test_young_generalized_examples():
    rng = np.random.default_rng(2)
    for _ in range(30):
        s, t = rng.uniform(0.05, 4.0, 2)
        assert abs(young_generalized(s, t, 2.0, 2.0, m=1, r=1.0).slack) <= 1e-12
    for r in (1.0, 1.7, 3.0):
        assert abs(young_generalized(1.0, 1.0, 2.0, 2.0, m=2, r=r).slack) <= 1e-12
    c = young_generalized(4.0, 1.0, 2.0, 2.0, m=1, r=2.0)
    assert c.lhs == pytest.approx(2.5, rel=1e-12)
    assert c.rhs == pytest.approx(np.sqrt(8.5), rel=1e-12)


def test_young_generalized_rejects_bad_m():
    with pytest.raises(Exception):
        young_generalized(1.0, 2.0, 2.0, 2.0, m=0, r=1.0)
    with pytest.raises(Exception):
        young_generalized(1.0, 2.0, 2.0, 2.0, m=1.5, r=1.0)


def test_young_presets_match_general_form():
    rng = np.random.default_rng(3)
    for _ in range(50):
        s, t = rng.uniform(0.05, 4.0, 2)
        m = int(rng.integers(1, 4))
        r = rng.uniform(1.0, 3.0)
        eq4 = young_generalized_eq4(s, t, m=m, r=r)
        gen = young_generalized(s, t, 2.0, 2.0, m=m, r=r)
        assert eq4.lhs == gen.lhs and eq4.rhs == gen.rhs
        eq5 = young_generalized_eq5(s, t, r=r)
        gen1 = young_generalized(s, t, 2.0, 2.0, m=1, r=r)
        assert eq5.lhs == gen1.lhs and eq5.rhs == gen1.rhs


def test_agm_refined_examples():
    assert abs(agm_refined(1.0, 4.0, 1.0, 4.0).slack) <= 1e-12
    c = agm_refined(1.0, 4.0, 2.0, 3.0)
    assert c.lhs == pytest.approx(5.0 / np.sqrt(6.0), rel=1e-12)
    assert c.rhs == pytest.approx(2.5, rel=1e-12)
    with pytest.raises(BadWindowError):
        agm_refined(2.0, 2.0, 2.0, 2.0)  # no delta < Delta window at mu = nu
    with pytest.raises(PreconditionFailedError):
        agm_refined(1.0, 4.0, 0.5, 2.0)  # window escapes [min, max]


def test_power_sum_convexity_examples():
    assert abs(power_sum_convexity((3.0, 3.0, 3.0), 2.5).slack) <= 1e-12
    assert abs(power_sum_convexity((1.0, 5.0), 1.0).slack) <= 1e-12
    c = power_sum_convexity((1.0, 2.0, 3.0), 2.0)
    assert c.lhs == pytest.approx(36.0, abs=1e-12)
    assert c.rhs == pytest.approx(42.0, abs=1e-12)


def test_superquadratic_gap_examples():
    rng = np.random.default_rng(4)
    sq = power(2.0)
    for _ in range(30):
        t, xi = rng.uniform(0.0, 5.0, 2)
        assert abs(superquadratic_gap(sq, t, xi).slack) <= 1e-12
    c = superquadratic_gap(power(3.0), 2.0, 1.0)
    assert c.lhs == pytest.approx(5.0, abs=1e-12)
    assert c.rhs == pytest.approx(8.0, abs=1e-12)
    assert abs(superquadratic_gap(power(3.0), 1.3, 1.3).slack) <= 1e-12
    with pytest.raises(BadFunctionError):
        superquadratic_gap(power(1.5), 1.0, 2.0)


def test_subadditivity_gap_examples():
    f = power(2.0)
    assert abs(subadditivity_gap(f, 1.0, 3.0).slack) <= 1e-12
    assert abs(subadditivity_gap(f, 0.0, 3.0).slack) <= 1e-12
    c = subadditivity_gap(f, 0.5, 2.0)
    assert c.lhs == pytest.approx(1.0, abs=1e-12) and c.rhs == pytest.approx(2.0, abs=1e-12)
    bad = custom(lambda t: t + 1.0, name="affine", convex=True, zero_at_zero=False)
    with pytest.raises(BadFunctionError):
        subadditivity_gap(bad, 0.5, 2.0)


def test_fuzz_all_operations_small():
    rng = np.random.default_rng(5)
    for _ in range(FUZZ):
        s, t = rng.uniform(1e-3, 8.0, 2)
        alpha = rng.uniform(0.0, 1.0)
        r = rng.uniform(1.0, 4.0)
        p = rng.uniform(1.05, 5.0)
        q = conjugate_exponent(p)
        m = int(rng.integers(1, 5))

        c1, c2 = jensen_chain(s, t, alpha, r)
        assert c1.holds and c2.holds
        assert young_refined(s, t, p, q).holds
        assert young_generalized(s, t, p, q, m=m, r=r).holds
        sigma = tuple(rng.uniform(1e-3, 5.0, int(rng.integers(1, 5))))
        assert power_sum_convexity(sigma, r).holds
        assert superquadratic_gap(power(rng.uniform(2.0, 4.0)), s, t).holds
        assert subadditivity_gap(power(rng.uniform(1.0, 3.0)), alpha, s).holds
        lo, hi = sorted(rng.uniform(min(s, t), max(s, t), 2))
        if lo > min(s, t) + 1e-9 and hi < max(s, t) - 1e-9 and hi - lo > 1e-9:
            assert agm_refined(s, t, lo, hi).holds

"""Certified numerical-radius bracket: soundness, examples, equivariance."""

import numpy as np
import pytest

from radineq.errors import BadParametersError, NotUnitVectorError
from radineq.linalg import dagger, operator_norm
from radineq.radius import numerical_radius, radius_brute_oracle, rayleigh

SHIFT = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


def _rand(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def _rand_normal(rng, n):
    q, r = np.linalg.qr(_rand(rng, n))
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return (q * z) @ dagger(q)


def test_bracket_invariants_random():
    rng = np.random.default_rng(0)
    for _ in range(40):
        n = int(rng.integers(1, 7))
        a = _rand(rng, n)
        br = numerical_radius(a, tol=1e-9)
        assert 0.0 <= br.lo <= br.hi
        assert br.width <= 1e-9
        assert br.converged
        assert 0.0 <= br.theta_star < 2 * np.pi
        assert abs(np.linalg.norm(br.witness) - 1.0) <= 1e-12
        assert abs(rayleigh(a, br.witness)) >= br.lo - 1e-12


def test_diag_example_normal():
    br = numerical_radius(np.diag([-3.0, 2.0]).astype(complex))
    assert br.lo <= 3.0 <= br.hi + 1e-12
    assert br.hi == pytest.approx(3.0, abs=1e-9)


def test_shift_is_half():
    br = numerical_radius(SHIFT, tol=1e-10)
    assert br.hi == pytest.approx(0.5, abs=1e-8)
    assert radius_brute_oracle(SHIFT, 100_000) >= 0.4999


def test_brute_oracle_examples():
    assert radius_brute_oracle(np.zeros((2, 2)), 1000) == 0.0
    assert radius_brute_oracle(np.eye(3), 1000) == pytest.approx(1.0, abs=1e-12)


def test_bracket_vs_brute_oracle():
    rng = np.random.default_rng(1)
    for k in range(25):
        n = 2 + k % 2
        a = _rand(rng, n)
        br = numerical_radius(a, tol=1e-9)
        oracle = radius_brute_oracle(a, 20_000, seed=k)
        assert oracle <= br.hi + 1e-12
        assert abs(br.hi - oracle) <= 1e-3 * max(1.0, br.hi)


def test_norm_sandwich():
    rng = np.random.default_rng(2)
    for _ in range(25):
        n = int(rng.integers(1, 7))
        a = _rand(rng, n)
        nrm = operator_norm(a)
        br = numerical_radius(a, tol=1e-9)
        assert 0.5 * nrm - 1e-9 <= br.hi
        assert br.lo <= nrm + 1e-12


def test_power_inequality():
    rng = np.random.default_rng(3)
    for _ in range(10):
        a = _rand(rng, 3)
        a /= operator_norm(a)
        base = numerical_radius(a, tol=1e-10)
        mat = a
        for k in (2, 3):
            mat = mat @ a
            assert numerical_radius(mat, tol=1e-10).lo <= base.hi**k + 1e-9


def test_normal_matrices_attain_norm():
    rng = np.random.default_rng(4)
    for _ in range(15):
        n = int(rng.integers(2, 6))
        a = _rand_normal(rng, n)
        br = numerical_radius(a, tol=1e-9)
        assert abs(br.midpoint - operator_norm(a)) <= 2e-9 * max(1.0, operator_norm(a))


def test_scale_equivariance():
    rng = np.random.default_rng(5)
    a = _rand(rng, 3)
    base = numerical_radius(a, tol=1e-10)
    for _ in range(8):
        c = complex(rng.standard_normal(), rng.standard_normal())
        scaled = numerical_radius(c * a, tol=1e-10)
        assert abs(scaled.midpoint - abs(c) * base.midpoint) <= 2e-10 * (1 + abs(c)) * (
            1 + base.hi
        )


def test_witness_gauge_deterministic():
    rng = np.random.default_rng(6)
    a = _rand(rng, 4)
    b1 = numerical_radius(a, tol=1e-9)
    b2 = numerical_radius(a, tol=1e-9)
    assert b1.lo == b2.lo and b1.hi == b2.hi
    assert np.array_equal(b1.witness, b2.witness)
    lead = b1.witness[np.argmax(np.abs(b1.witness) > 1e-12 * np.linalg.norm(b1.witness))]
    assert abs(lead.imag) <= 1e-12 and lead.real >= 0


def test_rayleigh_examples_and_unit_check():
    xi = np.array([1.0, 1.0]) / np.sqrt(2.0)
    assert rayleigh(np.eye(2), xi) == pytest.approx(1.0, abs=1e-14)
    assert rayleigh(np.diag([1.0, -1.0]), xi) == pytest.approx(0.0, abs=1e-14)
    assert rayleigh(SHIFT, xi) == pytest.approx(0.5, abs=1e-14)
    with pytest.raises(NotUnitVectorError):
        rayleigh(np.eye(2), np.array([1.0, 1.0]))


def test_tol_validation():
    with pytest.raises(BadParametersError):
        numerical_radius(SHIFT, tol=1e-14)

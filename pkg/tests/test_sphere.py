"""Sphere-infimum corrections: builders, optimizer soundness, dim-2 oracle."""

import numpy as np
import pytest

from radineq.errors import BadParametersError, DomainError
from radineq.generators import case_for_bound
from radineq.linalg import dagger, herm_part
from radineq.scalarfn import power
from radineq.sphere import (
    SphereFunctional,
    build_correction_functional,
    infimum_unit_sphere,
    lattice_infimum_oracle,
)


def _rand_psd(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return herm_part(g @ dagger(g)) / n


def _quad(m):
    m = np.asarray(m, dtype=complex)
    return SphereFunctional(dim=m.shape[0], kind="CUSTOM", mode="quad", quad=m)


def test_quadratic_form_infimum_is_smallest_eigenvalue():
    res = infimum_unit_sphere(_quad(np.eye(2)), restarts=4, seed=0)
    assert res.value == pytest.approx(1.0, abs=1e-9)
    res = infimum_unit_sphere(_quad(np.diag([1.0, 2.0])), restarts=4, seed=0)
    assert res.value == pytest.approx(1.0, abs=1e-9)
    rng = np.random.default_rng(0)
    for _ in range(5):
        p = _rand_psd(rng, 3)
        res = infimum_unit_sphere(_quad(p), restarts=8, seed=0)
        lam = float(np.linalg.eigvalsh(p)[0])
        assert res.value == pytest.approx(lam, abs=1e-7 * (1 + lam))


def test_result_reproducible_and_witness_consistent():
    rng = np.random.default_rng(1)
    p = _rand_psd(rng, 4)
    a = infimum_unit_sphere(_quad(p), restarts=6, seed=3)
    b = infimum_unit_sphere(_quad(p), restarts=6, seed=3)
    assert a.value == b.value
    assert np.array_equal(a.witness, b.witness)
    f = _quad(p)
    assert abs(f.evaluate(a.witness) - a.value) <= 1e-10 * (1 + abs(a.value))
    assert abs(np.linalg.norm(a.witness) - 1.0) <= 1e-12


@pytest.mark.parametrize("bound_id,kind", [
    ("TH-SCH1", "RHO"),
    ("TH-N1", "PSI_N1"),
    ("TH-N3", "ETA_N3"),
    ("TH-SCH2", "OMEGA_SCH2"),
    ("TH-SUPQAD", "SUPQ_DEFICIT"),
])
def test_built_kinds_nonnegative_gauge_invariant_sound(bound_id, kind):
    rng = np.random.default_rng(7)
    case = case_for_bound(bound_id, 3, rng)
    psi = case.functions.get("psi") or case.functions.get("f")
    fun = build_correction_functional(kind, case, psi=psi)
    res = infimum_unit_sphere(fun, restarts=8, seed=0)
    assert res.value >= -1e-12

    probes = rng.standard_normal((2000, fun.dim)) + 1j * rng.standard_normal((2000, fun.dim))
    probes /= np.linalg.norm(probes, axis=1, keepdims=True)
    vals = fun.evaluate_batch(probes)
    assert np.all(vals >= -1e-12)
    assert res.value <= float(np.min(vals)) + 1e-12

    phases = np.exp(1j * rng.uniform(0, 2 * np.pi, 50))
    base = fun.evaluate_batch(probes[:50])
    rot = fun.evaluate_batch(probes[:50] * phases[:, None])
    assert np.max(np.abs(base - rot)) <= 1e-12 * (1 + np.max(np.abs(base)))


def test_gamma_psi_nonnegative_for_convex_psi():
    rng = np.random.default_rng(8)
    x, y = _rand_psd(rng, 3), _rand_psd(rng, 3)
    fun = build_correction_functional("GAMMA_PSI", None, operands=(x, y), psi=power(2.0))
    res = infimum_unit_sphere(fun, restarts=8, seed=0)
    assert res.value >= -1e-12


def test_gamma_psi_vanishes_on_equal_operands():
    rng = np.random.default_rng(9)
    x = _rand_psd(rng, 2)
    fun = build_correction_functional("GAMMA_PSI", None, operands=(x, x.copy()), psi=power(2.0))
    res = infimum_unit_sphere(fun, restarts=4, seed=0)
    assert abs(res.value) <= 1e-12


def test_rho_vanishes_on_identity_equality_case():
    # X = B = I, A PSD, psi = phi = sqrt(t), p = q = 2 makes S = T termwise
    from radineq.cases import InequalityCase

    rng = np.random.default_rng(10)
    a = _rand_psd(rng, 3)
    eye = np.eye(3, dtype=complex)
    case = InequalityCase(
        label="equality",
        operators={"X_i": (eye.copy(),), "A_i": (a,), "B_i": (eye.copy(),)},
        params={"r": 1.0, "p": 2.0, "q": 2.0, "m": 1, "n_ops": 1},
        functions={"psi": power(0.5), "phi": power(0.5)},
    )
    fun = build_correction_functional("RHO", case)
    res = infimum_unit_sphere(fun, restarts=4, seed=0)
    assert abs(res.value) <= 1e-12


def test_supq_deficit_vanishes_on_scalar_operator():
    from radineq.cases import InequalityCase

    case = InequalityCase(
        label="scalar",
        operators={"A": 0.7 * np.eye(3, dtype=complex)},
        params={"r": 2.0},
        functions={"psi": power(2.0)},
    )
    fun = build_correction_functional("SUPQ_DEFICIT", case, psi=power(2.0))
    res = infimum_unit_sphere(fun, restarts=4, seed=0)
    assert abs(res.value) <= 1e-12


def test_conjugacy_enforced():
    rng = np.random.default_rng(11)
    case = case_for_bound("TH-SCH1", 2, rng)
    case.params["p"] = 3.0
    case.params["q"] = 1.4  # 1/3 + 1/1.4 != 1
    with pytest.raises(BadParametersError):
        build_correction_functional("RHO", case)


def test_lattice_oracle_dim2_agreement():
    rng = np.random.default_rng(12)
    for k in range(6):
        case = case_for_bound("TH-SCH1", 2, rng)
        fun = build_correction_functional("RHO", case)
        res = infimum_unit_sphere(fun, restarts=16, seed=0)
        lat = lattice_infimum_oracle(fun, resolution=200)
        assert abs(res.value - lat.value) <= 1e-4 * (1 + abs(res.value))


def test_lattice_oracle_rejects_wrong_dim():
    with pytest.raises(DomainError):
        lattice_infimum_oracle(_quad(np.eye(3)))


def test_batch_rejects_zero_vector():
    with pytest.raises(DomainError):
        _quad(np.eye(2)).evaluate(np.zeros(2))

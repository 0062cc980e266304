"""Gamma collections, spin generators, and the double cover of the Lorentz group."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinlab import clifford as cl
from spinlab import minkowski as mk

small = st.floats(-1.5, 1.5, allow_nan=False, allow_infinity=False)
param6 = st.tuples(small, small, small, small, small, small)


def test_weyl_collection_satisfies_anticommutators():
    assert cl.dirac_collection_check(cl.weyl_gammas()) < 1e-13


def test_dirac_collection_satisfies_anticommutators():
    assert cl.dirac_collection_check(cl.dirac_gammas()) < 1e-13


def test_anticommutator_check_catches_a_broken_collection():
    gammas = cl.weyl_gammas()
    gammas[3] = 1j * gammas[3]
    assert cl.dirac_collection_check(gammas) > 1.0


def test_weyl_gammas_have_chiral_block_form():
    gammas = cl.weyl_gammas()
    for g in gammas:
        np.testing.assert_allclose(g[:2, :2], 0.0, atol=1e-15)
        np.testing.assert_allclose(g[2:, 2:], 0.0, atol=1e-15)
    np.testing.assert_allclose(gammas[0][:2, 2:], np.eye(2))


def test_commutator_table_closes_exactly():
    residuals = cl.check_commutator_relations()
    for key, value in residuals.items():
        assert value == 0.0, f"{key} residual {value}"


def test_generators_match_their_chiral_blocks():
    gen_m, gen_n = cl.spin_generators()
    m2, n2 = cl.spin_generators_2x2()
    for i in range(3):
        np.testing.assert_allclose(gen_m[i][:2, :2], m2[i], atol=1e-15)
        np.testing.assert_allclose(gen_m[i][2:, 2:], m2[i], atol=1e-15)
        np.testing.assert_allclose(gen_n[i][:2, :2], n2[i], atol=1e-15)
        np.testing.assert_allclose(gen_n[i][2:, 2:], -n2[i], atol=1e-15)


def test_exp_spin_is_unimodular_and_block_diagonal():
    rng = np.random.default_rng(3)
    for _ in range(10):
        s2, s4 = cl.exp_spin(rng.normal(size=3), rng.normal(size=3))
        assert np.linalg.det(s2) == pytest.approx(1.0, abs=1e-10)
        np.testing.assert_allclose(s4[:2, :2], s2, atol=1e-12)
        np.testing.assert_allclose(
            s4[2:, 2:], np.linalg.inv(s2.conj().T), atol=1e-12
        )
        np.testing.assert_allclose(s4[:2, 2:], 0.0, atol=1e-15)


def test_covering_of_a_pure_z_boost():
    s2, _ = cl.exp_spin([0.0, 0.0, 0.0], [0.0, 0.0, 1.0])
    lam = cl.covering_lambda(s2)
    assert lam[0, 0] == pytest.approx(np.cosh(1.0), abs=1e-12)
    assert lam[0, 3] == pytest.approx(np.sinh(1.0), abs=1e-12)
    assert lam[1, 1] == pytest.approx(1.0, abs=1e-12)


def test_full_turn_flips_the_spinor_but_not_the_vector():
    s2, _ = cl.exp_spin([0.0, 0.0, 2 * np.pi], [0.0, 0.0, 0.0])
    np.testing.assert_allclose(s2, -np.eye(2), atol=1e-12)
    np.testing.assert_allclose(cl.covering_lambda(s2), np.eye(4), atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(param6, param6)
def test_covering_is_a_homomorphism(pa, pb):
    sa, _ = cl.exp_spin(pa[:3], pa[3:])
    sb, _ = cl.exp_spin(pb[:3], pb[3:])
    lhs = cl.covering_lambda(sa @ sb)
    rhs = cl.covering_lambda(sa) @ cl.covering_lambda(sb)
    np.testing.assert_allclose(lhs, rhs, atol=1e-9)


@settings(max_examples=40, deadline=None)
@given(param6)
def test_covering_has_the_two_element_kernel(params):
    s2, _ = cl.exp_spin(params[:3], params[3:])
    np.testing.assert_allclose(
        cl.covering_lambda(-s2), cl.covering_lambda(s2), atol=1e-10
    )


def test_covering_image_is_restricted_lorentz():
    rng = np.random.default_rng(5)
    for _ in range(50):
        mat = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        s2 = mat / np.sqrt(np.linalg.det(mat))
        assert mk.is_restricted_lorentz(cl.covering_lambda(s2))


def test_covering_rejects_non_unimodular_input():
    with pytest.raises(cl.NotUnimodular):
        cl.covering_lambda(2.0 * np.eye(2))


def test_intertwiner_conjugates_weyl_into_dirac():
    gw = cl.weyl_gammas()
    gd = cl.dirac_gammas()
    s = cl.pauli_intertwiner(gw, gd)
    s_inv = np.linalg.inv(s)
    for g, t in zip(gw, gd):
        np.testing.assert_allclose(s @ g @ s_inv, t, atol=1e-11)


def test_intertwiner_recovers_a_planted_conjugation_up_to_scalar():
    rng = np.random.default_rng(11)
    gammas = cl.weyl_gammas()
    for trial in range(5):
        while True:
            planted = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            if np.linalg.cond(planted) < 50.0:
                break
        target = np.array([planted @ g @ np.linalg.inv(planted) for g in gammas])
        found = cl.pauli_intertwiner(gammas, target, seed=trial)
        ratio = np.linalg.inv(planted) @ found
        scalar = np.trace(ratio) / 4.0
        np.testing.assert_allclose(ratio, scalar * np.eye(4), atol=1e-10 * abs(scalar))


def test_intertwiner_rejects_non_conjugate_collections():
    gammas = cl.weyl_gammas()
    junk = np.zeros_like(gammas)
    with pytest.raises(ValueError):
        cl.pauli_intertwiner(gammas, junk)


def test_clifford_basis_has_sixteen_monomials():
    basis = cl.clifford_basis_monomials(cl.weyl_gammas())
    assert basis.shape == (16, 4, 4)
    flat = basis.reshape(16, 16)
    assert np.linalg.matrix_rank(flat) == 16

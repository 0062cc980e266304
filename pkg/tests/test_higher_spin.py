"""Twisted fibers: packing, symbols, pairings, and Gram signatures."""

import numpy as np
import pytest

from spinlab import higher_spin as hs
from spinlab import minkowski as mk
from spinlab.clifford import weyl_gammas

E0_COV = mk.basis_vector(0, covariant=True)


def random_fiber(rng, k, l):
    dim = hs.fiber_dim(k, l)
    return hs.unpack(rng.normal(size=dim) + 1j * rng.normal(size=dim), k, l)


def test_fiber_dimension_formula():
    assert hs.fiber_dim(0, 0) == 4
    assert hs.fiber_dim(1, 1) == 16
    assert hs.fiber_dim(2, 2) == 36
    assert hs.fiber_dim(2, 0) == 12


def test_pack_unpack_roundtrip():
    rng = np.random.default_rng(0)
    for k in range(3):
        for l in range(3):
            vec = rng.normal(size=hs.fiber_dim(k, l)) + 1j * rng.normal(
                size=hs.fiber_dim(k, l)
            )
            np.testing.assert_allclose(hs.pack(hs.unpack(vec, k, l)), vec, atol=1e-13)


def test_unpack_validates_length():
    with pytest.raises(ValueError):
        hs.unpack(np.zeros(5), 0, 0)


def test_fiber_vectors_enforce_twist_symmetry():
    from spinlab import spinor_core as sc

    data = np.zeros((2, 2, 2), dtype=complex)
    data[0, 0, 1] = 1.0  # antisymmetric part in the two twist axes
    data[0, 1, 0] = -1.0
    phi1 = sc.Spinor(data, (sc.UNDOTTED_UP,) * 3)
    phi2 = sc.Spinor(np.zeros((2, 2, 2), dtype=complex), (sc.DOTTED_LOW, sc.UNDOTTED_UP, sc.UNDOTTED_UP))
    with pytest.raises(ValueError):
        hs.HigherSpinVector(2, 0, phi1, phi2)


def test_untwisted_symbol_matches_the_gamma_action():
    e3_cov = mk.basis_vector(3, covariant=True)
    gammas = weyl_gammas()
    np.testing.assert_allclose(hs.symbol_matrix(0, 0, E0_COV), gammas[0], atol=1e-13)
    np.testing.assert_allclose(hs.symbol_matrix(0, 0, e3_cov), -gammas[3], atol=1e-13)


def test_apply_symbol_requires_covariant_direction():
    rng = np.random.default_rng(1)
    phi = random_fiber(rng, 0, 0)
    with pytest.raises(ValueError):
        hs.apply_symbol(mk.basis_vector(0), phi)


def test_symbol_squares_to_the_metric():
    rng = np.random.default_rng(2)
    for k in range(3):
        for l in range(3):
            for _ in range(5):
                xi = mk.LorentzVector(rng.normal(size=4), covariant=True)
                assert hs.check_prenormal_factorization(xi, 0.7, k, l) < 1e-12


def test_symbol_matrix_is_linear_in_the_direction():
    rng = np.random.default_rng(3)
    a = mk.LorentzVector(rng.normal(size=4), covariant=True)
    b = mk.LorentzVector(rng.normal(size=4), covariant=True)
    lhs = hs.symbol_matrix(1, 1, a + b)
    rhs = hs.symbol_matrix(1, 1, a) + hs.symbol_matrix(1, 1, b)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_dirac_pairing_reduces_to_the_generalized_one():
    rng = np.random.default_rng(4)
    for _ in range(10):
        a = hs.DiracSpinor(
            rng.normal(size=2) + 1j * rng.normal(size=2),
            rng.normal(size=2) + 1j * rng.normal(size=2),
        )
        b = hs.DiracSpinor(
            rng.normal(size=2) + 1j * rng.normal(size=2),
            rng.normal(size=2) + 1j * rng.normal(size=2),
        )
        assert hs.dirac_adjoint(a)(b) == pytest.approx(
            hs.gen_pairing(a.as_higher(), b.as_higher()), abs=1e-13
        )


def test_gen_pairing_is_hermitian_and_sesquilinear():
    rng = np.random.default_rng(5)
    for k in range(3):
        a = random_fiber(rng, k, k)
        b = random_fiber(rng, k, k)
        lhs = hs.gen_pairing(a, b)
        assert np.conj(lhs) == pytest.approx(hs.gen_pairing(b, a), abs=1e-12)
        scaled = hs.gen_pairing(2j * a, b)
        assert scaled == pytest.approx(-2j * lhs, abs=1e-12)


def test_gen_pairing_needs_matching_ranks():
    rng = np.random.default_rng(6)
    a = random_fiber(rng, 1, 0)
    b = random_fiber(rng, 1, 0)
    with pytest.raises(hs.KNotEqualL):
        hs.gen_pairing(a, b)
    with pytest.raises(hs.KNotEqualL):
        hs.gen_dirac_adjoint(a)


def test_symbol_is_self_adjoint_for_the_pairing():
    rng = np.random.default_rng(7)
    for k in range(3):
        a = random_fiber(rng, k, k)
        b = random_fiber(rng, k, k)
        xi = mk.LorentzVector(rng.normal(size=4), covariant=True)
        lhs = hs.gen_pairing(a, hs.apply_symbol(xi, b))
        rhs = hs.gen_pairing(hs.apply_symbol(xi, a), b)
        assert lhs == pytest.approx(rhs, abs=1e-11)


def test_xi_form_positive_example():
    phi = hs.DiracSpinor([1.0, 0.0], [1.0, 0.0]).as_higher()
    assert hs.xi_form(phi, phi, E0_COV) == pytest.approx(2.0)


def test_gram_signatures_at_the_time_direction():
    assert hs.gram_signature(0) == (4, 0, 0)
    assert hs.gram_signature(1) == (12, 4, 0)
    assert hs.gram_signature(2) == (24, 12, 0)


def test_gram_signature_constant_on_timelike_future_directions():
    rng = np.random.default_rng(8)
    for _ in range(10):
        space = rng.normal(size=3)
        t = np.linalg.norm(space) + 0.3 + rng.uniform(0, 1)
        xi = mk.LorentzVector(np.array([t, *space]), covariant=True)
        assert hs.gram_signature(0, xi) == (4, 0, 0)
        assert hs.gram_signature(1, xi) == (12, 4, 0)


def test_gram_signature_rejects_non_future_directions():
    with pytest.raises(hs.NotTimelikeFuture):
        hs.gram_signature(0, mk.basis_vector(1, covariant=True))
    with pytest.raises(hs.NotTimelikeFuture):
        hs.gram_signature(0, -1.0 * E0_COV)


def test_gram_signature_flips_at_the_past_direction():
    assert hs.gram_signature(0, -1.0 * E0_COV, require_future=False) == (0, 4, 0)


def test_witness_pair_certifies_both_signs_at_rank_two():
    (plus, q_plus), (minus, q_minus) = hs.witness_pair(2)
    assert q_plus > 0.1
    assert q_minus < -0.1
    assert hs.xi_form(plus, plus, E0_COV).real == pytest.approx(q_plus)
    assert hs.xi_form(minus, minus, E0_COV).real == pytest.approx(q_minus)


def test_witness_pair_refuses_the_definite_rank():
    with pytest.raises(hs.NoNegativeDirection):
        hs.witness_pair(0)


def test_twisted_positivity_accepts_positive_forms():
    rng = np.random.default_rng(9)
    for dim in range(1, 6):
        basis = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        form = basis.conj().T @ basis + 0.1 * np.eye(dim)
        assert hs.twisted_positivity_check(form)


def test_twisted_positivity_rejects_one_flipped_eigenvalue():
    rng = np.random.default_rng(10)
    for dim in range(1, 6):
        basis = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        form = basis.conj().T @ basis + 0.1 * np.eye(dim)
        eig, vec = np.linalg.eigh(form)
        eig[0] = -eig[0]
        flipped = vec @ np.diag(eig) @ vec.conj().T
        assert not hs.twisted_positivity_check(flipped)


def test_twisted_positivity_validates_input():
    assert hs.twisted_positivity_check(np.zeros((0, 0)))
    with pytest.raises(ValueError):
        hs.twisted_positivity_check(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        hs.twisted_positivity_check(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_pairing_matrix_represents_gen_pairing():
    rng = np.random.default_rng(11)
    k = 1
    dim = hs.fiber_dim(k, k)
    p = hs.pairing_matrix(k)
    for _ in range(5):
        a = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        b = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        packed = complex(a.conj() @ p @ b)
        semantic = hs.gen_pairing(hs.unpack(a, k, k), hs.unpack(b, k, k))
        assert packed == pytest.approx(semantic, abs=1e-12)


def test_gram_matrix_is_hermitian():
    gram = hs.gram_matrix(2, E0_COV)
    np.testing.assert_allclose(gram, gram.conj().T, atol=1e-13)

"""Metric bookkeeping, causal classification, and Lorentz-matrix predicates."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinlab import minkowski as mk

finite = st.floats(-5.0, 5.0, allow_nan=False, allow_infinity=False)
four_floats = st.tuples(finite, finite, finite, finite)


def test_metric_diagonal_on_basis():
    for a in range(4):
        for b in range(4):
            val = mk.metric_eval(mk.basis_vector(a), mk.basis_vector(b))
            expect = mk.ETA_DIAG[a] if a == b else 0.0
            assert val == pytest.approx(expect)


def test_variance_flags_on_basis_vectors():
    cov = mk.basis_vector(2, covariant=True)
    assert cov.covariant
    assert cov.raised().components[2] == -1.0
    assert not cov.raised().covariant


@given(four_floats)
def test_raise_lower_roundtrip(comps):
    x = mk.LorentzVector(np.array(comps))
    back = x.lowered().raised()
    np.testing.assert_allclose(back.components, x.components)
    assert not back.covariant


@given(four_floats, four_floats)
def test_metric_is_symmetric_and_variance_blind(a, b):
    x = mk.LorentzVector(np.array(a))
    y = mk.LorentzVector(np.array(b))
    same = mk.metric_eval(x, y)
    assert mk.metric_eval(y, x) == pytest.approx(same)
    mixed = mk.metric_eval(x.lowered(), y)
    assert mixed == pytest.approx(same, abs=1e-10)


def test_classify_causal_canonical_examples():
    e0 = mk.basis_vector(0)
    assert mk.classify_causal(e0) == ("timelike", "future")
    assert mk.classify_causal(-1.0 * e0) == ("timelike", "past")
    null = mk.LorentzVector(np.array([1.0, 0.0, 0.0, 1.0]))
    assert mk.classify_causal(null) == ("null", "future")
    assert mk.classify_causal(mk.basis_vector(1)) == ("spacelike", "none")
    zero = mk.LorentzVector(np.zeros(4))
    assert mk.classify_causal(zero) == ("null", "none")


def test_classify_causal_rejects_complex_components():
    with pytest.raises(ValueError):
        mk.classify_causal(mk.LorentzVector(np.array([1.0, 1j, 0.0, 0.0])))


@given(four_floats)
def test_classification_flips_orientation_under_negation(comps):
    x = mk.LorentzVector(np.array(comps))
    cls, orient = mk.classify_causal(x)
    cls_neg, orient_neg = mk.classify_causal(-1.0 * x)
    assert cls_neg == cls
    flip = {"future": "past", "past": "future", "none": "none"}
    assert orient_neg == flip[orient]


def _z_boost(rapidity: float) -> np.ndarray:
    lam = np.eye(4)
    lam[0, 0] = lam[3, 3] = np.cosh(rapidity)
    lam[0, 3] = lam[3, 0] = np.sinh(rapidity)
    return lam


def test_classification_is_boost_invariant():
    lam = _z_boost(1.3)
    for comps, expect in [
        ([2.0, 0.3, -0.1, 0.5], ("timelike", "future")),
        ([-2.0, 0.3, -0.1, 0.5], ("timelike", "past")),
        ([0.1, 1.0, 2.0, -0.5], ("spacelike", "none")),
    ]:
        x = mk.LorentzVector(np.array(comps))
        boosted = mk.LorentzVector(lam @ x.components)
        assert mk.classify_causal(boosted) == expect


def test_restricted_lorentz_accepts_boosts_and_rotations():
    assert mk.is_restricted_lorentz(np.eye(4))
    assert mk.is_restricted_lorentz(_z_boost(0.7))
    rot = np.eye(4)
    c, s = np.cos(0.4), np.sin(0.4)
    rot[1, 1] = rot[2, 2] = c
    rot[1, 2], rot[2, 1] = -s, s
    assert mk.is_restricted_lorentz(rot)


def test_restricted_lorentz_rejects_other_components_and_junk():
    parity = np.diag([1.0, -1.0, -1.0, -1.0])
    assert not mk.is_restricted_lorentz(parity)
    time_reversal = np.diag([-1.0, 1.0, 1.0, 1.0])
    assert not mk.is_restricted_lorentz(time_reversal)
    assert not mk.is_restricted_lorentz(-np.eye(4))
    assert not mk.is_restricted_lorentz(2.0 * np.eye(4))
    assert not mk.is_restricted_lorentz(np.eye(4) + 1e-3)
    assert not mk.is_restricted_lorentz(np.eye(3))
    assert not mk.is_restricted_lorentz(np.eye(4) * (1 + 1j))


def test_vector_arithmetic_respects_variance():
    x = mk.basis_vector(0)
    y = mk.basis_vector(1)
    both = x + y
    np.testing.assert_allclose(both.components, [1, 1, 0, 0])
    with pytest.raises(ValueError):
        x + y.lowered()
    with pytest.raises(ValueError):
        x - y.lowered()


def test_lorentz_vector_shape_is_validated():
    with pytest.raises(ValueError):
        mk.LorentzVector(np.zeros(3))

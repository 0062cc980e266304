"""Minkowski vectors, the metric, and causal classification.

Conventions: signature (+, -, -, -), index 0 is time, spatial indices 1..3.
Components are stored as plain length-4 complex arrays; most physics entry
points require real components and say so.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ETA_DIAG = np.array([1.0, -1.0, -1.0, -1.0])
ETA = np.diag(ETA_DIAG)

#: 4x4 real ndarray acting on component columns; validated by
#: :func:`is_restricted_lorentz` rather than wrapped in a class.
LorentzMatrix = np.ndarray

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class LorentzVector:
    """A 4-vector with an explicit variance flag.

    ``covariant=False`` means the components are x^a (contravariant);
    ``covariant=True`` means x_a. Raising and lowering multiply the spatial
    components by -1, since the metric is diag(1, -1, -1, -1).
    """

    components: np.ndarray
    covariant: bool = False

    def __post_init__(self) -> None:
        comp = np.asarray(self.components, dtype=complex)
        if comp.shape != (4,):
            raise ValueError(f"expected 4 components, got shape {comp.shape}")
        object.__setattr__(self, "components", comp)

    @property
    def is_real(self) -> bool:
        return bool(np.max(np.abs(self.components.imag)) < 1e-13)

    def raised(self) -> "LorentzVector":
        """Contravariant version of this vector."""
        if not self.covariant:
            return self
        return LorentzVector(ETA_DIAG * self.components, covariant=False)

    def lowered(self) -> "LorentzVector":
        """Covariant version of this vector."""
        if self.covariant:
            return self
        return LorentzVector(ETA_DIAG * self.components, covariant=True)

    def __add__(self, other: "LorentzVector") -> "LorentzVector":
        if self.covariant != other.covariant:
            raise ValueError("cannot add vectors of different variance")
        return LorentzVector(self.components + other.components, self.covariant)

    def __sub__(self, other: "LorentzVector") -> "LorentzVector":
        if self.covariant != other.covariant:
            raise ValueError("cannot subtract vectors of different variance")
        return LorentzVector(self.components - other.components, self.covariant)

    def __mul__(self, scalar: complex) -> "LorentzVector":
        return LorentzVector(self.components * scalar, self.covariant)

    __rmul__ = __mul__

    def __neg__(self) -> "LorentzVector":
        return LorentzVector(-self.components, self.covariant)


def basis_vector(a: int, covariant: bool = False) -> LorentzVector:
    """Standard basis vector e_a (a in 0..3)."""
    comp = np.zeros(4, dtype=complex)
    comp[a] = 1.0
    return LorentzVector(comp, covariant=covariant)


def metric_eval(x: LorentzVector, y: LorentzVector) -> complex:
    """Metric pairing of two vectors, respecting their variance flags.

    Same variance on both sides inserts the (inverse) metric, which has the
    same diagonal in this signature; mixed variance is a direct contraction.
    """
    if x.covariant != y.covariant:
        return complex(np.dot(x.components, y.components))
    return complex(np.dot(x.components, ETA_DIAG * y.components))


def _require_real(x: LorentzVector, what: str) -> np.ndarray:
    if np.max(np.abs(x.components.imag)) > 1e-12:
        raise ValueError(f"{what} requires real components")
    return x.components.real


def classify_causal(x: LorentzVector, tol: float = DEFAULT_TOL) -> tuple[str, str]:
    """Causal class and time orientation of a real vector.

    Returns (cls, orientation) with cls in {"timelike", "null", "spacelike"}
    and orientation in {"future", "past", "none"}. Vectors with
    |eta(x, x)| <= tol are reported null; for causal vectors the orientation
    follows the sign of the contravariant time component against the
    orientation vector e_0, with "none" inside the same tolerance. Spacelike
    vectors have no invariant time orientation and always report "none";
    the zero vector is ("null", "none").
    """
    _require_real(x, "classify_causal")
    up = x.raised()
    q = metric_eval(x, x).real
    if abs(q) <= tol:
        cls = "null"
    elif q > 0:
        cls = "timelike"
    else:
        cls = "spacelike"
    t = up.components[0].real
    if cls == "spacelike" or abs(t) <= tol:
        orientation = "none"
    elif t > tol:
        orientation = "future"
    else:
        orientation = "past"
    return cls, orientation


def is_restricted_lorentz(lam: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True when lam preserves the metric, has det > 0, and lam[0,0] >= 1-tol.

    The two positivity conditions select the identity component (proper and
    orthochronous) among metric-preserving matrices.
    """
    lam = np.asarray(lam)
    if lam.shape != (4, 4):
        return False
    if np.iscomplexobj(lam):
        if np.max(np.abs(lam.imag)) > tol:
            return False
        lam = lam.real
    if np.max(np.abs(lam.T @ ETA @ lam - ETA)) > tol:
        return False
    if np.linalg.det(lam) <= 0:
        return False
    return bool(lam[0, 0] >= 1.0 - tol)

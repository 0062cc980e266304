"""Twisted Dirac fibers: symbols, adjoints, and signature diagnostics.

A fiber element of type (k, l) has two sectors

    phi1: one undotted-upper chiral axis, then k undotted-upper and
          l dotted-lower twist axes (symmetric within each group)
    phi2: one dotted-lower chiral axis, then the same twist axes

The principal symbol acts on the chiral axes only and swaps the sectors;
contracting with sqrt(2) sigma = Pauli matrices makes its square exactly
eta(xi, xi) times the identity. The generalized pairing conjugates the
first argument, which swaps the roles of the two twist groups; for k = l
that closes up into a sesquilinear form which is Hermitian but indefinite
once k >= 2 (and already for k = 1).

Packed coordinates: symmetric tensors are stored by occupation count, in
the order sector (phi1, phi2) x chiral (0, 1) x undotted occupation x
dotted occupation, all ascending. The basis vector of one packed slot is
the indicator of the whole permutation orbit, so packing reads the sorted
representative and unpacking is its right inverse on symmetric tensors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford import PAULI
from .minkowski import LorentzVector, basis_vector, classify_causal, metric_eval
from .spinor_core import (
    DOTTED_LOW,
    DOTTED_UP,
    UNDOTTED_UP,
    Spinor,
    raise_lower,
    symmetrize,
)


class KNotEqualL(ValueError):
    """Raised when an operation needs matching twist ranks k = l."""


class NotTimelikeFuture(ValueError):
    """Raised when a direction vector is not timelike future-pointing."""


class NoNegativeDirection(RuntimeError):
    """Raised when a negative Gram direction is requested but absent."""


@dataclass(frozen=True)
class DiracSpinor:
    """Plain 4-component spinor split into its two chiral halves."""

    psi1: np.ndarray
    psi2: np.ndarray

    def __post_init__(self) -> None:
        p1 = np.asarray(self.psi1, dtype=complex)
        p2 = np.asarray(self.psi2, dtype=complex)
        if p1.shape != (2,) or p2.shape != (2,):
            raise ValueError("each chiral half must have exactly 2 components")
        object.__setattr__(self, "psi1", p1)
        object.__setattr__(self, "psi2", p2)

    def as_higher(self) -> "HigherSpinVector":
        return HigherSpinVector(
            0,
            0,
            Spinor(self.psi1, (UNDOTTED_UP,)),
            Spinor(self.psi2, (DOTTED_LOW,)),
        )


def _phi1_tags(k: int, l: int) -> tuple[str, ...]:
    return (UNDOTTED_UP,) + (UNDOTTED_UP,) * k + (DOTTED_LOW,) * l


def _phi2_tags(k: int, l: int) -> tuple[str, ...]:
    return (DOTTED_LOW,) + (UNDOTTED_UP,) * k + (DOTTED_LOW,) * l


def _symmetry_residual(block: Spinor, k: int, l: int) -> float:
    res = 0.0
    if k >= 2:
        sym = symmetrize(block, tuple(range(1, k + 1)))
        res = max(res, float(np.max(np.abs(sym.data - block.data))))
    if l >= 2:
        sym = symmetrize(block, tuple(range(k + 1, k + 1 + l)))
        res = max(res, float(np.max(np.abs(sym.data - block.data))))
    return res


@dataclass(frozen=True)
class HigherSpinVector:
    """One fiber element of twist type (k, l)."""

    k: int
    l: int
    phi1: Spinor
    phi2: Spinor

    def __post_init__(self) -> None:
        k, l = self.k, self.l
        if k < 0 or l < 0:
            raise ValueError("twist ranks must be nonnegative")
        if self.phi1.tags != _phi1_tags(k, l):
            raise ValueError(f"phi1 tags {self.phi1.tags} do not match type ({k},{l})")
        if self.phi2.tags != _phi2_tags(k, l):
            raise ValueError(f"phi2 tags {self.phi2.tags} do not match type ({k},{l})")
        scale = max(
            float(np.max(np.abs(self.phi1.data))),
            float(np.max(np.abs(self.phi2.data))),
            1e-30,
        )
        worst = max(
            _symmetry_residual(self.phi1, k, l),
            _symmetry_residual(self.phi2, k, l),
        )
        if worst > 1e-10 * scale:
            raise ValueError(f"twist axes are not symmetric (residual {worst:.3e})")

    def __add__(self, other: "HigherSpinVector") -> "HigherSpinVector":
        if (self.k, self.l) != (other.k, other.l):
            raise ValueError("twist type mismatch")
        return HigherSpinVector(
            self.k,
            self.l,
            Spinor(self.phi1.data + other.phi1.data, self.phi1.tags),
            Spinor(self.phi2.data + other.phi2.data, self.phi2.tags),
        )

    def __mul__(self, scalar: complex) -> "HigherSpinVector":
        return HigherSpinVector(
            self.k,
            self.l,
            Spinor(self.phi1.data * scalar, self.phi1.tags),
            Spinor(self.phi2.data * scalar, self.phi2.tags),
        )

    __rmul__ = __mul__


def fiber_dim(k: int, l: int) -> int:
    """Packed dimension: 2 sectors x 2 chiral x (k+1)(l+1) twist slots."""
    return 4 * (k + 1) * (l + 1)


def _weight_mask(n_axes: int, ones: int) -> np.ndarray:
    """Indicator of all positions with the given number of 1 indices."""
    if n_axes == 0:
        return np.array(1.0)
    weights = np.indices((2,) * n_axes).sum(axis=0)
    return (weights == ones).astype(float)


def _rep_index(n_axes: int, ones: int) -> tuple[int, ...]:
    return (0,) * (n_axes - ones) + (1,) * ones


def pack(phi: HigherSpinVector) -> np.ndarray:
    """Packed coordinates of a fiber element (reads sorted representatives)."""
    k, l = phi.k, phi.l
    out = np.empty(fiber_dim(k, l), dtype=complex)
    pos = 0
    for block in (phi.phi1, phi.phi2):
        for c in range(2):
            for tu in range(k + 1):
                for td in range(l + 1):
                    idx = (c,) + _rep_index(k, tu) + _rep_index(l, td)
                    out[pos] = block.data[idx]
                    pos += 1
    return out


def unpack(vec: np.ndarray, k: int, l: int) -> HigherSpinVector:
    """Right inverse of :func:`pack`: orbit indicators at each packed slot."""
    vec = np.asarray(vec, dtype=complex)
    if vec.shape != (fiber_dim(k, l),):
        raise ValueError(f"expected {fiber_dim(k, l)} coordinates, got {vec.shape}")
    blocks = []
    pos = 0
    for _ in range(2):
        data = np.zeros((2,) + (2,) * (k + l), dtype=complex)
        for c in range(2):
            for tu in range(k + 1):
                mask_u = _weight_mask(k, tu)
                for td in range(l + 1):
                    orbit = np.tensordot(mask_u, _weight_mask(l, td), axes=0)
                    data[c] = data[c] + vec[pos] * orbit
                    pos += 1
        blocks.append(data)
    return HigherSpinVector(
        k,
        l,
        Spinor(blocks[0], _phi1_tags(k, l)),
        Spinor(blocks[1], _phi2_tags(k, l)),
    )


def apply_symbol(xi: LorentzVector, phi: HigherSpinVector) -> HigherSpinVector:
    """Principal symbol action s(xi) on a fiber element.

    Requires covariant xi. The new phi1 is sqrt(2) xi^{A X} (phi2)_X, the
    new phi2 is sqrt(2) xi_{X A} (phi1)^A, with both epsilon lowerings done
    by the tensor engine; twist axes are untouched. The square of this
    action is eta(xi, xi) times the identity.
    """
    if not xi.covariant:
        raise ValueError("apply_symbol expects a covariant direction; use .lowered()")
    up = xi.raised().components
    xi_up = Spinor(np.einsum("a,aij->ij", up, PAULI), (UNDOTTED_UP, DOTTED_UP))
    xi_dn = raise_lower(raise_lower(xi_up, 0), 1)

    # phi1' ^A = xi_up[A, X] (phi2)_X ; contraction over the chiral axes only
    new1 = np.tensordot(xi_up.data, phi.phi2.data, axes=([1], [0]))
    # phi2' _X = xi_dn[A, X] (phi1)^A
    new2 = np.tensordot(xi_dn.data, phi.phi1.data, axes=([0], [0]))
    return HigherSpinVector(
        phi.k,
        phi.l,
        Spinor(new1, phi.phi1.tags),
        Spinor(new2, phi.phi2.tags),
    )


_SYMBOL_CACHE: dict = {}
_PAIRING_CACHE: dict = {}


def symbol_matrix(k: int, l: int, xi: LorentzVector) -> np.ndarray:
    """Packed matrix of s(xi), built column by column through apply_symbol."""
    key = (k, l, bytes(np.asarray(xi.lowered().components)))
    cached = _SYMBOL_CACHE.get(key)
    if cached is not None:
        return cached
    dim = fiber_dim(k, l)
    mat = np.empty((dim, dim), dtype=complex)
    xi_low = xi.lowered()
    for j in range(dim):
        unit = np.zeros(dim, dtype=complex)
        unit[j] = 1.0
        mat[:, j] = pack(apply_symbol(xi_low, unpack(unit, k, l)))
    if len(_SYMBOL_CACHE) < 64:
        _SYMBOL_CACHE[key] = mat
    return mat


def dirac_adjoint(psi: DiracSpinor):
    """Dual functional phi -> conj(psi2) . phi1 + conj(psi1) . phi2."""

    def functional(phi: DiracSpinor) -> complex:
        return complex(
            np.dot(np.conj(psi.psi2), phi.psi1) + np.dot(np.conj(psi.psi1), phi.psi2)
        )

    return functional


def _pairing_axes(k: int) -> tuple[list[int], list[int]]:
    # first argument (conjugated): chiral, then its dotted-up group (the
    # conjugated undotted twist), then its undotted-low group; the partner
    # pairs those against chiral, its dotted-low group, its undotted-up group
    axes_a = list(range(2 * k + 1))
    axes_b = [0] + list(range(k + 1, 2 * k + 1)) + list(range(1, k + 1))
    return axes_a, axes_b


def gen_pairing(phi: HigherSpinVector, psi: HigherSpinVector) -> complex:
    """Generalized Dirac pairing <phi, psi>, antilinear in the first slot.

    Conjugation swaps the twist groups, so the conjugated undotted group of
    ``phi`` (now dotted-upper) contracts against the dotted-lower group of
    ``psi`` and vice versa. Only defined for k = l; reduces at k = 0 to the
    usual pairing through gamma0. Hermitian: conj of the result is the
    pairing with the arguments exchanged.
    """
    if phi.k != phi.l or psi.k != psi.l or phi.k != psi.k:
        raise KNotEqualL("generalized pairing needs matching twist ranks k = l")
    k = phi.k
    axes_a, axes_b = _pairing_axes(k)
    term1 = np.tensordot(np.conj(phi.phi2.data), psi.phi1.data, axes=(axes_a, axes_b))
    term2 = np.tensordot(np.conj(phi.phi1.data), psi.phi2.data, axes=(axes_a, axes_b))
    return complex(term1 + term2)


def gen_dirac_adjoint(phi: HigherSpinVector):
    """Dual functional psi -> <phi, psi> of the generalized pairing."""
    if phi.k != phi.l:
        raise KNotEqualL("generalized adjoint needs k = l")

    def functional(psi: HigherSpinVector) -> complex:
        return gen_pairing(phi, psi)

    return functional


def pairing_matrix(k: int) -> np.ndarray:
    """Gram matrix P of the generalized pairing in the packed basis."""
    cached = _PAIRING_CACHE.get(k)
    if cached is not None:
        return cached
    dim = fiber_dim(k, k)
    basis = []
    for j in range(dim):
        unit = np.zeros(dim, dtype=complex)
        unit[j] = 1.0
        basis.append(unpack(unit, k, k))
    mat = np.empty((dim, dim), dtype=complex)
    for i in range(dim):
        for j in range(dim):
            mat[i, j] = gen_pairing(basis[i], basis[j])
    _PAIRING_CACHE[k] = mat
    return mat


def xi_form(phi: HigherSpinVector, psi: HigherSpinVector, xi: LorentzVector) -> complex:
    """The direction-dependent form (phi, psi)_xi = <phi, s(xi) psi>."""
    return gen_pairing(phi, apply_symbol(xi.lowered(), psi))


def check_prenormal_factorization(
    xi: LorentzVector, mass: float, k: int, l: int
) -> float:
    """Max residual of (s(xi) + m)(s(xi) - m) = (eta(xi,xi) - m^2) Id.

    The cross terms cancel identically, so this is the Clifford-square
    identity shifted by the mass; the mass parameter is kept to make the
    factorized form explicit.
    """
    xi_low = xi.lowered()
    gam = symbol_matrix(k, l, xi_low)
    dim = fiber_dim(k, l)
    eye = np.eye(dim)
    q = metric_eval(xi_low, xi_low)
    lhs = (gam + mass * eye) @ (gam - mass * eye)
    return float(np.max(np.abs(lhs - (q - mass**2) * eye)))


def _require_timelike_future(xi: LorentzVector) -> LorentzVector:
    xi_low = xi.lowered()
    cls, orient = classify_causal(xi_low)
    if cls != "timelike" or orient != "future":
        raise NotTimelikeFuture(f"direction is ({cls}, {orient}), need timelike future")
    return xi_low


def gram_matrix(k: int, xi: LorentzVector) -> np.ndarray:
    """Hermitian matrix of (., .)_xi on the packed basis of type (k, k)."""
    mat = pairing_matrix(k) @ symbol_matrix(k, k, xi.lowered())
    herm_gap = float(np.max(np.abs(mat - mat.conj().T)))
    scale = max(float(np.max(np.abs(mat))), 1e-30)
    assert herm_gap <= 1e-10 * scale, f"xi-form Gram not Hermitian (gap {herm_gap:.3e})"
    return 0.5 * (mat + mat.conj().T)


def gram_signature(
    k: int,
    xi: LorentzVector | None = None,
    require_future: bool = True,
    tol_factor: float = 1e-10,
) -> tuple[int, int, int]:
    """Signature (n_plus, n_minus, n_zero) of the xi-form on type (k, k).

    ``xi`` defaults to the covariant time direction. The public contract
    wants timelike future-pointing xi; ``require_future=False`` lets tests
    evaluate past-pointing directions deliberately. Eigenvalues within
    tol_factor times the spectral radius count as zero.
    """
    if xi is None:
        xi = basis_vector(0, covariant=True)
    if require_future:
        xi = _require_timelike_future(xi)
    eig = np.linalg.eigvalsh(gram_matrix(k, xi))
    tol = tol_factor * max(float(np.max(np.abs(eig))), 1e-30)
    n_plus = int(np.sum(eig > tol))
    n_minus = int(np.sum(eig < -tol))
    return n_plus, n_minus, len(eig) - n_plus - n_minus


def witness_pair(
    k: int, xi: LorentzVector | None = None
) -> tuple[tuple[HigherSpinVector, float], tuple[HigherSpinVector, float]]:
    """Unit fiber elements with certified positive and negative xi-form.

    The candidates are extreme eigenvectors of the Gram matrix; each value
    is re-evaluated through the tensor-level xi_form, so the certificate
    does not depend on the packed route. Raises NoNegativeDirection when
    the form has no negative direction (as for k = 0 or 1-sided cases).
    """
    if xi is None:
        xi = basis_vector(0, covariant=True)
    xi = _require_timelike_future(xi)
    gram = gram_matrix(k, xi)
    eig, vec = np.linalg.eigh(gram)
    tol = 1e-10 * max(float(np.max(np.abs(eig))), 1e-30)
    if eig[-1] <= tol:
        raise NoNegativeDirection("form has no positive direction either; degenerate")
    plus = unpack(vec[:, -1], k, k)
    q_plus = xi_form(plus, plus, xi).real
    assert q_plus > 0, "positive witness failed certification"
    if eig[0] >= -tol:
        raise NoNegativeDirection(f"smallest eigenvalue {eig[0]:.3e} is not negative")
    minus = unpack(vec[:, 0], k, k)
    q_minus = xi_form(minus, minus, xi).real
    assert q_minus < 0, "negative witness failed certification"
    return (plus, q_plus), (minus, q_minus)


def twisted_positivity_check(form: np.ndarray, tol_factor: float = 1e-12) -> bool:
    """Whether the Dirac form tensor a twist-factor form is positive definite.

    ``form`` is the Hermitian Gram matrix of the twist factor; the Dirac
    factor is the time-direction form at k = 0 (computed, not assumed).
    Positivity of the product form holds exactly when ``form`` itself is
    positive definite.
    """
    form = np.asarray(form, dtype=complex)
    if form.ndim != 2 or form.shape[0] != form.shape[1]:
        raise ValueError("form must be a square matrix")
    if form.shape[0] == 0:
        return True
    gap = float(np.max(np.abs(form - form.conj().T)))
    scale = max(float(np.max(np.abs(form))), 1e-30)
    if gap > 1e-10 * scale:
        raise ValueError("form must be Hermitian")
    dirac_gram = gram_matrix(0, basis_vector(0, covariant=True))
    total = np.kron(dirac_gram, 0.5 * (form + form.conj().T))
    eig = np.linalg.eigvalsh(total)
    tol = tol_factor * max(float(np.max(np.abs(eig))), 1e-30)
    return bool(eig[0] > tol)


@dataclass(frozen=True)
class PrincipalSymbol:
    """The symbol s(xi) on fibers of type (k, l), with its packed matrix."""

    k: int
    l: int
    xi: LorentzVector

    def __post_init__(self) -> None:
        object.__setattr__(self, "xi", self.xi.lowered())

    @property
    def matrix(self) -> np.ndarray:
        return symbol_matrix(self.k, self.l, self.xi)

    def __call__(self, phi: HigherSpinVector) -> HigherSpinVector:
        return apply_symbol(self.xi, phi)

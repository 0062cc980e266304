"""Numerical two-spinor calculus and a 1+1D hyperbolic verification bench.

The package implements the flat-spacetime calculus of SL(2,C) spinors
(epsilon index gymnastics, the soldering map, Clifford algebra in chiral
block form, the covering map to the restricted Lorentz group), the
generalized Dirac operators on symmetric-power twisted spinor bundles with
their fiber pairings and direction-dependent Gram forms, and a leapfrog
Cauchy evolver plus retarded Green operator used to verify conservation,
causality, and the Green identity at desk scale. The ``spinlab`` console
script runs the whole check battery and writes a versioned JSON report.
"""

from .minkowski import (
    ETA,
    ETA_DIAG,
    LorentzVector,
    basis_vector,
    classify_causal,
    is_restricted_lorentz,
    metric_eval,
)
from .clifford import (
    NotUnimodular,
    SingularIntertwiner,
    covering_lambda,
    dirac_collection_check,
    dirac_gammas,
    exp_spin,
    pauli_intertwiner,
    spin_generators,
    weyl_gammas,
)
from .spinor_core import (
    DOTTED_LOW,
    DOTTED_UP,
    UNDOTTED_LOW,
    UNDOTTED_UP,
    IllegalContraction,
    Spinor,
    apply_sl2,
    clebsch_reconstruct,
    clebsch_split,
    conjugate,
    contract,
    epsilon,
    raise_lower,
    sigma_inv,
    sigma_map,
    sym_dimension,
    symmetrize,
    tensor,
)
from .higher_spin import (
    DiracSpinor,
    HigherSpinVector,
    KNotEqualL,
    NotTimelikeFuture,
    apply_symbol,
    dirac_adjoint,
    fiber_dim,
    gen_dirac_adjoint,
    gen_pairing,
    gram_signature,
    pack,
    symbol_matrix,
    twisted_positivity_check,
    unpack,
    witness_pair,
    xi_form,
)
from .evolution import (
    CFLViolation,
    EvolutionConfig,
    GridField,
    ZeroProjection,
    causal_support_check,
    conservation_report,
    divergence_check,
    evolve,
    green_residual,
    plane_wave,
    retarded_green_apply,
    slice_product,
)

__version__ = "0.1.0"

__all__ = [
    "ETA",
    "ETA_DIAG",
    "LorentzVector",
    "basis_vector",
    "classify_causal",
    "is_restricted_lorentz",
    "metric_eval",
    "NotUnimodular",
    "SingularIntertwiner",
    "covering_lambda",
    "dirac_collection_check",
    "dirac_gammas",
    "exp_spin",
    "pauli_intertwiner",
    "spin_generators",
    "weyl_gammas",
    "DOTTED_LOW",
    "DOTTED_UP",
    "UNDOTTED_LOW",
    "UNDOTTED_UP",
    "IllegalContraction",
    "Spinor",
    "apply_sl2",
    "clebsch_reconstruct",
    "clebsch_split",
    "conjugate",
    "contract",
    "epsilon",
    "raise_lower",
    "sigma_inv",
    "sigma_map",
    "sym_dimension",
    "symmetrize",
    "tensor",
    "DiracSpinor",
    "HigherSpinVector",
    "KNotEqualL",
    "NotTimelikeFuture",
    "apply_symbol",
    "dirac_adjoint",
    "fiber_dim",
    "gen_dirac_adjoint",
    "gen_pairing",
    "gram_signature",
    "pack",
    "symbol_matrix",
    "twisted_positivity_check",
    "unpack",
    "witness_pair",
    "xi_form",
    "CFLViolation",
    "EvolutionConfig",
    "GridField",
    "ZeroProjection",
    "causal_support_check",
    "conservation_report",
    "divergence_check",
    "evolve",
    "green_residual",
    "plane_wave",
    "retarded_green_apply",
    "slice_product",
    "__version__",
]

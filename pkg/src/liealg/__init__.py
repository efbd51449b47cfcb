"""Exact-arithmetic toolkit for finite-dimensional complex Lie algebras
presented by structure constants: structural invariants, Chevalley-Eilenberg
cohomology, deformation calculus with obstructions, symbolic one-parameter
contractions, and rigidity certificates."""

from .catalog import CatalogEntry, catalog_build, catalog_names, standard_battery
from .cochains import (
    Cochain,
    NonassociativeProduct,
    algebra_class_check,
    alternating_circle,
    bch_product,
    circle,
    circle_group,
    commutator_law,
    comp_i,
    graded_bracket,
)
from .cohomology import (
    CohomologyReport,
    coboundary,
    cocycle_basis,
    cohomology_report,
    fingerprint,
    is_coboundary,
)
from .contraction import (
    LaurentFraction,
    ParametricFamily,
    contract,
    contraction_invariant_check,
    iw_family,
    saletan_family,
    saletan_sequence,
    ww_family,
)
from .deformation import (
    FlagDecomposition,
    FormalDeformation,
    ObstructionClass,
    deformation_residual,
    equivalence_reduce,
    integrate,
    integrate_step,
    max_rank_check,
    perturbation_decompose,
    rim_square,
    valued_decompose,
)
from .document import AlgebraDocument, parse, serialize
from .linalg import ExactMatrix, kernel_basis, rank, solve
from .scalars import EpsilonScalar, GaussianRational, gr
from .structure import (
    BasisChange,
    SeriesProfile,
    StructureConstants,
    adjoint,
    apply_basis_change,
    center,
    classify_structure,
    derivations,
    derived_series,
    direct_sum,
    lower_central_series,
    normalize_2dim,
    solvable_extension,
    validate_law,
)
from .variety import (
    JacobiSystem,
    RigidityVerdict,
    jacobi_polynomials,
    orbit_dimension,
    rigidity_verdict,
    tangent_dims,
)

__version__ = "0.1.0"

"""Algebraic Poisson cohomology of quadratic toric Poisson structures on C^{2n}."""

from .coefficients import GaussianRational, gq, parse_gq, serialize_gq
from .exterior import (
    GradedCell,
    MultiVector,
    cell_dimension,
    enumerate_cell,
    grade,
    lambda_decompose,
    parse_multivector,
    parse_term,
    wedge,
)
from .graded_complex import (
    CohomologySummary,
    GeneratorType,
    PoissonComplex,
    assemble_sigma_matrix,
    classify_generator,
    cohomology_dim,
    cohomology_representatives,
    full_table,
    rref,
)
from .schouten import (
    PoissonBivector,
    closed_sigma_monomial,
    closed_sigma_vector,
    schouten_bracket,
    sigma,
)
from .toric import (
    HamiltonianKind,
    HermitianForm,
    build_pi,
    congruence_transform,
    hamiltonian_classify,
    preset,
)

__version__ = "0.1.0"

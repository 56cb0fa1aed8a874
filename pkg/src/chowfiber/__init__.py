"""Zero-cycle class groups of rational surfaces over p-adic fields.

The package turns combinatorial data of a regular model's special fiber
(Frobenius orbits of components, multiplicities, and restriction degrees
of chosen curve classes) into explicit finitely generated abelian
groups: the quotient B(X) presented by the specialization matrix, the
induced degree character, its kernel B(X)_0, and the index.

Layers, bottom up:

* :mod:`chowfiber.exact_linalg` — exact integer matrices, Hermite and
  Smith normal forms with transforms, kernels, cokernels, and the
  minor-enumeration oracle;
* :mod:`chowfiber.galois` — the Frobenius action on fiber components,
  orbits, and the weight vector of the fiber-class pairing;
* :mod:`chowfiber.fiber_model` — the JSON input schema, normalization,
  and validation diagnostics;
* :mod:`chowfiber.chow` — the pipeline assembling the report, with the
  degree-zero part computed by two independent routes;
* :mod:`chowfiber.cli` — the ``chowfiber`` command.
"""

from .exact_linalg import (
    CokernelPresentation,
    FGAbelianGroup,
    IntMatrix,
    MatrixFormatError,
    NotInLattice,
    OracleSizeLimitError,
    SelfCheckError,
    SmithDecomposition,
    cokernel,
    determinant,
    determinantal_divisors,
    format_matrix_text,
    hnf,
    integer_kernel,
    invariant_factors_from_divisors,
    matrix_rank,
    parse_matrix_text,
    snf,
    solve_in_lattice,
)
from .galois import (
    ComponentOrbit,
    PermutationAction,
    WeightVector,
    hom_T_basis,
    invariant_hom_rank,
    orbits,
    xi_weights,
)
from .fiber_model import (
    Diagnostic,
    ExpectedResult,
    FiberModel,
    GeometricSection,
    Hypotheses,
    ParseError,
    PicGenerator,
    SchemaError,
    build_specialization_matrix,
    has_errors,
    parse_model,
    serialize_model,
    validate,
)
from .chow import (
    B0Computation,
    ChowReport,
    InvalidModel,
    XiNotDescending,
    compute_b,
    compute_b0,
    compute_xi_bar,
    report,
)

__version__ = "0.1.0"

__all__ = [
    "B0Computation",
    "ChowReport",
    "CokernelPresentation",
    "ComponentOrbit",
    "Diagnostic",
    "ExpectedResult",
    "FGAbelianGroup",
    "FiberModel",
    "GeometricSection",
    "Hypotheses",
    "IntMatrix",
    "InvalidModel",
    "MatrixFormatError",
    "NotInLattice",
    "OracleSizeLimitError",
    "ParseError",
    "PermutationAction",
    "PicGenerator",
    "SchemaError",
    "SelfCheckError",
    "SmithDecomposition",
    "WeightVector",
    "XiNotDescending",
    "build_specialization_matrix",
    "cokernel",
    "compute_b",
    "compute_b0",
    "compute_xi_bar",
    "determinant",
    "determinantal_divisors",
    "format_matrix_text",
    "has_errors",
    "hnf",
    "hom_T_basis",
    "integer_kernel",
    "invariant_factors_from_divisors",
    "invariant_hom_rank",
    "matrix_rank",
    "orbits",
    "parse_matrix_text",
    "parse_model",
    "report",
    "serialize_model",
    "snf",
    "solve_in_lattice",
    "validate",
    "xi_weights",
]

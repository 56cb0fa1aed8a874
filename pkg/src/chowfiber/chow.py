"""From a fiber model to the zero-cycle class group.

The group of zero-cycles modulo rational equivalence on the generic
fiber is, under the hypotheses the user asserts on the model, isomorphic
to B(X): the quotient of the equivariant character lattice of the
special fiber by the column span of the specialization (degree) matrix.
This module computes B(X) as an explicit finitely generated abelian
group, the induced degree character on it, its kernel B(X)_0, and the
index (the positive generator of the image of the degree).

B(X)_0 is computed twice, by genuinely different routes:

* the *quotient route* rewrites every degree column in a saturated
  basis of the characters annihilating the fiber class and presents the
  quotient of that sublattice;
* the *kernel route* takes the canonical presentation of B(X), expresses
  the induced degree character in its coordinates, and presents the
  kernel.

The two answers agree as abstract groups whenever the input satisfies
the validation laws; the pipeline asserts this agreement, which is the
strongest cheap self-check available, and refuses to hand out a report
that fails it.

Everything here is a pure function of the model; reports are immutable
values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exact_linalg import (
    CokernelPresentation,
    FGAbelianGroup,
    IntMatrix,
    SelfCheckError,
    cokernel,
    integer_kernel,
    snf,
    solve_in_lattice,
)
from .fiber_model import (
    Diagnostic,
    ExpectedResult,
    FiberModel,
    Hypotheses,
    build_specialization_matrix,
    has_errors,
    validate,
)
from .galois import hom_T_basis, xi_weights

STRICT = "strict"
PERMISSIVE = "permissive"

#: Tag set when the whole geometric special fiber is a single component
#: of multiplicity one, in which case the degree map is an isomorphism
#: onto Z.
IRREDUCIBLE_FIBER = "irreducible-fiber"

#: Reported as the index when validation failed and the degree character
#: does not descend to the quotient.
INDEX_UNDEFINED = "undefined-under-invalid-input"


class InvalidModel(Exception):
    """The model fails validation and the requested computation needs it."""

    def __init__(self, diagnostics: Sequence[Diagnostic]):
        self.diagnostics = tuple(diagnostics)
        errors = [d for d in self.diagnostics if d.is_error()]
        super().__init__(
            f"model fails validation with {len(errors)} error(s): "
            + "; ".join(str(d) for d in errors)
        )


class XiNotDescending(Exception):
    """Some degree column pairs nonzero against the fiber class.

    The degree character is then not constant on cosets of the relation
    lattice and induces nothing on the quotient.  ``offenders`` holds
    ``(generator name, weighted sum)`` pairs.
    """

    def __init__(self, offenders: Sequence[tuple[str, int]]):
        self.offenders = tuple(offenders)
        names = ", ".join(name for name, _ in self.offenders)
        super().__init__(f"degree character does not descend; offending columns: {names}")


@dataclass(frozen=True)
class B0Computation:
    """The degree-zero part computed by both routes; they must agree."""

    route_quotient: FGAbelianGroup
    route_kernel: FGAbelianGroup

    def agree(self) -> bool:
        return self.route_quotient == self.route_kernel


@dataclass(frozen=True)
class ChowReport:
    """Everything the pipeline knows about one model.

    ``b`` is always the formal cokernel of the degree matrix.  The
    fields ``b0``, ``xi_on_generators`` and ``index`` are present only
    when validation succeeded; reading ``b`` as a zero-cycle class group
    is conditional on the asserted hypotheses, and when ``formal_only``
    is set even that reading is unavailable.
    """

    model_name: str
    b: FGAbelianGroup
    b0: FGAbelianGroup | None
    xi_on_generators: tuple[int, ...] | None
    index: int | None
    diagnostics: tuple[Diagnostic, ...]
    special_case: str | None
    hypotheses: Hypotheses
    formal_only: bool
    notes: str | None = None
    expected: ExpectedResult | None = None


def compute_b(m: FiberModel, *, strict: bool = True) -> CokernelPresentation:
    """Present B(X): the character lattice modulo the degree columns.

    With ``strict`` (the default), a model with validation errors raises
    :class:`InvalidModel`; pass ``strict=False`` to study the formal
    cokernel of inconsistent data.
    """
    if strict:
        diagnostics = validate(m)
        if has_errors(diagnostics):
            raise InvalidModel(diagnostics)
    return cokernel(build_specialization_matrix(m))


def compute_xi_bar(
    m: FiberModel, presentation: CokernelPresentation
) -> tuple[tuple[int, ...], int]:
    """The induced degree character on the canonical generators, and its index.

    The character is well defined on the quotient only when every degree
    column pairs to zero against the multiplicity weights; otherwise
    :class:`XiNotDescending` is raised, carrying the offending columns.
    The index is the gcd of the weights: inducing on a quotient does not
    change the image.
    """
    weights = xi_weights(m.orbits)
    matrix = build_specialization_matrix(m)
    offenders = [
        (g.name, pairing)
        for g, col in zip(m.generators, matrix.columns())
        if (pairing := sum(w * e for w, e in zip(weights.weights, col))) != 0
    ]
    if offenders:
        raise XiNotDescending(offenders)
    # In the canonical coordinates y = u @ x the character becomes
    # w @ u^{-1}; u is unimodular, so the system u^T z = w has a unique
    # integer solution.
    values = solve_in_lattice(presentation.change_of_basis.transpose(), weights.weights)
    return values, weights.image_index()


def compute_b0(m: FiberModel) -> B0Computation:
    """The degree-zero part of B(X), by the quotient route and the kernel route."""
    diagnostics = validate(m)
    if has_errors(diagnostics):
        raise InvalidModel(diagnostics)

    weights = xi_weights(m.orbits)
    matrix = build_specialization_matrix(m)
    orbit_count = len(m.orbits)

    # Quotient route: every valid degree column annihilates the fiber
    # class, so it has integer coordinates in the saturated annihilator
    # basis; B(X)_0 is the quotient of that corank-one sublattice.
    annihilator = hom_T_basis(weights)
    coords = [solve_in_lattice(annihilator, col) for col in matrix.columns()]
    route_quotient = cokernel(
        IntMatrix.from_columns(coords, row_count=annihilator.col_count)
    ).group

    # Kernel route: in the canonical coordinates of the presentation the
    # relation lattice is spanned by multiples of basis vectors and the
    # character has an explicit coefficient row; present the kernel of
    # that row modulo the relations.
    dec = snf(matrix)
    xi_canonical = solve_in_lattice(dec.u.transpose(), weights.weights)
    kernel_basis = integer_kernel(IntMatrix.from_rows([xi_canonical]))
    relation_coords = []
    for i, d in enumerate(dec.s.diagonal_entries()):
        if d == 0:
            break
        relation = [0] * orbit_count
        relation[i] = d
        relation_coords.append(solve_in_lattice(kernel_basis, relation))
    route_kernel = cokernel(
        IntMatrix.from_columns(relation_coords, row_count=kernel_basis.col_count)
    ).group

    return B0Computation(route_quotient=route_quotient, route_kernel=route_kernel)


def report(m: FiberModel, mode: str = STRICT) -> ChowReport:
    """Run the full pipeline and assemble a report.

    In strict mode a model with validation errors raises
    :class:`InvalidModel`.  In permissive mode the report is always
    produced: the cokernel is computed formally, the degree-dependent
    fields are absent, and ``formal_only`` is set.
    """
    if mode not in (STRICT, PERMISSIVE):
        raise ValueError(f"mode must be {STRICT!r} or {PERMISSIVE!r}, got {mode!r}")
    diagnostics = validate(m)
    errors = has_errors(diagnostics)
    if errors and mode == STRICT:
        raise InvalidModel(diagnostics)

    presentation = cokernel(build_specialization_matrix(m))
    b = presentation.group

    if errors:
        b0 = None
        xi_values: tuple[int, ...] | None = None
        index: int | None = None
        special_case = None
        formal_only = True
    else:
        xi_values, index = compute_xi_bar(m, presentation)
        both = compute_b0(m)
        if not both.agree():
            raise SelfCheckError(
                f"the two degree-zero routes disagree: quotient route "
                f"{both.route_quotient}, kernel route {both.route_kernel}"
            )
        b0 = both.route_quotient
        formal_only = False
        _check_validated_shape(m, b, b0)
        single = m.orbits[0]
        special_case = (
            IRREDUCIBLE_FIBER
            if len(m.orbits) == 1 and single.size == 1 and single.multiplicity == 1
            else None
        )

    return ChowReport(
        model_name=m.name,
        b=b,
        b0=b0,
        xi_on_generators=xi_values,
        index=index,
        diagnostics=tuple(diagnostics),
        special_case=special_case,
        hypotheses=m.hypotheses,
        formal_only=formal_only,
        notes=m.notes,
        expected=m.expected,
    )


def _check_validated_shape(m: FiberModel, b: FGAbelianGroup, b0: FGAbelianGroup) -> None:
    # On validated input the degree character maps B(X) onto a nonzero
    # subgroup of Z, so the free rank drops by exactly one in the kernel
    # and the torsion is untouched.  A single orbit of multiplicity one
    # forces every column to vanish, so B(X) = Z and B(X)_0 = 0.
    if b.rank < 1:
        raise SelfCheckError("validated model produced a torsion-only quotient")
    if b0.rank != b.rank - 1 or b0.invariant_factors != b.invariant_factors:
        raise SelfCheckError(
            f"degree-zero part {b0} is not a corank-one subgroup of {b} "
            f"with the same torsion"
        )
    if len(m.orbits) == 1 and m.orbits[0].multiplicity == 1:
        if b != FGAbelianGroup(1) or not b0.is_trivial():
            raise SelfCheckError(
                "a single multiplicity-one orbit must give B(X) = Z and trivial B(X)_0"
            )

"""Frobenius orbits of fiber components and the weight vector.

The residual Galois group acts on the geometric components of the
special fiber through a single permutation (Frobenius).  Orbits are the
components defined over the base residue field; each orbit weighs
``multiplicity * size`` against the fiber class.
"""

from chowfiber import (
    ComponentOrbit,
    PermutationAction,
    hom_T_basis,
    invariant_hom_rank,
    orbits,
    xi_weights,
)

print("A five-element component set where Frobenius swaps two pairs:")
action = PermutationAction(
    ground_set=("A1", "A2", "B1", "B2", "C"),
    frobenius=("A2", "A1", "B2", "B1", "C"),
)
for cycle in orbits(action):
    print("  orbit:", cycle)

print("\nThe seven-component configuration used throughout the fixtures:")
seven = [
    ComponentOrbit("A", ("A1", "A2"), 1),
    ComponentOrbit("B", ("B1", "B2"), 1),
    ComponentOrbit("C", ("C",), 1),
    ComponentOrbit("D", ("D",), 1),
    ComponentOrbit("R", ("R1", "R2"), 1),
    ComponentOrbit("S", ("S1", "S2"), 1),
    ComponentOrbit("M", ("M1", "M2"), 2),
]
print("equivariant character lattice rank:", invariant_hom_rank(seven))
weights = xi_weights(seven)
print("weights (multiplicity x size):", weights.weights)
print("total fiber multiplicity:", weights.total())
print("index of the degree image:", weights.image_index())

print("\nCharacters annihilating the fiber class (a saturated corank-one lattice):")
basis = hom_T_basis(weights)
print(f"{basis.col_count} basis columns; each pairs to 0 against the weights:")
for j in range(basis.col_count):
    col = basis.column(j)
    pairing = sum(w * e for w, e in zip(weights.weights, col))
    print(f"  {col}  ->  {pairing}")

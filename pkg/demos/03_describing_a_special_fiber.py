"""Writing a fiber model document and validating it.

A model is a JSON object: orbits with multiplicities and sizes, plus
generators carrying integer degree vectors.  The validator enforces the
laws genuine fiber data must obey; diagnostics are values, not prints.
"""

import json

from chowfiber import build_specialization_matrix, parse_model, validate

good = {
    "name": "demo-good",
    "hypotheses": {"reduced_components_smooth": True, "pic_unramified_descent": True},
    "orbits": [
        {"name": "A", "multiplicity": 1, "size": 1},
        {"name": "B", "multiplicity": 1, "size": 1},
    ],
    "generators": [
        {"name": "g", "host": "A", "degrees": {"A": 3, "B": -3}},
    ],
}

print("A well-formed document:")
print(json.dumps(good, indent=2))

model = parse_model(good)
print("\nIt parses into", len(model.orbits), "orbits and", len(model.generators), "generator;")
print("absent degree entries were normalized to explicit zeros:")
print("  degrees of g:", dict(model.generators[0].degrees))

print("\nIts specialization matrix (rows = orbits, columns = generators):")
print(build_specialization_matrix(model))

print("\nValidation finds nothing to complain about:")
print(" ", validate(model) or "no diagnostics")

# Now break the weighted-sum law: against weights (1, 1) the column
# (3, -2) pairs to 1, which no fiber can produce.
bad = dict(good, name="demo-bad")
bad["generators"] = [{"name": "g", "host": "A", "degrees": {"A": 3, "B": -2}}]
print("\nThe same document with degrees (3, -2) instead:")
for diagnostic in validate(parse_model(bad)):
    print(" ", diagnostic)
print("A column that pairs nonzero against the fiber class cannot come from")
print("restricting line bundles on a fiber, so this is an error, not a warning.")

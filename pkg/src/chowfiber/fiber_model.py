"""Input schema for a special fiber and its validation laws.

A model document describes the closed fiber of a regular projective
model of a surface over a p-adic field at the level of combinatorics:
the Frobenius orbits of geometric components (with multiplicities and
orbit sizes) and, for a chosen set of curve classes on the components,
the integer degrees obtained by restricting the line bundle of each
component to each curve.  Those degrees form the specialization matrix
whose cokernel the ``chow`` module turns into the zero-cycle class
group.

Document format (JSON object, strict: unknown top-level keys are
rejected)::

    {
      "name": "...",                       required
      "hypotheses": {                      optional, defaults to false/false
        "reduced_components_smooth": bool,
        "pic_unramified_descent": bool
      },
      "orbits": [                          required, non-empty
        {"name": "A", "multiplicity": 1, "size": 2}, ...
      ],
      "generators": [                      optional
        {"name": "c01", "host": "A", "degrees": {"A": -2, ...}}, ...
      ],
      "geometric": {                       optional raw component-level data
        "components": ["A1", "A2", ...],
        "frobenius":  ["A2", "A1", ...],   image list, same order
        "orbit_of":   {"A1": "A", ...},
        "degrees":    {"c01": {"A1": -2, "A2": -2, ...}, ...}
      },
      "notes": "...",                      optional free text
      "expected": {                        optional regression record
        "b0_rank": 0, "b0_torsion": [2], "source": "..."
      }
    }

Degrees are maps from orbit names to integers; missing keys mean 0 and
are normalized to explicit zeros.  The hypotheses are assertions by the
user about the geometry (smoothness of the reduced components, and that
line bundle classes descend from the algebraic closure to the maximal
unramified extension); they are echoed in reports, never checked.

Validation (:func:`validate`) checks the laws the degree data must obey:
every generator column must pair to zero against the multiplicity
weights (``xi-orthogonality``), and component-level degrees, when given,
must be constant on each orbit and agree with the declared orbit-level
value (``orbit-constancy``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .exact_linalg import IntMatrix
from .galois import ComponentOrbit, PermutationAction, orbits, xi_weights


class ParseError(ValueError):
    """The document is not syntactically valid JSON."""


class SchemaError(ValueError):
    """The document does not conform to the model schema."""


SEVERITY_ERROR = "error"
SEVERITY_WARNING = "warning"

#: The fixed set of diagnostic codes emitted by :func:`validate`.
DIAGNOSTIC_CODES = frozenset(
    {"xi-orthogonality", "orbit-constancy", "no-generators", "multiplicity-gcd"}
)


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    code: str
    subject: str
    message: str

    def __post_init__(self) -> None:
        if self.severity not in (SEVERITY_ERROR, SEVERITY_WARNING):
            raise ValueError(f"unknown severity {self.severity!r}")
        if self.code not in DIAGNOSTIC_CODES:
            raise ValueError(f"unknown diagnostic code {self.code!r}")

    def is_error(self) -> bool:
        return self.severity == SEVERITY_ERROR

    def __str__(self) -> str:
        return f"{self.severity.upper()} {self.code} {self.subject}: {self.message}"


@dataclass(frozen=True)
class Hypotheses:
    """User-asserted geometric hypotheses, echoed verbatim in reports."""

    reduced_components_smooth: bool = False
    pic_unramified_descent: bool = False


@dataclass(frozen=True)
class ExpectedResult:
    """A recorded expected result for fixture regression; never a pass target."""

    b0_rank: int
    b0_torsion: tuple[int, ...]
    source: str


@dataclass(frozen=True)
class PicGenerator:
    """A chosen curve class on a component, with its degree against every orbit.

    ``degrees`` is total after normalization: every orbit of the model
    has an entry (zeros explicit).
    """

    name: str
    host: str
    degrees: Mapping[str, int]


@dataclass(frozen=True)
class GeometricSection:
    """Raw component-level data: the Frobenius action and per-component degrees."""

    action: PermutationAction
    orbit_of: Mapping[str, str]
    degrees: Mapping[str, Mapping[str, int]]


@dataclass(frozen=True)
class FiberModel:
    name: str
    orbits: tuple[ComponentOrbit, ...]
    generators: tuple[PicGenerator, ...]
    hypotheses: Hypotheses = field(default_factory=Hypotheses)
    geometric: GeometricSection | None = None
    notes: str | None = None
    expected: ExpectedResult | None = None

    def orbit_names(self) -> tuple[str, ...]:
        return tuple(o.name for o in self.orbits)


# ----------------------------------------------------------------------
# schema helpers
# ----------------------------------------------------------------------


def _expect(value: object, kind: type, where: str, label: str) -> object:
    # bool is a subclass of int; keep the two apart.
    if isinstance(value, bool) and kind is not bool:
        raise SchemaError(f"{where}: expected {label}, got a boolean")
    if not isinstance(value, kind):
        raise SchemaError(f"{where}: expected {label}, got {type(value).__name__}")
    return value


def _expect_str(value: object, where: str) -> str:
    return _expect(value, str, where, "a string")  # type: ignore[return-value]


def _expect_int(value: object, where: str) -> int:
    return _expect(value, int, where, "an integer")  # type: ignore[return-value]


def _expect_bool(value: object, where: str) -> bool:
    return _expect(value, bool, where, "a boolean")  # type: ignore[return-value]


def _expect_object(value: object, where: str) -> dict:
    return _expect(value, dict, where, "an object")  # type: ignore[return-value]


def _expect_array(value: object, where: str) -> list:
    return _expect(value, list, where, "an array")  # type: ignore[return-value]


def _reject_unknown_keys(obj: dict, allowed: set[str], where: str) -> None:
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise SchemaError(f"{where}: unknown keys {', '.join(unknown)}")


def _require_keys(obj: dict, required: Sequence[str], where: str) -> None:
    missing = [k for k in required if k not in obj]
    if missing:
        raise SchemaError(f"{where}: missing required keys {', '.join(missing)}")


# ----------------------------------------------------------------------
# parsing
# ----------------------------------------------------------------------


def parse_model(document: str | Mapping) -> FiberModel:
    """Parse and normalize a model document (JSON text or a parsed object).

    Raises :class:`ParseError` for malformed JSON and :class:`SchemaError`
    for structural problems (unknown keys, unknown orbit references,
    duplicate names, multiplicity below 1, an empty orbit list, or a
    geometric section whose action does not match the declared orbits).
    """
    if isinstance(document, str):
        try:
            raw = json.loads(document)
        except json.JSONDecodeError as e:
            raise ParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    else:
        raw = dict(document)
    top = _expect_object(raw, "document")
    _reject_unknown_keys(
        top,
        {"name", "hypotheses", "orbits", "generators", "geometric", "notes", "expected"},
        "document",
    )
    _require_keys(top, ["name", "orbits"], "document")

    name = _expect_str(top["name"], "name")
    hypotheses = _parse_hypotheses(top.get("hypotheses"))
    orbit_specs = _parse_orbit_specs(top["orbits"])
    orbit_names = [oname for oname, _mult, _size in orbit_specs]

    generators = _parse_generators(top.get("generators", []), orbit_names)

    geometric = None
    members_by_orbit = {
        oname: tuple(f"{oname}.{i}" for i in range(1, size + 1))
        for oname, _mult, size in orbit_specs
    }
    if "geometric" in top:
        geometric, members_by_orbit = _parse_geometric(
            top["geometric"], orbit_specs, [g.name for g in generators]
        )

    orbit_tuple = tuple(
        ComponentOrbit(name=oname, members=members_by_orbit[oname], multiplicity=mult)
        for oname, mult, _size in orbit_specs
    )

    notes = None
    if "notes" in top:
        notes = _expect_str(top["notes"], "notes")
    expected = None
    if "expected" in top:
        expected = _parse_expected(top["expected"])

    return FiberModel(
        name=name,
        orbits=orbit_tuple,
        generators=generators,
        hypotheses=hypotheses,
        geometric=geometric,
        notes=notes,
        expected=expected,
    )


def _parse_hypotheses(raw: object) -> Hypotheses:
    if raw is None:
        return Hypotheses()
    obj = _expect_object(raw, "hypotheses")
    _reject_unknown_keys(
        obj, {"reduced_components_smooth", "pic_unramified_descent"}, "hypotheses"
    )
    return Hypotheses(
        reduced_components_smooth=_expect_bool(
            obj.get("reduced_components_smooth", False), "hypotheses.reduced_components_smooth"
        ),
        pic_unramified_descent=_expect_bool(
            obj.get("pic_unramified_descent", False), "hypotheses.pic_unramified_descent"
        ),
    )


def _parse_orbit_specs(raw: object) -> list[tuple[str, int, int]]:
    arr = _expect_array(raw, "orbits")
    if not arr:
        raise SchemaError("orbits: the orbit list must not be empty")
    specs: list[tuple[str, int, int]] = []
    seen: set[str] = set()
    for idx, item in enumerate(arr):
        where = f"orbits[{idx}]"
        obj = _expect_object(item, where)
        _reject_unknown_keys(obj, {"name", "multiplicity", "size"}, where)
        _require_keys(obj, ["name", "multiplicity", "size"], where)
        oname = _expect_str(obj["name"], f"{where}.name")
        mult = _expect_int(obj["multiplicity"], f"{where}.multiplicity")
        size = _expect_int(obj["size"], f"{where}.size")
        if oname in seen:
            raise SchemaError(f"{where}: duplicate orbit name {oname!r}")
        seen.add(oname)
        if mult < 1:
            raise SchemaError(f"{where}: multiplicity must be >= 1, got {mult}")
        if size < 1:
            raise SchemaError(f"{where}: size must be >= 1, got {size}")
        specs.append((oname, mult, size))
    return specs


def _parse_generators(raw: object, orbit_names: Sequence[str]) -> tuple[PicGenerator, ...]:
    arr = _expect_array(raw, "generators")
    generators: list[PicGenerator] = []
    seen: set[str] = set()
    for idx, item in enumerate(arr):
        where = f"generators[{idx}]"
        obj = _expect_object(item, where)
        _reject_unknown_keys(obj, {"name", "host", "degrees"}, where)
        _require_keys(obj, ["name", "host"], where)
        gname = _expect_str(obj["name"], f"{where}.name")
        host = _expect_str(obj["host"], f"{where}.host")
        if gname in seen:
            raise SchemaError(f"{where}: duplicate generator name {gname!r}")
        seen.add(gname)
        if host not in orbit_names:
            raise SchemaError(f"{where}: host references unknown orbit {host!r}")
        degrees_raw = _expect_object(obj.get("degrees", {}), f"{where}.degrees")
        for key in degrees_raw:
            if key not in orbit_names:
                raise SchemaError(f"{where}.degrees: unknown orbit {key!r}")
        degrees = {
            oname: _expect_int(degrees_raw.get(oname, 0), f"{where}.degrees.{oname}")
            for oname in orbit_names
        }
        generators.append(PicGenerator(name=gname, host=host, degrees=degrees))
    return tuple(generators)


def _parse_geometric(
    raw: object,
    orbit_specs: Sequence[tuple[str, int, int]],
    generator_names: Sequence[str],
) -> tuple[GeometricSection, dict[str, tuple[str, ...]]]:
    obj = _expect_object(raw, "geometric")
    _reject_unknown_keys(obj, {"components", "frobenius", "orbit_of", "degrees"}, "geometric")
    _require_keys(obj, ["components", "frobenius", "orbit_of"], "geometric")

    components = [
        _expect_str(x, f"geometric.components[{i}]")
        for i, x in enumerate(_expect_array(obj["components"], "geometric.components"))
    ]
    images = [
        _expect_str(x, f"geometric.frobenius[{i}]")
        for i, x in enumerate(_expect_array(obj["frobenius"], "geometric.frobenius"))
    ]
    try:
        action = PermutationAction(tuple(components), tuple(images))
    except ValueError as e:
        raise SchemaError(f"geometric: {e}") from None

    orbit_of_raw = _expect_object(obj["orbit_of"], "geometric.orbit_of")
    declared = {oname: (mult, size) for oname, mult, size in orbit_specs}
    orbit_of: dict[str, str] = {}
    for comp in components:
        if comp not in orbit_of_raw:
            raise SchemaError(f"geometric.orbit_of: missing component {comp!r}")
    for comp, oname in orbit_of_raw.items():
        if comp not in components:
            raise SchemaError(f"geometric.orbit_of: unknown component {comp!r}")
        oname = _expect_str(oname, f"geometric.orbit_of.{comp}")
        if oname not in declared:
            raise SchemaError(f"geometric.orbit_of: unknown orbit {oname!r}")
        orbit_of[comp] = oname

    # The cycle decomposition of the action must reproduce the declared
    # orbit partition exactly (one cycle per orbit, of the declared size).
    members_by_orbit: dict[str, tuple[str, ...]] = {}
    for cycle in orbits(action):
        targets = {orbit_of[c] for c in cycle}
        if len(targets) != 1:
            raise SchemaError(
                f"geometric: cycle {cycle} maps to several orbits {sorted(targets)}"
            )
        oname = targets.pop()
        if oname in members_by_orbit:
            raise SchemaError(f"geometric: orbit {oname!r} is hit by more than one cycle")
        if len(cycle) != declared[oname][1]:
            raise SchemaError(
                f"geometric: orbit {oname!r} has declared size {declared[oname][1]} "
                f"but its cycle has {len(cycle)} components"
            )
        members_by_orbit[oname] = tuple(cycle)
    missing = [oname for oname in declared if oname not in members_by_orbit]
    if missing:
        raise SchemaError(f"geometric: no cycle realizes orbits {', '.join(missing)}")

    degrees_raw = _expect_object(obj.get("degrees", {}), "geometric.degrees")
    degrees: dict[str, dict[str, int]] = {}
    for gname, comp_map_raw in degrees_raw.items():
        if gname not in generator_names:
            raise SchemaError(f"geometric.degrees: unknown generator {gname!r}")
        comp_map = _expect_object(comp_map_raw, f"geometric.degrees.{gname}")
        for comp in comp_map:
            if comp not in components:
                raise SchemaError(f"geometric.degrees.{gname}: unknown component {comp!r}")
        degrees[gname] = {
            comp: _expect_int(comp_map.get(comp, 0), f"geometric.degrees.{gname}.{comp}")
            for comp in components
        }

    return GeometricSection(action=action, orbit_of=orbit_of, degrees=degrees), members_by_orbit


def _parse_expected(raw: object) -> ExpectedResult:
    obj = _expect_object(raw, "expected")
    _reject_unknown_keys(obj, {"b0_rank", "b0_torsion", "source"}, "expected")
    _require_keys(obj, ["b0_rank", "b0_torsion", "source"], "expected")
    torsion = tuple(
        _expect_int(x, f"expected.b0_torsion[{i}]")
        for i, x in enumerate(_expect_array(obj["b0_torsion"], "expected.b0_torsion"))
    )
    return ExpectedResult(
        b0_rank=_expect_int(obj["b0_rank"], "expected.b0_rank"),
        b0_torsion=torsion,
        source=_expect_str(obj["source"], "expected.source"),
    )


# ----------------------------------------------------------------------
# serialization
# ----------------------------------------------------------------------


def serialize_model(m: FiberModel) -> dict:
    """The normalized document for a model; ``parse_model`` round-trips it."""
    doc: dict = {
        "name": m.name,
        "hypotheses": {
            "reduced_components_smooth": m.hypotheses.reduced_components_smooth,
            "pic_unramified_descent": m.hypotheses.pic_unramified_descent,
        },
        "orbits": [
            {"name": o.name, "multiplicity": o.multiplicity, "size": o.size}
            for o in m.orbits
        ],
        "generators": [
            {"name": g.name, "host": g.host, "degrees": dict(g.degrees)}
            for g in m.generators
        ],
    }
    if m.geometric is not None:
        doc["geometric"] = {
            "components": list(m.geometric.action.ground_set),
            "frobenius": list(m.geometric.action.frobenius),
            "orbit_of": dict(m.geometric.orbit_of),
            "degrees": {g: dict(cm) for g, cm in m.geometric.degrees.items()},
        }
    if m.notes is not None:
        doc["notes"] = m.notes
    if m.expected is not None:
        doc["expected"] = {
            "b0_rank": m.expected.b0_rank,
            "b0_torsion": list(m.expected.b0_torsion),
            "source": m.expected.source,
        }
    return doc


# ----------------------------------------------------------------------
# the specialization matrix and the validation laws
# ----------------------------------------------------------------------


def build_specialization_matrix(m: FiberModel) -> IntMatrix:
    """Degrees as a matrix: rows are orbits, columns are generators, model order."""
    return IntMatrix.from_rows(
        [[g.degrees[o.name] for g in m.generators] for o in m.orbits],
        col_count=len(m.generators),
    )


def validate(m: FiberModel) -> list[Diagnostic]:
    """Check the degree data against the laws it must satisfy.

    Emits, in a fixed order:

    * ``no-generators`` (warning) for a multi-orbit model with no
      generators — the cokernel is then the full character lattice,
      which is rarely what the user meant;
    * ``xi-orthogonality`` (error) for every generator whose degree
      column pairs to a nonzero value against the multiplicity weights.
      Restricting the ideal sheaf of the whole fiber to a curve gives
      the zero bundle, so the weighted sum of any true degree column
      vanishes; a violation means the data cannot come from a fiber;
    * ``orbit-constancy`` (error) when component-level degrees vary
      inside an orbit or disagree with the declared orbit-level value;
    * ``multiplicity-gcd`` (warning) when the gcd of the weights exceeds
      1: the degree character then lands in a proper subgroup of Z.
    """
    diagnostics: list[Diagnostic] = []
    weights = xi_weights(m.orbits)

    if len(m.orbits) > 1 and not m.generators:
        diagnostics.append(
            Diagnostic(
                SEVERITY_WARNING,
                "no-generators",
                m.name,
                "multi-orbit model with an empty generator list; "
                "the quotient is the full character lattice",
            )
        )

    for g in m.generators:
        pairing = sum(w * g.degrees[o.name] for w, o in zip(weights.weights, m.orbits))
        if pairing != 0:
            diagnostics.append(
                Diagnostic(
                    SEVERITY_ERROR,
                    "xi-orthogonality",
                    g.name,
                    f"weighted degree sum against the fiber class is {pairing}, expected 0",
                )
            )

    if m.geometric is not None:
        for g in m.generators:
            comp_degrees = m.geometric.degrees.get(g.name)
            if comp_degrees is None:
                continue
            for o in m.orbits:
                values = [comp_degrees[c] for c in o.members]
                if len(set(values)) > 1:
                    diagnostics.append(
                        Diagnostic(
                            SEVERITY_ERROR,
                            "orbit-constancy",
                            g.name,
                            f"degrees on orbit {o.name!r} differ across conjugate "
                            f"components: {values}",
                        )
                    )
                elif values[0] != g.degrees[o.name]:
                    diagnostics.append(
                        Diagnostic(
                            SEVERITY_ERROR,
                            "orbit-constancy",
                            g.name,
                            f"component-level degree {values[0]} on orbit {o.name!r} "
                            f"disagrees with the declared value {g.degrees[o.name]}",
                        )
                    )

    g = weights.image_index()
    if g > 1:
        diagnostics.append(
            Diagnostic(
                SEVERITY_WARNING,
                "multiplicity-gcd",
                m.name,
                f"gcd of the multiplicity weights is {g}; "
                f"the degree character lands in {g}Z",
            )
        )

    return diagnostics


def has_errors(diagnostics: Sequence[Diagnostic]) -> bool:
    return any(d.is_error() for d in diagnostics)

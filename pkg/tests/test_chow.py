import random

import pytest
from conftest import random_valid_model_document

from chowfiber.chow import (
    IRREDUCIBLE_FIBER,
    PERMISSIVE,
    B0Computation,
    InvalidModel,
    XiNotDescending,
    compute_b,
    compute_b0,
    compute_xi_bar,
    report,
)
from chowfiber.exact_linalg import FGAbelianGroup, matrix_rank
from chowfiber.fiber_model import build_specialization_matrix, parse_model
from chowfiber.fixtures import fixture_path
from chowfiber.galois import xi_weights

Z = FGAbelianGroup(1)
TRIVIAL = FGAbelianGroup(0)


def _model(document):
    return parse_model(document)


def _fixture_model(name):
    return parse_model(fixture_path(name).read_text())


def _single_orbit(multiplicity=1, size=1, degree=None):
    doc = {
        "name": "single",
        "orbits": [{"name": "Y", "multiplicity": multiplicity, "size": size}],
    }
    if degree is not None:
        doc["generators"] = [{"name": "g", "host": "Y", "degrees": {"Y": degree}}]
    return _model(doc)


def _two_orbits(degrees=None):
    doc = {
        "name": "pair",
        "orbits": [
            {"name": "A", "multiplicity": 1, "size": 1},
            {"name": "B", "multiplicity": 1, "size": 1},
        ],
    }
    if degrees is not None:
        doc["generators"] = [
            {"name": "g", "host": "A", "degrees": {"A": degrees[0], "B": degrees[1]}}
        ]
    return _model(doc)


class TestComputeB:
    def test_single_orbit_no_generators(self):
        assert compute_b(_single_orbit()).group == Z

    def test_degree_one_column_kills_a_factor(self):
        # Cokernel of the column (1, -1): divisor oracle gives d1 = 1,
        # so the quotient is free of rank 1.
        assert compute_b(_two_orbits((1, -1))).group == Z

    def test_strict_rejects_invalid(self):
        with pytest.raises(InvalidModel):
            compute_b(_fixture_model("example31"))

    def test_permissive_formal_cokernel(self):
        pres = compute_b(_fixture_model("example31"), strict=False)
        assert pres.group == FGAbelianGroup(0, (2, 2))

    def test_presentation_bookkeeping(self):
        m = _fixture_model("synthetic-z2")
        pres = compute_b(m)
        a = build_specialization_matrix(m)
        assert pres.ambient_rank == len(m.orbits)
        assert pres.relations == a
        assert pres.group.rank == len(m.orbits) - matrix_rank(a)


class TestComputeXiBar:
    def test_identity_on_irreducible_fiber(self):
        m = _single_orbit()
        values, index = compute_xi_bar(m, compute_b(m))
        assert values == (1,)
        assert index == 1

    def test_index_is_weight_gcd(self):
        m = _model(
            {
                "name": "weights-2-4",
                "orbits": [
                    {"name": "A", "multiplicity": 1, "size": 2},
                    {"name": "B", "multiplicity": 2, "size": 2},
                ],
            }
        )
        _values, index = compute_xi_bar(m, compute_b(m))
        assert index == 2

    def test_not_descending_carries_offenders(self):
        m = _fixture_model("example31")
        with pytest.raises(XiNotDescending) as exc:
            compute_xi_bar(m, compute_b(m, strict=False))
        assert exc.value.offenders == (("c01", -4), ("c02", 2), ("c04", -2), ("c05", 4))

    def test_character_descends_from_the_weights(self):
        # Composing the induced character with the projection recovers
        # the weight of every orbit basis vector.
        for name in ("irreducible", "split-orbit", "synthetic-z2"):
            m = _fixture_model(name)
            pres = compute_b(m)
            values, _index = compute_xi_bar(m, pres)
            w = xi_weights(m.orbits).weights
            for y in range(len(m.orbits)):
                projected = pres.change_of_basis.column(y)
                assert sum(a * b for a, b in zip(values, projected)) == w[y]


class TestComputeB0:
    def test_irreducible_fiber_is_trivial(self):
        both = compute_b0(_single_orbit())
        assert both.route_quotient == TRIVIAL
        assert both.route_kernel == TRIVIAL

    def test_doubled_column_gives_two_torsion(self):
        both = compute_b0(_two_orbits((2, -2)))
        assert both.route_quotient == FGAbelianGroup(0, (2,))
        assert both.route_kernel == FGAbelianGroup(0, (2,))

    def test_no_generators_leaves_free_rank(self):
        both = compute_b0(_two_orbits())
        assert both.route_quotient == Z
        assert both.route_kernel == Z

    def test_invalid_model_rejected(self):
        with pytest.raises(InvalidModel):
            compute_b0(_fixture_model("example31"))

    def test_agreement_flag(self):
        assert B0Computation(Z, Z).agree()
        assert not B0Computation(Z, TRIVIAL).agree()

    def test_routes_agree_on_random_valid_models(self):
        rng = random.Random(1729)
        for _ in range(25):
            m = _model(random_valid_model_document(rng))
            both = compute_b0(m)
            assert both.agree()
            b = compute_b(m).group
            assert b.rank == both.route_quotient.rank + 1
            assert b.invariant_factors == both.route_quotient.invariant_factors


class TestReport:
    def test_irreducible_fiber_tagged(self):
        rep = report(_fixture_model("irreducible"))
        assert rep.b == Z
        assert rep.b0 == TRIVIAL
        assert rep.index == 1
        assert rep.special_case == IRREDUCIBLE_FIBER
        assert not rep.formal_only

    def test_split_orbit_boundary_untagged(self):
        # One orbit, multiplicity 1, size 2: still B(X) = Z with trivial
        # degree-zero part, but the geometric fiber is reducible, so the
        # index is 2 and the special-case tag stays unset.
        rep = report(_single_orbit(multiplicity=1, size=2, degree=0))
        assert rep.b == Z
        assert rep.b0 == TRIVIAL
        assert rep.index == 2
        assert rep.special_case is None

    def test_strict_raises_on_invalid(self):
        with pytest.raises(InvalidModel):
            report(_fixture_model("example31"))

    def test_permissive_report_on_invalid(self):
        rep = report(_fixture_model("example31"), mode=PERMISSIVE)
        assert rep.formal_only
        assert rep.b == FGAbelianGroup(0, (2, 2))
        assert rep.b0 is None
        assert rep.xi_on_generators is None
        assert rep.index is None
        assert [d.subject for d in rep.diagnostics if d.is_error()] == [
            "c01",
            "c02",
            "c04",
            "c05",
        ]
        assert rep.expected is not None
        assert rep.expected.b0_rank == 0
        assert rep.expected.b0_torsion == (2,)

    def test_permissive_on_valid_model_is_not_formal(self):
        rep = report(_fixture_model("synthetic-z2"), mode=PERMISSIVE)
        assert not rep.formal_only
        assert rep.b0 == FGAbelianGroup(0, (2,))

    def test_rejects_unknown_mode(self):
        with pytest.raises(ValueError):
            report(_fixture_model("trivial"), mode="lenient")

    def test_hypotheses_echoed(self):
        rep = report(_fixture_model("irreducible"))
        assert rep.hypotheses.reduced_components_smooth
        assert rep.hypotheses.pic_unramified_descent
        rep = report(_fixture_model("trivial"))
        assert not rep.hypotheses.reduced_components_smooth

    def test_single_multiplicity_one_orbit_forces_z(self):
        # Any validating generator on a single multiplicity-one orbit
        # has degree zero, so the quotient is Z and its degree-zero part
        # vanishes, whatever the orbit size.
        for size in (1, 2, 3):
            rep = report(_single_orbit(size=size, degree=0))
            assert rep.b == Z
            assert rep.b0 == TRIVIAL

    def test_single_orbit_nonzero_degree_cannot_validate(self):
        with pytest.raises(InvalidModel):
            report(_single_orbit(degree=1))

    def test_negating_all_degrees_changes_nothing(self):
        rng = random.Random(4104)
        for _ in range(10):
            doc = random_valid_model_document(rng)
            rep = report(_model(doc))
            negated = dict(doc)
            negated["generators"] = [
                {**g, "degrees": {k: -v for k, v in g["degrees"].items()}}
                for g in doc["generators"]
            ]
            rep_neg = report(_model(negated))
            assert rep_neg.b == rep.b
            assert rep_neg.b0 == rep.b0
            assert rep_neg.index == rep.index

    def test_rank_bookkeeping_on_random_models(self):
        rng = random.Random(31415)
        for _ in range(15):
            m = _model(random_valid_model_document(rng))
            rep = report(m)
            a = build_specialization_matrix(m)
            assert rep.b.rank == len(m.orbits) - matrix_rank(a)
            assert rep.b.rank == rep.b0.rank + 1
            assert rep.b.rank >= 1

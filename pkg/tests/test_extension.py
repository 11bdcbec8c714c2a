import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kellerkit.endo import GeneratorSpec, PolyMap, generate_family, invert
from kellerkit.errors import PreconditionError
from kellerkit.extension import (RootClosure, _draw, coordinate_minpoly, extension_degree,
                                 extension_report, fiber_basis, is_dominant, root_closure_check,
                                 subalgebra_membership, symbolic_minpoly, tower_degree,
                                 verify_formanek)
from kellerkit.groebner import quotient_dimension
from kellerkit.polycore import Polynomial, parse_polynomial

from conftest import P
from oracles import fiber_count_resultant

SQ = P("x1^2", "x2")
SQSQ = P("x1^2", "x2^2")
x1, x2 = Polynomial.variable(2, 0), Polynomial.variable(2, 1)

DOMINANT = [
    PolyMap.identity(2), SQ, SQSQ,
    P("x1^3 + x2", "x2^2 - x1"),
    P("x1*x2 + x1", "x2^2 + 3*x1"),
    P("x1 + x2^2", "x2"),
    P("x1^2 + x2^2", "x1*x2"),
    P("x1", "x2^3 + x1*x2"),
    P("x1", "x2 + x1^2", "x3 + x2^2"),
    P("x1^2", "x2", "x3^3 + x1"),
]


class TestExtensionDegree:
    def test_identity(self):
        assert extension_degree(PolyMap.identity(3)) == 1

    def test_square(self):
        assert extension_degree(SQ) == 2

    def test_two_squares(self):
        assert extension_degree(SQSQ) == 4

    def test_non_dominant(self):
        with pytest.raises(PreconditionError):
            extension_degree(P("x1 + x2", "2*x1 + 2*x2"))

    def test_automorphism_is_birational(self):
        F = generate_family(GeneratorSpec("composed", 3, n=3, factors=3))
        assert extension_degree(F, 9) == 1

    @pytest.mark.parametrize("seed", range(4))
    def test_matches_resultant_oracle(self, seed):
        F = DOMINANT[3 + seed]
        c = _draw(random.Random(seed), 2)
        assert quotient_dimension(fiber_basis(F, c)) == fiber_count_resultant(F, c)
        assert extension_degree(F, seed) == fiber_count_resultant(F, c)

    def test_seed_independent(self):
        F = P("x1^2 + x2^2", "x1*x2")
        assert {extension_degree(F, s) for s in range(5)} == {4}


class TestMinpoly:
    def test_square_first(self):
        m = coordinate_minpoly(SQ, 0)
        assert m.degree == 2
        c1 = m.value[0]
        assert m.specialized == Polynomial.variable(1, 0) ** 2 - c1
        assert m.symbolic == parse_polynomial("x3^2 - x1", 3)

    def test_square_second(self):
        assert coordinate_minpoly(SQ, 1).degree == 1

    @pytest.mark.parametrize("i", range(3))
    def test_identity(self, i):
        assert coordinate_minpoly(PolyMap.identity(3), i).degree == 1

    def test_symbolic_annihilates(self):
        F = P("x1^3 + x2", "x2^2 - x1")
        mp = symbolic_minpoly(F, 0)
        assert not mp.substitute(list(F.coords) + [x1])

    def test_paths_agree_on_small_maps(self):
        m = coordinate_minpoly(P("x1*x2 + x1", "x2^2 + 3*x1"), 1, symbolic=True)
        assert m.strategy == "specialization+symbolic"
        assert m.symbolic.degree_in(2) == m.degree

    def test_bad_index(self):
        with pytest.raises(PreconditionError):
            coordinate_minpoly(SQ, 2)


class TestMembership:
    def test_sum(self):
        F = P("x1 + x2^2", "x2")
        w = subalgebra_membership(F[0] + F[1] ** 2, F)
        assert w.expression == parse_polynomial("x1 + x2^2", 2)
        assert str(w) == "y2^2 + y1"
        assert w.verify()

    def test_parity(self):
        assert subalgebra_membership(x1, SQ) is None

    def test_constant(self):
        w = subalgebra_membership(Polynomial.constant(2, 7), SQ)
        assert w.expression == 7

    def test_single_generator(self):
        w = subalgebra_membership(x1 ** 4 + 2 * x1 ** 2, [x1 ** 2])
        assert w.expression == parse_polynomial("x1^2 + 2*x1", 1)

    @settings(max_examples=20)
    @given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(-3, 3)),
                    max_size=4))
    def test_witness_reconstructs(self, terms):
        F = P("x1 + x2^2", "x2 - x1^2")
        h = Polynomial.zero(2)
        for a, b, c in terms:
            h = h + F[0] ** a * F[1] ** b * c
        w = subalgebra_membership(h, F)
        assert w is not None and w.expression.substitute(F.coords) == h


class TestFormanek:
    @pytest.mark.parametrize("seed", range(4))
    def test_automorphism(self, seed):
        F = generate_family(GeneratorSpec("composed", seed, n=2 + seed % 2, factors=3))
        r = verify_formanek(F, seed)
        assert r.ok and r.check_relation(F)

    def test_two_squares(self):
        r = verify_formanek(SQSQ)
        assert not r.ok and r.degree == 2

    def test_square(self):
        r = verify_formanek(SQ)
        assert r.ok and r.check_relation(SQ)
        assert r.witness_text() == "x2 = F2"

    def test_rational_witness(self):
        # x2 = F2 / x1 over Q(F, x1)
        F = P("x1", "x1*x2")
        r = verify_formanek(F)
        assert r.ok and r.check_relation(F)
        assert "/" in r.witness_text()


class TestRootClosure:
    def test_member_power(self):
        F = generate_family(GeneratorSpec("composed", 2, n=2))
        assert root_closure_check(F[0], 3, F) is RootClosure.CONSISTENT

    def test_coordinate_plus_member(self):
        F = generate_family(GeneratorSpec("triangular", 5, n=2))
        assert root_closure_check(x1 + F[1], 2, F) is RootClosure.CONSISTENT

    def test_non_member(self):
        F = P("x1", "x2 + x1^2")
        # every polynomial is a member here; still consistent
        assert root_closure_check(x2 * x1 + 1, 2, F) is RootClosure.CONSISTENT

    def test_requires_keller(self):
        with pytest.raises(PreconditionError):
            root_closure_check(x1, 2, SQ)


class TestTower:
    def test_two_squares(self):
        assert tower_degree(SQSQ, 0) == 2

    def test_identity(self):
        assert tower_degree(PolyMap.identity(3), 1) == 1

    def test_square(self):
        assert tower_degree(SQ, 0) == 1

    @pytest.mark.parametrize("F", DOMINANT, ids=range(len(DOMINANT)))
    def test_multiplicative(self, F):
        D = extension_degree(F, 1)
        for i in range(F.n):
            assert D == coordinate_minpoly(F, i, 2, symbolic=False).degree * tower_degree(F, i, 3)


class TestReport:
    def test_fields(self):
        rep = extension_report(SQ)
        assert rep.D == 2 and tuple(rep.d) == (2, 1) and rep.formanek_ok
        assert rep.as_dict()["D"] == 2

    def test_certified_maps_have_unit_degrees(self):
        F = generate_family(GeneratorSpec("composed", 11, n=2, factors=3))
        assert invert(F) is not None
        rep = extension_report(F)
        assert rep.D == 1 and set(rep.d) == {1}


def test_dominance():
    assert is_dominant(SQ)
    assert not is_dominant(P("x1*x2", "x1*x2 + 1"))


def test_equal_minpoly_degrees_needs_keller():
    # (x1^2, x2) passes the Formanek check yet d = (2, 1); the equality is a Keller fact
    assert verify_formanek(SQ).ok
    assert (coordinate_minpoly(SQ, 0).degree, coordinate_minpoly(SQ, 1).degree) == (2, 1)
    for seed in range(6):
        F = generate_family(GeneratorSpec("composed", seed, n=2, factors=3))
        assert verify_formanek(F, seed).ok
        assert coordinate_minpoly(F, 0, seed).degree == coordinate_minpoly(F, 1, seed).degree

import json
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kellerkit.criteria import (AnnihilatorInput, Certificate, Rule, check_exchange_symmetry,
                                classify, cmw_decompose_2d, degree_conjecture_check,
                                degree_one_component, formanek_adjunction, gcd_conjecture_check,
                                minpoly_gcd_criterion, minpoly_rules, power_minpoly_degree,
                                recover_coordinate_cubic_special, recover_coordinate_quadratic,
                                symmetry_tag)
from kellerkit.endo import GeneratorSpec, PolyMap, compose, generate_family, invert
from kellerkit.errors import InputError, NotSupportedError, PreconditionError
from kellerkit.extension import subalgebra_membership
from kellerkit.polycore import Polynomial, parse_polynomial

from conftest import P, polynomials

TRI3 = P("x1", "x2 + x1^2", "x3 + x2^2")
x1, x2 = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
y1, y2 = x1, x2  # witness expressions live in a ring of the same size


def corpus(n, count, start=0):
    return [generate_family(GeneratorSpec("composed", s, n=n, factors=3))
            for s in range(start, start + count)]


class TestClassify:
    def test_quadratic_degrees(self):
        c = classify(TRI3)
        assert c.rule is Rule.WANG_QUADRATIC_DEGREE and c.verified_by_inversion
        assert c.evidence["degrees"] == [1, 2, 2]

    def test_birational_when_degree_rules_silent(self):
        c = classify(P("x1", "x2 + x1^3", "x3"))
        assert c.rule is Rule.KELLER_BIRATIONAL and c.evidence["D"] == 1

    def test_birational_two_variables_common_factor(self):
        F = compose(P("x1 + x2^3", "x2"), P("x1", "x2 + x1^3"))
        assert F.degrees() == (9, 3)
        assert classify(F).rule is Rule.KELLER_BIRATIONAL

    def test_coprime_degrees(self):
        c = classify(P("x1 + x2^3", "x2"))
        assert c.rule is Rule.MAGNUS_CLASSICAL_2D
        assert c.evidence["gcd"] == 1 and c.evidence["affine_index"] == 2
        assert c.evidence["zhang_bound"] == 1

    def test_gcd_two(self):
        F = compose(P("x1", "x2 + x1^2"), P("x1 + x2^2", "x2"))
        assert F.degrees() == (2, 4)
        assert classify(F).rule is Rule.NAKAI_BABA_2D

    def test_non_keller(self):
        with pytest.raises(PreconditionError):
            classify(P("x1^2", "x2"))

    @pytest.mark.parametrize("F", corpus(2, 6) + corpus(3, 6, 100), ids=range(12))
    def test_soundness(self, F):
        c = classify(F)
        assert c.certified and c.verified_by_inversion
        assert invert(F) is not None

    def test_certificate_serializes(self):
        c = classify(P("x1 + x2^3", "x2"))
        d = c.as_dict()
        assert json.loads(json.dumps(d)) == d
        assert d["digest"] == c.digest() and len(d["digest"]) == 16
        assert classify(P("x1 + x2^3", "x2")).digest() == c.digest()

    def test_none_certificate(self):
        c = Certificate(Rule.NONE)
        assert not c.certified


def test_coprime_plane_automorphisms_have_affine_coordinate():
    # degree pairs such as (2, 3) never occur for plane automorphisms
    for F in corpus(2, 40):
        a, b = F.degrees()
        if gcd(a, b) == 1:
            assert min(a, b) == 1
        assert a % b == 0 or b % a == 0


class TestMinpolyRules:
    def test_keller_pair(self):
        F = generate_family(GeneratorSpec("composed", 4, n=2, factors=3))
        rules = minpoly_rules(F)
        assert rules[0][0] is Rule.MINPOLY_QUADRATIC
        assert Rule.MINPOLY_GCD_2D in [r for r, _ in rules]

    def test_three_variables(self):
        rules = dict(minpoly_rules(TRI3))
        assert Rule.MINPOLY_GCD_N in rules and rules[Rule.MINPOLY_GCD_N]["d"] == [1, 1, 1]

    def test_power_rule_from_measured_degrees(self):
        # d = (3, 3) is not a Keller situation but exercises the power search
        F = P("x1 + x2^3", "x2")
        rules = dict(minpoly_rules(F, d=[3, 3]))
        assert Rule.MINPOLY_POWER in rules

    def test_power_degree(self):
        assert power_minpoly_degree(P("x1^3", "x2"), 0, 3) == 1
        assert power_minpoly_degree(P("x1^3", "x2"), 0, 1) == 3

    def test_gcd_criterion_identity(self):
        assert minpoly_gcd_criterion(PolyMap.identity(2)).rule is Rule.MINPOLY_GCD_2D
        assert minpoly_gcd_criterion(PolyMap.identity(3)).rule is Rule.MINPOLY_GCD_N

    @pytest.mark.parametrize("F", corpus(2, 4, 20), ids=range(4))
    def test_gcd_criterion_agrees_with_inversion(self, F):
        c = minpoly_gcd_criterion(F)
        assert c.certified and c.evidence["d"] == [1, 1] and c.verified_by_inversion

    def test_gcd_criterion_non_keller(self):
        with pytest.raises(PreconditionError):
            minpoly_gcd_criterion(P("x1^2", "x2"))


class TestQuadraticRecovery:
    def test_perfect_square(self):
        F = P("x1 + x2^2", "x2")
        h = subalgebra_membership(x1, F).expression
        inp = AnnihilatorInput(0, 1, -2 * h, h * h)
        w = recover_coordinate_quadratic(F, inp)
        assert w.expression == h and w.target == x1

    def test_linear_relation(self):
        F = P("x1 + x2^2", "x2")
        h = subalgebra_membership(x1, F).expression
        w = recover_coordinate_quadratic(F, AnnihilatorInput(0, 0, 1, -h))
        assert w.expression == parse_polynomial("x1 - x2^2", 2)

    def test_non_keller_non_member(self):
        F = P("x1^2", "x2")
        assert recover_coordinate_quadratic(F, AnnihilatorInput(0, 1, 0, -y1)) is None

    def test_relation_must_hold(self):
        F = P("x1 + x2^2", "x2")
        with pytest.raises(InputError):
            recover_coordinate_quadratic(F, AnnihilatorInput(0, 1, 0, -y1))

    def test_degenerate(self):
        with pytest.raises(InputError):
            recover_coordinate_quadratic(TRI3, AnnihilatorInput(0, 0, 0, 0))

    def test_power_exponent(self):
        # relation for u = x1^2, then the root step recovers x1 itself
        F = P("x1 + x2^3", "x2")
        h = subalgebra_membership(x1, F).expression
        inp = AnnihilatorInput(0, 1, -2 * h ** 2, h ** 4, m=2)
        w = recover_coordinate_quadratic(F, inp)
        assert w is not None and w.target == x1 and w.expression == h

    @settings(max_examples=20)
    @given(st.integers(0, 2 ** 32), st.integers(2, 3), st.data())
    def test_perfect_square_family(self, seed, n, data):
        F = generate_family(GeneratorSpec("composed", seed, n=n, factors=3))
        j = data.draw(st.integers(0, n - 1))
        h = invert(F)[j]  # x_j = h(F)
        inp = AnnihilatorInput(j, 1, -2 * h, h * h)
        assert recover_coordinate_quadratic(F, inp).expression == h


class TestCubicRecovery:
    def test_perfect_cube(self):
        F = P("x1", "x2 + x1^2")
        h = subalgebra_membership(x2, F).expression
        inp = AnnihilatorInput(1, 1, -3 * h, 3 * h * h, -h ** 3)
        assert recover_coordinate_cubic_special(F, inp).expression == h

    def test_scaled_cube(self):
        # 2 (u - h)^3 expanded: b^2 = 3ac holds
        F = P("x1 + x2^2", "x2")
        h = subalgebra_membership(x1, F).expression
        a, b, c, d = 2, -6 * h, 6 * h * h, -2 * h ** 3
        assert (b * b - 3 * a * c).is_zero()
        w = recover_coordinate_cubic_special(F, AnnihilatorInput(0, a, b, c, d))
        assert w.expression == h

    def test_general_cubic_unsupported(self):
        F = P("x1", "x2")
        with pytest.raises(NotSupportedError):
            recover_coordinate_cubic_special(F, AnnihilatorInput(0, 1, 0, -1, 0))

    def test_relation_must_hold(self):
        with pytest.raises(InputError):
            recover_coordinate_cubic_special(P("x1", "x2"), AnnihilatorInput(0, 1, 0, 0, -y2))


class TestFormanekAdjunction:
    @pytest.mark.parametrize("F", [TRI3] + corpus(2, 3, 40), ids=range(4))
    def test_fires(self, F):
        c = formanek_adjunction(F)
        assert c.rule is Rule.FORMANEK_ADJUNCTION and c.verified_by_inversion
        assert len(c.evidence["recovered"]) == F.n - 1
        for w in c.evidence["recovered"].values():
            assert w.verify()


class TestSymmetry:
    def test_tags(self):
        assert symmetry_tag(x1 + x2) == "symmetric"
        assert symmetry_tag(x1 - x2) == "skew"
        assert symmetry_tag(x1) == "neither"

    @given(polynomials(2, 3, 4))
    def test_involution_consistent(self, p):
        q = p.permute_variables([1, 0]).permute_variables([1, 0])
        assert q == p
        tag = symmetry_tag(p)
        sym = p + p.permute_variables([1, 0])
        assert symmetry_tag(sym) in ("symmetric",) or sym.is_zero()
        if tag == "skew":
            assert symmetry_tag(-p) == "skew"

    def test_elementary_symmetric(self):
        rep = check_exchange_symmetry(P("x1 + x2", "x1*x2"))
        assert rep.uniform and rep.conjugate_contained
        assert set(rep.tags.values()) == {"symmetric"}

    def test_square(self):
        rep = check_exchange_symmetry(P("x1^2", "x2"))
        assert not rep.conjugate_contained and "neither" in rep.tags.values()

    def test_two_variables_only(self):
        with pytest.raises(PreconditionError):
            check_exchange_symmetry(TRI3)


class TestCMW:
    def test_square_shift(self):
        dec = cmw_decompose_2d(P("x1", "x2 + x1^2"))
        assert dec.g == P("x1", "x2") and dec.c == (0, 0, 1)

    def test_swap(self):
        dec = cmw_decompose_2d(P("x2", "x1"))
        assert dec.g == P("x2", "x1") and all(c == 0 for c in dec.c)

    def test_cube_shift(self):
        dec = cmw_decompose_2d(P("x1 + 1", "x2 + (x1 + 1)^3"))
        assert dec.c == (0, 0, 0, 1)

    def test_scaled_jacobian(self):
        F = P("2*x1 + x2", "3*x2 + (2*x1 + x2)^2 - 1")
        dec = cmw_decompose_2d(F)
        assert dec.reconstruct() == F[1]
        assert PolyMap(dec.g.coords).jacobian() == F.jacobian()

    def test_not_affine(self):
        with pytest.raises(PreconditionError):
            cmw_decompose_2d(P("x1 + x2^2", "x2"))

    def test_degree_one_component_swaps(self):
        c = degree_one_component(P("x1 + x2^3", "x2"))
        assert c.rule is Rule.DEGREE1_COMPONENT and c.evidence["affine_index"] == 2


class TestDegreeConjecture:
    def test_automorphism(self):
        r = degree_conjecture_check(generate_family(GeneratorSpec("composed", 1, n=3)))
        assert r.D == 1 and r.holds and not r.out_of_hypothesis

    def test_control(self):
        r = degree_conjecture_check(P("x1^2", "x2^2"))
        assert (r.D, r.bound, r.holds, r.out_of_hypothesis) == (4, 2, False, True)

    def test_identity(self):
        r = degree_conjecture_check(PolyMap.identity(2))
        assert (r.d, r.D, r.holds) == (1, 1, True)


class TestGcdConjecture:
    def test_coprime(self):
        r = gcd_conjecture_check(P("x1 + x2^3", "x2"))
        assert r.applicable and r.automorphism_confirmed

    def test_not_applicable(self):
        F = compose(P("x1", "x2 + x1^2"), P("x1 + x2^2", "x2"))
        r = gcd_conjecture_check(F)
        assert r.degrees == (2, 4) and not r.applicable

    def test_linear(self):
        r = gcd_conjecture_check(P("x1 + x2", "x2 - x3", "x3"))
        assert r.applicable and r.automorphism_confirmed
        assert set(r.gcds.values()) == {1}

    def test_non_keller(self):
        with pytest.raises(PreconditionError):
            gcd_conjecture_check(P("x1^2", "x2"))


def test_annihilator_accepts_numbers_and_witnesses():
    F = P("x1 + x2^2", "x2")
    w = subalgebra_membership(x1, F)
    inp = AnnihilatorInput(0, Fraction(1), -2 * w.expression, w.expression ** 2)
    assert inp.holds(F)
    assert AnnihilatorInput(0, 0, 1, w).coefficients(F)[2] == x1

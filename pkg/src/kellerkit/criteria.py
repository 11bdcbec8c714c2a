"""Automorphism certificates for Keller maps.

Each rule turns a theorem about Keller maps into a decision procedure over
measured data (coordinate degrees, the extension degree ``D`` and the
minimal-polynomial degrees ``d_i``). A certificate is only ever returned
after :func:`invert` has independently produced a verified inverse.
"""

from __future__ import annotations

import enum
import hashlib
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from .endo import PolyMap, invert, is_keller
from .errors import (CounterexampleCandidate, InputError, InternalInconsistency,
                     NotSupportedError, PreconditionError, UnsupportedError)
from .extension import (MembershipWitness, _finite_fiber, _two_draws, coordinate_minpoly,
                        extension_degree, is_dominant, subalgebra_membership,
                        symbolic_minpoly)
from .groebner import minpoly_in_quotient
from .polycore import Polynomial, format_polynomial

__all__ = [
    "Rule",
    "Certificate",
    "AnnihilatorInput",
    "SymmetryReport",
    "CMWDecomposition",
    "DegreeCheck",
    "GcdCheck",
    "classify",
    "recover_coordinate_quadratic",
    "recover_coordinate_cubic_special",
    "formanek_adjunction",
    "degree_one_component",
    "symmetry_tag",
    "check_exchange_symmetry",
    "cmw_decompose_2d",
    "degree_conjecture_check",
    "gcd_conjecture_check",
    "minpoly_gcd_criterion",
    "minpoly_rules",
    "power_minpoly_degree",
]


class Rule(enum.Enum):
    KELLER_BIRATIONAL = "KELLER_BIRATIONAL"
    WANG_QUADRATIC_DEGREE = "WANG_QUADRATIC_DEGREE"
    MAGNUS_CLASSICAL_2D = "MAGNUS_CLASSICAL_2D"
    NAKAI_BABA_2D = "NAKAI_BABA_2D"
    MINPOLY_QUADRATIC = "MINPOLY_QUADRATIC"
    MINPOLY_POWER = "MINPOLY_POWER"
    MINPOLY_GCD_2D = "MINPOLY_GCD_2D"
    MINPOLY_GCD_LE2_2D = "MINPOLY_GCD_LE2_2D"
    MINPOLY_SYMMETRIC_PRIME_2D = "MINPOLY_SYMMETRIC_PRIME_2D"
    MINPOLY_GCD_N = "MINPOLY_GCD_N"
    DEGREE1_COMPONENT = "DEGREE1_COMPONENT"
    FORMANEK_ADJUNCTION = "FORMANEK_ADJUNCTION"
    NONE = "NONE"


def _jsonable(v):
    if isinstance(v, Polynomial):
        return format_polynomial(v)
    if isinstance(v, MembershipWitness):
        return str(v)
    if isinstance(v, PolyMap):
        return [format_polynomial(c) for c in v.coords]
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    if isinstance(v, enum.Enum):
        return v.value
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


@dataclass(frozen=True)
class Certificate:
    rule: Rule
    evidence: dict = field(default_factory=dict)
    verified_by_inversion: bool = False

    @property
    def certified(self) -> bool:
        return self.rule is not Rule.NONE

    def digest(self) -> str:
        blob = json.dumps(_jsonable(self.evidence), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def as_dict(self):
        return {"rule": self.rule.value, "evidence": _jsonable(self.evidence),
                "digest": self.digest(), "verified_by_inversion": self.verified_by_inversion}


def _require_keller(F):
    if not is_keller(F):
        raise PreconditionError("map is not Keller (Jacobian determinant is not a non-zero constant)")


def _certify(rule, evidence, inverse):
    if rule is not Rule.NONE and inverse is None:
        raise InternalInconsistency(f"rule {rule.value} fired but the map did not invert")
    return Certificate(rule, evidence, inverse is not None)


# -- degree rules ----------------------------------------------------------------

def _degree_rule(F: PolyMap):
    l = F.degrees()
    if all(k <= 2 for k in l):
        return Rule.WANG_QUADRATIC_DEGREE, {"degrees": list(l)}
    if F.n == 2:
        g = gcd(*l)
        if g == 1:
            ev = {"degrees": list(l), "gcd": 1}
            if 1 in l:
                # coprime degrees force an affine coordinate; show the split too
                ev.update(degree_one_component(F).evidence)
            return Rule.MAGNUS_CLASSICAL_2D, ev
        if g <= 2:
            return Rule.NAKAI_BABA_2D, {"degrees": list(l), "gcd": g}
    return None


def degree_one_component(F: PolyMap) -> Certificate:
    """Two-variable Keller map with an affine coordinate, split as in C-M-W."""
    _require_keller(F)
    l = F.degrees()
    if F.n != 2 or 1 not in l:
        return Certificate(Rule.NONE, {"degrees": list(l)})
    k = l.index(1)
    dec = cmw_decompose_2d(F if k == 0 else PolyMap((F[1], F[0])))
    return _certify(Rule.DEGREE1_COMPONENT,
                    {"affine_index": k + 1, "g": dec.g, "c": list(dec.c)}, invert(F))


def _is_prime(p):
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


def power_minpoly_degree(F: PolyMap, j: int, m: int, seed: int = 0) -> int:
    """Degree of ``x_{j+1}^m`` over Q(F), measured on a generic fibre."""
    if m < 1:
        raise PreconditionError("m must be positive")
    u = Polynomial.variable(F.n, j) ** m
    return _two_draws(lambda r: minpoly_in_quotient(_finite_fiber(F, r)[0], u).total_degree(),
                      random.Random(seed), f"degree of x{j + 1}^{m}")


def minpoly_rules(F: PolyMap, d: Sequence[int] | None = None, seed: int = 0,
                  max_power: int = 3) -> list:
    """Every minimal-polynomial rule whose hypothesis holds, with evidence.

    ``d`` are the measured ``d_i`` (computed when omitted). Returned in the
    order classify tries them; the list can be empty.
    """
    _require_keller(F)
    n = F.n
    if d is None:
        d = [coordinate_minpoly(F, i, seed + i + 1).degree for i in range(n)]
    d = list(d)
    out = []
    small = [j for j in range(n) if d[j] <= 2]
    if len(small) >= n - 1:
        out.append((Rule.MINPOLY_QUADRATIC, {"d": d, "indices": [j + 1 for j in small]}))
    else:
        powers = {}
        for j in range(n):
            if d[j] <= 2:
                powers[j] = 1
                continue
            for m in range(2, max_power + 1):
                if power_minpoly_degree(F, j, m, seed) <= 2:
                    powers[j] = m
                    break
        if len(powers) >= n - 1:
            out.append((Rule.MINPOLY_POWER, {"d": d, "m": {j + 1: m for j, m in powers.items()}}))
    if n == 2:
        g = gcd(d[0], d[1])
        if g == 1:
            out.append((Rule.MINPOLY_GCD_2D, {"d": d, "gcd": 1}))
        elif g == 2:
            out.append((Rule.MINPOLY_GCD_LE2_2D, {"d": d, "gcd": 2}))
        if g == 1 or _is_prime(g) or _is_prime(d[0]) or _is_prime(d[1]):
            try:
                sym = check_exchange_symmetry(F)
            except UnsupportedError:
                sym = None
            if sym is not None and sym.uniform and sym.conjugate_contained:
                out.append((Rule.MINPOLY_SYMMETRIC_PRIME_2D,
                            {"d": d, "tags": sym.tags, "gcd": g}))
    if all(gcd(d[u], d[v]) == 1 for u, v in combinations(range(n), 2)):
        if n > 2 or not out:
            out.append((Rule.MINPOLY_GCD_N, {"d": d}))
    return out


def classify(F: PolyMap, seed: int = 0) -> Certificate:
    """First rule that certifies ``F`` as an automorphism.

    Order: coordinate-degree rules, then ``D = 1``, then the rules driven
    by minimal-polynomial degrees. Whatever fires is confirmed by inversion;
    a rule firing on a map that does not invert raises
    :class:`InternalInconsistency`.
    """
    _require_keller(F)
    inv = invert(F)
    hit = _degree_rule(F)
    if hit is None:
        D = extension_degree(F, seed)
        if D == 1:
            hit = Rule.KELLER_BIRATIONAL, {"D": 1}
        else:
            rules = minpoly_rules(F, seed=seed)
            if rules:
                rule, ev = rules[0]
                hit = rule, dict(ev, D=D)
    if hit is None:
        return Certificate(Rule.NONE, {"inverted": inv is not None}, inv is not None)
    rule, evidence = hit
    if F.n == 2:
        evidence = dict(evidence, zhang_bound=min(F.degrees()))
    return _certify(rule, evidence, inv)


# -- coordinate recovery -------------------------------------------------------

def _as_y(v, n) -> Polynomial:
    if isinstance(v, MembershipWitness):
        v = v.expression
    if isinstance(v, Polynomial):
        if v.nvars != n:
            raise InputError(f"coefficient must be a polynomial in {n} variables y1..y{n}")
        return v
    return Polynomial.constant(n, v)


@dataclass(frozen=True)
class AnnihilatorInput:
    """Relation ``a u^2 + b u + c = 0`` (or a cubic with ``d``) for ``u = x_j^m``.

    Coefficients are polynomials in ``y_1..y_n`` standing for ``F_1..F_n``
    (plain numbers and :class:`MembershipWitness` objects are accepted).
    ``j`` is 0-based.
    """

    j: int
    a: object
    b: object
    c: object
    d: object = None
    m: int = 1

    @property
    def is_cubic(self) -> bool:
        return self.d is not None

    def coefficients(self, F: PolyMap):
        vals = [self.a, self.b, self.c] + ([self.d] if self.is_cubic else [])
        return [_as_y(v, F.n).substitute(F.coords) for v in vals]

    def unknown(self, F: PolyMap) -> Polynomial:
        return Polynomial.variable(F.n, self.j) ** self.m

    def holds(self, F: PolyMap, coeffs=None) -> bool:
        if coeffs is None:
            coeffs = self.coefficients(F)
        u = self.unknown(F)
        acc = Polynomial.zero(F.n)
        for k in coeffs:
            acc = acc * u + k
        return not acc


def _check_input(F, inp):
    if not 0 <= inp.j < F.n:
        raise InputError("coordinate index out of range")
    if inp.m < 1:
        raise InputError("exponent m must be positive")
    coeffs = inp.coefficients(F)
    if all(not k for k in coeffs):
        raise InputError("degenerate relation: every coefficient is zero")
    return coeffs


def _finish(F, inp, u):
    """``u`` is the solved value of ``x_j^m``; return the witness for ``x_j``."""
    w = subalgebra_membership(u, F)
    if w is None:
        return None
    if inp.m == 1:
        return w
    # the root closedness step: from x_j^m in Q[F] to x_j itself
    xj = Polynomial.variable(F.n, inp.j)
    root = u.nth_root(inp.m)
    if root is None or (root != xj and -root != xj):
        return None
    return subalgebra_membership(xj, F)


def _pick_root(candidates, target):
    for num, den in candidates:
        try:
            u = num.divide_exact(den)
        except ArithmeticError:
            continue
        if u == target:
            return u
    return None


def recover_coordinate_quadratic(F: PolyMap, inp: AnnihilatorInput):
    """Complete the square in ``a u^2 + b u + c = 0`` and read ``x_j`` off Q[F].

    With ``s = b^2/4 - ac`` a perfect square ``r^2`` in Q[x], the root
    ``u = (r - b/2)/a`` (the sign is the one matching ``x_j^m``) is tested
    for membership in Q[F]. Returns the witness for ``x_j`` or ``None``.
    Runs on any map; only for Keller maps is the outcome a theorem.
    """
    if inp.is_cubic:
        raise InputError("quadratic recovery needs a relation without a cubic term")
    coeffs = _check_input(F, inp)
    a, b, c = coeffs
    if not inp.holds(F, coeffs):
        raise InputError("annihilating relation does not hold")
    u = inp.unknown(F)
    if not a:
        if not b:
            raise InputError("degenerate relation: constant non-zero")
        got = _pick_root([(-c, b)], u)
    else:
        s = b * b * Fraction(1, 4) - a * c
        r = s.nth_root(2)
        if r is None:
            return None
        half = b * Fraction(1, 2)
        got = _pick_root([(r - half, a), (-r - half, a)], u)
    if got is None:
        return None
    return _finish(F, inp, got)


def recover_coordinate_cubic_special(F: PolyMap, inp: AnnihilatorInput):
    """Complete the cube when ``b^2 = 3ac``: ``(a u + b/3)^3 = b^3/27 - a^2 d``.

    The general cubic (``ac - b^2/3 != 0``) raises :class:`NotSupportedError`.
    """
    if not inp.is_cubic:
        raise InputError("cubic recovery needs the coefficient d")
    coeffs = _check_input(F, inp)
    a, b, c, d = coeffs
    eps = a * c - b * b * Fraction(1, 3)
    if eps:
        raise NotSupportedError("general cubic relation (ac - b^2/3 != 0) is not supported")
    if not inp.holds(F, coeffs):
        raise InputError("annihilating relation does not hold")
    u = inp.unknown(F)
    if not a:
        # b = 0 as well, so the relation is linear
        if not c:
            raise InputError("degenerate relation: constant non-zero")
        got = _pick_root([(-d, c)], u)
    else:
        s = b ** 3 * Fraction(1, 27) - a * a * d
        r = s.nth_root(3)
        if r is None:
            return None
        got = _pick_root([(r - b * Fraction(1, 3), a)], u)
    if got is None:
        return None
    return _finish(F, inp, got)


def _annihilator(F, j, dj):
    """A verified relation of degree ``dj`` for ``x_j`` over Q[F]."""
    n = F.n
    if dj == 1:
        w = subalgebra_membership(Polynomial.variable(n, j), F)
        if w is None:
            raise InternalInconsistency(f"x{j + 1} has degree 1 over Q(F) but is not in Q[F]")
        return AnnihilatorInput(j, 0, 1, -w.expression)
    try:
        sym = symbolic_minpoly(F, j)
    except UnsupportedError:
        raise UnsupportedError("quadratic relations over Q[F] are only derived for n <= 2") from None
    parts = sym.coefficients_in(n)
    coeffs = [parts.get(k, Polynomial.zero(n + 1)).restrict(list(range(n))) for k in (2, 1, 0)]
    return AnnihilatorInput(j, *coeffs)


def formanek_adjunction(F: PolyMap, seed: int = 0) -> Certificate:
    """Recover ``n - 1`` coordinates from relations of degree at most 2.

    When ``d_j <= 2`` for ``n - 1`` indices, each such ``x_j`` is recovered
    as a member of Q[F]; adjoining the missing coordinate then generates
    Q[x], which certifies ``F``.
    """
    _require_keller(F)
    n = F.n
    d = [coordinate_minpoly(F, i, seed + i + 1).degree for i in range(n)]
    small = [j for j in range(n) if d[j] <= 2]
    if len(small) < n - 1:
        return Certificate(Rule.NONE, {"d": d})
    chosen = small[:n - 1] if len(small) == n else small
    recovered = {}
    for j in chosen:
        w = recover_coordinate_quadratic(F, _annihilator(F, j, d[j]))
        if w is None:
            raise InternalInconsistency(f"coordinate x{j + 1} could not be recovered")
        recovered[j + 1] = w
    adjoined = next(k for k in range(n) if k not in chosen) + 1 if n > 1 else None
    inv = invert(F)
    return _certify(Rule.FORMANEK_ADJUNCTION,
                    {"d": d, "recovered": recovered, "adjoined": adjoined}, inv)


# -- exchange involution -------------------------------------------------------

def symmetry_tag(p: Polynomial) -> str:
    """``symmetric``, ``skew`` or ``neither`` under ``x1 <-> x2``."""
    if p.nvars != 2:
        raise PreconditionError("the exchange involution is defined for two variables")
    q = p.permute_variables([1, 0])
    if q == p:
        return "symmetric"
    if q == -p:
        return "skew"
    return "neither"


@dataclass(frozen=True)
class SymmetryReport:
    """Tags of the minimal polynomial coefficients of ``x1`` over Q[F1, F2]."""

    minpoly: Polynomial
    coefficients: dict
    tags: dict
    conjugate_contained: bool

    @property
    def uniform(self) -> bool:
        """All coefficients symmetric, or all skew."""
        kinds = set(self.tags.values())
        return kinds in ({"symmetric"}, {"skew"})


def check_exchange_symmetry(F: PolyMap) -> SymmetryReport:
    if F.n != 2:
        raise PreconditionError("exchange symmetry is defined for n = 2")
    if not is_dominant(F):
        raise PreconditionError("map is not dominant")
    mp = symbolic_minpoly(F, 0)
    parts = mp.coefficients_in(2)
    coeffs = {}
    tags = {}
    x2 = Polynomial.variable(2, 1)
    acc = Polynomial.zero(2)
    for k in sorted(parts):
        ck = parts[k].restrict([0, 1]).substitute(F.coords)
        coeffs[k] = ck
        tags[k] = symmetry_tag(ck)
        acc = acc + ck * x2 ** k
    return SymmetryReport(mp, coeffs, tags, not acc)


# -- degree-one component in dimension two --------------------------------------

@dataclass(frozen=True)
class CMWDecomposition:
    """``F_2 = g_2 + sum_i c[i] * F_1^i`` with ``g = (F_1, g_2)`` affine."""

    g: PolyMap
    c: tuple

    def reconstruct(self) -> Polynomial:
        f1 = self.g[0]
        acc = Polynomial.zero(2)
        for ci in reversed(self.c):
            acc = acc * f1 + ci
        return self.g[1] + acc


def cmw_decompose_2d(F: PolyMap) -> CMWDecomposition:
    _require_keller(F)
    if F.n != 2:
        raise PreconditionError("decomposition is defined for n = 2")
    f1, f2 = F.coords
    if f1.total_degree() != 1:
        raise PreconditionError("first coordinate must be affine of degree 1")
    alpha = f1.coeff((1, 0))
    beta = f1.coeff((0, 1))
    J = F.jacobian().constant_value()
    if alpha:
        gamma, delta = Fraction(0), Fraction(J) / alpha
    else:
        gamma, delta = -Fraction(J) / beta, Fraction(0)
    x1, x2 = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    g2 = x1 * gamma + x2 * delta
    h = f2 - g2
    w = subalgebra_membership(h, [f1])
    if w is None:
        raise InternalInconsistency("F2 - g(x2) is not a polynomial in F1")
    expr = w.expression
    top = max(expr.total_degree(), 0)
    c = tuple(expr.coeff((i,)) for i in range(top + 1))
    dec = CMWDecomposition(PolyMap((f1, g2)), c)
    if dec.reconstruct() != f2:
        raise InternalInconsistency("reconstruction of F2 failed")
    return dec


# -- conjecture predicates -----------------------------------------------------

@dataclass(frozen=True)
class DegreeCheck:
    n: int
    d: int
    D: int
    bound: int
    holds: bool
    keller: bool

    @property
    def out_of_hypothesis(self) -> bool:
        return not self.keller

    def as_dict(self):
        return {"n": self.n, "d": self.d, "D": self.D, "bound": self.bound,
                "holds": self.holds, "keller": self.keller,
                "out_of_hypothesis": self.out_of_hypothesis}


def degree_conjecture_check(F: PolyMap, seed: int = 0) -> DegreeCheck:
    """Compare ``D`` with ``d^(n-1)``, ``d`` the smallest coordinate degree.

    Non-Keller maps run too and are flagged out of hypothesis.
    """
    if not is_dominant(F):
        raise PreconditionError("map is not dominant")
    d = min(c.total_degree() for c in F.coords if c)
    D = extension_degree(F, seed)
    bound = d ** (F.n - 1)
    return DegreeCheck(F.n, d, D, bound, D <= bound, is_keller(F))


@dataclass(frozen=True)
class GcdCheck:
    degrees: tuple
    gcds: dict
    applicable: bool
    automorphism_confirmed: bool

    def as_dict(self):
        return {"degrees": list(self.degrees), "gcds": dict(self.gcds),
                "applicable": self.applicable,
                "automorphism_confirmed": self.automorphism_confirmed}


def gcd_conjecture_check(F: PolyMap) -> GcdCheck:
    """Pairwise gcds of coordinate degrees; inversion decides when all are 1."""
    _require_keller(F)
    l = F.degrees()
    gcds = {f"{u + 1},{v + 1}": gcd(l[u], l[v]) for u, v in combinations(range(F.n), 2)}
    applicable = all(g == 1 for g in gcds.values())
    confirmed = False
    if applicable:
        confirmed = invert(F) is not None
        if not confirmed:
            rec = GcdCheck(l, gcds, True, False)
            raise CounterexampleCandidate("coprime degrees but the map does not invert",
                                          rec.as_dict())
    return GcdCheck(l, gcds, applicable, confirmed)


def minpoly_gcd_criterion(F: PolyMap, seed: int = 0) -> Certificate:
    """The gcd rules on ``d_i``; ``NONE`` when none applies."""
    _require_keller(F)
    n = F.n
    d = [coordinate_minpoly(F, i, seed + i + 1).degree for i in range(n)]
    if n == 2 and d[0] != d[1]:
        raise InternalInconsistency(f"Keller map in two variables with d1={d[0]} != d2={d[1]}")
    rule = Rule.NONE
    if n == 2:
        g = gcd(*d)
        if g == 1:
            rule = Rule.MINPOLY_GCD_2D
        elif g == 2:
            rule = Rule.MINPOLY_GCD_LE2_2D
    elif all(gcd(d[u], d[v]) == 1 for u, v in combinations(range(n), 2)):
        rule = Rule.MINPOLY_GCD_N
    if rule in (Rule.MINPOLY_GCD_2D, Rule.MINPOLY_GCD_N) and any(k != 1 for k in d):
        raise InternalInconsistency(f"coprime minimal polynomial degrees {d} but not all 1")
    inv = invert(F)
    if rule is Rule.NONE:
        return Certificate(rule, {"d": d}, inv is not None)
    return _certify(rule, {"d": d}, inv)

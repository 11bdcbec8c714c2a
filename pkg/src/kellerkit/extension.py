"""Field-theoretic measurements of a polynomial map.

Degrees over Q(F) are measured on generic fibres: for a dominant map the
fibre over a generic value has exactly ``[Q(x) : Q(F)]`` points, and the
coordinate ``x_i`` takes ``d_i`` distinct values on it. Every random
measurement is repeated (two agreeing draws, a third to arbitrate) with
values drawn from ``[-10^4, 10^4]`` by a seeded ``random.Random``.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .endo import PolyMap, graph_basis
from .errors import (DegenerateSampleError, PreconditionError, UnsupportedError)
from .groebner import (INFINITE, MonomialOrder, buchberger, minpoly_in_quotient,
                       quotient_dimension)
from .polycore import Polynomial, format_polynomial

__all__ = [
    "SAMPLE_RANGE",
    "ExtensionReport",
    "MembershipWitness",
    "CoordinateMinpoly",
    "FormanekResult",
    "RootClosure",
    "is_dominant",
    "fiber_basis",
    "extension_degree",
    "coordinate_minpoly",
    "symbolic_minpoly",
    "verify_formanek",
    "subalgebra_membership",
    "root_closure_check",
    "tower_degree",
    "extension_report",
]

SAMPLE_RANGE = 10_000
_RESAMPLE = 6
SYMBOLIC_MAX_N = 2
SYMBOLIC_MAX_DEGREE = 6


def _draw(rng, k):
    return [rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE) for _ in range(k)]


def is_dominant(F: PolyMap) -> bool:
    """Non-zero Jacobian determinant (the coordinates are algebraically independent)."""
    return bool(F.jacobian())


def _require_dominant(F):
    if not is_dominant(F):
        raise PreconditionError("map is not dominant (Jacobian determinant is zero)")


def _two_draws(measure: Callable[[random.Random], object], rng, what):
    a = measure(rng)
    b = measure(rng)
    if a == b:
        return a
    c = measure(rng)
    if c in (a, b):
        return c
    raise DegenerateSampleError(f"{what}: three draws disagree ({a}, {b}, {c})")


def fiber_basis(F: PolyMap, value: Sequence, extra: Sequence[Polynomial] = ()):
    """Reduced grevlex basis of ``(F_1 - c_1, ..., F_n - c_n, *extra)``."""
    gens = [f - c for f, c in zip(F.coords, value)] + list(extra)
    return buchberger(gens, MonomialOrder.grevlex(F.n))


def _finite_fiber(F, rng, extra_fn=None, point_fibre=False):
    """Draw a value (or a point and its image) until the fibre is finite."""
    for _ in range(_RESAMPLE):
        if point_fibre:
            x0 = _draw(rng, F.n)
            value = [f.evaluate(x0) for f in F.coords]
        else:
            x0 = None
            value = _draw(rng, F.n)
        extra = extra_fn(x0) if extra_fn else ()
        G = fiber_basis(F, value, extra)
        if quotient_dimension(G) != INFINITE:
            return G, value, x0
    raise DegenerateSampleError("fibre stayed infinite for every sampled value")


def extension_degree(F: PolyMap, seed: int = 0) -> int:
    """``[Q(x) : Q(F)]`` as the generic fibre cardinality."""
    _require_dominant(F)
    rng = random.Random(seed)
    return _two_draws(lambda r: quotient_dimension(_finite_fiber(F, r)[0]), rng,
                      "extension degree")


@dataclass(frozen=True)
class CoordinateMinpoly:
    """Measured degree ``d_i`` of ``x_i`` over Q(F).

    ``specialized`` is the minimal polynomial of ``x_i`` on the fibre over
    ``value``; ``symbolic`` (when computed) is the generator of the
    elimination ideal in ``Q[t_1..t_n, T]``.
    """

    index: int
    degree: int
    specialized: Polynomial
    value: tuple
    symbolic: Polynomial | None = None
    strategy: str = "specialization"


def coordinate_minpoly(F: PolyMap, i: int, seed: int = 0, symbolic: bool | None = None):
    """Degree of the minimal polynomial of ``x_{i+1}`` over Q(F_1..F_n).

    ``i`` is 0-based. ``symbolic=None`` runs the parameter elimination path
    as a cross-check whenever the map is small enough for it.
    """
    _require_dominant(F)
    if not 0 <= i < F.n:
        raise PreconditionError("coordinate index out of range")
    rng = random.Random(seed)
    xi = Polynomial.variable(F.n, i)
    results = {}

    def measure(r):
        G, value, _ = _finite_fiber(F, r)
        mp = minpoly_in_quotient(G, xi)
        deg = mp.total_degree()
        results.setdefault(deg, (mp, tuple(value)))
        return deg

    d = _two_draws(measure, rng, f"minimal polynomial degree of x{i + 1}")
    mp, value = results[d]
    sym = None
    strategy = "specialization"
    small = F.n <= SYMBOLIC_MAX_N and F.degree() <= SYMBOLIC_MAX_DEGREE
    if symbolic or (symbolic is None and small):
        sym = symbolic_minpoly(F, i)
        if sym.degree_in(F.n) != d:
            from .errors import InternalInconsistency

            raise InternalInconsistency(
                f"symbolic degree {sym.degree_in(F.n)} != specialized degree {d}")
        strategy = "specialization+symbolic"
    return CoordinateMinpoly(i, d, mp, value, sym, strategy)


def symbolic_minpoly(F: PolyMap, i: int) -> Polynomial:
    """Minimal polynomial of ``x_{i+1}`` over Q[F] with parameters.

    Eliminates every ``x_k`` (k != i) from ``(F_j(x) - t_j)``. The result
    lives in ``n + 1`` variables ``(t_1, .., t_n, T)`` and is primitive
    with integer coefficients. Limited to small maps.
    """
    n = F.n
    if n > SYMBOLIC_MAX_N or F.degree() > SYMBOLIC_MAX_DEGREE:
        raise UnsupportedError("symbolic elimination limited to n <= 2 and degree <= 6")
    total = 2 * n
    xs = list(range(n))
    gens = [Polynomial.variable(total, n + j) - f.embed(total, xs)
            for j, f in enumerate(F.coords)]
    drop = [k for k in range(n) if k != i]
    G = buchberger(gens, MonomialOrder.block(total, drop))
    dropped = set(drop)
    cands = [g for g in G.generators if not (g.variables() & dropped) and g.degree_in(i) > 0]
    if not cands:
        raise UnsupportedError("elimination produced no relation for the coordinate")
    g = min(cands, key=lambda p: (p.degree_in(i), len(p)))
    # reorder variables to (t_1..t_n, T)
    keep = list(range(n, total)) + [i]
    return g.restrict(keep).primitive()


@dataclass(frozen=True)
class MembershipWitness:
    """``expression`` in fresh variables ``y_1..y_m`` with ``expression(F) == target``."""

    expression: Polynomial
    generators: tuple
    target: Polynomial

    def verify(self) -> bool:
        return self.expression.substitute(self.generators) == self.target

    def __str__(self):
        names = [f"y{j + 1}" for j in range(self.expression.nvars)]
        return format_polynomial(self.expression, names)


def subalgebra_membership(h: Polynomial, F) -> MembershipWitness | None:
    """Write ``h`` as a polynomial in the generators, or return ``None``.

    ``F`` may be a :class:`PolyMap` or any sequence of polynomials in the
    same ring as ``h``.
    """
    gens = tuple(F.coords if isinstance(F, PolyMap) else F)
    if not gens:
        raise PreconditionError("no generators")
    n = gens[0].nvars
    if h.nvars != n:
        raise PreconditionError("polynomial and generators live in different rings")
    m = len(gens)
    G = graph_basis(gens)
    nf = G.normal_form(h.embed(n + m, list(range(n))))
    ys = list(range(n, n + m))
    if not nf.variables() <= set(ys):
        return None
    w = MembershipWitness(nf.restrict(ys), gens, h)
    if not w.verify():
        from .errors import InternalInconsistency

        raise InternalInconsistency("membership witness failed substitution check")
    return w


@dataclass(frozen=True)
class FormanekResult:
    """Outcome of checking ``Q(F, x_1..x_{n-1}) == Q(x)``.

    ``relation`` (when found) is ``A * x_n + B`` in variables
    ``(x_1..x_n, t_1..t_n)`` with ``A, B`` free of ``x_n``; substituting
    ``t = F(x)`` gives zero while ``A`` stays non-zero, so
    ``x_n = -B / A`` over ``Q(F, x_1..x_{n-1})``.
    """

    ok: bool
    degree: int
    relation: Polynomial | None = None

    def __bool__(self):
        return self.ok

    def witness_text(self):
        if self.relation is None:
            return None
        n = self.relation.nvars // 2
        parts = self.relation.coefficients_in(n - 1)
        names = [f"x{k + 1}" for k in range(n)] + [f"F{k + 1}" for k in range(n)]
        a = format_polynomial(parts.get(1, Polynomial.zero(2 * n)), names)
        b = format_polynomial(-parts.get(0, Polynomial.zero(2 * n)), names)
        if a == "1":
            return f"x{n} = {b}"
        return f"x{n} = ({b}) / ({a})"

    def check_relation(self, F: PolyMap) -> bool:
        if self.relation is None:
            return False
        n = F.n
        images = [Polynomial.variable(n, k) for k in range(n)] + list(F.coords)
        parts = self.relation.coefficients_in(n - 1)
        if set(parts) - {0, 1} or 1 not in parts:
            return False
        return (not self.relation.substitute(images)
                and bool(parts[1].substitute(images)))


def verify_formanek(F: PolyMap, seed: int = 0, witness: bool = True) -> FormanekResult:
    """Is ``x_n`` of degree 1 over ``Q(F_1..F_n, x_1..x_{n-1})``?

    The degree is measured on the fibre of ``x -> (F(x), x_1..x_{n-1})``
    through a random integer point. When it is 1 and ``witness`` is set, an
    explicit relation ``A x_n + B`` is extracted from a Groebner basis.
    """
    _require_dominant(F)
    n = F.n
    rng = random.Random(seed)
    xn = Polynomial.variable(n, n - 1)

    def extra(x0):
        return [Polynomial.variable(n, k) - x0[k] for k in range(n - 1)]

    def measure(r):
        G, _, _ = _finite_fiber(F, r, extra, point_fibre=True)
        return minpoly_in_quotient(G, xn).total_degree()

    deg = _two_draws(measure, rng, "Formanek degree")
    if deg != 1:
        return FormanekResult(False, deg)
    relation = _formanek_relation(F) if witness else None
    return FormanekResult(True, 1, relation)


def _formanek_relation(F: PolyMap):
    n = F.n
    total = 2 * n
    # the graph basis lives in (x_1..x_n, y_1..y_n), the same layout as (x, t);
    # for automorphisms it already holds x_n - G_n(t)
    for g in graph_basis(F.coords).generators:
        if g.degree_in(n - 1) == 1 and FormanekResult(True, 1, g).check_relation(F):
            return g
    xs = list(range(n))
    gens = [Polynomial.variable(total, n + j) - f.embed(total, xs)
            for j, f in enumerate(F.coords)]
    B = buchberger(gens, MonomialOrder.block(total, [n - 1]))
    for g in sorted(B.generators, key=len):
        if g.degree_in(n - 1) == 1 and FormanekResult(True, 1, g).check_relation(F):
            return g
    return None


class RootClosure(enum.Enum):
    CONSISTENT = "CONSISTENT"
    VIOLATION = "VIOLATION"


def root_closure_check(g: Polynomial, m: int, F: PolyMap) -> RootClosure:
    """``g^m`` in Q[F] but ``g`` not in Q[F] would contradict root closedness."""
    from .endo import is_keller

    if m < 1:
        raise PreconditionError("m must be at least 1")
    if not is_keller(F):
        raise PreconditionError("root closedness is only claimed for Keller maps")
    power_in = subalgebra_membership(g ** m, F) is not None
    if not power_in:
        return RootClosure.CONSISTENT
    return RootClosure.CONSISTENT if subalgebra_membership(g, F) is not None \
        else RootClosure.VIOLATION


def tower_degree(F: PolyMap, i: int, seed: int = 0) -> int:
    """``[Q(x) : Q(F, x_{i+1})]`` by counting the fibre with ``x_{i+1}`` fixed."""
    _require_dominant(F)
    n = F.n
    rng = random.Random(seed)

    def extra(x0):
        return [Polynomial.variable(n, i) - x0[i]]

    return _two_draws(
        lambda r: quotient_dimension(_finite_fiber(F, r, extra, point_fibre=True)[0]),
        rng, f"tower degree at x{i + 1}")


@dataclass
class ExtensionReport:
    """Degree data of a dominant map."""

    D: int
    d: tuple
    formanek_ok: bool
    witness: str | None = None
    notes: dict = field(default_factory=dict)

    def as_dict(self):
        return {"D": self.D, "d": list(self.d), "formanek_ok": self.formanek_ok,
                "witness": self.witness, "notes": dict(self.notes)}


def extension_report(F: PolyMap, seed: int = 0, witness: bool = True) -> ExtensionReport:
    D = extension_degree(F, seed)
    mins = [coordinate_minpoly(F, i, seed + i + 1) for i in range(F.n)]
    form = verify_formanek(F, seed, witness=witness)
    notes = {"D": "fibre count, two-draw agreement"}
    for m in mins:
        notes[f"d{m.index + 1}"] = m.strategy
    return ExtensionReport(D, tuple(m.degree for m in mins), form.ok, form.witness_text(), notes)

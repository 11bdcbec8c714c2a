"""Polynomial endomorphisms of Q[x1..xn]: Keller test, inversion, generators.

Composition convention: ``compose(F, G)`` substitutes ``G`` into the
coordinates of ``F``, i.e. ``compose(F, G)[i] == F[i](G[0], ..., G[n-1])``.
This is ``F o G`` as maps of affine space, so the chain rule reads
``jac(F o G) = jac(F)(G) * jac(G)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (GeneratorBudgetError, InternalInconsistency, ParseError,
                     PreconditionError, StructuralError)
from .groebner import DEFAULT_MAX_PAIRS, GroebnerBasis, MonomialOrder, buchberger
from .polycore import Polynomial, format_polynomial, jacobian_det, parse_polynomial

__all__ = [
    "PolyMap",
    "GeneratorSpec",
    "FAMILIES",
    "is_keller",
    "compose",
    "invert",
    "graph_basis",
    "make_monic_in_last",
    "is_monic_in",
    "generic_linear_compose",
    "generate_family",
    "druzkowski_corank",
    "parse_map",
    "format_map",
]

FAMILIES = ("triangular", "affine", "composed", "druzkowski", "lang_maslamani", "essen_form")


@dataclass(frozen=True)
class PolyMap:
    """An n-tuple of polynomials in n variables, ``x_i -> coords[i]``."""

    coords: tuple
    provenance: dict | None = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        coords = tuple(self.coords)
        if not coords:
            raise StructuralError("a map needs at least one coordinate")
        n = len(coords)
        for c in coords:
            if not isinstance(c, Polynomial):
                raise TypeError("coordinates must be Polynomial instances")
            if c.nvars != n:
                raise StructuralError(
                    f"coordinate has {c.nvars} variables, expected {n}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def identity(cls, n):
        return cls(tuple(Polynomial.variable(n, i) for i in range(n)))

    @classmethod
    def from_strings(cls, texts: Sequence[str], provenance=None):
        n = len(texts)
        return cls(tuple(parse_polynomial(t, n) for t in texts), provenance)

    @property
    def n(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def degrees(self) -> tuple:
        return tuple(c.total_degree() for c in self.coords)

    def degree(self) -> int:
        return max(self.degrees())

    def jacobian(self) -> Polynomial:
        return jacobian_det(self.coords)

    def is_identity(self) -> bool:
        return self == PolyMap.identity(self.n)

    def with_provenance(self, provenance):
        return PolyMap(self.coords, provenance)

    def __str__(self):
        return format_map(self)


def is_keller(F: PolyMap) -> bool:
    """True iff the Jacobian determinant is a non-zero constant."""
    j = F.jacobian()
    return bool(j) and j.is_constant()


def compose(F: PolyMap, G: PolyMap) -> PolyMap:
    if F.n != G.n:
        raise StructuralError(f"cannot compose maps of dimension {F.n} and {G.n}")
    return PolyMap(tuple(f.substitute(G.coords) for f in F.coords))


# -- graph ideal ---------------------------------------------------------------

@lru_cache(maxsize=256)
def _graph_basis(gens: tuple, max_pairs: int) -> GroebnerBasis:
    n = gens[0].nvars
    m = len(gens)
    total = n + m
    xs = list(range(n))
    polys = []
    for j, g in enumerate(gens):
        y = Polynomial.variable(total, n + j)
        polys.append(y - g.embed(total, xs))
    return buchberger(polys, MonomialOrder.block(total, xs), max_pairs=max_pairs)


def graph_basis(gens: Iterable[Polynomial], max_pairs: int = DEFAULT_MAX_PAIRS) -> GroebnerBasis:
    """Reduced basis of ``(y_j - g_j(x))`` in Q[x, y] under a block order with x > y.

    Variables ``0..n-1`` are the x's and ``n..n+m-1`` the y's. Results are
    cached per generator tuple.
    """
    gens = tuple(gens)
    if not gens:
        raise StructuralError("no generators")
    return _graph_basis(gens, max_pairs)


def invert(F: PolyMap, max_pairs: int = DEFAULT_MAX_PAIRS):
    """Inverse map if ``F`` is an automorphism, else ``None``.

    Reads ``x_i - G_i(y)`` off the reduced graph basis and verifies both
    compositions against the identity.
    """
    n = F.n
    G = graph_basis(F.coords, max_pairs)
    images = [None] * n
    ys = list(range(n, 2 * n))
    for g in G.generators:
        lead = G.order.leading(g)
        if sum(lead) == 1 and lead.index(1) < n:
            i = lead.index(1)
            rest = g - Polynomial.variable(2 * n, i)
            if rest.variables() <= set(ys):
                images[i] = -rest.restrict(ys)
    if any(im is None for im in images):
        if is_keller(F):
            from .extension import extension_degree

            if extension_degree(F) == 1:
                raise InternalInconsistency(
                    "Keller map with extension degree 1 but no inverse found")
        return None
    inv = PolyMap(tuple(images))
    ident = PolyMap.identity(n)
    if compose(F, inv) != ident or compose(inv, F) != ident:
        raise InternalInconsistency("inverse read from the graph basis does not verify")
    return inv


# -- normalization automorphisms ----------------------------------------------

def is_monic_in(p: Polynomial, i: int) -> bool:
    """Leading coefficient in ``x_{i+1}`` is a non-zero rational constant."""
    if not p:
        return False
    parts = p.coefficients_in(i)
    return parts[max(parts)].is_constant()


def make_monic_in_last(F: PolyMap, exponents: Sequence[int] | None = None):
    """Return ``(F o G, G)`` with ``G(x_i) = x_i + x_n^{m_i}`` for ``i < n``.

    By default ``m_i = (D+1)^i`` where ``D`` is the largest coordinate
    degree; distinct monomials of ``F`` then acquire distinct top powers of
    ``x_n``, so every coordinate of ``F o G`` is monic in ``x_n``.
    """
    n = F.n
    if any(not c for c in F.coords):
        raise PreconditionError("map has a zero coordinate")
    if exponents is None:
        base = max(F.degree(), 0) + 1
        exponents = [base ** (i + 1) for i in range(n - 1)]
    if len(exponents) != n - 1:
        raise StructuralError("need one exponent per variable except the last")
    xn = Polynomial.variable(n, n - 1)
    G = PolyMap(tuple(Polynomial.variable(n, i) + xn ** exponents[i] for i in range(n - 1))
                + (xn,))
    FG = compose(F, G)
    return FG, G


def _random_linear(n, rng):
    return [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]


def _det(rows) -> Fraction:
    m = [[Fraction(v) for v in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for k in range(n):
        piv = next((r for r in range(k, n) if m[r][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for r in range(k + 1, n):
            f = m[r][k] / m[k][k]
            if f:
                for c in range(k, n):
                    m[r][c] -= f * m[k][c]
    return det


def linear_map(rows, shift=None) -> PolyMap:
    """The affine map ``x -> A x + b``."""
    n = len(rows)
    xs = [Polynomial.variable(n, j) for j in range(n)]
    coords = []
    for i, row in enumerate(rows):
        p = Polynomial.constant(n, shift[i] if shift else 0)
        for j, a in enumerate(row):
            if a:
                p = p + xs[j] * Fraction(a)
        coords.append(p)
    return PolyMap(tuple(coords))


def generic_linear_compose(F: PolyMap, seed: int = 0, candidates=None, budget: int = 100):
    """Mix the coordinates of ``F`` by an invertible linear map ``H``.

    Returns ``(M, H)`` where ``M[i] = sum_k H[i][k] * F[k]`` (the map ``H o F``
    in this module's convention). ``H`` is redrawn until ``det H != 0`` and
    every coordinate of ``M`` is still monic in ``x_n``. Matrices from
    ``candidates`` are tried before random ones; at most ``budget`` matrices
    are tried in total.
    """
    n = F.n
    if not all(is_monic_in(c, n - 1) for c in F.coords):
        raise PreconditionError("every coordinate must be monic in the last variable")
    rng = random.Random(seed)
    pool = list(candidates or [])
    for attempt in range(budget):
        rows = pool[attempt] if attempt < len(pool) else _random_linear(n, rng)
        if not _det(rows):
            continue
        H = linear_map(rows)
        M = compose(H, F)
        if all(is_monic_in(c, n - 1) for c in M.coords):
            return M, H
    raise GeneratorBudgetError(f"no suitable linear map in {budget} draws")


def leading_last_coefficients(F: PolyMap):
    """``(m_i, e_i)``: top power of ``x_n`` in each coordinate and its coefficient."""
    out = []
    for c in F.coords:
        parts = c.coefficients_in(F.n - 1)
        m = max(parts)
        lead = parts[m]
        out.append((m, lead.constant_value() if lead.is_constant() else lead))
    return out


# -- generators ----------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorSpec:
    """Deterministic recipe for one generated map."""

    family: str
    seed: int
    n: int = 2
    degree: int = 3
    factors: int = 2
    r: int = 1
    matrix: tuple | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise StructuralError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise StructuralError("n must be positive")
        if self.degree < 1:
            raise StructuralError("degree bound must be positive")

    def as_dict(self):
        d = {"family": self.family, "seed": self.seed, "n": self.n, "degree": self.degree}
        if self.family == "composed":
            d["factors"] = self.factors
        if self.family == "essen_form":
            d["r"] = self.r
        if self.matrix is not None:
            d["matrix"] = [list(map(str, row)) for row in self.matrix]
        return d


_REJECTION_BUDGET = 1000


def _nonzero(rng):
    v = 0
    while not v:
        v = rng.randint(-5, 5)
    return v


def _monomials(n, lo, hi, allowed=None):
    allowed = range(n) if allowed is None else list(allowed)
    out = []

    def rec(pos, left, acc):
        if pos == len(allowed):
            if lo <= sum(acc) <= hi:
                e = [0] * n
                for i, k in zip(allowed, acc):
                    e[i] = k
                out.append(tuple(e))
            return
        for k in range(left + 1):
            rec(pos + 1, left - k, acc + [k])

    rec(0, hi, [])
    out.sort()
    return out


def _triangular(n, degree, rng):
    order = list(range(n))
    rng.shuffle(order)
    coords = [None] * n
    for pos, v in enumerate(order):
        p = Polynomial.variable(n, v) * rng.choice((-1, 1))
        earlier = order[:pos]
        if earlier and degree >= 2:
            mons = _monomials(n, 1, degree, earlier)
            top = [e for e in mons if sum(e) == degree]
            chosen = {rng.choice(top)}
            for _ in range(rng.randint(0, 2)):
                chosen.add(rng.choice(mons))
            for e in sorted(chosen):
                p = p + Polynomial.monomial(e, _nonzero(rng))
        p = p + rng.randint(-5, 5)
        coords[v] = p
    return PolyMap(tuple(coords))


def _affine(n, rng):
    while True:
        rows = [[(_nonzero(rng) if i == j else (rng.randint(-5, 5) if rng.random() < 0.5 else 0))
                 for j in range(n)] for i in range(n)]
        if _det(rows):
            break
    shift = [rng.randint(-5, 5) for _ in range(n)]
    return linear_map(rows, shift)


def _druzkowski(n, rng, matrix=None):
    if matrix is None:
        while True:
            matrix = [[(rng.randint(-5, 5) if j < i and rng.random() < 0.6 else 0)
                       for j in range(n)] for i in range(n)]
            if n < 2 or any(any(row) for row in matrix):
                break
    matrix = [[Fraction(v) for v in row] for row in matrix]
    if any(matrix[i][j] for i in range(n) for j in range(n) if j >= i):
        raise StructuralError("Druzkowski generator needs a strictly lower-triangular matrix")
    lin = linear_map(matrix)
    coords = tuple(Polynomial.variable(n, i) + lin[i] ** 3 for i in range(n))
    return PolyMap(coords), matrix


def _lang_maslamani(n, degree, rng):
    mons = _monomials(n, 2, max(degree, 2))
    for _ in range(_REJECTION_BUDGET):
        lam = [(_nonzero(rng) if rng.random() < 0.5 else 0) for _ in range(n)]
        if not any(lam):
            continue
        F = PolyMap(tuple(Polynomial.variable(n, i) + Polynomial.monomial(rng.choice(mons), lam[i])
                          for i in range(n)))
        if is_keller(F):
            return F
    raise GeneratorBudgetError("lang_maslamani rejection budget exhausted")


def _essen_form(n, r, degree, rng):
    if not 0 <= r <= n:
        raise StructuralError("r must lie in [0, n]")
    mons = _monomials(n, 1, max(degree, 1))
    for _ in range(_REJECTION_BUDGET):
        coords = []
        for i in range(r):
            row = [(rng.randint(-5, 5) if rng.random() < 0.5 else 0) for _ in range(n)]
            coords.append(sum((Polynomial.variable(n, j) * a for j, a in enumerate(row) if a),
                              Polynomial.zero(n)))
        for i in range(r, n):
            coords.append(Polynomial.variable(n, i) + Polynomial.monomial(rng.choice(mons)))
        if any(not c for c in coords):
            continue
        F = PolyMap(tuple(coords))
        if is_keller(F):
            return F
    raise GeneratorBudgetError("essen_form rejection budget exhausted")


def generate_family(spec: GeneratorSpec) -> PolyMap:
    """Build the map described by ``spec``; equal specs give equal maps."""
    rng = random.Random(spec.seed)
    n = spec.n
    extra = {}
    if spec.family == "triangular":
        F = _triangular(n, spec.degree, rng)
    elif spec.family == "affine":
        F = _affine(n, rng)
    elif spec.family == "composed":
        F = PolyMap.identity(n)
        nonlinear_left = 1
        for _ in range(spec.factors):
            if nonlinear_left and rng.random() < 0.6:
                factor = _triangular(n, spec.degree, rng)
                nonlinear_left -= 1
            else:
                factor = _affine(n, rng)
            F = compose(factor, F)
    elif spec.family == "druzkowski":
        F, A = _druzkowski(n, rng, spec.matrix)
        extra["corank"] = druzkowski_corank(A)
        extra["matrix"] = [[str(v) for v in row] for row in A]
    elif spec.family == "lang_maslamani":
        F = _lang_maslamani(n, spec.degree, rng)
    else:
        F = _essen_form(n, spec.r, spec.degree, rng)
    prov = spec.as_dict()
    prov.update(extra)
    return F.with_provenance(prov)


def druzkowski_corank(A) -> int:
    """``n - rank(A)`` by exact elimination over Q."""
    m = [[Fraction(v) for v in row] for row in A]
    n = len(m)
    if any(len(row) != n for row in m):
        raise StructuralError("matrix must be square")
    rank = 0
    col = 0
    rows = m
    for col in range(n):
        piv = next((r for r in range(rank, n) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(n):
            if r != rank and rows[r][col]:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return n - rank


# -- map files -----------------------------------------------------------------

def format_map(F: PolyMap) -> str:
    """Map file text; provenance first as ``# key=value`` lines."""
    lines = []
    if F.provenance:
        for k in sorted(F.provenance):
            lines.append(f"# {k}={_prov_value(F.provenance[k])}")
    lines.append(f"nvars: {F.n}")
    for i, c in enumerate(F.coords):
        lines.append(f"x{i + 1} -> {format_polynomial(c)}")
    return "\n".join(lines) + "\n"


def _prov_value(v):
    if isinstance(v, (list, tuple)):
        return ";".join(_prov_value(x) if not isinstance(x, (list, tuple))
                        else ",".join(map(str, x)) for x in v)
    return str(v)


def parse_map(text: str) -> PolyMap:
    """Inverse of :func:`format_map`; provenance values come back as strings."""
    prov = {}
    n = None
    coords = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                k, v = body.split("=", 1)
                prov[k.strip()] = v.strip()
            continue
        if line.startswith("nvars:"):
            try:
                n = int(line.split(":", 1)[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad nvars") from None
            continue
        if "->" not in line:
            raise ParseError(f"line {lineno}: expected 'xi -> polynomial'")
        if n is None:
            raise ParseError(f"line {lineno}: coordinate before 'nvars:'")
        lhs, rhs = line.split("->", 1)
        lhs = lhs.strip()
        if not (lhs.startswith("x") and lhs[1:].isdigit()):
            raise ParseError(f"line {lineno}: bad variable {lhs!r}")
        i = int(lhs[1:]) - 1
        if not 0 <= i < n or i in coords:
            raise ParseError(f"line {lineno}: coordinate {lhs} out of range or repeated")
        try:
            coords[i] = parse_polynomial(rhs, n)
        except (ParseError, StructuralError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if n is None:
        raise ParseError("missing 'nvars:' line")
    if len(coords) != n:
        raise ParseError(f"expected {n} coordinates, found {len(coords)}")
    return PolyMap(tuple(coords[i] for i in range(n)), prov or None)

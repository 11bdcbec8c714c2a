"""Monomial orders, Buchberger's algorithm and Artinian quotient linear algebra.

Internally every polynomial is an integer dict kept primitive (content 1);
reduction is fraction-free pseudo-division with an explicit scalar
multiplier, so :func:`normal_form` can return the exact rational remainder.
Reduced bases are converted back to monic :class:`Polynomial` objects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _kernels as K
from .errors import BudgetExceeded, StructuralError, UnsupportedError
from .polycore import Polynomial

__all__ = [
    "MonomialOrder",
    "GroebnerBasis",
    "INFINITE",
    "buchberger",
    "normal_form",
    "elimination_ideal",
    "standard_monomials",
    "quotient_dimension",
    "minpoly_in_quotient",
    "DEFAULT_MAX_PAIRS",
    "DEFAULT_MAX_TERMS",
]

INFINITE = math.inf

DEFAULT_MAX_PAIRS = 50_000
DEFAULT_MAX_TERMS = 200_000

_WIDTH = 1 << 24
_OFFSET = 1 << 23


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on ``nvars`` variables.

    ``kind`` is ``"lex"``, ``"grevlex"`` or ``"block"``. A block order
    compares the ``eliminate`` variables first (with the ``inner`` order)
    and breaks ties on the remaining variables (same inner order), which
    gives the elimination property for ``eliminate``.
    """

    kind: str
    nvars: int
    eliminate: tuple = ()
    inner: str = "grevlex"
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise StructuralError(f"unknown order kind {self.kind!r}")
        if self.inner not in ("lex", "grevlex"):
            raise StructuralError(f"unknown inner order {self.inner!r}")
        elim = tuple(sorted(set(self.eliminate)))
        if any(not 0 <= i < self.nvars for i in elim):
            raise StructuralError("eliminated variable out of range")
        object.__setattr__(self, "eliminate", elim)
        keep = tuple(i for i in range(self.nvars) if i not in elim)
        object.__setattr__(self, "_keep", keep)

    @classmethod
    def lex(cls, nvars):
        return cls("lex", nvars)

    @classmethod
    def grevlex(cls, nvars):
        return cls("grevlex", nvars)

    @classmethod
    def block(cls, nvars, eliminate, inner="grevlex"):
        return cls("block", nvars, tuple(eliminate), inner)

    def key(self, e) -> tuple:
        """Tuple sort key; larger key means larger monomial."""
        if self.kind == "lex":
            return tuple(e)
        if self.kind == "grevlex":
            return _grevlex_tuple(e)
        a = [e[i] for i in self.eliminate]
        b = [e[i] for i in self._keep]
        inner = _grevlex_tuple if self.inner == "grevlex" else tuple
        return inner(a) + inner(b)

    def int_key(self, e) -> int:
        """Order-preserving integer encoding of :meth:`key` (cached)."""
        k = self._cache.get(e)
        if k is None:
            k = 0
            for v in self.key(e):
                if not -_OFFSET <= v < _OFFSET:
                    raise BudgetExceeded("exponent too large for key packing")
                k = k * _WIDTH + v + _OFFSET
            self._cache[e] = k
        return k

    def leading(self, p: Polynomial):
        return max(p._terms, key=self.int_key)

    def describe(self) -> str:
        if self.kind == "block":
            return f"block(eliminate={list(self.eliminate)}, inner={self.inner})"
        return self.kind


def _grevlex_tuple(e):
    return (sum(e),) + tuple([-v for v in reversed(e)])


def _to_int(p: Polynomial):
    """Primitive integer dict of ``p`` and the factor ``s`` with ``p = prim / s``."""
    den = 1
    for c in p._terms.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // math.gcd(den, c.denominator)
    ints = {e: int(c * den) for e, c in p._terms.items()}
    return ints, den


def _primitive(d, order):
    g = K.content(d.values())
    lead = max(d, key=order.int_key)
    if d[lead] < 0:
        g = -g
    if g != 1:
        d = {e: c // g for e, c in d.items()}
    return d, lead


class _IntPoly:
    __slots__ = ("terms", "lead", "lc", "tail")

    def __init__(self, terms, lead):
        self.terms = terms
        self.lead = lead
        self.lc = terms[lead]
        self.tail = [(e, c) for e, c in terms.items() if e != lead]


def _reduce(f, basis, order, full, max_terms):
    try:
        return K.reduce_int(f, [b.lead for b in basis], [b.lc for b in basis],
                            [b.tail for b in basis], order.int_key, full, max_terms)
    except OverflowError as exc:
        raise BudgetExceeded(str(exc)) from None


@dataclass(frozen=True)
class GroebnerBasis:
    """A (normally reduced) Groebner basis together with its order."""

    generators: tuple
    order: MonomialOrder
    reduced: bool = True
    _ints: list = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self._ints is None:
            ints = []
            for g in self.generators:
                d, _ = _to_int(g)
                d, lead = _primitive(d, self.order)
                ints.append(_IntPoly(d, lead))
            object.__setattr__(self, "_ints", ints)

    @property
    def nvars(self):
        return self.order.nvars

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def is_unit(self):
        return any(g.is_constant() and g for g in self.generators)

    def leading_monomials(self):
        return [b.lead for b in self._ints]

    def normal_form(self, p: Polynomial, max_terms=DEFAULT_MAX_TERMS) -> Polynomial:
        if p.nvars != self.nvars:
            raise StructuralError("polynomial and basis live in different rings")
        if not p or not self._ints:
            return p
        f, den = _to_int(p)
        rem, mult = _reduce(f, self._ints, self.order, True, max_terms)
        scale = mult * den
        if scale == 1:
            return Polynomial._raw(self.nvars, rem)
        return Polynomial(self.nvars, {e: Fraction(c, scale) for e, c in rem.items()})

    def contains(self, p: Polynomial) -> bool:
        return not self.normal_form(p)

    def to_strings(self):
        return [str(g) for g in self.generators]


def normal_form(p: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Remainder of ``p`` on division by ``G``; zero iff ``p`` is in the ideal."""
    return G.normal_form(p)


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder, *,
               max_pairs: int = DEFAULT_MAX_PAIRS,
               max_terms: int = DEFAULT_MAX_TERMS) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are selected by the lcm in the order, then insertion index (the
    normal strategy; degree-graded for grevlex), and pruned with the Gebauer-Moeller installation of the product
    and chain criteria.
    """
    n = order.nvars
    for g in gens:
        if g.nvars != n:
            raise StructuralError("generator and order have different variable counts")
    ikey = order.int_key
    basis: list[_IntPoly] = []
    active: list[int] = []
    pairs: dict = {}
    counter = 0

    def unit():
        return GroebnerBasis((Polynomial.constant(n, 1),), order)

    def add(h):
        nonlocal counter
        hidx = len(basis)
        basis.append(h)
        hl = h.lead
        cand = []
        for g in active:
            cand.append((g, K.mono_lcm(hl, basis[g].lead)))
        keep = []
        for pos, (g, l1) in enumerate(cand):
            if K.mono_coprime(hl, basis[g].lead):
                keep.append((g, l1))
                continue
            redundant = False
            for g2, l2 in cand[pos + 1:]:
                if K.mono_divides(l2, l1):
                    redundant = True
                    break
            if not redundant:
                for g2, l2 in keep:
                    if K.mono_divides(l2, l1):
                        redundant = True
                        break
            if not redundant:
                keep.append((g, l1))
        for (a, b), info in list(pairs.items()):
            lab = info[-1]
            if (K.mono_divides(hl, lab)
                    and K.mono_lcm(basis[a].lead, hl) != lab
                    and K.mono_lcm(basis[b].lead, hl) != lab):
                del pairs[(a, b)]
        for g, l1 in keep:
            if K.mono_coprime(hl, basis[g].lead):
                continue
            counter += 1
            pairs[(g, hidx)] = (ikey(l1), counter, l1)
        active[:] = [g for g in active if not K.mono_divides(hl, basis[g].lead)]
        active.append(hidx)

    for g in gens:
        if not g:
            continue
        f, _ = _to_int(g)
        if active:
            f, _ = _reduce(f, [basis[i] for i in active], order, True, max_terms)
        if not f:
            continue
        f, lead = _primitive(f, order)
        if not any(lead):
            return unit()
        add(_IntPoly(f, lead))

    processed = 0
    while pairs:
        best = min(pairs, key=pairs.get)
        lab = pairs.pop(best)[-1]
        processed += 1
        if processed > max_pairs:
            raise BudgetExceeded(f"pair budget {max_pairs} exceeded")
        a, b = basis[best[0]], basis[best[1]]
        g = math.gcd(a.lc, b.lc)
        ca, cb = b.lc // g, a.lc // g
        sa = K.mono_div(lab, a.lead)
        sb = K.mono_div(lab, b.lead)
        s = K.poly_add_scaled({}, dict(a.tail), ca, sa)
        s = K.poly_add_scaled(s, dict(b.tail), -cb, sb)
        if not s:
            continue
        h, _ = _reduce(s, [basis[i] for i in active], order, True, max_terms)
        if not h:
            continue
        h, lead = _primitive(h, order)
        if not any(lead):
            return unit()
        add(_IntPoly(h, lead))

    return _interreduce([basis[i] for i in active], order, max_terms)


def _interreduce(polys, order, max_terms):
    n = order.nvars
    # minimal basis: drop elements whose lead is divisible by another lead
    polys = sorted(polys, key=lambda p: order.int_key(p.lead))
    minimal = []
    for p in polys:
        if not any(K.mono_divides(q.lead, p.lead) for q in minimal):
            minimal.append(p)
    out = []
    for i, p in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        tail = dict(p.tail)
        if others and tail:
            tail, mult = _reduce(tail, others, order, True, max_terms)
        else:
            mult = 1
        # p.lc * mult * lead + tail  is the reduced element up to scale
        terms = {e: Fraction(c, p.lc * mult) for e, c in tail.items()}
        terms[p.lead] = 1
        out.append(Polynomial(n, terms))
    out.sort(key=lambda g: order.int_key(order.leading(g)))
    return GroebnerBasis(tuple(out), order)


def elimination_ideal(gens: Sequence[Polynomial], eliminate: Sequence[int], *,
                      max_pairs: int = DEFAULT_MAX_PAIRS) -> list:
    """Generators of ``(gens) ∩ Q[kept variables]`` via a block order."""
    if not gens:
        return []
    n = gens[0].nvars
    order = MonomialOrder.block(n, eliminate)
    G = buchberger(gens, order, max_pairs=max_pairs)
    drop = set(order.eliminate)
    return [g for g in G.generators if not (g.variables() & drop)]


def standard_monomials(G: GroebnerBasis):
    """Monomials outside the leading-term ideal, or ``None`` when infinitely many.

    The quotient is finite-dimensional exactly when every variable has a
    pure power among the leading monomials.
    """
    n = G.nvars
    leads = G.leading_monomials()
    if not leads:
        return None
    start = (0,) * n
    if start in leads:
        return []
    for i in range(n):
        if not any(e[i] > 0 and sum(e) == e[i] for e in leads):
            return None
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for e in frontier:
            for i in range(n):
                m = e[:i] + (e[i] + 1,) + e[i + 1:]
                if m in seen:
                    continue
                if any(K.mono_divides(l, m) for l in leads):
                    continue
                seen.add(m)
                nxt.append(m)
        frontier = nxt
    return sorted(seen, key=G.order.int_key)


def quotient_dimension(G: GroebnerBasis):
    """Vector-space dimension of Q[x]/(G), or :data:`INFINITE`."""
    staircase = standard_monomials(G)
    if staircase is None:
        return INFINITE
    return len(staircase)


def minpoly_in_quotient(G: GroebnerBasis, elem: Polynomial) -> Polynomial:
    """Monic minimal polynomial of ``elem`` acting on Q[x]/(G).

    Returned as a polynomial in one variable (printed ``x1``). Found as the
    first linear dependence among normal forms of ``1, elem, elem^2, ...``
    written in the staircase basis.
    """
    staircase = standard_monomials(G)
    if staircase is None:
        raise UnsupportedError("quotient ring is infinite-dimensional")
    if not staircase:
        return Polynomial.constant(1, 1)
    n = G.nvars
    rows: list[tuple[int, dict, dict]] = []  # (pivot, vector, combination)
    cur = G.normal_form(Polynomial.constant(n, 1))
    for k in range(len(staircase) + 1):
        vec = {e: Fraction(c) for e, c in cur._terms.items()}
        combo = {k: Fraction(1)}
        for piv, rvec, rcombo in rows:
            c = vec.get(piv)
            if c:
                for e, v in rvec.items():
                    w = vec.get(e, 0) - c * v
                    if w:
                        vec[e] = w
                    else:
                        vec.pop(e, None)
                for j, v in rcombo.items():
                    w = combo.get(j, 0) - c * v
                    if w:
                        combo[j] = w
                    else:
                        combo.pop(j, None)
        if not vec:
            return Polynomial(1, {(j,): v for j, v in combo.items()})
        piv = max(vec, key=G.order.int_key)
        inv = 1 / vec[piv]
        rows.append((piv, {e: v * inv for e, v in vec.items()},
                     {j: v * inv for j, v in combo.items()}))
        cur = G.normal_form(cur * elem)
    raise AssertionError("no dependence found within the quotient dimension")

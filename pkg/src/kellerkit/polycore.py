"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` is an immutable map from exponent tuples to non-zero
coefficients. Coefficients are stored as ``int`` when integral and as
:class:`fractions.Fraction` otherwise; both compare and hash consistently.
Terms are printed in descending graded reverse lexicographic order, which
is also the canonical serialization order.
"""

from __future__ import annotations

import re
from math import gcd
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from . import _kernels as K
from .errors import ParseError, StructuralError

__all__ = [
    "Polynomial",
    "parse_polynomial",
    "format_polynomial",
    "grevlex_key",
    "jacobian_matrix",
    "jacobian_det",
    "int_root",
    "rational_root",
]


def _coerce(c):
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not supported")
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def grevlex_key(e):
    """Sort key realizing graded reverse lexicographic order (larger is bigger)."""
    return (sum(e), tuple([-v for v in reversed(e)]))


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables over Q."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        if nvars < 0:
            raise StructuralError("nvars must be non-negative")
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise StructuralError(f"exponent {e} does not have length {nvars}")
                if any(v < 0 for v in e):
                    raise StructuralError("negative exponent")
                c = _coerce(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars, c):
        c = _coerce(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars, i):
        """The variable ``x_{i+1}`` (``i`` is 0-based)."""
        if not 0 <= i < nvars:
            raise StructuralError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps, coeff=1):
        exps = tuple(exps)
        return cls(len(exps), {exps: coeff})

    # -- structure ---------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms in canonical (descending grevlex) order."""
        return sorted(self._terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self) -> Fraction:
        """Constant term as a Fraction."""
        return Fraction(self._terms.get((0,) * self.nvars, 0))

    def coeff(self, exps) -> Fraction:
        return Fraction(self._terms.get(tuple(exps), 0))

    def total_degree(self) -> int:
        """Maximum total degree of a term; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree_in(self, i: int) -> int:
        if not self._terms:
            return -1
        return max(e[i] for e in self._terms)

    def variables(self) -> set:
        """0-based indices of variables that occur."""
        out = set()
        for e in self._terms:
            out.update(i for i, v in enumerate(e) if v)
        return out

    def leading_term(self, key=grevlex_key):
        e = max(self._terms, key=key)
        return e, Fraction(self._terms[e])

    def coefficients_in(self, i: int) -> dict:
        """Split as a polynomial in ``x_{i+1}``: ``{power: coefficient polynomial}``."""
        out: dict[int, dict] = {}
        for e, c in self._terms.items():
            k = e[i]
            rest = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[rest] = c
        return {k: Polynomial._raw(self.nvars, v) for k, v in out.items()}

    def is_integral(self):
        return all(isinstance(c, int) for c in self._terms.values())

    # -- arithmetic --------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise StructuralError(
                    f"mismatched variable counts: {self.nvars} and {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.nvars, _fix(K.poly_add_scaled(
            self._terms, other._terms, 1, (0,) * self.nvars)))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.nvars, _fix(K.poly_add_scaled(
            self._terms, other._terms, -1, (0,) * self.nvars)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _coerce(other)
            if not other:
                return Polynomial.zero(self.nvars)
            return Polynomial._raw(self.nvars,
                                   {e: _coerce(c * other) for e, c in self._terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.nvars, _mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("polynomial division by zero")
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise StructuralError("exponent must be a non-negative int")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self.nvars}, {format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)

    # -- calculus and substitution ----------------------------------------
    def diff(self, i: int) -> "Polynomial":
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                out[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return Polynomial._raw(self.nvars, out)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Compose: replace ``x_{i+1}`` by ``images[i]``.

        Runs over the integers: each image is written as ``G_i / d_i`` with
        ``G_i`` integral and one common denominator is divided out at the end.
        """
        images = list(images)
        if len(images) != self.nvars:
            raise StructuralError(
                f"expected {self.nvars} images, got {len(images)}")
        if not images:
            return Polynomial._raw(0, dict(self._terms))
        m = images[0].nvars
        if any(g.nvars != m for g in images):
            raise StructuralError("images must share a variable count")
        if not self._terms:
            return Polynomial.zero(m)
        one = (0,) * m
        ints, dens = [], []
        for g in images:
            d = _common_den(g._terms.values())
            dens.append(d)
            ints.append({e: int(c * d) for e, c in g._terms.items()} if d != 1 else g._terms)
        big = 1
        for e, c in self._terms.items():
            w = Fraction(c).denominator
            for d, k in zip(dens, e):
                if k and d != 1:
                    w *= d ** k
            big = _lcm(big, w)
        powers = [[{one: 1}] for _ in images]

        def power(i, k):
            cache = powers[i]
            while len(cache) <= k:
                cache.append(K.poly_mul(cache[-1], ints[i]))
            return cache[k]

        scaled = {}
        for e, c in self._terms.items():
            # c * big / prod(d_i^k_i) is an integer by construction of ``big``
            scale = int(Fraction(c) * big)
            for d, k in zip(dens, e):
                if k and d != 1:
                    scale //= d ** k
            scaled[e] = scale

        def horner(terms, i):
            # terms only involve x_1..x_{i+1}; Horner in x_{i+1}
            if i < 0:
                return {one: sum(terms.values())}
            groups: dict = {}
            for e, c in terms.items():
                groups.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
            acc: dict = {}
            prev = None
            for k in sorted(groups, reverse=True):
                if prev is not None and acc:
                    acc = K.poly_mul(acc, power(i, prev - k))
                acc = K.poly_add_scaled(acc, horner(groups[k], i - 1), 1, one)
                prev = k
            if prev and acc:
                acc = K.poly_mul(acc, power(i, prev))
            return acc

        out = horner(scaled, self.nvars - 1)
        if big == 1:
            return Polynomial._raw(m, out)
        return Polynomial(m, {e: Fraction(c, big) for e, c in out.items()})

    def evaluate(self, point: Sequence) -> Fraction:
        point = [Fraction(v) for v in point]
        if len(point) != self.nvars:
            raise StructuralError("point has wrong length")
        total = Fraction(0)
        for e, c in self._terms.items():
            t = Fraction(c)
            for v, k in zip(point, e):
                if k:
                    t *= v ** k
            total += t
        return total

    def permute_variables(self, perm: Sequence[int]) -> "Polynomial":
        """Relabel: variable ``i`` becomes variable ``perm[i]`` (0-based)."""
        perm = list(perm)
        if sorted(perm) != list(range(self.nvars)):
            raise StructuralError(f"{perm} is not a permutation of range({self.nvars})")
        out = {}
        for e, c in self._terms.items():
            ne = [0] * self.nvars
            for i, k in enumerate(e):
                ne[perm[i]] = k
            out[tuple(ne)] = c
        return Polynomial._raw(self.nvars, out)

    def embed(self, nvars: int, positions: Sequence[int]) -> "Polynomial":
        """Move variable ``i`` to position ``positions[i]`` in a larger ring."""
        out = {}
        for e, c in self._terms.items():
            ne = [0] * nvars
            for i, k in enumerate(e):
                ne[positions[i]] = k
            out[tuple(ne)] = c
        return Polynomial._raw(nvars, out)

    def restrict(self, positions: Sequence[int]) -> "Polynomial":
        """Inverse of :meth:`embed`; the other variables must not occur."""
        keep = set(positions)
        out = {}
        for e, c in self._terms.items():
            if any(k for i, k in enumerate(e) if i not in keep):
                raise StructuralError("polynomial involves dropped variables")
            out[tuple(e[i] for i in positions)] = c
        return Polynomial._raw(len(positions), out)

    def primitive(self) -> "Polynomial":
        """Scale to integer coefficients with gcd 1 and positive leading coefficient."""
        if not self._terms:
            return self
        from math import lcm
        den = lcm(*(Fraction(c).denominator for c in self._terms.values()))
        ints = {e: int(c * den) for e, c in self._terms.items()}
        g = K.content(ints.values())
        lead = ints[max(ints, key=grevlex_key)]
        if lead < 0:
            g = -g
        return Polynomial._raw(self.nvars, {e: c // g for e, c in ints.items()})

    def monic(self, key=grevlex_key) -> "Polynomial":
        if not self._terms:
            return self
        _, lc = self.leading_term(key)
        return self * (1 / lc)

    def divide_exact(self, q: "Polynomial") -> "Polynomial":
        """Exact quotient ``self / q``; raises ArithmeticError if ``q`` does not divide."""
        q = self._lift(q)
        if not q:
            raise ZeroDivisionError("division by the zero polynomial")
        qe, qc = q.leading_term()
        qtail = {e: c for e, c in q._terms.items() if e != qe}
        rest = dict(self._terms)
        quot = {}
        while rest:
            e = max(rest, key=grevlex_key)
            if not K.mono_divides(qe, e):
                raise ArithmeticError("not divisible")
            s = K.mono_div(e, qe)
            c = _coerce(Fraction(rest.pop(e)) / qc)
            quot[s] = c
            rest = _fix(K.poly_add_scaled(rest, qtail, -c, s))
        return Polynomial._raw(self.nvars, quot)

    def nth_root(self, k: int):
        """Return ``r`` with ``r**k == self`` or ``None``.

        For even ``k`` the root with positive leading coefficient is returned.
        """
        if k < 1:
            raise StructuralError("root index must be positive")
        if k == 1 or not self._terms:
            return self
        terms = self.items()
        lead_e, lead_c = terms[0]
        low_e = terms[-1][0]
        if any(v % k for v in lead_e):
            return None
        rc = rational_root(Fraction(lead_c), k)
        if rc is None:
            return None
        root_lead = tuple(v // k for v in lead_e)
        r = Polynomial._raw(self.nvars, {root_lead: _coerce(rc)})
        denom_lead_c = k * rc ** (k - 1)
        denom_lead_e = tuple(v * (k - 1) for v in root_lead)
        last = root_lead
        low_key = grevlex_key(low_e)
        while True:
            err = self - r ** k
            if not err:
                return r
            ee, ec = err.leading_term()
            if not K.mono_divides(denom_lead_e, ee):
                return None
            te = K.mono_div(ee, denom_lead_e)
            if grevlex_key(te) >= grevlex_key(last):
                return None
            if grevlex_key(tuple(v * k for v in te)) < low_key:
                return None
            r = r + Polynomial._raw(self.nvars, {te: _coerce(ec / denom_lead_c)})
            last = te


def _mul_terms(p, q):
    if not p or not q:
        return {}
    dp, dq = _common_den(p.values()), _common_den(q.values())
    if dp == 1 and dq == 1:
        return K.poly_mul(p, q)
    # clear denominators so the kernel multiplies machine-friendly ints
    ip = {e: int(c * dp) for e, c in p.items()} if dp != 1 else p
    iq = {e: int(c * dq) for e, c in q.items()} if dq != 1 else q
    den = dp * dq
    return {e: _coerce(Fraction(c, den)) for e, c in K.poly_mul(ip, iq).items()}


def _fix(d):
    return {e: _coerce(c) for e, c in d.items()} if _has_fraction(d) else d


def _common_den(coeffs):
    d = 1
    for c in coeffs:
        if isinstance(c, Fraction):
            d = _lcm(d, c.denominator)
    return d


def _lcm(a, b):
    return a // gcd(a, b) * b


def _has_fraction(d):
    for c in d.values():
        if isinstance(c, Fraction):
            return True
    return False


def int_root(a: int, k: int):
    """Exact integer k-th root of ``a`` or ``None``."""
    if a < 0:
        if k % 2 == 0:
            return None
        r = int_root(-a, k)
        return None if r is None else -r
    if a < 2:
        return a
    x = 1 << ((a.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + a // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x if x ** k == a else None


def rational_root(q: Fraction, k: int):
    q = Fraction(q)
    num = int_root(q.numerator, k)
    if num is None:
        return None
    den = int_root(q.denominator, k)
    if den is None:
        return None
    return Fraction(num, den)


# -- text syntax ------------------------------------------------------------

def _var_names(nvars, names=None):
    if names is not None:
        if len(names) != nvars:
            raise StructuralError("wrong number of variable names")
        return list(names)
    return [f"x{i + 1}" for i in range(nvars)]


def _format_coeff(c):
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial, names: Sequence[str] | None = None) -> str:
    """Canonical text form, e.g. ``3/4*x1^2*x3 - x2 + 5``."""
    if not p:
        return "0"
    names = _var_names(p.nvars, names)
    parts = []
    for idx, (e, c) in enumerate(p.items()):
        c = Fraction(c)
        neg = c < 0
        a = -c if neg else c
        mono = "*".join(
            names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if idx == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")
_ALIASES = {"x": 0, "y": 1, "z": 2, "w": 3}


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} at column {pos + 1}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, nvars, names):
        self.toks = _tokenize(text)
        self.i = 0
        self.names = names
        self.text = text
        if names is not None:
            self.index = {n: i for i, n in enumerate(names)}
            self.nvars = len(names)
        else:
            self.index = None
            self.nvars = nvars

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def var_index(self, name):
        if self.index is not None:
            if name not in self.index:
                raise ParseError(f"unknown variable {name!r}")
            return self.index[name]
        m = re.fullmatch(r"x(\d+)", name)
        if m and int(m.group(1)) >= 1:
            return int(m.group(1)) - 1
        if name in _ALIASES:
            return _ALIASES[name]
        raise ParseError(f"unknown variable {name!r}")

    # The parser builds {exps-as-dict: coeff} terms; variable count is fixed later.
    def expr(self):
        kind, val = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = _scale(self.term(), sign)
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = _add(acc, _scale(t, -1 if val == "-" else 1))
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = _mul(acc, self.factor())
            elif kind == "op" and val == "/":
                self.take()
                d = self.factor()
                if len(d) != 1 or next(iter(d)) != ():
                    raise ParseError("division only by rational constants")
                c = next(iter(d.values()))
                if not c:
                    raise ParseError("division by zero")
                acc = _scale(acc, Fraction(1) / c)
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                acc = _mul(acc, self.factor())
            else:
                return acc

    def factor(self):
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            f = self.factor()
            return _scale(f, -1) if val == "-" else f
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k, e = self.take()
            if k != "num":
                raise ParseError("exponent must be a non-negative integer")
            out = {(): 1}
            for _ in range(e):
                out = _mul(out, base)
            return out
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return {(): Fraction(val)} if val else {}
        if kind == "name":
            i = self.var_index(val)
            return {((i, 1),): Fraction(1)}
        if kind == "op" and val == "(":
            inner = self.expr()
            k, v = self.take()
            if v != ")":
                raise ParseError("missing closing parenthesis")
            return inner
        if kind is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def _norm_mono(pairs):
    d = {}
    for i, k in pairs:
        d[i] = d.get(i, 0) + k
    return tuple(sorted((i, k) for i, k in d.items() if k))


def _add(a, b):
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _scale(a, c):
    return {m: v * c for m, v in a.items()} if c else {}


def _mul(a, b):
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = _norm_mono(ma + mb)
            v = out.get(m, 0) + ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def parse_polynomial(text: str, nvars: int | None = None,
                     names: Sequence[str] | None = None) -> Polynomial:
    """Parse text such as ``3/4*x1^2*x3 - x2 + 5``.

    Variables are ``x1 .. xn`` (``x, y, z, w`` are accepted as aliases for
    the first four) unless ``names`` is given. With ``nvars=None`` the count
    is the largest index that occurs (at least 1).
    """
    if not text or not text.strip():
        raise ParseError("empty polynomial")
    p = _Parser(text, nvars, names)
    terms = p.expr()
    if p.i != len(p.toks):
        raise ParseError(f"trailing input in {text!r}")
    top = max((i for m in terms for i, _ in m), default=-1)
    n = p.nvars
    if n is None:
        n = max(top + 1, 1)
    elif top >= n:
        raise StructuralError(f"variable x{top + 1} exceeds nvars={n}")
    out = {}
    for m, c in terms.items():
        e = [0] * n
        for i, k in m:
            e[i] = k
        out[tuple(e)] = c
    return Polynomial(n, out)


# -- Jacobians ----------------------------------------------------------------

def jacobian_matrix(polys: Sequence[Polynomial]):
    polys = list(polys)
    n = polys[0].nvars if polys else 0
    return [[f.diff(j) for j in range(n)] for f in polys]


def jacobian_det(polys: Iterable[Polynomial]) -> Polynomial:
    """Determinant of the Jacobian matrix of a square polynomial system.

    Fraction-free Bareiss elimination for up to 6 variables, cofactor
    expansion above that.
    """
    polys = list(polys)
    n = len(polys)
    if n == 0:
        raise StructuralError("empty system")
    if any(f.nvars != n for f in polys):
        raise StructuralError("Jacobian requires n polynomials in n variables")
    m = jacobian_matrix(polys)
    if n <= 6:
        return _bareiss(m)
    return _cofactor(m)


def _bareiss(m):
    n = len(m)
    m = [row[:] for row in m]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not m[k][k]:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Polynomial.zero(m[0][0].nvars)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = v.divide_exact(prev) if prev is not None else v
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign > 0 else -d


def _cofactor(m):
    n = len(m)
    total = Polynomial.zero(m[0][0].nvars)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        t = Polynomial.constant(m[0][0].nvars, -1 if inv % 2 else 1)
        for i in range(n):
            t = t * m[i][perm[i]]
            if not t:
                break
        total = total + t
    return total

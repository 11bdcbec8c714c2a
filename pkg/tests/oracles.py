"""Independent reference computations built on sympy."""

from fractions import Fraction

import sympy

from conftest import to_sympy

X, Y = sympy.symbols("x1 x2")
U = sympy.Symbol("u")


def fiber_count_resultant(F, value, shears=(3, -7, 11)):
    """Number of distinct points of ``F = value`` for a two-variable map.

    Shear ``x1 = u + lam*x2`` so that some equation has a constant leading
    coefficient in ``x2`` (no roots escape to infinity), eliminate ``x2``
    with a resultant and count distinct roots of the squarefree part. A
    non-separating shear can only undercount, so the maximum is taken.
    """
    f = [to_sympy(c, (X, Y)) - sympy.Rational(Fraction(v).numerator, Fraction(v).denominator)
         for c, v in zip(F.coords, value)]
    best = None
    for lam in shears:
        g = [sympy.Poly(sympy.expand(p.subs(X, U + lam * Y)), Y) for p in f]
        if not any(p.LC().is_number and p.LC() != 0 for p in g):
            continue
        r = sympy.resultant(g[0].as_expr(), g[1].as_expr(), Y)
        r = sympy.Poly(sympy.expand(r), U)
        if r.is_zero:
            raise ValueError("fibre is not finite")
        k = sympy.Poly(sympy.sqf_part(r.as_expr()), U).degree() if r.degree() > 0 else 0
        best = k if best is None else max(best, k)
    if best is None:
        raise ValueError("no shear made an equation monic")
    return best


def lex_basis(polys, nvars, order="lex"):
    syms = sympy.symbols(f"x1:{nvars + 1}")
    return sympy.groebner([to_sympy(p, syms) for p in polys], *syms, order=order)

"""Pure-Python hot kernels.

These mirror ``_speedups.pyx`` function for function. ``kellerkit._kernels``
imports the compiled module when it is available and falls back to this
file otherwise.

Monomials are tuples of non-negative ints. Sparse polynomials are plain
dicts mapping a monomial to a non-zero coefficient.
"""

from heapq import heappop, heappush
from math import gcd

BACKEND = "python"


def mono_mul(a, b):
    return tuple([i + j for i, j in zip(a, b)])


def mono_divides(a, b):
    """Return True if monomial ``a`` divides monomial ``b``."""
    for i, j in zip(a, b):
        if i > j:
            return False
    return True


def mono_div(b, a):
    return tuple([j - i for i, j in zip(a, b)])


def mono_lcm(a, b):
    return tuple([i if i > j else j for i, j in zip(a, b)])


def mono_coprime(a, b):
    for i, j in zip(a, b):
        if i and j:
            return False
    return True


def poly_mul(p, q):
    """Product of two sparse polynomials with arbitrary exact coefficients."""
    if len(p) > len(q):
        p, q = q, p
    out = {}
    get = out.get
    qitems = list(q.items())
    for ea, ca in p.items():
        for eb, cb in qitems:
            e = tuple([i + j for i, j in zip(ea, eb)])
            c = get(e, 0) + ca * cb
            if c:
                out[e] = c
            else:
                out.pop(e, None)
    return out


def poly_add_scaled(p, q, c, shift):
    """Return ``p + c * x^shift * q`` as a new dict."""
    out = dict(p)
    get = out.get
    for e, v in q.items():
        e = tuple([i + j for i, j in zip(e, shift)])
        w = get(e, 0) + c * v
        if w:
            out[e] = w
        else:
            out.pop(e, None)
    return out


def reduce_int(f, leads, lcs, tails, key, full, max_terms):
    """Pseudo-reduce an integer polynomial by an integer basis.

    ``leads[k]``/``lcs[k]`` are the leading monomial and coefficient of the
    k-th divisor and ``tails[k]`` its remaining terms as ``(mono, coeff)``
    pairs. ``key`` maps a monomial to an int that is increasing in the
    monomial order.

    Returns ``(r, mult)`` with ``mult * f == r`` modulo the ideal and
    ``mult`` a positive integer. Only the leading term is reduced unless
    ``full`` is true. Raises ``OverflowError`` when an intermediate exceeds
    ``max_terms`` terms.
    """
    f = dict(f)
    rem = {}
    mult = 1
    heap = []
    where = {}
    for e in f:
        k = key(e)
        where[k] = e
        heappush(heap, -k)
    nb = len(leads)
    while heap:
        k = -heappop(heap)
        e = where[k]
        c = f.get(e)
        if c is None:
            continue
        hit = -1
        for idx in range(nb):
            if mono_divides(leads[idx], e):
                hit = idx
                break
        if hit < 0:
            del f[e]
            rem[e] = c
            if not full:
                rem.update(f)
                return rem, mult
            continue
        lc = lcs[hit]
        # f <- a*f - b*x^s*g with a*c == b*lc
        a, b = lc, c
        g = gcd(a, b)
        a //= g
        b //= g
        if a < 0:
            a, b = -a, -b
        if a != 1:
            for t in f:
                f[t] *= a
            for t in rem:
                rem[t] *= a
            mult *= a
        del f[e]
        s = mono_div(e, leads[hit])
        fget = f.get
        for te, tc in tails[hit]:
            m = tuple([i + j for i, j in zip(te, s)])
            old = fget(m)
            if old is None:
                f[m] = -b * tc
                km = key(m)
                where[km] = m
                heappush(heap, -km)
            else:
                v = old - b * tc
                if v:
                    f[m] = v
                else:
                    del f[m]
        if len(f) + len(rem) > max_terms:
            raise OverflowError("term budget exceeded")
    return rem, mult


def content(coeffs):
    """gcd of an iterable of ints (0 for an empty iterable)."""
    g = 0
    for c in coeffs:
        g = gcd(g, c)
        if g == 1:
            return 1
    return g

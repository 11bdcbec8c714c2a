# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels; same contracts as ``_pykernels``."""

from cpython.tuple cimport PyTuple_GET_SIZE, PyTuple_GET_ITEM, PyTuple_New, PyTuple_SET_ITEM
from cpython.ref cimport Py_INCREF
from heapq import heappop, heappush
from math import gcd

BACKEND = "cython"


cdef inline tuple _add(tuple a, tuple b):
    cdef Py_ssize_t n = PyTuple_GET_SIZE(a), i
    cdef tuple out = PyTuple_New(n)
    cdef object v
    for i in range(n):
        v = (<long>(<object>PyTuple_GET_ITEM(a, i))) + (<long>(<object>PyTuple_GET_ITEM(b, i)))
        Py_INCREF(v)
        PyTuple_SET_ITEM(out, i, v)
    return out


cdef inline tuple _sub(tuple b, tuple a):
    cdef Py_ssize_t n = PyTuple_GET_SIZE(a), i
    cdef tuple out = PyTuple_New(n)
    cdef object v
    for i in range(n):
        v = (<long>(<object>PyTuple_GET_ITEM(b, i))) - (<long>(<object>PyTuple_GET_ITEM(a, i)))
        Py_INCREF(v)
        PyTuple_SET_ITEM(out, i, v)
    return out


cdef inline bint _divides(tuple a, tuple b):
    cdef Py_ssize_t n = PyTuple_GET_SIZE(a), i
    for i in range(n):
        if (<long>(<object>PyTuple_GET_ITEM(a, i))) > (<long>(<object>PyTuple_GET_ITEM(b, i))):
            return False
    return True


def mono_mul(tuple a, tuple b):
    return _add(a, b)


def mono_divides(tuple a, tuple b):
    return _divides(a, b)


def mono_div(tuple b, tuple a):
    return _sub(b, a)


def mono_lcm(tuple a, tuple b):
    cdef Py_ssize_t n = PyTuple_GET_SIZE(a), i
    cdef long x, y
    out = []
    for i in range(n):
        x = <long>(<object>PyTuple_GET_ITEM(a, i))
        y = <long>(<object>PyTuple_GET_ITEM(b, i))
        out.append(x if x > y else y)
    return tuple(out)


def mono_coprime(tuple a, tuple b):
    cdef Py_ssize_t n = PyTuple_GET_SIZE(a), i
    for i in range(n):
        if (<long>(<object>PyTuple_GET_ITEM(a, i))) and (<long>(<object>PyTuple_GET_ITEM(b, i))):
            return False
    return True


def poly_mul(dict p, dict q):
    if len(p) > len(q):
        p, q = q, p
    cdef dict out = {}
    cdef list qitems = list(q.items())
    cdef tuple ea, eb, e
    cdef object ca, cb, c, old
    for ea, ca in p.items():
        for eb, cb in qitems:
            e = _add(ea, eb)
            old = out.get(e)
            if old is None:
                out[e] = ca * cb
            else:
                c = old + ca * cb
                if c:
                    out[e] = c
                else:
                    del out[e]
    return out


def poly_add_scaled(dict p, dict q, object c, tuple shift):
    cdef dict out = dict(p)
    cdef tuple e, m
    cdef object v, w, old
    for e, v in q.items():
        m = _add(e, shift)
        old = out.get(m)
        if old is None:
            w = c * v
            if w:
                out[m] = w
        else:
            w = old + c * v
            if w:
                out[m] = w
            else:
                del out[m]
    return out


def reduce_int(dict f, list leads, list lcs, list tails, object key, bint full, Py_ssize_t max_terms):
    f = dict(f)
    cdef dict rem = {}
    cdef object mult = 1
    cdef list heap = []
    cdef dict where = {}
    cdef tuple e, s, te, m
    cdef object k, c, lc, a, b, g, tc, old, v, km
    cdef Py_ssize_t nb = len(leads), idx, hit
    for e in f:
        k = key(e)
        where[k] = e
        heappush(heap, -k)
    while heap:
        k = -heappop(heap)
        e = where[k]
        c = f.get(e)
        if c is None:
            continue
        hit = -1
        for idx in range(nb):
            if _divides(<tuple>leads[idx], e):
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
        g = gcd(lc, c)
        a = lc // g
        b = c // g
        if a < 0:
            a = -a
            b = -b
        if a != 1:
            for te in f:
                f[te] = f[te] * a
            for te in rem:
                rem[te] = rem[te] * a
            mult = mult * a
        del f[e]
        s = _sub(e, <tuple>leads[hit])
        for te, tc in <list>tails[hit]:
            m = _add(te, s)
            old = f.get(m)
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
    cdef object g = 0
    for c in coeffs:
        g = gcd(g, c)
        if g == 1:
            return 1
    return g

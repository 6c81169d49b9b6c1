# cython: language_level=3
"""Compiled twin of ``_pykernel``: same signatures, same results.

Exponent keys and truncation functionals are unpacked into C arrays so the
double loop over term pairs runs without tuple arithmetic; coefficients stay
Python integers (arbitrary precision) on a common denominator.
"""
from fractions import Fraction
from math import lcm

from libc.stdlib cimport malloc, free


cdef tuple _lift(list coeffs):
    cdef object den = 1
    if coeffs:
        den = lcm(*[c.denominator for c in coeffs])
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def sparse_mul(dict a, dict b, limits=()):
    if not a or not b:
        return {}
    cdef list ka = list(a)
    cdef list kb = list(b)
    cdef Py_ssize_t n_a = len(ka), n_b = len(kb)
    cdef Py_ssize_t width = len(ka[0])
    cdef Py_ssize_t n_lim = len(limits)
    cdef list na, nb
    na, da = _lift(list(a.values()))
    nb, db = _lift(list(b.values()))

    cdef long *ea = <long *> malloc(n_a * width * sizeof(long))
    cdef long *eb = <long *> malloc(n_b * width * sizeof(long))
    cdef long *fa = <long *> malloc((n_a * n_lim + 1) * sizeof(long))
    cdef long *fb = <long *> malloc((n_b * n_lim + 1) * sizeof(long))
    cdef long *bounds = <long *> malloc((n_lim + 1) * sizeof(long))
    cdef long *ws = <long *> malloc((n_lim * width + 1) * sizeof(long))
    cdef Py_ssize_t i, j, r, t
    cdef long acc
    cdef bint skip
    cdef dict out = {}
    cdef object key, cx, prev
    cdef tuple kt
    try:
        for r in range(n_lim):
            bounds[r] = limits[r][1]
            for t in range(width):
                ws[r * width + t] = limits[r][0][t]
        for i in range(n_a):
            kt = ka[i]
            for t in range(width):
                ea[i * width + t] = kt[t]
            for r in range(n_lim):
                acc = 0
                for t in range(width):
                    acc += ws[r * width + t] * ea[i * width + t]
                fa[i * n_lim + r] = acc
        for j in range(n_b):
            kt = kb[j]
            for t in range(width):
                eb[j * width + t] = kt[t]
            for r in range(n_lim):
                acc = 0
                for t in range(width):
                    acc += ws[r * width + t] * eb[j * width + t]
                fb[j * n_lim + r] = acc

        for i in range(n_a):
            cx = na[i]
            for j in range(n_b):
                skip = False
                for r in range(n_lim):
                    if fa[i * n_lim + r] + fb[j * n_lim + r] > bounds[r]:
                        skip = True
                        break
                if skip:
                    continue
                kt = tuple([ea[i * width + t] + eb[j * width + t] for t in range(width)])
                prev = out.get(kt)
                if prev is None:
                    out[kt] = cx * nb[j]
                else:
                    out[kt] = prev + cx * nb[j]
    finally:
        free(ea)
        free(eb)
        free(fa)
        free(fb)
        free(bounds)
        free(ws)
    den = da * db
    return {k: Fraction(v, den) for k, v in out.items() if v}


def sparse_add(dict a, dict b, scale=1):
    cdef dict out = dict(a)
    cdef object k, v, w
    for k, v in b.items():
        w = out.get(k, 0) + scale * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def convolve(list a, list b, length=None):
    if not a or not b:
        return []
    cdef Py_ssize_t n = len(a) + len(b) - 1
    if length is not None and length < n:
        n = length
    cdef list na, nb
    na, da = _lift(a)
    nb, db = _lift(b)
    cdef list out = [0] * n
    cdef Py_ssize_t i, j, lb = len(nb), stop
    cdef object x
    for i in range(len(na)):
        if i >= n:
            break
        x = na[i]
        if not x:
            continue
        stop = lb if lb < n - i else n - i
        for j in range(stop):
            out[i + j] = out[i + j] + x * nb[j]
    den = da * db
    return [Fraction(v, den) for v in out]

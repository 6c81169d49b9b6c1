"""Pure-Python reference implementation of the arithmetic kernels.

Every function here has a drop-in twin in ``_ckernel.pyx``. Both take and
return plain dicts/lists of :class:`fractions.Fraction`; internally the
coefficients are lifted to a common denominator so the inner loop only does
integer arithmetic.
"""
from fractions import Fraction
from math import lcm


def _lift(coeffs):
    den = lcm(*[c.denominator for c in coeffs]) if coeffs else 1
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def sparse_mul(a, b, limits=()):
    """Product of two sparse polynomials keyed by exponent tuples.

    ``limits`` is a sequence of ``(weights, bound)`` pairs; a product term whose
    key ``k`` has ``sum(w*k) > bound`` for any pair is dropped. The weights must
    be nonnegative on every key that can occur so that truncation commutes
    with multiplication.
    """
    if not a or not b:
        return {}
    ka = list(a)
    kb = list(b)
    na, da = _lift(list(a.values()))
    nb, db = _lift(list(b.values()))
    if limits:
        fa = [[sum(w * e for w, e in zip(ws, k)) for ws, _ in limits] for k in ka]
        fb = [[sum(w * e for w, e in zip(ws, k)) for ws, _ in limits] for k in kb]
        bounds = [bd for _, bd in limits]
    out = {}
    get = out.get
    for i, x in enumerate(ka):
        cx = na[i]
        if limits:
            fx = fa[i]
        for j, y in enumerate(kb):
            if limits:
                fy = fb[j]
                if any(fx[r] + fy[r] > bounds[r] for r in range(len(bounds))):
                    continue
            key = tuple([u + v for u, v in zip(x, y)])
            out[key] = get(key, 0) + cx * nb[j]
    den = da * db
    return {k: Fraction(v, den) for k, v in out.items() if v}


def sparse_add(a, b, scale=1):
    """Return ``a + scale*b`` for sparse dict polynomials."""
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, 0) + scale * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def convolve(a, b, length=None):
    """Dense product of coefficient lists, optionally truncated to ``length``."""
    if not a or not b:
        return []
    n = len(a) + len(b) - 1
    if length is not None:
        n = min(n, length)
    na, da = _lift(list(a))
    nb, db = _lift(list(b))
    out = [0] * n
    for i, x in enumerate(na):
        if not x or i >= n:
            continue
        for j in range(min(len(nb), n - i)):
            out[i + j] += x * nb[j]
    den = da * db
    return [Fraction(v, den) for v in out]

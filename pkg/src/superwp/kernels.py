"""The recursion kernels D and R and their exact moments.

    D(x, y, z) = (sech((x-y-z)/4) - sech((x+y+z)/4)) / (4 pi)
    R(x, y, z) = (D(x+y, z, 0) + D(x-y, z, 0)) / 2

Moments against odd monomials are polynomials over Q[p], p = pi^2. They all
reduce to the single-variable family

    S_k(u) = int_0^oo x^(2k+1) D(u, x, 0) dx
           = sum_j binom(2k+1, 2j) |E_2j| (2 pi)^(2j) u^(2k+1-2j),

with E_2j the Euler numbers. Moment polynomials are returned as :class:`Poly`
in the raw lengths (``L``, not ``L**2``) because they are odd in ``L``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from superwp.exactcore.poly import PiPoly, Poly

__all__ = [
    "euler_numbers", "sec_coeffs", "cos_coeffs", "sec_times_cos", "eval_D", "eval_R",
    "sech_moment_poly", "d_double_moment", "r_moment", "r_moment_in_l",
]


@lru_cache(maxsize=None)
def euler_numbers(n: int) -> tuple[int, ...]:
    """Signed Euler numbers ``E_0, E_2, ..., E_2n`` from the secant recurrence."""
    es = [1]
    for m in range(1, n + 1):
        es.append(-sum(math.comb(2 * m, 2 * k) * es[k] for k in range(m)))
    return tuple(es)


@lru_cache(maxsize=None)
def sec_coeffs(n: int) -> tuple[PiPoly, ...]:
    """``a_0..a_n`` with ``1/cos(2 pi x) = sum a_k x^(2k)``."""
    es = euler_numbers(n)
    return tuple(
        PiPoly.monomial(Fraction(abs(es[k]) * 4**k, math.factorial(2 * k)), k) for k in range(n + 1)
    )


def cos_coeffs(n: int) -> tuple[PiPoly, ...]:
    """Taylor coefficients of ``cos(2 pi x)`` in ``x^2``."""
    return tuple(
        PiPoly.monomial(Fraction((-1) ** k * 4**k, math.factorial(2 * k)), k) for k in range(n + 1)
    )


def sec_times_cos(n: int) -> list[PiPoly]:
    """Product of the two truncated series; equals ``[1, 0, ..., 0]`` when correct."""
    a, c = sec_coeffs(n), cos_coeffs(n)
    return [sum((a[i] * c[k - i] for i in range(k + 1)), PiPoly()) for k in range(n + 1)]


def _sech(u):
    u = np.abs(np.asarray(u, dtype=float))
    e = np.exp(-u)
    return 2 * e / (1 + e * e)


def eval_D(x, y, z):
    """Numeric value of D; accepts scalars or numpy arrays."""
    w = np.asarray(y, dtype=float) + np.asarray(z, dtype=float)
    x = np.asarray(x, dtype=float)
    out = (_sech((x - w) / 4) - _sech((x + w) / 4)) / (4 * math.pi)
    return float(out) if np.ndim(out) == 0 else out


def eval_R(x, y, z):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = 0.5 * (np.asarray(eval_D(x + y, z, 0)) + np.asarray(eval_D(x - y, z, 0)))
    return float(out) if np.ndim(out) == 0 else out


@lru_cache(maxsize=None)
def sech_moment_poly(k: int) -> Poly:
    """``S_k(u)`` as a one-variable polynomial in the raw length ``u``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    es = euler_numbers(k)
    terms = {}
    for j in range(k + 1):
        c = math.comb(2 * k + 1, 2 * j) * abs(es[j]) * 4**j
        terms[(2 * k + 1 - 2 * j, j)] = c
    return Poly(1, terms)


@lru_cache(maxsize=None)
def d_double_moment(i: int, j: int) -> Poly:
    """``int int x^(2i+1) y^(2j+1) D(L, x, y) dx dy`` as a polynomial in ``L``."""
    if i < 0 or j < 0:
        raise ValueError("indices must be nonnegative")
    beta = Fraction(
        math.factorial(2 * i + 1) * math.factorial(2 * j + 1), math.factorial(2 * i + 2 * j + 3)
    )
    return sech_moment_poly(i + j + 1) * beta


@lru_cache(maxsize=None)
def r_moment(k: int) -> Poly:
    """``int x^(2k+1) R(L1, Lj, x) dx`` as a polynomial in raw ``(L1, Lj)``.

    Expands ``(S_k(L1+Lj) + S_k(L1-Lj))/2``; only even powers of ``Lj`` survive.
    """
    out = {}
    for (d, pk), c in sech_moment_poly(k).items():
        for r in range(0, d + 1, 2):
            key = (d - r, r, pk)
            out[key] = out.get(key, 0) + c * math.comb(d, r)
    return Poly(2, out)


@lru_cache(maxsize=None)
def r_moment_in_l(k: int) -> Poly:
    """:func:`r_moment` with ``Lj`` replaced by ``lj = Lj**2`` (``L1`` stays raw)."""
    return Poly(2, {(e1, ej // 2, pk): c for (e1, ej, pk), c in r_moment(k).items()})

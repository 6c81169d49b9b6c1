"""Numerical oracle for the kernel moment integrals.

Independent of the closed forms in :mod:`superwp.kernels`: the improper
integrals are cut at a length ``T`` chosen from an analytic bound on the sech
tail, and the finite part is integrated with composite Gauss-Legendre rules
whose panel count doubles until two successive estimates agree.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.special import gammaincc, gammaln

from superwp.kernels import eval_D, eval_R

KINDS = ("D-single", "R-single", "D-double")


class QuadratureError(RuntimeError):
    """The tail cutoff or the panel refinement failed to converge."""


@lru_cache(maxsize=None)
def _gl(n: int):
    return np.polynomial.legendre.leggauss(n)


def _panels(a: float, b: float, npanels: int, order: int):
    x, w = _gl(order)
    edges = np.linspace(a, b, npanels + 1)
    half = np.diff(edges)[:, None] / 2
    mid = (edges[:-1] + edges[1:])[:, None] / 2
    return (mid + half * x).ravel(), (half * w).ravel()


def tail_bound(power: int, shift: float, T: float) -> float:
    """Upper bound for ``int_T^oo x^power |kernel| dx``.

    Uses ``sech(v) <= 2 exp(-|v|)`` so the kernel is at most
    ``exp((shift - x)/4) / (2 pi)`` for ``x >= shift``.
    """
    a = power + 1
    log_gamma_tail = gammaln(a) + np.log(max(gammaincc(a, T / 4), 1e-300))
    return math.exp(shift / 4 + a * math.log(4) + log_gamma_tail) / (2 * math.pi)


def cutoff(power: int, shift: float, atol: float = 1e-10) -> float:
    T = 4.0 * (power + 2) + abs(shift) + 20.0
    for _ in range(400):
        if tail_bound(power, abs(shift), T) <= atol:
            return T
        T *= 1.25
    raise QuadratureError(f"no cutoff reaches tail bound {atol:g}")


def _refine(estimate, rtol: float, atol: float, max_level: int):
    prev = estimate(0)
    for level in range(1, max_level + 1):
        cur = estimate(level)
        if abs(cur - prev) <= max(rtol * abs(cur), atol):
            return cur
        prev = cur
    raise QuadratureError(f"no convergence after {max_level} refinements (last two: {prev}, {cur})")


def _single(f, power: int, shift: float, rtol: float, atol: float, max_level: int) -> float:
    T = cutoff(power, shift, atol)

    def estimate(level):
        x, w = _panels(0.0, T, 8 * 2**level, 24)
        return float(np.sum(w * x**power * f(x)))

    return _refine(estimate, rtol, atol, max_level)


def _double(L: float, px: int, py: int, rtol: float, atol: float, max_level: int) -> float:
    # x = r t, y = r (1 - t): the region x, y >= 0 becomes r >= 0, 0 <= t <= 1.
    T = cutoff(px + py + 1, L, atol)

    def estimate(level):
        r, wr = _panels(0.0, T, 8 * 2**level, 24)
        t, wt = _panels(0.0, 1.0, 2**level, 24)
        R, Tt = np.meshgrid(r, t, indexing="ij")
        x, y = R * Tt, R * (1 - Tt)
        vals = x**px * y**py * eval_D(L, x, y) * R
        return float(wr @ vals @ wt)

    return _refine(estimate, rtol, atol, max_level)


def quadrature_oracle(kind: str, powers, params, rtol: float = 1e-12, atol: float = 1e-10,
                      max_level: int = 10) -> float:
    """Numerical value of a kernel moment.

    kind      ``"D-single"``: int x^a D(u, x, 0) dx with ``params = u``;
              ``"R-single"``: int x^a R(L1, Lj, x) dx with ``params = (L1, Lj)``;
              ``"D-double"``: int int x^a y^b D(L, x, y) dx dy with ``params = L``.
    powers    ``a`` for the single integrals, ``(a, b)`` for the double one.

    ``atol`` must be positive: it also sets where the infinite range is cut.
    """
    if not atol > 0:
        raise ValueError("atol must be positive; it bounds the truncated tail")
    if kind == "D-single":
        u = float(params)
        return _single(lambda x: eval_D(u, x, 0.0), int(powers), abs(u), rtol, atol, max_level)
    if kind == "R-single":
        L1, Lj = map(float, params)
        return _single(lambda x: eval_R(L1, Lj, x), int(powers), abs(L1) + abs(Lj), rtol, atol,
                       max_level)
    if kind == "D-double":
        a, b = map(int, powers)
        return _double(float(params), a, b, rtol, atol, max_level)
    raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")

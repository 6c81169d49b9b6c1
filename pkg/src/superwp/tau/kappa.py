"""Polynomials ``K_m`` in kappa classes: ``sum K_m = exp(sum s_i kappa_i)`` where
``exp(-sum s_i t^i) = sum (-1)^k (2k+1)!! t^k``."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

from superwp.exactcore.poly import latex_frac
from superwp.tau.virasoro import dfact


def kappa_s(M: int) -> list[Fraction]:
    """``[s_1..s_M]`` by the exact series logarithm."""
    b = [Fraction((-1) ** k * dfact(2 * k + 1)) for k in range(M + 1)]
    # log of 1 + x: l_n = b_n - (1/n) sum_{k=1}^{n-1} k l_k b_{n-k}
    logs = [Fraction(0)] * (M + 1)
    for n in range(1, M + 1):
        logs[n] = b[n] - sum((k * logs[k] * b[n - k] for k in range(1, n)), Fraction(0)) / n
    return [-x for x in logs[1:]]


def _partitions(m: int, largest: int | None = None):
    largest = m if largest is None else largest
    if m == 0:
        yield ()
        return
    for first in range(min(m, largest), 0, -1):
        for tail in _partitions(m - first, first):
            yield (first,) + tail


KappaPoly = dict  # sorted descending partition -> Fraction


def kappa_polynomials(M: int) -> list[KappaPoly]:
    """``[K_1..K_M]``; each maps a partition (parts in descending order) to its coefficient."""
    if M < 1:
        raise ValueError("M >= 1 required")
    s = kappa_s(M)
    out = []
    for m in range(1, M + 1):
        poly = {}
        for part in _partitions(m):
            c = Fraction(1)
            for i in set(part):
                e = part.count(i)
                c *= s[i - 1] ** e / math.factorial(e)
            if c:
                poly[part] = c
        out.append(poly)
    return out


def kappa_grade(poly: KappaPoly) -> set[int]:
    return {sum(p) for p in poly}


def _monomial_latex(part: tuple[int, ...]) -> str:
    out = []
    for i in sorted(set(part)):
        e = part.count(i)
        out.append(rf"\kappa_{i}" + (f"^{e}" if e > 1 else ""))
    return "".join(out)


def _term_latex(c: Fraction, mono: str, first: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    mag = abs(c)
    coef = "" if mag == 1 else latex_frac(mag)
    return sign + coef + mono


def kappa_latex(poly: KappaPoly) -> str:
    """LaTeX form with the rational content pulled out, e.g. ``\\frac32(3\\kappa_1^2-7\\kappa_2)``."""
    items = sorted(poly.items(), key=lambda kv: tuple(sorted(kv[0], reverse=True)))
    if not items:
        return "0"
    if len(items) == 1:
        part, c = items[0]
        return _term_latex(c, _monomial_latex(part), True)
    num = reduce(math.gcd, (abs(c.numerator) for _, c in items))
    den = reduce(math.lcm, (c.denominator for _, c in items))
    content = Fraction(num, den)
    body = "".join(
        _term_latex(c / content, _monomial_latex(part), k == 0) for k, (part, c) in enumerate(items)
    )
    if content == 1:
        return body
    return latex_frac(content) + "(" + body + ")"

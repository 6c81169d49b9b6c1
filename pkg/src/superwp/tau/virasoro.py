"""Virasoro operators ``L_m`` (m >= -1) acting on truncated t-series.

    L_m = hbar/2 sum_{i+j=m-1} (2i+1)!! (2j+1)!! d_i d_j
          + sum_{k-j=m} (2k+1)!!/(2j-1)!! t_j d_k
          + [m = -1] t_0^2 / (2 hbar) + [m = 0] / 8
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from superwp.exactcore.tseries import Caps, TMonomialSeries, flat_key


@lru_cache(maxsize=None)
def dfact(n: int) -> int:
    """Double factorial with ``(-1)!! = 1``."""
    if n < -1:
        raise ValueError(f"double factorial undefined for {n}")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


@dataclass(frozen=True)
class VirasoroOp:
    m: int

    def __post_init__(self):
        if self.m < -1:
            raise ValueError("Virasoro operators are indexed by m >= -1")

    @property
    def second_order(self) -> tuple[tuple[int, int, Fraction], ...]:
        """``(i, j, weight)`` over ordered pairs with ``i + j = m - 1``."""
        return tuple(
            (i, self.m - 1 - i, Fraction(dfact(2 * i + 1) * dfact(2 * self.m - 2 * i - 1), 2))
            for i in range(self.m)
        )

    def first_order(self, t_max: int) -> tuple[tuple[int, int, Fraction], ...]:
        """``(j, k, weight)`` for ``t_j d_k`` with ``k = j + m <= t_max``."""
        return tuple(
            (j, j + self.m, Fraction(dfact(2 * (j + self.m) + 1), dfact(2 * j - 1)))
            for j in range(max(0, -self.m), t_max - self.m + 1)
        )

    @property
    def t0_squared(self) -> Fraction:
        return Fraction(1, 2) if self.m == -1 else Fraction(0)

    @property
    def constant(self) -> Fraction:
        return Fraction(1, 8) if self.m == 0 else Fraction(0)


def virasoro_apply(op: VirasoroOp, z: TMonomialSeries) -> TMonomialSeries:
    """Exact action of ``op`` on ``z``; terms leaving the caps are dropped and noted."""
    t_max = z.caps.t_max
    second = op.second_order
    first = op.first_order(t_max + max(0, op.m))
    out: dict[tuple, Fraction] = {}
    overflow = 0

    def add(key, c):
        out[key] = out.get(key, 0) + c

    for key, c in z.items():
        head, counts = key[:3], list(key[3:])
        for i, j, w in second:
            if i > t_max or j > t_max:
                continue
            mult = counts[i] * (counts[i] - 1) if i == j else counts[i] * counts[j]
            if mult:
                new = counts.copy()
                new[i] -= 1
                new[j] -= 1
                add((head[0] + 1, head[1], head[2], *new), w * mult * c)
        for j, k, w in first:
            if k > t_max or not counts[k]:
                continue
            if j > t_max:
                overflow += 1
                continue
            new = counts.copy()
            new[k] -= 1
            new[j] += 1
            add((*head, *new), w * counts[k] * c)
        if op.t0_squared:
            new = counts.copy()
            new[0] += 2
            add((head[0] - 1, head[1], head[2], *new), op.t0_squared * c)
        if op.constant:
            add(key, op.constant * c)
    result = TMonomialSeries(z.caps, out, z.notes)
    notes = []
    if overflow:
        notes.append(f"L_{op.m}: {overflow} terms beyond t-index cap")
    dropped = sum(1 for k, v in out.items() if v) - len(result)
    if dropped:
        notes.append(f"L_{op.m}: {dropped} terms beyond caps")
    return TMonomialSeries(z.caps, result.terms, z.notes + tuple(notes))


@dataclass
class CommutatorReport:
    m: int
    n: int
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _monomial_basis(t_max: int, n_max: int, hbar_range=(-1, 0, 1)):
    for a in hbar_range:
        for size in range(n_max + 1):
            for times in itertools.combinations_with_replacement(range(t_max + 1), size):
                yield a, times


def commutator_check(m: int, n: int, t_max: int = 4, n_max: int = 3) -> CommutatorReport:
    """Verify ``[L_m, L_n] = 2 (m - n) L_{m+n}`` on every basis monomial.

    The basis is ``hbar^a prod t_i`` with ``a`` in ``{-1, 0, 1}``, indices up
    to ``t_max`` and at most ``n_max`` factors. The operators are applied in a
    ring wide enough that nothing is truncated, so the identity is checked
    exactly.
    """
    if m + n < -1:
        raise ValueError("m + n must be at least -1")
    work = Caps(t_max + 3, 10**6, 10**6, 10**6)
    lm, ln, lmn = VirasoroOp(m), VirasoroOp(n), VirasoroOp(m + n)
    report = CommutatorReport(m, n)
    for a, times in _monomial_basis(t_max, n_max):
        x = TMonomialSeries(work, {flat_key(a, 0, times, work.t_max): 1})
        lhs = virasoro_apply(lm, virasoro_apply(ln, x)) - virasoro_apply(ln, virasoro_apply(lm, x))
        rhs = virasoro_apply(lmn, x).scale(2 * (m - n))
        report.checked += 1
        if lhs != rhs:
            report.failures.append((a, times))
    return report

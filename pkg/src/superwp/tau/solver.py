"""Order-by-order solution of Virasoro constraints for ``F = log Z``.

Two families are supported:

``zbar``  ((2m+1)!! d_m - L_m - [m = 0] s^2 / (2 hbar)) Z = 0
``zk``    ((2m+1)!! d_m - L_m - s^2 L_{m-1}) Z = 0

Dividing by ``Z = exp F`` turns each constraint into an identity for the
coefficients of ``F``. A coefficient ``F[a, sigma, T]`` with ``t_m`` in ``T``
is fixed by constraint ``m`` in terms of coefficients with smaller
``(sigma, 2a + |T|)``, so a memoized descent terminates. Coefficients of
``F`` satisfy ``sum(T) = a + sigma/2``; everything else vanishes.
"""
from __future__ import annotations

import itertools
import sys
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from superwp.exactcore.tseries import Caps, TMonomialSeries
from superwp.tau.virasoro import VirasoroOp, dfact

FAMILIES = ("zbar", "zk")


class ConstraintError(ArithmeticError):
    pass


@dataclass(frozen=True)
class ConstraintSpec:
    family: str
    extended: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")

    @property
    def s_cap(self) -> int | None:
        """Highest s-power with a guarantee (``None`` means every order)."""
        if self.family == "zk" or self.extended:
            return None
        return 2


def _sub_multisets(counts: tuple[int, ...]):
    for part in itertools.product(*(range(c + 1) for c in counts)):
        yield part, tuple(c - p for c, p in zip(counts, part))


def _bump(counts: tuple[int, ...], *idx: int, by: int = 1) -> tuple[int, ...] | None:
    out = list(counts)
    for i in idx:
        if i >= len(out):
            out.extend([0] * (i + 1 - len(out)))
        out[i] += by
        if out[i] < 0:
            return None
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass
class ConstraintSolver:
    spec: ConstraintSpec
    flagged: set = field(default_factory=set)

    def __post_init__(self):
        self._memo: dict[tuple, Fraction] = {}

    # F coefficients ---------------------------------------------------------
    def coeff(self, a: int, sigma: int, counts: tuple[int, ...]) -> Fraction:
        """Coefficient of ``hbar^a s^sigma prod t_i^counts[i]`` in ``F``."""
        counts = _bump(counts)
        key = (a, sigma, counts)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        value = self._solve(a, sigma, counts)
        self._memo[key] = value
        return value

    def _solve(self, a, sigma, counts) -> Fraction:
        if a < -1 or sigma < 0 or sigma % 2:
            return Fraction(0)
        grade = sum(i * c for i, c in enumerate(counts))
        if 2 * grade != 2 * a + sigma:
            return Fraction(0)
        cap = self.spec.s_cap
        if cap is not None and sigma > cap:
            raise ConstraintError(
                f"s^{sigma} is beyond the guaranteed orders of {self.spec.family}; use extended mode"
            )
        if not any(counts):
            return self._t_free(a, sigma)
        m = len(counts) - 1  # constraint for the largest index present
        rest = _bump(counts, m, by=-1)
        value = self._rhs(m, a, sigma, rest)
        return value / (dfact(2 * m + 1) * counts[m])

    def _t_free(self, a, sigma) -> Fraction:
        # removing a tau_0 multiplies by 2g - 2 + m = 2a + sigma
        mult = 2 * a + sigma
        if mult == 0:
            self.flagged.add((a, sigma))
            return Fraction(0)
        return self.coeff(a, sigma, (1,)) / mult

    # constraint right-hand sides ----------------------------------------------
    def _rhs(self, m, a, sigma, rest) -> Fraction:
        total = self._op(m, a, sigma, rest)
        if self.spec.family == "zbar":
            if m == 0 and a == -1 and sigma == 2 and not any(rest):
                total += Fraction(1, 2)
        elif sigma >= 2:
            total += self._op(m - 1, a, sigma - 2, rest)
        return total

    def _op(self, m, a, sigma, rest) -> Fraction:
        """Coefficient of ``hbar^a s^sigma t^rest`` in ``exp(-F) L_m exp(F)``."""
        op = VirasoroOp(m)
        total = Fraction(0)
        for i, j, w in op.second_order:
            both = _bump(rest, i, j)
            if i == j:
                mult = both[i] * (both[i] - 1)
            else:
                mult = both[i] * both[j]
            total += w * mult * self.coeff(a - 1, sigma, both)
            total += w * self._split_product(i, j, a - 1, sigma, rest)
        for j, c in enumerate(rest):
            if not c or j + m < 0:
                continue
            k = j + m
            moved = _bump(_bump(rest, j, by=-1), k)
            weight = Fraction(dfact(2 * k + 1), dfact(2 * j - 1))
            total += weight * moved[k] * self.coeff(a, sigma, moved)
        if m == -1 and a == -1 and sigma == 0 and rest == (2,):
            total += Fraction(1, 2)
        if m == 0 and a == 0 and sigma == 0 and not any(rest):
            total += Fraction(1, 8)
        return total

    def _split_product(self, i, j, a, sigma, rest) -> Fraction:
        """Coefficient of ``hbar^a s^sigma t^rest`` in ``d_i F * d_j F``."""
        total = Fraction(0)
        for left, right in _sub_multisets(rest):
            li = _bump(left, i)
            rj = _bump(right, j)
            for a1 in range(-1, a + 2):
                a2 = a - a1
                if a2 < -1:
                    continue
                for s1 in range(0, sigma + 1, 2):
                    x = self.coeff(a1, s1, li)
                    if not x:
                        continue
                    y = self.coeff(a2, sigma - s1, rj)
                    if y:
                        total += li[i] * x * rj[j] * y
        return total


def _targets(caps: Caps):
    """Every ``(a, sigma, counts)`` with nonzero grade-compatible support in the caps."""
    for sigma in range(0, caps.s_max + 1, 2):
        for a in range(-1, caps.q_max + 1):
            q = a + sigma // 2
            if q < 0 or q > caps.q_max:
                continue
            for parts in _partitions(q, caps.t_max):
                for zeros in range(0, caps.n_max - len(parts) + 1):
                    if not parts and not zeros:
                        continue
                    counts = [0] * (caps.t_max + 1)
                    counts[0] = zeros
                    for p in parts:
                        counts[p] += 1
                    yield a, sigma, tuple(counts)


def _partitions(q: int, largest: int):
    """Partitions of ``q`` into parts ``1..largest`` (as nonincreasing tuples)."""
    if q == 0:
        yield ()
        return
    for first in range(min(q, largest), 0, -1):
        for tail in _partitions(q - first, first):
            yield (first,) + tail


def solve_constraints(spec: ConstraintSpec | str, caps: Caps) -> TMonomialSeries:
    """Log-form solution ``F`` of the chosen constraint family within ``caps``.

    The returned series records in its notes the t-free coefficients that the
    constraints leave undetermined (set to zero).
    """
    if isinstance(spec, str):
        spec = ConstraintSpec(spec)
    caps = Caps(*caps)
    if spec.s_cap is not None and caps.s_max > spec.s_cap:
        raise ConstraintError(f"{spec.family} is only guaranteed through s^{spec.s_cap}")
    if spec.extended and spec.family == "zbar" and caps.s_max > 2:
        warnings.warn("zbar beyond s^2 is conjectural output", UserWarning, stacklevel=2)
    solver = ConstraintSolver(spec)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20000))
    try:
        terms = {}
        for a, sigma, counts in _targets(caps):
            c = solver.coeff(a, sigma, counts)
            if c:
                terms[(a, sigma, 0, *counts)] = c
        for sigma in range(0, caps.s_max + 1, 2):
            for a in range(-1, caps.q_max + 1):
                if 2 * a + sigma == 0 and a + sigma // 2 <= caps.q_max:
                    solver.coeff(a, sigma, ())
    finally:
        sys.setrecursionlimit(limit)
    notes = [f"undetermined t-free coefficient hbar^{a} s^{s} set to 0"
             for a, s in sorted(solver.flagged)]
    return TMonomialSeries(caps, terms, notes)

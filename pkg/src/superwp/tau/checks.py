"""Residual checks on the exponential (Z) form of solved series.

These re-apply the operators of :mod:`superwp.tau.virasoro` to ``exp(F)``,
which is independent of the coefficient formulas used inside the solver.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from superwp.exactcore.tseries import TKey, TMonomialSeries
from superwp.tau.virasoro import VirasoroOp, dfact, virasoro_apply


@dataclass
class Residual:
    label: str
    series: TMonomialSeries
    window: str
    nonzero: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.nonzero


def _window(caps, dn: int, s_max: int):
    def inside(t: TKey) -> bool:
        return t.sigma <= s_max and t.n <= caps.n_max - dn
    return inside


def constraint_residual(f: TMonomialSeries, m: int, family: str = "zbar",
                        s_max: int = 2) -> Residual:
    """Apply the family's constraint ``m`` to ``exp(f)``.

    Valid where no truncated input can contribute: two fewer t-factors than
    the cap, and ``s`` powers up to ``s_max``.
    """
    z = f.exp()
    res = z.d(m).scale(dfact(2 * m + 1)) - virasoro_apply(VirasoroOp(m), z)
    if family == "zbar":
        if m == 0:
            res = res - z.shift(da=-1, dsigma=2).scale(Fraction(1, 2))
    elif family == "zk":
        if m >= 1 or m == 0:
            res = res - virasoro_apply(VirasoroOp(m - 1), z).shift(dsigma=2)
    else:
        raise ValueError(f"unknown family {family!r}")
    inside = _window(f.caps, 2, s_max)
    win = res.select(inside)
    return Residual(f"{family} constraint m={m}", win,
                    f"n <= {f.caps.n_max - 2}, s <= {s_max}",
                    [(t, c) for t, c in win.readable_items()])


def virconj_residual(fbar: TMonomialSeries, m: int) -> Residual:
    return constraint_residual(fbar, m, "zbar", 2)


def bridge_series(fk: TMonomialSeries) -> TMonomialSeries:
    """``exp{s^2/2 (L_{-1} + t_0/hbar)} Z^K`` through ``s^2``."""
    zk = fk.exp()
    lifted = virasoro_apply(VirasoroOp(-1), zk) + zk.times_t(0).shift(da=-1)
    return zk + lifted.shift(dsigma=2).scale(Fraction(1, 2))


def omk_bridge_check(fbar: TMonomialSeries, fk: TMonomialSeries) -> Residual:
    """``Zbar - exp{s^2/2 (L_{-1} + t_0/hbar)} Z^K`` at s-orders 0 and 2."""
    diff = fbar.exp() - bridge_series(fk)
    win = diff.select(lambda t: t.sigma <= 2)
    return Residual("bridge", win, "s <= 2, full caps", [(t, c) for t, c in win.readable_items()])


def s0_agreement(fbar: TMonomialSeries, fk: TMonomialSeries) -> Residual:
    diff = (fbar - fk).select(lambda t: t.sigma == 0)
    return Residual("Z^K = Zbar at s = 0", diff, "s = 0", [(t, c) for t, c in diff.readable_items()])

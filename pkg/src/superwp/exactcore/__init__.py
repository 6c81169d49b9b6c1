"""Exact arithmetic over Q[p] with p standing for pi^2."""
from superwp.exactcore.kernel import BACKEND
from superwp.exactcore.poly import PiPoly, Poly, Rat, VolPoly, latex_frac, rat, rat_str, symmetrize
from superwp.exactcore.series import LaurentSeries, VolumeSeries
from superwp.exactcore.tseries import (
    Caps,
    TKey,
    TMonomialSeries,
    extract_volpoly,
    flat_key,
    substitute_t,
    unflatten,
)


def principal_part(f: LaurentSeries) -> LaurentSeries:
    return f.principal_part()


def eval_at_minus4pi2(v: Poly, i: int) -> Poly:
    return v.eval_at_minus4pi2(i)


__all__ = [
    "BACKEND", "Caps", "LaurentSeries", "PiPoly", "Poly", "Rat", "TKey", "TMonomialSeries",
    "VolPoly", "VolumeSeries", "eval_at_minus4pi2", "extract_volpoly", "flat_key", "latex_frac",
    "principal_part", "rat", "rat_str", "substitute_t", "symmetrize", "unflatten",
]

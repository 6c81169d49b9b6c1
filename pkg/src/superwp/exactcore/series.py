"""Truncated series in ``s``: volume series and Laurent series in ``z``.

``LaurentSeries`` stores a sparse map ``(s_power, z_power, p_power) -> Rat``.
The ``z`` exponent may be negative. Products are truncated in ``s`` only; the
``z`` range of every series handled here is finite, so no ``z`` truncation is
needed.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping

from superwp.exactcore import kernel
from superwp.exactcore.poly import PiPoly, Poly, rat


class LaurentSeries:
    __slots__ = ("s_max", "_terms")

    def __init__(self, s_max: int, terms: Mapping[tuple[int, int, int], object] | None = None):
        self.s_max = s_max
        clean: dict[tuple[int, int, int], Fraction] = {}
        for (sp, zp, pk), c in (terms or {}).items():
            if sp > s_max:
                continue
            c = rat(c)
            key = (int(sp), int(zp), int(pk))
            total = clean.get(key, 0) + c
            if total:
                clean[key] = total
            else:
                clean.pop(key, None)
        self._terms = clean

    @classmethod
    def _raw(cls, s_max, terms):
        obj = cls.__new__(cls)
        obj.s_max = s_max
        obj._terms = terms
        return obj

    @classmethod
    def from_z_series(cls, s_max: int, zcoeffs: Mapping[int, PiPoly], s_power: int = 0):
        """Series with a single ``s`` power and the given ``z``-coefficients."""
        terms = {}
        for zp, pp in zcoeffs.items():
            for k, c in enumerate(pp.coeffs):
                if c:
                    terms[(s_power, zp, k)] = c
        return cls(s_max, terms)

    def items(self):
        return sorted(self._terms.items())

    def coefficient(self, s_power: int, z_power: int) -> PiPoly:
        cs = {k: c for (sp, zp, k), c in self._terms.items() if sp == s_power and zp == z_power}
        if not cs:
            return PiPoly()
        return PiPoly(cs.get(k, 0) for k in range(max(cs) + 1))

    def s_part(self, s_power: int) -> dict[int, PiPoly]:
        """``z``-coefficients of ``s**s_power``, keyed by ``z`` exponent."""
        zs = sorted({zp for (sp, zp, _) in self._terms if sp == s_power})
        return {zp: self.coefficient(s_power, zp) for zp in zs}

    def z_powers(self) -> set[int]:
        return {zp for (_, zp, _) in self._terms}

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        s_max = min(self.s_max, other.s_max)
        out = kernel.sparse_add(self._terms, other._terms)
        return LaurentSeries._raw(s_max, {k: c for k, c in out.items() if k[0] <= s_max})

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + other * Fraction(-1)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return LaurentSeries._raw(self.s_max, {})
            return LaurentSeries._raw(self.s_max, {k: c * other for k, c in self._terms.items()})
        s_max = min(self.s_max, other.s_max)
        prod = kernel.sparse_mul(self._terms, other._terms, [((1, 0, 0), s_max)])
        return LaurentSeries._raw(s_max, prod)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self._terms == other._terms

    def principal_part(self) -> "LaurentSeries":
        """Strictly negative ``z`` powers only."""
        return LaurentSeries._raw(self.s_max, {k: c for k, c in self._terms.items() if k[1] < 0})

    def __repr__(self):
        return f"LaurentSeries(s_max={self.s_max}, terms={len(self._terms)})"


class VolumeSeries:
    """``sum_m s**m * c_m`` with VolPoly coefficients ``c_m`` (even ``m`` only).

    The stored coefficient is the actual series coefficient, so that the raw
    volume is ``m! * c_m``.
    """

    __slots__ = ("s_max", "nvars", "_coeffs")

    def __init__(self, s_max: int, nvars: int, coeffs: Mapping[int, Poly] | None = None):
        self.s_max = s_max
        self.nvars = nvars
        store = {}
        for m, poly in (coeffs or {}).items():
            if m % 2:
                raise ValueError(f"odd s power {m} in a volume series")
            if poly.nvars != nvars:
                raise ValueError("variable count mismatch")
            if m <= s_max and not poly.is_zero():
                store[m] = poly
        self._coeffs = dict(sorted(store.items()))

    def __getitem__(self, m: int) -> Poly:
        return self._coeffs.get(m, Poly.zero(self.nvars))

    def __iter__(self) -> Iterator[int]:
        return iter(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def __eq__(self, other):
        if not isinstance(other, VolumeSeries):
            return NotImplemented
        return self.nvars == other.nvars and self._coeffs == other._coeffs

    def __repr__(self):
        return f"VolumeSeries(s_max={self.s_max}, {self._coeffs!r})"

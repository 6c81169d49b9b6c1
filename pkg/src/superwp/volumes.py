"""Volume polynomials from the kernel recursion and from the Laplace-domain disk equations.

Conventions
-----------
``V^(m)_{g,n}(l_1..l_n)`` is the raw volume with ``n`` Neveu-Schwarz boundaries
of squared lengths ``l_i = L_i**2`` and ``m`` Ramond points. The generating
series is ``V_{g,n}(s, L) = sum_m s**m / m! * V^(m)_{g,n}``. Internally the
solver works with the series coefficients ``c_{g,n,m} = V^(m)_{g,n} / m!``,
in which the Ramond splitting of the recursion has no binomial factors:

    L1 c_{g,n,m} = 1/2 int int x y D(L1, x, y) [c_{g-1,n+1,m}(x, y, L_K)
                       + sum c_{g1,|I|+1,m1}(x, L_I) c_{g2,|J|+1,m2}(y, L_J)]
                   + sum_j int x R(L1, L_j, x) c_{g,n-1,m}(x, L_{K\\j})
                   + [n = 1] ([g = 0, m = 2] / 2 + [g = 1, m = 0] / 8) L1

with the split sum over ``g1 + g2 = g``, ``I + J = K = {2..n}``, ``m1 + m2 = m``.
Entries with ``(g, n + m)`` unstable vanish. Results are only guaranteed
for ``m <= 2``; the disk ``(0, 1)`` is exact at every order.
"""
from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

from superwp.exactcore.poly import PiPoly, Poly
from superwp.exactcore.series import LaurentSeries, VolumeSeries
from superwp.kernels import d_double_moment, r_moment_in_l, sec_coeffs

GUARANTEED_ORDERS = (0, 2)

RECURSION = "recursion-solved"
CLOSED_FORM = "closed-form"
FROM_TAU = "tau-extracted"
UNVERIFIED = "unverified-order"


class RecursionError(ArithmeticError):
    """Raised when the recursion produces something that cannot be a volume."""


class UnverifiedOrderWarning(UserWarning):
    pass


@dataclass(frozen=True, order=True)
class VolumeId:
    g: int
    n: int
    m: int = 0

    def __post_init__(self):
        if self.g < 0 or self.n < 0 or self.m < 0:
            raise ValueError(f"negative entry in {self}")
        if self.m % 2:
            raise ValueError(f"Ramond count must be even, got m={self.m}")

    @property
    def stable(self) -> bool:
        return self.n + self.m >= (3 if self.g == 0 else 1)

    @property
    def chi(self) -> int:
        return 2 * self.g - 2 + self.n

    @property
    def epsilon(self) -> Fraction:
        """Normalization ``2**(g - 1 + n + m/2)``."""
        return Fraction(2) ** (self.g - 1 + self.n + self.m // 2)

    @property
    def weight(self) -> int:
        """Total degree in ``(l_i, p)``; also bounds the degree in the ``l_i``."""
        return self.g - 1 + self.m // 2


# ---------------------------------------------------------------------------
# Laplace-domain disk equations
# ---------------------------------------------------------------------------

def _sec_series(s_max: int, half: bool) -> LaurentSeries:
    terms = {}
    for k, a in enumerate(sec_coeffs(s_max)):
        for pk, c in enumerate(a.coeffs):
            if c:
                terms[(0, 2 * k, pk)] = c / 2 if half else c
    return LaurentSeries(s_max, terms)


def _solve_disk_equation(s_max: int, weight: LaurentSeries) -> LaurentSeries:
    if s_max < 2 or s_max % 2:
        raise ValueError("s_max must be even and at least 2")
    seed = LaurentSeries(s_max, {(2, -2, 0): Fraction(1, 2)})
    f = seed
    # each pass fixes one more power of s^2
    for _ in range(s_max // 2):
        f = seed + (f * f * weight).principal_part()
    return f


def disk_laplace(s_max: int) -> LaurentSeries:
    """``F = s^2/(2 z^2) + [F^2 / (2 cos 2 pi z)]_-`` solved through ``s**s_max``."""
    return _solve_disk_equation(s_max, _sec_series(s_max, half=True))


def disk_top_degree(s_max: int) -> LaurentSeries:
    """``G = s^2/(2 z^2) + [G^2 / 2]_-``: top-degree part of the disk series."""
    return _solve_disk_equation(s_max, LaurentSeries(s_max, {(0, 0, 0): Fraction(1, 2)}))


def laplace_to_volume(f: LaurentSeries) -> VolumeSeries:
    """Invert ``F = Laplace(L * V)`` term by term: ``z^-(2k+2) -> l^k / (2k+1)!``."""
    coeffs: dict[int, dict] = {}
    for (sp, zp, pk), c in f.items():
        if zp >= 0 or zp % 2:
            raise ValueError(f"z-power {zp} is not a negative even integer")
        k = (-zp - 2) // 2
        coeffs.setdefault(sp, {})
        coeffs[sp][(k, pk)] = coeffs[sp].get((k, pk), 0) + c / math.factorial(2 * k + 1)
    return VolumeSeries(f.s_max, 1, {sp: Poly(1, t) for sp, t in coeffs.items()})


def catalan(m: int) -> int:
    return math.comb(2 * m, m) // (m + 1)


# ---------------------------------------------------------------------------
# Closed forms in genus zero
# ---------------------------------------------------------------------------

def closed_form_v2(n: int) -> Poly:
    """``V^(2)_{0,n} = (n-1)!``."""
    if n < 1:
        raise ValueError("n >= 1 required")
    return Poly.constant(n, math.factorial(n - 1))


def closed_form_v4(n: int) -> Poly:
    """``V^(4)_{0,n} = (n+2)! p + (n+1)!/4 * sum l_i``."""
    if n < 1:
        raise ValueError("n >= 1 required")
    out = Poly.p(n) * math.factorial(n + 2)
    lin = Fraction(math.factorial(n + 1), 4)
    for i in range(n):
        out = out + Poly.var(n, i) * lin
    return out


# ---------------------------------------------------------------------------
# The recursion
# ---------------------------------------------------------------------------

Lookup = Callable[[int, int, int], Poly]


def _by_first(poly: Poly) -> dict[int, dict]:
    """Split ``poly`` by the exponent of its first variable."""
    out: dict[int, dict] = {}
    for key, c in poly.items():
        out.setdefault(key[0], {})[key[1:]] = c
    return out


def _by_first_two(poly: Poly) -> dict[tuple[int, int], dict]:
    out: dict[tuple[int, int], dict] = {}
    for key, c in poly.items():
        out.setdefault((key[0], key[1]), {})[key[2:]] = c
    return out


def _place(n: int, rest: Mapping[tuple, Fraction], slots: list[int]) -> Poly:
    """Embed a term map over ``len(slots)`` variables (+p) into the n-variable RHS ring."""
    out = {}
    for key, c in rest.items():
        new = [0] * (n + 1)
        for s, e in zip(slots, key[:-1]):
            new[s] = e
        new[-1] = key[-1]
        out[tuple(new)] = c
    return Poly._raw(n, out)


def recursion_rhs(g: int, n: int, lookup: Lookup, m: int) -> Poly:
    """Right-hand side of the recursion for ``L1 * c_{g,n,m}``.

    The result is a polynomial in ``n`` variables where slot 0 holds the raw
    length ``L1`` and slots ``1..n-1`` hold ``l_2..l_n``. ``lookup(g, n, m)``
    must return the series coefficient ``c_{g,n,m}`` (zero when unstable).
    """
    if n < 1:
        raise ValueError("the recursion needs n >= 1")
    rest_slots = list(range(1, n))
    total = Poly.zero(n)

    # D-term, non-separating
    d_part = Poly.zero(n)
    if g >= 1:
        src = lookup(g - 1, n + 1, m)
        for (i, j), rest in _by_first_two(src).items():
            d_part = d_part + d_double_moment(i, j).embed(n, [0]) * _place(n, rest, rest_slots)

    # D-term, separating
    others = list(range(n - 1))  # positions of l_2..l_n inside c_{g,n,.}
    for g1 in range(g + 1):
        g2 = g - g1
        for m1 in range(0, m + 1, 2):
            m2 = m - m1
            for r in range(n):
                for I in itertools.combinations(others, r):
                    J = [k for k in others if k not in I]
                    # the partner of a self-reference is always the unstable (0, 1, 0)
                    if not (VolumeId(g1, len(I) + 1, m1).stable
                            and VolumeId(g2, len(J) + 1, m2).stable):
                        continue
                    a = lookup(g1, len(I) + 1, m1)
                    if a.is_zero():
                        continue
                    b = lookup(g2, len(J) + 1, m2)
                    if b.is_zero():
                        continue
                    a_parts = _by_first(a)
                    b_parts = _by_first(b)
                    for i, ra in a_parts.items():
                        pa = _place(n, ra, [1 + k for k in I])
                        for j, rb in b_parts.items():
                            pb = _place(n, rb, [1 + k for k in J])
                            d_part = d_part + d_double_moment(i, j).embed(n, [0]) * pa * pb
    total = total + d_part * Fraction(1, 2)

    # R-term
    if n >= 2:
        src = lookup(g, n - 1, m)
        if not src.is_zero():
            parts = _by_first(src)
            for j in range(1, n):
                slots = [s for s in rest_slots if s != j]
                for k, rest in parts.items():
                    total = total + r_moment_in_l(k).embed(n, [0, j]) * _place(n, rest, slots)

    if n == 1:
        if g == 0 and m == 2:
            total = total + Poly.var(1, 0) * Fraction(1, 2)
        if g == 1 and m == 0:
            total = total + Poly.var(1, 0) * Fraction(1, 8)
    return total


def divide_by_L1(rhs: Poly) -> Poly:
    """Exact division by the raw ``L1`` in slot 0, returning a polynomial in ``l_1``."""
    out = {}
    for key, c in rhs.items():
        e = key[0]
        if e % 2 == 0:
            raise RecursionError(f"right-hand side not divisible by L1: term {key} -> {c}")
        out[((e - 1) // 2,) + key[1:]] = c
    return Poly(rhs.nvars, out)


class RecursionSolver:
    """Lazily solves the recursion, memoizing every series coefficient.

    Dependencies are fetched on demand; they always have smaller ``m``, or
    equal ``m`` and smaller ``2g - 2 + n``, so the memoized descent terminates.
    """

    def __init__(self, extended: bool = False, check: bool = True):
        self.extended = extended
        self.check = check
        self._cache: dict[tuple[int, int, int], Poly] = {}

    def allowed(self, g: int, n: int, m: int) -> bool:
        return m in GUARANTEED_ORDERS or (g, n) == (0, 1) or self.extended

    def coeff(self, g: int, n: int, m: int) -> Poly:
        key = (g, n, m)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        vid = VolumeId(g, n, m)
        if n == 0:
            raise ValueError("the recursion does not produce n = 0 volumes")
        if not vid.stable:
            out = Poly.zero(n)
        else:
            if not self.allowed(g, n, m):
                raise ValueError(f"order s^{m} for (g, n) = ({g}, {n}) needs extended mode")
            out = divide_by_L1(recursion_rhs(g, n, self.coeff, m))
            if self.check:
                self._validate(vid, out)
        self._cache[key] = out
        return out

    def _validate(self, vid: VolumeId, poly: Poly):
        if not poly.is_symmetric():
            raise RecursionError(f"{vid}: result is not symmetric")
        w = poly.weights()
        if w and w != {vid.weight}:
            raise RecursionError(f"{vid}: inhomogeneous weights {sorted(w)}, expected {vid.weight}")

    def volume(self, g: int, n: int, m: int) -> Poly:
        """Raw volume ``V^(m)_{g,n} = m! c_{g,n,m}``."""
        return self.coeff(g, n, m) * math.factorial(m)

    def series(self, g: int, n: int, s_max: int) -> VolumeSeries:
        return VolumeSeries(s_max, n, {m: self.coeff(g, n, m) for m in range(0, s_max + 1, 2)})


def disk_direct(s_max: int) -> VolumeSeries:
    """Disk series from the recursion with ``n = 1`` (moment route)."""
    return RecursionSolver().series(0, 1, s_max)


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------

@dataclass
class VolumeTable:
    """Raw volumes ``V^(m)_{g,n}`` with a provenance tag per entry."""

    entries: dict[VolumeId, Poly] = field(default_factory=dict)
    provenance: dict[VolumeId, tuple[str, ...]] = field(default_factory=dict)

    def add(self, vid: VolumeId, poly: Poly, *tags: str):
        self.entries[vid] = poly
        self.provenance[vid] = tuple(tags)

    def __contains__(self, vid) -> bool:
        return vid in self.entries

    def __iter__(self) -> Iterator[VolumeId]:
        return iter(sorted(self.entries))

    def __len__(self):
        return len(self.entries)

    def get(self, g: int, n: int, m: int) -> Poly:
        vid = VolumeId(g, n, m)
        if vid in self.entries:
            return self.entries[vid]
        if not vid.stable:
            return Poly.zero(n)
        raise KeyError(f"missing table entry {vid}")

    def series_coeff(self, g: int, n: int, m: int) -> Poly:
        return self.get(g, n, m) * Fraction(1, math.factorial(m))

    def series(self, g: int, n: int, s_max: int) -> VolumeSeries:
        return VolumeSeries(
            s_max, n,
            {m: self.series_coeff(g, n, m) for m in range(0, s_max + 1, 2)
             if VolumeId(g, n, m) in self.entries},
        )

    def pairs(self) -> list[tuple[VolumeId, VolumeId]]:
        """Adjacent ``(g, n, m) -> (g, n+1, m)`` pairs present in the table."""
        return [(v, VolumeId(v.g, v.n + 1, v.m)) for v in self
                if VolumeId(v.g, v.n + 1, v.m) in self.entries]

    def to_json(self) -> dict:
        return {
            "entries": [
                {"g": v.g, "n": v.n, "m": v.m, "provenance": list(self.provenance.get(v, ())),
                 "volume": self.entries[v].to_json()}
                for v in self
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "VolumeTable":
        table = cls()
        for e in data["entries"]:
            table.add(VolumeId(e["g"], e["n"], e["m"]), Poly.from_json(e["volume"]), *e["provenance"])
        return table


def solve_volumes(g_max: int, n_max: int, s_orders: Iterable[int] = GUARANTEED_ORDERS,
                  extended: bool = False, chi_max: int | None = None,
                  solver: RecursionSolver | None = None) -> VolumeTable:
    """Fill a table with every stable ``(g, n)``, ``1 <= n <= n_max``, at the given orders.

    Orders beyond ``s^2`` need ``extended=True`` and are tagged unverified.
    """
    s_orders = sorted(set(s_orders))
    beyond = [m for m in s_orders if m not in GUARANTEED_ORDERS]
    if beyond and not extended:
        raise ValueError(f"orders {beyond} are beyond the guaranteed range; pass extended=True")
    if beyond:
        warnings.warn(f"orders {beyond} are conjectural and tagged '{UNVERIFIED}'",
                      UnverifiedOrderWarning, stacklevel=2)
    solver = solver or RecursionSolver(extended=extended)
    if extended:
        solver.extended = True
    table = VolumeTable()
    cells = sorted(
        (m, 2 * g - 2 + n, g, n)
        for m in s_orders for g in range(g_max + 1) for n in range(1, n_max + 1)
        if VolumeId(g, n, m).stable and (chi_max is None or 2 * g - 2 + n <= chi_max)
    )
    for m, _, g, n in cells:
        tags = [RECURSION]
        if m not in GUARANTEED_ORDERS and (g, n) != (0, 1):
            tags.append(UNVERIFIED)
        table.add(VolumeId(g, n, m), solver.volume(g, n, m), *tags)
    return table


# ---------------------------------------------------------------------------
# Dilaton relation and free energies
# ---------------------------------------------------------------------------

@dataclass
class DilatonReport:
    g: int
    n: int
    checked: list[int] = field(default_factory=list)
    failures: list[tuple[int, Poly, Poly]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def dilaton_check(g: int, n: int, table: VolumeTable) -> DilatonReport:
    """``V^(m)_{g,n+1}(l, l_{n+1} = -4p) = (2g - 2 + n + m) V^(m)_{g,n}(l)`` at shared orders."""
    report = DilatonReport(g, n)
    orders = sorted({v.m for v in table if (v.g, v.n) == (g, n + 1)}
                    & {v.m for v in table if (v.g, v.n) == (g, n)})
    for m in orders:
        lhs = table.get(g, n + 1, m).eval_at_minus4pi2(n)
        rhs = table.get(g, n, m) * (2 * g - 2 + n + m)
        report.checked.append(m)
        if lhs != rhs:
            report.failures.append((m, lhs, rhs))
    return report


@dataclass
class FreeEnergy:
    g: int
    coeffs: dict[int, PiPoly]  # s-power -> series coefficient of F_g(s)
    singular: list[int]


def free_energy(g: int, source: VolumeTable | RecursionSolver, s_max: int = 2) -> FreeEnergy:
    """Solve ``(2g - 2 + s d/ds) F_g = V_{g,1}(s, 2 pi i)`` order by order."""
    coeffs: dict[int, PiPoly] = {}
    singular = []
    for m in range(0, s_max + 1, 2):
        if isinstance(source, VolumeTable):
            if VolumeId(g, 1, m) not in source and VolumeId(g, 1, m).stable:
                continue
            c = source.series_coeff(g, 1, m)
        else:
            c = source.coeff(g, 1, m)
        rhs = c.eval_at_minus4pi2(0).coefficient(())
        k = 2 * g - 2 + m
        if k == 0:
            singular.append(m)
            continue
        coeffs[m] = rhs * Fraction(1, k)
    return FreeEnergy(g, coeffs, singular)

"""Truncated series in ``hbar``, ``s``, ``p`` and the times ``t_0, t_1, ...``.

A term ``c * hbar**a * s**sigma * p**k * prod_i t_i**n_i`` is stored under the
flat key ``(a, sigma, k, n_0, ..., n_K)``. Flat keys let products go through
the shared sparse multiplication kernel.

Truncation is controlled by :class:`Caps`. Besides the t-index bound ``K``,
three additive gradings are capped:

* ``sigma`` (power of ``s``),
* ``q = a + sigma/2`` (for every genuine correlator ``q`` equals the sum of
  the t-indices plus the power of ``p``, so it bounds the t-indices too),
* ``n`` (number of ``t`` factors).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

from superwp.exactcore import kernel
from superwp.exactcore.poly import Poly, rat, rat_str


class Caps(NamedTuple):
    t_max: int
    q_max: int
    s_max: int
    n_max: int

    def shrink(self, dq: int = 0, dn: int = 0, ds: int = 0) -> "Caps":
        return Caps(self.t_max, self.q_max - dq, self.s_max - ds, self.n_max - dn)


@dataclass(frozen=True)
class TKey:
    """Readable form of a flat key."""

    a: int
    sigma: int
    pk: int
    times: tuple[int, ...]  # sorted multiset of t-indices

    @property
    def n(self) -> int:
        return len(self.times)

    def counts(self, t_max: int) -> tuple[int, ...]:
        c = [0] * (t_max + 1)
        for i in self.times:
            c[i] += 1
        return tuple(c)


def flat_key(a: int, sigma: int, times: Iterable[int], t_max: int, pk: int = 0) -> tuple:
    counts = [0] * (t_max + 1)
    for i in times:
        if i > t_max:
            raise ValueError(f"t-index {i} exceeds cap {t_max}")
        counts[i] += 1
    return (a, sigma, pk, *counts)


def unflatten(key: tuple) -> TKey:
    times = []
    for i, c in enumerate(key[3:]):
        times.extend([i] * c)
    return TKey(key[0], key[1], key[2], tuple(times))


def _q2(key) -> int:
    return 2 * key[0] + key[1]


def _n(key) -> int:
    return sum(key[3:])


class TMonomialSeries:
    """Immutable truncated series; see module docstring for the key layout."""

    __slots__ = ("caps", "_terms", "notes")

    def __init__(self, caps: Caps, terms: Mapping[tuple, object] | None = None,
                 notes: Iterable[str] = ()):
        self.caps = Caps(*caps)
        width = self.caps.t_max + 4
        clean = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if len(key) != width:
                raise ValueError(f"key {key} does not match t_max={self.caps.t_max}")
            c = rat(c)
            if c and self._within(key):
                clean[key] = clean.get(key, 0) + c
                if not clean[key]:
                    del clean[key]
        self._terms = clean
        self.notes = tuple(notes)

    @classmethod
    def _raw(cls, caps, terms, notes=()):
        obj = cls.__new__(cls)
        obj.caps = caps
        obj._terms = terms
        obj.notes = tuple(notes)
        return obj

    def _within(self, key) -> bool:
        c = self.caps
        return key[1] <= c.s_max and _q2(key) <= 2 * c.q_max and _n(key) <= c.n_max

    @classmethod
    def one(cls, caps: Caps) -> "TMonomialSeries":
        return cls(caps, {(0, 0, 0) + (0,) * (caps.t_max + 1): 1})

    @classmethod
    def from_terms(cls, caps: Caps, terms: Iterable[tuple[int, int, Sequence[int], object]],
                   pk: int = 0) -> "TMonomialSeries":
        """Build from ``(a, sigma, t_indices, coefficient)`` tuples."""
        out = {}
        for a, sigma, times, c in terms:
            key = flat_key(a, sigma, times, caps.t_max, pk)
            out[key] = out.get(key, 0) + rat(c)
        return cls(caps, out)

    # inspection ------------------------------------------------------------
    def items(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self._terms.items())

    def readable_items(self) -> list[tuple[TKey, Fraction]]:
        return [(unflatten(k), c) for k, c in self.items()]

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, a: int, sigma: int, times: Iterable[int], pk: int = 0) -> Fraction:
        times = list(times)
        if any(i > self.caps.t_max for i in times):
            return Fraction(0)
        return self._terms.get(flat_key(a, sigma, times, self.caps.t_max, pk), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, TMonomialSeries):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self):
        return f"TMonomialSeries(caps={tuple(self.caps)}, terms={len(self._terms)})"

    # filtering -------------------------------------------------------------
    def select(self, pred: Callable[[TKey], bool]) -> "TMonomialSeries":
        return TMonomialSeries._raw(
            self.caps, {k: c for k, c in self._terms.items() if pred(unflatten(k))}, self.notes
        )

    def with_caps(self, caps: Caps) -> "TMonomialSeries":
        """Re-house under new caps (dropping terms outside, widening t-index if needed)."""
        caps = Caps(*caps)
        out = {}
        for k, c in self._terms.items():
            counts = k[3:]
            if any(counts[caps.t_max + 1:]):
                continue
            counts = counts[: caps.t_max + 1] + (0,) * max(0, caps.t_max + 1 - len(counts))
            out[k[:3] + tuple(counts)] = c
        return TMonomialSeries(caps, out, self.notes)

    # arithmetic ------------------------------------------------------------
    def _check(self, other):
        if self.caps.t_max != other.caps.t_max:
            raise ValueError("t-index caps differ")

    def _meet(self, other) -> Caps:
        return Caps(self.caps.t_max, min(self.caps.q_max, other.caps.q_max),
                    min(self.caps.s_max, other.caps.s_max), min(self.caps.n_max, other.caps.n_max))

    def __add__(self, other: "TMonomialSeries") -> "TMonomialSeries":
        self._check(other)
        caps = self._meet(other)
        out = kernel.sparse_add(self._terms, other._terms)
        return TMonomialSeries(caps, out, self.notes + other.notes)

    def __sub__(self, other: "TMonomialSeries") -> "TMonomialSeries":
        self._check(other)
        caps = self._meet(other)
        out = kernel.sparse_add(self._terms, other._terms, -1)
        return TMonomialSeries(caps, out, self.notes + other.notes)

    def scale(self, c) -> "TMonomialSeries":
        c = rat(c)
        if not c:
            return TMonomialSeries._raw(self.caps, {}, self.notes)
        return TMonomialSeries._raw(self.caps, {k: v * c for k, v in self._terms.items()}, self.notes)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        caps = self._meet(other)
        width = caps.t_max + 4
        limits = [((0, 1) + (0,) * (width - 2), caps.s_max),
                  ((0, 0, 0) + (1,) * (width - 3), caps.n_max)]
        if all(_q2(k) >= 0 for k in self._terms) and all(_q2(k) >= 0 for k in other._terms):
            limits.append(((2, 1) + (0,) * (width - 2), 2 * caps.q_max))
        prod = kernel.sparse_mul(self._terms, other._terms, limits)
        return TMonomialSeries(caps, prod, self.notes + other.notes)

    __rmul__ = __mul__

    def exp(self) -> "TMonomialSeries":
        """``exp(self)`` within caps; ``self`` must have no constant term."""
        return self._power_series(lambda j: Fraction(1, math.factorial(j)), start=0)

    def log(self) -> "TMonomialSeries":
        """``log(self)`` within caps; ``self`` must have constant term 1."""
        zero = (0, 0, 0) + (0,) * (self.caps.t_max + 1)
        if self._terms.get(zero) != 1:
            raise ValueError("logarithm needs constant term 1")
        x = TMonomialSeries._raw(self.caps, {k: c for k, c in self._terms.items() if k != zero})
        return x._power_series(lambda j: Fraction((-1) ** (j + 1), j), start=1)

    def _power_series(self, coeff, start: int) -> "TMonomialSeries":
        zero = (0, 0, 0) + (0,) * (self.caps.t_max + 1)
        if zero in self._terms:
            raise ValueError("series has a constant term")
        for k in self._terms:
            if _n(k) == 0 and k[1] == 0 and k[0] <= 0:
                raise ValueError(f"term {unflatten(k)} is not nilpotent under the caps")
        result = {zero: Fraction(1)} if start == 0 else {}
        power = TMonomialSeries.one(self.caps)
        bound = self.caps.n_max + self.caps.s_max + 2 * max(self.caps.q_max, 0) + 2
        j = 0
        while True:
            j += 1
            power = power * self
            if power.is_zero():
                break
            if j > bound:
                raise ValueError("power series did not terminate within caps")
            result = kernel.sparse_add(result, power._terms, coeff(j))
        return TMonomialSeries(self.caps, result, self.notes)

    # calculus on the times ------------------------------------------------
    def d(self, k: int) -> "TMonomialSeries":
        """Partial derivative in ``t_k``."""
        pos = 3 + k
        out = {}
        if k > self.caps.t_max:
            return TMonomialSeries._raw(self.caps, {}, self.notes)
        for key, c in self._terms.items():
            e = key[pos]
            if e:
                new = key[:pos] + (e - 1,) + key[pos + 1:]
                out[new] = c * e
        return TMonomialSeries._raw(self.caps, out, self.notes)

    def times_t(self, j: int) -> "TMonomialSeries":
        """Multiply by ``t_j``; terms leaving the caps are dropped."""
        if j > self.caps.t_max:
            return TMonomialSeries._raw(self.caps, {}, self.notes + (f"t_{j} beyond t-index cap",))
        pos = 3 + j
        out = {}
        for key, c in self._terms.items():
            new = key[:pos] + (key[pos] + 1,) + key[pos + 1:]
            if self._within(new):
                out[new] = c
        return TMonomialSeries._raw(self.caps, out, self.notes)

    def shift(self, da: int = 0, dsigma: int = 0, dp: int = 0) -> "TMonomialSeries":
        """Multiply by ``hbar**da * s**dsigma * p**dp``."""
        out = {}
        for key, c in self._terms.items():
            new = (key[0] + da, key[1] + dsigma, key[2] + dp) + key[3:]
            if self._within(new):
                out[new] = c
        return TMonomialSeries._raw(self.caps, out, self.notes)

    # serialization ----------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "caps": dict(self.caps._asdict()),
            "terms": [
                {"hbar": t.a, "s": t.sigma, "p": t.pk, "t": list(t.times), "c": rat_str(c)}
                for t, c in self.readable_items()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TMonomialSeries":
        caps = Caps(**data["caps"])
        return cls(
            caps,
            {flat_key(t["hbar"], t["s"], t["t"], caps.t_max, t["p"]): rat(t["c"]) for t in data["terms"]},
        )


# volume polynomial <-> t-monomials ---------------------------------------------

def _weight(e: int) -> int:
    return 2**e * math.factorial(e)


def substitute_t(v: Poly) -> dict[tuple[int, tuple[int, ...]], Fraction]:
    """Replace ``l_i**k`` by ``2**k k! t_k`` in every monomial of ``v``.

    Returns a map ``(p_power, sorted t-indices) -> coefficient``. Each
    variable contributes exactly one time, so an ``n``-variable polynomial
    produces degree-``n`` monomials in the ``t``'s.
    """
    out: dict[tuple[int, tuple[int, ...]], Fraction] = {}
    for key, c in v.items():
        exps = key[:-1]
        w = 1
        for e in exps:
            w *= _weight(e)
        tk = (key[-1], tuple(sorted(exps)))
        out[tk] = out.get(tk, 0) + c * w
    return {k: c for k, c in out.items() if c}


def _multiset_factor(times: Sequence[int]) -> int:
    f = 1
    for i in set(times):
        f *= math.factorial(list(times).count(i))
    return f


def _distinct_perms(times: Sequence[int]) -> list[tuple[int, ...]]:
    from itertools import permutations

    return sorted(set(permutations(times)))


def extract_volpoly(terms: Mapping[tuple[int, tuple[int, ...]], object], n: int) -> Poly:
    """Symmetric inverse of :func:`substitute_t` for ``n`` variables."""
    out = {}
    nfact = math.factorial(n)
    for (pk, times), c in terms.items():
        if len(times) != n:
            raise ValueError(f"monomial {times} does not have {n} factors")
        w = 1
        for e in times:
            w *= _weight(e)
        x = rat(c) * _multiset_factor(times) / (nfact * w)
        for perm in _distinct_perms(times):
            out[perm + (pk,)] = x
    return Poly(n, out)

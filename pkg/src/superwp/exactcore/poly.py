"""Exact polynomials over Q with the formal symbol ``p`` standing for pi^2.

Two types live here:

* :class:`PiPoly` -- dense univariate polynomial in ``p``.
* :class:`Poly` -- sparse polynomial in ``n`` variables and ``p``. Keys are
  exponent tuples of length ``n + 1``; the last slot is the power of ``p``.

A *volume polynomial* (``VolPoly``) is a :class:`Poly` whose variables are the
squared boundary lengths ``l_i = L_i**2``. Moment polynomials coming out of
the kernels use the same class with the raw lengths ``L_i`` as variables.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from superwp.exactcore import kernel

Rat = Fraction
PI2 = math.pi**2


def rat(value) -> Fraction:
    """Parse an int, Fraction or ``"num/den"`` string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def rat_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def latex_frac(q: Fraction) -> str:
    """``\\frac32`` for one-digit parts, ``\\frac{11}{24}`` otherwise."""
    num, den = abs(q.numerator), q.denominator
    if den == 1:
        return str(num)
    if num < 10 and den < 10:
        return rf"\frac{num}{den}"
    return rf"\frac{{{num}}}{{{den}}}"


class PiPoly:
    """Dense polynomial ``sum c_k p**k`` with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [rat(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, c, k: int) -> "PiPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __add__(self, other):
        other = _as_pipoly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PiPoly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return PiPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_pipoly(other))

    def __rsub__(self, other):
        return _as_pipoly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PiPoly(c * other for c in self.coeffs)
        other = _as_pipoly(other)
        return PiPoly(kernel.convolve(list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PiPoly([other])
        if not isinstance(other, PiPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("PiPoly", self.coeffs))

    def __call__(self, p: float = PI2) -> float:
        return sum(float(c) * p**k for k, c in enumerate(self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "PiPoly(0)"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                parts.append(rat_str(c) + ("" if k == 0 else "*p" if k == 1 else f"*p^{k}"))
        return "PiPoly(" + " + ".join(parts) + ")"


def _as_pipoly(x) -> PiPoly:
    if isinstance(x, PiPoly):
        return x
    return PiPoly([x])


class Poly:
    """Sparse polynomial in ``nvars`` variables plus ``p`` (= pi^2).

    Instances are immutable; arithmetic returns new objects. Zero
    coefficients are never stored, so equality is structural.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for key, c in terms.items():
                key = tuple(int(e) for e in key)
                if len(key) != nvars + 1:
                    raise ValueError(f"key {key} does not have {nvars + 1} slots")
                if any(e < 0 for e in key):
                    raise ValueError(f"negative exponent in {key}")
                c = rat(c)
                if c:
                    clean[key] = clean.get(key, 0) + c
                    if not clean[key]:
                        del clean[key]
        self._terms: dict[tuple, Fraction] = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Poly":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c=1) -> "Poly":
        c = rat(c)
        return cls._raw(nvars, {(0,) * (nvars + 1): c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> "Poly":
        """The monomial ``x_i**power`` (variables are 0-indexed)."""
        key = [0] * (nvars + 1)
        key[i] = power
        return cls._raw(nvars, {tuple(key): Fraction(1)})

    @classmethod
    def p(cls, nvars: int, power: int = 1) -> "Poly":
        key = [0] * (nvars + 1)
        key[-1] = power
        return cls._raw(nvars, {tuple(key): Fraction(1)})

    @classmethod
    def from_pipoly(cls, nvars: int, pp: PiPoly) -> "Poly":
        terms = {}
        for k, c in enumerate(pp.coeffs):
            if c:
                terms[(0,) * nvars + (k,)] = c
        return cls._raw(nvars, terms)

    # inspection ---------------------------------------------------------
    @property
    def terms(self) -> dict[tuple, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exps: Sequence[int]) -> PiPoly:
        """The :class:`PiPoly` multiplying ``prod x_i**exps[i]``."""
        exps = tuple(exps)
        cs = {}
        for key, c in self._terms.items():
            if key[:-1] == exps:
                cs[key[-1]] = c
        if not cs:
            return PiPoly()
        return PiPoly(cs.get(k, 0) for k in range(max(cs) + 1))

    def monomials(self) -> list[tuple]:
        """Distinct variable-exponent vectors (``p`` folded into coefficients)."""
        return sorted({key[:-1] for key in self._terms})

    def degree(self) -> int:
        """Total degree in the variables, ignoring ``p``; -1 for zero."""
        return max((sum(k[:-1]) for k in self._terms), default=-1)

    def weights(self) -> set[int]:
        """Set of total degrees counting ``p`` with weight one."""
        return {sum(k) for k in self._terms}

    def p_degree(self) -> int:
        return max((k[-1] for k in self._terms), default=-1)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * (self.nvars + 1), Fraction(0))

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "Poly"):
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        return Poly._raw(self.nvars, kernel.sparse_add(self._terms, other._terms))

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        return Poly._raw(self.nvars, kernel.sparse_add(self._terms, other._terms, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly.zero(self.nvars)
            return Poly._raw(self.nvars, {k: c * other for k, c in self._terms.items()})
        if isinstance(other, PiPoly):
            other = Poly.from_pipoly(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        return Poly._raw(self.nvars, kernel.sparse_mul(self._terms, other._terms))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        out = Poly.constant(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # structural operations -----------------------------------------------
    def permute(self, perm: Sequence[int]) -> "Poly":
        """Rename variable ``i`` to ``perm[i]``."""
        if sorted(perm) != list(range(self.nvars)):
            raise ValueError(f"not a permutation of {self.nvars} variables: {perm}")
        out = {}
        for key, c in self._terms.items():
            new = [0] * (self.nvars + 1)
            for i, e in enumerate(key[:-1]):
                new[perm[i]] = e
            new[-1] = key[-1]
            out[tuple(new)] = c
        return Poly._raw(self.nvars, out)

    def is_symmetric(self) -> bool:
        """Invariance under every adjacent transposition (hence all of S_n)."""
        for i in range(self.nvars - 1):
            perm = list(range(self.nvars))
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            if self.permute(perm) != self:
                return False
        return True

    def embed(self, nvars: int, slots: Sequence[int]) -> "Poly":
        """Place variable ``i`` of ``self`` into slot ``slots[i]`` of a larger ring."""
        if len(slots) != self.nvars:
            raise ValueError("one slot per variable required")
        out = {}
        for key, c in self._terms.items():
            new = [0] * (nvars + 1)
            for i, e in enumerate(key[:-1]):
                new[slots[i]] += e
            new[-1] = key[-1]
            out[tuple(new)] = out.get(tuple(new), 0) + c
        return Poly(nvars, out)

    def substitute(self, i: int, value: "Poly") -> "Poly":
        """Substitute variable ``i`` by ``value`` (a poly in the other variables)."""
        if value.nvars != self.nvars - 1:
            raise ValueError("substituted value must live in the remaining variables")
        groups: dict[int, dict] = {}
        for key, c in self._terms.items():
            rest = key[:i] + key[i + 1:]
            groups.setdefault(key[i], {})[rest] = c
        out = Poly.zero(self.nvars - 1)
        for e in sorted(groups):
            out = out + Poly._raw(self.nvars - 1, groups[e]) * value**e
        return out

    def eval_at_minus4pi2(self, i: int) -> "Poly":
        """Set ``l_i = -4p``, i.e. ``L_i = 2*pi*i``; drops one variable."""
        return self.substitute(i, Poly.p(self.nvars - 1) * (-4))

    def set_p(self, value: Fraction = Fraction(0)) -> "Poly":
        """Replace ``p`` by a rational (``0`` extracts the p-free part)."""
        out = {}
        for key, c in self._terms.items():
            if key[-1] and not value:
                continue
            k = key[:-1] + (0,)
            out[k] = out.get(k, 0) + c * value ** key[-1]
        return Poly(self.nvars, out)

    def __call__(self, *values: float, p: float = PI2) -> float:
        if len(values) != self.nvars:
            raise ValueError(f"expected {self.nvars} values")
        total = 0.0
        for key, c in self._terms.items():
            term = float(c) * p ** key[-1]
            for x, e in zip(values, key[:-1]):
                term *= x**e
            total += term
        return total

    # serialization --------------------------------------------------------
    def sorted_items(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self._terms.items())

    def to_json(self) -> dict:
        return {
            "n": self.nvars,
            "terms": [
                {"l": list(key[:-1]), "p": key[-1], "c": rat_str(c)}
                for key, c in self.sorted_items()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Poly":
        n = int(data["n"])
        terms = {}
        for t in data["terms"]:
            key = tuple(t["l"]) + (int(t["p"]),)
            terms[key] = terms.get(key, 0) + rat(t["c"])
        return cls(n, terms)

    def __repr__(self):
        if not self._terms:
            return f"Poly[{self.nvars}](0)"
        parts = []
        for key, c in self.sorted_items():
            mon = [rat_str(c)]
            if key[-1]:
                mon.append("p" if key[-1] == 1 else f"p^{key[-1]}")
            for i, e in enumerate(key[:-1]):
                if e:
                    mon.append(f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}")
            parts.append("*".join(mon))
        return f"Poly[{self.nvars}](" + " + ".join(parts) + ")"


VolPoly = Poly


def symmetrize(poly: Poly) -> Poly:
    """Average of ``poly`` over all permutations of its variables."""
    perms = list(itertools.permutations(range(poly.nvars)))
    total = Poly.zero(poly.nvars)
    for perm in perms:
        total = total + poly.permute(perm)
    return total * Fraction(1, len(perms))

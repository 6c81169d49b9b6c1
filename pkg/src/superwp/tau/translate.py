"""Shift of times ``t_k -> t_k + (-1)^(k+1) (2p)^k / k!`` (k >= 1) and the volume dictionary."""
from __future__ import annotations

import math
from fractions import Fraction

from superwp.exactcore.poly import Poly
from superwp.exactcore.tseries import Caps, TMonomialSeries, extract_volpoly, substitute_t
from superwp.volumes import FROM_TAU, VolumeId, VolumeTable


def shift(k: int) -> tuple[Fraction, int]:
    """The translation of ``t_k`` as ``(rational, power of p)``."""
    if k < 1:
        raise ValueError("only t_k with k >= 1 are shifted")
    return Fraction((-1) ** (k + 1) * 2**k, math.factorial(k)), k


def translate_partition(fbar: TMonomialSeries) -> TMonomialSeries:
    """Substitute the shifted times into the log-form series ``fbar``.

    A coefficient of ``t^T`` in the result collects ``fbar[T + U]`` over all
    multisets ``U`` of shifted indices; ``|U|`` is at most the grade ``q``, so
    the output is complete for ``n <= n_max - q_max`` and is returned with
    those caps.
    """
    caps = fbar.caps
    out_caps = Caps(caps.t_max, caps.q_max, caps.s_max, caps.n_max - max(caps.q_max, 0))
    if out_caps.n_max < 1:
        raise ValueError("t-count cap too small to absorb the translation")
    out: dict[tuple, Fraction] = {}
    for key, c in fbar.items():
        head, counts = key[:3], key[3:]
        ranges = [range(1)] + [range(n + 1) for n in counts[1:]]
        for take in _product(ranges):
            coeff = c
            dp = 0
            for k, u in enumerate(take):
                if u:
                    val, pk = shift(k)
                    coeff *= math.comb(counts[k], u) * val**u
                    dp += pk * u
            new = tuple(n - u for n, u in zip(counts, take))
            if sum(new) > out_caps.n_max:
                continue
            nk = (head[0], head[1], head[2] + dp, *new)
            out[nk] = out.get(nk, 0) + coeff
    return TMonomialSeries(out_caps, out, fbar.notes)


def _product(ranges):
    if not ranges:
        yield ()
        return
    for x in ranges[0]:
        for rest in _product(ranges[1:]):
            yield (x,) + rest


def volumes_from_tau(f: TMonomialSeries, tag: str = FROM_TAU) -> VolumeTable:
    """Read raw volumes ``V^(m)_{g,n}`` off a log-form series.

    ``F = sum hbar^(g-1) / n! * sum_m s^m/m! V^(m)_{g,n}`` with
    ``l^k -> 2^k k! t_k``; only ``(g, n, m)`` whose full t-window lies inside
    the caps are returned.
    """
    caps = f.caps
    groups: dict[tuple[int, int, int], dict] = {}
    for t, c in f.readable_items():
        groups.setdefault((t.a, t.sigma, t.n), {})[(t.pk, t.times)] = c
    table = VolumeTable()
    for a in range(-1, caps.q_max + 1):
        for sigma in range(0, caps.s_max + 1, 2):
            if a + sigma // 2 > caps.q_max or a + sigma // 2 > caps.t_max:
                continue
            for n in range(1, caps.n_max + 1):
                vid = VolumeId(a + 1, n, sigma)
                if not vid.stable:
                    continue
                terms = groups.get((a, sigma, n), {})
                series_coeff = extract_volpoly(terms, n) * math.factorial(n)
                table.add(vid, series_coeff * math.factorial(sigma), tag)
    return table


def tau_from_volumes(table: VolumeTable, caps: Caps, strict: bool = True) -> TMonomialSeries:
    """Log-form series assembled from a table of raw volumes.

    With ``strict`` every stable ``(g, n, m)`` inside the caps must be present.
    """
    caps = Caps(*caps)
    terms: dict[tuple, Fraction] = {}
    for vid in table:
        a, sigma = vid.g - 1, vid.m
        if sigma > caps.s_max or vid.n > caps.n_max or a + sigma // 2 > caps.q_max:
            continue
        poly: Poly = table.get(vid.g, vid.n, vid.m)
        scale = Fraction(1, math.factorial(sigma) * math.factorial(vid.n))
        for (pk, times), c in substitute_t(poly).items():
            if times and max(times) > caps.t_max:
                raise ValueError(f"{vid}: t-index beyond cap")
            counts = [0] * (caps.t_max + 1)
            for i in times:
                counts[i] += 1
            key = (a, sigma, pk, *counts)
            terms[key] = terms.get(key, 0) + c * scale
    if strict:
        missing = [
            VolumeId(a + 1, n, sigma)
            for a in range(-1, caps.q_max + 1)
            for sigma in range(0, caps.s_max + 1, 2)
            for n in range(1, caps.n_max + 1)
            if a + sigma // 2 <= caps.q_max and VolumeId(a + 1, n, sigma).stable
            and VolumeId(a + 1, n, sigma) not in table
        ]
        if missing:
            raise ValueError(f"volume table does not cover the window; missing {missing[:5]}")
    return TMonomialSeries(caps, terms)

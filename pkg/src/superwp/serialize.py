"""Canonical text forms: JSON (sorted keys), CSV rows and LaTeX."""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Iterable

from superwp.exactcore.poly import Poly, latex_frac, rat_str


def dumps(obj: Any) -> str:
    """Byte-stable JSON."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _pi_power(k: int) -> str:
    if k == 0:
        return ""
    return rf"\pi^{2 * k}" if 2 * k < 10 else rf"\pi^{{{2 * k}}}"


def _length_power(i: int, e: int) -> str:
    power = 2 * e
    return rf"L_{i}^{power}" if power < 10 else rf"L_{i}^{{{power}}}"


def _ordered(v: Poly):
    return sorted(v.items(),
                  key=lambda kv: (sum(kv[0][:-1]), tuple(-e for e in kv[0][:-1]), kv[0][-1]))


def volpoly_latex(v: Poly) -> str:
    """LaTeX in the boundary lengths, e.g. ``6\\pi^2+\\frac12L_1^2``.

    Terms are ordered by ascending total L-degree, then by descending
    exponent vector.
    """
    if v.is_zero():
        return "0"
    items = _ordered(v)
    out = []
    for k, (key, c) in enumerate(items):
        mono = _pi_power(key[-1]) + "".join(
            _length_power(i + 1, e) for i, e in enumerate(key[:-1]) if e
        )
        sign = "-" if c < 0 else ("" if k == 0 else "+")
        mag = abs(c)
        coef = "" if mag == 1 and mono else latex_frac(mag)
        out.append(sign + coef + mono)
    return "".join(out)


def volpoly_text(v: Poly) -> str:
    """Plain-text form in ``p`` (= pi^2) and ``l_i`` (= L_i^2), ordered as the LaTeX form."""
    if v.is_zero():
        return "0"
    parts = []
    for key, c in _ordered(v):
        factors = []
        if key[-1]:
            factors.append("p" if key[-1] == 1 else f"p^{key[-1]}")
        for i, e in enumerate(key[:-1]):
            if e:
                factors.append(f"l{i + 1}" if e == 1 else f"l{i + 1}^{e}")
        if factors:
            coef = "" if c == 1 else "-" if c == -1 else rat_str(c) + "*"
            parts.append(coef + "*".join(factors))
        else:
            parts.append(rat_str(c))
    return " + ".join(parts).replace("+ -", "- ")


def csv_rows(header: Iterable[str], rows: Iterable[Iterable[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(header))
    for row in rows:
        w.writerow([rat_str(x) if isinstance(x, Fraction) else x for x in row])
    return buf.getvalue()

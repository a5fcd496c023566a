"""Text, LaTeX and JSON renderings of elements.

Symbols use the subscripts of the generators (a3, e2, x3, h2), never the
internal index.  Rationals are always written exactly as ``p`` or ``p/q``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List

from .superalgebra import Basis, Element, Monomial, monomial_sort_key


def coeff_str(c) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def monomial_factors(m: Monomial, basis: Basis) -> List[str]:
    odd, even = basis.odd_symbol, basis.even_symbol
    out = [f"{odd}{2 * l + 1}" for l in m.indices]
    for l, j in enumerate(m.exps):
        if j == 1:
            out.append(f"{even}{2 * l}")
        elif j > 1:
            out.append(f"{even}{2 * l}^{j}")
    return out


def render(a: Element) -> str:
    """Canonical text form, parseable back by :func:`bvloop.parser.parse`."""
    if not a.terms:
        return "0"
    pieces = []
    for m, c in a:
        factors = monomial_factors(m, a.basis)
        mag = abs(Fraction(c))
        if not factors:
            body = coeff_str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = coeff_str(mag) + "*" + "*".join(factors)
        pieces.append(("-" if c < 0 else "+", body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def _latex_monomial(m: Monomial, basis: Basis) -> str:
    odd = r"\alpha" if basis.odd_symbol == "a" else "x"
    even = basis.even_symbol
    parts = [f"{odd}_{{{2 * l + 1}}}" for l in m.indices]
    for l, j in enumerate(m.exps):
        if j == 1:
            parts.append(f"{even}_{{{2 * l}}}")
        elif j > 1:
            parts.append(f"{even}_{{{2 * l}}}^{{{j}}}")
    return " ".join(parts)


def latex(a: Element) -> str:
    if not a.terms:
        return "0"
    out = []
    for i, (m, c) in enumerate(a):
        c = Fraction(c)
        body = _latex_monomial(m, a.basis)
        mag = abs(c)
        if mag.denominator == 1:
            num = str(mag.numerator)
        else:
            num = rf"\tfrac{{{mag.numerator}}}{{{mag.denominator}}}"
        if body and mag == 1:
            num = ""
        term = (num + " " + body).strip() if body else num
        if i == 0:
            out.append(("-" if c < 0 else "") + term)
        else:
            out.append(("- " if c < 0 else "+ ") + term)
    return " ".join(out)


def monomial_json(m: Monomial, basis: Basis) -> Dict:
    return {
        "alpha": [2 * l + 1 for l in m.indices],
        basis.even_symbol: {str(2 * l): j for l, j in enumerate(m.exps) if j},
    }


def element_json(a: Element) -> List[Dict]:
    return [{"monomial": monomial_json(m, a.basis), "coeff": coeff_str(c)} for m, c in a]


def sorted_terms(terms: Dict[Monomial, object]):
    return sorted(terms.items(), key=lambda t: monomial_sort_key(t[0]))

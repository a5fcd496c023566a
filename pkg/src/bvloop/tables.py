"""Delta and bracket tables over the monomial basis, as canonical JSON or LaTeX.

The table bound counts generator factors: a monomial alpha_I e^J (or
alpha_I h^J) enters when ``|I| + sum(J) <= bound``.  Bound 0 leaves just the
unit.
"""

from __future__ import annotations

import json
from typing import Dict, List

from . import bv
from .config import RunConfig
from .render import element_json, latex, monomial_json
from .superalgebra import Basis, Element, Monomial, monomials_by_size


def _basis_element(sig, m: Monomial, symplectic: bool) -> Element:
    """The element named by a table key, expressed in the intersection basis."""
    if symplectic:
        return bv.from_h_basis(Element.from_monomial(sig, m, Basis.SYMPLECTIC))
    return Element.from_monomial(sig, m)


def table_entries(cfg: RunConfig) -> List[Dict]:
    sig = cfg.signature
    symplectic = cfg.basis == "symplectic"
    if cfg.basis == "pontrjagin":
        raise ValueError("tables are written in the intersection or symplectic basis")
    basis = Basis.SYMPLECTIC if symplectic else Basis.INTERSECTION
    keys = monomials_by_size(sig, cfg.bound)
    elems = [_basis_element(sig, m, symplectic) for m in keys]

    def present(a: Element) -> Element:
        return bv.to_h_basis(a) if symplectic else a

    entries = []
    for m, a in zip(keys, elems):
        entries.append({
            "op": "delta",
            "monomial": monomial_json(m, basis),
            "value": element_json(present(bv.bv_delta(a))),
        })
    for m1, a in zip(keys, elems):
        for m2, b in zip(keys, elems):
            entries.append({
                "op": "bracket",
                "monomial": monomial_json(m1, basis),
                "other": monomial_json(m2, basis),
                "value": element_json(present(bv.bracket_deviation(a, b))),
            })
    return entries


def table_json(cfg: RunConfig) -> str:
    doc = {
        "signature": {"n": cfg.n, "k": cfg.k},
        "basis": "symplectic" if cfg.basis == "symplectic" else "intersection",
        "bound": cfg.bound,
        "entries": table_entries(cfg),
    }
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=True) + "\n"


def _latex_key(mon: Dict, basis: Basis) -> str:
    odd = " ".join(rf"\alpha_{{{s}}}" for s in mon["alpha"])
    even = []
    for sub, j in sorted(mon[basis.even_symbol].items(), key=lambda t: int(t[0])):
        even.append(f"{basis.even_symbol}_{{{sub}}}" + (f"^{{{j}}}" if j > 1 else ""))
    body = " ".join([odd] + even).strip()
    return body or "1"


def table_latex(cfg: RunConfig) -> str:
    sig = cfg.signature
    symplectic = cfg.basis == "symplectic"
    basis = Basis.SYMPLECTIC if symplectic else Basis.INTERSECTION
    keys = monomials_by_size(sig, cfg.bound)
    elems = [_basis_element(sig, m, symplectic) for m in keys]
    present = bv.to_h_basis if symplectic else (lambda a: a)
    names = [_latex_key(monomial_json(m, basis), basis) for m in keys]

    lines = [f"% n={cfg.n} k={cfg.k} bound={cfg.bound} basis={basis.value}",
             r"\begin{longtable}{ll}", r"$x$ & $\Delta(x)$ \\", r"\hline"]
    for name, a in zip(names, elems):
        lines.append(f"${name}$ & ${latex(present(bv.bv_delta(a)))}$ \\\\")
    lines += [r"\end{longtable}", "", r"\begin{longtable}{ll}", r"$\{x, y\}$ & value \\", r"\hline"]
    for n1, a in zip(names, elems):
        for n2, b in zip(names, elems):
            v = present(bv.bracket_deviation(a, b))
            lines.append(f"$\\{{{n1}, {n2}\\}}$ & ${latex(v)}$ \\\\")
    lines.append(r"\end{longtable}")
    return "\n".join(lines) + "\n"


def emit_table(cfg: RunConfig) -> str:
    """Render the table and write it to ``cfg.out`` when set; the text is returned either way."""
    text = table_json(cfg) if cfg.fmt == "json" else table_latex(cfg)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text

"""Independent reference implementations used to cross-check the library.

Nothing here imports the arithmetic of ``bvloop``: odd words are plain
tuples sorted by counting transpositions, the even part is a sympy
polynomial, and Newton primitives come from the power series of
log(1 + e_2 t + e_4 t^2 + ...).
"""

from fractions import Fraction

import sympy

# an oracle element is {(word tuple, exps tuple of length n+1): Fraction}


def from_element(a):
    return {(m.indices, m.exps): Fraction(c) for m, c in a.terms.items()}


def clean(d):
    return {k: v for k, v in d.items() if v != 0}


def sort_sign(seq):
    """Sign of the permutation sorting ``seq``; 0 if an entry repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    return sign


def mul(a, b):
    out = {}
    for (I, J), c in a.items():
        for (K, L), d in b.items():
            s = sort_sign(I + K)
            if not s:
                continue
            key = (tuple(sorted(I + K)), tuple(x + y for x, y in zip(J, L)))
            out[key] = out.get(key, 0) + s * c * d
    return clean(out)


def add(a, b, scale=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + scale * v
    return clean(out)


def _syms(n):
    return sympy.symbols(f"e0:{n + 1}")


def _to_poly(n, exps):
    e = _syms(n)
    out = sympy.Integer(1)
    for l in range(1, n + 1):
        out *= e[l] ** exps[l]
    return out


def _from_expr(n, word, expr):
    e = _syms(n)
    expr = sympy.expand(expr)
    if expr == 0:
        return {}
    poly = sympy.Poly(expr, *e[1:])
    out = {}
    for powers, c in poly.terms():
        out[(word, (0,) + tuple(powers))] = Fraction(int(sympy.numer(c)), int(sympy.denom(c)))
    return clean(out)


def D(n, l, exps, k=1):
    """The operator D_{2l} (k == 1) or its Stiefel variant, applied to e^exps via sympy."""
    e = _syms(n)
    p = _to_poly(n, exps)
    if k == 1:
        expr = sum((1 if m == l else e[m - l]) * sympy.diff(p, e[m]) for m in range(l, n + 1))
    else:
        expr = sympy.diff(p, e[l]) + sum(e[j] * sympy.diff(p, e[l + j]) for j in range(k, n - l + 1))
    return expr


def delta(n, a, k=1):
    """sum over positions p of l = I[p]: (-1)^p alpha_{I - l} D_{2l} e^J."""
    out = {}
    for (I, J), c in a.items():
        for p, l in enumerate(I):
            rest = I[:p] + I[p + 1:]
            piece = _from_expr(n, rest, D(n, l, J, k))
            out = add(out, piece, (-1) ** p * c)
    return out


def bracket(n, a, b, k=1):
    """(-1)^|a| (Delta(ab) - Delta(a) b - (-1)^|a| a Delta(b)) for a of pure parity."""
    parities = {len(I) % 2 for I, _ in a}
    assert len(parities) <= 1
    pa = parities.pop() if parities else 0
    s = -1 if pa else 1
    out = delta(n, mul(a, b), k)
    out = add(out, mul(delta(n, a, k), b), -1)
    out = add(out, mul(a, delta(n, b, k)), -s)
    return {key: s * v for key, v in out.items()}


def newton_h(n, l, k=1):
    """Coefficient of t^l in log(1 + sum_i e_i t^i), with e_i = 0 for 0 < i < k."""
    e = _syms(n)
    t = sympy.Symbol("t")
    E = 1 + sum(e[i] * t ** i for i in range(max(k, 1), n + 1))
    series = sympy.series(sympy.log(E), t, 0, l + 1).removeO()
    return _from_expr(n, (), sympy.expand(series).coeff(t, l))

"""Pontrjagin side: coproduct, Kronecker pairing, the alpha <-> x duality
dictionary, the intersection product, and the circle action Delta on the
Pontrjagin ring Lambda(x) (x) Z[e]."""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .superalgebra import (
    AlgebraError,
    Basis,
    Coeff,
    D_terms,
    Element,
    Monomial,
    Signature,
    add_into,
    merge_sign,
    mono_mul,
    mul,
    word_indices,
    word_mask,
)

Key = Tuple[Monomial, ...]


class TensorElement:
    """Finite sum of tensors m_1 (x) ... (x) m_r of monomials with rational coefficients."""

    __slots__ = ("sig", "basis", "arity", "terms")

    def __init__(self, sig: Signature, basis: Basis, arity: int, terms: Optional[Dict[Key, Coeff]] = None):
        self.sig = sig
        self.basis = basis
        self.arity = arity
        self.terms = {key: c for key, c in (terms or {}).items() if c}

    @classmethod
    def pure(cls, sig: Signature, basis: Basis, *factors: Monomial, coeff: Coeff = 1) -> "TensorElement":
        return cls(sig, basis, len(factors), {tuple(factors): coeff})

    def _check(self, other: "TensorElement") -> None:
        if (self.sig, self.basis, self.arity) != (other.sig, other.basis, other.arity):
            raise AlgebraError("tensor operands differ in signature, basis or arity")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        acc = dict(self.terms)
        _add_keys(acc, other.terms)
        return TensorElement(self.sig, self.basis, self.arity, acc)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        acc = dict(self.terms)
        _add_keys(acc, other.terms, -1)
        return TensorElement(self.sig, self.basis, self.arity, acc)

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        """(u_1 (x) ... )(v_1 (x) ... ) with the Koszul sign for moving each v_j past u_i, i > j."""
        self._check(other)
        acc: Dict[Key, Coeff] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                sign = 1
                out = []
                # sign: sum over i > j of p(u_i) p(v_j)
                suffix = 0
                for i in range(self.arity - 1, -1, -1):
                    if suffix and k2[i].parity:
                        sign = -sign
                    suffix ^= k1[i].parity
                for u, v in zip(k1, k2):
                    s, m = mono_mul(u, v)
                    if not s:
                        break
                    sign *= s
                    out.append(m)
                else:
                    key = tuple(out)
                    val = acc.get(key, 0) + sign * c1 * c2
                    if val:
                        acc[key] = val
                    else:
                        acc.pop(key)
        return TensorElement(self.sig, self.basis, self.arity, acc)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.sig, self.basis, self.arity, self.terms) == (other.sig, other.basis, other.arity, other.terms)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        from .render import monomial_factors

        def show(m):
            return "*".join(monomial_factors(m, self.basis)) or "1"

        body = " + ".join(f"{c}*(" + " (x) ".join(show(m) for m in key) + ")" for key, c in self.terms.items())
        return f"TensorElement({body or '0'})"

    def flip(self) -> "TensorElement":
        """Graded twist a (x) b -> (-1)^{|a||b|} b (x) a (arity 2 only)."""
        if self.arity != 2:
            raise AlgebraError("flip needs a binary tensor")
        acc = {}
        for (a, b), c in self.terms.items():
            acc[(b, a)] = -c if a.parity & b.parity else c
        return TensorElement(self.sig, self.basis, 2, acc)

    def apply_slot(self, slot: int, fn: Callable[[Monomial], "TensorElement"], width: int = 2) -> "TensorElement":
        """Replace factor ``slot`` by the ``width``-fold tensor fn(factor); fn must be even."""
        acc: Dict[Key, Coeff] = {}
        for key, c in self.terms.items():
            for sub, d in fn(key[slot]).terms.items():
                new = key[:slot] + sub + key[slot + 1:]
                v = acc.get(new, 0) + c * d
                if v:
                    acc[new] = v
                else:
                    acc.pop(new)
        return TensorElement(self.sig, self.basis, self.arity - 1 + width, acc)

    def apply_odd_slot(self, slot: int, fn: Callable[[Monomial], Dict[Monomial, Coeff]]) -> "TensorElement":
        """Apply an odd linear map to one factor: passing the factors to its left costs their parity."""
        acc: Dict[Key, Coeff] = {}
        for key, c in self.terms.items():
            sign = -1 if sum(m.parity for m in key[:slot]) & 1 else 1
            for out, d in fn(key[slot]).items():
                new = key[:slot] + (out,) + key[slot + 1:]
                v = acc.get(new, 0) + sign * c * d
                if v:
                    acc[new] = v
                else:
                    acc.pop(new)
        return TensorElement(self.sig, self.basis, self.arity, acc)


def _add_keys(acc: Dict[Key, Coeff], terms: Dict[Key, Coeff], scale: Coeff = 1) -> None:
    for key, c in terms.items():
        v = acc.get(key, 0) + scale * c
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)


# -- coproduct --------------------------------------------------------------


def _generator_coproduct(sig: Signature, basis: Basis, odd: bool, l: int) -> TensorElement:
    unit = Monomial(0, sig.zero_exps())
    if odd:
        g = Monomial(1 << l, sig.zero_exps())
        return TensorElement(sig, basis, 2, {(g, unit): 1, (unit, g): 1})
    acc = {}
    for i in range(l + 1):
        j = l - i
        # e_1 .. e_{k-1} vanish in the Stiefel quotient
        if (0 < i < sig.k) or (0 < j < sig.k):
            continue
        left = Monomial(0, sig.unit_exps(i)) if i else unit
        right = Monomial(0, sig.unit_exps(j)) if j else unit
        acc[(left, right)] = 1
    return TensorElement(sig, basis, 2, acc)


@lru_cache(maxsize=None)
def _coproduct_mono(sig: Signature, basis: Basis, m: Monomial) -> TensorElement:
    unit = Monomial(0, sig.zero_exps())
    if m == unit:
        return TensorElement.pure(sig, basis, unit, unit)
    # peel the first generator: m = g * rest with no sign since g is leftmost
    if m.word:
        low = m.word & -m.word
        l = low.bit_length() - 1
        rest = Monomial(m.word ^ low, m.exps)
        return _generator_coproduct(sig, basis, True, l) * _coproduct_mono(sig, basis, rest)
    l = next(i for i, j in enumerate(m.exps) if j)
    exps = list(m.exps)
    exps[l] -= 1
    rest = Monomial(0, tuple(exps))
    return _generator_coproduct(sig, basis, False, l) * _coproduct_mono(sig, basis, rest)


def coproduct(p: Element) -> TensorElement:
    """phi: x-generators primitive, phi(e_{2m}) = sum_{i+j=m} e_{2i} (x) e_{2j}, extended multiplicatively."""
    if p.basis is not Basis.PONTRJAGIN and not p.is_even:
        raise AlgebraError("coproduct needs a Pontrjagin-basis or purely even element")
    out = TensorElement(p.sig, p.basis, 2)
    acc: Dict[Key, Coeff] = {}
    for m, c in p.terms.items():
        _add_keys(acc, _coproduct_mono(p.sig, p.basis, m).terms, c)
    out.terms = acc
    return out


def coproduct_terms(sig: Signature, basis: Basis, m: Monomial) -> TensorElement:
    return _coproduct_mono(sig, basis, m)


# -- Kronecker pairing and the duality dictionary ----------------------------


def kronecker(y: Sequence[int], x: Sequence[int]) -> int:
    """<y_I, x_J> = (-1)^{|I|(|I|-1)/2} delta_{I,J}."""
    if word_mask(y) != word_mask(x):
        return 0
    r = len(y)
    return -1 if (r * (r - 1) // 2) & 1 else 1


def duality_sign(sig: Signature, mask: int) -> int:
    """Sign s with alpha_I = s * x_{I^c}, complement taken in (k, ..., n)."""
    comp = sig.full_mask ^ mask
    r = mask.bit_count()
    sign = -1 if (r * (r - 1) // 2) & 1 else 1
    return sign * merge_sign(mask, comp)


def _check_word(sig: Signature, indices: Sequence[int]) -> int:
    mask = word_mask(indices)
    for l in word_indices(mask):
        sig.check_index(l)
    return mask


def alpha_to_x(I: Sequence[int], sig: Signature) -> Element:
    mask = _check_word(sig, I)
    m = Monomial(sig.full_mask ^ mask, sig.zero_exps())
    return Element.from_monomial(sig, m, Basis.PONTRJAGIN, duality_sign(sig, mask))


def x_to_alpha(J: Sequence[int], sig: Signature) -> Element:
    jmask = _check_word(sig, J)
    mask = sig.full_mask ^ jmask
    # s = +-1 so the inverse carries the same sign
    return Element.from_monomial(sig, Monomial(mask, sig.zero_exps()), Basis.INTERSECTION, duality_sign(sig, mask))


def to_pontrjagin(a: Element) -> Element:
    """Additive identification alpha_I e^J -> s_I x_{I^c} e^J."""
    if a.basis is not Basis.INTERSECTION:
        raise AlgebraError("to_pontrjagin expects an intersection-basis element")
    sig = a.sig
    full = sig.full_mask
    acc = {Monomial(full ^ m.word, m.exps): duality_sign(sig, m.word) * c for m, c in a.terms.items()}
    return Element(sig, Basis.PONTRJAGIN, acc)


def to_intersection(z: Element) -> Element:
    if z.basis is not Basis.PONTRJAGIN:
        raise AlgebraError("to_intersection expects a Pontrjagin-basis element")
    sig = z.sig
    full = sig.full_mask
    acc = {}
    for m, c in z.terms.items():
        mask = full ^ m.word
        acc[Monomial(mask, m.exps)] = duality_sign(sig, mask) * c
    return Element(sig, Basis.INTERSECTION, acc)


def intersection_mul(a: Element, b: Element) -> Element:
    """alpha_I o alpha_J = sgn(I, J) alpha_{I u J}, with sgn read off the Pontrjagin product x_I . x_J."""
    for v in (a, b):
        if v.basis is not Basis.INTERSECTION:
            raise AlgebraError("intersection_mul expects intersection-basis elements")
    a._check(b)
    sig = a.sig
    zero = sig.zero_exps()
    acc: Dict[Monomial, Coeff] = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            prod = mul(Element.from_monomial(sig, Monomial(m1.word, zero), Basis.PONTRJAGIN),
                       Element.from_monomial(sig, Monomial(m2.word, zero), Basis.PONTRJAGIN))
            if not prod:
                continue
            (xm, sgn), = prod.terms.items()
            exps = tuple(p + q for p, q in zip(m1.exps, m2.exps))
            add_into(acc, {Monomial(xm.word, exps): sgn * c1 * c2})
    return Element(sig, Basis.INTERSECTION, acc)


def x_action(i: int, a: Element) -> Element:
    """Pontrjagin product x_{2i+1} . a for an intersection-basis element, via the dictionary."""
    if a.basis is not Basis.INTERSECTION:
        raise AlgebraError("x_action expects an intersection-basis element")
    a.sig.check_index(i)
    xi = Element.from_monomial(a.sig, Monomial(1 << i, a.sig.zero_exps()), Basis.PONTRJAGIN)
    return to_intersection(mul(xi, to_pontrjagin(a)))


# -- the circle action on the Pontrjagin ring --------------------------------


@lru_cache(maxsize=None)
def _delta_p_mono(sig: Signature, m: Monomial) -> Tuple[Tuple[Monomial, int], ...]:
    acc: Dict[Monomial, int] = {}
    for l in sig.indices:
        sign = merge_sign(1 << l, m.word)
        if not sign:
            continue
        word = m.word | (1 << l)
        for out, d in D_terms(sig, l, Monomial(0, m.exps)):
            key = Monomial(word, out.exps)
            v = acc.get(key, 0) + sign * d
            if v:
                acc[key] = v
            else:
                acc.pop(key)
    return tuple(acc.items())


def delta_pontrjagin(z: Element) -> Element:
    """Delta(x_I e^J) = sum_l (x_{2l+1} . x_I) . D_{2l} e^J."""
    if z.basis is not Basis.PONTRJAGIN:
        raise AlgebraError("delta_pontrjagin expects a Pontrjagin-basis element")
    acc: Dict[Monomial, Coeff] = {}
    for m, c in z.terms.items():
        for out, d in _delta_p_mono(z.sig, m):
            v = acc.get(out, 0) + c * d
            if v:
                acc[out] = v
            else:
                acc.pop(out)
    return Element(z.sig, Basis.PONTRJAGIN, acc)


def delta_pontrjagin_generator(sig: Signature, l: int) -> Element:
    """Delta(e_{2l}) = sum_{i=1}^{l} x_{2i+1} e_{2l-2i}, read directly from the generator formula."""
    sig.check_index(l)
    acc = {}
    for i in range(sig.k, l + 1):
        rest = l - i
        if 0 < rest < sig.k:
            continue
        exps = sig.unit_exps(rest) if rest else sig.zero_exps()
        acc[Monomial(1 << i, exps)] = 1
    return Element(sig, Basis.PONTRJAGIN, acc)


def extract_D(J: Monomial, l: int, sig: Signature) -> Element:
    """The right tensor factor paired with the single generator e_{2l} on the left of phi(e^J)."""
    left = Monomial(0, sig.unit_exps(l))
    acc = {}
    for (a, b), c in _coproduct_mono(sig, Basis.INTERSECTION, J).terms.items():
        if a == left:
            acc[b] = c
    return Element(sig, Basis.INTERSECTION, acc)


def verify_D_characterization(J: Monomial, sig: Signature) -> bool:
    """Check that phi(e^J) = 1 (x) e^J + sum_l e_{2l} (x) D_{2l} e^J + (terms with decomposable left factor)."""
    if sig.k != 1:
        raise AlgebraError("the coproduct characterisation is stated for k = 1")
    if J.word:
        raise AlgebraError("verify_D_characterization takes an even monomial")
    from .superalgebra import D_op

    unit = Monomial(0, sig.zero_exps())
    phi = _coproduct_mono(sig, Basis.INTERSECTION, J)
    if phi.terms.get((unit, J)) != 1:
        return False
    if any(a == unit and b != J for a, b in phi.terms):
        return False
    ej = Element.from_monomial(sig, J)
    return all(extract_D(J, l, sig) == D_op(l, ej) for l in sig.indices)


# -- triangular reconstruction ----------------------------------------------


def solve_unipotent(sig: Signature, rhs: Sequence[Element]) -> List[Element]:
    """Solve sum_{j >= i} e_{2j-2i} u_j = r_i (e_0 = 1) by back-substitution.

    Rows and unknowns are indexed by the generator indices k..n; the entries
    e_{2j-2i} with 0 < j - i < k vanish in the Stiefel quotient.
    """
    idx = list(sig.indices)
    if len(rhs) != len(idx):
        raise AlgebraError("right-hand side length must match the generator count")
    basis = rhs[0].basis
    sol: Dict[int, Element] = {}
    for pos in range(len(idx) - 1, -1, -1):
        i = idx[pos]
        u = rhs[pos]
        for j in idx[pos + 1:]:
            gap = j - i
            if gap < sig.k:
                continue
            ej = Element.from_monomial(sig, Monomial(0, sig.unit_exps(gap)), basis)
            u = u - mul(ej, sol[j])
        sol[i] = u
    return [sol[i] for i in idx]


def integrate_gradient(sig: Signature, grads: Sequence[Element]) -> Element:
    """Recover Y with Y(e=0) = 0 from its e-partials using sum_l e_l dY/de_l = (e-length) Y."""
    basis = grads[0].basis
    acc: Dict[Monomial, Coeff] = {}
    for l, g in zip(sig.indices, grads):
        el = Element.from_monomial(sig, Monomial(0, sig.unit_exps(l)), basis)
        add_into(acc, mul(el, g).terms)
    from fractions import Fraction

    out = {m: Fraction(c, sum(m.exps)) for m, c in acc.items()}
    return Element(sig, basis, out)


def reconstruct_delta_e(sig: Signature, l: int) -> Element:
    """Rebuild Delta(e_{2l}) = x_{2l+1} + Y, solving the unipotent system for the partials of Y.

    The right-hand side uses Delta(e_{2l-2m}) for m < l only, taken from the
    generator formula; the result is the inductive step of the uniqueness
    argument and is compared against the closed formula by callers.
    """
    if sig.k != 1:
        raise AlgebraError("reconstruction is run on the k = 1 ring")
    sig.check_index(l)
    rhs = []
    for m in sig.indices:
        if m <= l - 1:
            rhs.append(delta_pontrjagin_generator(sig, l - m))
        else:
            rhs.append(Element.zero(sig, Basis.PONTRJAGIN))
    grads = solve_unipotent(sig, rhs)
    if not any(grads):
        y = Element.zero(sig, Basis.PONTRJAGIN)
    else:
        y = integrate_gradient(sig, grads)
    return Element.from_monomial(sig, Monomial(1 << l, sig.zero_exps()), Basis.PONTRJAGIN) + y

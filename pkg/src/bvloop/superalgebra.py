"""Exact sparse arithmetic in Lambda(alpha_{2k+1..2n+1}) (x) Z[e_{2k..2n}].

Generators are addressed by their index ``l`` in ``{k, ..., n}``: ``l`` names
the odd generator of subscript ``2l+1`` and the even generator of subscript
``2l``.  An exterior word is stored as a bitmask (bit ``l`` set when the odd
generator ``l`` is present), which is the same information as a strictly
increasing index list and makes the Koszul sign of a merge a popcount.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, NamedTuple, Optional, Sequence, Tuple, Union

Coeff = Union[int, Fraction]


class AlgebraError(ValueError):
    """Raised on contract violations: mixed bases, mixed signatures, bad indices."""


class Basis(enum.Enum):
    INTERSECTION = "intersection"  # alpha / e
    PONTRJAGIN = "pontrjagin"  # x / e
    SYMPLECTIC = "symplectic"  # alpha / h

    @property
    def odd_symbol(self) -> str:
        return "x" if self is Basis.PONTRJAGIN else "a"

    @property
    def even_symbol(self) -> str:
        return "h" if self is Basis.SYMPLECTIC else "e"


@dataclass(frozen=True)
class Signature:
    """The pair (n, k): SU(n+1) when k == 1, the Stiefel quotient SU(n+1)/SU(k) otherwise."""

    n: int
    k: int = 1

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise AlgebraError(f"n must be a positive integer, got {self.n!r}")
        if not isinstance(self.k, int) or not 1 <= self.k <= self.n:
            raise AlgebraError(f"k must satisfy 1 <= k <= n, got k={self.k!r}, n={self.n}")

    @property
    def indices(self) -> range:
        return range(self.k, self.n + 1)

    @property
    def size(self) -> int:
        return self.n - self.k + 1

    @property
    def full_mask(self) -> int:
        return sum(1 << l for l in self.indices)

    def check_index(self, l: int) -> None:
        if not isinstance(l, int) or not self.k <= l <= self.n:
            raise AlgebraError(f"generator index {l!r} outside {{{self.k}, ..., {self.n}}}")

    def zero_exps(self) -> Tuple[int, ...]:
        return (0,) * (self.n + 1)

    def unit_exps(self, l: int) -> Tuple[int, ...]:
        exps = [0] * (self.n + 1)
        exps[l] = 1
        return tuple(exps)


# -- exterior words ---------------------------------------------------------


def word_mask(indices: Iterable[int]) -> int:
    mask = 0
    for l in indices:
        if mask >> l & 1:
            raise AlgebraError(f"repeated index {l} in exterior word")
        mask |= 1 << l
    return mask


def word_indices(mask: int) -> Tuple[int, ...]:
    out = []
    l = 0
    while mask:
        if mask & 1:
            out.append(l)
        mask >>= 1
        l += 1
    return tuple(out)


def merge_sign(w1: int, w2: int) -> int:
    """Sign of sorting the juxtaposition w1 w2 of disjoint words, or 0 if they meet."""
    if w1 & w2:
        return 0
    inversions = 0
    rest = w2
    while rest:
        low = rest & -rest
        inversions += (w1 & ~((low << 1) - 1)).bit_count()
        rest ^= low
    return -1 if inversions & 1 else 1


def word_merge(w1: Sequence[int], w2: Sequence[int]) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """Merge two strictly increasing index words.

    Returns ``None`` when the words share an index, otherwise ``(sign, merged)``
    where ``sign`` is the parity of the inversions of the concatenation.
    """
    m1, m2 = word_mask(w1), word_mask(w2)
    sign = merge_sign(m1, m2)
    if sign == 0:
        return None
    return sign, word_indices(m1 | m2)


# -- monomials --------------------------------------------------------------


class Monomial(NamedTuple):
    """An exterior word times an exponent vector.

    ``exps[l]`` is the exponent of the even generator of index ``l``; slot 0
    is always zero since e_0 is the unit.
    """

    word: int
    exps: Tuple[int, ...]

    @property
    def indices(self) -> Tuple[int, ...]:
        return word_indices(self.word)

    @property
    def length(self) -> int:
        return self.word.bit_count()

    @property
    def parity(self) -> int:
        return self.word.bit_count() & 1

    @property
    def even_degree(self) -> int:
        return sum(2 * l * j for l, j in enumerate(self.exps))

    @property
    def size(self) -> int:
        """Number of generator factors, counted with multiplicity."""
        return self.word.bit_count() + sum(self.exps)


def make_monomial(sig: Signature, alpha: Iterable[int] = (), exps: Optional[Dict[int, int]] = None) -> Monomial:
    word = word_mask(alpha)
    for l in word_indices(word):
        sig.check_index(l)
    vec = [0] * (sig.n + 1)
    for l, j in (exps or {}).items():
        sig.check_index(l)
        if j < 0:
            raise AlgebraError(f"negative exponent {j} on generator {l}")
        vec[l] += j
    return Monomial(word, tuple(vec))


def degree(m: Monomial, basis: Basis) -> Tuple[int, int]:
    """(degree, parity) of a monomial.

    Loop grading (intersection and symplectic bases) gives the odd generator
    of index l degree -(2l+1); the Pontrjagin grading gives it +(2l+1).
    """
    odd = sum(2 * l + 1 for l in m.indices)
    if basis is not Basis.PONTRJAGIN:
        odd = -odd
    deg = odd + m.even_degree
    return deg, deg & 1


@lru_cache(maxsize=None)
def mono_mul(m1: Monomial, m2: Monomial) -> Tuple[int, Optional[Monomial]]:
    sign = merge_sign(m1.word, m2.word)
    if sign == 0:
        return 0, None
    return sign, Monomial(m1.word | m2.word, tuple(a + b for a, b in zip(m1.exps, m2.exps)))


def even_degree_of_exps(exps: Sequence[int]) -> int:
    return sum(2 * l * j for l, j in enumerate(exps))


def exponent_vectors(sig: Signature, bound: int) -> Iterator[Tuple[int, ...]]:
    """All exponent vectors over {k..n} with weighted even degree <= bound."""
    if bound < 0:
        return
    idx = list(sig.indices)

    def rec(pos: int, remaining: int, acc: list) -> Iterator[Tuple[int, ...]]:
        if pos == len(idx):
            vec = [0] * (sig.n + 1)
            for l, j in zip(idx, acc):
                vec[l] = j
            yield tuple(vec)
            return
        weight = 2 * idx[pos]
        for j in range(remaining // weight + 1):
            acc.append(j)
            yield from rec(pos + 1, remaining - j * weight, acc)
            acc.pop()

    yield from rec(0, bound, [])


def words(sig: Signature) -> Iterator[int]:
    idx = list(sig.indices)
    for r in range(len(idx) + 1):
        for combo in itertools.combinations(idx, r):
            yield word_mask(combo)


def monomials(sig: Signature, bound: int, *, even_only: bool = False) -> list:
    """All basis monomials whose even part has weighted degree <= bound.

    The order is deterministic: by word length, word, then exponent vector.
    """
    ws = [0] if even_only else sorted(words(sig), key=lambda w: (w.bit_count(), word_indices(w)))
    exps = sorted(exponent_vectors(sig, bound), key=lambda v: (even_degree_of_exps(v), v))
    return [Monomial(w, v) for w in ws for v in exps]


def monomials_by_size(sig: Signature, max_size: int) -> list:
    """All basis monomials with at most ``max_size`` generator factors."""
    out = []
    idx = list(sig.indices)
    for w in sorted(words(sig), key=lambda w: (w.bit_count(), word_indices(w))):
        room = max_size - w.bit_count()
        if room < 0:
            continue
        for total in range(room + 1):
            for combo in itertools.combinations_with_replacement(idx, total):
                vec = [0] * (sig.n + 1)
                for l in combo:
                    vec[l] += 1
                out.append(Monomial(w, tuple(vec)))
    return out


def monomial_sort_key(m: Monomial):
    return (m.length, m.indices, m.even_degree, m.exps)


# -- elements ---------------------------------------------------------------


def _norm(c: Coeff) -> Coeff:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def add_into(acc: Dict[Monomial, Coeff], terms: Dict[Monomial, Coeff], scale: Coeff = 1) -> None:
    """acc += scale * terms, dropping cancelled entries."""
    for m, c in terms.items():
        v = acc.get(m, 0) + scale * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


class Element:
    """A finite Q-linear combination of monomials over one signature and basis."""

    __slots__ = ("sig", "basis", "terms")

    def __init__(self, sig: Signature, basis: Basis, terms: Optional[Dict[Monomial, Coeff]] = None):
        self.sig = sig
        self.basis = basis
        clean = {}
        for m, c in (terms or {}).items():
            if not isinstance(c, (int, Fraction)):
                c = Fraction(c)
            if c:
                clean[m] = _norm(c)
        self.terms = clean

    @classmethod
    def _wrap(cls, sig: Signature, basis: Basis, terms: Dict[Monomial, Coeff]) -> "Element":
        # terms must already be free of zeros
        obj = cls.__new__(cls)
        obj.sig = sig
        obj.basis = basis
        obj.terms = {m: _norm(c) for m, c in terms.items()}
        return obj

    # constructors
    @classmethod
    def zero(cls, sig: Signature, basis: Basis = Basis.INTERSECTION) -> "Element":
        return cls._wrap(sig, basis, {})

    @classmethod
    def one(cls, sig: Signature, basis: Basis = Basis.INTERSECTION) -> "Element":
        return cls._wrap(sig, basis, {Monomial(0, sig.zero_exps()): 1})

    @classmethod
    def scalar(cls, sig: Signature, c: Coeff, basis: Basis = Basis.INTERSECTION) -> "Element":
        return cls(sig, basis, {Monomial(0, sig.zero_exps()): c})

    @classmethod
    def from_monomial(cls, sig: Signature, m: Monomial, basis: Basis = Basis.INTERSECTION, coeff: Coeff = 1) -> "Element":
        return cls(sig, basis, {m: coeff})

    # structure
    def _check(self, other: "Element") -> None:
        if self.sig != other.sig:
            raise AlgebraError(f"signature mismatch: {self.sig} vs {other.sig}")
        if self.basis is not other.basis:
            raise AlgebraError(f"basis mismatch: {self.basis.value} vs {other.basis.value}")

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Element.scalar(self.sig, other, self.basis)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        add_into(acc, other.terms)
        return Element._wrap(self.sig, self.basis, acc)

    __radd__ = __add__

    def __neg__(self):
        return Element._wrap(self.sig, self.basis, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        add_into(acc, other.terms, -1)
        return Element._wrap(self.sig, self.basis, acc)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Element):
            return mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, power: int):
        if not isinstance(power, int) or power < 0:
            raise AlgebraError("only nonnegative integer powers are supported")
        out = Element.one(self.sig, self.basis)
        for _ in range(power):
            out = mul(out, self)
        return out

    def scale(self, c: Coeff) -> "Element":
        if not c:
            return Element.zero(self.sig, self.basis)
        return Element._wrap(self.sig, self.basis, {m: v * c for m, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.terms == Element.scalar(self.sig, other, self.basis).terms
        if not isinstance(other, Element):
            return NotImplemented
        return self.sig == other.sig and self.basis is other.basis and self.terms == other.terms

    def __hash__(self):
        return hash((self.sig, self.basis, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda t: monomial_sort_key(t[0])))

    def __repr__(self):
        from .render import render

        return f"Element({render(self)!r}, n={self.sig.n}, k={self.sig.k}, {self.basis.value})"

    def __str__(self):
        from .render import render

        return render(self)

    # predicates and projections
    def is_integral(self) -> bool:
        return all(type(c) is int for c in self.terms.values())

    @property
    def is_even(self) -> bool:
        """True when no term carries an odd generator."""
        return all(m.word == 0 for m in self.terms)

    def parity_parts(self) -> Dict[int, "Element"]:
        parts: Dict[int, Dict[Monomial, Coeff]] = {}
        for m, c in self.terms.items():
            parts.setdefault(m.parity, {})[m] = c
        return {p: Element._wrap(self.sig, self.basis, t) for p, t in parts.items()}

    def coefficient(self, m: Monomial) -> Coeff:
        return self.terms.get(m, 0)

    def map_terms(self, fn, basis: Optional[Basis] = None) -> "Element":
        """Extend a monomial -> terms-dict function linearly."""
        acc: Dict[Monomial, Coeff] = {}
        for m, c in self.terms.items():
            add_into(acc, fn(m), c)
        return Element._wrap(self.sig, basis or self.basis, acc)


def generator(sig: Signature, symbol: str, l: int, basis: Optional[Basis] = None) -> Element:
    """Generator element by symbol: 'a' (alpha), 'x', 'e', or 'h'.

    ``basis`` picks the presentation where a symbol lives in two of them
    ('a' in intersection or symplectic, 'e' in intersection or Pontrjagin).
    """
    sig.check_index(l)
    homes = {
        "a": (Basis.INTERSECTION, Basis.SYMPLECTIC),
        "x": (Basis.PONTRJAGIN,),
        "e": (Basis.INTERSECTION, Basis.PONTRJAGIN),
        "h": (Basis.SYMPLECTIC,),
    }
    if symbol not in homes:
        raise AlgebraError(f"unknown generator symbol {symbol!r}")
    basis = basis or homes[symbol][0]
    if basis not in homes[symbol]:
        raise AlgebraError(f"{symbol} is not a generator of the {basis.value} basis")
    if symbol in ("a", "x"):
        m = Monomial(1 << l, sig.zero_exps())
    else:
        m = Monomial(0, sig.unit_exps(l))
    return Element.from_monomial(sig, m, basis)


def rebase(a: Element, basis: Basis) -> Element:
    """Reinterpret an element under another tag; only valid for the shared e-part."""
    if a.basis is basis:
        return a
    shared = {Basis.INTERSECTION, Basis.PONTRJAGIN}
    if not a.is_even or {a.basis, basis} != shared:
        raise AlgebraError(f"cannot retag {a.basis.value} element as {basis.value}")
    return Element._wrap(a.sig, basis, dict(a.terms))


# -- products and derivations -----------------------------------------------


def mul_terms(t1: Dict[Monomial, Coeff], t2: Dict[Monomial, Coeff]) -> Dict[Monomial, Coeff]:
    acc: Dict[Monomial, Coeff] = {}
    for m1, c1 in t1.items():
        for m2, c2 in t2.items():
            sign, m = mono_mul(m1, m2)
            if sign:
                v = acc.get(m, 0) + sign * c1 * c2
                if v:
                    acc[m] = v
                else:
                    del acc[m]
    return acc


def mul(a: Element, b: Element) -> Element:
    """Graded-commutative product; odd generators anticommute, even ones commute."""
    a._check(b)
    return Element._wrap(a.sig, a.basis, mul_terms(a.terms, b.terms))


def partial_alpha_mono(l: int, m: Monomial) -> Tuple[int, Optional[Monomial]]:
    bit = 1 << l
    if not m.word & bit:
        return 0, None
    sign = -1 if (m.word & (bit - 1)).bit_count() & 1 else 1
    return sign, Monomial(m.word ^ bit, m.exps)


def partial_alpha(l: int, a: Element) -> Element:
    """Odd derivation d/d(alpha_{2l+1}), passing each earlier odd generator costs a sign."""
    if a.basis is Basis.PONTRJAGIN:
        raise AlgebraError("partial_alpha acts on the intersection or symplectic presentation")
    a.sig.check_index(l)
    acc: Dict[Monomial, Coeff] = {}
    for m, c in a.terms.items():
        sign, out = partial_alpha_mono(l, m)
        if sign:
            acc[out] = sign * c
    return Element._wrap(a.sig, a.basis, acc)


def partial_even_mono(l: int, m: Monomial) -> Tuple[int, Optional[Monomial]]:
    j = m.exps[l]
    if not j:
        return 0, None
    exps = list(m.exps)
    exps[l] -= 1
    return j, Monomial(m.word, tuple(exps))


def partial_even(l: int, a: Element) -> Element:
    """Plain partial derivative in the even generator of index l (e or h, per basis)."""
    a.sig.check_index(l)
    acc: Dict[Monomial, Coeff] = {}
    for m, c in a.terms.items():
        j, out = partial_even_mono(l, m)
        if j:
            acc[out] = j * c
    return Element._wrap(a.sig, a.basis, acc)


def _shifted_derivative(m: Monomial, target: int, multiplier: int) -> Optional[Tuple[int, Monomial]]:
    # multiplier index 0 means the unit e_0
    j = m.exps[target]
    if not j:
        return None
    exps = list(m.exps)
    exps[target] -= 1
    if multiplier:
        exps[multiplier] += 1
    return j, Monomial(m.word, tuple(exps))


@lru_cache(maxsize=None)
def _D_mono(n: int, l: int, m: Monomial) -> Tuple[Tuple[Monomial, int], ...]:
    acc: Dict[Monomial, int] = {}
    for top in range(l, n + 1):
        hit = _shifted_derivative(m, top, top - l)
        if hit:
            c, out = hit
            acc[out] = acc.get(out, 0) + c
    return tuple(acc.items())


@lru_cache(maxsize=None)
def _D_stiefel_mono(n: int, k: int, l: int, m: Monomial) -> Tuple[Tuple[Monomial, int], ...]:
    acc: Dict[Monomial, int] = {}
    hit = _shifted_derivative(m, l, 0)
    if hit:
        acc[hit[1]] = hit[0]
    if l <= n - k:
        for j in range(k, n - l + 1):
            hit = _shifted_derivative(m, l + j, j)
            if hit:
                c, out = hit
                acc[out] = acc.get(out, 0) + c
    return tuple(acc.items())


def D_terms(sig: Signature, l: int, m: Monomial) -> Tuple[Tuple[Monomial, int], ...]:
    """D_{2l} on the e-part of one monomial, using the Stiefel operator when k > 1."""
    if sig.k == 1:
        return _D_mono(sig.n, l, m)
    return _D_stiefel_mono(sig.n, sig.k, l, m)


def _apply(a: Element, table) -> Element:
    acc: Dict[Monomial, Coeff] = {}
    for m, c in a.terms.items():
        for out, d in table(m):
            v = acc.get(out, 0) + c * d
            if v:
                acc[out] = v
            else:
                acc.pop(out, None)
    return Element._wrap(a.sig, a.basis, acc)


def D_op(l: int, p: Element) -> Element:
    """D_{2l} = sum_{m=l}^{n} e_{2m-2l} d/de_{2m} with e_0 = 1, acting on the e-variables."""
    if p.sig.k != 1:
        raise AlgebraError("D_op is defined for k = 1; use D_op_stiefel")
    if p.basis is Basis.SYMPLECTIC:
        raise AlgebraError("D_op acts on the e-presentation")
    p.sig.check_index(l)
    n = p.sig.n
    return _apply(p, lambda m: _D_mono(n, l, m))


def D_op_stiefel(l: int, p: Element, sig: Optional[Signature] = None) -> Element:
    """D^{(k)}_{2l}: d/de_{2l} + sum_{j=k}^{n-l} e_{2j} d/de_{2l+2j} (only the first term when l > n-k)."""
    sig = sig or p.sig
    if sig != p.sig:
        raise AlgebraError(f"signature mismatch: {sig} vs {p.sig}")
    if p.basis is Basis.SYMPLECTIC:
        raise AlgebraError("D_op_stiefel acts on the e-presentation")
    sig.check_index(l)
    return _apply(p, lambda m: _D_stiefel_mono(sig.n, sig.k, l, m))


def specialize(a: Element, k: int) -> Element:
    """Push an element of the (n, 1) ring to (n, k) by setting e_2, ..., e_{2k-2} to zero.

    Only the even part is quotiented; odd generators of index below k are
    rejected since they have no image.
    """
    if a.sig.k != 1:
        raise AlgebraError("specialize expects an element over a k = 1 signature")
    target = Signature(a.sig.n, k)
    low = (1 << k) - 1
    acc = {}
    for m, c in a.terms.items():
        if m.word & low:
            raise AlgebraError(f"odd generator below index {k} has no image in the Stiefel ring")
        if any(m.exps[1:k]):
            continue
        acc[m] = c
    return Element._wrap(target, a.basis, acc)

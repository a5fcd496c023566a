"""The BV layer on loop homology: the operator Delta, the bracket (as the
deviation of Delta from a derivation, and in closed form), Newton primitives
and the e <-> h change of coordinates, the odd symplectic Poisson bracket,
Hamiltonian fields, the quadratic subalgebra, the word-length filtration and
the sphere and Stiefel specialisations.

All operations act on intersection-basis elements unless noted; the
symplectic basis (alpha / h) is reached through :func:`to_h_basis`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple

from .superalgebra import (
    AlgebraError,
    Basis,
    Coeff,
    D_op,
    D_op_stiefel,
    D_terms,
    Element,
    Monomial,
    Signature,
    add_into,
    generator,
    mono_mul,
    monomials,
    mul,
    partial_alpha,
    partial_alpha_mono,
    partial_even,
    specialize,
)

Terms = Dict[Monomial, Coeff]


class ConsistencyError(ArithmeticError):
    """Two independent routes to the same quantity disagreed."""


def _require(a: Element, basis: Basis, what: str) -> None:
    if a.basis is not basis:
        raise AlgebraError(f"{what} expects a {basis.value}-basis element, got {a.basis.value}")


# -- the BV operator --------------------------------------------------------


@lru_cache(maxsize=None)
def delta_terms(sig: Signature, m: Monomial) -> Terms:
    """Delta(alpha_I e^J) = sum_l d(alpha_I)/d(alpha_{2l+1}) . D_{2l} e^J for one monomial.

    The returned dict is shared through the cache and must not be mutated.
    """
    acc: Terms = {}
    even = Monomial(0, m.exps)
    for l in sig.indices:
        sign, rest = partial_alpha_mono(l, m)
        if not sign:
            continue
        for out, d in D_terms(sig, l, even):
            key = Monomial(rest.word, out.exps)
            v = acc.get(key, 0) + sign * d
            if v:
                acc[key] = v
            else:
                del acc[key]
    return acc


def bv_delta(a: Element) -> Element:
    """The BV operator; uses D^{(k)} on Stiefel signatures."""
    _require(a, Basis.INTERSECTION, "bv_delta")
    acc: Terms = {}
    sig = a.sig
    for m, c in a.terms.items():
        add_into(acc, delta_terms(sig, m), c)
    return Element._wrap(sig, a.basis, acc)


def bv_delta_transported(a: Element) -> Element:
    """Delta computed on the Pontrjagin ring and carried back through the duality dictionary."""
    from .hopf import delta_pontrjagin, to_intersection, to_pontrjagin

    _require(a, Basis.INTERSECTION, "bv_delta_transported")
    return to_intersection(delta_pontrjagin(to_pontrjagin(a)))


# -- brackets ---------------------------------------------------------------


def _times_mono(terms: Terms, m: Monomial, acc: Terms, scale: Coeff, left: bool) -> None:
    # acc += scale * (terms o m) (left=True) or scale * (m o terms)
    for t, c in terms.items():
        sign, out = mono_mul(t, m) if left else mono_mul(m, t)
        if sign:
            v = acc.get(out, 0) + scale * sign * c
            if v:
                acc[out] = v
            else:
                del acc[out]


@lru_cache(maxsize=None)
def bracket_terms(sig: Signature, m1: Monomial, m2: Monomial) -> Terms:
    """{a, b} = (-1)^|a| (Delta(ab) - Delta(a) b - (-1)^|a| a Delta(b)) on monomials.

    Shared through the cache; do not mutate.
    """
    sgn = -1 if m1.parity else 1
    acc: Terms = {}
    s, m = mono_mul(m1, m2)
    if s:
        add_into(acc, delta_terms(sig, m), s * sgn)
    _times_mono(delta_terms(sig, m1), m2, acc, -sgn, left=True)
    _times_mono(delta_terms(sig, m2), m1, acc, -1, left=False)
    return acc


def _bilinear(a: Element, b: Element, fn) -> Element:
    _require(a, Basis.INTERSECTION, "bracket")
    a._check(b)
    acc: Terms = {}
    sig = a.sig
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            add_into(acc, fn(sig, m1, m2), c1 * c2)
    return Element._wrap(sig, a.basis, acc)


def bracket_deviation(a: Element, b: Element) -> Element:
    """The BV bracket as the failure of Delta to be a derivation (reference route)."""
    return _bilinear(a, b, bracket_terms)


@lru_cache(maxsize=None)
def closed_bracket_terms(sig: Signature, m1: Monomial, m2: Monomial) -> Terms:
    """(-1)^|I| {a_I e^J, a_K e^L} = Delta(a_I e^L) a_K e^J + (-1)^|I| a_I e^L Delta(a_K e^J)."""
    sgn = -1 if m1.parity else 1
    swapped1 = Monomial(m1.word, m2.exps)
    swapped2 = Monomial(m2.word, m1.exps)
    acc: Terms = {}
    _times_mono(delta_terms(sig, swapped1), swapped2, acc, sgn, left=True)
    _times_mono(delta_terms(sig, swapped2), swapped1, acc, 1, left=False)
    return acc


def bracket_closed(a: Element, b: Element) -> Element:
    """The bracket from the e-swapped derivation formula."""
    return _bilinear(a, b, closed_bracket_terms)


# -- Newton primitives and the h coordinates ---------------------------------


@lru_cache(maxsize=None)
def _primitives(sig: Signature) -> Tuple[Element, ...]:
    # power sums from Newton's formula, in the ring where e_2..e_{2k-2} vanish
    def e(i: int) -> Element:
        if i < sig.k:
            return Element.zero(sig)
        return generator(sig, "e", i)

    s: Dict[int, Element] = {}
    for l in range(1, sig.n + 1):
        total = e(l).scale((-1) ** (l - 1) * l)
        for i in range(1, l):
            if i < sig.k:
                continue
            total = total + mul(e(i), s[l - i]).scale((-1) ** (i - 1))
        s[l] = total
    return tuple(s[l].scale(Fraction((-1) ** (l - 1), l)) for l in sig.indices)


def newton_primitive(l: int, sig: Signature) -> Element:
    """h_{2l} = (-1)^{l-1} s_{2l} / l, an element of Q[e] with leading term e_{2l}."""
    sig.check_index(l)
    return _primitives(sig)[l - sig.k]


def power_sum(l: int, sig: Signature) -> Element:
    sig.check_index(l)
    return newton_primitive(l, sig).scale((-1) ** (l - 1) * l)


def _substitute_even(sig: Signature, exps: Tuple[int, ...], images: Dict[int, Element], basis: Basis) -> Terms:
    out = Element.one(sig, basis)
    for l, j in enumerate(exps):
        for _ in range(j):
            out = mul(out, images[l])
    return out.terms


@lru_cache(maxsize=None)
def _e_in_h(sig: Signature) -> Dict[int, Element]:
    """e_{2l} written in the h coordinates, built upwards in l."""
    images: Dict[int, Element] = {}
    for l in sig.indices:
        h_of_e = newton_primitive(l, sig)
        rest = h_of_e - generator(sig, "e", l)
        acc: Terms = {}
        for m, c in rest.terms.items():
            # rest only involves e_i with i < l, whose images are known
            add_into(acc, _substitute_even(sig, m.exps, images, Basis.SYMPLECTIC), c)
        images[l] = generator(sig, "h", l) - Element(sig, Basis.SYMPLECTIC, acc)
    return images


@lru_cache(maxsize=None)
def _even_to_h(sig: Signature, exps: Tuple[int, ...]) -> Terms:
    return _substitute_even(sig, exps, _e_in_h(sig), Basis.SYMPLECTIC)


@lru_cache(maxsize=None)
def _even_from_h(sig: Signature, exps: Tuple[int, ...]) -> Terms:
    images = {l: newton_primitive(l, sig) for l in sig.indices}
    return _substitute_even(sig, exps, images, Basis.INTERSECTION)


def _change(a: Element, table, basis: Basis) -> Element:
    acc: Terms = {}
    sig = a.sig
    for m, c in a.terms.items():
        for out, d in table(sig, m.exps).items():
            key = Monomial(m.word, out.exps)
            v = acc.get(key, 0) + c * d
            if v:
                acc[key] = v
            else:
                del acc[key]
    return Element._wrap(sig, basis, acc)


def to_h_basis(a: Element) -> Element:
    """Rewrite an alpha/e element in the alpha/h coordinates (exact over Q)."""
    _require(a, Basis.INTERSECTION, "to_h_basis")
    return _change(a, _even_to_h, Basis.SYMPLECTIC)


def from_h_basis(a: Element) -> Element:
    _require(a, Basis.SYMPLECTIC, "from_h_basis")
    return _change(a, _even_from_h, Basis.INTERSECTION)


def D_for(sig: Signature) -> Callable[[int, Element], Element]:
    """The operator family D_{2l} for this signature (Stiefel form when k > 1)."""
    if sig.k == 1:
        return D_op
    return lambda l, p: D_op_stiefel(l, p, sig)


def d_dh(l: int, a: Element) -> Element:
    """d/dh_{2l} on the e-presentation, computed through the h coordinates and
    checked against D_{2l}."""
    _require(a, Basis.INTERSECTION, "d_dh")
    a.sig.check_index(l)
    via_h = from_h_basis(partial_even(l, to_h_basis(a)))
    via_D = D_for(a.sig)(l, a)
    if via_h != via_D:
        raise ConsistencyError(f"d/dh_{2 * l} disagrees with D_{2 * l} on {a}")
    return via_D


# -- vector fields and the Poisson bracket -----------------------------------


@dataclass
class VectorField:
    """sum_l odd[l] d/d(alpha_{2l+1}) + even[l] d/dh_{2l}, coefficients in the alpha/h basis."""

    sig: Signature
    odd: Dict[int, Element] = field(default_factory=dict)
    even: Dict[int, Element] = field(default_factory=dict)

    def __post_init__(self):
        for coeffs in (self.odd, self.even):
            for l in list(coeffs):
                self.sig.check_index(l)
                _require(coeffs[l], Basis.SYMPLECTIC, "VectorField")
                if not coeffs[l]:
                    del coeffs[l]

    @classmethod
    def zero(cls, sig: Signature) -> "VectorField":
        return cls(sig)

    def __call__(self, g: Element) -> Element:
        _require(g, Basis.SYMPLECTIC, "vector field application")
        out = Element.zero(self.sig, Basis.SYMPLECTIC)
        for l, c in self.odd.items():
            out = out + mul(c, partial_alpha(l, g))
        for l, c in self.even.items():
            out = out + mul(c, partial_even(l, g))
        return out

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.sig, _merge(self.odd, other.odd, 1), _merge(self.even, other.even, 1))

    def __sub__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.sig, _merge(self.odd, other.odd, -1), _merge(self.even, other.even, -1))

    def scale(self, c: Coeff) -> "VectorField":
        return VectorField(self.sig, {l: v.scale(c) for l, v in self.odd.items()},
                           {l: v.scale(c) for l, v in self.even.items()})

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.sig == other.sig and self.odd == other.odd and self.even == other.even

    def __bool__(self):
        return bool(self.odd or self.even)

    def parity_parts(self) -> Dict[int, "VectorField"]:
        """Split into parity-homogeneous derivations (d/dalpha is odd, d/dh is even)."""
        parts: Dict[int, VectorField] = {}
        for slot, flip in (("odd", 1), ("even", 0)):
            for l, c in getattr(self, slot).items():
                for p, piece in c.parity_parts().items():
                    q = (p + flip) & 1
                    part = parts.setdefault(q, VectorField(self.sig))
                    getattr(part, slot)[l] = piece
        return parts

    def __repr__(self):
        bits = [f"({c})*d/da{2 * l + 1}" for l, c in sorted(self.odd.items())]
        bits += [f"({c})*d/dh{2 * l}" for l, c in sorted(self.even.items())]
        return "VectorField(" + (" + ".join(bits) or "0") + ")"


def _merge(a: Dict[int, Element], b: Dict[int, Element], sign: int) -> Dict[int, Element]:
    out = dict(a)
    for l, c in b.items():
        out[l] = out[l] + c.scale(sign) if l in out else c.scale(sign)
    return {l: c for l, c in out.items() if c}


def _as_symplectic(a: Element) -> Element:
    if a.basis is Basis.SYMPLECTIC:
        return a
    if a.basis is Basis.INTERSECTION:
        return to_h_basis(a)
    raise AlgebraError("expected an intersection- or symplectic-basis element")


def hamiltonian_field(F: Element) -> VectorField:
    """X_F = sum_l ((-1)^|I| dF/dalpha_{2l+1} d/dh_{2l} + dF/dh_{2l} d/dalpha_{2l+1})."""
    F = _as_symplectic(F)
    sig = F.sig
    odd: Dict[int, Element] = {}
    even: Dict[int, Element] = {}
    parts = F.parity_parts()
    for l in sig.indices:
        odd[l] = partial_even(l, F)
        total = Element.zero(sig, Basis.SYMPLECTIC)
        for p, part in parts.items():
            piece = partial_alpha(l, part)
            total = total + (piece.scale(-1) if p else piece)
        even[l] = total
    return VectorField(sig, odd, even)


def poisson_bracket(F: Element, G: Element) -> Element:
    """[F, G]_omega = X_F G, returned in the basis of the inputs."""
    F._check(G)
    result = hamiltonian_field(F)(_as_symplectic(G))
    if F.basis is Basis.INTERSECTION:
        return from_h_basis(result)
    return result


def field_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """Super-commutator XY - (-1)^{|X||Y|} YX of derivations, on homogeneous parts."""
    if X.sig != Y.sig:
        raise AlgebraError("vector fields over different signatures")
    out = VectorField.zero(X.sig)
    for p, Xp in X.parity_parts().items():
        for q, Yq in Y.parity_parts().items():
            sign = -1 if p & q else 1
            odd = {}
            even = {}
            for l in X.sig.indices:
                y_odd = Yq.odd.get(l)
                x_odd = Xp.odd.get(l)
                val = Element.zero(X.sig, Basis.SYMPLECTIC)
                if y_odd is not None:
                    val = val + Xp(y_odd)
                if x_odd is not None:
                    val = val - Yq(x_odd).scale(sign)
                odd[l] = val
                y_even = Yq.even.get(l)
                x_even = Xp.even.get(l)
                val = Element.zero(X.sig, Basis.SYMPLECTIC)
                if y_even is not None:
                    val = val + Xp(y_even)
                if x_even is not None:
                    val = val - Yq(x_even).scale(sign)
                even[l] = val
            out = out + VectorField(X.sig, odd, even)
    return out


# -- the quadratic subalgebra -----------------------------------------------


@dataclass(frozen=True)
class LinearSymplecticMap:
    """A linear map on V = span{alpha_{2l+1}} + span{h_{2l}}.

    ``matrix[i][j]`` is the coefficient of basis vector i in the image of
    basis vector j; basis order is alpha_k..alpha_n then h_k..h_n.
    """

    sig: Signature
    matrix: Tuple[Tuple[Fraction, ...], ...]

    @property
    def labels(self) -> List[Tuple[str, int]]:
        return [("a", l) for l in self.sig.indices] + [("h", l) for l in self.sig.indices]

    @property
    def parities(self) -> List[int]:
        return [1] * self.sig.size + [0] * self.sig.size

    @classmethod
    def from_field(cls, X: VectorField) -> "LinearSymplecticMap":
        sig = X.sig
        labels = [("a", l) for l in sig.indices] + [("h", l) for l in sig.indices]
        pos = {lab: i for i, lab in enumerate(labels)}
        dim = len(labels)
        cols = []
        for sym, l in labels:
            image = X(generator(sig, sym, l, Basis.SYMPLECTIC))
            col = [Fraction(0)] * dim
            for m, c in image.terms.items():
                if m.size != 1:
                    raise AlgebraError(f"field is not linear on V: {sym}{l} -> {image}")
                if m.word:
                    lab = ("a", m.word.bit_length() - 1)
                else:
                    lab = ("h", next(i for i, j in enumerate(m.exps) if j))
                col[pos[lab]] += Fraction(c)
            cols.append(col)
        matrix = tuple(tuple(cols[j][i] for j in range(dim)) for i in range(dim))
        return cls(sig, matrix)

    def omega_defect(self) -> Dict[Tuple[str, int, int], Fraction]:
        """Normal form of sum_l d f(alpha_l) ^ dh_l + dalpha_l ^ d f(h_l).

        2-forms follow the bigraded sign rule: dalpha ^ dalpha is symmetric,
        dh ^ dh is antisymmetric and dalpha ^ dh is kept in that order.
        """
        N = self.sig.size
        idx = list(self.sig.indices)
        A = self.matrix
        acc: Dict[Tuple[str, int, int], Fraction] = {}

        def put(key, c):
            if c:
                acc[key] = acc.get(key, Fraction(0)) + c

        for col, l in enumerate(idx):
            # d f(alpha_l) ^ dh_l
            for row, m in enumerate(idx):
                put(("ah", m, l), A[row][col])
                c = A[N + row][col]
                if m != l:
                    put(("hh", min(m, l), max(m, l)), c if m < l else -c)
            # dalpha_l ^ d f(h_l)
            for row, m in enumerate(idx):
                put(("aa", min(l, m), max(l, m)), A[row][N + col])
                put(("ah", l, m), A[N + row][N + col])
        return {key: c for key, c in acc.items() if c}

    def annihilates_omega(self) -> bool:
        return not self.omega_defect()


def psp_quadratics(sig: Signature) -> List[Element]:
    """alpha_l h_m (all l, m), alpha_l alpha_j (l < j), h_l h_m (l <= m) in the alpha/h basis."""
    idx = list(sig.indices)
    a = {l: generator(sig, "a", l, Basis.SYMPLECTIC) for l in idx}
    h = {l: generator(sig, "h", l) for l in idx}
    out = [mul(a[l], h[m]) for l in idx for m in idx]
    out += [mul(a[l], a[j]) for i, l in enumerate(idx) for j in idx[i + 1:]]
    out += [mul(h[l], h[m]) for i, l in enumerate(idx) for m in idx[i:]]
    return out


def psp_basis(sig: Signature) -> List[Tuple[Element, LinearSymplecticMap]]:
    return [(F, LinearSymplecticMap.from_field(hamiltonian_field(F))) for F in psp_quadratics(sig)]


def psp_rank(basis: Iterable[Tuple[Element, LinearSymplecticMap]]) -> int:
    import sympy

    rows = [[x for row in M.matrix for x in row] for _, M in basis]
    return sympy.Matrix(rows).rank()


# -- filtration and L(1) -----------------------------------------------------


def filtration_component(p: int, a: Element) -> Element:
    """Projection onto L(p), the span of terms with exactly p odd generators."""
    if p < 0:
        raise AlgebraError("filtration degree must be nonnegative")
    return Element._wrap(a.sig, a.basis, {m: c for m, c in a.terms.items() if m.length == p})


def l1_derivation(m: Monomial, sig: Signature) -> Callable[[Element], Element]:
    """alpha_{2l+1} e^J acting on L(0) as the derivation -e^J D_{2l}."""
    if m.length != 1:
        raise AlgebraError("L(1) generators carry exactly one odd factor")
    l = m.word.bit_length() - 1
    coeff = Element.from_monomial(sig, Monomial(0, m.exps)).scale(-1)
    D = D_for(sig)
    return lambda c: mul(coeff, D(l, c))


# -- sphere table ------------------------------------------------------------


@dataclass(frozen=True)
class SphereEntry:
    kind: str
    args: Tuple[int, ...]
    value: Element
    expected: Element
    closed: Element

    @property
    def ok(self) -> bool:
        return self.value == self.expected == self.closed


def sphere_bv(lmax: int, n: int = 1) -> List[SphereEntry]:
    """Delta and bracket table for the loop homology of S^{2n+1}, built on the
    (n, n) signature and compared entry by entry with the closed relations.

    Rows: Delta(h^l), Delta(alpha h^l) for 0 <= l <= lmax; {alpha h^{k+1},
    alpha h^{l+1}} and {alpha h^{k+1}, h^m} for -1 <= k, l <= lmax - 1 and
    0 <= m <= lmax; {h^a, h^b} for 0 <= a, b <= lmax.
    """
    sig = Signature(n, n)
    if newton_primitive(n, sig) != generator(sig, "e", n):
        raise ConsistencyError("the sphere primitive should be the generator itself")
    zero = sig.zero_exps()

    def h_pow(j: int, coeff: Coeff = 1, odd: bool = False) -> Element:
        if j < 0 or not coeff:
            return Element.zero(sig)
        exps = list(zero)
        exps[n] = j
        return Element.from_monomial(sig, Monomial((1 << n) if odd else 0, tuple(exps)), coeff=coeff)

    rows: List[SphereEntry] = []
    for l in range(lmax + 1):
        d = bv_delta(h_pow(l))
        rows.append(SphereEntry("delta_even", (l,), d, Element.zero(sig), d))
        d = bv_delta(h_pow(l, odd=True))
        rows.append(SphereEntry("delta_odd", (l,), d, h_pow(l - 1, l), d))
    for k in range(-1, lmax):
        a = h_pow(k + 1, odd=True)
        for l in range(-1, lmax):
            b = h_pow(l + 1, odd=True)
            rows.append(SphereEntry("odd_odd", (k, l), bracket_deviation(a, b),
                                    h_pow(k + l + 1, k - l, odd=True), bracket_closed(a, b)))
        for m in range(lmax + 1):
            b = h_pow(m)
            rows.append(SphereEntry("odd_even", (k, m), bracket_deviation(a, b),
                                    h_pow(k + m, -m), bracket_closed(a, b)))
    for p in range(lmax + 1):
        for q in range(lmax + 1):
            a, b = h_pow(p), h_pow(q)
            rows.append(SphereEntry("even_even", (p, q), bracket_deviation(a, b),
                                    Element.zero(sig), bracket_closed(a, b)))
    return rows


# -- splitting and Stiefel consistency --------------------------------------


def pair_local_delta(a: Element) -> Element:
    """sum_l d/dh_{2l} d/dalpha_{2l+1}: the tensor product of the single-pair BV operators."""
    _require(a, Basis.SYMPLECTIC, "pair_local_delta")
    out = Element.zero(a.sig, Basis.SYMPLECTIC)
    for l in a.sig.indices:
        out = out + partial_even(l, partial_alpha(l, a))
    return out


def splitting_failure(sig: Signature, bound: int) -> Optional[Monomial]:
    for m in monomials(sig, bound):
        a = Element.from_monomial(sig, m)
        if to_h_basis(bv_delta(a)) != pair_local_delta(to_h_basis(a)):
            return m
    return None


def rational_splitting_check(sig: Signature, bound: int) -> bool:
    """True iff Delta acts pair-locally in the alpha/h coordinates on all monomials up to ``bound``."""
    if sig.k != 1:
        raise AlgebraError("the rational splitting is stated for k = 1")
    return splitting_failure(sig, bound) is None


def stiefel_checks(n: int, k: int, bound: int) -> Iterator[Tuple[str, Monomial, bool]]:
    """Compare the (n, k) machinery with the SU(n+1) one pushed through e_2, ..., e_{2k-2} -> 0.

    Yields ``(what, monomial, ok)`` for Delta on every monomial without odd
    generators below k, then for each D^{(k)} on every even monomial.
    """
    su = Signature(n, 1)
    st = Signature(n, k)
    low = (1 << k) - 1
    for m in monomials(su, bound):
        if m.word & low:
            continue
        lhs = specialize(bv_delta(Element.from_monomial(su, m)), k)
        rhs = bv_delta(specialize(Element.from_monomial(su, m), k))
        yield "Delta", m, lhs == rhs
    for m in monomials(su, bound, even_only=True):
        p = Element.from_monomial(su, m)
        for l in st.indices:
            yield f"D_{2 * l}", m, specialize(D_op(l, p), k) == D_op_stiefel(l, specialize(p, k), st)


def stiefel_failure(n: int, k: int, bound: int) -> Optional[Monomial]:
    """First monomial where D^{(k)}-Delta differs from the specialised SU-Delta, if any."""
    for _, m, ok in stiefel_checks(n, k, bound):
        if not ok:
            return m
    return None

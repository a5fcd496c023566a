"""Exhaustive identity checks over all monomials (pairs, triples) up to a degree bound.

Each suite returns a :class:`SuiteResult` with the number of instances it
checked and the first counterexample found.  Suites that enumerate triples
can be partitioned over worker processes by the first operand.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import bv, hopf
from .render import render
from .superalgebra import (
    Basis,
    Element,
    Monomial,
    Signature,
    degree,
    mono_mul,
    monomials,
    mul,
    partial_alpha,
    partial_even,
    rebase,
)


@dataclass
class SuiteResult:
    name: str
    signature: Tuple[int, int]
    bound: int
    count: int = 0
    passed: bool = True
    skipped: bool = False
    counterexample: Optional[str] = None
    seconds: float = 0.0
    notes: List[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.skipped:
            return "skip"
        return "pass" if self.passed else "FAIL"

    def line(self) -> str:
        n, k = self.signature
        out = f"{self.status:4} {self.name:32} n={n} k={k} bound={self.bound} count={self.count} ({self.seconds:.2f}s)"
        if self.counterexample:
            out += f"\n     counterexample: {self.counterexample}"
        for note in self.notes:
            out += f"\n     {note}"
        return out

    def as_dict(self) -> Dict:
        return {
            "suite": self.name,
            "n": self.signature[0],
            "k": self.signature[1],
            "bound": self.bound,
            "count": self.count,
            "status": self.status,
            "counterexample": self.counterexample,
        }


class _Tally:
    def __init__(self):
        self.count = 0
        self.bad: Optional[str] = None

    def check(self, ok: bool, describe: Callable[[], str]) -> None:
        self.count += 1
        if not ok and self.bad is None:
            self.bad = describe()


def _show(sig: Signature, *ms: Monomial, basis: Basis = Basis.INTERSECTION) -> str:
    return ", ".join(render(Element.from_monomial(sig, m, basis)) for m in ms)


# -- term-level helpers -------------------------------------------------------


def _acc(acc: Dict, terms: Dict, scale) -> None:
    for m, c in terms.items():
        v = acc.get(m, 0) + scale * c
        if v:
            acc[m] = v
        else:
            del acc[m]


def _acc_times(acc: Dict, terms: Dict, other: Monomial, scale, left: bool) -> None:
    for t, c in terms.items():
        s, m = mono_mul(t, other) if left else mono_mul(other, t)
        if s:
            v = acc.get(m, 0) + scale * s * c
            if v:
                acc[m] = v
            else:
                del acc[m]


# -- BV axioms ----------------------------------------------------------------


def _bv_triples(sig: Signature, bound: int, first: Sequence[int]) -> Tuple[int, Optional[str], int, Optional[str], int, Optional[str]]:
    """Jacobi and both Leibniz identities for every triple whose first operand index is in ``first``."""
    mons = monomials(sig, bound)
    B = bv.bracket_terms
    jac = _Tally()
    leib = _Tally()
    leib2 = _Tally()
    for i in first:
        a = mons[i]
        pa = a.parity
        for b in mons:
            pb = b.parity
            Bab = B(sig, a, b)
            s_jac = -1 if ((pa + 1) * (pb + 1)) & 1 else 1
            s_l1 = -1 if (pb * (pa + 1)) & 1 else 1
            sab, ab = mono_mul(a, b)
            for c in mons:
                pc = c.parity
                # {a,{b,c}} - {{a,b},c} - s {b,{a,c}}
                acc: Dict = {}
                for m, co in B(sig, b, c).items():
                    _acc(acc, B(sig, a, m), co)
                for m, co in Bab.items():
                    _acc(acc, B(sig, m, c), -co)
                Bac = B(sig, a, c)
                for m, co in Bac.items():
                    _acc(acc, B(sig, b, m), -s_jac * co)
                if acc or jac.bad is None:
                    jac.check(not acc, lambda: _show(sig, a, b, c))
                else:
                    jac.count += 1
                # {a, bc} = {a,b} c + (-1)^{|b|(|a|+1)} b {a,c}
                acc = {}
                sbc, bc = mono_mul(b, c)
                if sbc:
                    _acc(acc, B(sig, a, bc), sbc)
                _acc_times(acc, Bab, c, -1, left=True)
                _acc_times(acc, Bac, b, -s_l1, left=False)
                leib.check(not acc, lambda: _show(sig, a, b, c))
                # {ab, c} = a {b,c} + (-1)^{|b|(|c|+1)} {a,c} b
                acc = {}
                if sab:
                    _acc(acc, B(sig, ab, c), sab)
                _acc_times(acc, B(sig, b, c), a, -1, left=False)
                s_l2 = -1 if (pb * (pc + 1)) & 1 else 1
                _acc_times(acc, Bac, b, -s_l2, left=True)
                leib2.check(not acc, lambda: _show(sig, a, b, c))
    return jac.count, jac.bad, leib.count, leib.bad, leib2.count, leib2.bad


def _chunked(n_items: int, workers: int) -> List[List[int]]:
    workers = max(1, min(workers, n_items or 1))
    return [list(range(w, n_items, workers)) for w in range(workers)]


def bv_triple_suites(sig: Signature, bound: int, workers: int = 1) -> List[SuiteResult]:
    start = time.perf_counter()
    n_items = len(monomials(sig, bound))
    chunks = _chunked(n_items, workers)
    if len(chunks) == 1:
        parts = [_bv_triples(sig, bound, chunks[0])]
    else:
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            parts = list(pool.map(_bv_triples, [sig] * len(chunks), [bound] * len(chunks), chunks))
    elapsed = time.perf_counter() - start
    out = []
    for slot, name in enumerate(("jacobi", "leibniz-left", "leibniz-right")):
        count = sum(p[2 * slot] for p in parts)
        bad = next((p[2 * slot + 1] for p in parts if p[2 * slot + 1]), None)
        out.append(SuiteResult(name, (sig.n, sig.k), bound, count, bad is None, counterexample=bad,
                               seconds=elapsed / 3))
    return out


def suite_delta_squared(sig: Signature, bound: int) -> _Tally:
    t = _Tally()
    for m in monomials(sig, bound):
        a = Element.from_monomial(sig, m)
        dd = bv.bv_delta(bv.bv_delta(a))
        t.check(not dd, lambda: _show(sig, m))
        d1, _ = degree(m, Basis.INTERSECTION)
        for out in bv.bv_delta(a).terms:
            t.check(degree(out, Basis.INTERSECTION)[0] == d1 + 1, lambda: f"degree of Delta({_show(sig, m)})")
    return t


def suite_antisymmetry(sig: Signature, bound: int) -> _Tally:
    t = _Tally()
    mons = monomials(sig, bound)
    for a in mons:
        for b in mons:
            sign = -1 if ((a.parity + 1) * (b.parity + 1)) & 1 else 1
            acc = dict(bv.bracket_terms(sig, a, b))
            _acc(acc, bv.bracket_terms(sig, b, a), sign)
            t.check(not acc, lambda: _show(sig, a, b))
    return t


def suite_closed_form(sig: Signature, bound: int) -> _Tally:
    t = _Tally()
    mons = monomials(sig, bound)
    for a in mons:
        for b in mons:
            t.check(bv.bracket_terms(sig, a, b) == bv.closed_bracket_terms(sig, a, b), lambda: _show(sig, a, b))
    return t


def suite_delta_transport(sig: Signature, bound: int) -> _Tally:
    t = _Tally()
    for m in monomials(sig, bound):
        a = Element.from_monomial(sig, m)
        t.check(bv.bv_delta(a) == bv.bv_delta_transported(a), lambda: _show(sig, m))
    return t


def suite_poisson(sig: Signature, bound: int) -> _Tally:
    t = _Tally()
    mons = monomials(sig, bound)
    fields = {m: bv.hamiltonian_field(Element.from_monomial(sig, m)) for m in mons}
    h_forms = {m: bv.to_h_basis(Element.from_monomial(sig, m)) for m in mons}
    for a in mons:
        X = fields[a]
        for b in mons:
            pb = bv.from_h_basis(X(h_forms[b]))
            oracle = Element(sig, Basis.INTERSECTION, bv.bracket_terms(sig, a, b))
            t.check(pb == oracle and pb.is_integral(), lambda: _show(sig, a, b))
    return t


# -- core superalgebra ----------------------------------------------------------


def suite_core(sig: Signature, bound: int) -> _Tally:
    """Associativity and graded commutativity of the product, additivity of degree,
    and the odd-derivation laws of d/dalpha."""
    t = _Tally()
    mons = monomials(sig, bound)
    for a in mons:
        da = degree(a, Basis.INTERSECTION)
        for b in mons:
            s1, ab = mono_mul(a, b)
            s2, ba = mono_mul(b, a)
            sign = -1 if a.parity & b.parity else 1
            t.check(s1 == sign * s2 and ab == ba, lambda: f"commutativity {_show(sig, a, b)}")
            if s1:
                db = degree(b, Basis.INTERSECTION)
                dab = degree(ab, Basis.INTERSECTION)
                t.check(dab[0] == da[0] + db[0] and dab[1] == (da[1] + db[1]) & 1,
                        lambda: f"degree additivity {_show(sig, a, b)}")
            A, B = Element.from_monomial(sig, a), Element.from_monomial(sig, b)
            AB = mul(A, B)
            for l in sig.indices:
                lhs = partial_alpha(l, AB)
                rhs = mul(partial_alpha(l, A), B) + mul(A, partial_alpha(l, B)).scale(-1 if a.parity else 1)
                t.check(lhs == rhs, lambda: f"odd Leibniz l={l} {_show(sig, a, b)}")
    # associativity on triples of monomials of small even degree
    small = monomials(sig, min(bound, 4))
    for a in small:
        for b in small:
            s_ab, ab = mono_mul(a, b)
            for c in small:
                s_bc, bc = mono_mul(b, c)
                left = (s_ab * mono_mul(ab, c)[0], mono_mul(ab, c)[1]) if s_ab else (0, None)
                right = (s_bc * mono_mul(a, bc)[0], mono_mul(a, bc)[1]) if s_bc else (0, None)
                if left[0] == 0:
                    left = (0, None)
                if right[0] == 0:
                    right = (0, None)
                t.check(left == right, lambda: f"associativity {_show(sig, a, b, c)}")
    for m in mons:
        A = Element.from_monomial(sig, m)
        for l in sig.indices:
            t.check(not partial_alpha(l, partial_alpha(l, A)), lambda: f"d/da squared {_show(sig, m)}")
            for j in sig.indices:
                if j != l:
                    lhs = partial_alpha(l, partial_alpha(j, A))
                    rhs = partial_alpha(j, partial_alpha(l, A)).scale(-1)
                    t.check(lhs == rhs, lambda: f"d/da anticommute {_show(sig, m)}")
    return t


def suite_D_commute(sig: Signature, bound: int) -> _Tally:
    t = _Tally()
    D = bv.D_for(sig)
    for m in monomials(sig, bound, even_only=True):
        p = Element.from_monomial(sig, m)
        for i in sig.indices:
            for j in sig.indices:
                t.check(D(i, D(j, p)) == D(j, D(i, p)), lambda: f"[D_{2 * i}, D_{2 * j}] on {_show(sig, m)}")
    return t


def suite_D_characterization(sig: Signature, bound: int) -> _Tally:
    t = _Tally()
    for m in monomials(sig, bound, even_only=True):
        t.check(hopf.verify_D_characterization(m, sig), lambda: _show(sig, m))
    return t


# -- Hopf / Pontrjagin side -------------------------------------------------------


def suite_pontrjagin_derivation(sig: Signature, bound: int) -> _Tally:
    t = _Tally()
    mons = monomials(sig, bound)
    for a in mons:
        z = Element.from_monomial(sig, a, Basis.PONTRJAGIN)
        dz = hopf.delta_pontrjagin(z)
        for out in dz.terms:
            t.check(degree(out, Basis.PONTRJAGIN)[0] == degree(a, Basis.PONTRJAGIN)[0] + 1,
                    lambda: f"degree of Delta({_show(sig, a, basis=Basis.PONTRJAGIN)})")
        for b in mons:
            w = Element.from_monomial(sig, b, Basis.PONTRJAGIN)
            lhs = hopf.delta_pontrjagin(mul(z, w))
            rhs = mul(dz, w) + mul(z, hopf.delta_pontrjagin(w)).scale(-1 if a.parity else 1)
            t.check(lhs == rhs, lambda: _show(sig, a, b, basis=Basis.PONTRJAGIN))
    return t


def suite_pontrjagin_coproduct(sig: Signature, bound: int) -> _Tally:
    """phi(Delta z) = sum Delta(z') (x) z'' + (-1)^{|z'|} z' (x) Delta(z''), plus
    cocommutativity and coassociativity of phi."""
    t = _Tally()
    basis = Basis.PONTRJAGIN

    def delta_mono(m):
        return dict(hopf._delta_p_mono(sig, m))

    for m in monomials(sig, bound):
        z = Element.from_monomial(sig, m, basis)
        phi = hopf.coproduct(z)
        lhs = hopf.coproduct(hopf.delta_pontrjagin(z))
        rhs = phi.apply_odd_slot(0, delta_mono) + phi.apply_odd_slot(1, delta_mono)
        t.check(lhs == rhs, lambda: f"Delta/phi {_show(sig, m, basis=basis)}")
        t.check(phi.flip() == phi, lambda: f"cocommutativity {_show(sig, m, basis=basis)}")
        left = phi.apply_slot(0, lambda u: hopf.coproduct_terms(sig, basis, u))
        right = phi.apply_slot(1, lambda u: hopf.coproduct_terms(sig, basis, u))
        t.check(left == right, lambda: f"coassociativity {_show(sig, m, basis=basis)}")
    return t


def suite_triangular(sig: Signature, bound: int) -> _Tally:
    t = _Tally()
    for l in sig.indices:
        rebuilt = hopf.reconstruct_delta_e(sig, l)
        formula = hopf.delta_pontrjagin_generator(sig, l)
        via_d = hopf.delta_pontrjagin(rebase(Element.from_monomial(sig, Monomial(0, sig.unit_exps(l))), Basis.PONTRJAGIN))
        t.check(rebuilt == formula == via_d, lambda: f"Delta(e_{2 * l})")
    return t


def suite_duality(sig: Signature, bound: int) -> _Tally:
    """x-action equals d/dalpha and obeys the odd Leibniz rule over the intersection product;
    dictionary round trips; intersection product equals the exterior product."""
    t = _Tally()
    full = list(sig.indices)
    mons = [m for m in monomials(sig, 0)]
    for m in mons:
        A = Element.from_monomial(sig, m)
        I = m.indices
        J = tuple(i for i in full if i not in I)
        t.check(hopf.alpha_to_x(I, sig) == hopf.to_pontrjagin(A), lambda: f"dictionary {_show(sig, m)}")
        s_I = hopf.duality_sign(sig, m.word)
        t.check(hopf.x_to_alpha(J, sig) == A.scale(s_I), lambda: f"x_J -> alpha_I {_show(sig, m)}")
        t.check(hopf.to_intersection(hopf.to_pontrjagin(A)) == A, lambda: f"round trip {_show(sig, m)}")
        for i in sig.indices:
            t.check(hopf.x_action(i, A) == partial_alpha(i, A), lambda: f"x-action {i} on {_show(sig, m)}")
    for a in mons:
        A = Element.from_monomial(sig, a)
        for b in mons:
            B = Element.from_monomial(sig, b)
            AB = hopf.intersection_mul(A, B)
            t.check(AB == mul(A, B), lambda: f"intersection product {_show(sig, a, b)}")
            for i in sig.indices:
                lhs = hopf.x_action(i, AB)
                rhs = hopf.intersection_mul(hopf.x_action(i, A), B) + \
                    hopf.intersection_mul(A, hopf.x_action(i, B)).scale(-1 if a.parity else 1)
                t.check(lhs == rhs, lambda: f"x-action Leibniz {i} {_show(sig, a, b)}")
    for I in mons:
        for J in mons:
            expect = (-1 if (len(I.indices) * (len(I.indices) - 1) // 2) & 1 else 1) if I == J else 0
            t.check(hopf.kronecker(I.indices, J.indices) == expect, lambda: "kronecker")
    return t


# -- Newton primitives ------------------------------------------------------------


def suite_h_integrality(sig: Signature, bound: int) -> _Tally:
    """D_{2k} h_{2l} = delta_{kl}; the e-partials of h_{2l} are integral and solve the unipotent system."""
    t = _Tally()
    D = bv.D_for(sig)
    one = Element.one(sig)
    for l in sig.indices:
        h = bv.newton_primitive(l, sig)
        for k in sig.indices:
            t.check(D(k, h) == (one if k == l else 0), lambda: f"D_{2 * k} h_{2 * l}")
        grads = [partial_even(m, h) for m in sig.indices]
        for m, g in zip(sig.indices, grads):
            t.check(g.is_integral(), lambda: f"dh_{2 * l}/de_{2 * m} = {g}")
        rhs = [one if k == l else Element.zero(sig) for k in sig.indices]
        t.check(hopf.solve_unipotent(sig, rhs) == grads, lambda: f"unipotent system for h_{2 * l}")
        phi = hopf.coproduct(h)
        unit = Monomial(0, sig.zero_exps())
        prim = hopf.TensorElement(sig, Basis.INTERSECTION, 2, {})
        for m, c in h.terms.items():
            prim = prim + hopf.TensorElement.pure(sig, Basis.INTERSECTION, unit, m, coeff=c)
            prim = prim + hopf.TensorElement.pure(sig, Basis.INTERSECTION, m, unit, coeff=c)
        t.check(phi == prim, lambda: f"h_{2 * l} primitive")
    for m in monomials(sig, bound, even_only=True):
        p = Element.from_monomial(sig, m)
        for l in sig.indices:
            try:
                bv.d_dh(l, p)
                ok = True
            except bv.ConsistencyError:
                ok = False
            t.check(ok, lambda: f"d/dh_{2 * l} vs D on {_show(sig, m)}")
        t.check(bv.from_h_basis(bv.to_h_basis(p)) == p, lambda: f"h round trip {_show(sig, m)}")
    return t


# -- corollaries ------------------------------------------------------------------


def suite_splitting(sig: Signature, bound: int) -> _Tally:
    t = _Tally()
    for m in monomials(sig, bound):
        a = Element.from_monomial(sig, m)
        ok = bv.to_h_basis(bv.bv_delta(a)) == bv.pair_local_delta(bv.to_h_basis(a))
        t.check(ok, lambda: _show(sig, m))
    return t


def suite_stiefel(sig: Signature, bound: int) -> _Tally:
    t = _Tally()
    ks = range(2, sig.n + 1) if sig.k == 1 else [sig.k]
    su = Signature(sig.n, 1)
    for k in ks:
        for what, m, ok in bv.stiefel_checks(sig.n, k, bound):
            t.check(ok, lambda: f"k={k}, {what} on {_show(su, m)}")
    return t


def suite_sphere(sig: Signature, bound: int) -> _Tally:
    t = _Tally()
    for row in bv.sphere_bv(bound, sig.n):
        t.check(row.ok, lambda: f"{row.kind}{row.args}: got {row.value}, closed {row.closed}, expected {row.expected}")
    # alpha h^{k+1} -> -h^{k+1} d/dh intertwines the bracket with derivation commutators
    ssig = Signature(sig.n, sig.n)
    n = sig.n

    def hp(j, odd=False):
        exps = list(ssig.zero_exps())
        exps[n] = j
        return Element.from_monomial(ssig, Monomial((1 << n) if odd else 0, tuple(exps)))

    def as_derivation(a: Element):
        coeff = Element(ssig, Basis.INTERSECTION, {Monomial(0, m.exps): -c for m, c in a.terms.items()})
        return lambda p: mul(coeff, partial_even(n, p))

    for k in range(-1, bound):
        for l in range(-1, bound):
            A, B = hp(k + 1, True), hp(l + 1, True)
            dA, dB = as_derivation(A), as_derivation(B)
            dAB = as_derivation(bv.bracket_deviation(A, B))
            for m in range(bound + 1):
                p = hp(m)
                t.check(dAB(p) == dA(dB(p)) - dB(dA(p)), lambda: f"Virasoro action k={k} l={l} m={m}")
                t.check(bv.bracket_deviation(A, p) == dA(p), lambda: f"derivation action k={k} m={m}")
    return t


def suite_psp(sig: Signature, bound: int) -> _Tally:
    t = _Tally()
    basis = bv.psp_basis(sig)
    N = sig.size
    t.check(len(basis) == 2 * N * N, lambda: f"{len(basis)} quadratics")
    t.check(bv.psp_rank(basis) == 2 * N * N, lambda: "quadratic maps are dependent")
    for F, M in basis:
        t.check(M.annihilates_omega(), lambda: f"{F} does not annihilate omega: {M.omega_defect()}")
    for F, _ in basis:
        XF = bv.hamiltonian_field(F)
        for G, _ in basis:
            FG = bv.poisson_bracket(F, G)
            t.check(all(m.size == 2 for m in FG.terms), lambda: f"[{F}, {G}] = {FG} not quadratic")
            XG = bv.hamiltonian_field(G)
            t.check(bv.hamiltonian_field(FG) == bv.field_bracket(XF, XG), lambda: f"X_[{F},{G}]")
    return t


def suite_hamiltonian(sig: Signature, bound: int) -> _Tally:
    """F -> X_F is a Lie homomorphism with kernel the constants; dF is recovered from X_F."""
    t = _Tally()
    mons = monomials(sig, bound)
    for m in mons:
        F = Element.from_monomial(sig, m)
        X = bv.hamiltonian_field(F)
        t.check(bool(X) == (m != Monomial(0, sig.zero_exps())), lambda: f"kernel at {_show(sig, m)}")
        Fh = bv.to_h_basis(F)
        sign = -1 if m.parity else 1
        for l in sig.indices:
            t.check(X.odd.get(l, 0) == partial_even(l, Fh), lambda: f"dF/dh {_show(sig, m)}")
            t.check(X.even.get(l, 0) == partial_alpha(l, Fh).scale(sign), lambda: f"dF/da {_show(sig, m)}")
    small = monomials(sig, min(bound, 4))
    fields = {m: bv.hamiltonian_field(Element.from_monomial(sig, m)) for m in small}
    for a in small:
        for b in small:
            FG = bv.poisson_bracket(Element.from_monomial(sig, a), Element.from_monomial(sig, b))
            t.check(bv.hamiltonian_field(FG) == bv.field_bracket(fields[a], fields[b]), lambda: _show(sig, a, b))
    return t


def suite_filtration(sig: Signature, bound: int) -> _Tally:
    t = _Tally()
    mons = monomials(sig, bound)
    for a in mons:
        for b in mons:
            out = bv.bracket_terms(sig, a, b)
            t.check(all(m.length == a.length + b.length - 1 for m in out), lambda: _show(sig, a, b))
            if a.length == 0 and b.length == 0:
                t.check(not out, lambda: f"L(0) not abelian at {_show(sig, a, b)}")
    l1 = [m for m in mons if m.length == 1]
    l0 = [m for m in mons if m.length == 0]
    for a in l1:
        da = bv.l1_derivation(a, sig)
        A = Element.from_monomial(sig, a)
        for c in l0:
            C = Element.from_monomial(sig, c)
            t.check(bv.bracket_deviation(A, C) == da(C), lambda: f"L(1) action {_show(sig, a, c)}")
        for b in l1:
            db = bv.l1_derivation(b, sig)
            AB = Element(sig, Basis.INTERSECTION, bv.bracket_terms(sig, a, b))
            for c in l0:
                C = Element.from_monomial(sig, c)
                lhs = Element.zero(sig)
                for m, co in AB.terms.items():
                    lhs = lhs + bv.l1_derivation(m, sig)(C).scale(co)
                t.check(lhs == da(db(C)) - db(da(C)), lambda: f"L(1) homomorphism {_show(sig, a, b, c)}")
    return t


# -- registry -----------------------------------------------------------------------

SIMPLE_SUITES: Dict[str, Tuple[Callable[[Signature, int], _Tally], bool]] = {
    # name: (function, needs k == 1)
    "core-superalgebra": (suite_core, False),
    "delta-squared": (suite_delta_squared, False),
    "antisymmetry": (suite_antisymmetry, False),
    "closed-vs-oracle": (suite_closed_form, False),
    "delta-transport": (suite_delta_transport, True),
    "poisson-equivalence": (suite_poisson, False),
    "D-commute": (suite_D_commute, False),
    "D-coproduct-extraction": (suite_D_characterization, True),
    "h-integrality": (suite_h_integrality, False),
    "pontrjagin-derivation": (suite_pontrjagin_derivation, True),
    "pontrjagin-coproduct": (suite_pontrjagin_coproduct, True),
    "triangular-reconstruction": (suite_triangular, True),
    "duality": (suite_duality, False),
    "stiefel": (suite_stiefel, False),
    "splitting": (suite_splitting, True),
    "sphere": (suite_sphere, False),
    "psp": (suite_psp, False),
    "hamiltonian": (suite_hamiltonian, False),
    "filtration": (suite_filtration, False),
}

TRIPLE_SUITES = ("jacobi", "leibniz-left", "leibniz-right")

SUITE_NAMES = tuple(SIMPLE_SUITES) + TRIPLE_SUITES

# older spellings still accepted on the command line
ALIASES = {
    "theoremA-closed-vs-oracle": "closed-vs-oracle",
    "prop4-2-integrality": "h-integrality",
}


def canonical(name: str) -> str:
    return ALIASES.get(name, name)


def run_suite(name: str, sig: Signature, bound: int, workers: int = 1) -> List[SuiteResult]:
    name = canonical(name)
    if name in TRIPLE_SUITES or name == "bv-axioms":
        return bv_triple_suites(sig, bound, workers)
    if name not in SIMPLE_SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)} or 'all'")
    fn, su_only = SIMPLE_SUITES[name]
    if su_only and sig.k != 1:
        return [SuiteResult(name, (sig.n, sig.k), bound, skipped=True, notes=["stated for k = 1 only"])]
    start = time.perf_counter()
    tally = fn(sig, bound)
    return [SuiteResult(name, (sig.n, sig.k), bound, tally.count, tally.bad is None,
                        counterexample=tally.bad, seconds=time.perf_counter() - start)]


def run(sig: Signature, bound: int, suites: Sequence[str] = ("all",), workers: int = 1) -> List[SuiteResult]:
    names = [canonical(s) for s in suites]
    if "all" in names:
        names = list(SIMPLE_SUITES) + ["bv-axioms"]
    results: List[SuiteResult] = []
    seen_triples = False
    for name in names:
        if name in TRIPLE_SUITES or name == "bv-axioms":
            if seen_triples:
                continue
            seen_triples = True
            picked = bv_triple_suites(sig, bound, workers)
            if name != "bv-axioms":
                picked = [r for r in picked if r.name in names]
            results.extend(picked)
        else:
            results.extend(run_suite(name, sig, bound, workers))
    return results

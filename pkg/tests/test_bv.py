from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracle
from conftest import elements, monomial_of, signatures
from bvloop import bv, hopf
from bvloop.superalgebra import (
    AlgebraError,
    Basis,
    Element,
    Monomial,
    Signature,
    generator,
    make_monomial,
    monomials,
    mul,
)

S1, S2 = Signature(1), Signature(2)
SYM = Basis.SYMPLECTIC


def g(sig, sym, l, basis=None):
    return generator(sig, sym, l, basis)


def e(sig, l):
    return g(sig, "e", l)


def a(sig, l):
    return g(sig, "a", l)


def h(sig, l):
    return g(sig, "h", l)


# -- worked values ------------------------------------------------------------


def test_delta_values():
    assert bv.bv_delta(a(S1, 1) * e(S1, 1)) == 1
    assert bv.bv_delta(e(S1, 1) ** 5) == 0
    assert bv.bv_delta(a(S2, 1) * e(S2, 2)) == e(S2, 1)


@pytest.mark.parametrize("route", [bv.bracket_deviation, bv.bracket_closed, bv.poisson_bracket])
def test_bracket_values(route):
    assert route(a(S1, 1) * e(S1, 1), e(S1, 1)) == -e(S1, 1)
    assert route(e(S2, 1), e(S2, 2)) == 0
    assert route(a(S1, 1), e(S1, 1)) == -1
    assert route(a(S2, 1), a(S2, 2)) == 0


def test_newton_primitive_values():
    assert bv.newton_primitive(1, S2) == e(S2, 1)
    assert bv.newton_primitive(2, S2) == e(S2, 2) - (e(S2, 1) ** 2).scale(Fraction(1, 2))
    phi = hopf.coproduct(bv.newton_primitive(2, S2))
    unit = Monomial(0, S2.zero_exps())
    expect = hopf.TensorElement(S2, Basis.INTERSECTION, 2)
    for m, c in bv.newton_primitive(2, S2).terms.items():
        expect = expect + hopf.TensorElement.pure(S2, Basis.INTERSECTION, unit, m, coeff=c)
        expect = expect + hopf.TensorElement.pure(S2, Basis.INTERSECTION, m, unit, coeff=c)
    assert phi == expect


def test_h_basis_values():
    assert bv.to_h_basis(e(S2, 2)) == h(S2, 2) + (h(S2, 1) ** 2).scale(Fraction(1, 2))
    assert bv.to_h_basis(a(S2, 1)) == g(S2, "a", 1, SYM)
    p = e(S2, 1) * e(S2, 2)
    assert bv.from_h_basis(bv.to_h_basis(p)) == p


def test_d_dh_values():
    assert bv.d_dh(1, e(S2, 2)) == e(S2, 1)
    h4 = bv.newton_primitive(2, S2)
    assert bv.d_dh(2, h4) == 1
    assert bv.d_dh(1, h4) == 0


def test_hamiltonian_field_values():
    F = g(S1, "a", 1, SYM) * h(S1, 1)
    X = bv.hamiltonian_field(F)
    assert X.even == {1: -h(S1, 1)}
    assert X.odd == {1: g(S1, "a", 1, SYM)}
    Y = bv.hamiltonian_field(h(S1, 1) * h(S1, 1))
    assert Y.odd == {1: h(S1, 1).scale(2)} and not Y.even
    assert not bv.hamiltonian_field(Element.one(S1, SYM))


def test_field_bracket_values():
    F, G = g(S1, "a", 1, SYM) * h(S1, 1), h(S1, 1) ** 2
    XF, XG = bv.hamiltonian_field(F), bv.hamiltonian_field(G)
    assert bv.field_bracket(XG, XF) == bv.hamiltonian_field(bv.poisson_bracket(G, F))
    assert not bv.field_bracket(bv.VectorField.zero(S1), XF)
    # an odd field with itself: [X, X] = 2 X o X, which is X_{[F, F]}
    assert bv.field_bracket(XF, XF) == bv.hamiltonian_field(bv.poisson_bracket(F, F))


def test_psp_counts():
    assert len(bv.psp_basis(S1)) == 2
    assert len(bv.psp_basis(S2)) == 8
    assert all(M.annihilates_omega() for _, M in bv.psp_basis(S2))


def test_filtration_values():
    x = a(S2, 1) * e(S2, 1) + e(S2, 2)
    assert bv.filtration_component(1, x) == a(S2, 1) * e(S2, 1)
    assert bv.filtration_component(0, x) == e(S2, 2)
    br = bv.bracket_deviation(a(S2, 1) * e(S2, 1), a(S2, 2))
    assert bv.filtration_component(1, br) == br


def test_sphere_values():
    rows = {(r.kind, r.args): r for r in bv.sphere_bv(10)}
    assert all(r.ok for r in rows.values())
    S = Signature(1, 1)
    alpha = a(S, 1)
    assert bv.bv_delta(alpha * e(S, 1) ** 3) == (e(S, 1) ** 2).scale(3)
    assert bv.bracket_deviation(alpha * e(S, 1) ** 2, alpha * e(S, 1) ** 3) == -(alpha * e(S, 1) ** 4)
    assert bv.bracket_deviation(e(S, 1) ** 2, e(S, 1) ** 3) == 0


def test_sphere_at_higher_n_uses_top_generator():
    assert all(r.ok for r in bv.sphere_bv(6, n=3))


def test_splitting_values():
    assert bv.rational_splitting_check(S1, 6)
    assert bv.rational_splitting_check(S2, 6)
    F = g(S2, "a", 1, SYM) * h(S2, 2)
    assert bv.pair_local_delta(F) == 0
    assert bv.to_h_basis(bv.bv_delta(bv.from_h_basis(F))) == 0
    with pytest.raises(AlgebraError):
        bv.rational_splitting_check(Signature(2, 2), 4)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(2, 5) for k in range(2, n + 1)])
def test_stiefel_specialisation(n, k):
    assert bv.stiefel_failure(n, k, 6) is None


# -- oracle comparisons -----------------------------------------------------------


@given(st.data())
def test_delta_matches_oracle(data):
    sig = data.draw(signatures(stiefel=True))
    x = data.draw(elements(sig, bound=6))
    assert oracle.from_element(bv.bv_delta(x)) == oracle.delta(sig.n, oracle.from_element(x), sig.k)


@given(st.data())
def test_bracket_matches_oracle(data):
    sig = data.draw(signatures(stiefel=True))
    x = data.draw(monomial_of(sig))
    Y = data.draw(elements(sig))
    X = Element.from_monomial(sig, x, coeff=data.draw(st.integers(-2, 2).filter(bool)))
    expect = oracle.bracket(sig.n, oracle.from_element(X), oracle.from_element(Y), sig.k)
    assert oracle.from_element(bv.bracket_deviation(X, Y)) == expect
    assert bv.bracket_closed(X, Y) == bv.bracket_deviation(X, Y)
    assert bv.poisson_bracket(X, Y) == bv.bracket_deviation(X, Y)


@given(st.data())
def test_newton_primitive_matches_log_series(data):
    sig = data.draw(signatures(max_n=5, stiefel=True))
    l = data.draw(st.sampled_from(sig.indices))
    assert oracle.from_element(bv.newton_primitive(l, sig)) == oracle.newton_h(sig.n, l, sig.k)


@given(st.data())
def test_h_basis_round_trip(data):
    sig = data.draw(signatures(max_n=4, stiefel=True))
    x = data.draw(elements(sig, bound=8))
    assert bv.from_h_basis(bv.to_h_basis(x)) == x


@given(st.data())
def test_bv_axioms_on_random_elements(data):
    sig = data.draw(signatures(stiefel=True))
    x, y = data.draw(monomial_of(sig)), data.draw(monomial_of(sig))
    Z = data.draw(elements(sig))
    X, Y = Element.from_monomial(sig, x), Element.from_monomial(sig, y)
    B = bv.bracket_deviation
    sx, sy = x.parity, y.parity
    assert bv.bv_delta(bv.bv_delta(Z)) == 0
    assert B(X, Y) == B(Y, X).scale(-(-1) ** ((sx + 1) * (sy + 1)))
    jac = B(X, B(Y, Z)) - B(B(X, Y), Z) - B(Y, B(X, Z)).scale((-1) ** ((sx + 1) * (sy + 1)))
    assert jac == 0
    assert B(X, mul(Y, Z)) == mul(B(X, Y), Z) + mul(Y, B(X, Z)).scale((-1) ** (sy * (sx + 1)))


@given(st.data())
def test_poisson_is_integral_on_integral_inputs(data):
    sig = data.draw(signatures())
    X, Y = data.draw(elements(sig)), data.draw(elements(sig))
    assert bv.poisson_bracket(X, Y).is_integral()


@given(st.data())
def test_l1_acts_as_derivation(data):
    sig = data.draw(signatures())
    pool = [m for m in monomials(sig, 4) if m.length == 1]
    m = data.draw(st.sampled_from(pool))
    C = data.draw(elements(sig, parity=0, bound=6).filter(lambda c: all(t.length == 0 for t in c.terms)))
    assert bv.bracket_deviation(Element.from_monomial(sig, m), C) == bv.l1_derivation(m, sig)(C)


def test_to_h_basis_rejects_symplectic_input():
    with pytest.raises(AlgebraError):
        bv.to_h_basis(g(S2, "a", 1, SYM))


def test_delta_transport_agrees():
    m = make_monomial(S2, [1, 2], {1: 2, 2: 1})
    x = Element.from_monomial(S2, m)
    assert bv.bv_delta(x) == bv.bv_delta_transported(x)

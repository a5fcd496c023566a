from hypothesis import settings, strategies as st

from bvloop.superalgebra import Basis, Element, Signature, monomials

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def signatures(draw, max_n=3, stiefel=False):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, n)) if stiefel else 1
    return Signature(n, k)


def monomial_pool(sig, bound=4):
    return monomials(sig, bound)


@st.composite
def elements(draw, sig, bound=4, basis=Basis.INTERSECTION, max_terms=3, parity=None):
    pool = monomial_pool(sig, bound)
    if parity is not None:
        pool = [m for m in pool if m.parity == parity]
    picked = draw(st.lists(st.sampled_from(pool), min_size=0, max_size=max_terms, unique=True))
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(picked), max_size=len(picked)))
    return Element(sig, basis, dict(zip(picked, coeffs)))


@st.composite
def monomial_of(draw, sig, bound=4):
    return draw(st.sampled_from(monomial_pool(sig, bound)))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for number in sorted(lines):
            terminalreporter.write_line(lines[number])

"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from germlab import Poly, RingCtx

exps = lambda n, top=3: st.tuples(*[st.integers(0, top)] * n)  # noqa: E731


@st.composite
def polys(draw, ring: RingCtx, max_terms=4, top=3, origin=False):
    n = ring.nvars
    terms = draw(st.dictionaries(exps(n, top), st.integers(-4, 4).filter(bool), max_size=max_terms))
    if origin:
        terms.pop((0,) * n, None)
    return Poly(ring, terms)

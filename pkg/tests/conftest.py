from fractions import Fraction

from hypothesis import settings, strategies as st

from superwp.exactcore import Poly

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

fractions = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 12))
nonzero_fractions = fractions.filter(bool)


def sparse_dicts(nvars: int, max_exp: int = 3, max_terms: int = 6):
    keys = st.tuples(*[st.integers(0, max_exp)] * nvars)
    return st.dictionaries(keys, fractions, max_size=max_terms)


def polys(nvars: int, max_exp: int = 3, max_terms: int = 6):
    """Polynomials in ``nvars`` variables plus ``p``."""
    return sparse_dicts(nvars + 1, max_exp, max_terms).map(lambda d: Poly(nvars, d))

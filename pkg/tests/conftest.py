from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from necklace_cyclo.exactmath import Poly

# derandomized so the suite is reproducible run to run
settings.register_profile(
    "repo", derandomize=True, deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


def polys(max_deg: int = 40, max_terms: int = 8, integral: bool = False, min_terms: int = 0):
    coeff = (st.integers(-9, 9) if integral
             else st.fractions(min_value=-9, max_value=9, max_denominator=6))
    return st.dictionaries(st.integers(0, max_deg), coeff,
                           min_size=min_terms, max_size=max_terms).map(Poly)


def nonzero_polys(**kw):
    return polys(min_terms=1, **kw).filter(lambda f: not f.is_zero())


def odd_polys(max_deg: int = 31, integral: bool = True):
    coeff = st.integers(-9, 9) if integral else st.fractions(-9, 9, max_denominator=6)
    return st.dictionaries(st.integers(0, max_deg // 2).map(lambda k: 2 * k + 1), coeff,
                           max_size=6).map(Poly)


def from_sympy(expr) -> Poly:
    import sympy

    x = sympy.Symbol("x")
    p = sympy.Poly(expr, x)
    return Poly({k[0]: Fraction(int(c.p), int(c.q)) for k, c in p.terms()})


X = Poly.x()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])

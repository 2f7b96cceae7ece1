import sympy as sp
from hypothesis import HealthCheck, settings, strategies as st

from cremona_kit.algebra.poly import MultiPoly

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

XY = ("x", "y")
XYZ = ("x", "y", "z")


def to_sympy_expr(p: MultiPoly):
    """Independent conversion through the printed form."""
    names = {v: sp.Symbol(v) for v in p.variables}
    return sp.expand(sp.sympify(str(p).replace("^", "**"), locals=names))


@st.composite
def polys(draw, variables=XY, max_deg=3, homogeneous_degree=None, nonzero=False):
    n = len(variables)
    exps = []
    if homogeneous_degree is None:
        for d in range(max_deg + 1):
            exps.extend(e for e in _exponents(n, d))
    else:
        exps = list(_exponents(n, homogeneous_degree))
    coeffs = draw(st.lists(st.integers(-4, 4), min_size=len(exps), max_size=len(exps)))
    terms = {e: c for e, c in zip(exps, coeffs) if c}
    if nonzero and not terms:
        terms = {exps[0]: 1}
    return MultiPoly(variables, terms)


def _exponents(n, d):
    if n == 1:
        yield (d,)
        return
    for i in range(d, -1, -1):
        for rest in _exponents(n - 1, d - i):
            yield (i,) + rest


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])

from hypothesis import HealthCheck, settings, strategies as st

from nilhecke.poly import Polynomial
from nilhecke.rings import ZZ

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# acceptance lines collected by test_acceptance.py, echoed in the summary
ACCEPTANCE = {}


def _cap(exps, budget):
    out = []
    for e in exps:
        e = min(e, budget)
        out.append(e)
        budget -= e
    return tuple(out)


def polynomials(nvars, max_degree=4, ring=ZZ, coeffs=st.integers(-5, 5), max_terms=6):
    exps = st.lists(st.integers(0, max_degree), min_size=nvars, max_size=nvars).map(
        lambda e: _cap(e, max_degree))
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda t: Polynomial(ring, nvars, t))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])

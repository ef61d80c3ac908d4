import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from noetherops.polyring import Polynomial, VariableRing  # noqa: E402

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large, HealthCheck.large_base_example],
)
settings.load_profile("repo")

small_fractions = st.builds(
    Fraction, st.integers(min_value=-9, max_value=9), st.integers(min_value=1, max_value=5)
)
nonzero_fractions = small_fractions.filter(lambda q: q != 0)


def exponents(nvars, max_degree):
    return st.lists(st.integers(0, max_degree), min_size=nvars, max_size=nvars).filter(
        lambda e: sum(e) <= max_degree
    ).map(tuple)


def polynomials(ring: VariableRing, max_degree=3, max_terms=5):
    """Strategy of polynomials over ``QQ`` in ``ring``."""
    return st.dictionaries(exponents(ring.nvars, max_degree), small_fractions, max_size=max_terms).map(
        lambda terms: Polynomial(ring, {e: c for e, c in terms.items() if c})
    )


def random_polynomial(ring: VariableRing, rng: random.Random, max_degree=4, max_terms=6, height=9):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        e = [0] * ring.nvars
        for _ in range(rng.randint(0, max_degree)):
            e[rng.randrange(ring.nvars)] += 1
        c = Fraction(rng.randint(-height, height), rng.randint(1, 3))
        if c:
            terms[tuple(e)] = c
    return Polynomial(ring, terms)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, from the ``criterion`` user property."""
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", ()))
            if "criterion" in props and (rep.when == "call" or outcome != "passed"):
                rows.append((props["criterion"], outcome, props.get("detail", ""), rep.duration))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for k, outcome, detail, seconds in sorted(rows):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {k:2d}: {verdict}  {seconds:6.2f}s  {detail}")

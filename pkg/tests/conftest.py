import functools

from hypothesis import HealthCheck, settings

from sqrtvelu import testkit
from sqrtvelu.curve import XPoint
from sqrtvelu.field import FieldContext

settings.register_profile(
    "repo",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repo")

# (criterion, passed, detail) lines collected by test_acceptance.py
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)


@functools.lru_cache(maxsize=None)
def toy(ell, seed=0, bits=(20, 32)):
    """(F, E, x, y) with (x, y) an affine point of order ell on a random supersingular toy curve."""
    rng = testkit.rng_for("toy", ell, seed)
    p = testkit.toy_prime(ell, rng, bits)
    F = FieldContext(p)
    E = testkit.random_supersingular(F, rng, 2)
    x, y = testkit.curve_point_of_order(E.a(), ell, rng, p + 1)
    return F, E, x, y


def kernel(ell, seed=0):
    F, E, x, y = toy(ell, seed)
    return F, E, XPoint.from_x(x)

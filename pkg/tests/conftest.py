import pytest
from hypothesis import settings

from plrs import validate_spec

# Deterministic hypothesis runs so the suite is reproducible.
settings.register_profile("det", derandomize=True, max_examples=60)
settings.load_profile("det")

# The four fixture recurrences used throughout: Zeckendorf/Fibonacci, the
# size-6 length-4 example with an interior zero, the binary system
# (H_n = 2^(n-1), summand counts are shifted binomials), and a sparse
# length-3 recurrence.
FIXTURE_COEFFS = [(1, 1), (2, 2, 0, 2), (1, 2), (3, 0, 1)]


@pytest.fixture(params=FIXTURE_COEFFS, ids=lambda c: ",".join(map(str, c)))
def fixture_spec(request):
    return validate_spec(request.param)


@pytest.fixture
def fib():
    return validate_spec((1, 1))


@pytest.fixture
def h2202():
    return validate_spec((2, 2, 0, 2))

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "fast",
    max_examples=30,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("fast")


@pytest.fixture(scope="session")
def generic3():
    from bkasym.domains import DomainSpec
    from bkasym.poisson import compute_poisson_symbols

    return compute_poisson_symbols(DomainSpec.generic(3), 3, 3)


@pytest.fixture(scope="session")
def chain3(generic3):
    """Full symbolic n=3 chain: (k, s, p, g)."""
    from bkasym.bergman import bergman_green_symbol, invert_psdo, lambda_symbol

    k = generic3
    s = lambda_symbol(k, 3)
    p = invert_psdo(s, 3)
    g = bergman_green_symbol(k, p, 3)
    return k, s, p, g

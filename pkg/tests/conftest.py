import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def diag_sl2f3():
    from doublecoset.oracle.scenario import make_scenario

    return make_scenario("SL2/F3", a="full-id", c="full-id", K="diag", L="diag")


@pytest.fixture(scope="session")
def bruhat_sl2f3():
    from doublecoset.oracle.scenario import bruhat_scenario

    return bruhat_scenario("SL2/F3")


@pytest.fixture(scope="session")
def mixed_sl3f2():
    from doublecoset.oracle.scenario import make_scenario

    return make_scenario("SL3/F2", a="id:1", c="empty")

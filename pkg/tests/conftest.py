import pytest

import toricbsato.bsato as bsato


@pytest.fixture(autouse=True, scope="session")
def _groebner_self_check():
    """Every Groebner run in the suite re-verifies itself (inputs and all
    S-polynomials of the output reduce to zero)."""
    bsato.SELF_CHECK = True
    yield
    bsato.SELF_CHECK = False

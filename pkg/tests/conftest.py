import pytest

from tightpoly.toddcox import regular_rep
from tightpoly.words import (
    Presentation,
    coxeter_presentation,
    gamma_pq_presentation,
    gamma_tuple_presentation,
    lambda_k_presentation,
)


@pytest.fixture(scope="session")
def rep_gamma36():
    return regular_rep(gamma_pq_presentation(3, 6))


@pytest.fixture(scope="session")
def rep_cube():
    return regular_rep(coxeter_presentation((4, 3)))


@pytest.fixture(scope="session")
def rep_simplex():
    return regular_rep(coxeter_presentation((3, 3)))


@pytest.fixture(scope="session")
def rep_lambda1():
    return regular_rep(lambda_k_presentation(1))


@pytest.fixture(scope="session")
def rep_lambda3():
    return regular_rep(lambda_k_presentation(3))


@pytest.fixture(scope="session")
def rep_gamma364():
    return regular_rep(gamma_tuple_presentation((3, 6, 4)))


@pytest.fixture(scope="session")
def rep_degenerate_x0x2():
    """[2,2] with the extra relator x0 x2: forces x0 = x2."""
    base = coxeter_presentation((2, 2))
    return regular_rep(Presentation(3, base.relators + ((0, 2),)))

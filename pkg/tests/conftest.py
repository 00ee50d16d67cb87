import pytest

from mgenocchi.dirichlet import DirichletCharacter


@pytest.fixture
def quad3():
    """The quadratic character mod 3."""
    return DirichletCharacter.from_label(3, 1)


@pytest.fixture
def trivial1():
    return DirichletCharacter.trivial(1)

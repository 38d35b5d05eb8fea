import pytest

import symineq as sq


@pytest.fixture(scope="session")
def default_corpus():
    return sq.generate_corpus(sq.CorpusSpec())


@pytest.fixture(scope="session")
def cone512():
    """Unit cone (1 - |x - x0|)_+ on a 512^2 grid over (0, 2.2)^2."""
    return sq.cone_grid(512)


@pytest.fixture(scope="session")
def tent4096():
    return sq.tent_grid(4096)


@pytest.fixture(scope="session")
def phi_euclid_2d():
    return sq.phi_from_profile(sq.euclidean_profile(2))


def random_mass_function(rng, max_atoms=1000, max_value=50.0):
    n = int(rng.integers(1, max_atoms + 1))
    values = rng.uniform(0.0, max_value, n)
    if rng.random() < 0.3:
        values[rng.random(n) < 0.2] = 0.0  # mix in exact zeros
    masses = rng.uniform(1e-3, 5.0, n)
    return sq.MassFunction(values, masses)

import pytest

from bethe_lab import baesolver


@pytest.fixture(scope="session")
def solved():
    """Session-cached solve_sector results at default settings."""
    cache: dict[tuple[int, int], list] = {}

    def get(n: int, ell: int):
        if (n, ell) not in cache:
            cache[(n, ell)] = baesolver.solve_sector(n, ell)
        return cache[(n, ell)]

    return get


def by_class(solutions, classification):
    return [s for s in solutions if s.classification == classification]

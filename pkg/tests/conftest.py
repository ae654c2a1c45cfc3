import pytest

from calimits import CellularAutomaton


@pytest.fixture(scope="session")
def eca():
    cache = {}

    def get(number):
        if number not in cache:
            cache[number] = CellularAutomaton.eca(number)
        return cache[number]

    return get

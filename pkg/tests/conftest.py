import pytest

from uqual.space import ParameterSpace, ParameterSpec


def unit_space(k: int, names=None) -> ParameterSpace:
    names = names or [f"x{i + 1}" for i in range(k)]
    return ParameterSpace([ParameterSpec(n, 0.0, 1.0, 0.5) for n in names])


@pytest.fixture
def unit_square() -> ParameterSpace:
    return unit_space(2)

import pytest

from pnkit import PnSpace
from pnkit.cli import ScenarioFamily, generate_scenarios

CORPUS_SEED = 20260809


@pytest.fixture(scope="session")
def unit_space() -> PnSpace:
    return PnSpace(dimension=1)


@pytest.fixture(scope="session")
def corpus_maps():
    """The seeded piecewise-constant corpus shared by the acceptance
    criteria (1 to 5 pieces, values in the unit interval)."""
    family = ScenarioFamily(count=100, pieces=(1, 5), values=(0.0, 1.0), kind="constant")
    return generate_scenarios(family, CORPUS_SEED)

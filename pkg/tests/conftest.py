from __future__ import annotations

from fractions import Fraction

import pytest

from mpsynth import (
    CostModel,
    ascending_labeling,
    consecutive_labeling,
    prune,
    structure_from_uniform_tree,
    uniform_tree_from_type_vector,
)


@pytest.fixture
def cm_unit() -> CostModel:
    """m = 3, every factor 1."""
    return CostModel.from_factors(3, [1, 1], [1, 1])


@pytest.fixture
def cm_steep() -> CostModel:
    """m = 3, c = (1, 2), l = (1, 1): 3-input units twice as big."""
    return CostModel.from_factors(3, [1, 2], [1, 1])


@pytest.fixture
def cm_frac() -> CostModel:
    """m = 3 with fractional latencies."""
    return CostModel.from_factors(3, [1, 2], [1, Fraction(3, 2)])


def seven_input_structure(labeling: str):
    """The two 7-input reference structures: one replicated 2-over-3
    tree per output, leaves labeled either ascending or cyclically."""
    tree = uniform_tree_from_type_vector((1, 1), level_order=(2, 3))
    label = ascending_labeling if labeling == "ascending" else consecutive_labeling
    return structure_from_uniform_tree(tree, label(tree, 7), 7, 3)


@pytest.fixture
def shared7_ascending():
    return seven_input_structure("ascending")


@pytest.fixture
def shared7_cyclic():
    return seven_input_structure("cyclic")


@pytest.fixture
def shared6_pruned(shared7_cyclic):
    return prune(shared7_cyclic, 6).structure

from __future__ import annotations

import itertools

import pytest

from mpsynth import (
    CostModel,
    balanced_edge_split,
    complexity,
    degree_vector_of,
    feasible_input_size,
    latency,
    star_complexity,
    star_tree_from_degree_vector,
    star_tree_latency,
    structure_from_star_tree,
    validate,
)
from mpsynth.startree import relabel_leaves, star_tree_from_json_dict, star_tree_to_json_dict
from mpsynth.oracles import (
    enumerate_degree_vectors,
    enumerate_star_trees,
    oracle_star_tree_latency,
)


def all_trees_up_to(n_max: int, m: int):
    for n in range(3, n_max + 1):
        for q in enumerate_degree_vectors(n, m):
            if sum(q) == 0:
                continue
            for tree in enumerate_star_trees(q):
                yield q, tree


# ---------------------------------------------------------------------------
# degree vectors and construction


def test_unique_three_leaf_tree():
    tree = star_tree_from_degree_vector((1, 0), n=3)
    assert tree.n == 3
    assert degree_vector_of(tree) == (1, 0)
    assert len(tree.internal_nodes()) == 1


def test_degree_vector_feasibility_identity():
    for n in range(3, 10):
        for q in enumerate_degree_vectors(n, 4):
            assert feasible_input_size(q) == n


def test_construction_round_trip():
    for q in [(5, 0), (3, 1), (1, 2), (0, 0, 2), (2, 1, 0)]:
        tree = star_tree_from_degree_vector(q)
        assert degree_vector_of(tree) == q


def test_infeasible_target_n_rejected():
    # 2 + 1*1 + 2*1 = 5, not 6
    with pytest.raises(ValueError, match="infeasible"):
        star_tree_from_degree_vector((1, 1), n=6)


def test_zero_vector_rejected():
    with pytest.raises(ValueError):
        star_tree_from_degree_vector((0, 0))


def test_policies_are_deterministic_and_valid():
    for policy in ("chain", "bushy"):
        a = star_tree_from_degree_vector((3, 1), policy=policy)
        b = star_tree_from_degree_vector((3, 1), policy=policy)
        assert a == b
        assert degree_vector_of(a) == (3, 1)


# ---------------------------------------------------------------------------
# induced structures


def test_three_leaf_tree_gives_the_three_wheel(cm_unit):
    dag = structure_from_star_tree(star_tree_from_degree_vector((1, 0)))
    assert validate(dag).ok
    assert dag.degree_histogram() == {0: 3, 2: 3}
    assert complexity(dag, cm_unit) == 3  # three 2-input nodes


def test_every_induced_structure_validates():
    for q, tree in all_trees_up_to(8, 3):
        assert validate(structure_from_star_tree(tree)).ok


def test_structure_complexity_matches_closed_form(cm_steep):
    for q, tree in all_trees_up_to(9, 3):
        assert complexity(structure_from_star_tree(tree), cm_steep) == star_complexity(
            q, cm_steep
        )


def test_complexity_depends_only_on_degree_vector(cm_frac):
    for n in range(3, 10):
        for q in enumerate_degree_vectors(n, 3):
            if sum(q) == 0:
                continue
            values = {
                complexity(structure_from_star_tree(t), cm_frac)
                for t in enumerate_star_trees(q)
            }
            assert len(values) == 1


def test_star_complexity_examples(cm_unit, cm_steep):
    assert star_complexity((1, 0), cm_unit) == 3
    assert star_complexity((5, 0), cm_steep) == 15
    assert star_complexity((1, 2), cm_steep) == 3 + 16
    with pytest.raises(ValueError):
        star_complexity((0, 0), cm_unit)


# ---------------------------------------------------------------------------
# latency


def test_single_internal_node_latency(cm_unit):
    tree = star_tree_from_degree_vector((1, 0))
    assert star_tree_latency(tree, cm_unit) == 1  # one 2-input stage


def test_tree_latency_equals_structure_latency(cm_frac):
    for q, tree in all_trees_up_to(9, 3):
        assert star_tree_latency(tree, cm_frac) == latency(
            structure_from_star_tree(tree), cm_frac
        )


def test_tree_latency_matches_leaf_pair_oracle(cm_frac):
    for q, tree in all_trees_up_to(9, 3):
        assert star_tree_latency(tree, cm_frac) == oracle_star_tree_latency(tree, cm_frac)


def test_latency_is_leaf_label_invariant(cm_frac):
    tree = star_tree_from_degree_vector((3, 1))
    base = star_tree_latency(tree, cm_frac)
    for perm in itertools.islice(itertools.permutations(range(1, tree.n + 1)), 24):
        shuffled = relabel_leaves(tree, perm)
        assert star_tree_latency(shuffled, cm_frac) == base
        assert latency(structure_from_star_tree(shuffled), cm_frac) == base


# ---------------------------------------------------------------------------
# balanced split


def test_split_sums_to_latency_everywhere(cm_frac):
    models = [
        cm_frac,
        CostModel.from_factors(3, [1, 1], [0, 1]),  # zero-latency 2-input units
        CostModel.from_factors(3, [1, 1], [0, 0]),  # all free
    ]
    for cm in models:
        for q, tree in all_trees_up_to(9, 3):
            split = balanced_edge_split(tree, cm)
            assert split.heavy + split.light == star_tree_latency(tree, cm)
            assert split.heavy >= split.light


def test_split_single_center(cm_unit):
    # one internal node of degree n: the light side is a bare leaf
    cm = CostModel.from_factors(4, [1, 1, 1], [1, 2, 3])
    tree = star_tree_from_degree_vector((0, 0, 1))
    split = balanced_edge_split(tree, cm)
    assert (split.heavy, split.light) == (3, 0)  # l[4] = 3


def test_split_three_leaf(cm_unit):
    split = balanced_edge_split(star_tree_from_degree_vector((1, 0)), cm_unit)
    assert split.heavy + split.light == 1


def test_split_handles_even_halves():
    # two degree-4 nodes: both halves have equal latency, only the
    # non-strict orientation exists
    cm = CostModel.from_factors(3, [1, 1], [1, 2])
    tree = star_tree_from_degree_vector((0, 2))
    split = balanced_edge_split(tree, cm)
    assert split.heavy == split.light == 2
    assert star_tree_latency(tree, cm) == 4


# ---------------------------------------------------------------------------
# serialization


def test_star_tree_json_round_trip():
    tree = star_tree_from_degree_vector((3, 1))
    raw = star_tree_to_json_dict(tree)
    assert raw["directed"] is False
    again = star_tree_from_json_dict(raw)
    assert degree_vector_of(again) == (3, 1)
    assert again.n == tree.n

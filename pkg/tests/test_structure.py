from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mpsynth import (
    CostModel,
    Dag,
    DagBuilder,
    canonical_key,
    canonical_keys,
    complexity,
    dumps,
    latency,
    loads,
    prune,
    signature,
    structure_from_star_tree,
    star_tree_from_degree_vector,
    synthesize_min_latency,
    synthesize_star,
    to_dot,
    union,
    validate,
    wire_structure,
)
from mpsynth.oracles import oracle_structure_latency


def three_wheel() -> Dag:
    """n = 3: each output is a 2-input node over the other two inputs."""
    b = DagBuilder()
    x = {j: b.input(j) for j in (1, 2, 3)}
    b.output(1, [x[2], x[3]])
    b.output(2, [x[1], x[3]])
    b.output(3, [x[1], x[2]])
    return b.build(3, 3)


# ---------------------------------------------------------------------------
# canonical keys


def test_leaf_key_is_its_label():
    b = DagBuilder()
    b.input(3)
    dag = b.build(3, 2)
    assert canonical_key(dag, 0) == "x3"


def test_operand_order_is_irrelevant():
    b = DagBuilder()
    x1, x2 = b.input(1), b.input(2)
    # builder interns; build by hand to get two nodes with swapped operand order
    dag = Dag(
        n=2,
        m=2,
        labels=(("x", 1), ("x", 2), None, None),
        children=((), (), (0, 1), (1, 0)),
    )
    keys = canonical_keys(dag)
    assert keys[2] == keys[3] == "(x1,x2)"


def test_different_leaves_different_keys():
    dag = Dag(
        n=3,
        m=2,
        labels=(("x", 1), ("x", 2), ("x", 3), None, None),
        children=((), (), (), (0, 1), (0, 2)),
    )
    keys = canonical_keys(dag)
    assert keys[3] != keys[4]


def test_builder_interns_identical_subtrees():
    b = DagBuilder()
    x1, x2 = b.input(1), b.input(2)
    a = b.op([x1, x2])
    c = b.op([x2, x1])
    assert a == c


# ---------------------------------------------------------------------------
# union


def test_union_of_per_output_trees_equals_shared_build():
    tree = star_tree_from_degree_vector((5, 0))
    whole = structure_from_star_tree(tree)

    # rebuild each output's tree as its own single-output graph, then fold
    parts = []
    for j in range(1, tree.n + 1):
        b = DagBuilder()

        def emit(v, parent):
            if tree.labels[v] is not None:
                return b.input(tree.labels[v])
            return b.op(emit(u, v) for u in tree.adj[v] if u != parent)

        leaf = next(v for v in tree.leaves() if tree.labels[v] == j)
        (neighbor,) = tree.adj[leaf]
        b.output(j, [emit(u, neighbor) for u in tree.adj[neighbor] if u != leaf])
        parts.append(b.build(tree.n, tree.m))

    folded = parts[0]
    for part in parts[1:]:
        folded = union(folded, part)
    assert signature(folded) == signature(whole)


def test_union_idempotent(shared7_cyclic):
    assert signature(union(shared7_cyclic, shared7_cyclic)) == signature(shared7_cyclic)


def test_union_disjoint_trees_is_juxtaposition():
    b1 = DagBuilder()
    b1.output(1, [b1.input(2), b1.input(3)])
    a = b1.build(6, 2)
    b2 = DagBuilder()
    b2.output(4, [b2.input(5), b2.input(6)])
    b = b2.build(6, 2)
    merged = union(a, b)
    assert merged.node_count == a.node_count + b.node_count


def test_union_commutative_and_associative():
    tree = star_tree_from_degree_vector((3, 1))
    parts = []
    for j in (1, 2, 3):
        b = DagBuilder()

        def emit(v, parent):
            if tree.labels[v] is not None:
                return b.input(tree.labels[v])
            return b.op(emit(u, v) for u in tree.adj[v] if u != parent)

        leaf = next(v for v in tree.leaves() if tree.labels[v] == j)
        (neighbor,) = tree.adj[leaf]
        b.output(j, [emit(u, neighbor) for u in tree.adj[neighbor] if u != leaf])
        parts.append(b.build(tree.n, tree.m))
    p, q, r = parts
    assert signature(union(p, q)) == signature(union(q, p))
    assert signature(union(union(p, q), r)) == signature(union(p, union(q, r)))


def test_union_of_unlabeled_root_forests_shares_subtrees():
    # sub-DAGs need no outputs: two single-tree forests sharing (x1, x2)
    b1 = DagBuilder()
    b1.op([b1.op([b1.input(1), b1.input(2)]), b1.input(3)])
    a = b1.build(3, 2)
    b2 = DagBuilder()
    b2.op([b2.op([b2.input(1), b2.input(2)]), b2.input(4)])
    b = b2.build(4, 2)
    merged = union(a, b)
    assert merged.node_count == 7  # x1, x2, (x1,x2) appear once


def test_union_conflicting_output_rejected():
    b1 = DagBuilder()
    b1.output(1, [b1.input(2), b1.input(3)])
    a = b1.build(3, 2)
    b2 = DagBuilder()
    b2.output(1, [b2.input(2), b2.input(4)])
    b = b2.build(4, 2)
    with pytest.raises(ValueError, match="y1"):
        union(a, b)


# ---------------------------------------------------------------------------
# validation


def test_reference_structure_passes_all_checks(shared7_cyclic):
    report = validate(shared7_cyclic)
    assert report.ok
    assert [c.name for c in report.checks] == [
        "inputs",
        "outputs",
        "output_trees",
        "distinct_subtrees",
        "fan_in",
        "acyclic",
    ]


def test_input_feeding_its_own_output_breaks_tree_property(shared7_cyclic):
    dag = shared7_cyclic
    x1 = dag.nodes_with_label("x")[1]
    y1 = dag.nodes_with_label("y")[1]
    children = list(dag.children)
    children[y1] = tuple(sorted(children[y1] + (x1,)))
    bad = Dag(n=dag.n, m=dag.m, labels=dag.labels, children=tuple(children))
    report = validate(bad)
    assert not report.ok
    assert "output_trees" in report.failed()
    assert "y1" in report.check("output_trees").witness


def test_duplicate_subtree_flagged():
    dag = Dag(
        n=3,
        m=2,
        labels=(("x", 1), ("x", 2), ("x", 3), None, None, ("y", 1), ("y", 2), ("y", 3)),
        children=((), (), (), (0, 1), (0, 1), (1, 2), (0, 2), (3, 4)),
    )
    report = validate(dag)
    assert "distinct_subtrees" in report.failed()
    assert "(x1,x2)" in report.check("distinct_subtrees").witness


def test_wire_pair_is_the_only_legal_n2_structure():
    assert validate(wire_structure()).ok


def test_wire_outputs_rejected_for_larger_n():
    b = DagBuilder()
    x = {j: b.input(j) for j in (1, 2, 3)}
    b.output(1, [x[2], x[3]])
    b.output(2, [x[1], x[3]])
    dag = b.build(3, 3)
    # y3 wired straight from x1: fan-in 1 is a violation at n = 3
    labels = dag.labels + (("y", 3),)
    children = dag.children + ((x[1],),)
    report = validate(Dag(n=3, m=3, labels=labels, children=children))
    assert "fan_in" in report.failed()


def test_internal_node_shadowing_an_output_flagged():
    # node 4 computes exactly what y1 computes; relabeling could make
    # the two ancestor graphs identical, so distinctness must fail
    dag = Dag(
        n=3,
        m=3,
        labels=(("x", 1), ("x", 2), ("x", 3), ("y", 1), None, ("y", 2), ("y", 3)),
        children=((), (), (), (1, 2), (1, 2), (0, 2, 4), (0, 1, 4)),
    )
    report = validate(dag)
    assert "distinct_subtrees" in report.failed()


def test_union_fan_in_rechecked_defensively():
    bad = Dag(
        n=4,
        m=2,
        labels=(("x", 1), ("x", 2), ("x", 3), None),
        children=((), (), (), (0, 1, 2)),
    )
    with pytest.raises(ValueError, match="fan-in"):
        union(bad, bad)


def test_cycle_reported():
    dag = Dag(
        n=2,
        m=2,
        labels=(("x", 1), ("x", 2), None, None, ("y", 1), ("y", 2)),
        children=((), (), (0, 3), (1, 2), (2, 3), (0, 1)),
    )
    report = validate(dag)
    assert "acyclic" in report.failed()


# ---------------------------------------------------------------------------
# complexity and latency


def test_ascending_reference_counts(shared7_ascending, cm_steep):
    hist = shared7_ascending.degree_histogram()
    assert hist == {0: 7, 2: 7, 3: 8}
    assert shared7_ascending.node_count == 22
    assert complexity(shared7_ascending, cm_steep) == 7 * 1 + 8 * 2


def test_cyclic_reference_counts(shared7_cyclic, cm_steep):
    hist = shared7_cyclic.degree_histogram()
    assert hist == {0: 7, 2: 7, 3: 7}
    assert complexity(shared7_cyclic, cm_steep) == 7 * 1 + 7 * 2
    assert latency(shared7_cyclic, cm_steep) == 2  # one 2-input plus one 3-input stage


def test_wire_structure_costs_nothing(cm_unit):
    assert complexity(wire_structure(3), cm_unit) == 0
    assert latency(wire_structure(3), cm_unit) == 0


def test_single_node_latency(cm_unit):
    b = DagBuilder()
    b.output(3, [b.input(1), b.input(2)])
    dag = b.build(3, 3)
    assert latency(dag, cm_unit) == 1


def test_latency_matches_exhaustive_path_walk(shared7_ascending, cm_frac):
    # 22 nodes: small enough for the literal all-paths oracle
    assert latency(shared7_ascending, cm_frac) == oracle_structure_latency(
        shared7_ascending, cm_frac
    )
    assert latency(shared7_ascending, cm_frac) == 1 + Fraction(3, 2)


def test_fan_in_over_model_bound_rejected(shared7_cyclic):
    cm2 = CostModel.from_factors(2, [1], [1])
    with pytest.raises(ValueError, match="fan-in"):
        complexity(shared7_cyclic, cm2)
    with pytest.raises(ValueError, match="fan-in"):
        latency(shared7_cyclic, cm2)


def test_latency_oracle_agreement_across_structures(cm_frac):
    for n in (3, 4, 5, 6):
        dag = synthesize_star(n, cm_frac).structure
        if dag.node_count <= 30:
            assert latency(dag, cm_frac) == oracle_structure_latency(dag, cm_frac)


# ---------------------------------------------------------------------------
# prune


def test_prune_identity(shared7_cyclic):
    result = prune(shared7_cyclic, 7)
    assert result.structure is shared7_cyclic
    assert result.actions == ()


def test_prune_to_six_keeps_validity_and_latency(shared7_cyclic, cm_unit):
    result = prune(shared7_cyclic, 6)
    assert validate(result.structure).ok
    assert result.structure.n == 6
    assert latency(result.structure, cm_unit) == latency(shared7_cyclic, cm_unit)
    assert any("removed x7" in a for a in result.actions)


def test_prune_deep_never_increases_costs(shared7_cyclic, cm_frac):
    for n in (6, 5, 4, 3):
        result = prune(shared7_cyclic, n)
        assert validate(result.structure).ok
        assert latency(result.structure, cm_frac) <= latency(shared7_cyclic, cm_frac)
        assert complexity(result.structure, cm_frac) <= complexity(shared7_cyclic, cm_frac)


def test_prune_to_two_gives_wires(shared7_cyclic, cm_unit):
    result = prune(shared7_cyclic, 2)
    assert validate(result.structure).ok
    assert complexity(result.structure, cm_unit) == 0


def test_prune_relabels_degenerated_outputs(cm_unit):
    # 3x3 replicated shape at n' = 10: pruning far enough empties whole
    # root branches, driving output fan-in to 1; the label must migrate
    # onto the surviving operand
    from mpsynth import consecutive_labeling, structure_from_uniform_tree
    from mpsynth.uniform import uniform_tree_from_type_vector

    tree = uniform_tree_from_type_vector((0, 2))
    full = structure_from_uniform_tree(tree, consecutive_labeling(tree, 10), 10, 3)
    for n in range(9, 1, -1):
        result = prune(full, n)
        assert validate(result.structure).ok, (n, result.structure)
        assert latency(result.structure, cm_unit) <= latency(full, cm_unit)
    deep = prune(full, 4)
    assert any("relabeled" in a for a in deep.actions)


def test_prune_rejects_bad_targets(shared7_cyclic):
    with pytest.raises(ValueError):
        prune(shared7_cyclic, 1)
    with pytest.raises(ValueError):
        prune(shared7_cyclic, 8)


@settings(max_examples=20, deadline=None, derandomize=True)
@given(n=st.integers(min_value=3, max_value=9), target=st.integers(min_value=2, max_value=9))
def test_prune_costs_monotone_property(n, target):
    cm = CostModel.from_factors(3, [1, 2], [1, 2])
    target = min(target, n)
    dag = synthesize_min_latency(n, cm).structure
    result = prune(dag, target)
    assert validate(result.structure).ok
    assert latency(result.structure, cm) <= latency(dag, cm)
    assert complexity(result.structure, cm) <= complexity(dag, cm)


# ---------------------------------------------------------------------------
# serialization


def test_json_round_trip(shared7_cyclic, cm_frac):
    text = dumps(shared7_cyclic)
    again = loads(text)
    assert signature(again) == signature(shared7_cyclic)
    assert complexity(again, cm_frac) == complexity(shared7_cyclic, cm_frac)
    assert latency(again, cm_frac) == latency(shared7_cyclic, cm_frac)
    assert dumps(again) == text


def test_json_round_trip_three_wheel_and_wires(cm_unit):
    for dag in (three_wheel(), wire_structure()):
        assert signature(loads(dumps(dag))) == signature(dag)


def test_dot_ranks_sources_and_sinks(shared6_pruned):
    dot = to_dot(shared6_pruned)
    assert "{ rank=source; x1; x2; x3; x4; x5; x6; }" in dot
    assert "{ rank=sink; y1; y2; y3; y4; y5; y6; }" in dot


def test_dot_wire_structure():
    dot = to_dot(wire_structure())
    assert dot.count("->") == 2
    assert "{ rank=source; x1; x2; }" in dot
    assert "{ rank=sink; y1; y2; }" in dot
    assert "x1 -> y2;" in dot
    assert "x2 -> y1;" in dot


def test_import_rejects_cycle():
    raw = {
        "n": 2,
        "m": 2,
        "nodes": [{"id": 0, "label": None}, {"id": 1, "label": None}],
        "edges": [[0, 1], [1, 0]],
    }
    import json

    with pytest.raises(ValueError, match="cycle"):
        loads(json.dumps(raw))


def test_import_rejects_duplicate_output_label():
    raw = {
        "n": 3,
        "m": 2,
        "nodes": [{"id": 0, "label": "y3"}, {"id": 1, "label": "y3"}],
        "edges": [],
    }
    import json

    with pytest.raises(ValueError, match="duplicate label y3"):
        loads(json.dumps(raw))


def test_import_rejects_unknown_edge_endpoint():
    raw = {"n": 2, "m": 2, "nodes": [{"id": 0, "label": "x1"}], "edges": [[0, 9]]}
    import json

    with pytest.raises(ValueError, match=r"edges\[0\]"):
        loads(json.dumps(raw))


def test_export_is_deterministic_across_node_orderings(shared7_cyclic):
    # same structure imported twice must serialize identically
    text = dumps(shared7_cyclic)
    assert dumps(loads(text)) == text


@settings(max_examples=24, deadline=None, derandomize=True)
@given(
    n=st.integers(min_value=3, max_value=10),
    latency_first=st.booleans(),
    c3=st.integers(min_value=1, max_value=3),
)
def test_round_trip_preserves_everything_property(n, latency_first, c3):
    cm = CostModel.from_factors(3, [1, c3], [1, 2])
    dag = (
        synthesize_min_latency(n, cm).structure
        if latency_first
        else synthesize_star(n, cm).structure
    )
    again = loads(dumps(dag))
    assert signature(again) == signature(dag)
    assert complexity(again, cm) == complexity(dag, cm)
    assert latency(again, cm) == latency(dag, cm)
    assert dumps(again) == dumps(dag)

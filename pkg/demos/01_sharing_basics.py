"""From per-output trees to a shared structure.

A node with 7 incoming messages computes 7 outgoing ones; output j may
use every input except x_j.  Computing each output with its own tree
costs 14 three-input and 7 two-input units.  Uniting the trees so that
equal subtrees are built once drops that to 8 three-input units, and a
smarter (cyclic) assignment of inputs to leaves drops it to 7 with the
same two-stage latency.
"""

from mpsynth import (
    CostModel,
    ascending_labeling,
    complexity,
    consecutive_labeling,
    latency,
    structure_from_uniform_tree,
    to_dot,
    uniform_tree_from_type_vector,
    validate,
)

cm = CostModel.from_factors(3, c=[1, 2], l=[1, 1])
print("cost model: 2-input unit costs 1, 3-input unit costs 2, both take 1 tick\n")

# each output's tree: a 2-input root over two 3-input units (6 leaves)
shape = uniform_tree_from_type_vector((1, 1), level_order=(2, 3))
print(f"per-output tree shape: fan-ins {shape.levels}, {shape.leaf_count} leaves")

standalone_units = 7 * 2, 7 * 1
print(f"7 standalone trees would use {standalone_units[0]} three-input "
      f"and {standalone_units[1]} two-input units\n")

for name, labeling in (("ascending", ascending_labeling), ("cyclic", consecutive_labeling)):
    dag = structure_from_uniform_tree(shape, labeling(shape, 7), 7, 3)
    hist = dag.degree_histogram()
    print(f"{name:9s} labeling: {hist.get(3, 0)} three-input + {hist.get(2, 0)} two-input units,"
          f" complexity {complexity(dag, cm)}, latency {latency(dag, cm)},"
          f" valid: {validate(dag).ok}")

print("\nDOT of the cyclic structure:\n")
dag = structure_from_uniform_tree(shape, consecutive_labeling(shape, 7), 7, 3)
print(to_dot(dag))

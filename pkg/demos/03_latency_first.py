"""Latency-first synthesis, including sizes that need pruning.

No structure can beat the best uniform replicated tree on latency, so
the latency-first synthesizer optimizes over level fan-in sequences.
When n - 1 factors over the allowed fan-ins the answer is exact; when
it does not (say 7 inputs per output at fan-in <= 3), the synthesizer
over-provisions to the next workable size and prunes the surplus
inputs and outputs away without losing a tick.
"""

from mpsynth import (
    CostModel,
    complexity,
    latency,
    min_uniform_latency,
    prune,
    synthesize_min_latency,
    validate,
)

cm = CostModel.from_factors(3, c=[1, 2], l=[1, 1])

print("exact sizes:")
for n in (3, 5, 7, 9, 13):
    result = min_uniform_latency(n, cm)
    print(f"  n={n:3d}: latency {result.value}, level profiles {result.type_vectors}")

print("\nn=8 has no exact shape at fan-in <= 3 (7 is prime), so prune:")
result = synthesize_min_latency(8, cm)
print(f"  built at n'={result.n_prime} with profile {result.w},"
      f" pruned to n=8: latency {result.latency},"
      f" complexity {complexity(result.structure, cm)},"
      f" valid {validate(result.structure).ok}")
for action in result.actions[:6]:
    print(f"    {action}")
print(f"    ... {len(result.actions)} cleanup actions total")

print("\nshrinking a 7-input structure to 6 keeps the latency:")
seven = synthesize_min_latency(7, cm)
six = prune(seven.structure, 6)
print(f"  before: latency {latency(seven.structure, cm)};"
      f" after: latency {latency(six.structure, cm)},"
      f" valid {validate(six.structure).ok}")

"""Optimizers over star-tree-based structures.

Three exact dynamic programs, each with witness reconstruction:

* :func:`min_star_complexity` - the cheapest achievable complexity for
  input size ``n`` over all star-tree degree vectors, via a 1-D DP on
  the leaf-count identity ``2 + sum i*q_i = n`` (each degree class
  ``i`` buys ``i`` extra leaves for ``(i+2) * c[i+1]``).
* :func:`forest_latency_table` - the least achievable worst-tree
  latency over forests of ``t`` disjoint rooted trees whose combined
  fan-in census is ``u``, tabulated for all sub-censuses.
* :func:`min_star_latency` - the least tree latency among star trees
  with a given degree vector, by scanning balanced two-sided splits
  whose side latencies come from the forest table.

Every value is an exact rational; ties are broken toward the
lexicographically smallest choice so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Optional, Sequence

from .costs import CostModel
from .drt import LEAF, Rooted, rooted
from .startree import StarTree, structure_from_star_tree
from .structure import Dag

Vec = tuple[int, ...]


def _zero(m: int) -> Vec:
    return (0,) * (m - 1)


def _sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def _minus_e(u: Vec, i: int) -> Vec:
    return tuple(a - 1 if k == i else a for k, a in enumerate(u))


def vectors_below(qmax: Vec) -> Iterator[Vec]:
    """All vectors componentwise <= qmax, in lexicographic order."""
    return product(*(range(x + 1) for x in qmax))


# ---------------------------------------------------------------------------
# complexity DP


@dataclass(frozen=True)
class ComplexityTable:
    """``values[i]`` is the least structure complexity for input size
    ``i`` (``i`` in 2..n); ``choices[i]`` lists every degree class
    (1-based) achieving it.  ``ops`` counts DP inner steps."""

    n: int
    m: int
    values: tuple[Fraction, ...]
    choices: tuple[tuple[int, ...], ...]
    ops: int

    def value(self, i: int | None = None) -> Fraction:
        i = self.n if i is None else i
        return self.values[i - 2]


def min_star_complexity(n: int, cm: CostModel) -> ComplexityTable:
    """1-D DP over input sizes: size 2 costs nothing (both outputs are
    wires); adding a degree-(t+2) internal node buys ``t`` leaves for
    ``(t+2) * c[t+1]``.  Runs in O(m*n)."""
    if n < 2:
        raise ValueError(f"input size must be >= 2, got {n}")
    values: list[Fraction] = [Fraction(0)]
    choices: list[tuple[int, ...]] = [()]
    ops = 0
    for i in range(3, n + 1):
        best: Fraction | None = None
        argmin: list[int] = []
        for t in range(1, cm.m):
            if t > i - 2:
                break
            ops += 1
            cand = values[i - t - 2] + (t + 2) * cm.c[t + 1]
            if best is None or cand < best:
                best, argmin = cand, [t]
            elif cand == best:
                argmin.append(t)
        values.append(best)
        choices.append(tuple(argmin))
    return ComplexityTable(n=n, m=cm.m, values=tuple(values), choices=tuple(choices), ops=ops)


def optimal_degree_vectors(table: ComplexityTable, all_optima: bool = False) -> list[Vec]:
    """Backtrack the complexity DP into concrete degree vectors.

    With ``all_optima`` every optimal vector is returned (sorted);
    otherwise the single vector obtained by always taking the smallest
    minimizing degree class.
    """
    m = table.m
    if not all_optima:
        q = [0] * (m - 1)
        i = table.n
        while i > 2:
            t = table.choices[i - 2][0]
            q[t - 1] += 1
            i -= t
        return [tuple(q)]

    memo: dict[int, set[Vec]] = {2: {_zero(m)}}

    def expand(i: int) -> set[Vec]:
        if i not in memo:
            out: set[Vec] = set()
            for t in table.choices[i - 2]:
                for q in expand(i - t):
                    out.add(tuple(x + 1 if k == t - 1 else x for k, x in enumerate(q)))
            memo[i] = out
        return memo[i]

    return sorted(expand(table.n))


# ---------------------------------------------------------------------------
# forest latency table


@dataclass(frozen=True)
class ForestLatencyTable:
    """``value(u, t)``: least achievable maximum latency over forests of
    ``t`` disjoint rooted trees (bare leaves allowed) whose combined
    fan-in census is ``u`` (entry ``i`` counts fan-in ``i+2`` nodes,
    0-based).  Filled for every ``u <= qmax`` and ``t`` in 1..m."""

    qmax: Vec
    m: int
    values: dict[tuple[Vec, int], Fraction]
    choices: dict[tuple[Vec, int], tuple]

    def value(self, u: Vec, t: int) -> Fraction:
        return self.values[(u, t)]

    def rebuild_tree(self, u: Vec) -> Rooted:
        """A rooted tree realizing ``value(u, 1)``."""
        if sum(u) == 0:
            return LEAF
        kind, i = self.choices[(u, 1)]
        assert kind == "root"
        return rooted(self.rebuild_forest(_minus_e(u, i), i + 2))

    def rebuild_forest(self, u: Vec, t: int) -> list[Rooted]:
        """A forest of ``t`` trees realizing ``value(u, t)``."""
        if sum(u) == 0:
            return [LEAF] * t
        if t == 1:
            return [self.rebuild_tree(u)]
        kind, first = self.choices[(u, t)]
        assert kind == "split"
        return [self.rebuild_tree(first)] + self.rebuild_forest(_sub(u, first), t - 1)


def forest_latency_table(qmax: Sequence[int], cm: CostModel) -> ForestLatencyTable:
    """Fill the forest-latency DP.

    Census vectors are visited in non-decreasing total count so every
    lookup hits an already-filled entry: a single tree (t = 1) chooses
    its root fan-in ``i+2`` and recurses on the child forest; a larger
    forest (t > 1) splits off the census of its first tree.  Runtime is
    O(m * prod (q_i + 1)(q_i + 2) / 2).
    """
    qmax = tuple(qmax)
    m = cm.m
    if len(qmax) != m - 1:
        raise ValueError(f"census length {len(qmax)} != m - 1 = {m - 1}")
    values: dict[tuple[Vec, int], Fraction] = {}
    choices: dict[tuple[Vec, int], tuple] = {}
    zero = _zero(m)
    for t in range(1, m + 1):
        values[(zero, t)] = Fraction(0)
    for u in sorted(vectors_below(qmax), key=lambda v: (sum(v), v)):
        if sum(u) == 0:
            continue
        for t in range(1, m + 1):
            if t == 1:
                best: Fraction | None = None
                pick: tuple | None = None
                for i in range(m - 1):
                    if u[i] == 0:
                        continue
                    cand = values[(_minus_e(u, i), i + 2)] + cm.l[i + 2]
                    if best is None or cand < best:
                        best, pick = cand, ("root", i)
                values[(u, 1)] = best
                choices[(u, 1)] = pick
            else:
                best = None
                pick = None
                for first in vectors_below(u):
                    cand = max(values[(first, 1)], values[(_sub(u, first), t - 1)])
                    if best is None or cand < best:
                        best, pick = cand, ("split", first)
                values[(u, t)] = best
                choices[(u, t)] = pick
    return ForestLatencyTable(qmax=qmax, m=m, values=values, choices=choices)


# ---------------------------------------------------------------------------
# latency-optimal star tree for a degree vector


@dataclass(frozen=True)
class StarLatencyResult:
    value: Fraction
    split: tuple[Vec, int]  # heavy-side census and its root class (1-based)
    tree: StarTree


def _star_tree_from_halves(heavy_forest: list[Rooted], light: Rooted, m: int) -> StarTree:
    """Join a rooted forest (under a fresh root) and a rooted tree by an
    edge between their roots, then label the leaves 1..n in walk order."""
    adj: list[list[int]] = []

    def new_node() -> int:
        adj.append([])
        return len(adj) - 1

    def connect(a: int, b: int) -> None:
        adj[a].append(b)
        adj[b].append(a)

    def attach(tree: Rooted, parent: int) -> None:
        node = new_node()
        connect(node, parent)
        for child in tree:
            attach(child, node)

    heavy_root = new_node()
    for tree in heavy_forest:
        attach(tree, heavy_root)
    if light == LEAF:
        leaf = new_node()
        connect(heavy_root, leaf)
    else:
        light_root = new_node()
        connect(heavy_root, light_root)
        for child in light:
            attach(child, light_root)

    labels: list[Optional[int]] = [None] * len(adj)
    next_label = 1
    for v in range(len(adj)):
        if len(adj[v]) == 1:
            labels[v] = next_label
            next_label += 1
    return StarTree(
        n=next_label - 1,
        m=m,
        labels=tuple(labels),
        adj=tuple(tuple(sorted(nb)) for nb in adj),
    )


def min_star_latency(q: Sequence[int], cm: CostModel) -> StarLatencyResult:
    """Least tree latency among star trees with degree vector ``q``.

    Every star tree splits at some edge into a heavy side (a rooted
    tree whose root sat on that edge) and a light side, with the tree
    latency equal to the two sides' latencies summed and the split
    balanced: discounting the heavy root's own weight flips the
    comparison.  The scan enumerates the heavy side's census ``u`` and
    root class ``i``, rates both sides by the forest table, and keeps
    balanced splits only.  The balance test uses the non-strict
    ``heavy >= light``: requiring strict dominance is unsatisfiable
    whenever the optimal tree halves evenly (equal-latency sides), so
    the strict variant would wrongly report such vectors infeasible.
    """
    q = tuple(q)
    if len(q) != cm.m - 1:
        raise ValueError(f"degree vector length {len(q)} != m - 1 = {cm.m - 1}")
    if sum(q) == 0:
        raise ValueError("degree vector has no internal nodes (n = 2 has no star tree)")
    table = forest_latency_table(q, cm)
    best: Fraction | None = None
    best_split: tuple[Vec, int] | None = None
    for u in vectors_below(q):
        for i in range(cm.m - 1):
            if u[i] == 0:
                continue
            heavy_children = table.value(_minus_e(u, i), i + 2)
            light = table.value(_sub(q, u), 1)
            if not (heavy_children <= light <= heavy_children + cm.l[i + 2]):
                continue
            cand = heavy_children + cm.l[i + 2] + light
            if best is None or cand < best:
                best, best_split = cand, (u, i + 1)
    if best is None:
        raise RuntimeError(f"no balanced split found for degree vector {q}")
    u, root_class = best_split
    forest = table.rebuild_forest(_minus_e(u, root_class - 1), root_class + 1)
    light_tree = table.rebuild_tree(_sub(q, u))
    tree = _star_tree_from_halves(forest, light_tree, cm.m)
    return StarLatencyResult(value=best, split=best_split, tree=tree)


# ---------------------------------------------------------------------------
# full pipeline: complexity first, then latency


@dataclass(frozen=True)
class StarSynthesis:
    complexity: Fraction
    latency: Fraction
    q: Vec
    all_q: tuple[Vec, ...]  # every complexity-optimal degree vector
    tree: StarTree
    structure: Dag


def synthesize_star(n: int, cm: CostModel, all_optima: bool = True) -> StarSynthesis:
    """Complexity-optimal structure, then the lowest-latency one among
    those: backtrack every optimal degree vector, rate each by
    :func:`min_star_latency`, keep the best (ties to the smaller
    vector), and realize it."""
    if n < 3:
        raise ValueError(f"star synthesis needs n >= 3, got {n}")
    table = min_star_complexity(n, cm)
    candidates = optimal_degree_vectors(table, all_optima=all_optima)
    best: StarLatencyResult | None = None
    best_q: Vec | None = None
    for q in candidates:
        result = min_star_latency(q, cm)
        if best is None or result.value < best.value:
            best, best_q = result, q
    structure = structure_from_star_tree(best.tree)
    return StarSynthesis(
        complexity=table.value(),
        latency=best.value,
        q=best_q,
        all_q=tuple(candidates),
        tree=best.tree,
        structure=structure,
    )

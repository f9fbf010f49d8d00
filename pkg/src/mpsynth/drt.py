"""Unlabeled rooted multiway trees as nested tuples.

A tree is ``()`` for a bare leaf, or a tuple of child trees (sorted, so
the representation is canonical: two values are equal iff the trees are
isomorphic).  Internal nodes have fan-in ``len(node)``.

These lightweight values back the forest-latency optimizer's witness
reconstruction and the brute-force enumeration oracles.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Tuple

from .costs import CostModel

Rooted = Tuple  # () | tuple of Rooted, children sorted

LEAF: Rooted = ()


def rooted(children) -> Rooted:
    """Canonical internal node over the given child trees."""
    kids = tuple(sorted(children))
    if len(kids) < 2:
        raise ValueError("an internal node needs at least 2 children")
    return kids


def leaf_count(tree: Rooted) -> int:
    if tree == LEAF:
        return 1
    return sum(leaf_count(c) for c in tree)


def degree_vector(tree: Rooted, m: int) -> tuple[int, ...]:
    """Count internal nodes by fan-in: entry ``i`` (0-based) counts fan-in ``i+2``."""
    q = [0] * (m - 1)

    def walk(t: Rooted) -> None:
        if t == LEAF:
            return
        d = len(t)
        if d < 2 or d > m:
            raise ValueError(f"fan-in {d} outside [2, {m}]")
        q[d - 2] += 1
        for c in t:
            walk(c)

    walk(tree)
    return tuple(q)


def tree_latency(tree: Rooted, cm: CostModel) -> Fraction:
    """Longest leaf-to-root latency under the model's fan-in factors."""
    if tree == LEAF:
        return Fraction(0)
    return cm.l[len(tree)] + max(tree_latency(c, cm) for c in tree)

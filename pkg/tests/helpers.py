"""Independent oracles used by the tests.

These deliberately use different algorithms from the library: the tree edit
distance oracle is the naive memoized forest recursion, and the LCS oracle is
a full quadratic table. Random tree/sequence generators are deterministic
given their Random instance.
"""

from __future__ import annotations

import random
from functools import lru_cache

from editeval.dom import DomNode

# forests are tuples of trees; a tree is (label, children_forest)
Forest = tuple


def dom_to_tuple(node: DomNode) -> tuple:
    return (node.label, tuple(dom_to_tuple(c) for c in node.children))


def tuple_to_dom(tree: tuple) -> DomNode:
    label, children = tree
    return DomNode(label, children=[tuple_to_dom(c) for c in children])


def _forest_size(forest: Forest) -> int:
    return sum(1 + _forest_size(children) for _, children in forest)


@lru_cache(maxsize=None)
def _forest_distance(f1: Forest, f2: Forest) -> int:
    if not f1:
        return _forest_size(f2)
    if not f2:
        return _forest_size(f1)
    l1, c1 = f1[-1]
    l2, c2 = f2[-1]
    rest1, rest2 = f1[:-1], f2[:-1]
    delete = _forest_distance(rest1 + c1, f2) + 1
    insert = _forest_distance(f1, rest2 + c2) + 1
    match = (
        _forest_distance(rest1, rest2)
        + _forest_distance(c1, c2)
        + (0 if l1 == l2 else 1)
    )
    return min(delete, insert, match)


def brute_force_ted(a: tuple, b: tuple) -> int:
    """Naive memoized ordered-tree edit distance with unit costs."""
    return _forest_distance((a,), (b,))


def random_tree(rng: random.Random, max_nodes: int, labels: list[str]) -> tuple:
    """Uniform-ish random ordered tree with 1..max_nodes nodes."""
    n_nodes = rng.randint(1, max_nodes)

    def grow(budget: int) -> tuple[tuple, int]:
        label = rng.choice(labels)
        children = []
        used = 1
        while used < budget and rng.random() < 0.6:
            child, child_used = grow(budget - used)
            children.append(child)
            used += child_used
        return (label, tuple(children)), used

    tree, _ = grow(n_nodes)
    return tree


def lcs_table(a: list[str], b: list[str]) -> int:
    """Independent quadratic-DP LCS length (full table)."""
    rows = len(a) + 1
    cols = len(b) + 1
    table = [[0] * cols for _ in range(rows)]
    for i in range(1, rows):
        for j in range(1, cols):
            if a[i - 1] == b[j - 1]:
                table[i][j] = table[i - 1][j - 1] + 1
            else:
                table[i][j] = max(table[i - 1][j], table[i][j - 1])
    return table[-1][-1]

"""Ordered-tree edit distance (Zhang-Shasha) over DOM trees.

Unit costs: inserting or deleting a node costs 1, relabeling costs 1 when the
labels differ and 0 otherwise. The implementation follows the classic scheme:
postorder numbering, leftmost-leaf-descendant indices, LR-keyroots, and a
forest-distance table per keyroot pair.
"""

from __future__ import annotations

from .dom import DomNode, DomTree


def _postorder(root: DomNode) -> tuple[list[str], list[int]]:
    """Return (labels, lml) in postorder; lml[i] is the postorder index of
    the leftmost leaf of the subtree rooted at node i."""
    labels: list[str] = []
    lml: list[int] = []

    # iterative postorder to survive deep documents
    stack: list[tuple[DomNode, bool]] = [(root, False)]
    first_leaf: dict[int, int] = {}  # id(node) -> lml index
    while stack:
        node, visited = stack.pop()
        if not visited:
            stack.append((node, True))
            for child in reversed(node.children):
                stack.append((child, False))
        else:
            idx = len(labels)
            if node.children:
                first_leaf[id(node)] = first_leaf[id(node.children[0])]
            else:
                first_leaf[id(node)] = idx
            labels.append(node.label)
            lml.append(first_leaf[id(node)])
    return labels, lml


def _keyroots(lml: list[int]) -> list[int]:
    """Highest postorder index for each distinct leftmost-leaf value."""
    last: dict[int, int] = {}
    for i, leaf in enumerate(lml):
        last[leaf] = i
    return sorted(last.values())


def tree_edit_distance(a: DomTree | DomNode, b: DomTree | DomNode) -> int:
    """Minimum unit-cost insert/delete/relabel script turning ``a`` into ``b``."""
    ra = a.root if isinstance(a, DomTree) else a
    rb = b.root if isinstance(b, DomTree) else b
    la, lml_a = _postorder(ra)
    lb, lml_b = _postorder(rb)
    na, nb = len(la), len(lb)
    td = [[0] * nb for _ in range(na)]

    for i in _keyroots(lml_a):
        for j in _keyroots(lml_b):
            _forest_dist(i, j, la, lb, lml_a, lml_b, td)
    return td[na - 1][nb - 1]


def _forest_dist(
    i: int,
    j: int,
    la: list[str],
    lb: list[str],
    lml_a: list[int],
    lml_b: list[int],
    td: list[list[int]],
) -> None:
    ioff = lml_a[i] - 1
    joff = lml_b[j] - 1
    m = i - ioff + 1
    n = j - joff + 1
    fd = [[0] * n for _ in range(m)]
    for x in range(1, m):
        fd[x][0] = fd[x - 1][0] + 1
    for y in range(1, n):
        fd[0][y] = fd[0][y - 1] + 1
    for x in range(1, m):
        for y in range(1, n):
            if lml_a[i] == lml_a[x + ioff] and lml_b[j] == lml_b[y + joff]:
                rename = 0 if la[x + ioff] == lb[y + joff] else 1
                fd[x][y] = min(
                    fd[x - 1][y] + 1,
                    fd[x][y - 1] + 1,
                    fd[x - 1][y - 1] + rename,
                )
                td[x + ioff][y + joff] = fd[x][y]
            else:
                p = lml_a[x + ioff] - 1 - ioff
                q = lml_b[y + joff] - 1 - joff
                fd[x][y] = min(
                    fd[x - 1][y] + 1,
                    fd[x][y - 1] + 1,
                    fd[p][q] + td[x + ioff][y + joff],
                )

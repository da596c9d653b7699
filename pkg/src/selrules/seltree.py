"""Prefix tree that counts exactly the supports needed for rule generation.

For every target itemset Z the tree holds a counter for Z itself and for each
Z minus one item (the possible rule antecedents).  Paths follow the global
item order, so itemsets sharing a prefix share nodes.  One pass over the
database fills all counters; a node whose path is contained in a transaction
is incremented exactly once for that transaction.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernel
from .corpus import Itemset, TransactionDatabase
from .errors import DictionaryMismatchError, NotCountedError, TreeStateError


class TreeNode:
    __slots__ = ("item", "counter", "children", "required")

    def __init__(self, item: int, required: bool = False):
        self.item = item
        self.counter = 0
        # item id -> TreeNode; rendering sorts by key, lookups only need the map
        self.children: dict[int, TreeNode] = {}
        self.required = required

    def sorted_children(self) -> list["TreeNode"]:
        return [self.children[k] for k in sorted(self.children)]

    def __repr__(self) -> str:
        flag = "*" if self.required else ""
        return f"TreeNode({self.item}{flag}, counter={self.counter}, children={len(self.children)})"


def required_subsets(z: Sequence[int]) -> list[Itemset]:
    """``z`` plus every subset of ``z`` with exactly one item removed.

    The empty set is never materialised; its count is the number of
    transactions.
    """
    z = tuple(z)
    if not z:
        raise ValueError("the empty itemset is not a valid counting target")
    if len(z) == 1:
        return [z]
    return [z] + [z[:i] + z[i + 1 :] for i in range(len(z))]


class CountingTree:
    def __init__(self):
        self.root = TreeNode(-1)
        self.target_family: tuple[Itemset, ...] = ()
        self.frozen = False
        self.m = 0
        self.node_count = 0
        self.items: frozenset[int] = frozenset()

    def _insert(self, itemset: Itemset) -> None:
        node = self.root
        for item in itemset:
            child = node.children.get(item)
            if child is None:
                child = node.children[item] = TreeNode(item)
                self.node_count += 1
            node = child
        node.required = True

    def _find(self, itemset: Iterable[int]) -> TreeNode | None:
        node = self.root
        for item in itemset:
            node = node.children.get(item)
            if node is None:
                return None
        return node

    def get(self, itemset: Sequence[int]) -> int | None:
        """Counter for ``itemset`` if it is a required node, else None."""
        self._check_frozen()
        if not itemset:
            return self.m
        node = self._find(itemset)
        if node is None or not node.required:
            return None
        return node.counter

    def iter_nodes(self) -> Iterator[tuple[Itemset, TreeNode]]:
        """Depth-first (path, node) pairs in item order, root excluded."""
        stack = [((), self.root)]
        while stack:
            path, node = stack.pop()
            for child in reversed(node.sorted_children()):
                stack.append((path + (child.item,), child))
            if node is not self.root:
                yield path, node

    def required_itemsets(self) -> set[Itemset]:
        return {path for path, node in self.iter_nodes() if node.required}

    def reset(self) -> None:
        for _, node in self.iter_nodes():
            node.counter = 0
        self.frozen = False
        self.m = 0

    def _check_frozen(self) -> None:
        if not self.frozen:
            raise TreeStateError("counts are not available before the database pass")

    def render(self, labels: Sequence[str] | None = None) -> str:
        """One line per node: indented label, counter, ``*`` when required."""
        lines = []
        for path, node in self.iter_nodes():
            name = labels[node.item] if labels is not None else str(node.item)
            mark = " *" if node.required else ""
            lines.append(f"{'  ' * (len(path) - 1)}{name} {node.counter}{mark}")
        return "\n".join(lines) + ("\n" if lines else "")


def build_tree(family: Iterable[Sequence[int]], n_items: int | None = None) -> CountingTree:
    """Build the (zero-count) tree over the union of required subsets.

    ``n_items`` is the dictionary size; when given, any id outside
    ``range(n_items)`` raises :class:`DictionaryMismatchError`.
    """
    tree = CountingTree()
    seen: dict[Itemset, None] = {}
    for z in family:
        z = tuple(z)
        if any(a >= b for a, b in zip(z, z[1:])):
            raise ValueError(f"itemset {z} is not sorted in item order or has duplicates")
        if z and (z[0] < 0 or (n_items is not None and z[-1] >= n_items)):
            raise DictionaryMismatchError(f"itemset {z} references an unknown item id")
        seen.setdefault(z, None)
    if not seen:
        raise ValueError("cannot build a counting tree for an empty family")
    items = set()
    for z in seen:
        for s in required_subsets(z):
            tree._insert(s)
        items.update(z)
    tree.target_family = tuple(seen)
    tree.items = frozenset(items)
    return tree


def _count_into(root: TreeNode, t: Sequence[int], weight: int = 1) -> None:
    # Unrolled form of the recursive definition
    #   count(t, p): if t: n = child(p, t[0]); if n: n += 1; count(t[1:], n)
    #                      count(t[1:], p)
    # where the trailing call becomes a scan over the remaining items.  When
    # a node has fewer children than items remain, the children are probed
    # against the transaction instead; the set of increments is the same.
    k = len(t)
    pos = {item: j for j, item in enumerate(t)}
    stack = [(root, 0)]
    pop, push = stack.pop, stack.append
    while stack:
        node, start = pop()
        children = node.children
        if len(children) < k - start:
            for item, child in children.items():
                j = pos.get(item, -1)
                if j >= start:
                    child.counter += weight
                    if child.children and j + 1 < k:
                        push((child, j + 1))
        else:
            get = children.get
            for j in range(start, k):
                child = get(t[j])
                if child is not None:
                    child.counter += weight
                    if child.children and j + 1 < k:
                        push((child, j + 1))


def count_transaction(tree: CountingTree, t: Sequence[int]) -> None:
    """Add one sorted transaction to the counters."""
    if tree.frozen:
        raise TreeStateError("tree is frozen; reset it before counting again")
    _count_into(tree.root, t)


def _flatten(tree: CountingTree):
    """Index the nodes depth-first (root = 0) into first-child/next-sibling arrays."""
    nodes = [tree.root]
    node_item = [-1]
    first_child = [-1]
    next_sibling = [-1]
    stack = [0]
    while stack:
        idx = stack.pop()
        prev = -1
        for child in nodes[idx].sorted_children():
            cidx = len(nodes)
            nodes.append(child)
            node_item.append(child.item)
            first_child.append(-1)
            next_sibling.append(-1)
            if prev < 0:
                first_child[idx] = cidx
            else:
                next_sibling[prev] = cidx
            prev = cidx
            stack.append(cidx)
    as_array = lambda xs: np.asarray(xs, dtype=np.int64)  # noqa: E731
    return nodes, as_array(node_item), as_array(first_child), as_array(next_sibling)


def count_database(tree: CountingTree, db: TransactionDatabase, engine: str = "auto") -> CountingTree:
    """Count every transaction once, then freeze the tree.

    ``engine`` selects the compiled pass (``"numba"``), the pure Python pass
    (``"python"``) or the compiled one when numba is importable (``"auto"``).
    """
    if tree.frozen:
        raise TreeStateError("tree is frozen; reset it before counting again")
    if engine not in ("auto", "numba", "python"):
        raise ValueError(f"unknown counting engine {engine!r}")
    if engine == "numba" and not _kernel.HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    if engine == "python" or not _kernel.HAVE_NUMBA:
        _count_python(tree, db)
    else:
        _count_compiled(tree, db)
    tree.m = db.m
    tree.frozen = True
    return tree


def _count_compiled(tree: CountingTree, db: TransactionDatabase) -> None:
    indptr, indices = db.csr()
    nodes, node_item, first_child, next_sibling = _flatten(tree)
    in_tree = np.zeros(max(len(db.dictionary), max(tree.items, default=-1) + 1), dtype=np.bool_)
    in_tree[list(tree.items)] = True
    counter = np.fromiter((n.counter for n in nodes), dtype=np.int64, count=len(nodes))
    _kernel.count_csr(indptr, indices, in_tree, node_item, first_child, next_sibling, counter)
    for node, value in zip(nodes, counter.tolist()):
        node.counter = value


def _count_python(tree: CountingTree, db: TransactionDatabase) -> None:
    root, items = tree.root, tree.items
    # identical (filtered) transactions increment identical nodes, so each
    # distinct one is counted once with its multiplicity
    distinct = Counter()
    for t in db.transactions:
        # items absent from the tree can never match a node
        t = tuple(i for i in t if i in items)
        if t:
            distinct[t] += 1
    for t, weight in distinct.items():
        _count_into(root, t, weight)


def query_count(tree: CountingTree, x: Sequence[int]) -> int:
    count = tree.get(tuple(x))
    if count is None:
        raise NotCountedError(f"itemset {tuple(x)} is not counted by this tree")
    return count

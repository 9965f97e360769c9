"""Weighted rooted fiber trees.

A fiber tree records the dual graph of a completed fiber: vertices are
components, weights are self-intersection numbers, and the root is the
component meeting the section at infinity.  Trees are immutable.

The literal format is a nested list ``[w, [child, child, ...]]``; for
instance ``[-2, [[-1, []], [-1, []]]]`` is the bush with two tips.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

from .errors import InputError, NotContractible, WeightOverflow

_WMIN = -(2**63)
_WMAX = 2**63 - 1


@dataclass(frozen=True)
class VertexRecord:
    weight: int
    parent: int | None
    children: tuple[int, ...]


class FiberTree:
    """Immutable weighted rooted tree.

    Vertices are the integers ``0..n-1``.  The tree is determined by a
    weight per vertex and a parent per vertex (``None`` for the root).
    Children are kept in increasing index order.
    """

    __slots__ = ("_weights", "_parents", "_children", "_root", "_levels")

    def __init__(self, weights: Sequence[int], parents: Sequence[int | None]):
        weights = tuple(weights)
        parents = tuple(parents)
        n = len(weights)
        if n == 0:
            raise InputError("a fiber tree needs at least one vertex")
        if len(parents) != n:
            raise InputError("weights and parents differ in length")
        for w in weights:
            if isinstance(w, bool) or not isinstance(w, int):
                raise InputError(f"weight {w!r} is not an integer")
            if not _WMIN <= w <= _WMAX:
                raise WeightOverflow(f"weight {w} exceeds the signed 64-bit range")
        roots = [v for v, p in enumerate(parents) if p is None]
        if len(roots) != 1:
            raise InputError(f"expected exactly one root, found {len(roots)}")
        children: list[list[int]] = [[] for _ in range(n)]
        for v, p in enumerate(parents):
            if p is None:
                continue
            if not isinstance(p, int) or not 0 <= p < n or p == v:
                raise InputError(f"vertex {v} has invalid parent {p!r}")
            children[p].append(v)
        root = roots[0]
        levels = [-1] * n
        levels[root] = 0
        queue = [root]
        for v in queue:
            for c in children[v]:
                levels[c] = levels[v] + 1
                queue.append(c)
        if len(queue) != n:
            raise InputError("parent links contain a cycle")
        self._weights = weights
        self._parents = parents
        self._children = tuple(tuple(c) for c in children)
        self._root = root
        self._levels = tuple(levels)

    # construction

    @classmethod
    def single(cls, weight: int = 0) -> "FiberTree":
        return cls((weight,), (None,))

    @classmethod
    def from_literal(cls, literal) -> "FiberTree":
        """Build a tree from ``[w, [children...]]``; vertices get preorder indices."""
        weights: list[int] = []
        parents: list[int | None] = []

        def walk(node, parent, path):
            if isinstance(node, list) and len(node) == 1:
                node = [node[0], []]
            if not (isinstance(node, list) and len(node) == 2):
                raise InputError(f"tree node at {path} must be [weight, [children]]")
            w, kids = node
            if isinstance(w, bool) or not isinstance(w, int):
                raise InputError(f"weight at {path} must be an integer, got {w!r}")
            if not isinstance(kids, list):
                raise InputError(f"children at {path} must be a list")
            idx = len(weights)
            weights.append(w)
            parents.append(parent)
            for k, child in enumerate(kids):
                walk(child, idx, f"{path}.{k}")

        walk(literal, None, "root")
        return cls(weights, parents)

    def to_literal(self) -> list:
        def lit(v):
            return [self._weights[v], [lit(c) for c in self._children[v]]]

        return lit(self._root)

    # accessors

    def __len__(self) -> int:
        return len(self._weights)

    @property
    def root(self) -> int:
        return self._root

    @property
    def weights(self) -> tuple[int, ...]:
        return self._weights

    @property
    def parents(self) -> tuple[int | None, ...]:
        return self._parents

    @property
    def vertices(self) -> tuple[VertexRecord, ...]:
        return tuple(
            VertexRecord(w, p, c)
            for w, p, c in zip(self._weights, self._parents, self._children)
        )

    def weight(self, v: int) -> int:
        return self._weights[v]

    def parent(self, v: int) -> int | None:
        return self._parents[v]

    def children(self, v: int) -> tuple[int, ...]:
        return self._children[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        p = self._parents[v]
        return self._children[v] if p is None else (p,) + self._children[v]

    def degree(self, v: int) -> int:
        """Degree inside the fiber tree; the root's edge to the section is not counted."""
        return len(self._children[v]) + (self._parents[v] is not None)

    def level(self, v: int) -> int:
        return self._levels[v]

    @property
    def levels(self) -> tuple[int, ...]:
        return self._levels

    @property
    def height(self) -> int:
        return max(self._levels)

    def at_level(self, level: int) -> list[int]:
        return [v for v, l in enumerate(self._levels) if l == level]

    def leaves(self) -> list[int]:
        """Extremal non-root vertices."""
        return [
            v
            for v in range(len(self))
            if v != self._root and not self._children[v]
        ]

    def preorder(self) -> list[int]:
        out, stack = [], [self._root]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(reversed(self._children[v]))
        return out

    def with_weights(self, weights: Sequence[int]) -> "FiberTree":
        return FiberTree(weights, self._parents)

    def relabel(self, perm: Sequence[int]) -> "FiberTree":
        """Return the same tree with vertex ``v`` renamed ``perm[v]``."""
        n = len(self)
        weights = [0] * n
        parents: list[int | None] = [None] * n
        for v in range(n):
            weights[perm[v]] = self._weights[v]
            p = self._parents[v]
            parents[perm[v]] = None if p is None else perm[p]
        return FiberTree(weights, parents)

    def __eq__(self, other):
        if not isinstance(other, FiberTree):
            return NotImplemented
        return self._weights == other._weights and self._parents == other._parents

    def __hash__(self):
        return hash((self._weights, self._parents))

    def __repr__(self):
        return f"FiberTree({self.to_literal()!r})"


def chain(weights: Sequence[int]) -> FiberTree:
    """Chain whose first weight sits on the root."""
    return FiberTree(weights, [None] + list(range(len(weights) - 1)))


def bush(d: int, m: int) -> FiberTree:
    """The bush with ``d`` branches of length ``m``, carrying GDF weights."""
    if d < 1 or m < 1:
        raise InputError("bush needs d >= 1 and m >= 1")
    parents: list[int | None] = [None]
    for _ in range(d):
        prev = 0
        for _ in range(m):
            parents.append(prev)
            prev = len(parents) - 1
    return gdf_weights(FiberTree([0] * len(parents), parents))


# canonical forms and isomorphisms


def subtree_encodings(tree: FiberTree) -> list[bytes]:
    """Encoding of the subtree hanging at every vertex."""
    enc: list[bytes] = [b""] * len(tree)
    order = sorted(range(len(tree)), key=tree.level, reverse=True)
    for v in order:
        kids = sorted(enc[c] for c in tree.children(v))
        enc[v] = b"(" + str(tree.weight(v)).encode() + b"".join(kids) + b")"
    return enc


def canonical_form(tree: FiberTree) -> bytes:
    return subtree_encodings(tree)[tree.root]


def canonical_order(tree: FiberTree) -> list[int]:
    """Preorder visiting children by increasing encoding; relabeling-stable up to automorphism."""
    enc = subtree_encodings(tree)
    out, stack = [], [tree.root]
    while stack:
        v = stack.pop()
        out.append(v)
        stack.extend(sorted(tree.children(v), key=lambda c: (enc[c], c), reverse=True))
    return out


def canonical_tree(tree: FiberTree) -> FiberTree:
    """Relabel so that isomorphic trees become equal."""
    order = canonical_order(tree)
    perm = [0] * len(tree)
    for i, v in enumerate(order):
        perm[v] = i
    return tree.relabel(perm)


def isomorphisms(t1: FiberTree, t2: FiberTree) -> Iterator[tuple[int, ...]]:
    """Yield every root- and weight-preserving isomorphism as a tuple ``phi[v1] = v2``."""
    e1, e2 = subtree_encodings(t1), subtree_encodings(t2)
    if e1[t1.root] != e2[t2.root]:
        return

    def match(pairs, i):
        if i == len(pairs):
            yield []
            return
        x, y = pairs[i]
        for sub in below(x, y):
            for rest in match(pairs, i + 1):
                yield sub + rest

    def below(x, y):
        groups1: dict[bytes, list[int]] = {}
        groups2: dict[bytes, list[int]] = {}
        for c in t1.children(x):
            groups1.setdefault(e1[c], []).append(c)
        for c in t2.children(y):
            groups2.setdefault(e2[c], []).append(c)
        keys = sorted(groups1)
        choices = [itertools.permutations(groups2[k]) for k in keys]
        for perms in itertools.product(*choices):
            pairs = []
            for k, perm in zip(keys, perms):
                pairs.extend(zip(groups1[k], perm))
            for rest in match(pairs, 0):
                yield [(x, y)] + rest

    for pairs in below(t1.root, t2.root):
        phi = [0] * len(t1)
        for a, b in pairs:
            phi[a] = b
        yield tuple(phi)


def find_isomorphism(t1: FiberTree, t2: FiberTree) -> tuple[int, ...] | None:
    return next(isomorphisms(t1, t2), None)


def is_isomorphism(t1: FiberTree, t2: FiberTree, phi: Sequence[int]) -> bool:
    """Check that ``phi`` is a root- and weight-preserving tree isomorphism."""
    n = len(t1)
    if len(t2) != n or len(phi) != n or sorted(phi) != list(range(n)):
        return False
    if phi[t1.root] != t2.root:
        return False
    for v in range(n):
        if t1.weight(v) != t2.weight(phi[v]):
            return False
        p = t1.parent(v)
        if p is not None and t2.parent(phi[v]) != phi[p]:
            return False
    return True


# contraction


class Contraction(NamedTuple):
    order: tuple[int, ...]
    multiplicities: tuple[int, ...]


class ContractionState:
    """Mutable working copy of a tree used while blowing down (-1)-vertices."""

    def __init__(self, tree: FiberTree):
        self.weight = dict(enumerate(tree.weights))
        self.adj: dict[int, set[int]] = {v: set(tree.neighbors(v)) for v in range(len(tree))}
        self.root = tree.root
        self.steps: list[tuple[int, tuple[int, ...]]] = []

    def eligible(self) -> list[int]:
        return [
            v
            for v in self.adj
            if v != self.root and self.weight[v] == -1 and len(self.adj[v]) <= 2
        ]

    def contract(self, v: int) -> tuple[int, ...]:
        nbrs = tuple(sorted(self.adj.pop(v)))
        del self.weight[v]
        for u in nbrs:
            self.adj[u].discard(v)
            w = self.weight[u] + 1
            if w > _WMAX:
                raise WeightOverflow("weight overflow during contraction")
            self.weight[u] = w
        if len(nbrs) == 2:
            a, b = nbrs
            self.adj[a].add(b)
            self.adj[b].add(a)
        self.steps.append((v, nbrs))
        return nbrs

    def levels(self) -> dict[int, int]:
        lev = {self.root: 0}
        queue = [self.root]
        for v in queue:
            for u in self.adj[v]:
                if u not in lev:
                    lev[u] = lev[v] + 1
                    queue.append(u)
        return lev

    def encodings(self) -> dict[int, bytes]:
        lev = self.levels()
        enc: dict[int, bytes] = {}
        for v in sorted(lev, key=lev.get, reverse=True):
            kids = sorted(enc[u] for u in self.adj[v] if lev[u] == lev[v] + 1)
            enc[v] = b"(" + str(self.weight[v]).encode() + b"".join(kids) + b")"
        return enc

    def multiplicities(self, n: int) -> tuple[int, ...]:
        """Replay the recorded blowdowns backwards as blowups."""
        mult = [0] * n
        for v in self.adj:
            mult[v] = 1
        for v, nbrs in reversed(self.steps):
            mult[v] = sum(mult[u] for u in nbrs)
        return tuple(mult)


def validate_contractible(tree: FiberTree) -> Contraction:
    """Blow the tree down to its root and compute multiplicities.

    At every stage the eligible (-1)-vertex with the smallest subtree
    encoding is contracted, ties broken by index.  Raises
    :class:`NotContractible` when the process stalls or the root ends
    with a nonzero weight.
    """
    state = ContractionState(tree)
    while len(state.adj) > 1:
        cand = state.eligible()
        if not cand:
            raise NotContractible(
                f"no contractible (-1)-vertex among {len(state.adj)} remaining vertices"
            )
        enc = state.encodings()
        state.contract(min(cand, key=lambda v: (enc[v], v)))
    if state.weight[state.root] != 0:
        raise NotContractible(
            f"root ends with weight {state.weight[state.root]} instead of 0"
        )
    return Contraction(tuple(v for v, _ in state.steps), state.multiplicities(len(tree)))


def is_contractible(tree: FiberTree) -> bool:
    try:
        validate_contractible(tree)
    except NotContractible:
        return False
    return True


# structure


def type_sequence(tree: FiberTree) -> list[int]:
    """Number of leaves on each level ``1..height``."""
    counts = [0] * tree.height
    for v in tree.leaves():
        counts[tree.level(v) - 1] += 1
    return counts


def is_chain(tree: FiberTree) -> bool:
    return all(len(tree.children(v)) <= 1 for v in range(len(tree)))


def is_bush(tree: FiberTree) -> bool:
    return all(
        len(tree.children(v)) <= 1 for v in range(len(tree)) if v != tree.root
    )


def branching_level(tree: FiberTree) -> int | None:
    """Smallest level of a vertex with at least two children."""
    levels = [tree.level(v) for v in range(len(tree)) if len(tree.children(v)) >= 2]
    return min(levels) if levels else None


def _shape_parents(shape) -> list[int | None]:
    if isinstance(shape, FiberTree):
        return list(shape.parents)
    parents: list[int | None] = []

    def walk(kids, parent):
        if not isinstance(kids, list):
            raise InputError("a shape is a nested list of child lists")
        idx = len(parents)
        parents.append(parent)
        for k in kids:
            walk(k, idx)

    walk(shape, None)
    return parents


def gdf_weights(shape) -> FiberTree:
    """Weight every vertex by minus its degree in the tree.

    ``shape`` is a :class:`FiberTree` (weights ignored) or a nested list of
    child lists such as ``[[], []]``.
    """
    parents = _shape_parents(shape)
    deg = [0] * len(parents)
    for v, p in enumerate(parents):
        if p is not None:
            deg[v] += 1
            deg[p] += 1
    return FiberTree([-k for k in deg], parents)

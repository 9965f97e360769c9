"""Blowup sequences, pseudominimal trees and extended graphs.

A blowup sequence starts from the one-vertex tree ``[[0]]``.  An outer
blowup at ``v`` hangs a new (-1)-tip below ``v``; an inner blowup on the
edge ``(v, u)`` subdivides that edge with a new (-1)-vertex.  Vertices
created by a replay are numbered in order of creation, the root being 0.
"""

from __future__ import annotations

import copy
from itertools import product
from dataclasses import dataclass, field
from typing import Iterable

from .errors import InputError, InvalidStep, NotPseudominimalizable
from .trees import (
    ContractionState,
    FiberTree,
    canonical_form,
    canonical_order,
    subtree_encodings,
    validate_contractible,
)


@dataclass(frozen=True)
class BlowupStep:
    """Blowup of a point on component ``target``.

    ``neighbor`` is ``None`` for an outer blowup and the other component
    through the node for an inner one.
    """

    target: int
    neighbor: int | None = None

    @classmethod
    def outer(cls, target: int) -> "BlowupStep":
        return cls(target)

    @classmethod
    def inner(cls, target: int, neighbor: int) -> "BlowupStep":
        return cls(target, neighbor)

    @property
    def is_outer(self) -> bool:
        return self.neighbor is None

    def to_json(self) -> dict:
        if self.neighbor is None:
            return {"kind": "outer", "target": self.target}
        return {"kind": "inner", "target": self.target, "neighbor": self.neighbor}

    @classmethod
    def from_json(cls, obj) -> "BlowupStep":
        try:
            kind = obj["kind"]
            if kind == "outer":
                return cls(int(obj["target"]))
            if kind == "inner":
                return cls(int(obj["target"]), int(obj["neighbor"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed blowup step {obj!r}") from exc
        raise InputError(f"unknown blowup kind {kind!r}")


@dataclass(frozen=True)
class BlowupSequence:
    batches: tuple[tuple[BlowupStep, ...], ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "batches", tuple(tuple(b) for b in self.batches))

    @classmethod
    def sequential(cls, steps: Iterable[BlowupStep]) -> "BlowupSequence":
        """One step per batch."""
        return cls(tuple((s,) for s in steps))

    @property
    def steps(self) -> list[BlowupStep]:
        return [s for batch in self.batches for s in batch]

    def __len__(self) -> int:
        return sum(len(b) for b in self.batches)

    def to_json(self) -> list:
        return [[s.to_json() for s in batch] for batch in self.batches]

    @classmethod
    def from_json(cls, obj) -> "BlowupSequence":
        if not isinstance(obj, list) or not all(isinstance(b, list) for b in obj):
            raise InputError("a blowup sequence is a list of batches")
        return cls(tuple(tuple(BlowupStep.from_json(s) for s in b) for b in obj))


class _Replay:
    def __init__(self):
        self.weights = [0]
        self.parents: list[int | None] = [None]
        self.mult = [1]

    def level(self, v):
        k = 0
        while self.parents[v] is not None:
            v = self.parents[v]
            k += 1
        return k

    def apply(self, step: BlowupStep) -> int:
        n = len(self.weights)
        v, u = step.target, step.neighbor
        if not 0 <= v < n:
            raise InvalidStep(f"target {v} does not exist")
        new = n
        if u is None:
            self.weights[v] -= 1
            self.weights.append(-1)
            self.parents.append(v)
            self.mult.append(self.mult[v])
            return new
        if not 0 <= u < n:
            raise InvalidStep(f"neighbor {u} does not exist")
        if self.parents[u] == v:
            top, bottom = v, u
        elif self.parents[v] == u:
            top, bottom = u, v
        else:
            raise InvalidStep(f"vertices {v} and {u} are not adjacent")
        self.weights[v] -= 1
        self.weights[u] -= 1
        self.weights.append(-1)
        self.parents.append(top)
        self.parents[bottom] = new
        self.mult.append(self.mult[v] + self.mult[u])
        return new

    def tree(self) -> FiberTree:
        return FiberTree(self.weights, self.parents)


def replay(seq: BlowupSequence) -> FiberTree:
    r = _Replay()
    for step in seq.steps:
        r.apply(step)
    return r.tree()


def replay_multiplicities(seq: BlowupSequence) -> tuple[int, ...]:
    """Forward multiplicity bookkeeping of a replay, indexed like :func:`replay`."""
    r = _Replay()
    for step in seq.steps:
        r.apply(step)
    return tuple(r.mult)


def is_gdf(seq: BlowupSequence) -> bool:
    return all(s.is_outer for s in seq.steps)


def is_well_ordered(seq: BlowupSequence) -> bool:
    """True when every batch blows up points on the current top level only."""
    r = _Replay()
    for batch in seq.batches:
        levels = [r.level(v) for v in range(len(r.weights))]
        top = max(levels)
        for step in batch:
            if not 0 <= step.target < len(levels) or levels[step.target] != top:
                return False
        for step in batch:
            r.apply(step)
    return True


def _clone(state: ContractionState) -> ContractionState:
    other = copy.copy(state)
    other.weight = dict(state.weight)
    other.adj = {v: set(n) for v, n in state.adj.items()}
    other.steps = list(state.steps)
    return other


def _stages(state: ContractionState, failed: set) -> list | None:
    """Blow-down stages whose reversals form a well-ordered sequence.

    The last batch of a well-ordered sequence accounts for every vertex on
    the top level ``T``: each one is either a new outer (-1)-leaf or the
    target of an inner blowup whose new vertex is its (-1)-parent.  The
    choices are explored depth first.
    """
    if len(state.adj) == 1:
        return [] if state.weight[state.root] == 0 else None
    enc = state.encodings()
    key = enc[state.root]
    if key in failed:
        return None
    lev = state.levels()
    top = max(lev.values())
    options = []
    for x in sorted((v for v in lev if lev[v] == top), key=lambda v: (enc[v], v)):
        (p,) = [u for u in state.adj[x] if lev[u] == top - 1]
        opts = []
        if state.weight[x] == -1 and len(state.adj[x]) == 1:
            opts.append((x, p, None))
        if p != state.root and state.weight[p] == -1 and len(state.adj[p]) == 2:
            (g,) = [u for u in state.adj[p] if u != x]
            opts.append((p, x, g))
        if not opts:
            failed.add(key)
            return None
        options.append(opts)
    for choice in product(*options):
        nxt = _clone(state)
        for v, _, _ in choice:
            nxt.contract(v)
        rest = _stages(nxt, failed)
        if rest is not None:
            return [list(choice)] + rest
    failed.add(key)
    return None


def derive_sequence(tree: FiberTree) -> BlowupSequence:
    """A blowup sequence whose replay is isomorphic to ``tree``.

    The sequence is well-ordered whenever such a sequence exists; within a
    batch the steps are ordered by the encoding of their targets.  Some
    trees with inner blowups admit none (the chain ``[-3, -1, -2, -2]``
    forces a blowup below the top level), and for those the plain
    reversed contraction is returned one step per batch.
    """
    validate_contractible(tree)
    found = _stages(ContractionState(tree), set())
    if found is None:
        return _sequential(tree)
    index = {tree.root: 0}
    r = _Replay()
    batches = []
    for stage in reversed(found):
        enc = subtree_encodings(r.tree())
        stage = sorted(stage, key=lambda s: (enc[index[s[1]]], index[s[1]]))
        batch = []
        for v, target, neighbor in stage:
            step = BlowupStep(index[target], None if neighbor is None else index[neighbor])
            index[v] = r.apply(step)
            batch.append(step)
        batches.append(tuple(batch))
    return BlowupSequence(tuple(batches))


def _sequential(tree: FiberTree) -> BlowupSequence:
    state = ContractionState(tree)
    order = validate_contractible(tree).order
    for v in order:
        state.contract(v)
    index = {tree.root: 0}
    steps = []
    for v, nbrs in reversed(state.steps):
        if len(nbrs) == 1:
            steps.append(BlowupStep(index[nbrs[0]]))
        else:
            steps.append(BlowupStep(index[nbrs[0]], index[nbrs[1]]))
        index[v] = len(index)
    return BlowupSequence.sequential(steps)


def pseudominimal_map(tree: FiberTree) -> tuple[FiberTree, dict[int, int]]:
    """Pseudominimalize and report where the surviving vertices went."""
    validate_contractible(tree)
    state = ContractionState(tree)
    while True:
        cand = []
        for v, nbrs in state.adj.items():
            if state.weight[v] != -1:
                continue
            if v == state.root:
                if len(nbrs) == 1:
                    cand.append(v)
            elif len(nbrs) == 2:
                cand.append(v)
        if not cand:
            break
        enc = state.encodings()
        v = min(cand, key=lambda x: (enc[x], x))
        if v == state.root:
            (child,) = state.adj[v]
            state.root = child
        state.contract(v)
    root = state.root
    if state.weight[root] == -1 and len(state.adj[root]) >= 2:
        raise NotPseudominimalizable(
            f"the root has weight -1 and {len(state.adj[root])} children"
        )
    kept = sorted(state.adj)
    new = {v: i for i, v in enumerate(kept)}
    parent: dict[int, int | None] = {root: None}
    queue = [root]
    for v in queue:
        for u in sorted(state.adj[v]):
            if u not in parent:
                parent[u] = v
                queue.append(u)
    out = FiberTree(
        [state.weight[v] for v in kept],
        [None if parent[v] is None else new[parent[v]] for v in kept],
    )
    return out, new


def pseudominimalize(tree: FiberTree) -> FiberTree:
    """Contract every non-leaf (-1)-vertex of degree at most 2, the root included."""
    return pseudominimal_map(tree)[0]


def is_pseudominimal(tree: FiberTree) -> bool:
    for v in range(len(tree)):
        if tree.weight(v) != -1:
            continue
        if v == tree.root and len(tree.children(v)) == 1:
            return False
        if v != tree.root and tree.degree(v) == 2:
            return False
    return True


@dataclass(frozen=True)
class ExtendedGraph:
    """Section ``S``, ``infinity`` fibers at infinity and the labeled fiber trees."""

    infinity: int
    fibers: tuple[tuple[str, FiberTree], ...]

    @property
    def vertex_count(self) -> int:
        return 1 + self.infinity + sum(len(t) for _, t in self.fibers)

    def to_dot(self) -> str:
        lines = ["graph extended {", '  S [label="S (w=0, mult=1)", shape=doublecircle];']
        edges = []
        for k in range(1, self.infinity + 1):
            name = f"F_inf{k}"
            lines.append(f'  "{name}" [label="{name} (w=0, mult=1)"];')
            edges.append(f'  S -- "{name}";')
        ordered = sorted(self.fibers, key=lambda lt: (canonical_form(lt[1]), lt[0]))
        for label, tree in ordered:
            mult = validate_contractible(tree).multiplicities
            order = canonical_order(tree)
            name = {v: f"{label}.{i}" for i, v in enumerate(order)}
            for v in order:
                lines.append(
                    f'  "{name[v]}" [label="{name[v]} (w={tree.weight(v)}, mult={mult[v]})"];'
                )
            edges.append(f'  S -- "{name[tree.root]}";')
            for v in order:
                for c in sorted(tree.children(v), key=order.index):
                    edges.append(f'  "{name[v]}" -- "{name[c]}";')
        lines.extend(edges)
        lines.append("}")
        return "\n".join(lines) + "\n"


def extended_graph(divisor) -> ExtendedGraph:
    return ExtendedGraph(
        divisor.base.infinity,
        tuple((p, divisor.fibers[p]) for p in divisor.base.points),
    )

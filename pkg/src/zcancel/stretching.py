"""Stretchings of graph divisors.

Stretching a fiber tree by ``a`` at level ``m >= 0`` inserts the chain
``[[-2, ..., -2, -1 - s]]`` of length ``a`` above every vertex ``v`` on
level ``m``, where ``s`` is the number of children of ``v``; those
children move to the far end of the chain.  At level ``-1`` the chain
``[[-1, -2, ..., -2]]`` is inserted between the section and the root and
its (-1)-end becomes the new root.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .divisors import BaseCurve, GraphDivisor
from .errors import InputError, LevelOutOfRange
from .trees import FiberTree

TOP = "top"


@dataclass(frozen=True)
class StretchSpec:
    """Amounts ``a_i`` and levels ``m_i`` per point.

    A level is an integer ``>= -1`` or ``"top"`` (the height of the tree).
    Points without a level default to ``"top"``.  ``principal`` records
    the caller's claim that the divisor of amounts is principal; it is
    not checked.
    """

    coefficients: Mapping[str, int]
    levels: Mapping[str, int | str] = field(default_factory=dict)
    principal: bool = False

    def __post_init__(self):
        coeffs = dict(self.coefficients)
        levels = dict(self.levels)
        for p, a in coeffs.items():
            if isinstance(a, bool) or not isinstance(a, int) or a < 0:
                raise InputError(f"amount at {p} must be a non-negative integer")
        for p, m in levels.items():
            if m != TOP and (isinstance(m, bool) or not isinstance(m, int)):
                raise InputError(f"level at {p} must be an integer or 'top'")
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "levels", levels)

    @classmethod
    def uniform(cls, points, a: int, level: int | str = TOP, principal=False):
        return cls({p: a for p in points}, {p: level for p in points}, principal)

    def level_for(self, p: str, tree: FiberTree) -> int:
        m = self.levels.get(p, TOP)
        if m == TOP:
            return tree.height
        if not -1 <= m <= tree.height:
            raise LevelOutOfRange(
                f"level {m} at {p} is outside [-1, {tree.height}]"
            )
        return m

    def to_json(self) -> dict:
        return {
            "coefficients": dict(sorted(self.coefficients.items())),
            "levels": {p: self.levels.get(p, TOP) for p in sorted(self.coefficients)},
            "principal": self.principal,
        }

    @classmethod
    def parse(cls, text: str, principal: bool = False) -> "StretchSpec":
        """Parse ``"b1:level=top,a=3;b2:level=-1,a=2"``."""
        coeffs: dict[str, int] = {}
        levels: dict[str, int | str] = {}
        col = 1
        for item in text.split(";"):
            start = col
            col += len(item) + 1
            if not item.strip():
                continue
            label, sep, rest = item.partition(":")
            label = label.strip()
            if not sep or not label:
                raise InputError(f"expected 'point:key=value,...' in {item!r}", 1, start)
            a, level = None, TOP
            offset = start + len(item) - len(rest)
            for kv in rest.split(","):
                key, eq, value = kv.partition("=")
                key, value = key.strip(), value.strip()
                if not eq:
                    raise InputError(f"expected key=value, got {kv!r}", 1, offset)
                if key == "a":
                    try:
                        a = int(value)
                    except ValueError:
                        raise InputError(f"amount {value!r} is not an integer", 1, offset) from None
                elif key == "level":
                    if value == TOP:
                        level = TOP
                    else:
                        try:
                            level = int(value)
                        except ValueError:
                            raise InputError(
                                f"level {value!r} is neither an integer nor 'top'", 1, offset
                            ) from None
                else:
                    raise InputError(f"unknown key {key!r}", 1, offset)
                offset += len(kv) + 1
            if a is None:
                raise InputError(f"missing amount 'a' for {label}", 1, start)
            if label in coeffs:
                raise InputError(f"point {label} given twice", 1, start)
            coeffs[label] = a
            levels[label] = level
        try:
            return cls(coeffs, levels, principal)
        except InputError as exc:
            raise InputError(exc.message, 1, 1) from None


def stretch_tree(tree: FiberTree, a: int, m: int) -> tuple[FiberTree, dict[int, list[int]]]:
    """Stretch one tree; old vertices keep their indices.

    Returns the new tree and, for every insertion vertex, the inserted
    chain listed from the end nearest the old root side.
    """
    if a == 0:
        return tree, {}
    if not -1 <= m <= tree.height:
        raise LevelOutOfRange(f"level {m} is outside [-1, {tree.height}]")
    weights = list(tree.weights)
    parents = list(tree.parents)
    chains: dict[int, list[int]] = {}
    if m == -1:
        r = tree.root
        ids = list(range(len(weights), len(weights) + a))
        weights[r] -= 1
        weights.extend([-1] + [-2] * (a - 1))
        parents.extend([None] + ids[:-1])
        parents[r] = ids[-1]
        chains[r] = ids
        return FiberTree(weights, parents), chains
    for v in tree.at_level(m):
        kids = tree.children(v)
        s = len(kids)
        ids = list(range(len(weights), len(weights) + a))
        weights[v] += s - 1
        weights.extend([-2] * (a - 1) + [-1 - s])
        parents.extend([v] + ids[:-1])
        for c in kids:
            parents[c] = ids[-1]
        chains[v] = ids
    return FiberTree(weights, parents), chains


def _extended(d: GraphDivisor, spec: StretchSpec) -> GraphDivisor:
    """Add trivial fibers over the stretched points that the divisor lacks."""
    extra = [p for p in sorted(spec.coefficients) if p not in d.points and spec.coefficients[p] > 0]
    if not extra:
        return d
    base = BaseCurve(
        d.points + tuple(extra), d.base.infinity, d.base.mu, d.base.perm + tuple(extra)
    )
    fibers = dict(d.fibers)
    for p in extra:
        fibers[p] = FiberTree.single()
    eq = None
    if d.equivariance is not None:
        eq = dict(d.equivariance)
        for p in extra:
            eq[p] = (0,)
    return GraphDivisor(base, fibers, eq)


def stretch(d: GraphDivisor, spec: StretchSpec) -> GraphDivisor:
    """Apply the stretching; equivariance maps are carried along the new chains."""
    d = _extended(d, spec)
    act = d.base.action
    plan = {}
    for p in d.points:
        a = spec.coefficients.get(p, 0)
        if a:
            plan[p] = (a, spec.level_for(p, d.tree(p)))
    for p in d.points:
        q = act[p]
        if q != p and plan.get(p, (0, None)) != plan.get(q, (0, None)):
            raise InputError(f"the stretch differs at {p} and at its image {q}")
    fibers, chains = {}, {}
    for p in d.points:
        a, m = plan.get(p, (0, 0))
        fibers[p], chains[p] = stretch_tree(d.tree(p), a, m)
    eq = None
    if d.equivariance is not None:
        eq = {}
        for p, phi in d.equivariance.items():
            q = act[p]
            psi = list(phi) + [0] * (len(fibers[p]) - len(phi))
            for v, ids in chains[p].items():
                for x, y in zip(ids, chains[q][phi[v]]):
                    psi[x] = y
            eq[p] = tuple(psi)
    return GraphDivisor(d.base, fibers, eq)


def stretch_delta_v(d: GraphDivisor, spec: StretchSpec) -> int:
    """Number of vertices the stretching adds, trivial fibers over new points included."""
    total = 0
    for p, a in spec.coefficients.items():
        if a == 0:
            continue
        if p not in d.points:
            total += 1
        tree = d.tree(p)
        m = spec.level_for(p, tree)
        sites = 1 if m == -1 else len(tree.at_level(m))
        total += a * sites
    return total

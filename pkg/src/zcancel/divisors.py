"""Graph divisors over a marked base curve and their isomorphisms.

A graph divisor assigns a contractible fiber tree to each marked point of
the base.  A cyclic group of order ``mu`` may act on the base by
permuting the points; the action on the trees is given by one tree
isomorphism ``Gamma_p -> Gamma_{g(p)}`` per point.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import InputError, NotContractible
from .trees import (
    FiberTree,
    canonical_form,
    find_isomorphism,
    is_isomorphism,
    isomorphisms,
    validate_contractible,
)

NODE_LIMIT = 10**6


def compose(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """The vertex map ``a o b``."""
    return tuple(a[x] for x in b)


def invert(a: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def identity(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def map_order(a: Sequence[int]) -> int:
    """Order of a permutation of ``range(len(a))``."""
    seen = [False] * len(a)
    order = 1
    for i in range(len(a)):
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = a[j]
            length += 1
        if length:
            order = math.lcm(order, length)
    return order


@dataclass(frozen=True)
class BaseCurve:
    """Marked base curve with ``infinity`` punctures and a cyclic action of order ``mu``.

    ``perm`` lists the image of each point under the generator, in the
    order of ``points``; it defaults to the identity.
    """

    points: tuple[str, ...]
    infinity: int = 1
    mu: int = 1
    perm: tuple[str, ...] | None = None

    def __post_init__(self):
        points = tuple(self.points)
        object.__setattr__(self, "points", points)
        if len(set(points)) != len(points):
            raise InputError("point labels must be distinct")
        if not all(isinstance(p, str) and p for p in points):
            raise InputError("point labels must be nonempty strings")
        if self.infinity < 1:
            raise InputError("a base curve needs at least one point at infinity")
        if self.mu < 1:
            raise InputError("mu must be a positive integer")
        perm = points if self.perm is None else tuple(self.perm)
        if sorted(perm) != sorted(points):
            raise InputError("perm must be a permutation of the point labels")
        object.__setattr__(self, "perm", perm)

    def image(self, p: str) -> str:
        return self.perm[self.points.index(p)]

    @property
    def action(self) -> dict[str, str]:
        return dict(zip(self.points, self.perm))

    def orbits(self) -> list[list[str]]:
        act = self.action
        seen: set[str] = set()
        out = []
        for p in self.points:
            if p in seen:
                continue
            orbit = [p]
            seen.add(p)
            q = act[p]
            while q != p:
                orbit.append(q)
                seen.add(q)
                q = act[q]
            out.append(orbit)
        return out

    def perm_order(self) -> int:
        order = 1
        for orbit in self.orbits():
            order = math.lcm(order, len(orbit))
        return order

    def to_json(self) -> dict:
        return {
            "points": list(self.points),
            "infinity": self.infinity,
            "mu": self.mu,
            "perm": list(self.perm),
        }


@dataclass(frozen=True)
class Issue:
    point: str | None
    kind: str
    message: str

    def __str__(self):
        where = f"{self.point}: " if self.point is not None else ""
        return f"{where}{self.kind}: {self.message}"


@dataclass(frozen=True, eq=False)
class GraphDivisor:
    base: BaseCurve
    fibers: Mapping[str, FiberTree]
    equivariance: Mapping[str, tuple[int, ...]] | None = field(default=None)

    def __post_init__(self):
        fibers = dict(self.fibers)
        for p in fibers:
            if p not in self.base.points:
                raise InputError(f"fiber given over unknown point {p!r}")
        object.__setattr__(self, "fibers", fibers)
        if self.equivariance is not None:
            eq = {p: tuple(m) for p, m in self.equivariance.items()}
            for p in eq:
                if p not in self.base.points:
                    raise InputError(f"equivariance given over unknown point {p!r}")
            object.__setattr__(self, "equivariance", eq)

    @classmethod
    def over_line(cls, fibers: Mapping[str, FiberTree], mu: int = 1) -> "GraphDivisor":
        """Divisor over the affine line (one point at infinity) with trivial action."""
        return cls(BaseCurve(tuple(fibers), 1, mu), fibers)

    @property
    def points(self) -> tuple[str, ...]:
        return self.base.points

    def tree(self, p: str) -> FiberTree:
        return self.fibers.get(p) or FiberTree.single()

    def support(self) -> list[str]:
        """Points whose tree is not the trivial fiber."""
        return [p for p in self.points if len(self.tree(p)) > 1]

    def vertex_total(self) -> int:
        return sum(len(self.tree(p)) for p in self.points)

    def action_maps(self) -> dict[str, tuple[int, ...]]:
        """Equivariance maps, completed with a default where none are given.

        Fixed points default to the identity.  When no data is given at all,
        every orbit gets maps whose composite is the identity.
        """
        act = self.base.action
        given = self.equivariance
        out: dict[str, tuple[int, ...]] = {}
        if given is not None:
            for p in self.points:
                if p in given:
                    out[p] = given[p]
                elif act[p] == p:
                    out[p] = identity(len(self.tree(p)))
            return out
        for orbit in self.base.orbits():
            if len(orbit) == 1:
                p = orbit[0]
                out[p] = identity(len(self.tree(p)))
                continue
            total = identity(len(self.tree(orbit[0])))
            for p in orbit[:-1]:
                phi = find_isomorphism(self.tree(p), self.tree(act[p]))
                if phi is None:
                    break
                out[p] = phi
                total = compose(phi, total)
            else:
                last = orbit[-1]
                out[last] = invert(total)
        return out

    def validate(self) -> list[Issue]:
        issues = []
        for p in self.points:
            if p not in self.fibers:
                issues.append(Issue(p, "MissingFiber", "no fiber tree given"))
                continue
            try:
                validate_contractible(self.fibers[p])
            except NotContractible as exc:
                issues.append(Issue(p, "NotContractible", str(exc)))
        mu = self.base.mu
        order = self.base.perm_order()
        if mu % order:
            issues.append(
                Issue(None, "BadPermutation", f"permutation order {order} does not divide mu={mu}")
            )
            return issues
        act = self.base.action
        maps = self.action_maps()
        broken = False
        for p in self.points:
            q = act[p]
            phi = maps.get(p)
            if phi is None:
                issues.append(Issue(p, "EquivarianceBroken", f"no tree isomorphism onto {q}"))
                broken = True
            elif not is_isomorphism(self.tree(p), self.tree(q), phi):
                issues.append(
                    Issue(p, "EquivarianceBroken", f"map onto {q} is not a tree isomorphism")
                )
                broken = True
        if broken:
            return issues
        for orbit in self.base.orbits():
            p = orbit[0]
            total = orbit_composite(maps, act, p)
            k = map_order(total)
            limit = mu // len(orbit)
            if limit % k:
                issues.append(
                    Issue(
                        p,
                        "EquivarianceBroken",
                        f"composite around the orbit has order {k}, not dividing {limit}",
                    )
                )
        return issues

    def is_valid(self) -> bool:
        return not self.validate()

    # serialization

    def to_json(self) -> dict:
        """JSON document; trees are written as literals with preorder vertex indices."""
        relabel = {}
        fibers = {}
        for p in self.points:
            tree = self.tree(p)
            order = tree.preorder()
            relabel[p] = invert(order)
            fibers[p] = tree.to_literal()
        out = {"base": self.base.to_json(), "fibers": fibers}
        if self.equivariance is not None:
            act = self.base.action
            eq = {}
            for p, phi in self.equivariance.items():
                q = act[p]
                eq[p] = list(compose(relabel[q], compose(phi, invert(relabel[p]))))
            out["equivariance"] = eq
        return out

    @classmethod
    def from_json(cls, obj) -> "GraphDivisor":
        if not isinstance(obj, dict):
            raise InputError("a divisor document must be a JSON object")
        base = obj.get("base", {})
        fibers_obj = obj.get("fibers", {})
        if not isinstance(base, dict) or not isinstance(fibers_obj, dict):
            raise InputError("'base' and 'fibers' must be JSON objects")
        points = base.get("points", list(fibers_obj))
        if not isinstance(points, list):
            raise InputError("'base.points' must be a list")
        try:
            curve = BaseCurve(
                tuple(points),
                int(base.get("infinity", 1)),
                int(base.get("mu", 1)),
                None if base.get("perm") is None else tuple(base["perm"]),
            )
        except (TypeError, ValueError) as exc:
            raise InputError(f"malformed base curve: {exc}") from exc
        fibers = {}
        for p, lit in fibers_obj.items():
            try:
                fibers[p] = FiberTree.from_literal(lit)
            except InputError as exc:
                raise InputError(f"fiber {p}: {exc}") from exc
        eq = obj.get("equivariance")
        if eq is not None:
            if not isinstance(eq, dict):
                raise InputError("'equivariance' must be a JSON object")
            eq = {p: tuple(int(x) for x in m) for p, m in eq.items()}
        return cls(curve, fibers, eq)


def orbit_composite(maps, act, p) -> tuple[int, ...]:
    """Composite of the equivariance maps once around the orbit of ``p``."""
    total = maps[p]
    q = act[p]
    while q != p:
        total = compose(maps[q], total)
        q = act[q]
    return total


# isomorphism


class Mode(enum.Enum):
    OVER_BASE = "over-base"
    ABSTRACT = "abstract"


class IsoStatus(enum.Enum):
    ISOMORPHIC = "Isomorphic"
    NOT_ISOMORPHIC = "NotIsomorphic"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class Matching:
    """Point bijection on the supports and one vertex map per point of the first divisor."""

    points: dict[str, str]
    vertices: dict[str, tuple[int, ...]]

    def to_json(self) -> dict:
        return {
            "points": dict(sorted(self.points.items())),
            "vertices": {p: list(v) for p, v in sorted(self.vertices.items())},
        }


@dataclass(frozen=True)
class IsoResult:
    status: IsoStatus
    matching: Matching | None = None
    nodes: int = 0

    def __bool__(self):
        return self.status is IsoStatus.ISOMORPHIC


_NOT = IsoResult(IsoStatus.NOT_ISOMORPHIC)


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.limit:
            raise _Exhausted


class _Exhausted(Exception):
    pass


def iso(
    d1: GraphDivisor,
    d2: GraphDivisor,
    mode: Mode = Mode.OVER_BASE,
    equivariant: bool = False,
    node_limit: int = NODE_LIMIT,
) -> IsoResult:
    """Decide whether two graph divisors are isomorphic.

    Points carrying the trivial tree ``[[0]]`` are ignored.  In
    ``OVER_BASE`` mode the point bijection must be the identity on labels.
    With ``equivariant`` the matching must intertwine both group actions.
    """
    if d1.base.infinity != d2.base.infinity:
        return _NOT
    if equivariant and d1.base.mu != d2.base.mu:
        return _NOT
    s1, s2 = d1.support(), d2.support()
    if len(s1) != len(s2):
        return _NOT
    if mode is Mode.OVER_BASE and set(s1) != set(s2):
        return _NOT
    if sorted(canonical_form(d1.tree(p)) for p in s1) != sorted(
        canonical_form(d2.tree(p)) for p in s2
    ):
        return _NOT
    if not equivariant:
        return _plain_iso(d1, d2, s1, s2, mode)
    budget = _Budget(node_limit)
    try:
        found = _equivariant_iso(d1, d2, s1, s2, mode, budget)
    except _Exhausted:
        return IsoResult(IsoStatus.UNDECIDED, None, budget.nodes)
    if found is None:
        return IsoResult(IsoStatus.NOT_ISOMORPHIC, None, budget.nodes)
    return IsoResult(IsoStatus.ISOMORPHIC, found, budget.nodes)


def _plain_iso(d1, d2, s1, s2, mode) -> IsoResult:
    if mode is Mode.OVER_BASE:
        pairs = [(p, p) for p in s1]
    else:
        groups: dict[bytes, list[str]] = {}
        for q in s2:
            groups.setdefault(canonical_form(d2.tree(q)), []).append(q)
        pairs = []
        for p in s1:
            pairs.append((p, groups[canonical_form(d1.tree(p))].pop(0)))
    points, vertices = {}, {}
    for p, q in pairs:
        phi = find_isomorphism(d1.tree(p), d2.tree(q))
        if phi is None:
            return _NOT
        points[p] = q
        vertices[p] = phi
    return IsoResult(IsoStatus.ISOMORPHIC, Matching(points, vertices), len(pairs))


def _support_orbits(d: GraphDivisor, support) -> list[list[str]]:
    keep = set(support)
    return [o for o in d.base.orbits() if o[0] in keep]


def _equivariant_iso(d1, d2, s1, s2, mode, budget):
    act1, act2 = d1.base.action, d2.base.action
    maps1, maps2 = d1.action_maps(), d2.action_maps()
    orbits1 = _support_orbits(d1, s1)
    orbit_of2 = {}
    for o in _support_orbits(d2, s2):
        for i, q in enumerate(o):
            orbit_of2[q] = (o, i)
    cache: dict[tuple[str, str], dict | None] = {}

    def orbit_match(orbit, q):
        """Vertex maps along ``orbit`` sending its first point to ``q``, or None."""
        key = (orbit[0], q)
        if key in cache:
            return cache[key]
        result = None
        o2, i = orbit_of2[q]
        if len(o2) == len(orbit):
            p = orbit[0]
            t1, t2 = d1.tree(p), d2.tree(q)
            phi1 = orbit_composite(maps1, act1, p)
            phi2 = orbit_composite(maps2, act2, q)
            for psi in isomorphisms(t1, t2):
                budget.tick()
                if compose(psi, phi1) == compose(phi2, psi):
                    result = {p: (q, psi)}
                    x, y = p, q
                    for _ in range(len(orbit) - 1):
                        psi = compose(maps2[y], compose(psi, invert(maps1[x])))
                        x, y = act1[x], act2[y]
                        result[x] = (y, psi)
                    break
        cache[key] = result
        return result

    used: set[str] = set()
    chosen: dict[str, tuple[str, tuple[int, ...]]] = {}

    def search(i):
        if i == len(orbits1):
            return True
        orbit = orbits1[i]
        p = orbit[0]
        if mode is Mode.OVER_BASE:
            targets = [p] if p in orbit_of2 else []
        else:
            form = canonical_form(d1.tree(p))
            targets = [q for q in s2 if q not in used and canonical_form(d2.tree(q)) == form]
        for q in targets:
            budget.tick()
            m = orbit_match(orbit, q)
            if m is None:
                continue
            images = [y for y, _ in m.values()]
            if mode is Mode.OVER_BASE and any(x != y for x, (y, _) in m.items()):
                continue
            if used.intersection(images):
                continue
            used.update(images)
            chosen.update(m)
            if search(i + 1):
                return True
            used.difference_update(images)
            for x in m:
                del chosen[x]
        return False

    if not search(0):
        return None
    return Matching(
        {x: y for x, (y, _) in chosen.items()},
        {x: psi for x, (_, psi) in chosen.items()},
    )


def check_matching(
    d1: GraphDivisor,
    d2: GraphDivisor,
    matching: Matching,
    mode: Mode = Mode.OVER_BASE,
    equivariant: bool = False,
) -> bool:
    """Independently re-check a matching returned by :func:`iso`."""
    s1, s2 = d1.support(), d2.support()
    if set(matching.points) != set(s1) or sorted(matching.points.values()) != sorted(s2):
        return False
    if mode is Mode.OVER_BASE and any(p != q for p, q in matching.points.items()):
        return False
    for p, q in matching.points.items():
        if not is_isomorphism(d1.tree(p), d2.tree(q), matching.vertices[p]):
            return False
    if not equivariant:
        return True
    if d1.base.mu != d2.base.mu:
        return False
    act1, act2 = d1.base.action, d2.base.action
    maps1, maps2 = d1.action_maps(), d2.action_maps()
    for p, q in matching.points.items():
        if matching.points.get(act1[p]) != act2[q]:
            return False
        lhs = compose(matching.vertices[act1[p]], maps1[p])
        rhs = compose(maps2[q], matching.vertices[p])
        if lhs != rhs:
            return False
    return True

"""Numerical invariants of graph divisors: vertex count, Picard number, class group."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .blowups import pseudominimalize
from .divisors import GraphDivisor
from .errors import UnsupportedBase
from .trees import FiberTree, type_sequence, validate_contractible


def vertex_count(d: GraphDivisor) -> int:
    """Vertices of the pseudominimal extended graph: ``1 + s + sum |pseudominimal tree|``."""
    return 1 + d.base.infinity + sum(len(pseudominimalize(d.tree(p))) for p in d.points)


def component_count(tree: FiberTree) -> int:
    """Number of affine components of the fiber (leaves of the pseudominimal tree, at least 1)."""
    return max(len(pseudominimalize(tree).leaves()), 1)


def picard_number(d: GraphDivisor) -> int:
    if d.base.infinity != 1:
        raise UnsupportedBase(
            f"the Picard number is computed over the affine line only (s={d.base.infinity})"
        )
    return sum(component_count(d.tree(p)) - 1 for p in d.points)


@dataclass(frozen=True)
class ClassGroup:
    """Cyclic group of the given order; ``order=None`` means unknown."""

    order: int | None

    @property
    def known(self) -> bool:
        return self.order is not None

    def __str__(self):
        if self.order is None:
            return "Unknown"
        if self.order == 1:
            return "0"
        return f"Z/{self.order}Z"


def fiber_multiplicity(tree: FiberTree) -> int | None:
    """Multiplicity of an irreducible fiber; None if the fiber is reducible.

    The affine part of an irreducible fiber is its (-1)-component of
    largest multiplicity; the others resolve a quotient singularity.
    """
    if len(pseudominimalize(tree).leaves()) > 1:
        return None
    mult = validate_contractible(tree).multiplicities
    bridges = [mult[v] for v in range(len(tree)) if v != tree.root and tree.weight(v) == -1]
    return max(bridges, default=1)


def class_group(d: GraphDivisor, dpd=None) -> ClassGroup:
    """Cl(X) for irreducible fibers over the affine line.

    Multiplicities come from ``dpd`` when given and from the trees
    otherwise.  Several multiple fibers, reducible fibers and other bases
    give Unknown.
    """
    if d.base.infinity != 1:
        return ClassGroup(None)
    mults = []
    if dpd is not None:
        mults = [m for _, _, m in dpd.entries]
    for p in d.points:
        mult = fiber_multiplicity(d.tree(p))
        if mult is None:
            return ClassGroup(None)
        if dpd is None:
            mults.append(mult)
    multiple = [m for m in mults if m > 1]
    if not multiple:
        return ClassGroup(1)
    if len(multiple) == 1:
        return ClassGroup(multiple[0])
    return ClassGroup(None)


@dataclass(frozen=True)
class FiberReport:
    point: str
    height: int
    type_sequence: tuple[int, ...]
    components: int
    multiplicities: dict[int, int]
    pseudominimal: list

    def to_json(self) -> dict:
        return {
            "point": self.point,
            "height": self.height,
            "type": list(self.type_sequence),
            "components": self.components,
            "multiplicities": {str(k): v for k, v in sorted(self.multiplicities.items())},
            "pseudominimal": self.pseudominimal,
        }


@dataclass(frozen=True)
class InvariantReport:
    vertex_count: int
    picard_number: int | None
    class_group: ClassGroup
    fibers: tuple[FiberReport, ...]

    def to_json(self) -> dict:
        return {
            "vertex_count": self.vertex_count,
            "picard_number": self.picard_number,
            "class_group": str(self.class_group),
            "fibers": [f.to_json() for f in self.fibers],
        }


def analyze(d: GraphDivisor, dpd=None) -> InvariantReport:
    fibers = []
    for p in d.points:
        tree = d.tree(p)
        mult = validate_contractible(tree).multiplicities
        fibers.append(
            FiberReport(
                p,
                tree.height,
                tuple(type_sequence(tree)),
                component_count(tree),
                dict(Counter(mult)),
                pseudominimalize(tree).to_literal(),
            )
        )
    try:
        rho = picard_number(d)
    except UnsupportedBase:
        rho = None
    return InvariantReport(vertex_count(d), rho, class_group(d, dpd), tuple(fibers))

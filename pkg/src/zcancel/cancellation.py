"""Zariski-factor status, cylinder comparison and non-cancellation families.

Verdicts are three-valued.  A ``Yes`` always comes with a certificate
that :func:`check_verdict` re-derives from scratch, and ``Unknown`` is
returned whenever neither a sufficient condition nor a separating
invariant applies.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .blowups import pseudominimal_map
from .divisors import GraphDivisor, IsoStatus, Matching, Mode, check_matching, iso
from .errors import NoBranchingFiber, NotGDF, NotPseudominimalizable
from .invariants import component_count, vertex_count
from .stretching import StretchSpec, stretch
from .trees import branching_level, is_chain, is_isomorphism, validate_contractible

CITE_LINE_BUNDLE = "GDF surfaces: Zariski 1-factor iff line bundle"
CITE_PARABOLIC = "parabolic Gm-surfaces are Zariski factors"
CITE_FIXED_GRAPH = "isomorphic graph divisors over the same points give isomorphic cylinders"
CITE_STRETCH = "principal top-level stretching at the first branching stage preserves the cylinder"
CITE_COMPONENTS = "the number of special fiber components is a cylinder invariant over the base"


class Status(enum.Enum):
    ZARISKI_FACTOR = "ZariskiFactor"
    ONLY_BY_DEFAULT = "Zariski1FactorOnlyByDefault"
    NOT_ZARISKI_1_FACTOR = "NotZariski1Factor"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ZariskiStatus:
    status: Status
    citation: str
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {"status": self.status.value, "citation": self.citation}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def is_gdf_divisor(d: GraphDivisor) -> bool:
    """All fiber components reduced."""
    return all(
        max(validate_contractible(d.tree(p)).multiplicities) == 1 for p in d.points
    )


def zariski_status(d: GraphDivisor, multiplicities=None) -> ZariskiStatus:
    if multiplicities is None and is_gdf_divisor(d):
        for p in d.points:
            try:
                count = component_count(d.tree(p))
                trivial = len(pseudominimal_map(d.tree(p))[0]) == 1
            except NotPseudominimalizable as exc:
                return ZariskiStatus(Status.UNKNOWN, CITE_LINE_BUNDLE, {"point": p, "reason": str(exc)})
            if not trivial:
                return ZariskiStatus(
                    Status.NOT_ZARISKI_1_FACTOR,
                    CITE_LINE_BUNDLE,
                    {"point": p, "components": count},
                )
        return ZariskiStatus(Status.ZARISKI_FACTOR, CITE_LINE_BUNDLE)
    for p in d.points:
        if not is_chain(d.tree(p)):
            return ZariskiStatus(
                Status.NOT_ZARISKI_1_FACTOR,
                CITE_PARABOLIC,
                {"point": p, "components": component_count(d.tree(p))},
            )
    return ZariskiStatus(Status.ZARISKI_FACTOR, CITE_PARABOLIC)


# cylinders


class Verdict(enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class CylinderVerdict:
    verdict: Verdict
    certificate: dict | None = None
    citation: str | None = None

    def to_json(self) -> dict:
        out = {"verdict": self.verdict.value}
        if self.citation is not None:
            out["citation"] = self.citation
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def reduce_divisor(d: GraphDivisor) -> GraphDivisor | None:
    """Pseudominimalize every fiber, carrying the action along.

    Returns None when a transported equivariance map fails to be a tree
    isomorphism or a fiber cannot be pseudominimalized.
    """
    try:
        reduced = {p: pseudominimal_map(d.tree(p)) for p in d.points}
    except NotPseudominimalizable:
        return None
    fibers = {p: t for p, (t, _) in reduced.items()}
    eq = None
    if d.equivariance is not None or d.base.perm != d.base.points:
        act = d.base.action
        maps = d.action_maps()
        eq = {}
        for p in d.points:
            q = act[p]
            src, dst = reduced[p][1], reduced[q][1]
            phi = maps.get(p)
            if phi is None:
                return None
            psi = [0] * len(fibers[p])
            for old, new in src.items():
                if phi[old] not in dst:
                    return None
                psi[new] = dst[phi[old]]
            if not is_isomorphism(fibers[p], fibers[q], psi):
                return None
            eq[p] = tuple(psi)
    return GraphDivisor(d.base, fibers, eq)


def first_branching_stage(d: GraphDivisor) -> int | None:
    """One more than the smallest level of a vertex with two or more children."""
    levels = [branching_level(d.tree(p)) for p in d.points]
    levels = [l for l in levels if l is not None]
    return min(levels) + 1 if levels else None


def stage_spec(d: GraphDivisor, stage: int, a: int) -> StretchSpec:
    """Uniform stretch by ``a`` of every marked point at level ``min(stage, height)``."""
    return StretchSpec(
        {p: a for p in d.points},
        {p: min(stage, d.tree(p).height) for p in d.points},
        principal=True,
    )


def _iso_reduced(d1, d2, mode, equivariant):
    r1, r2 = reduce_divisor(d1), reduce_divisor(d2)
    if r1 is None or r2 is None:
        return None, None
    res = iso(r1, r2, mode, equivariant)
    return res, (r1, r2)


def _stretch_route(small, large, mode, equivariant):
    top = first_branching_stage(small)
    if top is None:
        return None
    target = vertex_count(large)
    step = small.base.mu if equivariant else 1
    for stage in range(1, top + 1):
        a, prev = step, vertex_count(small)
        while True:
            stretched = stretch(small, stage_spec(small, stage, a))
            v = vertex_count(stretched)
            if v > target or v <= prev:
                break
            prev = v
            if v == target:
                res, _ = _iso_reduced(stretched, large, mode, equivariant)
                if res is not None and res.status is IsoStatus.ISOMORPHIC:
                    return stage, a, res.matching
            a += step
    return None


def _component_profile(d: GraphDivisor) -> dict[str, int]:
    return {p: component_count(d.tree(p)) for p in d.points}


def _separated(c1: dict[str, int], c2: dict[str, int], mode: Mode) -> bool:
    """Over the base the total number of extra components is compared; abstractly, their multiset."""
    if mode is Mode.OVER_BASE:
        return sum(c - 1 for c in c1.values()) != sum(c - 1 for c in c2.values())
    return sorted(c for c in c1.values() if c > 1) != sorted(c for c in c2.values() if c > 1)


def cylinders_isomorphic(
    d1: GraphDivisor,
    d2: GraphDivisor,
    mode: Mode = Mode.OVER_BASE,
    equivariant: bool = False,
) -> CylinderVerdict:
    res = iso(d1, d2, mode, equivariant)
    if res.status is IsoStatus.ISOMORPHIC:
        return CylinderVerdict(
            Verdict.YES,
            {"kind": "isomorphic-divisors", "reduced": False, "matching": res.matching.to_json()},
            CITE_FIXED_GRAPH,
        )
    res, _ = _iso_reduced(d1, d2, mode, equivariant)
    if res is not None and res.status is IsoStatus.ISOMORPHIC:
        return CylinderVerdict(
            Verdict.YES,
            {"kind": "isomorphic-divisors", "reduced": True, "matching": res.matching.to_json()},
            CITE_FIXED_GRAPH,
        )
    for direction, small, large in (("forward", d1, d2), ("backward", d2, d1)):
        found = _stretch_route(small, large, mode, equivariant)
        if found is not None:
            stage, a, matching = found
            return CylinderVerdict(
                Verdict.YES,
                {
                    "kind": "stage-stretch",
                    "direction": direction,
                    "stage": stage,
                    "amount": a,
                    "matching": matching.to_json(),
                },
                CITE_STRETCH,
            )
    c1, c2 = _component_profile(d1), _component_profile(d2)
    if _separated(c1, c2, mode):
        return CylinderVerdict(
            Verdict.NO,
            {"kind": "component-counts", "first": dict(sorted(c1.items())), "second": dict(sorted(c2.items()))},
            CITE_COMPONENTS,
        )
    return CylinderVerdict(Verdict.UNKNOWN)


def _matching_from_json(obj):
    return Matching(dict(obj["points"]), {p: tuple(v) for p, v in obj["vertices"].items()})


def check_verdict(
    d1: GraphDivisor,
    d2: GraphDivisor,
    verdict: CylinderVerdict,
    mode: Mode = Mode.OVER_BASE,
    equivariant: bool = False,
) -> bool:
    """Re-validate a certificate without trusting the search that produced it."""
    cert = verdict.certificate
    if verdict.verdict is Verdict.UNKNOWN:
        return cert is None
    if cert is None:
        return False
    kind = cert.get("kind")
    if verdict.verdict is Verdict.NO:
        if kind != "component-counts":
            return False
        c1, c2 = _component_profile(d1), _component_profile(d2)
        if cert["first"] != dict(sorted(c1.items())) or cert["second"] != dict(sorted(c2.items())):
            return False
        return _separated(c1, c2, mode)
    matching = _matching_from_json(cert["matching"])
    if kind == "isomorphic-divisors":
        if cert["reduced"]:
            r1, r2 = reduce_divisor(d1), reduce_divisor(d2)
            if r1 is None or r2 is None:
                return False
            return check_matching(r1, r2, matching, mode, equivariant)
        return check_matching(d1, d2, matching, mode, equivariant)
    if kind == "stage-stretch":
        small, large = (d1, d2) if cert["direction"] == "forward" else (d2, d1)
        stage, a = cert["stage"], cert["amount"]
        top = first_branching_stage(small)
        if top is None or not 1 <= stage <= top or a < 1:
            return False
        if equivariant and a % small.base.mu:
            return False
        r1 = reduce_divisor(stretch(small, stage_spec(small, stage, a)))
        r2 = reduce_divisor(large)
        if r1 is None or r2 is None:
            return False
        return check_matching(r1, r2, matching, mode, equivariant)
    return False


# families


@dataclass(frozen=True)
class FamilyMember:
    divisor: GraphDivisor
    vertex_count: int
    certificate: dict = field(default_factory=dict)


def generate_family(d: GraphDivisor, k: int) -> list[FamilyMember]:
    """``k`` pairwise non-isomorphic surfaces whose cylinders match the one of ``d``.

    The ``j``-th member stretches every marked point by ``j`` (by ``j*mu``
    under a cyclic action) at the first branching stage.
    """
    if not is_gdf_divisor(d):
        raise NotGDF("family generation needs reduced fibers")
    stage = first_branching_stage(d)
    if stage is None:
        raise NoBranchingFiber("no fiber branches; the surface is a line bundle")
    equivariant = d.base.mu > 1
    step = d.base.mu if equivariant else 1
    base_v = vertex_count(d)
    out = []
    for j in range(1, k + 1):
        a = j * step
        member = stretch(d, stage_spec(d, stage, a))
        v = vertex_count(member)
        verdict = cylinders_isomorphic(d, member, Mode.OVER_BASE, equivariant)
        out.append(
            FamilyMember(
                member,
                v,
                {
                    "stage": stage,
                    "amount": a,
                    "vertex_count": v,
                    "base_vertex_count": base_v,
                    "cylinder": verdict.to_json(),
                    "non_isomorphism": "pseudominimal vertex counts differ",
                },
            )
        )
    return out


"""Shared strategies and brute-force oracles."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import sympy
from hypothesis import strategies as st

from zcancel.blowups import BlowupSequence, BlowupStep, replay
from zcancel.divisors import GraphDivisor
from zcancel.trees import FiberTree, bush


@st.composite
def blowup_sequences(draw, max_vertices=12, inner=True, min_steps=0):
    """Random replays from ``[[0]]``; each step adds one vertex."""
    n_steps = draw(st.integers(min_steps, max_vertices - 1))
    parents = [None]
    steps = []
    for _ in range(n_steps):
        n = len(parents)
        edges = [(v, p) for v, p in enumerate(parents) if p is not None]
        if inner and edges and draw(st.booleans()):
            child, parent = draw(st.sampled_from(edges))
            if draw(st.booleans()):
                steps.append(BlowupStep.inner(child, parent))
            else:
                steps.append(BlowupStep.inner(parent, child))
            parents.append(parent)
            parents[child] = n
        else:
            v = draw(st.integers(0, n - 1))
            steps.append(BlowupStep.outer(v))
            parents.append(v)
    return BlowupSequence.sequential(steps)


def contractible_trees(max_vertices=12, inner=True):
    return blowup_sequences(max_vertices, inner).map(replay)


def gdf_trees(max_vertices=12):
    return blowup_sequences(max_vertices, inner=False).map(replay)


def gamma(d: int, m: int) -> GraphDivisor:
    return GraphDivisor.over_line({"0": bush(d, m)})


def relabeled(tree: FiberTree, perm) -> FiberTree:
    """Same tree with vertex ``v`` renamed ``perm[v]``."""
    n = len(tree)
    weights = [0] * n
    parents = [None] * n
    for v in range(n):
        weights[perm[v]] = tree.weight(v)
        p = tree.parent(v)
        parents[perm[v]] = None if p is None else perm[p]
    return FiberTree(weights, parents)


def brute_isomorphisms(t1: FiberTree, t2: FiberTree) -> set[tuple[int, ...]]:
    """Every weight- and root-preserving bijection, by exhaustive permutation."""
    if len(t1) != len(t2):
        return set()
    out = set()
    for phi in permutations(range(len(t2))):
        if phi[t1.root] != t2.root:
            continue
        if any(t1.weight(v) != t2.weight(phi[v]) for v in range(len(t1))):
            continue
        if all(
            t2.parent(phi[v]) == phi[t1.parent(v)]
            for v in range(len(t1))
            if v != t1.root
        ):
            out.add(phi)
    return out


def linear_multiplicities(tree: FiberTree) -> tuple[int, ...]:
    """Solve ``F . C_i = 0`` with root coefficient 1 using the intersection matrix."""
    n = len(tree)
    M = sympy.zeros(n, n)
    for v in range(n):
        M[v, v] = tree.weight(v)
        for u in tree.neighbors(v):
            M[v, u] = 1
    kernel = M.nullspace()
    assert len(kernel) == 1
    vec = kernel[0] / kernel[0][tree.root]
    return tuple(int(x) for x in vec)


def continued_fraction(s) -> Fraction:
    value = Fraction(-s[-1])
    for a in reversed(s[:-1]):
        value = -a - 1 / value
    return value


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    verdicts = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid:
                continue
            if outcome == "passed" and rep.when != "call":
                continue
            label = nodeid.split("::")[-1][len("test_criterion_"):]
            if verdicts.get(label) != "FAIL":
                verdicts[label] = "PASS" if outcome == "passed" else "FAIL"
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for label, verdict in sorted(verdicts.items()):
        number, _, title = label.partition("_")
        terminalreporter.write_line(f"criterion {int(number):2d} {verdict}  {title.replace('_', ' ')}")

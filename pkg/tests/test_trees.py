import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_isomorphisms, contractible_trees, linear_multiplicities, relabeled
from zcancel.errors import InputError, NotContractible, WeightOverflow
from zcancel.trees import (
    FiberTree,
    bush,
    canonical_form,
    canonical_tree,
    chain,
    find_isomorphism,
    gdf_weights,
    is_contractible,
    is_isomorphism,
    isomorphisms,
    type_sequence,
    validate_contractible,
)


def test_literal_round_trip():
    lit = [-2, [[-1, []], [-2, [[-1, []]]]]]
    t = FiberTree.from_literal(lit)
    assert t.to_literal() == lit
    assert t.root == 0
    assert t.height == 2
    assert t.leaves() == [1, 3]


def test_short_leaf_literal():
    assert FiberTree.from_literal([-2, [[-1], [-1]]]) == bush(2, 1)


@pytest.mark.parametrize(
    "bad",
    [[], [1, 2, 3], ["a", []], [0, 5], [0, [[True, []]]]],
)
def test_malformed_literals(bad):
    with pytest.raises(InputError):
        FiberTree.from_literal(bad)


def test_structure_errors():
    with pytest.raises(InputError, match="root"):
        FiberTree([0, 0], [None, None])
    with pytest.raises(InputError, match="cycle"):
        FiberTree([0, 0, 0], [None, 2, 1])
    with pytest.raises(WeightOverflow):
        FiberTree([2**63], [None])


def test_bush_weights():
    t = bush(3, 2)
    assert len(t) == 7
    assert t.weight(t.root) == -3
    assert sorted(t.weight(v) for v in t.leaves()) == [-1, -1, -1]
    assert type_sequence(t) == [0, 3]


def test_gdf_weights_from_shape():
    assert gdf_weights([[], []]) == bush(2, 1)
    assert gdf_weights([[[]]]) == chain([-1, -2, -1])


def test_contraction_of_danielewski_fiber():
    res = validate_contractible(bush(2, 1))
    assert res.multiplicities == (1, 1, 1)
    assert len(res.order) == 2


def test_inner_blowup_multiplicities():
    # chain R(-2) - B(-1) - A(-2): the middle curve has multiplicity 2
    t = chain([-2, -1, -2])
    assert validate_contractible(t).multiplicities == (1, 2, 1)


def test_not_contractible():
    with pytest.raises(NotContractible, match="root ends"):
        validate_contractible(FiberTree.single(-1))
    with pytest.raises(NotContractible, match="no contractible"):
        validate_contractible(chain([-2, -2]))
    assert not is_contractible(chain([0, -2]))


def test_tie_break_is_deterministic():
    t = bush(4, 2)
    assert validate_contractible(t) == validate_contractible(t)


def test_canonical_form_ignores_labels():
    a = FiberTree.from_literal([-2, [[-1, []], [-2, [[-1, []]]]]])
    b = FiberTree.from_literal([-2, [[-2, [[-1, []]]], [-1, []]]])
    assert a != b
    assert canonical_form(a) == canonical_form(b)
    assert canonical_tree(a) == canonical_tree(b)


def test_weights_distinguish():
    assert canonical_form(chain([-1, -2, -1])) != canonical_form(chain([-2, -1, -2]))


def test_automorphisms_of_bush():
    t = bush(3, 1)
    assert len(list(isomorphisms(t, t))) == 6


def test_isomorphism_absent():
    assert find_isomorphism(bush(2, 2), bush(4, 1)) is None


@settings(max_examples=150, deadline=None)
@given(contractible_trees(max_vertices=8), st.randoms(use_true_random=False))
def test_isomorphisms_match_brute_force(tree, rnd):
    perm = list(range(len(tree)))
    rnd.shuffle(perm)
    other = relabeled(tree, perm)
    assert set(isomorphisms(tree, other)) == brute_isomorphisms(tree, other)
    assert canonical_form(tree) == canonical_form(other)


@settings(max_examples=150, deadline=None)
@given(contractible_trees(max_vertices=8), contractible_trees(max_vertices=8))
def test_canonical_form_decides_isomorphism(t1, t2):
    same = bool(brute_isomorphisms(t1, t2))
    assert (canonical_form(t1) == canonical_form(t2)) == same
    phi = find_isomorphism(t1, t2)
    assert (phi is not None) == same
    if phi is not None:
        assert is_isomorphism(t1, t2, phi)


@settings(max_examples=200, deadline=None)
@given(contractible_trees())
def test_multiplicities_solve_intersection_equations(tree):
    assert validate_contractible(tree).multiplicities == linear_multiplicities(tree)


@settings(max_examples=100, deadline=None)
@given(contractible_trees())
def test_contractibility_is_label_free(tree):
    perm = list(range(len(tree)))
    random.Random(len(tree)).shuffle(perm)
    other = relabeled(tree, perm)
    m1 = validate_contractible(tree).multiplicities
    m2 = validate_contractible(other).multiplicities
    assert sorted(m1) == sorted(m2)
    assert all(m1[v] == m2[perm[v]] for v in range(len(tree)))

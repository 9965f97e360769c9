from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zcancel.equations import (
    DanielewskiForm,
    MMForm,
    NormalFormWitness,
    Outcome,
    build_recursion,
    classify,
    forward_transform,
    invert_witness,
    make_witness,
    mm_classify,
    rational_roots,
    tree_of_equation,
    verify_witness,
)
from zcancel.errors import InputError, InvalidB0, MalformedMMForm
from zcancel.invariants import picard_number, vertex_count
from zcancel.trees import bush, canonical_form

U2_MINUS_1 = (-1, 0, 1)


def form(b, m=None):
    b = tuple(tuple(c) for c in b)
    return DanielewskiForm(len(b[0]) - 1, m or len(b), b)


def test_recursion_for_danielewski_surfaces():
    for m in range(1, 7):
        rec = build_recursion([U2_MINUS_1] + [()] * (m - 1))
        assert rec.collapsed
        assert rec.form.equation_coefficients() == {
            (m, 0, 1): 1,
            (0, 2, 0): -1,
            (0, 0, 0): 1,
        }
        assert len(rec.trace) == m
        assert rec.trace[-1] == f"t_{m} = (u^2 - 1)/" + ("z" if m == 1 else f"z^{m}")


def test_recursion_cubic():
    rec = build_recursion([(0, -1, 0, 1)])
    assert rec.form.equation_text() == "z*t - (u^3 - u)"


def test_recursion_rejects_bad_centers():
    with pytest.raises(InvalidB0, match="squarefree"):
        build_recursion([(0, 0, 1)])
    with pytest.raises(InvalidB0, match="monic"):
        build_recursion([(-1, 0, 2)])
    with pytest.raises(InputError, match="degree"):
        build_recursion([U2_MINUS_1, (0, 0, 1)])


def test_tree_of_equation():
    assert canonical_form(tree_of_equation(form([U2_MINUS_1])).tree("0")) == canonical_form(bush(2, 1))
    f = form([(0, -1, 0, 1), (), (), ()])
    assert canonical_form(tree_of_equation(f).tree("0")) == canonical_form(bush(3, 4))


def test_grid_laws_for_d_at_least_two():
    for d in range(2, 6):
        b0 = [0] * (d + 1)
        b0[d] = 1
        b0[0] = 0
        b0[1] = -1  # u^d - u is squarefree
        for m in range(1, 6):
            div = tree_of_equation(build_recursion([b0] + [()] * (m - 1)).form)
            assert vertex_count(div) == d * m + 3
            assert picard_number(div) == d - 1


def test_parse_equation_literal():
    f = DanielewskiForm.parse("z^2*t - (u^3 - u) - (u)*z")
    assert f.to_json() == {"d": 3, "m": 2, "b": [[0, -1, 0, 1], [0, 1]]}
    assert DanielewskiForm.parse("z*t = u^2 - 1") == form([U2_MINUS_1])
    assert DanielewskiForm.from_json(f.to_json()) == f


@pytest.mark.parametrize(
    "text,column",
    [("z^2*t - u^2 + x", 15), ("z^2*t - (u^2", 12), ("z*t - u^2 + 1)", 14), ("2z*t - u", 2)],
)
def test_parse_errors_have_columns(text, column):
    with pytest.raises(InputError) as exc:
        DanielewskiForm.parse(text)
    assert exc.value.line == 1
    assert exc.value.column == column


def test_parse_rejects_high_z_degree():
    with pytest.raises(InputError, match="z-degree"):
        DanielewskiForm.parse("z*t - u^2 + 1 - z")
    with pytest.raises(InputError, match="exactly one"):
        DanielewskiForm.parse("u^2 - 1")


def test_classify_identity():
    g = form([U2_MINUS_1])
    res = classify(g, g)
    assert res.outcome is Outcome.ISOMORPHIC
    assert (res.witness.alpha, res.witness.lam, res.witness.beta, res.witness.gamma) == (1, 1, (), ())


def test_classify_rescaled_roots():
    g, h = form([U2_MINUS_1]), form([(-4, 0, 1)])
    res = classify(g, h)
    assert res.outcome is Outcome.ISOMORPHIC
    assert abs(res.witness.alpha) == Fraction(1, 2)
    assert verify_witness(g, h, res.witness)
    # the scaling the other way round is not a witness in this direction
    assert make_witness(g, h, 2, 1, ()) is None


def test_classify_irrational_roots():
    res = classify(form([U2_MINUS_1]), form([(1, 0, 1)]))
    assert res.outcome is Outcome.UNKNOWN


def test_classify_mismatched():
    assert classify(form([U2_MINUS_1]), form([U2_MINUS_1, ()])).outcome is Outcome.NOT_ISOMORPHIC
    assert classify(form([U2_MINUS_1]), form([(0, -1, 0, 1)])).outcome is Outcome.NOT_ISOMORPHIC
    assert classify(form([(0, 1)]), form([(0, 1), ()])).outcome is Outcome.UNKNOWN


def test_classify_separates_forms():
    # a u*z term is absorbed by beta, a constant z term only rescales with lambda
    g = form([U2_MINUS_1, (1,)])
    assert classify(g, form([U2_MINUS_1, ()])).outcome is Outcome.NOT_ISOMORPHIC
    res = classify(g, form([U2_MINUS_1, (3,)]))
    assert res.outcome is Outcome.ISOMORPHIC and res.witness.lam == 3
    assert classify(form([U2_MINUS_1, (0, 1)]), form([U2_MINUS_1, ()])).outcome is Outcome.ISOMORPHIC


def test_perturbed_gamma_fails():
    g = form([U2_MINUS_1, (0, 1)])
    h, w = forward_transform(g, 2, 3, (1, 1))
    assert verify_witness(g, h, w)
    gamma = dict(w.gamma)
    gamma[(0, 0)] = gamma.get((0, 0), 0) + 1
    bad = NormalFormWitness(w.alpha, w.lam, w.beta, tuple(sorted(gamma.items())))
    assert not verify_witness(g, h, bad)


def split_b0(roots):
    coeffs = [Fraction(1)]
    for r in roots:
        coeffs = [Fraction(0)] + coeffs
        for i in range(len(coeffs) - 1):
            coeffs[i] -= r * coeffs[i + 1]
    return tuple(coeffs)


@st.composite
def seeded_pairs(draw):
    d = draw(st.integers(1, 4))
    m = draw(st.integers(1, 4))
    roots = draw(st.lists(st.integers(-6, 6), min_size=d, max_size=d, unique=True))
    rest = [
        tuple(draw(st.lists(st.integers(-3, 3), min_size=d, max_size=d))) for _ in range(m - 1)
    ]
    g = DanielewskiForm(d, m, (split_b0(roots),) + tuple(rest))
    nonzero = st.sampled_from([Fraction(x) for x in (1, -1, 2, -2, 3)] + [Fraction(1, 2), Fraction(-2, 3)])
    alpha, lam = draw(nonzero), draw(nonzero)
    beta = tuple(draw(st.lists(st.integers(-3, 3), min_size=m, max_size=m)))
    return g, alpha, lam, beta


@settings(max_examples=60, deadline=None)
@given(seeded_pairs())
def test_round_trip_and_inversion(case):
    g, alpha, lam, beta = case
    h, seed = forward_transform(g, alpha, lam, beta)
    assert verify_witness(g, h, seed)
    res = classify(g, h)
    assert res.outcome is Outcome.ISOMORPHIC
    assert verify_witness(g, h, res.witness)
    back = invert_witness(g, h, res.witness)
    assert back is not None and verify_witness(h, g, back)
    assert back.alpha == 1 / res.witness.alpha and back.lam == 1 / res.witness.lam


def test_rational_roots():
    assert rational_roots((-6, 11, -6, 1)) == [1, 2, 3]
    assert rational_roots((1, 0, 1)) == []


def test_mm_examples():
    g = MMForm.parse("z^2*t - (u^3 + 2*u*z^2 + z^3) - 1")
    h = MMForm(3, 2, (8, 8))
    assert mm_classify(g, h).lam == 2
    assert mm_classify(g, g).lam == 1
    assert not mm_classify(MMForm(4, 2, (1, 1, 1)), MMForm(4, 3, (1, 1, 1))).isomorphic


def test_mm_errors():
    with pytest.raises(MalformedMMForm):
        MMForm(2, 2, (1,))
    with pytest.raises(MalformedMMForm, match="a_1"):
        MMForm.parse("z^2*t - (u^3 + u^2*z + z^3) - 1")


def test_mm_irrational_lambda():
    res = mm_classify(MMForm(5, 2, (1, 0, 0, 0)), MMForm(5, 2, (2, 0, 0, 0)))
    assert res.isomorphic and res.lam is None and res.lam_power == (2, 2)
    assert not mm_classify(MMForm(5, 2, (1, 0, 1, 0)), MMForm(5, 2, (2, 0, 3, 0))).isomorphic


@settings(max_examples=100, deadline=None)
@given(
    st.integers(3, 6),
    st.data(),
    st.sampled_from([Fraction(x) for x in (1, -1, 2, -3)] + [Fraction(1, 2), Fraction(-3, 2)]),
)
def test_mm_recovers_lambda(d, data, lam):
    m = data.draw(st.integers(2, d - 1))
    a = tuple(Fraction(data.draw(st.integers(-4, 4))) for _ in range(d - 1))
    g = MMForm(d, m, a)
    h = MMForm(d, m, tuple(c * lam ** j for j, c in enumerate(a, 2)))
    res = mm_classify(g, h)
    assert res.isomorphic
    if res.lam is not None:
        assert all(h.coefficient(j) == g.coefficient(j) * res.lam ** j for j in range(2, d + 1))

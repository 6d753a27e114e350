import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotclasp.clasp import (
    ClaspBounds,
    ClaspError,
    ConwayGenus2,
    NoneWithin,
    NotRealizable,
    TwoClaspWitness,
    conway_genus2_of,
    genus_lower_from_conway,
    lemma21_closed_form,
    lemma21_matrix,
    lemma21_parameters,
    mod8_obstruction,
    one_clasp_form,
    shibuya_lower,
    two_clasp_realizable,
    two_clasp_realizable_oracle,
)
from knotclasp.invariants import conway_from_seifert
from knotclasp.laurent import ONE, LaurentPoly

from conftest import Z

GRID = range(-20, 21)


def test_shibuya_lower():
    assert shibuya_lower(2, 2) == 2
    assert shibuya_lower(0, 0) == 0
    assert shibuya_lower(4, 4) == 4
    assert shibuya_lower(1, 3) == 3
    with pytest.raises(ClaspError):
        shibuya_lower(-1, 0)


def test_conway_genus2_of():
    assert conway_genus2_of(Z("-5*z^4+2*z^2+1")) == ConwayGenus2(-5, 2)
    assert conway_genus2_of(ONE) == ConwayGenus2(0, 0)
    assert conway_genus2_of(Z("-z^4+1")) == ConwayGenus2(-1, 0)
    for bad in ["z^6+1", "z^4+2", "z^3+1", "-4*z^3+2*z"]:
        with pytest.raises(ClaspError):
            conway_genus2_of(Z(bad))


def test_mod8_obstruction():
    assert mod8_obstruction(ConwayGenus2(-5, 2))
    assert not mod8_obstruction(ConwayGenus2(-1, 0))
    assert mod8_obstruction(ConwayGenus2(3, 2))
    assert mod8_obstruction(ConwayGenus2(-13, -2))
    assert not mod8_obstruction(ConwayGenus2(3, 0))


def test_one_clasp_form():
    assert one_clasp_form(Z("z^2+1")) == 1
    assert one_clasp_form(Z("-z^4+1")) is None
    assert one_clasp_form(ONE) == 0
    assert one_clasp_form(Z("-3*z^2+1")) == -3
    assert one_clasp_form(Z("z^2+2")) is None


def test_genus_lower_from_conway():
    assert genus_lower_from_conway(Z("-z^4+1")) == 2
    assert genus_lower_from_conway(ONE) == 0
    assert genus_lower_from_conway(Z("z^2+1")) == 1
    with pytest.raises(ClaspError):
        genus_lower_from_conway(Z("-4*z^3+2*z"))


def test_two_clasp_seifert_matrix_examples():
    assert conway_from_seifert(lemma21_matrix(0, 0, 0, 1, 1, 0)) == ONE
    assert conway_from_seifert(lemma21_matrix(-1, 0, 0, 1, 1, 0)) == Z("z^2+1")
    assert conway_from_seifert(lemma21_matrix(-1, 0, -1, 1, 1, 0)) == Z("z^4+2*z^2+1")
    m = lemma21_matrix(3, 4, 5, -1, 1, 1)
    assert m.entries[1][0] == 5 and m.entries[2] == (-1, 0, 1, 0)
    with pytest.raises(ClaspError):
        lemma21_matrix(0, 0, 0, 2, 1, 0)


def test_two_clasp_closed_form():
    assert lemma21_closed_form(0, 0, 0, 1, 0) == ONE
    assert lemma21_closed_form(1, -1, 0, 1, 0) == Z("-z^4+1")
    for n in range(-5, 6):
        p = lemma21_closed_form(n, n, 0, 1, 0)
        assert p == LaurentPoly({8: n * n, 4: 2 * n, 0: 1})


def test_seifert_route_matches_closed_form():
    rng = random.Random(2024)
    for _ in range(1000):
        a11, a12, a22 = (rng.randint(-50, 50) for _ in range(3))
        e1, e2 = rng.choice((1, -1)), rng.choice((1, -1))
        d = rng.randint(0, 1)
        w = lemma21_parameters(a11, a12, a22, e1, e2, d)
        assert conway_from_seifert(lemma21_matrix(a11, a12, a22, e1, e2, d)) == lemma21_closed_form(*w.as_list())


def test_two_clasp_examples():
    assert two_clasp_realizable(ConwayGenus2(-1, 0)) == TwoClaspWitness(1, -1, 0, 1, 0)
    assert two_clasp_realizable(ConwayGenus2(-5, 2)) == NotRealizable()
    assert two_clasp_realizable(ConwayGenus2(0, 0)) == TwoClaspWitness(0, 0, 0, 1, 0)
    assert not NotRealizable()


def test_oracle_examples():
    assert isinstance(two_clasp_realizable_oracle(ConwayGenus2(-1, 0), 2), TwoClaspWitness)
    assert two_clasp_realizable_oracle(ConwayGenus2(-5, 2), 50) == NoneWithin(50)
    assert two_clasp_realizable_oracle(ConwayGenus2(3, 2), 50) == NoneWithin(50)
    with pytest.raises(ClaspError):
        two_clasp_realizable_oracle(ConwayGenus2(0, 0), -1)


def test_search_reaches_several_branches():
    seen = set()
    for m4 in GRID:
        for m2 in GRID:
            w = two_clasp_realizable(ConwayGenus2(m4, m2))
            if w:
                seen.add((w.eps, w.delta))
    assert {(1, 0), (1, 1), (-1, 0)} <= seen


def test_degenerate_difference_of_squares():
    # S^2 = 4 m4 + delta^2 puts the eps=+1 branch on Y = +-X
    w = two_clasp_realizable(ConwayGenus2(1, 2))
    assert w and w.coefficients() == ConwayGenus2(1, 2)
    assert (w.eps, w.delta) == (1, 0)


@settings(max_examples=300, deadline=None)
@given(st.integers(-400, 400), st.integers(-60, 60))
def test_witnesses_reconstruct(m4, m2):
    c = ConwayGenus2(m4, m2)
    w = two_clasp_realizable(c)
    if w:
        assert w.coefficients() == c
        assert lemma21_closed_form(*w.as_list()) == c.poly()
    if mod8_obstruction(c):
        assert not w


@settings(max_examples=200, deadline=None)
@given(st.integers(-15, 15), st.integers(-15, 15), st.integers(-15, 15), st.sampled_from([1, -1]), st.integers(0, 1))
def test_every_closed_form_is_found(b1, b2, b3, eps, delta):
    c = TwoClaspWitness(b1, b2, b3, eps, delta).coefficients()
    assert two_clasp_realizable(c)


@settings(max_examples=100, deadline=None)
@given(st.integers(-30, 30))
def test_one_clasp_implies_two_clasp(b1):
    p = Z(f"{b1}*z^2+1") if b1 else ONE
    assert one_clasp_form(p) == b1
    assert two_clasp_realizable(ConwayGenus2(0, b1))


def test_clasp_bounds_validation():
    assert ClaspBounds(2, 4).upper == 4
    assert ClaspBounds(3, None).upper is None
    with pytest.raises(ClaspError):
        ClaspBounds(4, 2)

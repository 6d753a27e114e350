import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from knotclasp import determinant, invariants
from knotclasp.diagram import connected_sum, crossing_change, mirror, orient, parse_pd, seifert_genus, smooth_oriented
from knotclasp.invariants import (
    InvariantError,
    SeifertMatrix,
    UnknotCertificate,
    alexander,
    alexander_from_seifert,
    conway,
    conway_from_seifert,
    jones,
    kauffman_bracket,
    unknot_certificate,
)
from knotclasp.laurent import ONE, LaurentPoly
from knotclasp.tables import default_records

from conftest import T, Z, add_kink, braid_closure, braid_words

TREFOIL_V = SeifertMatrix.of([[-1, 1], [0, -1]])
FIGURE8_V = SeifertMatrix.of([[1, 1], [0, -1]])
GAP = LaurentPoly({1: 1, -1: -1})  # t^(1/2) - t^(-1/2)

small_table = [r for r in default_records() if r.crossing_number <= 7]


# -- Seifert matrices ------------------------------------------------------


def test_alexander_from_seifert():
    assert alexander_from_seifert(TREFOIL_V) == T("t^2-t+1")
    assert alexander_from_seifert(SeifertMatrix.of([])) == ONE
    from knotclasp.clasp import lemma21_matrix

    assert alexander_from_seifert(lemma21_matrix(0, 0, 0, 1, 1, 0)) == T("t^2")


def test_conway_from_seifert():
    assert conway_from_seifert(TREFOIL_V) == Z("z^2+1")
    assert conway_from_seifert(SeifertMatrix.of([])) == ONE
    assert conway_from_seifert(FIGURE8_V) == Z("-z^2+1")
    with pytest.raises(InvariantError):
        conway_from_seifert(SeifertMatrix.of([[1, 0], [0, 1]]))
    with pytest.raises(InvariantError):
        conway_from_seifert(SeifertMatrix.of([[1]]))


def test_seifert_route_agrees_with_diagrams(trefoil, figure8):
    # the Fox-calculus route is unit-normalized, so chirality drops out
    assert conway(trefoil) == conway_from_seifert(TREFOIL_V)
    assert conway(figure8) == conway_from_seifert(FIGURE8_V)


# -- Alexander / Conway ----------------------------------------------------


def test_alexander_examples(trefoil, figure8):
    assert alexander(trefoil) == T("t-1+t^-1")
    assert alexander(orient(parse_pd(""))) == ONE
    k0 = connected_sum(mirror(trefoil), figure8)
    assert alexander(k0) == T("-t^2+4*t-5+4*t^-1-t^-2")


def test_conway_examples(figure8):
    assert conway(figure8) == Z("-z^2+1")
    assert conway(orient(parse_pd(""))) == ONE


def test_alexander_rejects_links(trefoil):
    with pytest.raises(InvariantError):
        alexander(smooth_oriented(trefoil, 0))


@pytest.mark.parametrize("rec", small_table[::3], ids=lambda r: r.name)
def test_conway_degree_bounded_by_canonical_genus(rec):
    d = orient(rec.pd)
    top = max(conway(d).doubled_terms) // 2
    assert top <= 2 * seifert_genus(d)


# -- determinants (sympy as oracle) ----------------------------------------


def _random_matrix(rng, n):
    return [
        [LaurentPoly({rng.randint(-3, 3) * 2: rng.randint(-4, 4), 0: rng.randint(-2, 2)}) for _ in range(n)]
        for _ in range(n)
    ]


def _to_sympy(m):
    t = sympy.Symbol("t")
    return sympy.Matrix(
        [[sum(c * t ** sympy.Rational(k, 2) for k, c in p.doubled_terms.items()) for p in row] for row in m]
    ), t


@pytest.mark.parametrize("n", [1, 2, 3, 5, 6])
def test_determinant_matches_sympy(n):
    rng = random.Random(n)
    for _ in range(4):
        m = _random_matrix(rng, n)
        got = determinant.det(m)
        sm, t = _to_sympy(m)
        want = sympy.expand(sm.det(method="berkowitz"))
        back = sum(c * t ** sympy.Rational(k, 2) for k, c in got.doubled_terms.items())
        assert sympy.expand(want - back) == 0


def test_bareiss_and_cofactor_agree():
    rng = random.Random(7)
    for n in range(1, 6):
        m = _random_matrix(rng, n)
        assert determinant.det_bareiss(m) == determinant.det_cofactor(m)


def test_bareiss_pivoting_on_zero_diagonal():
    z, o = LaurentPoly(), ONE
    m = [[z, o, z], [o, z, z], [z, z, T("t")]]
    assert determinant.det_bareiss(m) == -T("t")


# -- Kauffman bracket and Jones --------------------------------------------


def test_bracket_unknot_and_r2_pair():
    assert kauffman_bracket(orient(parse_pd(""))) == ONE
    r2 = braid_closure([1, 1, -1], 2)  # unknot with a removable R2 pair
    assert r2.is_knot and jones(r2) == ONE


def test_bracket_trefoil(trefoil):
    # <left trefoil> = A^7 - A^3 - A^-5 after the writhe is known to be -3
    assert kauffman_bracket(trefoil) == LaurentPoly({14: 1, 6: -1, -10: -1})


def test_jones_examples(trefoil, figure8):
    assert jones(mirror(trefoil)) == T("t+t^3-t^4")
    assert jones(figure8) == T("t^-2-t^-1+1-t+t^2")
    k0 = connected_sum(mirror(trefoil), figure8)
    assert jones(k0) == T("t^-1-1+2*t-3*t^2+3*t^3-2*t^4+2*t^5-t^6")


@pytest.mark.parametrize("rec", small_table[::4], ids=lambda r: r.name)
def test_bracket_engines_agree(rec):
    d = orient(rec.pd)
    v = kauffman_bracket(d)
    assert kauffman_bracket(d, method="unionfind") == v
    assert kauffman_bracket(d, method="shadow") == v


def test_bracket_partitioned_state_sum(monkeypatch):
    d = orient(next(r.pd for r in default_records() if r.name == "10_97"))
    whole = kauffman_bracket(d)
    monkeypatch.setattr(invariants, "_BLOCK", 64)
    assert kauffman_bracket(d, workers=3) == whole
    # any split of the counter range sums to the same bracket
    counts = invariants.bracket_state_counts(d, 0, 300)
    counts.update(invariants.bracket_state_counts(d, 300, None))
    assert invariants.bracket_from_counts(counts) == whole


def test_jones_of_links_uses_half_powers(trefoil):
    v = jones(smooth_oriented(trefoil, 0))
    assert all(k % 2 for k in v.doubled_terms)


@settings(max_examples=40, deadline=None)
@given(braid_words(max_strands=4, max_len=8), st.data())
def test_jones_skein_relation(wm, data):
    d = braid_closure(*wm)
    i = data.draw(st.integers(0, d.n_crossings - 1))
    other = crossing_change(d, i)
    plus, minus = (d, other) if d.crossings[i].sign > 0 else (other, d)
    lhs = jones(plus).shift(-2) - jones(minus).shift(2)
    assert lhs == GAP * jones(smooth_oriented(d, i))


@settings(max_examples=40, deadline=None)
@given(braid_words(max_strands=4, max_len=8))
def test_mirror_duality(wm):
    d = braid_closure(*wm)
    assert jones(mirror(d)) == jones(d).inverted()
    if d.is_knot:
        assert conway(mirror(d)) == conway(d)


@pytest.mark.parametrize("a, b", [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2)])
def test_connected_sum_multiplicative(trefoil, figure8, a, b):
    pool = [trefoil, mirror(trefoil), figure8]
    x, y = pool[a], pool[b]
    s = connected_sum(x, y)
    assert conway(s) == conway(x) * conway(y)
    assert jones(s) == jones(x) * jones(y)


# -- Reidemeister invariance -----------------------------------------------


@pytest.mark.parametrize("over", [True, False])
@pytest.mark.parametrize("twist", [1, -1])
def test_reidemeister_one(trefoil, figure8, over, twist):
    for d in (trefoil, figure8):
        for label in (1, 2):
            k = add_kink(d, label, over, twist)
            assert k.n_crossings == d.n_crossings + 1
            assert jones(k) == jones(d)
            assert conway(k) == conway(d)


@pytest.mark.parametrize(
    "word, moved, strands",
    [
        ([1, 1, 1], [1, 1, 1, 1, -1], 2),  # R2 on the right-handed trefoil
        ([1, 1, 1], [1, -1, 1, 1, 1], 2),
        ([1, -2, 1, -2], [1, -2, 2, -2, 1, -2], 3),  # R2 on the figure-eight
        ([1, -2, 1, -2], [1, -2, 1, 1, -1, -2], 3),
    ],
)
def test_reidemeister_two(word, moved, strands):
    a, b = braid_closure(word, strands), braid_closure(moved, strands)
    assert b.n_crossings == a.n_crossings + 2
    assert jones(a) == jones(b) and conway(a) == conway(b)


@pytest.mark.parametrize(
    "left, right",
    [
        ([1, 2, 1, 1, 1, 1], [2, 1, 2, 1, 1, 1]),
        ([1, 2, 1, 1, 1, -2], [2, 1, 2, 1, 1, -2]),
        ([-1, -2, -1, 1, -1, -1], [-2, -1, -2, 1, -1, -1]),
    ],
)
def test_reidemeister_three(left, right):
    a, b = braid_closure(left, 3), braid_closure(right, 3)
    assert a.is_knot and b.is_knot
    assert jones(a) == jones(b) and conway(a) == conway(b)


# -- unknot certificate ----------------------------------------------------


def test_unknot_certificate(trefoil):
    assert unknot_certificate(orient(parse_pd(""))) is UnknotCertificate.TRIVIALLY_CERTIFIED
    assert unknot_certificate(trefoil) is UnknotCertificate.NONTRIVIAL_POLYNOMIAL
    assert unknot_certificate(crossing_change(trefoil, 0)).looks_trivial


def test_unknot_certificate_needs_more_than_greedy_moves():
    # R3 is needed before anything cancels, so the greedy R1/R2 pass stalls
    # and only the polynomials vouch for triviality
    d = braid_closure([1, 1, 1, -2, -1, -2], 3)
    assert d.is_knot
    assert unknot_certificate(d) is UnknotCertificate.POLYNOMIAL_TRIVIAL

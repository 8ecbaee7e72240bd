from hypothesis import given

from conftest import ladders
from mixedladder.exactpoly import monomial
from mixedladder.idealgen import (all_minors, candidate_gb, consecutive_minors, enumerate_minors,
                                  generators)
from mixedladder.ladder import Ladder, derived_lprime


def test_enumerate_counts(L33):
    assert len(enumerate_minors(Ladder.matrix(2, 2, 2), 1)) == 1
    assert len(enumerate_minors(Ladder.matrix(3, 3, 2), 1)) == 9
    one, two = enumerate_minors(L33, 1), enumerate_minors(L33, 2)
    assert len(one) == len(two) == 3
    shared = {(m.rows, m.cols) for m in one} & {(m.rows, m.cols) for m in two}
    assert shared == {((1, 2), (2, 3))}


def test_enumeration_order_is_lex():
    specs = enumerate_minors(Ladder.matrix(3, 3, 2), 1)
    keys = [(m.rows, m.cols) for m in specs]
    assert keys == sorted(keys)


def test_generators(L33):
    lin = L33.with_t([1, 1])
    assert len(generators(lin).gens) == len(lin.cells)
    gens = generators(L33)
    assert len(gens.gens) == 5
    for f, ms in zip(gens.gens, gens.provenance):
        assert f == ms.polynomial()
    dup = [s for s in gens.provenance if (s.rows, s.cols) == ((1, 2), (2, 3))]
    assert [s.home_j for s in dup] == [1]


def test_candidate_gb_one_sided_is_everything():
    L = Ladder(4, 4, [(1, 3), (2, 4)], [(4, 1)], [2])
    assert candidate_gb(L) == enumerate_minors(L, 1)


def test_candidate_gb_three_by_three(L33):
    G = candidate_gb(L33)
    assert len(G) == 5
    homes = sorted(s.home_j for s in G if (s.rows, s.cols) == ((1, 2), (2, 3)))
    assert homes == [1]
    assert len(all_minors(L33)) == 6


def test_candidate_gb_linear_has_no_overlaps(L33):
    G = candidate_gb(L33.with_t([1, 1]))
    assert len(G) == len(L33.cells)
    assert {s.cells for s in G} == {frozenset([c]) for c in L33.cells}


@given(ladders())
def test_leading_terms_are_antidiagonals_inside_l(L):
    for ms in candidate_gb(L):
        assert ms.cells <= L.pieces[ms.home_j - 1]
        assert ms.polynomial().lm == monomial(ms.antidiagonal())


@given(ladders(max_cells=20))
def test_consecutive_minors_biject_onto_lprime(L):
    M = consecutive_minors(L)
    upper_right = {(s.rows[0], s.cols[-1]) for s in M}
    lower_left = {(s.rows[-1], s.cols[0]) for s in M}
    target = derived_lprime(L).cells
    assert upper_right == target
    assert len(lower_left) == len(M) == len(target)

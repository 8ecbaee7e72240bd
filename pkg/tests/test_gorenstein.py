import pytest
from hypothesis import given

from conftest import ladders
from mixedladder.gorenstein import (_hilbert_of, ag_criterion, component_report, index_sets,
                                    is_palindrome, overlap_split_points, reduce_components,
                                    symmetry_oracle, transpose_agrees)
from mixedladder.ladder import Ladder

# one ladder per condition, each breaking only that condition
NEGATIVE = {
    "square": Ladder.matrix(3, 4, 2),
    "lower_corners": Ladder(4, 4, [(1, 4)], [(2, 1), (4, 3)], [2, 2]),
    "upper_corners": Ladder(4, 4, [(1, 2), (3, 4)], [(4, 1)], [2]),
}


def test_reduce_components_examples():
    M = Ladder.matrix(3, 3, 2)
    assert reduce_components(M) == [M]
    blocks = Ladder(4, 4, [(1, 2), (3, 4)], [(2, 1), (4, 3)], [2, 2])
    comps = reduce_components(blocks)
    assert comps == [Ladder.matrix(2, 2, 2)] * 2


def test_overlap_split():
    L = Ladder(3, 4, [(1, 2), (2, 4)], [(2, 1), (3, 2)], [2, 2])
    assert overlap_split_points(L) == [(1, 1)]
    comps = reduce_components(L)
    assert [(c.m, c.n, c.t) for c in comps] == [(2, 2, (2,)), (2, 3, (2,))]
    # shared entries are renamed apart, so the components' sizes add up past |L|
    assert sum(len(c.cells) for c in comps) == len(L.cells) + 1


def test_linear_piece_is_killed():
    L = Ladder(4, 4, [(1, 4)], [(2, 1), (4, 2)], [1, 2])
    rep = ag_criterion(L)
    assert all(min(c.ladder.t) >= 2 or c.linear for c in rep.components)
    assert rep.verdict == symmetry_oracle(L)


@pytest.mark.parametrize("n,t", [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3)])
def test_square_matrices_are_gorenstein(n, t):
    rep = ag_criterion(Ladder.matrix(n, n, t))
    assert rep.verdict and rep.preconditions_met


def test_three_by_three_example(L33):
    J, H, u = index_sets(L33)
    assert (J, H, u) == ([], [], [1, 2])
    rep = component_report(L33)
    assert rep.conditions == {"square": True, "lower_corners": True, "upper_corners": True}
    assert ag_criterion(L33).verdict and symmetry_oracle(L33)


@pytest.mark.parametrize("broken", sorted(NEGATIVE))
def test_negative_controls(broken):
    L = NEGATIVE[broken]
    rep = component_report(L)
    assert all(rep.preconditions.values())
    assert [c for c, ok in rep.conditions.items() if not ok] == [broken]
    assert not ag_criterion(L).verdict
    assert not symmetry_oracle(L)


def test_oracle_examples(L33):
    assert _hilbert_of(Ladder.matrix(2, 2, 2), 1000).h_vector == (1, 1)
    assert symmetry_oracle(Ladder.matrix(2, 2, 2))
    assert not symmetry_oracle(Ladder.matrix(2, 3, 2))
    assert is_palindrome([1, 4, 1]) and not is_palindrome([1, 2])


def test_linear_ladder_is_gorenstein(L33):
    rep = ag_criterion(L33.with_t([1, 1]))
    assert rep.verdict


def test_report_dict_records_agreement(L33):
    rep = ag_criterion(L33)
    rep.oracle_verdict = symmetry_oracle(L33)
    d = rep.to_dict()
    assert d["agree"] is True and d["verdict"] is True


@given(ladders(max_cells=14))
def test_criterion_matches_oracle(L):
    assert ag_criterion(L).verdict == symmetry_oracle(L)


@given(ladders(max_cells=14))
def test_transpose_invariance(L):
    assert transpose_agrees(L)


@given(ladders(max_cells=14))
def test_h_vector_is_multiplicative_over_components(L):
    prod = [1]
    for C in reduce_components(L):
        h = _hilbert_of(C, 100_000).h_vector
        out = [0] * (len(prod) + len(h) - 1)
        for a, x in enumerate(prod):
            for b, y in enumerate(h):
                out[a + b] += x * y
        prod = out
    assert tuple(prod) == _hilbert_of(L, 100_000).h_vector

import pytest

from spined import core, families as F
from spined.errors import ParamOutOfRange
from spined.search import candidate_subsemigroups, search_transversals


def test_adequate_semigroup_is_its_own_transversal():
    S = F.semilattice_chain(3)
    found = {f.subset: f for f in search_transversals(S)}
    an = found[frozenset(S)].analysis
    assert an.set_L == an.set_R == frozenset(S)


def test_rectangular_band_2x2_singletons():
    S = F.rectangular_band(2, 2)
    found = search_transversals(S, exhaustive=True)
    assert [sorted(f.subset) for f in found] == [[0], [1], [2], [3]]
    assert all(f.analysis.quasi_ideal and f.analysis.multiplicative for f in found)


def test_brandt_includes_itself():
    B = F.brandt_b2()
    assert frozenset(B) in {f.subset for f in search_transversals(B)}


def test_exhaustive_candidates_are_all_closed_subsets():
    S = F.semilattice_chain(3)
    assert len(candidate_subsemigroups(S, exhaustive=True)) == 7
    B = F.brandt_b2()
    assert all(core.is_closed(B, U) for U in candidate_subsemigroups(B, 2))


def test_up_to_iso_dedup():
    S = F.rectangular_band(3, 3)
    assert len(search_transversals(S)) == 9
    assert len(search_transversals(S, up_to_iso=True)) == 1


def test_limits():
    with pytest.raises(ParamOutOfRange):
        candidate_subsemigroups(F.full_transformation_monoid(3), exhaustive=True)
    with pytest.raises(ParamOutOfRange):
        candidate_subsemigroups(F.trivial(), 0)

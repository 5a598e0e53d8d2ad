import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clique_measure import budget
from clique_measure.errors import BudgetExceeded, ContractError
from clique_measure.vcdim import (
    SetFamily,
    f2_solution_family,
    halfspace_family,
    is_shattered,
    ptf_family,
    reference_line_families,
    sauer_shelah_check,
    vc_dimension,
    vc_report_csv,
)


def test_is_shattered_examples():
    assert is_shattered(SetFamily.from_sets([1, 2], [[]]), [])
    assert not is_shattered(SetFamily.from_sets([1, 2], []), [])
    assert is_shattered(SetFamily.from_sets([1, 2], [[], [1], [2], [1, 2]]), [1, 2])
    assert not is_shattered(SetFamily.from_sets([1, 2], [[1], [2]]), [1, 2])
    with pytest.raises(ContractError):
        is_shattered(SetFamily.from_sets([1, 2], [[1]]), [3])


def test_vc_examples():
    for d in range(1, 6):
        assert vc_dimension(SetFamily.power_set(range(d))) == d
    assert vc_dimension(SetFamily.from_sets(range(5), [[i] for i in range(5)])) == 1
    assert vc_dimension(SetFamily.from_sets(range(3), [])) == -1
    assert vc_dimension(halfspace_family(2, 4)) == 3


def test_sauer_shelah_examples():
    size, bound, ok = sauer_shelah_check(SetFamily.power_set(range(4)))
    assert ok and size == bound == 16
    fam = SetFamily.from_sets(range(5), [[]] + [[i] for i in range(5)])
    assert sauer_shelah_check(fam) == (6, 6, True)


def test_reference_families():
    assert vc_dimension(reference_line_families("f2_affine", 2)) == 2
    assert vc_dimension(reference_line_families("f2_affine", 3)) == 3
    assert vc_dimension(f2_solution_family(2, affine=True)) == 3
    assert vc_dimension(reference_line_families("halfspace", 3, 2)) == 4
    assert ptf_family(2, 1, 2) == halfspace_family(2, 2)
    with pytest.raises(ContractError):
        reference_line_families("circle", 2)
    with pytest.raises(ContractError):
        reference_line_families("halfspace", 5)


@given(st.integers(1, 6), st.lists(st.integers(0, 63), max_size=40))
@settings(max_examples=100, deadline=None)
def test_sauer_shelah_random(g, members):
    fam = SetFamily(tuple(range(g)), tuple(m & ((1 << g) - 1) for m in members))
    size, bound, ok = sauer_shelah_check(fam)
    assert ok


@given(st.integers(1, 5), st.lists(st.integers(0, 31), min_size=1, max_size=20))
@settings(max_examples=60, deadline=None)
def test_vc_is_downward_consistent(g, members):
    fam = SetFamily(tuple(range(g)), tuple(m & ((1 << g) - 1) for m in members))
    d = vc_dimension(fam)
    assert 1 << d <= len(fam)


def test_budget_guard():
    budget.set_budget(3)
    try:
        with pytest.raises(BudgetExceeded):
            vc_dimension(SetFamily.power_set(range(6)))
    finally:
        budget.set_budget(None)


def test_report_csv():
    text = vc_report_csv([("halfspace", 2, halfspace_family(2, 4))])
    assert text.splitlines() == ["kind,dim,family_size,vc,sauer_ok", "halfspace,2,14,3,1"]

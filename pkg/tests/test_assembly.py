import itertools

import pytest
from hypothesis import given, strategies as st

from mcg_farrell.assembly import (
    AltSet,
    ClassReport,
    FarrellReport,
    PeriodicCohomology,
    PGroup,
    farrell,
    normalizer_cohomology,
    paper_results,
    select_rule,
    split_product,
)
from mcg_farrell.cohen import GradedDims
from mcg_farrell.errors import DomainError, UnsupportedCase
from mcg_farrell.fpdata import FixedPointData, enumerate_classes
from mcg_farrell.rh import RHSolution

from oracles import class_count


def pc(even, odd, p):
    return PeriodicCohomology.parse(even, odd, p)


def test_pgroup_parse_and_str():
    g = PGroup.parse("3Z/3+2Z/9", 3)
    assert g.exponents == (1, 1, 1, 2, 2)
    assert str(g) == "3Z/3 ⊕ 2Z/9"
    assert g.order == 3 ** 7
    assert str(PGroup.parse("0", 5)) == "0"
    assert PGroup.parse("Z/p", 7) == PGroup(7, (1,))
    assert PGroup.parse("3Z/3 ⊕ 2Z/9", 3) == g
    with pytest.raises(DomainError):
        PGroup.parse("Z/6", 3)
    with pytest.raises(DomainError):
        PGroup(3, (0,))


def test_pgroup_sum():
    assert PGroup(3, (1,)) + PGroup(3, (2,)) == PGroup(3, (2, 1))
    with pytest.raises(DomainError):
        PGroup(3, (1,)) + PGroup(5, (1,))


def test_altset_equal_orders():
    with pytest.raises(DomainError):
        AltSet((PGroup(3, (1,)), PGroup(3, (1, 1))))
    with pytest.raises(DomainError):
        AltSet(())


def test_altset_dedup_and_sort():
    a = AltSet((PGroup(3, (2, 1, 1, 1, 1, 1)), PGroup(3, (1,) * 7), PGroup(3, (1,) * 7)))
    assert [str(x) for x in a.alternatives] == ["7Z/3", "5Z/3 ⊕ Z/9"]
    assert str(a) == "7Z/3 or 5Z/3 ⊕ Z/9"


def test_altset_cartesian_sum():
    two = AltSet((PGroup(3, (1, 1)), PGroup(3, (2,))))
    total = two
    for _ in range(4):
        total = total + two
    # five independent classes give k = 0..5 copies of Z/9
    assert [sum(e == 2 for e in g.exponents) for g in total.alternatives] == [0, 1, 2, 3, 4, 5]
    assert total + AltSet.zero(3) == total


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4), st.lists(st.integers(0, 3), min_size=1, max_size=4))
def test_altset_sum_orders(a, b):
    def alt(ks):
        groups = [PGroup(3, (1,) * (6 - 2 * k) + (2,) * k) for k in ks]
        return AltSet(tuple(groups))

    total = alt(a) + alt(b)
    assert total.order == alt(a).order * alt(b).order
    assert len({g.order for g in total.alternatives}) == 1


def test_split_product():
    r = split_product(GradedDims((1, 5, 6)), 3)
    assert r == pc(["7Z/3", "5Z/3+Z/9"], ["5Z/3"], 3)
    assert split_product(GradedDims((1,)), 5) == pc(["Z/5"], ["0"], 5)
    with pytest.raises(UnsupportedCase):
        split_product(GradedDims((1,), (1,)), 2)


def fp(text, p):
    return FixedPointData.parse(text, p)


@pytest.mark.parametrize(
    "data, h, t, p, rule, even, odd",
    [
        ("(1,1,1|1,2)", 0, 5, 3, "R1", ["7Z/3", "5Z/3+Z/9"], ["5Z/3"]),
        ("(1|2)", 1, 2, 3, "R6", ["Z/3"], ["0"]),
        ("(1,1|1,1)", 0, 4, 2, "R7", ["Z/4"], ["Z/2"]),
        ("(1,1,1|1)", 0, 4, 2, "R7", ["Z/2"], ["2Z/2"]),
        ("(1|1,3)", 0, 3, 5, "R5", ["Z/5"], ["0"]),
        ("(1|1,2,2)", 0, 4, 3, "R2", ["2Z/3"], ["Z/3"]),
        ("(1,1|1,1,2)", 0, 5, 3, "R3", ["4Z/3", "2Z/3+Z/9"], ["3Z/3"]),
        ("(1,2|1,1,1)", 0, 5, 3, "R4", ["Z/3+Z/9"], ["Z/3"]),
        ("(1|1,1,1,2)", 0, 5, 3, "R4", ["Z/3+Z/9"], ["Z/3"]),
        ("(1,1,2,2|)", 0, 4, 3, "R1", ["Z/3"], ["2Z/3"]),
    ],
)
def test_normalizer_rules(data, h, t, p, rule, even, odd):
    rep = normalizer_cohomology(fp(data, p), RHSolution(h, t))
    assert rep.rule == rule
    assert rep.normalizer == pc(even, odd, p)


@pytest.mark.parametrize(
    "data, h, t, p",
    [
        ("(1|1,1,1,1,1)", 0, 6, 2),  # 2-primary part in genus 2
        ("(1|1,1,1)", 0, 4, 2),  # Sigma_3 at p = 2
        ("(1|1,1,2,2,2)", 0, 6, 3),  # two repeated values
    ],
)
def test_unsupported_rules(data, h, t, p):
    with pytest.raises(UnsupportedCase) as err:
        select_rule(fp(data, p), RHSolution(h, t))
    assert str(fp(data, p)) in str(err.value)


def test_unsupported_propagates_from_farrell():
    with pytest.raises(UnsupportedCase):
        farrell(2, 1, 2)
    with pytest.raises(UnsupportedCase):
        farrell(1, 1, 2)


def test_farrell_input_validation():
    with pytest.raises(DomainError):
        farrell(0, 1, 3)
    with pytest.raises(DomainError):
        farrell(2, 0, 3)
    with pytest.raises(DomainError):
        farrell(2, 1, 4)


@pytest.mark.parametrize(
    "g, i, p, even, odd",
    [
        (2, 2, 3, ["3Z/3"], ["3Z/3"]),
        (3, 1, 3, ["3Z/3+2Z/9"], ["2Z/3"]),
        (5, 1, 5, ["Z/5"], ["0"]),
        (2, 7, 3, ["0"], ["0"]),
        (2, 1, 5, ["2Z/5"], ["0"]),
    ],
)
def test_farrell_examples(g, i, p, even, odd):
    rep = farrell(g, i, p)
    assert rep.engine_total == pc(even, odd, p)
    assert not rep.discrepancy


def test_farrell_six_alternatives():
    rep = farrell(3, 4, 3)
    assert len(rep.engine_total.even.alternatives) == 6
    assert str(rep.engine_total.even.alternatives[-1]) == "25Z/3 ⊕ 5Z/9"
    assert rep.engine_total.odd == AltSet.parse(["25Z/3"], 3)


def test_farrell_discrepancy():
    rep = farrell(3, 2, 3)
    assert rep.discrepancy
    assert rep.engine_total == pc(["7Z/3+2Z/9", "5Z/3+3Z/9"], ["5Z/3"], 3)
    assert rep.paper_total == pc(["6Z/3+Z/9", "4Z/3+2Z/9"], ["4Z/3"], 3)
    # dropping one Sigma_3 class gives the stated total
    r4 = [c for c in rep.classes if c.rule == "R4"]
    assert len(r4) == 2
    assert rep.paper_total + r4[0].normalizer == rep.engine_total


SUPPORTED = [
    (g, i, p)
    for g in (1, 2, 3)
    for i in range(1, 11)
    for p in (2, 3, 5, 7)
    if p != 2 or g == 1
    if (g, i, p) != (1, 1, 2)
] + [(p, i, p) for p in (5, 7, 11) for i in range(1, 5)]


@pytest.mark.parametrize("g, i, p", SUPPORTED)
def test_farrell_invariants(g, i, p):
    rep = farrell(g, i, p)
    assert len(rep.classes) == class_count(g, i, p)
    total = PeriodicCohomology.zero(p)
    for c in rep.classes:
        for alt in (c.normalizer.even, c.normalizer.odd):
            assert len({x.order for x in alt.alternatives}) == 1
        total = total + c.normalizer
    assert total == rep.engine_total
    # removing a class divides the total order by its contribution
    for k, c in enumerate(rep.classes):
        rest = PeriodicCohomology.zero(p)
        for j, other in enumerate(rep.classes):
            if j != k:
                rest = rest + other.normalizer
        assert rest.even.order * c.normalizer.even.order == rep.engine_total.even.order
        assert rest.odd.order * c.normalizer.odd.order == rep.engine_total.odd.order
    assert rep.discrepancy == ((g, i, p) == (3, 2, 3))


def test_vanishing_rows():
    for g, i, p in itertools.chain(
        ((1, i, p) for i in range(5, 9) for p in (2, 3)),
        ((2, i, p) for i in range(7, 10) for p in (3, 5)),
        ((3, i, p) for i in range(9, 12) for p in (3, 5, 7)),
        ((3, i, 5) for i in range(1, 9)),
        ((p, i, p) for p in (5, 7, 11) for i in range(3, 6)),
    ):
        assert farrell(g, i, p).engine_total.is_zero, (g, i, p)


def test_report_json_round_trip():
    for args in [(3, 2, 3), (1, 2, 2), (2, 7, 3), (3, 4, 3)]:
        rep = farrell(*args)
        assert FarrellReport.from_dict(rep.to_dict()) == rep


def test_class_report_round_trip():
    rep = farrell(3, 3, 3).classes[0]
    assert ClassReport.from_dict(rep.to_dict()) == rep


def test_report_schema():
    d = farrell(3, 2, 3).to_dict()
    assert set(d) == {"g", "i", "p", "classes", "even", "odd", "paper", "discrepancy"}
    assert set(d["classes"][0]) == {"data", "h", "t", "sym", "rule", "even", "odd"}
    assert d["even"] == [[1, 1, 1, 1, 1, 1, 1, 2, 2], [1, 1, 1, 1, 1, 2, 2, 2]]
    assert d["discrepancy"] is True
    assert "paper" not in farrell(1, 1, 3).to_dict()


def test_stated_totals_lookup():
    res = paper_results()
    assert res.total(3, 6, 3)[0].is_zero
    assert res.total(7, 2, 7)[0] == pc(["Z/7"], ["0"], 7)
    assert res.total(1, 1, 3) is None
    assert res.reference(1, 1, 2)[0] == pc(["Z/4"], ["0"], 2)


def test_classes_ordered_as_enumerated():
    rep = farrell(3, 3, 3)
    assert [c.data for c in rep.classes] == [d for d, _ in enumerate_classes(3, 3, 3)]

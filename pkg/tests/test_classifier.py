"""Classification rules, center propagation, and implication consistency."""

from semitop.builders import (
    adjoin_identity,
    left_zero,
    standard_finite_corpus,
    stream_corpus,
    zero_semigroup,
)
from semitop.classify import classify, implication_violations
from semitop.core import Budget
from semitop.corpus import enumerate_finite
from semitop.predicates import FAILS, HOLDS, UNKNOWN

BUDGET = Budget(64, 2048)
STREAMS = dict(stream_corpus())

THEOREM_KINDS = (
    "C_closed", "ideally_projectively_closed", "injective_T1S",
    "injective_T2S", "absolute_T1S",
)


def test_finite_commutative_inputs_get_definite_positives():
    for name, S in standard_finite_corpus():
        if not S.commutative:
            continue
        report = classify(S, name=name)
        for kind in THEOREM_KINDS:
            v = report.theorems[kind]
            assert v.holds, (name, kind, v.status, v.witness)


def test_noncommutative_finite_is_conservatively_unknown():
    for S in (left_zero(2), adjoin_identity(left_zero(2))):
        report = classify(S)
        assert report.commutative.fails
        for kind in THEOREM_KINDS:
            v = report.theorems[kind]
            assert v.status == UNKNOWN and v.witness["kind"] == "inapplicable"


def test_chain_growth_refutes_closedness():
    report = classify(STREAMS["natmin"], BUDGET, name="natmin")
    v = report.theorems["C_closed"]
    assert v.fails and v.source == "search"
    assert v.witness["failing"] == ["chain_finite"]


def test_aperiodicity_refutes_closedness_by_declaration():
    report = classify(STREAMS["natplus"], BUDGET, name="natplus")
    v = report.theorems["C_closed"]
    assert v.fails and v.source == "declared"
    assert v.witness["failing"] == ["periodic"]


def test_singular_prefix_refutes_closedness():
    report = classify(STREAMS["nullstream"], BUDGET, name="nullstream")
    v = report.theorems["C_closed"]
    assert v.fails and v.source == "search"
    assert v.witness["failing"] == ["nonsingular"]
    # one idempotent, so the unipotent specialization fires and agrees
    assert report.unipotent.holds
    assert report.theorems["unipotent_C_closed"].fails


def test_infinite_subgroup_refutes_injective_closedness():
    report = classify(STREAMS["intadd"], BUDGET, name="intadd")
    v = report.theorems["injective_T2S"]
    assert v.fails and v.source == "search"
    assert "group_finite" in v.witness["failing"]
    assert report.theorems["C_closed"].fails


def test_flat_stream_is_closed_but_not_injectively():
    report = classify(STREAMS["flat"], BUDGET, name="flat")
    assert report.theorems["C_closed"].holds
    assert report.theorems["C_closed"].source == "declared"
    v = report.theorems["injective_T1S"]
    assert v.fails and v.source == "search"
    assert v.witness["failing"] == ["clifford_finite"]
    # infinite, so absolute closedness fails outright
    assert report.theorems["absolute_T1S"].fails
    assert report.theorems["absolute_T1S"].source == "declared"


def test_noncommutative_stream_blocked_through_center():
    report = classify(STREAMS["prodcenter"], BUDGET, name="prodcenter")
    assert report.commutative.fails
    assert not report.center.empty
    for kind in THEOREM_KINDS:
        v = report.theorems[kind]
        assert v.fails, kind
        assert v.witness["kind"] == "center_necessary"
        assert "chain_finite" in v.witness["failing"]["failing"]


def test_unipotent_rule_agrees_with_general_rule():
    report = classify(zero_semigroup(4))
    assert report.unipotent.holds
    general = report.theorems["C_closed"].status
    special = report.theorems["unipotent_C_closed"].status
    assert general == special == HOLDS


def test_no_implication_violations_on_corpus():
    for name, S in standard_finite_corpus():
        assert implication_violations(classify(S, name=name)) == [], name
    for name, S in STREAMS.items():
        assert implication_violations(classify(S, BUDGET, name=name)) == [], name


def test_no_implication_violations_on_enumerated_order3():
    for S in enumerate_finite(3):
        report = classify(S)
        assert implication_violations(report) == []
        if S.commutative:
            assert report.theorems["absolute_T1S"].holds
            assert report.theorems["injective_T1S"].holds


def test_statuses_cover_all_three_values():
    seen = set()
    for name, S in STREAMS.items():
        for v in classify(S, BUDGET, name=name).theorems.values():
            seen.add(v.status)
    assert seen == {HOLDS, FAILS, UNKNOWN}

"""Closedness classification built from the characterization rules.

Each rule is a conjunction of predicate verdicts, valid as an equivalence
only over commutative inputs.  Noncommutative inputs still get definite
negatives through the center: failure of a necessary condition on the
center subsemigroup refutes every closedness property downstream of it.
Everything else stays Unknown rather than guessing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .core import (
    DEFAULT_BUDGET,
    Budget,
    StreamSemigroup,
    build_stream,
    carrier_prefix,
    is_finite,
    restrict,
)
from .predicates import (
    FAILS,
    HOLDS,
    UNKNOWN,
    Verdict,
    conjunction_status,
    evaluate_suite,
    negation_status,
)

THEOREM_RULES = {
    # closed in every host class between the zero-separation and T1 classes
    "C_closed": ("chain_finite", "nonsingular", "periodic", "group_bounded"),
    "ideally_projectively_closed": ("chain_finite", "group_bounded",
                                    "clifford_plus_finite"),
    "injective_T1S": ("commutative", "bounded", "nonsingular", "clifford_finite"),
    "injective_T2S": ("chain_finite", "group_finite", "bounded", "nonsingular",
                      "!clifford_singular"),
}

# sound one-way implications between the classified properties
CHAIN_EDGES = [
    ("absolute_T1S", "injective_T1S"),
    ("injective_T1S", "ideally_projectively_closed"),
    ("ideally_projectively_closed", "C_closed"),
    ("injective_T1S", "injective_T2S"),
]


@dataclass
class CenterAnalysis:
    """Necessary-condition analysis of the center subsemigroup."""

    empty: bool
    prefix_certified: bool
    suite: Optional[dict]
    closed_necessary: Optional[Verdict]
    injective_necessary: Optional[Verdict]
    center_finite: Verdict


@dataclass
class ClassificationReport:
    name: str
    commutative: Verdict
    unipotent: Verdict
    finite: Verdict
    suite: dict
    theorems: dict
    center: CenterAnalysis
    notes: list = field(default_factory=list)


def finiteness(S, budget=DEFAULT_BUDGET):
    """Is the carrier finite?  Enumerator exhaustion certifies yes; infinite
    streams declare no; otherwise Unknown at bound."""
    if is_finite(S):
        return Verdict(HOLDS, "finite", {"kind": "finite", "size": S.size}, budget)
    probe = list(itertools.islice(S.enumerate_carrier(), budget.elements + 1))
    if len(probe) <= budget.elements:
        return Verdict(HOLDS, "search",
                       {"kind": "enumerator_exhausted", "size": len(probe)}, budget)
    facts = S.declared_facts or {}
    if "finite" in facts:
        value = bool(facts["finite"])
        return Verdict(HOLDS if value else FAILS, "declared",
                       {"kind": "declared", "fact": "finite", "value": value,
                        "evidence": {"prefix_at_least": len(probe)}}, budget)
    return Verdict(UNKNOWN, "search",
                   {"kind": "prefix_only", "prefix_at_least": len(probe)}, budget)


def center_subsemigroup(S, budget=DEFAULT_BUDGET):
    """A handle for the center, or None when it is (certified) empty.

    Commutative handles are their own center.  A finite handle restricts
    exactly.  A stream filters its enumerator through certification against
    a fixed prefix, which is sound only at bound; declared center facts ride
    along via ``center_facts``."""
    if is_finite(S):
        if S.commutative:
            return S, True
        codes = S.center_codes
        if not codes:
            return None, True
        sub, _ = restrict(S, codes)
        return sub, True
    facts = S.declared_facts or {}
    if facts.get("commutative"):
        return S, False
    witnesses = carrier_prefix(S, min(64, budget.elements))
    memo = {}

    def certified_central(z):
        if z not in memo:
            memo[z] = all(S.mul(z, x) == S.mul(x, z) for x in witnesses)
        return memo[z]

    def gen():
        return (z for z in S.enumerate_carrier() if certified_central(z))

    probe = list(itertools.islice(gen(), 1))
    if not probe:
        return None, False
    handle = build_stream(f"center({S.name})", S.mul_fn, gen, S.label_fn,
                          declared_facts=S.center_facts or {})
    return handle, False


def _pick_source(verdicts, status):
    if status == FAILS:
        for v in verdicts:
            if v.fails:
                return v.source
    if all(v.source == "finite" for v in verdicts):
        return "finite"
    if any(v.source == "declared" for v in verdicts):
        return "declared"
    return "search"


def _conjunction_verdict(suite, criteria, budget, extra_note=""):
    parts = []
    shown = []
    for crit in criteria:
        negated = crit.startswith("!")
        name = crit.lstrip("!")
        v = suite[name]
        status = negation_status(v.status) if negated else v.status
        parts.append((crit, status, v))
        shown.append(crit)
    status = conjunction_status(s for _, s, _ in parts)
    witness = {
        "kind": "conjunction",
        "criteria": shown,
        "failing": [c for c, s, _ in parts if s == FAILS],
        "unknown": [c for c, s, _ in parts if s == UNKNOWN],
    }
    source = _pick_source([v for _, _, v in parts], status)
    return Verdict(status, source, witness, budget, note=extra_note)


def _center_blocked(kind, analysis, budget):
    """Definite negative propagated from the center, if any."""
    if analysis is None:
        return None
    if kind in ("C_closed", "ideally_projectively_closed"):
        necessary = analysis.closed_necessary
    else:
        necessary = analysis.injective_necessary
    if necessary is not None and necessary.fails:
        return Verdict(FAILS, necessary.source,
                       {"kind": "center_necessary", "failing": necessary.witness},
                       budget, note="a necessary condition fails on the center")
    if kind == "absolute_T1S" and analysis.center_finite.fails:
        return Verdict(FAILS, analysis.center_finite.source,
                       {"kind": "center_infinite",
                        "evidence": analysis.center_finite.witness},
                       budget, note="the center is infinite")
    return None


def center_necessary_conditions(S, budget=DEFAULT_BUDGET, suite=None):
    """Evaluate the predicate suite on the center and derive the negatives
    it forces for the whole semigroup.  ``suite`` lets a caller share an
    already computed suite when the center is the whole carrier."""
    handle, exact = center_subsemigroup(S, budget)
    if handle is None:
        return CenterAnalysis(empty=True, prefix_certified=not exact, suite=None,
                              closed_necessary=None, injective_necessary=None,
                              center_finite=Verdict(HOLDS, "finite",
                                                    {"kind": "empty_center"}, budget))
    if handle is S:
        csuite = suite or evaluate_suite(handle, budget)
        cfin = finiteness(S, budget)
    else:
        small = Budget(elements=min(128, budget.elements),
                       steps=min(2048, budget.steps))
        csuite = evaluate_suite(handle, small)
        cfin = finiteness(handle, small)
        declared = S.declared_facts if isinstance(S, StreamSemigroup) else None
        if cfin.status == UNKNOWN and declared and "center_finite" in declared:
            value = bool(declared["center_finite"])
            cfin = Verdict(HOLDS if value else FAILS, "declared",
                           {"kind": "declared", "fact": "center_finite",
                            "value": value}, budget)
    closed = _conjunction_verdict(
        csuite, ("chain_finite", "periodic", "nonsingular"), budget,
        extra_note="necessary on the center for closedness")
    injective = _conjunction_verdict(
        csuite, ("chain_finite", "periodic", "nonsingular", "group_finite"), budget,
        extra_note="necessary on the center for injective closedness")
    return CenterAnalysis(empty=False, prefix_certified=not is_finite(S),
                          suite=csuite, closed_necessary=closed,
                          injective_necessary=injective, center_finite=cfin)


def classify(S, budget=DEFAULT_BUDGET, name=None):
    """Full classification: predicate suite, rule verdicts, center analysis."""
    suite = evaluate_suite(S, budget)
    commutative = suite["commutative"]
    unip = suite["unipotent"]
    fin = finiteness(S, budget)
    center = center_necessary_conditions(S, budget, suite=suite)
    notes = []
    theorems = {}

    def rule(kind, criteria):
        if commutative.holds:
            theorems[kind] = _conjunction_verdict(suite, criteria, budget)
            return
        blocked = _center_blocked(kind, center, budget)
        if blocked is not None:
            theorems[kind] = blocked
            return
        note = ("commutativity unknown" if commutative.status == UNKNOWN
                else "noncommutative: equivalence unavailable, center passes")
        theorems[kind] = Verdict(UNKNOWN, commutative.source,
                                 {"kind": "inapplicable",
                                  "commutative": commutative.status}, budget,
                                 note=note)

    for kind, criteria in THEOREM_RULES.items():
        rule(kind, criteria)

    # absolute closedness: for commutative inputs, exactly finiteness
    if commutative.holds:
        status = fin.status
        witness = {"kind": "finiteness", "finite": fin.status,
                   "center_finite": center.center_finite.status,
                   "evidence": fin.witness}
        theorems["absolute_T1S"] = Verdict(status, fin.source, witness, budget)
    else:
        blocked = _center_blocked("absolute_T1S", center, budget)
        theorems["absolute_T1S"] = blocked or Verdict(
            UNKNOWN, commutative.source,
            {"kind": "inapplicable", "commutative": commutative.status,
             "center_finite": center.center_finite.status}, budget,
            note="noncommutative: finiteness rule needs commutativity")

    # one-idempotent specializations agree with the general rules
    if unip.holds and commutative.holds:
        theorems["unipotent_C_closed"] = _conjunction_verdict(
            suite, ("bounded", "nonsingular"), budget)
        theorems["unipotent_injective_C_closed"] = _conjunction_verdict(
            suite, ("bounded", "nonsingular", "group_finite"), budget)
    else:
        why = "inapplicable: needs one idempotent and commutativity"
        for kind in ("unipotent_C_closed", "unipotent_injective_C_closed"):
            theorems[kind] = Verdict(UNKNOWN, unip.source,
                                     {"kind": "inapplicable",
                                      "unipotent": unip.status,
                                      "commutative": commutative.status},
                                     budget, note=why)

    report = ClassificationReport(
        name=name or getattr(S, "name", f"finite[{getattr(S, 'size', '?')}]"),
        commutative=commutative, unipotent=unip, finite=fin, suite=suite,
        theorems=theorems, center=center, notes=notes)
    report.notes.extend(_consistency_notes(report))
    return report


def implication_violations(report):
    """Pairs breaking the one-way implications among definite verdicts."""
    t = report.theorems
    out = []
    for a, b in CHAIN_EDGES:
        if t[a].holds and t[b].fails:
            out.append((a, b))
    if (report.unipotent.holds and report.commutative.holds
            and t["unipotent_C_closed"].definite and t["C_closed"].definite
            and t["unipotent_C_closed"].status != t["C_closed"].status):
        out.append(("unipotent_C_closed", "C_closed"))
    return out


def _consistency_notes(report):
    broken = implication_violations(report)
    return [f"implication violated: {a} holds but {b} fails" for a, b in broken]

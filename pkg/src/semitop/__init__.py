"""Structure, closedness classification, and shift topologization of
finite and stream semigroups."""

from .core import (
    DEFAULT_BUDGET,
    BoundedSet,
    Budget,
    CarrierSet,
    FiniteSemigroup,
    IdempotentPoset,
    StreamSemigroup,
    adjoin_identity,
    adjoin_zero,
    build_finite,
    build_stream,
    carrier_prefix,
    center,
    central_idempotents,
    clifford_parts,
    direct_product,
    group_inverse,
    h_class,
    idempotents,
    is_finite,
    monogenic,
    natural_order,
    power_projection,
    restrict,
)
from .predicates import FAILS, HOLDS, UNKNOWN, Verdict, evaluate_suite
from .classify import ClassificationReport, classify, implication_violations
from .quotients import congruence_closure, quotient, rees_quotient
from .topology import (
    EBase,
    ShiftNeighborhood,
    certify_topology,
    ebase_E,
    ebase_H,
    ebase_Z,
    find_nonisolated_idempotent,
    is_regular,
    left_quotient,
    replay_certificate,
    shift,
    sufficient_regularity,
    topologizability_verdict,
    validate_remote_base,
)
from .corpus import (
    ReportDocument,
    dedupe_iso,
    enumerate_finite,
    parse_cayley,
    read_report,
    scan_corpus,
    write_report,
)
from . import builders, errors

__version__ = "0.1.0"

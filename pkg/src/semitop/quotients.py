"""Ideals, congruences, and the two quotient constructions (finite handles).

A congruence is carried around as a canonical partition: blocks sorted by
least element, elements sorted inside each block.  That makes congruence
lists comparable across independently computed enumerations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import FiniteSemigroup, build_finite, _require_finite
from .errors import IllDefinedQuotient, NotAnIdeal, SizeCapExceeded

ENUMERATION_CAP = 6  # partition count explodes past this


@dataclass(frozen=True)
class Congruence:
    blocks: tuple

    @property
    def class_index(self):
        out = {}
        for ci, block in enumerate(self.blocks):
            for x in block:
                out[x] = ci
        return out

    def __len__(self):
        return len(self.blocks)


def _canonical_blocks(blocks):
    blocks = [tuple(sorted(b)) for b in blocks]
    blocks.sort(key=lambda b: b[0])
    return tuple(blocks)


def _compatible(S, cls):
    n = S.size
    for x in range(n):
        for y in range(n):
            if cls[x] != cls[y]:
                continue
            for a in range(n):
                if cls[S.mul(a, x)] != cls[S.mul(a, y)]:
                    return (a, x, y, "left")
                if cls[S.mul(x, a)] != cls[S.mul(y, a)]:
                    return (a, x, y, "right")
    return None


def congruence_from_partition(S, blocks):
    """Validate a partition as a congruence; raises IllDefinedQuotient with
    the incompatible translation otherwise."""
    _require_finite(S, "congruence_from_partition")
    blocks = _canonical_blocks(blocks)
    seen = sorted(x for b in blocks for x in b)
    if seen != list(S.elements()):
        raise IllDefinedQuotient("blocks do not partition the carrier")
    cls = {}
    for ci, b in enumerate(blocks):
        for x in b:
            cls[x] = ci
    bad = _compatible(S, cls)
    if bad is not None:
        raise IllDefinedQuotient(f"translation by {bad[0]} separates merged pair "
                                 f"{bad[1]} ~ {bad[2]} ({bad[3]} side)")
    return Congruence(blocks)


def congruence_closure(S, pairs):
    """Least congruence merging the given pairs: union-find plus a worklist
    propagating both translations of every merge."""
    _require_finite(S, "congruence_closure")
    parent = list(S.elements())

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = [tuple(p) for p in pairs]
    while queue:
        x, y = queue.pop()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        parent[ry] = rx
        for a in S.elements():
            queue.append((S.mul(a, x), S.mul(a, y)))
            queue.append((S.mul(x, a), S.mul(y, a)))
    groups = {}
    for x in S.elements():
        groups.setdefault(find(x), []).append(x)
    return Congruence(_canonical_blocks(groups.values()))


def _partitions(n):
    """Set partitions of range(n) by restricted growth strings."""

    def rec(i, maxblock, rgs):
        if i == n:
            blocks = {}
            for idx, b in enumerate(rgs):
                blocks.setdefault(b, []).append(idx)
            yield list(blocks.values())
            return
        for b in range(maxblock + 2):
            rgs.append(b)
            yield from rec(i + 1, max(maxblock, b), rgs)
            rgs.pop()

    if n == 0:
        return
    yield from rec(1, 0, [0])


def enumerate_congruences(S, cap=ENUMERATION_CAP):
    """Every congruence, by filtering all partitions.  Refuses to run past
    the size cap where the partition count explodes."""
    _require_finite(S, "enumerate_congruences")
    if S.size > cap:
        raise SizeCapExceeded(f"congruence enumeration capped at size {cap}")
    out = []
    for blocks in _partitions(S.size):
        cls = {}
        for ci, b in enumerate(blocks):
            for x in b:
                cls[x] = ci
        if _compatible(S, cls) is None:
            out.append(Congruence(_canonical_blocks(blocks)))
    return out


def quotient(S, congruence):
    """The quotient semigroup and the code map carrier -> quotient code."""
    _require_finite(S, "quotient")
    blocks = congruence.blocks
    cls = congruence.class_index
    rows = []
    for b in blocks:
        rep = b[0]
        rows.append([cls[S.mul(rep, c[0])] for c in blocks])
    # well-definedness guard: every representative choice must agree
    for bi, b in enumerate(blocks):
        for x in b:
            for cj, c in enumerate(blocks):
                for y in c:
                    if cls[S.mul(x, y)] != rows[bi][cj]:
                        raise IllDefinedQuotient(
                            f"product of classes {bi}, {cj} depends on representatives")
    labels = []
    for b in blocks:
        labels.append(S.labels[b[0]] if len(b) == 1
                      else "{" + ",".join(S.labels[x] for x in b) + "}")
    return build_finite(rows, labels), dict(cls)


def ideal_counterexample(S, subset):
    """None when subset is a two-sided ideal, else (element, factor, product, side)."""
    _require_finite(S, "ideal_counterexample")
    ideal = set(subset)
    for i in ideal:
        for x in S.elements():
            if S.mul(x, i) not in ideal:
                return (i, x, S.mul(x, i), "left")
            if S.mul(i, x) not in ideal:
                return (i, x, S.mul(i, x), "right")
    return None


def is_ideal(S, subset):
    return ideal_counterexample(S, subset) is None


def ideal_congruence(S, subset):
    """The congruence collapsing an ideal to a point."""
    bad = ideal_counterexample(S, subset)
    if bad is not None:
        raise NotAnIdeal(*bad)
    ideal = sorted(set(subset))
    blocks = [ideal] + [[x] for x in S.elements() if x not in set(ideal)]
    return Congruence(_canonical_blocks(blocks))


def rees_quotient(S, subset):
    """Collapse a two-sided ideal to a zero.  The empty ideal gives S back."""
    _require_finite(S, "rees_quotient")
    if not subset:
        return S, {x: x for x in S.elements()}
    return quotient(S, ideal_congruence(S, subset))


def all_ideals(S):
    """Every nonempty ideal, by subset scan (tiny sizes only)."""
    _require_finite(S, "all_ideals")
    import itertools
    out = []
    for r in range(1, S.size + 1):
        for sub in itertools.combinations(S.elements(), r):
            if is_ideal(S, sub):
                out.append(sub)
    return out


def subsemigroup_closure(S, seed):
    """Least product-closed superset of the seed."""
    _require_finite(S, "subsemigroup_closure")
    closed = set(seed)
    frontier = list(closed)
    while frontier:
        x = frontier.pop()
        for y in list(closed):
            for p in (S.mul(x, y), S.mul(y, x)):
                if p not in closed:
                    closed.add(p)
                    frontier.append(p)
    return frozenset(closed)

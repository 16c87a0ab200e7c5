"""Semigroup handles and the structural maps everything else builds on.

A finite semigroup is a dense Cayley table over codes 0..n-1.  An infinite
semigroup appears as a stream: a multiplication on arbitrary-precision
integer codes plus an injective enumerator of the carrier.  Operations that
must terminate on streams take an explicit budget and say whether their
answer is exact or only a certified prefix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator, Optional, Union

from .errors import (
    BadParameter,
    MalformedTable,
    NonAssociative,
    NotIdempotent,
    NotInCliffordPart,
)


@dataclass(frozen=True)
class Budget:
    """Caps for bounded work: carrier elements to enumerate, operation steps."""

    elements: int = 256
    steps: int = 4096

    def as_dict(self):
        return {"elements": self.elements, "steps": self.steps}


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class BoundedSet:
    """A computed subset of the carrier.

    ``exact`` is True when the elements are provably the whole set (always
    the case on finite handles).  On streams the elements are a certified
    prefix and membership beyond it is undecided.
    """

    elements: tuple
    exact: bool = True

    def __contains__(self, x):
        return x in set(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


@dataclass
class CarrierSet:
    """A lazily described subset: membership predicate plus enumerator.

    The enumerator may be infinite; ``exact`` promises that it ranges over
    precisely the members (so an exhausted enumerator certifies the set).
    """

    member: Callable[[int], bool]
    enumerate_fn: Callable[[], Iterator[int]]
    exact: bool = True

    def prefix(self, limit):
        out = []
        for x in self.enumerate_fn():
            if len(out) >= limit:
                return out, False
            out.append(x)
        return out, True  # enumerator exhausted: prefix is the whole set


@dataclass(frozen=True)
class FiniteSemigroup:
    table: tuple
    labels: tuple

    @property
    def size(self):
        return len(self.table)

    def elements(self):
        return range(len(self.table))

    def mul(self, x, y):
        return self.table[x][y]

    @cached_property
    def commutative(self):
        t = self.table
        n = len(t)
        return all(t[i][j] == t[j][i] for i in range(n) for j in range(i + 1, n))

    @cached_property
    def idempotent_codes(self):
        return tuple(x for x in self.elements() if self.table[x][x] == x)

    @cached_property
    def center_codes(self):
        t = self.table
        n = len(t)
        return tuple(z for z in range(n) if all(t[z][x] == t[x][z] for x in range(n)))

    @cached_property
    def _green_keys(self):
        # principal right/left ideals xX^1 and X^1x, as frozensets
        t = self.table
        n = len(t)
        rkeys = [frozenset(t[x]) | {x} for x in range(n)]
        lkeys = [frozenset(t[y][x] for y in range(n)) | {x} for x in range(n)]
        return tuple(rkeys), tuple(lkeys)

    @cached_property
    def h_partition(self):
        """Map from element to the tuple of its H-class members."""
        rkeys, lkeys = self._green_keys
        buckets = {}
        for x in self.elements():
            buckets.setdefault((rkeys[x], lkeys[x]), []).append(x)
        return {x: tuple(members) for members in buckets.values() for x in members}

    @cached_property
    def subgroup_idempotent(self):
        """Map from element to the idempotent of its H-class, for the
        elements whose H-class is a subgroup; others are absent."""
        idem = set(self.idempotent_codes)
        out = {}
        for x, members in self.h_partition.items():
            for e in members:
                if e in idem:
                    out[x] = e
                    break
        return out


def build_finite(table, labels=None):
    """Validate a Cayley table (row index = left factor) and wrap it.

    Raises MalformedTable on shape or range problems and NonAssociative
    with a witness triple if some (a*b)*c differs from a*(b*c).
    """
    rows = [tuple(row) for row in table]
    n = len(rows)
    if n == 0:
        raise MalformedTable("empty table")
    for row in rows:
        if len(row) != n:
            raise MalformedTable(f"row of length {len(row)} in a table of size {n}")
        for v in row:
            if not isinstance(v, int) or not 0 <= v < n:
                raise MalformedTable(f"entry {v!r} out of range 0..{n - 1}")
    t = tuple(rows)
    for a in range(n):
        for b in range(n):
            ab = t[a][b]
            for c in range(n):
                if t[ab][c] != t[a][t[b][c]]:
                    raise NonAssociative(a, b, c)
    if labels is None:
        labels = tuple(str(i) for i in range(n))
    else:
        labels = tuple(str(l) for l in labels)
        if len(labels) != n:
            raise MalformedTable("label count does not match table size")
    return FiniteSemigroup(table=t, labels=labels)


@dataclass
class StreamSemigroup:
    """An infinite (or lazily given) semigroup.

    ``enumerate_carrier`` must return a fresh injective iterator over the
    carrier codes each call.  ``division_oracle(b, e)`` describes
    {x : x*e == b} exactly when the family can; ``declared_facts`` carries
    ground-truth property values the builder vouches for, and
    ``center_facts`` optionally does the same for the center subsemigroup.
    """

    name: str
    mul_fn: Callable[[int, int], int]
    enumerate_carrier: Callable[[], Iterator[int]]
    label_fn: Callable[[int], str] = str
    division_oracle: Optional[Callable[[int, int], CarrierSet]] = None
    declared_facts: dict = field(default_factory=dict)
    center_facts: Optional[dict] = None

    def mul(self, x, y):
        return self.mul_fn(x, y)


Semigroup = Union[FiniteSemigroup, StreamSemigroup]


def build_stream(name, mul_fn, enumerate_carrier, label_fn=str, division_oracle=None,
                 declared_facts=None, center_facts=None, check=64):
    """Wrap a stream after probabilistic sanity checks on a small prefix:
    the enumerator must not repeat codes and sampled triples must associate."""
    s = StreamSemigroup(name=name, mul_fn=mul_fn, enumerate_carrier=enumerate_carrier,
                        label_fn=label_fn, division_oracle=division_oracle,
                        declared_facts=dict(declared_facts or {}), center_facts=center_facts)
    seen = []
    for x in itertools.islice(enumerate_carrier(), check):
        seen.append(x)
    if len(set(seen)) != len(seen):
        raise BadParameter(f"stream {name}: enumerator repeats a code in its first {check}")
    k = min(len(seen), 8)
    for a in seen[:k]:
        for b in seen[:k]:
            ab = mul_fn(a, b)
            for c in seen[:k]:
                if mul_fn(ab, c) != mul_fn(a, mul_fn(b, c)):
                    raise NonAssociative(a, b, c)
    return s


# ---------------------------------------------------------------------------
# handle helpers

def is_finite(S):
    return isinstance(S, FiniteSemigroup)


def mul(S, x, y):
    return S.mul(x, y)


def label_of(S, x):
    if is_finite(S):
        return S.labels[x]
    return S.label_fn(x)


def carrier_prefix(S, limit):
    """First ``limit`` carrier codes in enumeration order (all of them on a
    finite handle, still capped at ``limit``)."""
    if is_finite(S):
        return list(range(min(S.size, limit)))
    return list(itertools.islice(S.enumerate_carrier(), limit))


def power(S, x, n):
    """x^n for n >= 1 by square-and-multiply."""
    if n < 1:
        raise BadParameter("exponent must be >= 1")
    acc = None
    base = x
    while n:
        if n & 1:
            acc = base if acc is None else S.mul(acc, base)
        n >>= 1
        if n:
            base = S.mul(base, base)
    return acc


# ---------------------------------------------------------------------------
# idempotents, center, natural partial order

def idempotents(S, budget=DEFAULT_BUDGET):
    if is_finite(S):
        return BoundedSet(S.idempotent_codes, exact=True)
    found = tuple(x for x in carrier_prefix(S, budget.elements) if S.mul(x, x) == x)
    return BoundedSet(found, exact=False)


def center(S, budget=DEFAULT_BUDGET):
    """Elements commuting with everything.

    Exact on finite handles.  On a stream each listed element is only
    certified against the enumerated prefix, so the result is neither an
    under- nor an over-approximation and is flagged inexact.
    """
    if is_finite(S):
        return BoundedSet(S.center_codes, exact=True)
    pre = carrier_prefix(S, budget.elements)
    out = tuple(z for z in pre if all(S.mul(z, x) == S.mul(x, z) for x in pre))
    return BoundedSet(out, exact=False)


def central_idempotents(S, budget=DEFAULT_BUDGET):
    """The central idempotents, a commuting family closed under product."""
    idem = idempotents(S, budget)
    cen = center(S, budget)
    members = tuple(x for x in idem.elements if x in set(cen.elements))
    return BoundedSet(members, exact=idem.exact and cen.exact)


@dataclass
class IdempotentPoset:
    """The natural partial order e <= f iff ef == fe == e, on a finite set
    of idempotents (possibly just a stream prefix, then ``exact`` is False)."""

    elements: tuple
    _leq: frozenset
    exact: bool = True

    def leq(self, x, y):
        return (x, y) in self._leq

    def up_set(self, e):
        return tuple(f for f in self.elements if self.leq(e, f))

    def down_set(self, e):
        return tuple(f for f in self.elements if self.leq(f, e))

    def minimal(self):
        return tuple(e for e in self.elements
                     if all(not self.leq(f, e) or f == e for f in self.elements))

    def maximal(self):
        return tuple(e for e in self.elements
                     if all(not self.leq(e, f) or f == e for f in self.elements))

    def longest_chain(self):
        """One longest chain, listed bottom to top."""
        best = {}

        def climb(e):
            if e in best:
                return best[e]
            chain = [e]
            for f in self.elements:
                if f != e and self.leq(f, e):
                    cand = climb(f) + [e]
                    if len(cand) > len(chain):
                        chain = cand
            best[e] = chain
            return chain

        out = []
        for e in self.elements:
            c = climb(e)
            if len(c) > len(out):
                out = c
        return tuple(out)


def natural_order(S, elements=None, budget=DEFAULT_BUDGET):
    """Natural partial order on idempotents; raises NotIdempotent if an
    explicitly supplied element is not idempotent."""
    if elements is None:
        found = idempotents(S, budget)
        elems, exact = tuple(found.elements), found.exact
    else:
        elems = tuple(elements)
        exact = is_finite(S)
        for e in elems:
            if S.mul(e, e) != e:
                raise NotIdempotent(f"{e} is not idempotent")
    rel = frozenset((x, y) for x in elems for y in elems
                    if S.mul(x, y) == x and S.mul(y, x) == x)
    return IdempotentPoset(elements=elems, _leq=rel, exact=exact)


# ---------------------------------------------------------------------------
# H-classes, subgroups, group inverses

def h_class(S, a, budget=DEFAULT_BUDGET):
    """The H-class of ``a``: same principal right and left ideal.

    Exact on finite handles.  On a stream an element is listed only when
    two-sided divisibility witnesses both ways were found inside the
    prefix, so the answer under-approximates and is flagged inexact.
    """
    if is_finite(S):
        return BoundedSet(S.h_partition[a], exact=True)
    pre = carrier_prefix(S, budget.elements)
    out = tuple(x for x in pre if _h_related_at_bound(S, a, x, pre))
    return BoundedSet(out, exact=False)


def _divides_right(S, a, x, pre):
    # x in aX^1: x == a or x == a*u for a witnessed u
    return x == a or any(S.mul(a, u) == x for u in pre)


def _divides_left(S, a, x, pre):
    return x == a or any(S.mul(u, a) == x for u in pre)


def _h_related_at_bound(S, a, x, pre):
    return (_divides_right(S, a, x, pre) and _divides_right(S, x, a, pre)
            and _divides_left(S, a, x, pre) and _divides_left(S, x, a, pre))


@dataclass
class CliffordDecomposition:
    """Union of subgroup H-classes, indexed by their idempotents.

    ``classes`` maps each idempotent to its maximal subgroup, ``subgroup_of``
    sends a member to its idempotent, ``central_part`` restricts to central
    idempotents, and ``residue`` is everything outside all subgroups (only
    meaningful in full when ``exact``)."""

    idempotents: tuple
    classes: dict
    subgroup_of: dict
    central_part: tuple
    residue: tuple
    exact: bool


def clifford_parts(S, budget=DEFAULT_BUDGET):
    if is_finite(S):
        idem = S.idempotent_codes
        classes = {e: S.h_partition[e] for e in idem}
        sub = dict(S.subgroup_idempotent)
        cen = set(S.center_codes)
        central = tuple(sorted(x for x, e in sub.items() if e in cen))
        residue = tuple(x for x in S.elements() if x not in sub)
        return CliffordDecomposition(idem, classes, sub, central, residue, exact=True)
    pre = carrier_prefix(S, budget.elements)
    idem = tuple(x for x in pre if S.mul(x, x) == x)
    classes = {}
    sub = {}
    for e in idem:
        members = tuple(x for x in pre if _h_related_at_bound(S, e, x, pre))
        classes[e] = members
        for x in members:
            sub.setdefault(x, e)
    cen = set(center(S, budget).elements)
    central = tuple(sorted(x for x, e in sub.items() if e in cen))
    residue = tuple(x for x in pre if x not in sub)  # only "not certified at bound"
    return CliffordDecomposition(idem, classes, sub, central, residue, exact=False)


def group_inverse(S, x, budget=DEFAULT_BUDGET):
    """Inverse of ``x`` inside its subgroup H-class.

    Uniquely determined by x*y*x == x, y*x*y == y, x*y == y*x; raises
    NotInCliffordPart when x lies in no subgroup (certified on finite
    handles, at bound on streams)."""
    if is_finite(S):
        e = S.subgroup_idempotent.get(x)
        if e is None:
            raise NotInCliffordPart(f"{x} lies in no subgroup")
        for y in S.h_partition[x]:
            if S.mul(x, y) == e and S.mul(y, x) == e:
                return y
        raise NotInCliffordPart(f"H-class of {x} is not a group")  # unreachable
    for y in carrier_prefix(S, budget.elements):
        xy = S.mul(x, y)
        if xy == S.mul(y, x) and S.mul(xy, x) == x and S.mul(xy, y) == y:
            return y
    raise NotInCliffordPart(f"no inverse for {x} found at bound {budget.elements}")


# ---------------------------------------------------------------------------
# powers: orbits, projection to idempotents, roots

@dataclass(frozen=True)
class MonogenicData:
    """Orbit of one generator: powers x^1, x^2, ... with eventual cycle.

    ``index`` is the least i whose power recurs, ``period`` the cycle
    length; both None when the walk hit the step budget first (streams)."""

    base: int
    powers: tuple
    index: Optional[int]
    period: Optional[int]
    exact: bool


def monogenic(S, x, budget=DEFAULT_BUDGET):
    cap = S.size + 1 if is_finite(S) else budget.steps
    seen = {}
    powers = []
    p = x
    n = 1
    while n <= cap:
        if p in seen:
            i = seen[p]
            return MonogenicData(x, tuple(powers), index=i, period=n - i, exact=True)
        seen[p] = n
        powers.append(p)
        p = S.mul(p, x)
        n += 1
    return MonogenicData(x, tuple(powers), index=None, period=None, exact=False)


@dataclass(frozen=True)
class PowerProjection:
    """Where the powers of an element eventually land.

    When some power enters a subgroup H-class, ``idempotent`` is that
    class's identity (independent of which power was found) and
    ``exponent`` is the least witnessed entry point.  Otherwise the status
    says whether non-membership is certified (finite exhaustion) or the
    walk merely hit its budget."""

    status: str  # "defined" | "undefined_at_bound"
    idempotent: Optional[int]
    exponent: Optional[int]
    orbit: tuple


def power_projection(S, x, budget=DEFAULT_BUDGET):
    if is_finite(S):
        sub = S.subgroup_idempotent
        p = x
        n = 1
        orbit = []
        while True:
            orbit.append(p)
            if p in sub:
                return PowerProjection("defined", sub[p], n, tuple(orbit))
            p = S.mul(p, x)
            n += 1
            # every element of a finite semigroup has an idempotent power
            if n > 2 * S.size + 2:  # pragma: no cover - unreachable guard
                raise AssertionError("orbit failed to reach a subgroup")
    orbit = []
    p = x
    for _ in range(budget.steps):
        orbit.append(p)
        if S.mul(p, p) == p:
            e = p
            # cheap two-sided certificates pull earlier powers into H_e;
            # m = len(orbit) always qualifies since e*e == e
            for m, q in enumerate(orbit, start=1):
                if S.mul(e, q) == q and S.mul(q, e) == q:
                    return PowerProjection("defined", e, m, tuple(orbit))
        p = S.mul(p, x)
    return PowerProjection("undefined_at_bound", None, None, tuple(orbit))


def nth_roots(S, targets, n, budget=DEFAULT_BUDGET):
    """{x : x^n lands in targets}; exact on finite handles."""
    if n < 1:
        raise BadParameter("root degree must be >= 1")
    tset = set(targets)
    if is_finite(S):
        found = tuple(x for x in S.elements() if power(S, x, n) in tset)
        return BoundedSet(found, exact=True)
    pre = carrier_prefix(S, budget.elements)
    return BoundedSet(tuple(x for x in pre if power(S, x, n) in tset), exact=False)


def eventual_roots(S, targets, budget=DEFAULT_BUDGET):
    """{x : some power of x lands in targets}; exact on finite handles,
    exponents capped by the step budget on streams."""
    tset = set(targets)

    def hits(x, cap):
        p = x
        seen = set()
        for _ in range(cap):
            if p in tset:
                return True
            if p in seen:
                return False
            seen.add(p)
            p = S.mul(p, x)
        return False

    if is_finite(S):
        found = tuple(x for x in S.elements() if hits(x, S.size + 1))
        return BoundedSet(found, exact=True)
    pre = carrier_prefix(S, budget.elements)
    return BoundedSet(tuple(x for x in pre if hits(x, budget.steps)), exact=False)


# ---------------------------------------------------------------------------
# constructions on finite handles

def adjoin_identity(S):
    """S with a fresh two-sided identity appended (always fresh, even when
    S already has one)."""
    _require_finite(S, "adjoin_identity")
    n = S.size
    rows = [list(row) + [i] for i, row in enumerate(S.table)]
    rows.append(list(range(n)) + [n])
    return build_finite(rows, labels=S.labels + ("1+",))


def adjoin_zero(S):
    """S with a fresh absorbing element appended."""
    _require_finite(S, "adjoin_zero")
    n = S.size
    rows = [list(row) + [n] for row in S.table]
    rows.append([n] * (n + 1))
    return build_finite(rows, labels=S.labels + ("0+",))


def restrict(S, subset):
    """The subsemigroup on ``subset`` (must be product-closed).

    Returns the restricted handle together with the tuple of original
    codes in the new code order."""
    _require_finite(S, "restrict")
    keep = tuple(sorted(set(subset)))
    pos = {x: i for i, x in enumerate(keep)}
    rows = []
    for x in keep:
        row = []
        for y in keep:
            p = S.mul(x, y)
            if p not in pos:
                raise BadParameter(f"subset not closed: {x}*{y} = {p} escapes")
            row.append(pos[p])
        rows.append(row)
    return build_finite(rows, labels=tuple(S.labels[x] for x in keep)), keep


def direct_product(A, B, declared_facts=None, center_facts=None):
    """Componentwise product.  Finite x finite gives a finite handle; a
    stream on either side gives a stream (stream x stream unsupported)."""
    if is_finite(A) and is_finite(B):
        na, nb = A.size, B.size
        rows = []
        for xa in range(na):
            for xb in range(nb):
                row = []
                for ya in range(na):
                    for yb in range(nb):
                        row.append(A.mul(xa, ya) * nb + B.mul(xb, yb))
                rows.append(row)
        labels = tuple(f"{A.labels[i]}|{B.labels[j]}" for i in range(na) for j in range(nb))
        return build_finite(rows, labels=labels)
    if is_finite(A) and not is_finite(B):
        n = A.size

        def pmul(x, y):
            xa, xb = x % n, x // n
            ya, yb = y % n, y // n
            return A.mul(xa, ya) + n * B.mul(xb, yb)

        def penum():
            for bcode in B.enumerate_carrier():
                for a in range(n):
                    yield a + n * bcode

        def plabel(x):
            return f"{A.labels[x % n]}|{B.label_fn(x // n)}"

        return build_stream(f"({'x'.join(A.labels)})x{B.name}", pmul, penum, plabel,
                            declared_facts=declared_facts, center_facts=center_facts)
    if not is_finite(A) and is_finite(B):
        return direct_product(B, A, declared_facts=declared_facts, center_facts=center_facts)
    raise BadParameter("direct products of two streams are not supported")


def _require_finite(S, opname):
    if not is_finite(S):
        raise BadParameter(f"{opname} needs a finite handle")

"""Core structure: tables, orders, H-classes, powers, constructions."""

import itertools

import pytest
from hypothesis import given, strategies as st

import oracle_brute as ob

from semitop.builders import (
    chain_semilattice,
    cyclic_group,
    flat_finite,
    group_union,
    left_zero,
    m3,
    monogenic as monogenic_builder,
    natmin,
    standard_finite_corpus,
    zero_semigroup,
)
from semitop.core import (
    Budget,
    adjoin_identity,
    adjoin_zero,
    build_finite,
    carrier_prefix,
    center,
    clifford_parts,
    direct_product,
    group_inverse,
    h_class,
    idempotents,
    monogenic,
    natural_order,
    power,
    power_projection,
    restrict,
)
from semitop.errors import (
    MalformedTable,
    NonAssociative,
    NotIdempotent,
    NotInCliffordPart,
)


def test_build_finite_rejects_bad_shapes():
    with pytest.raises(MalformedTable):
        build_finite([])
    with pytest.raises(MalformedTable):
        build_finite([[0, 1], [0]])
    with pytest.raises(MalformedTable):
        build_finite([[0, 2], [0, 1]])
    with pytest.raises(MalformedTable):
        build_finite([[0]], labels=["a", "b"])


def test_build_finite_reports_nonassociative_triple():
    # (0*0)*1 = 1*1 = 0 but 0*(0*1) = 0*0 = 1
    with pytest.raises(NonAssociative) as err:
        build_finite([[1, 0], [0, 0]])
    a, b, c = err.value.triple
    t = [[1, 0], [0, 0]]
    assert t[t[a][b]][c] != t[a][t[b][c]]


@given(st.integers(1, 3), st.data())
def test_validator_agrees_with_naive_associativity(n, data):
    flat = data.draw(st.lists(st.integers(0, n - 1), min_size=n * n,
                              max_size=n * n))
    table = [flat[i * n:(i + 1) * n] for i in range(n)]
    if ob.is_associative(table):
        assert build_finite(table).size == n
    else:
        with pytest.raises(NonAssociative):
            build_finite(table)


def test_natural_order_on_chain_is_linear():
    S = chain_semilattice(4)
    poset = natural_order(S)
    assert poset.longest_chain() == (0, 1, 2, 3)
    for x, y in itertools.combinations(range(4), 2):
        assert poset.leq(x, y)
        assert not poset.leq(y, x)


def test_natural_order_on_flat_has_incomparable_atoms():
    S = flat_finite(3)
    poset = natural_order(S)
    assert poset.minimal() == (0,)
    assert sorted(poset.maximal()) == [1, 2, 3]
    for a, b in itertools.combinations((1, 2, 3), 2):
        assert not poset.leq(a, b) and not poset.leq(b, a)
    assert len(poset.longest_chain()) == 2


def test_natural_order_rejects_non_idempotent():
    with pytest.raises(NotIdempotent):
        natural_order(cyclic_group(3), elements=[1])


def test_idempotents_and_center_match_oracle():
    for name, S in standard_finite_corpus():
        t = [list(r) for r in S.table]
        assert sorted(idempotents(S).elements) == ob.idempotents(t), name
        assert sorted(center(S).elements) == ob.center(t), name


def test_h_class_matches_oracle_maximal_subgroup():
    for name, S in standard_finite_corpus():
        if S.size > 6:
            continue
        t = [list(r) for r in S.table]
        for e in ob.idempotents(t):
            assert sorted(h_class(S, e).elements) == ob.maximal_subgroup(t, e), \
                (name, e)


def test_group_inverse_in_cyclic_group():
    S = cyclic_group(6)
    for x in range(6):
        y = group_inverse(S, x)
        assert S.mul(x, y) == 0 and S.mul(y, x) == 0


def test_group_inverse_rejects_residue_element():
    S = monogenic_builder(3, 2)  # x has index 3: x itself lies in no subgroup
    with pytest.raises(NotInCliffordPart):
        group_inverse(S, 0)


def test_clifford_parts_cover_group_union():
    S = group_union([2, 3])
    dec = clifford_parts(S)
    assert dec.exact
    assert dec.residue == ()
    assert sorted(dec.idempotents) == [0, 1, 3]
    assert set(dec.classes[1]) == {1, 2}
    assert set(dec.classes[3]) == {3, 4, 5}


def test_monogenic_index_and_period():
    S = monogenic_builder(3, 2)
    data = monogenic(S, 0)  # the generator x
    assert data.exact
    assert (data.index, data.period) == (3, 2)
    assert len(set(data.powers)) == 4


def test_power_projection_on_m3():
    S = m3()
    proj = power_projection(S, 1)  # the generator a, with a*a = 0
    assert proj.status == "defined"
    assert proj.idempotent == 2
    assert power(S, 1, proj.exponent) in h_class(S, 2).elements


def test_power_projection_on_stream_prefix():
    S = natmin()
    proj = power_projection(S, 5, Budget(32, 64))
    assert proj.status == "defined"  # naturals under min are idempotent
    assert proj.idempotent == 5 and proj.exponent == 1


def test_adjoin_identity_and_zero():
    S = adjoin_identity(left_zero(2))
    assert S.size == 3
    one = S.size - 1 if S.mul(S.size - 1, 0) == 0 else 0
    assert all(S.mul(one, x) == x and S.mul(x, one) == x for x in range(3))
    Z = adjoin_zero(cyclic_group(3))
    zero = next(z for z in range(4) if all(
        Z.mul(z, x) == z == Z.mul(x, z) for x in range(4)))
    assert sorted(idempotents(Z).elements) == sorted({zero} | {0})


def test_restrict_to_center_is_commutative():
    S = adjoin_identity(left_zero(2))
    sub, codes = restrict(S, center(S).elements)
    assert sub.commutative
    assert len(codes) == 1


def test_direct_product_componentwise():
    A, B = cyclic_group(2), chain_semilattice(3)
    P = direct_product(A, B)
    assert P.size == 6
    assert P.commutative
    t = [list(r) for r in P.table]
    assert ob.is_associative(t)


def test_stream_h_class_is_flagged_inexact():
    S = natmin()
    cls = h_class(S, 3, Budget(16, 64))
    assert not cls.exact
    assert 3 in cls.elements


def test_carrier_prefix_stops_at_finite_size():
    assert carrier_prefix(m3(), 100) == [0, 1, 2]
    assert len(carrier_prefix(natmin(), 100)) == 100

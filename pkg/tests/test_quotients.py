"""Congruences, quotients, ideals, and the Rees construction."""

import pytest
from hypothesis import given, settings, strategies as st

import oracle_brute as ob

from semitop.builders import (
    chain_semilattice,
    cyclic_group,
    flat_finite,
    m3,
    standard_finite_corpus,
)
from semitop.corpus import enumerate_finite
from semitop.errors import IllDefinedQuotient, NotAnIdeal, SizeCapExceeded
from semitop.quotients import (
    all_ideals,
    congruence_closure,
    congruence_from_partition,
    enumerate_congruences,
    ideal_congruence,
    is_ideal,
    quotient,
    rees_quotient,
    subsemigroup_closure,
)


def _hom_ok(S, Q, code_map):
    return all(code_map[S.mul(x, y)] == Q.mul(code_map[x], code_map[y])
               for x in S.elements() for y in S.elements())


def test_congruence_closure_on_chain():
    S = chain_semilattice(3)
    cong = congruence_closure(S, [(1, 2)])
    assert cong.blocks == ((0,), (1, 2))
    Q, cmap = quotient(S, cong)
    assert Q.size == 2 and _hom_ok(S, Q, cmap)


def test_congruence_closure_propagates_translations():
    S = cyclic_group(4)
    # merging 0 and 2 forces 1 ~ 3
    cong = congruence_closure(S, [(0, 2)])
    assert cong.blocks == ((0, 2), (1, 3))


def test_invalid_partition_is_rejected():
    S = cyclic_group(4)
    with pytest.raises(IllDefinedQuotient):
        congruence_from_partition(S, [(0, 1), (2, 3)])
    with pytest.raises(IllDefinedQuotient):
        congruence_from_partition(S, [(0, 1, 2)])  # not a partition


def test_congruence_count_matches_oracle():
    for name, S in standard_finite_corpus():
        if S.size > 5:
            continue
        t = [list(r) for r in S.table]
        ours = enumerate_congruences(S)
        assert len(ours) == len(ob.congruences(t)), name


def test_group_congruences_correspond_to_subgroups():
    # C4 has subgroups of orders 1, 2, 4, hence exactly 3 congruences
    assert len(enumerate_congruences(cyclic_group(4))) == 3


def test_enumeration_cap():
    with pytest.raises(SizeCapExceeded):
        enumerate_congruences(flat_finite(7))


def test_every_congruence_quotient_is_a_homomorphism():
    for name, S in standard_finite_corpus():
        if S.size > 5:
            continue
        for cong in enumerate_congruences(S):
            Q, cmap = quotient(S, cong)
            assert _hom_ok(S, Q, cmap), (name, cong.blocks)


def test_ideal_detection_matches_oracle():
    for name, S in standard_finite_corpus():
        if S.size > 5:
            continue
        t = [list(r) for r in S.table]
        assert sorted(all_ideals(S)) == sorted(ob.ideals(t)), name


def test_not_an_ideal_carries_counterexample():
    S = m3()
    with pytest.raises(NotAnIdeal) as err:
        ideal_congruence(S, [0])  # the identity generates everything
    element, factor, product, side = err.value.counterexample
    assert element == 0 and product != 0


def test_rees_agrees_with_ideal_congruence():
    for name, S in standard_finite_corpus():
        if S.size > 5:
            continue
        for ideal in all_ideals(S):
            direct, dmap = rees_quotient(S, ideal)
            via_cong, cmap = quotient(S, ideal_congruence(S, ideal))
            assert direct.table == via_cong.table, (name, ideal)
            assert dmap == cmap, (name, ideal)


def test_rees_collapses_ideal_to_zero():
    S = flat_finite(3)
    Q, cmap = rees_quotient(S, [0])
    z = cmap[0]
    assert all(Q.mul(z, q) == z == Q.mul(q, z) for q in Q.elements())


def test_empty_ideal_is_identity_quotient():
    S = m3()
    Q, cmap = rees_quotient(S, [])
    assert Q is S and cmap == {0: 0, 1: 1, 2: 2}


def test_subsemigroup_closure():
    S = cyclic_group(6)
    assert subsemigroup_closure(S, [2]) == {0, 2, 4}
    assert subsemigroup_closure(S, [1]) == {0, 1, 2, 3, 4, 5}


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_random_order3_quotients_preserve_products(data):
    tables = list(enumerate_finite(3))
    S = tables[data.draw(st.integers(0, len(tables) - 1))]
    congs = enumerate_congruences(S)
    cong = congs[data.draw(st.integers(0, len(congs) - 1))]
    Q, cmap = quotient(S, cong)
    assert _hom_ok(S, Q, cmap)
    # quotient of a commutative semigroup stays commutative
    if S.commutative:
        assert Q.commutative

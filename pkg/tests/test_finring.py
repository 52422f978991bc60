import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from absorbkit import bits
from absorbkit.finring import (Ideal, all_ideals, ideal_generated, ideal_intersection, ideal_product,
                               is_1absorbing_prime_ideal, is_2absorbing_ideal, is_local, is_prime_ideal,
                               jacobson_radical, make_ring, make_zmod, maximal_ideals, radical,
                               ring_product, ring_validate, same_tables, zero_ideal)

import brute


def ideal(R, *gens):
    return ideal_generated(R, gens)


def test_zmod_units():
    assert make_zmod(6).units == [1, 5]
    assert make_zmod(4).units == [1, 3]


def test_zero_ring():
    R = make_zmod(1)
    assert R.size == 1 and R.unit_mask == 1
    assert ring_validate(R) == []


def test_validate_catalog_rings():
    assert ring_validate(make_zmod(8)) == []
    assert ring_validate(ring_product(make_zmod(2), make_zmod(3))) == []


def test_corrupted_multiplication_is_named():
    Z4 = make_zmod(4)
    mul = Z4.mul.copy()
    mul[2, 3] = 1
    diags = ring_validate(make_ring(Z4.add, mul, 0, 1, "bad"))
    assert diags
    assert diags[0].axiom in ("mul_commutativity", "distributivity", "mul_associativity")


def test_product_ring():
    R = ring_product(make_zmod(2), make_zmod(3))
    assert R.size == 6 and len(R.units) == 2
    S = ring_product(make_zmod(4), make_zmod(4))
    assert not S.is_unit(S.index((2, 1)))


def test_product_with_zero_ring():
    Z6 = make_zmod(6)
    P = ring_product(make_zmod(1), Z6)
    assert np.array_equal(P.add, Z6.add) and np.array_equal(P.mul, Z6.mul)


def test_ideal_generation():
    Z8 = make_zmod(8)
    assert ideal(Z8, 2).elements == [0, 2, 4, 6]
    assert ideal(Z8).elements == [0]
    assert ideal(make_zmod(6), 4).elements == [0, 2, 4]


def test_ideal_arithmetic():
    Z8, Z6 = make_zmod(8), make_zmod(6)
    assert ideal_product(ideal(Z8, 2), ideal(Z8, 2)).elements == [0, 4]
    assert ideal_product(zero_ideal(Z8), ideal(Z8, 2)).elements == [0]
    assert ideal_intersection(ideal(Z6, 2), ideal(Z6, 3)).elements == [0]


def test_radical():
    Z8 = make_zmod(8)
    assert radical(ideal(Z8, 4)).elements == [0, 2, 4, 6]
    assert radical(ideal(make_zmod(6))).elements == [0]
    assert len(radical(ideal(Z8, 1))) == 8


def test_ideal_predicates():
    Z8, Z12 = make_zmod(8), make_zmod(12)
    assert is_prime_ideal(ideal(Z8, 2)).holds
    chk = is_prime_ideal(ideal(Z8, 4))
    assert not chk.holds and chk.witness == (2, 2)
    chk = is_2absorbing_ideal(ideal(Z12))
    assert not chk.holds and chk.witness == (2, 2, 3)
    assert is_1absorbing_prime_ideal(ideal(Z8, 4)).holds
    assert is_1absorbing_prime_ideal(ideal(Z8, 2)).holds
    chk = is_1absorbing_prime_ideal(ideal(Z12))
    assert not chk.holds and chk.witness == (2, 2, 3)


def test_improper_ideal_rejected():
    with pytest.raises(ValueError, match="proper"):
        is_prime_ideal(ideal(make_zmod(4), 1))


def test_local_and_jacobson():
    Z8, Z6 = make_zmod(8), make_zmod(6)
    assert is_local(Z8).elements == [0, 2, 4, 6]
    assert is_local(Z6) is None
    assert [I.elements for I in maximal_ideals(Z6)] == [[0, 3], [0, 2, 4]]
    assert jacobson_radical(make_zmod(12)).elements == [0, 6]


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 14))
def test_ideals_match_brute_force(n):
    R = make_zmod(n)
    fast = {frozenset(I.elements) for I in all_ideals(R)}
    assert fast == set(brute.ideals(R))
    assert R.units == brute.units(R)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([4, 6, 8, 9, 12, 16, 18]), st.data())
def test_ideal_chain_and_one_absorbing_local(n, data):
    R = make_zmod(n)
    I = data.draw(st.sampled_from([I for I in all_ideals(R) if I.proper]))
    prime = is_prime_ideal(I).holds
    one_abs = is_1absorbing_prime_ideal(I).holds
    assert one_abs == brute.one_absorbing_ideal(R, set(I.elements))
    if prime:
        assert one_abs
    if one_abs:
        assert is_2absorbing_ideal(I).holds
    if one_abs and not prime:
        assert is_local(R) is not None


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([6, 8, 12, 18]), st.data())
def test_ideal_product_commutative_associative(n, data):
    R = make_zmod(n)
    pick = st.sampled_from(all_ideals(R))
    I, J, K = data.draw(pick), data.draw(pick), data.draw(pick)
    assert ideal_product(I, J).members == ideal_product(J, I).members
    assert ideal_product(ideal_product(I, J), K).members == ideal_product(I, ideal_product(J, K)).members


def test_ring_product_tables_round_trip():
    R = ring_product(make_zmod(2), make_zmod(3))
    S = make_ring(R.add, R.mul, R.zero, R.one, "copy")
    assert same_tables(R, S)

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from absorbkit import bits
from absorbkit.construct import direct_sum
from absorbkit.finmod import (Submodule, all_submodules, annihilator, full_submodule, hom_image,
                              hom_kernel, hom_preimage, ideal_times_submodule, is_multiplication_module,
                              make_module, module_validate, presenting_ideals, quotient_module,
                              residual_module_by_ring_elt, residual_ring_by_module_elt,
                              residual_ring_by_submodule, ring_as_module, submodule_generated,
                              submodule_product, zero_submodule)
from absorbkit.finring import ideal_generated, ideal_product, make_zmod

import brute


def sub(M, *gens):
    return submodule_generated(M, gens)


def quot(R, g):
    M = ring_as_module(R)
    return quotient_module(M, sub(M, g))[0]


@pytest.fixture
def Z8():
    return ring_as_module(make_zmod(8))


def test_validate_modules(Z8):
    assert module_validate(Z8) == []
    assert module_validate(quot(make_zmod(12), 2)) == []


def test_corrupted_action_is_named():
    M = ring_as_module(make_zmod(4))
    act = M.action.copy()
    act[2, 1] = 1
    diags = module_validate(make_module(M.ring, M.add, act))
    assert diags and diags[0].axiom in ("ring_distributivity", "module_distributivity", "action_associativity")


def test_lattice_of_z8(Z8):
    assert [P.elements for P in all_submodules(Z8)] == [[0], [0, 4], [0, 2, 4, 6], list(range(8))]


def test_klein_four_over_z4_has_five_submodules():
    Z4 = make_zmod(4)
    V = direct_sum(quot(Z4, 2), quot(Z4, 2))
    assert len(all_submodules(V)) == 5
    assert not is_multiplication_module(V)


def test_generated_in_product_shape():
    Z6 = make_zmod(6)
    M = direct_sum(quot(Z6, 2), quot(Z6, 3))
    S = sub(M, M.index((1, 0)))
    assert sorted(M.show(m) for m in S.elements) == ["(0,0)", "(1,0)"]


def test_residuals(Z8):
    Z4 = ring_as_module(make_zmod(4))
    assert len(residual_module_by_ring_elt(sub(Z4, 2), 2)) == 4
    assert residual_module_by_ring_elt(zero_submodule(Z8), 4).elements == [0, 2, 4, 6]
    P = sub(Z8, 4)
    assert residual_module_by_ring_elt(P, 1).members == P.members
    assert residual_ring_by_module_elt(zero_submodule(Z8), 2).elements == [0, 4]
    assert len(residual_ring_by_module_elt(P, 4)) == 8
    Z6 = make_zmod(6)
    M = direct_sum(quot(Z6, 2), quot(Z6, 3))
    assert residual_ring_by_module_elt(zero_submodule(M), M.index((1, 1))).elements == [0]
    assert residual_ring_by_submodule(zero_submodule(Z8), full_submodule(Z8)).elements == [0]
    assert residual_ring_by_submodule(P, full_submodule(Z8)).elements == [0, 4]
    assert len(residual_ring_by_submodule(P, P)) == 8
    assert annihilator(quot(make_zmod(12), 4)).elements == [0, 4, 8]


def test_ideal_times_submodule(Z8):
    R = Z8.ring
    two = ideal_generated(R, [2])
    assert ideal_times_submodule(two, full_submodule(Z8)).elements == [0, 2, 4, 6]
    assert ideal_times_submodule(ideal_generated(R, []), sub(Z8, 2)).elements == [0]
    assert ideal_times_submodule(ideal_product(two, two), full_submodule(Z8)).elements == [0, 4]


def test_quotients_and_projection(Z8):
    Q, pi = quotient_module(Z8, sub(Z8, 4))
    assert Q.size == 4 and module_validate(Q) == []
    assert hom_kernel(pi).elements == [0, 4]
    assert hom_preimage(pi, zero_submodule(Q)).elements == [0, 4]
    img = hom_image(pi, sub(Z8, 2))
    assert len(img) == 2 and {Q.show(x) for x in img.elements} == {"0", "2"}
    same, _ = quotient_module(Z8, zero_submodule(Z8))
    assert np.array_equal(same.add, Z8.add)
    assert quotient_module(Z8, full_submodule(Z8))[0].size == 1


def test_multiplication_modules(Z8):
    assert is_multiplication_module(Z8)
    assert submodule_product(sub(Z8, 2), sub(Z8, 2)).elements == [0, 4]


def test_product_independent_of_presentation():
    for n in (8, 12):
        M = ring_as_module(make_zmod(n))
        subs = all_submodules(M)
        for N in subs:
            for K in subs:
                want = submodule_product(N, K).members
                for I in presenting_ideals(N):
                    for J in presenting_ideals(K):
                        got = ideal_times_submodule(ideal_product(I, J), full_submodule(M)).members
                        assert got == want


def test_product_needs_multiplication_module():
    Z4 = make_zmod(4)
    V = direct_sum(quot(Z4, 2), quot(Z4, 2))
    with pytest.raises(ValueError):
        submodule_product(full_submodule(V), full_submodule(V))


SMALL = [("Z", 4), ("Z", 6), ("Z", 8), ("Z", 9), ("Q", 12, 2), ("Q", 12, 4), ("S", 4), ("S", 6)]


def build(code):
    if code[0] == "Z":
        return ring_as_module(make_zmod(code[1]))
    if code[0] == "Q":
        return quot(make_zmod(code[1]), code[2])
    R = make_zmod(code[1])
    return direct_sum(quot(R, 2), ring_as_module(R))


@settings(max_examples=len(SMALL), deadline=None)
@given(st.sampled_from(SMALL))
def test_lattice_matches_brute_force(code):
    M = build(code)
    subs = all_submodules(M)
    assert {frozenset(P.elements) for P in subs} == set(brute.submodules(M))
    keys = [(len(P), P.members) for P in subs]
    assert keys == sorted(keys)
    closed = {P.members for P in subs}
    for P in subs:
        for Q in subs:
            assert P.members & Q.members in closed
            assert sub(M, *(P.elements + Q.elements)).members in closed


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_residuals_are_ideals_and_submodules(code, data):
    M = build(code)
    P = data.draw(st.sampled_from(all_submodules(M)))
    a = data.draw(st.integers(0, M.ring.size - 1))
    m = data.draw(st.integers(0, M.size - 1))
    assert frozenset(residual_module_by_ring_elt(P, a).elements) in set(brute.submodules(M))
    assert frozenset(residual_ring_by_module_elt(P, m).elements) in set(brute.ideals(M.ring))

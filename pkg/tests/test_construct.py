import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from absorbkit import bits
from absorbkit.bits import TooLargeError
from absorbkit.classify import FLAGS, classify
from absorbkit.construct import (amalgam_residual_check, amalgam_residual_counts, amalgam_unit_check,
                                 amalgamate_module, amalgamate_ring, amalgamate_submodule, direct_sum,
                                 free_tensor, free_tensor_submodule, product_factors, product_modules,
                                 product_submodule, split_product_submodule)
from absorbkit.finmod import (Submodule, all_submodules, full_submodule, module_validate,
                              residual_module_by_ring_elt, residual_ring_by_module_elt, ring_as_module,
                              submodule_generated, zero_submodule)
from absorbkit.finring import ideal_generated, make_zmod, ring_validate

import brute


def zm(n):
    return ring_as_module(make_zmod(n))


def test_amalgam_ring_of_z4():
    Z4 = make_zmod(4)
    AR = amalgamate_ring(Z4, ideal_generated(Z4, [2]))
    assert AR.result.size == 8 and ring_validate(AR.result) == []
    units = {AR.result.show(u) for u in AR.result.units}
    assert units == {"(1,1)", "(1,3)", "(3,1)", "(3,3)"}
    assert AR.result.units == brute.units(AR.result)
    assert amalgam_unit_check(AR).holds


def test_amalgam_along_zero_is_diagonal():
    Z6 = make_zmod(6)
    AR = amalgamate_ring(Z6, ideal_generated(Z6, []))
    assert np.array_equal(AR.first, AR.second)
    assert np.array_equal(AR.result.mul, Z6.mul) and np.array_equal(AR.result.add, Z6.add)


def test_amalgam_module_sizes():
    M = zm(4)
    I = ideal_generated(M.ring, [2])
    AM = amalgamate_module(M, I)
    assert AM.result.size == 8 and module_validate(AM.result) == []
    P = submodule_generated(M, [2])
    assert len(amalgamate_submodule(P, I)) == 4
    assert amalgamate_submodule(full_submodule(M), I).members == bits.full(8)
    # M = A: the module over A|><|I is the ring acting on itself
    AR = amalgamate_ring(M.ring, I)
    assert np.array_equal(AM.result.action, AR.result.mul)
    assert np.array_equal(AM.result.add, AR.result.add)


def test_amalgam_residual_identities():
    M = zm(4)
    I = ideal_generated(M.ring, [2])
    P = submodule_generated(M, [2])
    AM = amalgamate_module(M, I)
    AR = AM.ring
    PI = amalgamate_submodule(P, I)
    assert len(residual_module_by_ring_elt(PI, AR.index(2, 0))) == 8
    assert residual_module_by_ring_elt(PI, AR.index(1, 0)).members == PI.members
    got = residual_ring_by_module_elt(PI, AM.index(1, 0))
    assert {AR.result.show(x) for x in got.elements} == {"(0,0)", "(0,2)", "(2,0)", "(2,2)"}
    assert amalgam_residual_check(P, I).holds
    counts = amalgam_residual_counts(P, I)
    assert counts == {"ring_queries": 8, "ring_equal": 8, "module_queries": 8, "module_equal": 8}


def test_amalgam_cap():
    M = zm(64)
    with pytest.raises(TooLargeError):
        amalgamate_module(M, ideal_generated(M.ring, [1]), cap=100)


def test_free_tensor():
    M = zm(4)
    F = free_tensor(M, 2)
    assert F.size == 16 and F.ring is M.ring and module_validate(F) == []
    assert free_tensor_submodule(zero_submodule(M), 2).elements == [0]
    assert free_tensor(M, 1) is M


def test_products():
    M = product_modules(zm(2), zm(3))
    assert M.size == 6 and M.ring.size == 6 and module_validate(M) == []
    assert [f.size for f in product_factors(product_modules(zm(2), zm(3), zm(4)))] == [2, 3, 4]
    P = product_submodule(full_submodule(zm(2)), zero_submodule(zm(3)))
    assert P.proper
    Q = product_submodule(full_submodule(zm(2)), zero_submodule(zm(1)))
    assert not Q.proper


def test_split_shape_classification():
    M1, M2 = zm(2), zm(4)
    P2 = submodule_generated(M2, [2])
    P = product_submodule(full_submodule(M1), P2)
    assert classify(P2).flags["classical_prime"]
    assert classify(P).flags["classical_one_abs_prime"]
    assert [Q.members for Q in split_product_submodule(P)] == [bits.full(2), P2.members]


def test_direct_sum_needs_same_ring():
    with pytest.raises(ValueError):
        direct_sum(zm(2), zm(3))


SMALL = [(4, 2), (8, 2), (8, 4), (6, 2), (6, 3), (9, 3)]


@settings(max_examples=len(SMALL), deadline=None)
@given(st.sampled_from(SMALL))
def test_amalgam_units_and_residuals(case):
    n, g = case
    M = zm(n)
    I = ideal_generated(M.ring, [g])
    AR = amalgamate_ring(M.ring, I)
    assert AR.result.units == brute.units(AR.result)
    for P in all_submodules(M):
        assert amalgam_residual_check(P, I).holds


@settings(max_examples=12, deadline=None)
@given(st.sampled_from([4, 6, 8, 9]), st.sampled_from([2, 3]), st.data())
def test_free_tensor_preserves_flags(n, k, data):
    M = zm(n)
    P = data.draw(st.sampled_from([P for P in all_submodules(M) if P.proper]))
    a, b = classify(P), classify(free_tensor_submodule(P, k))
    assert all(a.flags[f] == b.flags[f] for f in FLAGS)

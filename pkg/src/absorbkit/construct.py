"""Product modules, direct sums, free modules and amalgamated duplication.

Every construction materializes its carrier on ``0..n-1``:

* pairs use the row-major pairing ``x * |second| + y`` (same as ``ring_product``),
* A joined with I stores ``(a, a+i)`` at ``a * |I| + pos(i)``, where pos ranks I's members,
* M joined with I stores ``(m, m+m')`` at ``m * |IM| + pos(m')``.

Results are memoized on the base object so repeated calls return the same ring or
module, which keeps submodules built in separate calls comparable."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import bits
from .bits import TooLargeError
from .finmod import (FiniteModule, Submodule, full_submodule, ideal_times_bits,
                     residual_module_by_ring_elt, residual_ring_by_module_elt)
from .finring import FiniteRing, Ideal, compute_unit_mask, ring_product
from .result import Check

MAX_CONSTRUCT = 4096


def _small_dtype(n: int):
    return np.int16 if n < 2 ** 15 else np.intp


def _cap(n: int, cap: int, what: str):
    if n > cap:
        raise TooLargeError(f"{what} would have {n} elements, cap is {cap}")


def _neg(add: np.ndarray, zero: int) -> np.ndarray:
    rows, cols = np.nonzero(add == zero)
    out = np.empty(add.shape[0], dtype=np.intp)
    out[rows] = cols
    return out


# -- products and sums --------------------------------------------------------

def product_ring(R1: FiniteRing, R2: FiniteRing) -> FiniteRing:
    """Memoized ``ring_product`` so that product modules over equal factors share a ring."""
    key = ("product", R2)
    if key not in R1._cache:
        R1._cache[key] = ring_product(R1, R2)
    return R1._cache[key]


def product_module(M1: FiniteModule, M2: FiniteModule, cap: int = MAX_CONSTRUCT) -> FiniteModule:
    """M1 x M2 over A1 x A2, acting componentwise."""
    key = ("product", M2)
    if key in M1._cache:
        return M1._cache[key]
    n1, n2 = M1.size, M2.size
    _cap(n1 * n2, cap, "product module")
    A = product_ring(M1.ring, M2.ring)
    i1 = np.repeat(np.arange(n1), n2)
    i2 = np.tile(np.arange(n2), n1)
    add = M1.add[i1[:, None], i1[None, :]] * n2 + M2.add[i2[:, None], i2[None, :]]
    r1 = np.repeat(np.arange(M1.ring.size), M2.ring.size)
    r2 = np.tile(np.arange(M2.ring.size), M1.ring.size)
    action = M1.action[r1[:, None], i1[None, :]] * n2 + M2.action[r2[:, None], i2[None, :]]
    elements = tuple((M1.elements[x], M2.elements[y]) for x in range(n1) for y in range(n2))
    M = FiniteModule(A, n1 * n2, add.astype(np.intp), action.astype(np.intp),
                     M1.zero * n2 + M2.zero, f"{M1.label}x{M2.label}", elements)
    M._cache["factors"] = (M1, M2)
    M1._cache[key] = M
    return M


def product_modules(*mods: FiniteModule) -> FiniteModule:
    """Left fold of ``product_module``: ((M1 x M2) x M3) x ..."""
    out = mods[0]
    for M in mods[1:]:
        out = product_module(out, M)
    return out


def product_submodule(P1: Submodule, P2: Submodule) -> Submodule:
    M = product_module(P1.module, P2.module)
    n2 = P2.module.size
    return Submodule(M, bits.from_indices(x * n2 + y for x in P1.elements for y in P2.elements))


def product_factors(M: FiniteModule) -> list[FiniteModule]:
    """Flattened factor list of a (folded) product module; [M] for a non-product."""
    if "factors" not in M._cache:
        return [M]
    left, right = M._cache["factors"]
    return product_factors(left) + [right]


def split_product_submodule(P: Submodule) -> list[Submodule]:
    """Components of a submodule of a folded product, one per factor.

    Component i is the projection of P onto factor i. Over a product ring every
    submodule is the product of its projections; ``product_of_components`` can be
    used to confirm that."""
    M = P.module
    if "factors" not in M._cache:
        return [P]
    left, right = M._cache["factors"]
    n2 = right.size
    els = np.asarray(P.elements, dtype=np.intp)
    lbits = bits.from_indices(np.unique(els // n2).tolist())
    rbits = bits.from_indices(np.unique(els % n2).tolist())
    return split_product_submodule(Submodule(left, lbits)) + [Submodule(right, rbits)]


def product_of_components(parts: list[Submodule]) -> Submodule:
    out = parts[0]
    for p in parts[1:]:
        out = product_submodule(out, p)
    return out


def direct_sum(*mods: FiniteModule, cap: int = MAX_CONSTRUCT, label: Optional[str] = None) -> FiniteModule:
    """M1 + ... + Mk over their common ring; tuple (x1..xk) sits at its mixed-radix index."""
    if not mods:
        raise ValueError("need at least one summand")
    R = mods[0].ring
    if any(M.ring is not R for M in mods):
        raise ValueError("direct sum needs summands over the same ring")
    sizes = [M.size for M in mods]
    n = int(np.prod(sizes))
    _cap(n, cap, "direct sum")
    dt = _small_dtype(n)
    coords = np.indices(sizes).reshape(len(mods), -1)       # coords[j, x] = j-th component
    add = np.zeros((n, n), dtype=dt)
    action = np.zeros((R.size, n), dtype=dt)
    strides = [int(np.prod(sizes[j + 1:])) for j in range(len(mods))]
    for M, c, s in zip(mods, coords, strides):
        add += (M.add[c[:, None], c[None, :]] * s).astype(dt)
        action += (M.action[:, c] * s).astype(dt)
    zero = sum(M.zero * s for M, s in zip(mods, strides))
    elements = tuple(tuple(M.elements[int(c[x])] for M, c in zip(mods, coords)) for x in range(n))
    return FiniteModule(R, n, add, action, zero,
                        label or "+".join(M.label for M in mods), elements)


def free_tensor(M: FiniteModule, k: int, cap: int = MAX_CONSTRUCT) -> FiniteModule:
    """A^k tensored with M, realized as M^k with the diagonal action."""
    if k < 1:
        raise ValueError("rank must be positive")
    if k == 1:
        return M
    key = ("power", k)
    if key not in M._cache:
        _cap(M.size ** k, cap, "free tensor")
        M._cache[key] = direct_sum(*([M] * k), cap=cap, label=f"{M.label}^{k}")
    return M._cache[key]


def free_tensor_submodule(P: Submodule, k: int, cap: int = MAX_CONSTRUCT) -> Submodule:
    """P^k inside M^k."""
    M = P.module
    Mk = free_tensor(M, k, cap)
    if k == 1:
        return P
    inside = P.mask
    coords = np.indices([M.size] * k).reshape(k, -1)
    mask = inside[coords].all(axis=0)
    return Submodule(Mk, bits.from_mask(mask))


# -- amalgamated duplication --------------------------------------------------

@dataclass(frozen=True, eq=False)
class AmalgamRing:
    base: FiniteRing
    ideal: Ideal
    result: FiniteRing
    first: np.ndarray     # result index -> a
    second: np.ndarray    # result index -> a + i
    rank: np.ndarray      # ring element -> position in the ideal, -1 outside

    def index(self, a: int, i: int) -> int:
        """Index of (a, a+i) for a in A and i in I."""
        p = int(self.rank[i])
        if p < 0:
            raise ValueError(f"{i} is not in the ideal")
        return a * len(self.ideal) + p

    def component_units(self) -> int:
        """Bitset of elements whose two components are both units of A."""
        u = self.base.unit_mask
        return bits.from_indices(x for x in range(self.result.size)
                                 if (u >> int(self.first[x])) & 1 and (u >> int(self.second[x])) & 1)


@dataclass(frozen=True, eq=False)
class AmalgamModule:
    base: FiniteModule
    ideal: Ideal
    ring: AmalgamRing
    im: int               # bitset of IM inside the base module
    result: FiniteModule
    first: np.ndarray     # result index -> m
    second: np.ndarray    # result index -> m + m'
    rank: np.ndarray      # module element -> position in IM, -1 outside

    def index(self, m: int, mp: int) -> int:
        """Index of (m, m+m') for m in M and m' in IM."""
        p = int(self.rank[mp])
        if p < 0:
            raise ValueError(f"{mp} is not in IM")
        return m * bits.popcount(self.im) + p


def _rank(members: int, n: int) -> np.ndarray:
    rank = np.full(n, -1, dtype=np.intp)
    idx = bits.indices(members)
    rank[idx] = np.arange(len(idx))
    return rank


def _ideal_label(I: Ideal) -> str:
    return "<" + ",".join(I.ring.show(x) for x in I.elements) + ">"


def amalgamate_ring(A: FiniteRing, I: Ideal, cap: int = MAX_CONSTRUCT) -> AmalgamRing:
    if I.ring is not A:
        raise ValueError("ideal does not belong to the ring")
    key = ("amalgam", I.members)
    if key in A._cache:
        return A._cache[key]
    k = len(I)
    n = A.size * k
    _cap(n, cap, "amalgamated ring")
    ids = I.elements
    rank = _rank(I.members, A.size)
    first = np.repeat(np.arange(A.size), k)
    second = A.add[first, np.tile(ids, A.size)]
    neg = A.neg

    def locate(u, v):
        return u * k + rank[A.add[v, neg[u]]]

    add = locate(A.add[first[:, None], first[None, :]], A.add[second[:, None], second[None, :]])
    mul = locate(A.mul[first[:, None], first[None, :]], A.mul[second[:, None], second[None, :]])
    zero = int(locate(A.zero, A.zero))
    one = int(locate(A.one, A.one))
    elements = tuple((A.elements[int(a)], A.elements[int(s)]) for a, s in zip(first, second))
    label = f"{A.label}|><|{_ideal_label(I)}"
    R = FiniteRing(n, add, mul, zero, one, compute_unit_mask(mul, one), label, elements)
    out = AmalgamRing(A, I, R, first, second, rank)
    A._cache[key] = out
    return out


def amalgamate_module(M: FiniteModule, I: Ideal, cap: int = MAX_CONSTRUCT) -> AmalgamModule:
    if I.ring is not M.ring:
        raise ValueError("ideal and module live over different rings")
    key = ("amalgam", I.members)
    if key in M._cache:
        return M._cache[key]
    AR = amalgamate_ring(M.ring, I, cap)
    im = ideal_times_bits(M, I.members, bits.full(M.size))
    k = bits.popcount(im)
    n = M.size * k
    _cap(n, cap, "amalgamated module")
    rank = _rank(im, M.size)
    first = np.repeat(np.arange(M.size), k)
    second = M.add[first, np.tile(bits.indices(im), M.size)]
    neg = _neg(M.add, M.zero)

    def locate(u, v):
        return u * k + rank[M.add[v, neg[u]]]

    add = locate(M.add[first[:, None], first[None, :]], M.add[second[:, None], second[None, :]])
    action = locate(M.action[AR.first[:, None], first[None, :]],
                    M.action[AR.second[:, None], second[None, :]])
    elements = tuple((M.elements[int(m)], M.elements[int(s)]) for m, s in zip(first, second))
    N = FiniteModule(AR.result, n, add, action, int(locate(M.zero, M.zero)),
                     f"{M.label}|><|{_ideal_label(I)}", elements)
    out = AmalgamModule(M, I, AR, im, N, first, second, rank)
    M._cache[key] = out
    return out


def amalgamate_submodule(P: Submodule, I: Ideal, cap: int = MAX_CONSTRUCT) -> Submodule:
    """P joined with I: {(m, m+m') : m in P, m' in IM}."""
    AM = amalgamate_module(P.module, I, cap)
    return Submodule(AM.result, bits.from_mask(P.mask[AM.first]))


def amalgamate_ideal(J: Ideal, I: Ideal) -> Ideal:
    """J joined with I: {(a, a+i) : a in J, i in I}, an ideal of the amalgamated ring."""
    AR = amalgamate_ring(J.ring, I)
    return Ideal(AR.result, bits.from_mask(J.mask[AR.first]))


def amalgam_unit_check(AR: AmalgamRing) -> Check:
    """Units found by inverse search agree with the componentwise characterization.
    Witness: the first disagreeing element."""
    diff = AR.result.unit_mask ^ AR.component_units()
    if diff:
        return Check(False, (bits.lowest(diff),))
    return Check(True)


def amalgam_residual_check(P: Submodule, I: Ideal) -> Check:
    """Compare residuals of P joined with I against the joins of residuals of P.

    For every (a, a+i): (PxI :_{MxI} (a,a+i)) = (P :_M a) x I.
    For every (m, m+m'): (PxI :_{AxI} (m,m+m')) = (P :_A m) x I.
    Both sides are computed independently; the witness is ("ring", a, i) or
    ("module", m, m') at the first mismatch."""
    AM = amalgamate_module(P.module, I)
    AR = AM.ring
    PI = amalgamate_submodule(P, I)
    for x in range(AR.result.size):
        a = int(AR.first[x])
        lhs = residual_module_by_ring_elt(PI, x).members
        rhs = amalgamate_submodule(residual_module_by_ring_elt(P, a), I).members
        if lhs != rhs:
            return Check(False, ("ring", a, P.module.ring.sub(int(AR.second[x]), a)))
    Mneg = _neg(P.module.add, P.module.zero)
    for y in range(AM.result.size):
        m = int(AM.first[y])
        lhs = residual_ring_by_module_elt(PI, y).members
        rhs = amalgamate_ideal(residual_ring_by_module_elt(P, m), I).members
        if lhs != rhs:
            return Check(False, ("module", m, int(P.module.add[AM.second[y], Mneg[m]])))
    return Check(True)


def amalgam_residual_counts(P: Submodule, I: Ideal) -> dict:
    """Number of ring-side and module-side residual queries that matched."""
    AM = amalgamate_module(P.module, I)
    AR = AM.ring
    PI = amalgamate_submodule(P, I)
    ring_ok = sum(
        residual_module_by_ring_elt(PI, x).members
        == amalgamate_submodule(residual_module_by_ring_elt(P, int(AR.first[x])), I).members
        for x in range(AR.result.size))
    mod_ok = sum(
        residual_ring_by_module_elt(PI, y).members
        == amalgamate_ideal(residual_ring_by_module_elt(P, int(AM.first[y])), I).members
        for y in range(AM.result.size))
    return {"ring_queries": AR.result.size, "ring_equal": int(ring_ok),
            "module_queries": AM.result.size, "module_equal": int(mod_ok)}

"""Finite modules over a FiniteRing: submodule lattices, residuals, quotients, homs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import bits
from .bits import TooLargeError
from .finring import (FiniteRing, Ideal, _first, _hashable, _shape_diagnostics, _show,
                      group_diagnostics, ideal_generated, product_bits, proper_ideals,
                      all_ideals, sum_bits)
from .result import Diagnostic

MAX_GENERATE = 4096
MAX_ENUMERATE = 512


@dataclass(frozen=True, eq=False)
class FiniteModule:
    ring: FiniteRing
    size: int
    add: np.ndarray
    action: np.ndarray  # action[a, m] = a*m
    zero: int = 0
    label: str = "M"
    elements: tuple = ()
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if not self.elements:
            object.__setattr__(self, "elements", tuple(range(self.size)))

    def index(self, value) -> int:
        lookup = self._cache.get("index")
        if lookup is None:
            lookup = {_hashable(v): i for i, v in enumerate(self.elements)}
            self._cache["index"] = lookup
        key = _hashable(value)
        if key in lookup:
            return lookup[key]
        if isinstance(value, (int, np.integer)) and 0 <= value < self.size:
            return int(value)
        raise KeyError(f"{value!r} is not an element of {self.label}")

    def show(self, m: int) -> str:
        return _show(self.elements[m])

    def __repr__(self) -> str:
        return f"FiniteModule({self.label} over {self.ring.label}, size={self.size})"


def make_module(ring: FiniteRing, add, action, zero: int = 0, label: str = "M",
                elements: Sequence = ()) -> FiniteModule:
    add = np.asarray(add, dtype=np.intp)
    action = np.asarray(action, dtype=np.intp)
    return FiniteModule(ring, add.shape[0], add, action, zero, label, tuple(elements))


def ring_as_module(R: FiniteRing, label: Optional[str] = None) -> FiniteModule:
    return FiniteModule(R, R.size, R.add, R.mul, R.zero, label or R.label, R.elements)


def same_tables(M: FiniteModule, N: FiniteModule) -> bool:
    return (M.size == N.size and M.zero == N.zero and M.ring.size == N.ring.size
            and np.array_equal(M.add, N.add) and np.array_equal(M.action, N.action))


def module_validate(M: FiniteModule) -> list[Diagnostic]:
    """Empty iff M is a unital module over M.ring; one diagnostic per violated axiom."""
    n, r = M.size, M.ring.size
    add, act = np.asarray(M.add), np.asarray(M.action)
    out = _shape_diagnostics(add, (n, n), n, "add") + _shape_diagnostics(act, (r, n), n, "action")
    if not 0 <= M.zero < n:
        out.append(Diagnostic("zero_range", (M.zero,)))
    if out:
        return out
    out += group_diagnostics(add, M.zero)
    R = M.ring
    w = _first(act[R.one, :] != np.arange(n))
    if w is not None:
        out.append(Diagnostic("unital", (R.one,) + w, "1*m != m"))
    # (a+b)m == am + bm over (a, b, m)
    for a in range(r):
        lhs = act[R.add[a, :], :]
        rhs = add[act[a, :][None, :], act]
        w = _first(lhs != rhs)
        if w is not None:
            out.append(Diagnostic("ring_distributivity", (a,) + w, "(a+b)m != am+bm"))
            break
    # a(m+n) == am + an over (a, m, n)
    for a in range(r):
        lhs = act[a, add]
        rhs = add[act[a, :][:, None], act[a, :][None, :]]
        w = _first(lhs != rhs)
        if w is not None:
            out.append(Diagnostic("module_distributivity", (a,) + w, "a(m+n) != am+an"))
            break
    # (ab)m == a(bm) over (a, b, m)
    for a in range(r):
        lhs = act[R.mul[a, :], :]
        rhs = act[a, act]
        w = _first(lhs != rhs)
        if w is not None:
            out.append(Diagnostic("action_associativity", (a,) + w, "(ab)m != a(bm)"))
            break
    return out


# -- submodules ---------------------------------------------------------------

_VOLATILE = {"mask", "T", "IL", "report"}


def trim_cache(cache: dict, limit: int = 20000):
    """Drop per-submodule memo entries once a module cache grows past ``limit``."""
    if len(cache) > limit:
        for key in [k for k in cache if isinstance(k, tuple) and k[0] in _VOLATILE]:
            del cache[key]


@dataclass(frozen=True)
class Submodule:
    module: FiniteModule
    members: int

    @property
    def proper(self) -> bool:
        return self.members != bits.full(self.module.size)

    def __contains__(self, m: int) -> bool:
        return bool((self.members >> m) & 1)

    @property
    def elements(self) -> list[int]:
        return bits.indices(self.members)

    @property
    def mask(self) -> np.ndarray:
        key = ("mask", self.members)
        cache = self.module._cache
        if key not in cache:
            trim_cache(cache)
            cache[key] = bits.to_mask(self.members, self.module.size)
        return cache[key]

    def __len__(self) -> int:
        return bits.popcount(self.members)

    def __le__(self, other: "Submodule") -> bool:
        return bits.subset(self.members, other.members)

    def __repr__(self) -> str:
        return "Submodule{" + ",".join(self.module.show(x) for x in self.elements) + "}"


def full_submodule(M: FiniteModule) -> Submodule:
    return Submodule(M, bits.full(M.size))


def zero_submodule(M: FiniteModule) -> Submodule:
    return Submodule(M, 1 << M.zero)


def cyclic_bits(M: FiniteModule, m: int) -> int:
    key = ("cyclic", m)
    if key not in M._cache:
        mask = np.zeros(M.size, dtype=bool)
        mask[M.action[:, m]] = True
        M._cache[key] = bits.from_mask(mask)
    return M._cache[key]


def _generated_bits(M: FiniteModule, gens: Iterable[int]) -> int:
    out = 1 << M.zero
    for g in gens:
        c = cyclic_bits(M, int(g))
        if not bits.subset(c, out):
            out = sum_bits(M.add, out, c)
    return out


def submodule_generated(M: FiniteModule, gens: Iterable[int], cap: int = MAX_GENERATE) -> Submodule:
    if M.size > cap:
        raise TooLargeError(f"module {M.label} has {M.size} elements, cap is {cap}")
    return Submodule(M, _generated_bits(M, gens))


def submodule_sum(N: Submodule, K: Submodule) -> Submodule:
    _same_module(N, K)
    return Submodule(N.module, sum_bits(N.module.add, N.members, K.members))


def submodule_intersection(N: Submodule, K: Submodule) -> Submodule:
    _same_module(N, K)
    return Submodule(N.module, N.members & K.members)


def all_submodules(M: FiniteModule, cap: int = MAX_ENUMERATE,
                   max_iterations: int = 1 << 20) -> list[Submodule]:
    """Every submodule, sorted by (popcount, bitset)."""
    if M.size > cap:
        raise TooLargeError(f"module {M.label} has {M.size} elements, cap is {cap}")
    if "lattice" not in M._cache:
        gens = {cyclic_bits(M, m) for m in range(M.size)}
        lattice = bits.close_under_sums(gens, lambda x, y: sum_bits(M.add, x, y), max_iterations)
        M._cache["lattice"] = lattice
    return [Submodule(M, b) for b in M._cache["lattice"]]


def proper_submodules(M: FiniteModule, cap: int = MAX_ENUMERATE) -> list[Submodule]:
    return [P for P in all_submodules(M, cap) if P.proper]


def _same_module(P: Submodule, L: Submodule):
    if P.module is not L.module:
        raise ValueError("submodules belong to different modules")


# -- residuals ----------------------------------------------------------------

def residual_module_by_ring_elt(P: Submodule, a: int) -> Submodule:
    """(P :_M a) = {m : a*m in P}."""
    M = P.module
    return Submodule(M, bits.from_mask(P.mask[M.action[a, :]]))


def residual_ring_by_module_elt(P: Submodule, m: int) -> Ideal:
    """(P :_A m) = {a : a*m in P}."""
    M = P.module
    return Ideal(M.ring, bits.from_mask(P.mask[M.action[:, m]]))


def residual_ring_by_submodule(P: Submodule, L: Submodule) -> Ideal:
    """(P :_A L) = {a : aL contained in P}."""
    _same_module(P, L)
    M = P.module
    li = np.asarray(L.elements, dtype=np.intp)
    return Ideal(M.ring, bits.from_mask(P.mask[M.action[:, li]].all(axis=1)))


def annihilator(M: FiniteModule) -> Ideal:
    return residual_ring_by_submodule(zero_submodule(M), full_submodule(M))


def ideal_times_bits(M: FiniteModule, ideal_members: int, sub_members: int) -> int:
    key = ("IL", ideal_members, sub_members)
    hit = M._cache.get(key)
    if hit is None:
        ii = np.asarray(bits.indices(ideal_members), dtype=np.intp)
        li = np.asarray(bits.indices(sub_members), dtype=np.intp)
        gens = np.unique(M.action[ii[:, None], li[None, :]])
        hit = _generated_bits(M, gens.tolist())
        trim_cache(M._cache)
        M._cache[key] = hit
    return hit


def ideal_times_submodule(I: Ideal, L: Submodule) -> Submodule:
    """IL, the submodule generated by {a*x : a in I, x in L}."""
    if I.ring is not L.module.ring:
        raise ValueError("ideal and submodule live over different rings")
    return Submodule(L.module, ideal_times_bits(L.module, I.members, L.members))


# -- homomorphisms and quotients ----------------------------------------------

@dataclass(frozen=True, eq=False)
class ModuleHom:
    source: FiniteModule
    target: FiniteModule
    map: np.ndarray
    label: str = "f"

    def __call__(self, m: int) -> int:
        return int(self.map[m])

    @property
    def surjective(self) -> bool:
        return len(np.unique(self.map)) == self.target.size


def hom_validate(f: ModuleHom) -> list[Diagnostic]:
    S, T = f.source, f.target
    out = []
    if S.ring is not T.ring:
        return [Diagnostic("same_ring", (), "source and target over different rings")]
    mp = np.asarray(f.map)
    if mp.shape != (S.size,) or ((mp < 0) | (mp >= T.size)).any():
        return [Diagnostic("map_shape", tuple(mp.shape))]
    if mp[S.zero] != T.zero:
        out.append(Diagnostic("hom_zero", (S.zero,)))
    w = _first(mp[S.add] != T.add[mp[:, None], mp[None, :]])
    if w is not None:
        out.append(Diagnostic("hom_additive", w))
    w = _first(mp[S.action] != T.action[:, mp])
    if w is not None:
        out.append(Diagnostic("hom_linear", w))
    return out


def _hom_check(f: ModuleHom, P: Submodule, side: str):
    owner = f.source if side == "source" else f.target
    if P.module is not owner:
        raise ValueError(f"submodule does not live in the hom's {side}")


def hom_image(f: ModuleHom, P: Submodule) -> Submodule:
    _hom_check(f, P, "source")
    mask = np.zeros(f.target.size, dtype=bool)
    mask[f.map[P.mask]] = True
    return Submodule(f.target, bits.from_mask(mask))


def hom_preimage(f: ModuleHom, Q: Submodule) -> Submodule:
    _hom_check(f, Q, "target")
    return Submodule(f.source, bits.from_mask(Q.mask[f.map]))


def hom_kernel(f: ModuleHom) -> Submodule:
    return hom_preimage(f, zero_submodule(f.target))


def multiplication_map(M: FiniteModule, a: int) -> ModuleHom:
    return ModuleHom(M, M, np.asarray(M.action[a, :]), f"{M.ring.show(a)}*")


def hom_from_generators(source: FiniteModule, target: FiniteModule, images: dict) -> ModuleHom:
    """Extend generator images linearly; raises ValueError if inconsistent or incomplete."""
    if source.ring is not target.ring:
        raise ValueError("source and target over different rings")
    mp = np.full(source.size, -1, dtype=np.intp)
    mp[source.zero] = target.zero
    for g, v in images.items():
        if mp[g] not in (-1, v):
            raise ValueError(f"conflicting images for {g}")
        mp[g] = v
    # closure: every element is a sum of multiples of generators
    frontier = [g for g in range(source.size) if mp[g] >= 0]
    assigned = list(frontier)
    while frontier:
        nxt = []
        for x in frontier:
            for a in range(source.ring.size):
                y, v = int(source.action[a, x]), int(target.action[a, mp[x]])
                if mp[y] == -1:
                    mp[y] = v
                    nxt.append(y)
                elif mp[y] != v:
                    raise ValueError(f"images are not linear at {source.show(y)}")
            for z in list(assigned):
                y, v = int(source.add[x, z]), int(target.add[mp[x], mp[z]])
                if mp[y] == -1:
                    mp[y] = v
                    nxt.append(y)
                elif mp[y] != v:
                    raise ValueError(f"images are not additive at {source.show(y)}")
        assigned.extend(nxt)
        frontier = nxt
    if (mp < 0).any():
        raise ValueError("generators do not generate the source module")
    f = ModuleHom(source, target, mp)
    if hom_validate(f):
        raise ValueError("generator images do not define a homomorphism")
    return f


def quotient_module(M: FiniteModule, L: Submodule, label: Optional[str] = None):
    """M/L with each coset represented by its least element index.

    Returns (quotient, projection)."""
    if L.module is not M:
        raise ValueError("submodule does not live in M")
    li = np.asarray(L.elements, dtype=np.intp)
    rep = M.add[:, li].min(axis=1)
    reps = np.unique(rep)
    rank = np.full(M.size, -1, dtype=np.intp)
    rank[reps] = np.arange(len(reps))
    q = rank[rep]
    add = q[M.add[reps[:, None], reps[None, :]]]
    action = q[M.action[:, reps]]
    elements = tuple(M.elements[r] for r in reps)
    Q = FiniteModule(M.ring, len(reps), add, action, int(q[M.zero]),
                     label or f"{M.label}/{_short(L)}", elements)
    return Q, ModuleHom(M, Q, q, "pi")


def _short(L: Submodule) -> str:
    return "<" + ",".join(L.module.show(x) for x in L.elements[:4]) + (",..>" if len(L) > 4 else ">")


# -- multiplication modules ---------------------------------------------------

def presenting_ideals(N: Submodule) -> list[Ideal]:
    """All ideals I with IM = N."""
    M = N.module
    full = bits.full(M.size)
    return [I for I in all_ideals(M.ring) if ideal_times_bits(M, I.members, full) == N.members]


def is_multiplication_module(M: FiniteModule) -> bool:
    key = "is_mult"
    if key not in M._cache:
        full = full_submodule(M)
        ok = True
        for N in all_submodules(M):
            I = residual_ring_by_submodule(N, full)
            if ideal_times_bits(M, I.members, full.members) != N.members:
                ok = False
                break
        M._cache[key] = ok
    return M._cache[key]


def submodule_product(*subs: Submodule) -> Submodule:
    """Product of submodules of a multiplication module: (N1:M)(N2:M)...(Nk:M) M."""
    if not subs:
        raise ValueError("need at least one submodule")
    M = subs[0].module
    for s in subs[1:]:
        _same_module(subs[0], s)
    if not is_multiplication_module(M):
        raise ValueError(f"{M.label} is not a multiplication module")
    full = full_submodule(M)
    acc = residual_ring_by_submodule(subs[0], full).members
    for s in subs[1:]:
        acc = product_bits(M.ring, acc, residual_ring_by_submodule(s, full).members)
    return Submodule(M, ideal_times_bits(M, acc, full.members))

"""Finite commutative rings with identity, given by operation tables, and their ideals."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Optional, Sequence

import numpy as np

from . import bits
from .bits import TooLargeError
from .result import Check, Diagnostic

MAX_RING_SIZE = 64


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """Carrier is ``0..size-1``. ``elements`` holds a display value per index
    (an int for Z_n, a tuple for product or amalgam carriers)."""

    size: int
    add: np.ndarray
    mul: np.ndarray
    zero: int
    one: int
    unit_mask: int
    label: str = "R"
    elements: tuple = ()
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if not self.elements:
            object.__setattr__(self, "elements", tuple(range(self.size)))

    @property
    def units(self) -> list[int]:
        return bits.indices(self.unit_mask)

    @property
    def nonunits(self) -> list[int]:
        return [x for x in range(self.size) if not (self.unit_mask >> x) & 1]

    def is_unit(self, x: int) -> bool:
        return bool((self.unit_mask >> x) & 1)

    @property
    def neg(self) -> np.ndarray:
        if "neg" not in self._cache:
            rows, cols = np.nonzero(self.add == self.zero)
            neg = np.empty(self.size, dtype=np.intp)
            neg[rows] = cols
            self._cache["neg"] = neg
        return self._cache["neg"]

    def sub(self, x: int, y: int) -> int:
        return int(self.add[x, self.neg[y]])

    def index(self, value) -> int:
        """Carrier index of a display value (or of an index given directly)."""
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

    def show(self, x: int) -> str:
        return _show(self.elements[x])

    def power(self, x: int, k: int) -> int:
        out = self.one
        for _ in range(k):
            out = int(self.mul[out, x])
        return out

    def __repr__(self) -> str:
        return f"FiniteRing({self.label}, size={self.size})"


def _hashable(v):
    if isinstance(v, list):
        return tuple(_hashable(x) for x in v)
    if isinstance(v, tuple):
        return tuple(_hashable(x) for x in v)
    if isinstance(v, np.integer):
        return int(v)
    return v


def _show(v) -> str:
    if isinstance(v, tuple):
        return "(" + ",".join(_show(x) for x in v) + ")"
    return str(v)


def compute_unit_mask(mul: np.ndarray, one: int) -> int:
    return bits.from_mask((np.asarray(mul) == one).any(axis=1))


def make_ring(add, mul, zero: int = 0, one: int = 1, label: str = "R",
              elements: Sequence = (), unit_mask: Optional[int] = None) -> FiniteRing:
    add = np.asarray(add, dtype=np.intp)
    mul = np.asarray(mul, dtype=np.intp)
    n = add.shape[0]
    if unit_mask is None:
        unit_mask = compute_unit_mask(mul, one) if mul.shape == (n, n) else 0
    return FiniteRing(n, add, mul, zero, one, unit_mask, label, tuple(elements))


def make_zmod(n: int) -> FiniteRing:
    if n < 1:
        raise ValueError("Z_n needs n >= 1")
    r = np.arange(n)
    add = (r[:, None] + r[None, :]) % n
    mul = (r[:, None] * r[None, :]) % n
    if n == 1:
        units = 1
    else:
        units = bits.from_indices(x for x in range(n) if gcd(x, n) == 1)
    return FiniteRing(n, add, mul, 0, 1 % n, units, f"Z{n}", tuple(range(n)))


def ring_product(r1: FiniteRing, r2: FiniteRing, label: Optional[str] = None) -> FiniteRing:
    """Componentwise ring on pairs; pair (x, y) sits at index x*|r2| + y."""
    n1, n2 = r1.size, r2.size
    i1 = np.repeat(np.arange(n1), n2)
    i2 = np.tile(np.arange(n2), n1)
    add = r1.add[i1[:, None], i1[None, :]] * n2 + r2.add[i2[:, None], i2[None, :]]
    mul = r1.mul[i1[:, None], i1[None, :]] * n2 + r2.mul[i2[:, None], i2[None, :]]
    units = bits.from_indices(a * n2 + b for a in r1.units for b in r2.units)
    elements = tuple((r1.elements[a], r2.elements[b]) for a in range(n1) for b in range(n2))
    return FiniteRing(n1 * n2, add, mul, r1.zero * n2 + r2.zero, r1.one * n2 + r2.one,
                      units, label or f"{r1.label}x{r2.label}", elements)


def same_tables(r1: FiniteRing, r2: FiniteRing) -> bool:
    return (r1.size == r2.size and r1.zero == r2.zero and r1.one == r2.one
            and r1.unit_mask == r2.unit_mask
            and np.array_equal(r1.add, r2.add) and np.array_equal(r1.mul, r2.mul))


# -- validation ---------------------------------------------------------------

def _first(mask: np.ndarray) -> Optional[tuple]:
    if not mask.any():
        return None
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


def group_diagnostics(add: np.ndarray, zero: int, prefix: str = "add") -> list[Diagnostic]:
    """Abelian group axioms for an addition table already known to be square and in range."""
    n = add.shape[0]
    out = []
    r = np.arange(n)
    w = _first((add[zero, :] != r) | (add[:, zero] != r))
    if w is not None:
        out.append(Diagnostic(f"{prefix}_identity", (zero, w[0]), "zero is not neutral"))
    w = _first(~(add == zero).any(axis=1))
    if w is not None:
        out.append(Diagnostic(f"{prefix}_inverse", w, "element has no additive inverse"))
    w = _first(np.sort(add, axis=1) != r[None, :])
    if w is not None:
        out.append(Diagnostic(f"{prefix}_cancellation", w, "row is not a permutation"))
    w = _first(add != add.T)
    if w is not None:
        out.append(Diagnostic(f"{prefix}_commutativity", w))
    w = _associativity_witness(add)
    if w is not None:
        out.append(Diagnostic(f"{prefix}_associativity", w))
    return out


def _associativity_witness(op: np.ndarray) -> Optional[tuple]:
    n = op.shape[0]
    for x in range(n):
        lhs = op[op[x, :], :]           # (x*y)*z over (y, z)
        rhs = op[x, op]                 # x*(y*z)
        w = _first(lhs != rhs)
        if w is not None:
            return (x,) + w
    return None


def _shape_diagnostics(table: np.ndarray, shape: tuple, bound: int, name: str) -> list[Diagnostic]:
    if table.shape != shape:
        return [Diagnostic(f"{name}_shape", tuple(table.shape), f"expected {shape}")]
    w = _first((table < 0) | (table >= bound))
    if w is not None:
        return [Diagnostic(f"{name}_range", w, f"entry {int(table[w])} outside carrier")]
    return []


def ring_validate(R: FiniteRing) -> list[Diagnostic]:
    """Empty iff R is a commutative ring with identity and a correct unit mask.
    One diagnostic per violated axiom, witness = least violating tuple."""
    n = R.size
    add, mul = np.asarray(R.add), np.asarray(R.mul)
    out = _shape_diagnostics(add, (n, n), n, "add") + _shape_diagnostics(mul, (n, n), n, "mul")
    for name, x in (("zero", R.zero), ("one", R.one)):
        if not 0 <= x < n:
            out.append(Diagnostic(f"{name}_range", (x,)))
    if out:
        return out
    out += group_diagnostics(add, R.zero)
    w = _first(mul != mul.T)
    if w is not None:
        out.append(Diagnostic("mul_commutativity", w))
    w = _associativity_witness(mul)
    if w is not None:
        out.append(Diagnostic("mul_associativity", w))
    r = np.arange(n)
    w = _first((mul[R.one, :] != r) | (mul[:, R.one] != r))
    if w is not None:
        out.append(Diagnostic("mul_identity", (R.one, w[0]), "one is not neutral"))
    # x*(y+z) == x*y + x*z and (y+z)*x == y*x + z*x
    for x in range(n):
        lhs = mul[x, add]
        rhs = add[mul[x, :][:, None], mul[x, :][None, :]]
        w = _first(lhs != rhs)
        if w is None:
            lhs = mul[add, x]
            rhs = add[mul[:, x][:, None], mul[:, x][None, :]]
            w = _first(lhs != rhs)
        if w is not None:
            out.append(Diagnostic("distributivity", (x,) + w))
            break
    true_units = compute_unit_mask(mul, R.one)
    if true_units != R.unit_mask:
        w = bits.lowest(true_units ^ R.unit_mask)
        out.append(Diagnostic("unit_mask", (w,), "unit mask disagrees with inverse search"))
    if n > 1 and (R.unit_mask >> R.zero) & 1:
        out.append(Diagnostic("zero_not_unit", (R.zero,)))
    return out


# -- ideals -------------------------------------------------------------------

@dataclass(frozen=True)
class Ideal:
    ring: FiniteRing
    members: int

    @property
    def proper(self) -> bool:
        return not (self.members >> self.ring.one) & 1

    def __contains__(self, x: int) -> bool:
        return bool((self.members >> x) & 1)

    @property
    def elements(self) -> list[int]:
        return bits.indices(self.members)

    @property
    def mask(self) -> np.ndarray:
        return bits.to_mask(self.members, self.ring.size)

    def __len__(self) -> int:
        return bits.popcount(self.members)

    def __le__(self, other: "Ideal") -> bool:
        return bits.subset(self.members, other.members)

    def __repr__(self) -> str:
        return "Ideal{" + ",".join(self.ring.show(x) for x in self.elements) + "}"


def _check_size(R: FiniteRing, cap: int = MAX_RING_SIZE):
    if R.size > cap:
        raise TooLargeError(f"ring {R.label} has {R.size} elements, cap is {cap}")


def principal_bits(R: FiniteRing, x: int) -> int:
    key = ("principal", x)
    if key not in R._cache:
        R._cache[key] = bits.from_mask(np.isin(np.arange(R.size), R.mul[x]))
    return R._cache[key]


def sum_bits(add: np.ndarray, x: int, y: int) -> int:
    """Bitset of {a + b : a in x, b in y} for subgroup bitsets x, y."""
    xi = np.asarray(bits.indices(x), dtype=np.intp)
    yi = np.asarray(bits.indices(y), dtype=np.intp)
    mask = np.zeros(add.shape[0], dtype=bool)
    mask[add[xi[:, None], yi[None, :]].ravel()] = True
    return bits.from_mask(mask)


def ideal_generated(R: FiniteRing, gens: Iterable[int]) -> Ideal:
    out = bits.from_indices([R.zero])
    for g in gens:
        p = principal_bits(R, int(g))
        if not bits.subset(p, out):
            out = sum_bits(R.add, out, p)
    return Ideal(R, out)


def whole(R: FiniteRing) -> Ideal:
    return Ideal(R, bits.full(R.size))


def zero_ideal(R: FiniteRing) -> Ideal:
    return Ideal(R, 1 << R.zero)


def _same_ring(I: Ideal, J: Ideal):
    if I.ring is not J.ring:
        raise ValueError("ideals belong to different rings")


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ring, sum_bits(I.ring.add, I.members, J.members))


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ring, I.members & J.members)


def product_bits(R: FiniteRing, x: int, y: int) -> int:
    key = ("prod", x, y) if x <= y else ("prod", y, x)
    hit = R._cache.get(key)
    if hit is None:
        xi = np.asarray(bits.indices(x), dtype=np.intp)
        yi = np.asarray(bits.indices(y), dtype=np.intp)
        gens = np.unique(R.mul[xi[:, None], yi[None, :]])
        hit = ideal_generated(R, gens.tolist()).members
        R._cache[key] = hit
    return hit


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ring, product_bits(I.ring, I.members, J.members))


def colon_bits(R: FiniteRing, J: int, K: int) -> int:
    """(J : K) = {x : xK is contained in J} for ideal bitsets J, K."""
    key = ("colon", J, K)
    hit = R._cache.get(key)
    if hit is None:
        ki = np.asarray(bits.indices(K), dtype=np.intp)
        jm = bits.to_mask(J, R.size)
        hit = bits.from_mask(jm[R.mul[:, ki]].all(axis=1))
        R._cache[key] = hit
    return hit


def ideal_colon(J: Ideal, K: Ideal) -> Ideal:
    _same_ring(J, K)
    return Ideal(J.ring, colon_bits(J.ring, J.members, K.members))


def radical(I: Ideal) -> Ideal:
    R = I.ring
    out = 0
    for a in range(R.size):
        seen = set()
        x = a
        while x not in seen:
            if x in I:
                out |= 1 << a
                break
            seen.add(x)
            x = int(R.mul[x, a])
    return Ideal(R, out)


def all_ideals(R: FiniteRing, cap: int = MAX_RING_SIZE) -> list[Ideal]:
    """Every ideal, sorted by (size, bitset)."""
    _check_size(R, cap)
    if "ideals" not in R._cache:
        gens = [principal_bits(R, x) for x in range(R.size)]
        lattice = bits.close_under_sums(gens, lambda x, y: sum_bits(R.add, x, y))
        if (1 << R.zero) not in lattice:
            lattice = sorted(set(lattice) | {1 << R.zero}, key=bits.canonical_key)
        R._cache["ideals"] = lattice
    return [Ideal(R, b) for b in R._cache["ideals"]]


def proper_ideals(R: FiniteRing, cap: int = MAX_RING_SIZE) -> list[Ideal]:
    return [I for I in all_ideals(R, cap) if I.proper]


def maximal_ideals(R: FiniteRing) -> list[Ideal]:
    props = proper_ideals(R)
    return [I for I in props
            if not any(I.members != J.members and I <= J for J in props)]


def is_local(R: FiniteRing) -> Optional[Ideal]:
    maxes = maximal_ideals(R)
    return maxes[0] if len(maxes) == 1 else None


def jacobson_radical(R: FiniteRing) -> Ideal:
    out = bits.full(R.size)
    for m in maximal_ideals(R):
        out &= m.members
    return Ideal(R, out)


# -- ideal predicates ---------------------------------------------------------

def _require_proper(I: Ideal):
    if not I.proper:
        raise ValueError("proper ideal required")


def is_prime_ideal(I: Ideal) -> Check:
    """ab in I implies a in I or b in I; witness (a, b)."""
    _require_proper(I)
    R, m = I.ring, I.mask
    viol = m[R.mul] & ~m[:, None] & ~m[None, :]
    w = _first(viol)
    return Check(w is None, w)


def is_2absorbing_ideal(I: Ideal) -> Check:
    """abc in I implies ab, ac or bc in I; witness (a, b, c)."""
    _require_proper(I)
    R, m = I.ring, I.mask
    mul = R.mul
    n = R.size
    for a in range(n):
        ab = mul[a, :]                       # (b,)
        abc = mul[ab[:, None], np.arange(n)[None, :]]
        ac = mul[a, :][None, :]
        bc = mul
        viol = m[abc] & ~m[ab][:, None] & ~m[ac] & ~m[bc]
        w = _first(viol)
        if w is not None:
            return Check(False, (a,) + w)
    return Check(True)


def is_1absorbing_prime_ideal(I: Ideal) -> Check:
    """For nonunits a, b, c: abc in I implies ab in I or c in I; witness (a, b, c)."""
    _require_proper(I)
    return _one_absorbing_bits(I.ring, I.members)


def _one_absorbing_bits(R: FiniteRing, members: int) -> Check:
    key = ("1abs", members)
    hit = R._cache.get(key)
    if hit is None:
        m = bits.to_mask(members, R.size)
        nu = np.asarray(R.nonunits, dtype=np.intp)
        ab = R.mul[nu[:, None], nu[None, :]]
        abc = R.mul[ab[:, :, None], nu[None, None, :]]
        viol = m[abc] & ~m[ab][:, :, None] & ~m[nu][None, None, :]
        w = _first(viol)
        hit = Check(True) if w is None else Check(False, tuple(int(nu[i]) for i in w))
        R._cache[key] = hit
    return hit


def one_absorbing_prime_bits(R: FiniteRing, members: int) -> bool:
    """Same predicate as is_1absorbing_prime_ideal on a raw bitset (proper assumed)."""
    return _one_absorbing_bits(R, members).holds

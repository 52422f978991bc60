"""Bitset helpers. Members of ideals and submodules are stored as Python ints,
bit ``i`` set iff carrier element ``i`` belongs to the set."""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np


class TooLargeError(ValueError):
    """Raised when an enumeration entry point is asked to exceed its cap."""


def from_indices(indices: Iterable[int]) -> int:
    bits = 0
    for i in indices:
        bits |= 1 << int(i)
    return bits


def from_mask(mask: np.ndarray) -> int:
    packed = np.packbits(np.asarray(mask, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def to_mask(bits: int, n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def indices(bits: int) -> list[int]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


def iter_indices(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def lowest(bits: int) -> int:
    """Index of the least set bit; -1 for the empty set."""
    return (bits & -bits).bit_length() - 1


def popcount(bits: int) -> int:
    return bin(bits).count("1")


def full(n: int) -> int:
    return (1 << n) - 1


def subset(a: int, b: int) -> bool:
    return a & ~b == 0


def canonical_key(bits: int) -> tuple[int, int]:
    """Sort key used for every submodule/ideal listing: (popcount, bitset)."""
    return (popcount(bits), bits)


def close_under_sums(generators: Iterable[int], add_sets, cap_iterations: int = 1 << 20) -> list[int]:
    """All sums of the given subgroup bitsets, including the zero subgroup.

    ``add_sets(x, y)`` must return the bitset of the subgroup sum of x and y.
    Every subgroup generated by a family of cyclic subgroups is reached by adding
    one generator at a time, so a breadth-first closure over the generator list
    enumerates the full lattice.
    """
    gens = sorted(set(generators), key=canonical_key)
    seen: set[int] = set(gens)
    frontier = list(gens)
    steps = 0
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                steps += 1
                if steps > cap_iterations:
                    raise TooLargeError(f"sum closure exceeded {cap_iterations} iterations")
                if subset(g, x):
                    continue
                s = add_sets(x, g)
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return sorted(seen, key=canonical_key)

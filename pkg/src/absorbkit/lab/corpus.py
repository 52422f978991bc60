"""Deterministic corpus of rings, modules and constructions for the theorem suite.

Instances are plain descriptors (label + recipe tuple); the structures themselves
are rebuilt on demand through memoized builders, so a descriptor can be shipped to
a worker process and rebuilt there bit-identically."""

from __future__ import annotations

import re
from dataclasses import dataclass, field, asdict
from typing import Iterator, Optional

from .. import bits
from ..construct import (amalgamate_module, amalgamate_ring, direct_sum, free_tensor,
                         product_modules, product_ring)
from ..finmod import FiniteModule, Submodule, ideal_times_bits, quotient_module, ring_as_module
from ..finring import FiniteRing, Ideal, all_ideals, ideal_generated, make_zmod, principal_bits

DEFAULT_RINGS = ("Z2", "Z3", "Z4", "Z6", "Z8", "Z9", "Z12", "Z2xZ3", "Z4xZ4", "Z2xZ3xZ4",
                 "Z4|><|<2>", "Z8|><|<2>", "Z8|><|<4>", "Z6|><|<2>")
RECIPES = ("ring", "quotient", "sum", "product", "amalgam", "tensor")


@dataclass(frozen=True)
class CorpusConfig:
    rings: tuple = DEFAULT_RINGS
    recipes: tuple = RECIPES
    max_ring: int = 64
    max_module: int = 144
    max_sum_ring: int = 16          # direct sums are only formed over rings this small
    max_amalgam: int = 256
    max_tensor: int = 4096
    tensor_ranks: tuple = (2, 3)
    max_submodules: int = 512
    max_ideals: int = 64
    mclosed_module: int = 16
    mclosed_ideals: int = 16
    max_chains: int = 5000
    sampled_sets: int = 4           # seeded random candidate sets per module for the Krull check
    fixtures: bool = True
    seed: int = 0
    theorems: tuple = ()            # empty selects every registered theorem

    def __post_init__(self):
        for name in ("max_ring", "max_module", "max_amalgam", "max_tensor", "max_submodules",
                     "max_ideals", "mclosed_module", "mclosed_ideals", "max_chains"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        object.__setattr__(self, "rings", tuple(self.rings))
        object.__setattr__(self, "recipes", tuple(self.recipes))
        object.__setattr__(self, "theorems", tuple(self.theorems))
        object.__setattr__(self, "tensor_ranks", tuple(self.tensor_ranks))

    def as_dict(self) -> dict:
        return {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(self).items()}


@dataclass(frozen=True)
class Instance:
    label: str
    kind: str               # "ring", "module", "amalgam" or "tensor"
    spec: tuple
    unit: str               # catalog ring this instance belongs to (work-unit key)
    size: int
    skip: Optional[str] = None
    tags: tuple = field(default=())


# -- ring catalog -------------------------------------------------------------

_AMALGAM = re.compile(r"^(.+)\|><\|<([^<>]*)>$")
_ZMOD = re.compile(r"^Z(\d+)$")
_RINGS: dict = {}
_AMALGAMS: dict = {}


def register_ring(name: str, R: FiniteRing, amalgam=None) -> None:
    """Make an externally built ring (and its amalgam data) resolvable by name."""
    _RINGS[name] = R
    if amalgam is not None:
        _AMALGAMS[name] = amalgam


def register_module(spec: tuple, M: FiniteModule) -> None:
    _MODULES[spec] = M


def parse_ring_name(name: str) -> tuple:
    m = _AMALGAM.match(name)
    if m:
        gens = tuple(int(g) for g in m.group(2).split(",") if g.strip())
        return ("amalgam", m.group(1), gens)
    if "x" in name:
        return ("product", tuple(name.split("x")))
    m = _ZMOD.match(name)
    if m:
        return ("zmod", int(m.group(1)))
    raise ValueError(f"unknown ring name {name!r}")


def build_ring(name: str) -> FiniteRing:
    if name not in _RINGS:
        kind = parse_ring_name(name)
        if kind[0] == "zmod":
            R = make_zmod(kind[1])
        elif kind[0] == "product":
            parts = [build_ring(p) for p in kind[1]]
            R = parts[0]
            for p in parts[1:]:
                R = product_ring(R, p)
        else:
            R = build_amalgam(name).result
        object.__setattr__(R, "label", name)
        _RINGS[name] = R
    return _RINGS[name]


def build_amalgam(name: str):
    if name in _AMALGAMS:
        return _AMALGAMS[name]
    _, base, gens = parse_ring_name(name)
    A = build_ring(base)
    return amalgamate_ring(A, ideal_generated(A, [A.index(g) for g in gens]))


def ring_factors(name: str) -> list[str]:
    kind = parse_ring_name(name)
    return list(kind[1]) if kind[0] == "product" else [name]


def ideal_label(I: Ideal) -> str:
    """Short generator label: a single generator when principal, else a greedy generating set."""
    R = I.ring
    for x in I.elements:
        if principal_bits(R, x) == I.members:
            return f"<{R.show(x)}>"
    gens, acc = [], 1 << R.zero
    for x in I.elements:
        if not (acc >> x) & 1:
            gens.append(x)
            acc = ideal_generated(R, gens).members
    return "<" + ",".join(R.show(g) for g in gens) + ">"


# -- module builders ----------------------------------------------------------

_MODULES: dict = {}


def self_module(R: FiniteRing) -> FiniteModule:
    if "self_module" not in R._cache:
        R._cache["self_module"] = ring_as_module(R)
    return R._cache["self_module"]


def build_module(spec: tuple) -> FiniteModule:
    """Rebuild (memoized) the module described by a recipe tuple."""
    if spec in _MODULES:
        return _MODULES[spec]
    kind = spec[0]
    if kind == "ring":
        name = spec[1]
        if parse_ring_name(name)[0] == "product":
            M = build_module(("prod", name, tuple(("ring", f) for f in ring_factors(name))))
        else:
            M = self_module(build_ring(name))
    elif kind == "quot":
        R = build_ring(spec[1])
        base = self_module(R)
        M, _ = quotient_module(base, Submodule(base, spec[2]), f"{spec[1]}/{ideal_label(Ideal(R, spec[2]))}")
    elif kind == "sum":
        M = direct_sum(*(build_module(s) for s in spec[2]),
                       label="+".join(build_module(s).label for s in spec[2]))
    elif kind == "prod":
        M = product_modules(*(build_module(s) for s in spec[2]))
    elif kind == "amalgam":
        base = build_module(spec[1])
        M = amalgamate_module(base, Ideal(base.ring, spec[2])).result
    elif kind == "tensor":
        M = free_tensor(build_module(spec[1]), spec[2])
    else:
        raise ValueError(f"unknown module recipe {spec!r}")
    _MODULES[spec] = M
    return M


def module_label(spec: tuple) -> str:
    kind = spec[0]
    if kind in ("ring", "doc"):
        return spec[-1]
    if kind == "quot":
        return f"{spec[1]}/{ideal_label(Ideal(build_ring(spec[1]), spec[2]))}"
    if kind in ("sum", "prod"):
        sep = "+" if kind == "sum" else " x "
        return sep.join(module_label(s) if s[0] != "sum" else f"({module_label(s)})" for s in spec[2])
    if kind == "amalgam":
        base = build_module(spec[1])
        return f"({module_label(spec[1])}) |><| {ideal_label(Ideal(base.ring, spec[2]))}"
    if kind == "tensor":
        return f"({module_label(spec[1])})^{spec[2]}"
    raise ValueError(spec)


def _quotient_size(R: FiniteRing, I: Ideal) -> int:
    return R.size // len(I)


def _base_module_specs(name: str, config: CorpusConfig) -> list[tuple[tuple, int]]:
    """(spec, size) for ring, quotient and direct-sum recipes over a non-product ring."""
    R = build_ring(name)
    ideals = all_ideals(R)
    proper = [I for I in ideals if I.proper]
    out = []
    if "ring" in config.recipes:
        out.append((("ring", name), R.size))
    if "quotient" in config.recipes:
        for I in proper:
            if I.members != 1 << R.zero:
                out.append((("quot", name, I.members), _quotient_size(R, I)))
    if "sum" in config.recipes and R.size <= config.max_sum_ring:
        summands = [(("ring", name), R.size)] + [
            (("quot", name, I.members), _quotient_size(R, I)) for I in proper if I.members != 1 << R.zero]
        for i, (s1, n1) in enumerate(summands):
            for s2, n2 in summands[i:]:
                out.append((("sum", name, (s1, s2)), n1 * n2))
    return out


def _product_module_specs(name: str, config: CorpusConfig) -> list[tuple[tuple, int]]:
    choices = []
    for f in ring_factors(name):
        R = build_ring(f)
        opts = [(("ring", f), R.size)]
        if "quotient" in config.recipes:
            opts += [(("quot", f, I.members), _quotient_size(R, I))
                     for I in all_ideals(R) if I.proper and I.members != 1 << R.zero]
        choices.append(opts)
    out = []

    def rec(i, acc, size):
        if i == len(choices):
            specs = tuple(s for s, _ in acc)
            if all(s[0] == "ring" for s in specs):
                out.append((("ring", name), size))
            else:
                out.append((("prod", name, specs), size))
            return
        for opt in choices[i]:
            rec(i + 1, acc + [opt], size * opt[1])

    rec(0, [], 1)
    if "ring" not in config.recipes:
        out = [o for o in out if o[0][0] != "ring"]
    if "product" not in config.recipes:
        out = [o for o in out if o[0][0] == "ring"]
    return out


def fixture_specs(config: CorpusConfig) -> list[tuple[str, tuple, int]]:
    """Pinned fixtures: (unit, spec, size)."""
    if not config.fixtures or "Z12" not in config.rings:
        return []
    Z12 = build_ring("Z12")
    two = ideal_generated(Z12, [2]).members
    three = ideal_generated(Z12, [3]).members
    spec = ("sum", "Z12", (("quot", "Z12", two), ("quot", "Z12", three), ("ring", "Z12")))
    return [("Z12", spec, 72)]


def module_specs(name: str, config: CorpusConfig) -> list[tuple[tuple, int]]:
    if parse_ring_name(name)[0] == "product":
        return _product_module_specs(name, config)
    return _base_module_specs(name, config)


def generate_corpus(config: CorpusConfig) -> Iterator[Instance]:
    """Deterministic instance stream in catalog order."""
    fixtures = fixture_specs(config)
    for name in config.rings:
        R = build_ring(name)
        if R.size > config.max_ring:
            yield Instance(f"ring {name}", "ring", ("ring", name), name, R.size,
                           skip=f"ring size {R.size} exceeds {config.max_ring}")
            continue
        yield Instance(f"ring {name}", "ring", ("ring", name), name, R.size,
                       tags=("amalgam",) if parse_ring_name(name)[0] == "amalgam" else ())
        specs = module_specs(name, config) + [(s, n) for u, s, n in fixtures if u == name]
        for spec, size in specs:
            skip = None if size <= config.max_module else f"module size {size} exceeds {config.max_module}"
            tags = ("fixture",) if any(spec == s for _, s, _ in fixtures) else ()
            yield Instance(module_label(spec), "module", spec, name, size, skip, tags)
        if "tensor" in config.recipes:
            for spec, size in specs:
                if spec[0] == "sum":
                    continue
                for k in config.tensor_ranks:
                    n = size ** k
                    skip = None if n <= config.max_tensor else f"tensor size {n} exceeds {config.max_tensor}"
                    tspec = ("tensor", spec, k)
                    yield Instance(module_label(tspec), "tensor", tspec, name, n, skip)
        kind = parse_ring_name(name)
        if kind[0] == "amalgam" and "amalgam" in config.recipes:
            AR = build_amalgam(name)
            base = kind[1]
            for spec, size in module_specs(base, config):
                M = build_module(spec) if size <= config.max_amalgam else None
                if M is None:
                    n, skip = size, f"base module size {size} exceeds {config.max_amalgam}"
                else:
                    n = size * bits.popcount(ideal_times_bits(M, AR.ideal.members, bits.full(M.size)))
                    skip = None if n <= config.max_amalgam else f"amalgam size {n} exceeds {config.max_amalgam}"
                aspec = ("amalgam", spec, AR.ideal.members)
                yield Instance(module_label(aspec), "amalgam", aspec, name, n, skip)


def find_instance(config: CorpusConfig, label: str) -> Instance:
    for inst in generate_corpus(config):
        if inst.label == label:
            return inst
    raise KeyError(label)

"""Pinned fixtures: small structures whose classification is checked against a golden file."""

from __future__ import annotations

from ..classify import FLAGS, classify
from ..finmod import Submodule, zero_submodule
from ..finring import Ideal, ideal_generated, is_1absorbing_prime_ideal, is_prime_ideal
from .corpus import build_module, build_ring


def _z12_sum(*parts):
    Z12 = build_ring("Z12")
    specs = []
    for g in parts:
        specs.append(("ring", "Z12") if g is None else ("quot", "Z12", ideal_generated(Z12, [g]).members))
    return build_module(("sum", "Z12", tuple(specs)))


def fixture_structures() -> dict:
    """name -> proper submodule (or ideal) to classify."""
    Z8 = build_ring("Z8")
    return {
        "Z4 zero submodule": zero_submodule(build_module(("ring", "Z4"))),
        "Z12-module Z2+Z3+Z12 zero submodule": zero_submodule(_z12_sum(2, 3, None)),
        "Z12-module Z2+Z3 zero submodule": zero_submodule(_z12_sum(2, 3)),
        "Z8 submodule <4>": Submodule(build_module(("ring", "Z8")), ideal_generated(Z8, [4]).members),
        "Z8 ideal <4>": ideal_generated(Z8, [4]),
    }


def _show(M, w) -> str:
    *ring, m = w
    return "(" + ",".join([M.ring.show(a) for a in ring] + [M.show(m)]) + ")"


def fixture_report() -> dict:
    out = {}
    for name, obj in fixture_structures().items():
        if isinstance(obj, Ideal):
            p, o = is_prime_ideal(obj), is_1absorbing_prime_ideal(obj)
            out[name] = {"prime": p.holds, "one_abs_prime": o.holds,
                         "witnesses": {k: list(c.witness) for k, c in (("prime", p), ("one_abs_prime", o))
                                       if not c.holds}}
            continue
        r = classify(obj)
        out[name] = {"size": obj.module.size, **{f: r.flags[f] for f in FLAGS},
                     "witnesses": {f: _show(obj.module, w) for f, w in sorted(r.witnesses.items())}}
    return out

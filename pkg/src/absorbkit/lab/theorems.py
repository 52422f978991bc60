"""One checker per verified statement. Each checker sweeps its instance exhaustively
and returns a Verdict (or None when the statement does not apply to the instance)."""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .. import bits
from ..bits import TooLargeError
from ..classify import (PREDICATES, FLAGS, SKIPPED, classical_1abs_oracles, classify,
                        is_c1ap_m_closed, maximal_disjoint_submodules, membership_table,
                        minimal_classical_1abs_primes, violates)
from ..construct import (amalgam_residual_check, amalgam_residual_counts, amalgam_unit_check,
                         amalgamate_module, amalgamate_submodule, free_tensor_submodule,
                         product_factors, product_of_components, split_product_submodule)
from ..finmod import (FiniteModule, Submodule, all_submodules, annihilator, cyclic_bits, full_submodule,
                      hom_image, hom_preimage, is_multiplication_module, module_validate,
                      multiplication_map, quotient_module, residual_ring_by_submodule,
                      submodule_product)
from ..finring import (Ideal, all_ideals, is_1absorbing_prime_ideal, is_local, product_bits,
                       ring_validate)
from ..result import Check
from .corpus import CorpusConfig, Instance, build_amalgam, build_module, build_ring
from .verdict import Verdict, failed, passed

C1AP = "classical_one_abs_prime"


@dataclass
class Context:
    config: CorpusConfig
    instances: list = field(default_factory=list)   # every instance of the current work unit


@dataclass(frozen=True)
class Theorem:
    tid: str
    kind: str
    statement: str
    check: Callable


THEOREMS: dict[str, Theorem] = {}


def theorem(tid: str, kind: str, statement: str):
    def wrap(fn):
        THEOREMS[tid] = Theorem(tid, kind, statement, fn)
        return fn
    return wrap


# -- shared helpers -----------------------------------------------------------

def _idx(P) -> list[int]:
    return bits.indices(P.members)


def flags_of(P: Submodule) -> dict[str, Check]:
    """All six definitional checks; falls back to raw predicates if a report is rejected."""
    try:
        r = classify(P)
        return {n: Check(r.flags[n], r.witnesses.get(n)) for n in FLAGS}
    except ValueError:
        return {n: PREDICATES[n](P) for n in FLAGS}


def c1ap(P: Submodule) -> bool:
    return flags_of(P)[C1AP].holds


def proper_subs(M: FiniteModule, config: CorpusConfig) -> list[Submodule]:
    subs = all_submodules(M, cap=max(config.max_module, config.max_amalgam))
    if len(subs) > config.max_submodules:
        raise TooLargeError(f"{len(subs)} submodules exceed cap {config.max_submodules}")
    return [P for P in subs if P.proper]


def quotient(M: FiniteModule, L: Submodule):
    key = ("quot", L.members)
    if key not in M._cache:
        M._cache[key] = quotient_module(M, L)
    return M._cache[key]


def _flag_failure(tid, label, checks, P, flag, witness, **extra):
    cx = {"submodule": _idx(P), "predicate": flag}
    if witness is not None:
        cx["witness"] = tuple(int(x) for x in witness)
    cx.update(extra)
    return failed(tid, label, checks, cx, recheck=lambda w: violates(P, flag, w))


def _module_of(inst: Instance) -> FiniteModule:
    return build_module(inst.spec)


# -- implication chain --------------------------------------------------------

@theorem("p1", "module", "classical prime implies classical 1-absorbing prime implies classical 2-absorbing")
def check_p1(ctx, inst):
    M = _module_of(inst)
    n = 0
    for P in proper_subs(M, ctx.config):
        f = flags_of(P)
        n += 1
        if f["classical_prime"].holds and not f[C1AP].holds:
            return _flag_failure("p1", inst.label, n, P, C1AP, f[C1AP].witness)
        if f[C1AP].holds and not f["classical_two_absorbing"].holds:
            return _flag_failure("p1", inst.label, n, P, "classical_two_absorbing",
                                 f["classical_two_absorbing"].witness)
    return passed("p1", inst.label, n)


@theorem("pro2", "module", "1-absorbing prime implies classical 1-absorbing prime")
def check_pro2(ctx, inst):
    M = _module_of(inst)
    n = 0
    for P in proper_subs(M, ctx.config):
        f = flags_of(P)
        n += 1
        if f["one_abs_prime"].holds and not f[C1AP].holds:
            return _flag_failure("pro2", inst.label, n, P, C1AP, f[C1AP].witness)
    return passed("pro2", inst.label, n)


@theorem("semiprime", "module", "classical prime iff classical 1-absorbing prime and semiprime")
def check_semiprime(ctx, inst):
    M = _module_of(inst)
    n = 0
    for P in proper_subs(M, ctx.config):
        f = flags_of(P)
        n += 1
        lhs = f["classical_prime"].holds
        rhs = f[C1AP].holds and f["semiprime"].holds
        if lhs and not rhs:
            flag = C1AP if not f[C1AP].holds else "semiprime"
            return _flag_failure("semiprime", inst.label, n, P, flag, f[flag].witness)
        if rhs and not lhs:
            return _flag_failure("semiprime", inst.label, n, P, "classical_prime",
                                 f["classical_prime"].witness)
    return passed("semiprime", inst.label, n)


# -- homomorphisms and quotients ----------------------------------------------

@theorem("thom_i", "module", "preimage of a classical 1-absorbing prime is whole or classical 1-absorbing prime")
def check_thom_i(ctx, inst):
    M = _module_of(inst)
    full = bits.full(M.size)
    n = 0
    subs = proper_subs(M, ctx.config)
    # projections onto quotients
    for L in subs:
        Q, pi = quotient(M, L)
        for P2 in proper_subs(Q, ctx.config):
            if not c1ap(P2):
                continue
            pre = hom_preimage(pi, P2)
            n += 1
            if pre.members != full and not c1ap(pre):
                return failed("thom_i", inst.label, n, {"map": f"projection mod {_idx(L)}",
                                                       "target_submodule": _idx(P2),
                                                       "preimage": _idx(pre)})
    # multiplication maps x -> a*x
    good = [P for P in subs if c1ap(P)]
    for a in range(M.ring.size):
        f = multiplication_map(M, a)
        for P in good:
            pre = hom_preimage(f, P)
            n += 1
            if pre.members != full and not c1ap(pre):
                return failed("thom_i", inst.label, n, {"map": f"multiplication by {a}",
                                                       "target_submodule": _idx(P),
                                                       "preimage": _idx(pre)})
    return passed("thom_i", inst.label, n)


@theorem("thom_ii", "module", "surjective image of a classical 1-absorbing prime containing the kernel stays classical 1-absorbing prime")
def check_thom_ii(ctx, inst):
    M = _module_of(inst)
    n = 0
    subs = proper_subs(M, ctx.config)
    good = [P for P in subs if c1ap(P)]
    for L in subs:
        Q, pi = quotient(M, L)
        for P in good:
            if not L <= P:
                continue
            img = hom_image(pi, P)
            n += 1
            if not c1ap(img):
                return failed("thom_ii", inst.label, n, {"kernel": _idx(L), "submodule": _idx(P),
                                                        "image": _idx(img)})
    return passed("thom_ii", inst.label, n)


@theorem("cor1", "module", "P is classical 1-absorbing prime iff P/L is, for L inside P")
def check_cor1(ctx, inst):
    M = _module_of(inst)
    n = 0
    subs = proper_subs(M, ctx.config)
    for L in subs:
        Q, pi = quotient(M, L)
        for P in subs:
            if not L <= P:
                continue
            img = hom_image(pi, P)
            n += 1
            if c1ap(P) != c1ap(img):
                return failed("cor1", inst.label, n, {"L": _idx(L), "submodule": _idx(P),
                                                     "in_module": c1ap(P), "in_quotient": c1ap(img)})
    return passed("cor1", inst.label, n)


# -- residual characterizations -----------------------------------------------

def _oracle_check(tid, prefix, ctx, inst):
    M = _module_of(inst)
    n = 0
    skipped_forms = 0
    for P in proper_subs(M, ctx.config):
        truth = c1ap(P)
        res = classical_1abs_oracles(P, ideal_cap=ctx.config.max_ideals,
                                     submodule_cap=max(ctx.config.max_module, M.size))
        for name in sorted(res):
            if not name.startswith(prefix + "_"):
                continue
            val = res[name]
            if val == SKIPPED:
                skipped_forms += 1
                continue
            n += 1
            if val != truth:
                return failed(tid, inst.label, n, {"submodule": _idx(P), "form": name,
                                                  "definition": truth, "form_value": val})
    return passed(tid, inst.label, n, skipped_forms=skipped_forms)


@theorem("tmain", "module", "element, ideal and residual-ideal characterizations agree with the definition")
def check_tmain(ctx, inst):
    return _oracle_check("tmain", "tmain", ctx, inst)


@theorem("tmain2", "module", "colon-submodule and submodule-quantified characterizations agree with the definition")
def check_tmain2(ctx, inst):
    return _oracle_check("tmain2", "tmain2", ctx, inst)


@theorem("residual_union", "module", "(P:abcm) is the union of (P:abm) and (P:cm) and equals one of them")
def check_residual_union(ctx, inst):
    M = _module_of(inst)
    R = M.ring
    nu = np.asarray(R.nonunits, dtype=np.intp)
    n = 0
    for P in proper_subs(M, ctx.config):
        if not c1ap(P):
            continue
        T = membership_table(P)
        cols, ids = np.unique(T.T, axis=0, return_inverse=True)
        ids = ids.reshape(-1)
        col_bits = [bits.from_mask(c) for c in cols]
        pos = {b: i for i, b in enumerate(col_bits)}
        union = np.array([[pos.get(x | y, -1) for y in col_bits] for x in col_bits], dtype=np.intp)
        ab = np.unique(R.mul[nu[:, None], nu[None, :]])
        abc = R.mul[ab[:, None], nu[None, :]]                       # (ab, c)
        lhs = ids[M.action[abc]]                                     # (ab, c, m)
        left = ids[M.action[ab]][:, None, :]                         # (ab, 1, m)
        right = ids[M.action[nu]][None, :, :]                        # (1, c, m)
        bad_union = lhs != union[left, right]
        bad_side = (lhs != left) & (lhs != right)
        n += lhs.size
        bad = bad_union | bad_side
        if bad.any():
            i, j, m = (int(x) for x in np.argwhere(bad)[0])
            return failed("residual_union", inst.label, n,
                          {"submodule": _idx(P), "ab": int(ab[i]), "c": int(nu[j]), "m": m})
    return passed("residual_union", inst.label, n)


# -- local rings --------------------------------------------------------------

@theorem("cormain_i", "module", "an ideal is classical 1-absorbing prime as a submodule iff it is a 1-absorbing prime ideal")
def check_cormain_i(ctx, inst):
    if inst.spec[0] != "ring" and "ring_module" not in inst.tags:
        return None
    M = _module_of(inst)
    R = M.ring
    n = 0
    for P in proper_subs(M, ctx.config):
        I = Ideal(R, P.members)
        n += 1
        if c1ap(P) != is_1absorbing_prime_ideal(I).holds:
            return failed("cormain_i", inst.label, n, {"ideal": _idx(P), "as_submodule": c1ap(P),
                                                      "as_ideal": is_1absorbing_prime_ideal(I).holds})
    return passed("cormain_i", inst.label, n)


def local_square_zero(R) -> bool:
    m = is_local(R)
    return m is not None and product_bits(R, m.members, m.members) == 1 << R.zero


def cormain_universal(ctx: Context, ring_name: str) -> tuple[bool, Optional[dict], int]:
    """Is every proper submodule of every recipe module over the ring classical
    1-absorbing prime? Returns (value, first witness, submodules checked). Raises
    TooLargeError when no witness was found but some recipe module was skipped."""
    n = 0
    skipped = []
    for inst in ctx.instances:
        if inst.kind != "module" or inst.unit != ring_name:
            continue
        if inst.skip:
            skipped.append(inst.label)
            continue
        M = _module_of(inst)
        for P in proper_subs(M, ctx.config):
            n += 1
            f = flags_of(P)[C1AP]
            if not f.holds:
                return False, {"module": inst.label, "submodule": _idx(P),
                               "witness": tuple(int(x) for x in f.witness)}, n
    if skipped:
        raise TooLargeError(f"no witness found and {len(skipped)} recipe module(s) skipped")
    return True, None, n


@theorem("cormain_ii", "ring", "every proper submodule of every module is classical 1-absorbing prime iff the ring is local with square-zero maximal ideal")
def check_cormain_ii(ctx, inst):
    name = inst.spec[1]
    R = build_ring(name)
    universal, witness, n = cormain_universal(ctx, name)
    lsz = local_square_zero(R)
    detail = {"universal": universal, "local_square_zero": lsz}
    if witness:
        detail["universal_witness"] = witness
    if universal != lsz:
        return failed("cormain_ii", inst.label, n, dict(detail))
    return passed("cormain_ii", inst.label, n, **detail)


@theorem("theoremfin", "module", "classical 1-absorbing prime but not classical prime forces a local ring with q^2 inside some (P:m), m outside P")
def check_theoremfin(ctx, inst):
    M = _module_of(inst)
    R = M.ring
    n = 0
    for P in proper_subs(M, ctx.config):
        f = flags_of(P)
        if not (f[C1AP].holds and not f["classical_prime"].holds):
            continue
        n += 1
        q = is_local(R)
        if q is None:
            return failed("theoremfin", inst.label, n, {"submodule": _idx(P), "reason": "ring not local"})
        q2 = product_bits(R, q.members, q.members)
        T = membership_table(P)
        outside = [m for m in range(M.size) if m not in P]
        if not any(bits.subset(q2, bits.from_mask(T[:, m])) for m in outside):
            return failed("theoremfin", inst.label, n, {"submodule": _idx(P),
                                                       "reason": "q^2 not inside any (P:m)"})
    return passed("theoremfin", inst.label, n)


# -- chains and minimal members -----------------------------------------------

def maximal_chains(elements: list[int], limit: int) -> list[list[int]]:
    """All maximal chains of a finite poset of bitsets ordered by inclusion."""
    below = {x: [y for y in elements if y != x and bits.subset(y, x)] for x in elements}
    covers = {x: [y for y in below[x] if not any(z != y and bits.subset(y, z) for z in below[x])]
              for x in elements}
    tops = [x for x in elements if not any(x != y and bits.subset(x, y) for y in elements)]
    out = []

    def walk(chain):
        if len(out) > limit:
            raise TooLargeError(f"more than {limit} maximal chains")
        nxt = covers[chain[-1]]
        if not nxt:
            out.append(list(chain))
            return
        for y in nxt:
            walk(chain + [y])

    for t in tops:
        walk([t])
    return out


@theorem("pro4", "module", "the intersection of a chain of classical 1-absorbing primes is classical 1-absorbing prime")
def check_pro4(ctx, inst):
    M = _module_of(inst)
    good = [P.members for P in proper_subs(M, ctx.config) if c1ap(P)]
    chains = maximal_chains(good, ctx.config.max_chains)
    n = 0
    for chain in chains:
        inter = bits.full(M.size)
        for x in chain:
            inter &= x
        n += 1
        if not c1ap(Submodule(M, inter)):
            return failed("pro4", inst.label, n, {"chain": [bits.indices(x) for x in chain]})
    return passed("pro4", inst.label, n, chains=len(chains))


@theorem("tnoetherian", "module", "finitely many minimal classical 1-absorbing primes, and every one contains a minimal one")
def check_tnoetherian(ctx, inst):
    M = _module_of(inst)
    good = [P for P in proper_subs(M, ctx.config) if c1ap(P)]
    mins = minimal_classical_1abs_primes(M)
    n = 0
    for m in mins:
        n += 1
        if not c1ap(m) or any(K.members != m.members and K <= m for K in good):
            return failed("tnoetherian", inst.label, n, {"not_minimal": _idx(m)})
    for P in good:
        n += 1
        if not any(m <= P for m in mins):
            return failed("tnoetherian", inst.label, n, {"no_minimal_below": _idx(P)})
    return passed("tnoetherian", inst.label, n, minimal=len(mins))


# -- multiplication modules ---------------------------------------------------

@theorem("mult_triple", "module", "on multiplication modules: classical 1-absorbing prime iff KLNm in P forces KLm or Nm in P")
def check_mult_triple(ctx, inst):
    M = _module_of(inst)
    if not is_multiplication_module(M):
        return None
    subs = proper_subs(M, ctx.config)
    prod2 = {}
    triples = set()
    for K in subs:
        for L in subs:
            KL = prod2.setdefault((K.members, L.members), submodule_product(K, L))
            for N in subs:
                KLN = submodule_product(K, L, N)
                triples.add((KLN.members, KL.members, N.members))
    cyc = [Submodule(M, cyclic_bits(M, m)) for m in range(M.size)]
    times_m = {}

    def xm(X: int, m: int) -> int:
        key = (X, m)
        if key not in times_m:
            times_m[key] = submodule_product(Submodule(M, X), cyc[m]).members
        return times_m[key]

    triples = sorted(triples)
    n = 0
    for P in subs:
        form = True
        for m in range(M.size):
            for KLN, KL, N in triples:
                if bits.subset(xm(KLN, m), P.members) and not (
                        bits.subset(xm(KL, m), P.members) or bits.subset(xm(N, m), P.members)):
                    form = False
                    break
            if not form:
                break
        n += 1
        if form != c1ap(P):
            return failed("mult_triple", inst.label, n, {"submodule": _idx(P), "definition": c1ap(P),
                                                        "triple_form": form},
                          faithful=annihilator(M).members == 1 << M.ring.zero)
    return passed("mult_triple", inst.label, n)


@theorem("tmult", "module", "on multiplication modules: 1-absorbing prime iff classical 1-absorbing prime iff (P:M) is a 1-absorbing prime ideal")
def check_tmult(ctx, inst):
    M = _module_of(inst)
    if not is_multiplication_module(M):
        return None
    full = full_submodule(M)
    n = 0
    for P in proper_subs(M, ctx.config):
        f = flags_of(P)
        ideal = is_1absorbing_prime_ideal(residual_ring_by_submodule(P, full)).holds
        n += 1
        if not (f["one_abs_prime"].holds == f[C1AP].holds == ideal):
            return failed("tmult", inst.label, n, {"submodule": _idx(P), "one_abs_prime": f["one_abs_prime"].holds,
                                                  "classical": f[C1AP].holds, "colon_ideal": ideal})
    return passed("tmult", inst.label, n)


# -- m-closed sets ------------------------------------------------------------

def _mclosed_gate(ctx, M) -> Optional[str]:
    cfg = ctx.config
    if M.size > cfg.mclosed_module:
        return f"module size {M.size} exceeds {cfg.mclosed_module}"
    if len(all_ideals(M.ring)) > cfg.mclosed_ideals:
        return f"ring has more than {cfg.mclosed_ideals} ideals"
    return None


@theorem("pro9", "module", "P is classical 1-absorbing prime iff M - P is a classical 1-absorbing prime m-closed set")
def check_pro9(ctx, inst):
    M = _module_of(inst)
    gate = _mclosed_gate(ctx, M)
    if gate:
        return Verdict("pro9", inst.label, None, skipped=gate)
    full = bits.full(M.size)
    cfg = ctx.config
    n = 0
    for P in proper_subs(M, cfg):
        closed = is_c1ap_m_closed(M, full & ~P.members, cfg.mclosed_module, cfg.mclosed_ideals)
        n += 1
        if closed.holds != c1ap(P):
            return failed("pro9", inst.label, n, {"submodule": _idx(P), "definition": c1ap(P),
                                                 "m_closed": closed.holds})
    return passed("pro9", inst.label, n)


def candidate_sets(M: FiniteModule, subs: list, config: CorpusConfig, label: str) -> tuple[list[int], int]:
    """Complements of proper submodules plus seeded random nonempty subsets of M - {0}."""
    full = bits.full(M.size)
    out = [full & ~P.members for P in subs]
    rng = np.random.default_rng([config.seed, zlib.crc32(label.encode())])
    sampled = 0
    for _ in range(config.sampled_sets):
        mask = rng.random(M.size) < 0.5
        mask[M.zero] = False
        if mask.any():
            out.append(bits.from_mask(mask))
            sampled += 1
    return sorted(set(out)), sampled


@theorem("tkrull", "module", "maximal submodules disjoint from a nonempty m-closed set are classical 1-absorbing prime")
def check_tkrull(ctx, inst):
    M = _module_of(inst)
    gate = _mclosed_gate(ctx, M)
    if gate:
        return Verdict("tkrull", inst.label, None, skipped=gate)
    cfg = ctx.config
    subs = proper_subs(M, cfg)
    sets, sampled = candidate_sets(M, subs, cfg, inst.label)
    n = closed_count = 0
    for S in sets:
        if not is_c1ap_m_closed(M, S, cfg.mclosed_module, cfg.mclosed_ideals).holds:
            continue
        closed_count += 1
        for P in maximal_disjoint_submodules(M, S):
            n += 1
            if not P.proper or not c1ap(P):
                return failed("tkrull", inst.label, n, {"set": bits.indices(S), "maximal": _idx(P)})
    return passed("tkrull", inst.label, n, candidate_sets=len(sets), m_closed_sets=closed_count,
                  sampled_sets=sampled)


# -- products -----------------------------------------------------------------

def _top_split(P: Submodule) -> tuple[Submodule, Submodule]:
    left, right = P.module._cache["factors"]
    els = np.asarray(P.elements, dtype=np.intp)
    n2 = right.size
    return (Submodule(left, bits.from_indices(np.unique(els // n2).tolist())),
            Submodule(right, bits.from_indices(np.unique(els % n2).tolist())))


def _cp(P: Submodule) -> bool:
    return P.proper and flags_of(P)["classical_prime"].holds


@theorem("tcar", "module", "on M1 x M2: classical 1-absorbing prime iff one factor full and the other classical prime iff classical prime")
def check_tcar(ctx, inst):
    M = _module_of(inst)
    if "factors" not in M._cache:
        return None
    n = 0
    for P in proper_subs(M, ctx.config):
        P1, P2 = _top_split(P)
        n += 1
        if product_of_components([P1, P2]).members != P.members:
            return failed("tcar", inst.label, n, {"submodule": _idx(P), "reason": "not a product"})
        shape = (not P1.proper and _cp(P2)) or (not P2.proper and _cp(P1))
        f = flags_of(P)
        if not (f[C1AP].holds == shape == f["classical_prime"].holds):
            return failed("tcar", inst.label, n, {"submodule": _idx(P), "classical_1abs": f[C1AP].holds,
                                                 "shape": shape, "classical_prime": f["classical_prime"].holds})
    return passed("tcar", inst.label, n)


@theorem("tcargen", "module", "on n-fold products: classical 1-absorbing prime iff classical prime iff exactly one component is proper and classical prime")
def check_tcargen(ctx, inst):
    M = _module_of(inst)
    if "factors" not in M._cache:
        return None
    n = 0
    literal_mismatch = 0
    for P in proper_subs(M, ctx.config):
        parts = split_product_submodule(P)
        n += 1
        if product_of_components(parts).members != P.members:
            return failed("tcargen", inst.label, n, {"submodule": _idx(P), "reason": "not a product"})
        nonfull = [Q for Q in parts if Q.proper]
        shape = len(nonfull) == 1 and _cp(nonfull[0])
        literal = len(nonfull) == 1 and c1ap(nonfull[0])
        f = flags_of(P)
        if literal != f[C1AP].holds:
            literal_mismatch += 1
        if not (f[C1AP].holds == f["classical_prime"].holds == shape):
            return failed("tcargen", inst.label, n, {"submodule": _idx(P), "classical_1abs": f[C1AP].holds,
                                                    "shape": shape, "classical_prime": f["classical_prime"].holds})
    return passed("tcargen", inst.label, n, factors=len(product_factors(M)),
                  component_1abs_shape_mismatches=literal_mismatch)


# -- amalgamated duplication --------------------------------------------------

def _amalgam_parts(inst: Instance):
    base = build_module(inst.spec[1])
    I = Ideal(base.ring, inst.spec[2])
    return base, I, amalgamate_module(base, I)


@theorem("lemfin", "amalgam", "residuals of P joined with I are the joins of residuals of P")
def check_lemfin(ctx, inst):
    base, I, AM = _amalgam_parts(inst)
    totals = {"ring_queries": 0, "ring_equal": 0, "module_queries": 0, "module_equal": 0}
    n = 0
    for P in all_submodules(base):
        counts = amalgam_residual_counts(P, I)
        for k in totals:
            totals[k] += counts[k]
        n += 1
        if counts["ring_equal"] != counts["ring_queries"] or counts["module_equal"] != counts["module_queries"]:
            chk = amalgam_residual_check(P, I)
            return failed("lemfin", inst.label, n, {"submodule": _idx(P), "witness": chk.witness}, **totals)
    return passed("lemfin", inst.label, n, **totals)


@theorem("lemfin3", "ring", "(a,a+i) is a unit of the amalgamated ring iff a and a+i are units")
def check_lemfin3(ctx, inst):
    if "amalgam" not in inst.tags:
        return None
    AR = build_amalgam(inst.spec[1])
    diags = ring_validate(AR.result)
    if diags:
        return failed("lemfin3", inst.label, 1, {"ring_axiom": diags[0].as_dict()})
    if AR.result.size != AR.base.size * len(AR.ideal):
        return failed("lemfin3", inst.label, 1, {"reason": "cardinality"})
    chk = amalgam_unit_check(AR)
    if not chk:
        return failed("lemfin3", inst.label, AR.result.size, {"element": chk.witness[0]})
    return passed("lemfin3", inst.label, AR.result.size, units=len(AR.result.units))


TRANSFER_FLAGS = ("classical_prime", C1AP, "classical_two_absorbing")


@theorem("tmainnn", "amalgam", "P joined with I is classical prime / classical 1-absorbing prime / classical 2-absorbing iff P is")
def check_tmainnn(ctx, inst):
    base, I, AM = _amalgam_parts(inst)
    diags = module_validate(AM.result)
    if diags:
        return failed("tmainnn", inst.label, 0, {"module_axiom": diags[0].as_dict()})
    im = bits.popcount(AM.im)
    n = 0
    for P in proper_subs(base, ctx.config):
        PI = amalgamate_submodule(P, I)
        n += 1
        if len(PI) != len(P) * im:
            return failed("tmainnn", inst.label, n, {"submodule": _idx(P), "reason": "cardinality"})
        f, g = flags_of(P), flags_of(PI)
        for flag in TRANSFER_FLAGS:
            if f[flag].holds != g[flag].holds:
                return failed("tmainnn", inst.label, n, {"submodule": _idx(P), "predicate": flag,
                                                        "base": f[flag].holds, "amalgam": g[flag].holds})
    return passed("tmainnn", inst.label, n)


# -- free modules -------------------------------------------------------------

@theorem("ttensor", "tensor", "P is classical 1-absorbing prime iff A^k tensor P is, checked flag by flag")
def check_ttensor(ctx, inst):
    M = build_module(inst.spec[1])
    k = inst.spec[2]
    n = 0
    for P in proper_subs(M, ctx.config):
        Pk = free_tensor_submodule(P, k, ctx.config.max_tensor)
        f, g = flags_of(P), flags_of(Pk)
        n += 1
        for flag in FLAGS:
            if f[flag].holds != g[flag].holds:
                return failed("ttensor", inst.label, n, {"submodule": _idx(P), "predicate": flag,
                                                        "base": f[flag].holds, "power": g[flag].holds})
    return passed("ttensor", inst.label, n)


THEOREM_IDS = tuple(THEOREMS)

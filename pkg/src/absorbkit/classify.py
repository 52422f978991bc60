"""Submodule classes of the absorbing-prime hierarchy.

Every ``is_*`` predicate below is a literal quantifier sweep over carrier tuples and
returns a :class:`Check` whose witness is the lexicographically least violating
tuple.  :func:`classical_1abs_oracles` evaluates the residual characterizations of
the classical 1-absorbing prime property by independent routes (colon submodules,
colon ideals, ideal-quantified forms)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import bits
from .bits import TooLargeError
from .finmod import (FiniteModule, Submodule, all_submodules, cyclic_bits,
                     full_submodule, ideal_times_bits, trim_cache, proper_submodules, MAX_ENUMERATE)
from .finring import (FiniteRing, _first, all_ideals, colon_bits, one_absorbing_prime_bits,
                      product_bits, sum_bits)
from .result import Check

FLAGS = ("prime", "classical_prime", "semiprime", "one_abs_prime",
         "classical_one_abs_prime", "classical_two_absorbing")

# (antecedent, consequent) pairs every report must respect
CHAIN = (("prime", "classical_prime"),
         ("prime", "one_abs_prime"),
         ("classical_prime", "classical_one_abs_prime"),
         ("one_abs_prime", "classical_one_abs_prime"),
         ("classical_one_abs_prime", "classical_two_absorbing"))


def _require_proper(P: Submodule):
    if P.module.size < 2 or P.module.ring.size < 2:
        raise ValueError("classification needs a nonzero module over a nonzero ring")
    if not P.proper:
        raise ValueError("proper submodule required")


def membership_table(P: Submodule) -> np.ndarray:
    """T[x, m] is True iff x*m lies in P."""
    M = P.module
    key = ("T", P.members)
    T = M._cache.get(key)
    if T is None:
        T = P.mask[M.action]
        trim_cache(M._cache)
        M._cache[key] = T
    return T


def _ring_ann_mask(T: np.ndarray) -> np.ndarray:
    # (P :_A M) as a boolean mask over the ring
    return T.all(axis=1)


def _nonunits(R: FiniteRing) -> np.ndarray:
    return np.asarray(R.nonunits, dtype=np.intp)


def vacuous(R: FiniteRing) -> bool:
    """True when the only nonunit is zero, so nonunit-quantified classes hold trivially."""
    return R.nonunits == [R.zero]


# -- definitional predicates --------------------------------------------------

def is_prime_submodule(P: Submodule) -> Check:
    """am in P implies a in (P:_A M) or m in P. Witness (a, m)."""
    _require_proper(P)
    T = membership_table(P)
    viol = T & ~_ring_ann_mask(T)[:, None] & ~P.mask[None, :]
    w = _first(viol)
    return Check(w is None, w)


def is_classical_prime(P: Submodule) -> Check:
    """abm in P implies am in P or bm in P. Witness (a, b, m)."""
    _require_proper(P)
    M, R = P.module, P.module.ring
    T = membership_table(P)
    for a in range(R.size):
        ab = R.mul[a, :]
        viol = T[ab, :] & ~T[a, :][None, :] & ~T
        w = _first(viol)
        if w is not None:
            return Check(False, (a,) + w)
    return Check(True)


def is_semiprime(P: Submodule) -> Check:
    """a^2 m in P implies am in P. Witness (a, m)."""
    _require_proper(P)
    R = P.module.ring
    T = membership_table(P)
    sq = R.mul[np.arange(R.size), np.arange(R.size)]
    w = _first(T[sq, :] & ~T)
    return Check(w is None, w)


def _blocks(n: int, per_item: int, budget: int = 1 << 21):
    """Split range(n) into slices whose boolean work arrays stay under ``budget`` cells."""
    step = max(1, budget // max(1, per_item))
    for lo in range(0, n, step):
        yield lo, min(n, lo + step)


def _triple_sweep(P: Submodule, nonunit_only: bool, rule) -> Optional[tuple]:
    """Lex-least (a, b, c, m) with rule(...) true, sweeping a in blocks."""
    R = P.module.ring
    T = membership_table(P)
    xs = _nonunits(R) if nonunit_only else np.arange(R.size)
    k, nm = len(xs), T.shape[1]
    for lo, hi in _blocks(k, k * k * nm):
        a = xs[lo:hi]
        ab = R.mul[a[:, None], xs[None, :]]                 # (a, b)
        abc = R.mul[ab[:, :, None], xs[None, None, :]]      # (a, b, c)
        w = _first(rule(R, T, xs, a, ab, abc))
        if w is not None:
            return (int(a[w[0]]), int(xs[w[1]]), int(xs[w[2]]), w[3])
    return None


def is_one_abs_prime_submodule(P: Submodule) -> Check:
    """For nonunits a, b, c: abcm in P implies ab in (P:_A M) or cm in P. Witness (a, b, c, m)."""
    _require_proper(P)
    ann = _ring_ann_mask(membership_table(P))
    w = _triple_sweep(P, True, lambda R, T, xs, a, ab, abc:
                      T[abc] & ~ann[ab][:, :, None, None] & ~T[xs][None, None, :, :])
    return Check(w is None, w)


def is_classical_one_abs_prime(P: Submodule) -> Check:
    """For nonunits a, b, c: abcm in P implies abm in P or cm in P. Witness (a, b, c, m)."""
    _require_proper(P)
    w = _triple_sweep(P, True, lambda R, T, xs, a, ab, abc:
                      T[abc] & ~T[ab][:, :, None, :] & ~T[xs][None, None, :, :])
    return Check(w is None, w)


def is_classical_two_absorbing(P: Submodule) -> Check:
    """abcm in P implies abm, acm or bcm in P, over all a, b, c. Witness (a, b, c, m)."""
    _require_proper(P)
    w = _triple_sweep(P, False, lambda R, T, xs, a, ab, abc:
                      T[abc] & ~T[ab][:, :, None, :] & ~T[R.mul[a]][:, None, :, :]
                      & ~T[R.mul][None, :, :, :])
    return Check(w is None, w)


PREDICATES = {
    "prime": is_prime_submodule,
    "classical_prime": is_classical_prime,
    "semiprime": is_semiprime,
    "one_abs_prime": is_one_abs_prime_submodule,
    "classical_one_abs_prime": is_classical_one_abs_prime,
    "classical_two_absorbing": is_classical_two_absorbing,
}


def violates(P: Submodule, flag: str, witness: tuple) -> bool:
    """Re-evaluate a single quantifier instance of ``flag`` at ``witness``."""
    M = P.module
    R = M.ring
    act, mul = M.action, R.mul
    inP = lambda x: (P.members >> int(x)) & 1 == 1
    try:
        if flag == "prime":
            a, m = witness
            ann = all(inP(act[a, x]) for x in range(M.size))
            return inP(act[a, m]) and not ann and not inP(m)
        if flag == "classical_prime":
            a, b, m = witness
            return inP(act[mul[a, b], m]) and not inP(act[a, m]) and not inP(act[b, m])
        if flag == "semiprime":
            a, m = witness
            return inP(act[mul[a, a], m]) and not inP(act[a, m])
        a, b, c, m = witness
        abc = mul[mul[a, b], c]
        if flag == "classical_two_absorbing":
            return (inP(act[abc, m]) and not inP(act[mul[a, b], m])
                    and not inP(act[mul[a, c], m]) and not inP(act[mul[b, c], m]))
        if R.is_unit(a) or R.is_unit(b) or R.is_unit(c):
            return False
        if flag == "one_abs_prime":
            ab = mul[a, b]
            ann = all(inP(act[ab, x]) for x in range(M.size))
            return inP(act[abc, m]) and not ann and not inP(act[c, m])
        if flag == "classical_one_abs_prime":
            return inP(act[abc, m]) and not inP(act[mul[a, b], m]) and not inP(act[c, m])
    except (IndexError, ValueError):
        return False
    raise KeyError(flag)


# -- reports ------------------------------------------------------------------

@dataclass(frozen=True)
class ClassReport:
    submodule: Submodule
    flags: dict
    witnesses: dict = field(default_factory=dict)
    vacuous: bool = False

    def __post_init__(self):
        for lhs, rhs in CHAIN:
            if self.flags[lhs] and not self.flags[rhs]:
                raise ValueError(f"implication chain broken: {lhs} holds but {rhs} fails "
                                 f"for {self.submodule!r}")

    def __getitem__(self, flag: str) -> bool:
        return self.flags[flag]


def classify(P: Submodule) -> ClassReport:
    _require_proper(P)
    M = P.module
    key = ("report", P.members)
    hit = M._cache.get(key)
    if hit is None:
        flags, witnesses = {}, {}
        for name in FLAGS:
            chk = PREDICATES[name](P)
            flags[name] = chk.holds
            if not chk.holds:
                witnesses[name] = chk.witness
        hit = ClassReport(P, flags, witnesses, vacuous(M.ring))
        trim_cache(M._cache)
        M._cache[key] = hit
    return hit


def c1ap(P: Submodule) -> bool:
    """Shorthand for the classical 1-absorbing prime flag (cached through classify)."""
    return classify(P).flags["classical_one_abs_prime"]


# -- residual characterizations -----------------------------------------------

SKIPPED = "skipped"

ELEMENT_FORMS = ("tmain_ii", "tmain_iii", "tmain_ix", "tmain2_ii")
IDEAL_FORMS = ("tmain_iv", "tmain_v", "tmain_vi", "tmain_vii", "tmain_viii")
SUBMODULE_FORMS = ("tmain2_iii", "tmain2_iv", "tmain2_v", "tmain2_vi", "tmain2_vii",
                   "tmain2_viii", "tmain2_ix", "tmain2_x")
ORACLES = ELEMENT_FORMS + IDEAL_FORMS + SUBMODULE_FORMS


class _IdealForms:
    """Ideal-theoretic forms of the characterizations, evaluated on a residual ideal R.

    Writing R for (P :_A m) or (P :_A L), a containment XYm in P is XY in R and the
    residual (P :_A Xm) is the colon ideal (R : X)."""

    def __init__(self, ring: FiniteRing, ideal_cap: int):
        self.ring = ring
        ideals = all_ideals(ring)
        if len(ideals) > ideal_cap:
            raise TooLargeError(f"{len(ideals)} ideals exceed cap {ideal_cap}")
        self.proper = [I.members for I in ideals if I.proper]
        self.nonunits = ring.nonunits
        mul = ring.mul
        self._xI = {}
        for x in range(ring.size):
            for I in self.proper:
                idx = np.asarray(bits.indices(I), dtype=np.intp)
                mask = np.zeros(ring.size, dtype=bool)
                mask[mul[x, idx]] = True
                self._xI[x, I] = bits.from_mask(mask)
        self._memo = {}

    def xI(self, x: int, I: int) -> int:
        hit = self._xI.get((x, I))
        if hit is None:
            idx = np.asarray(bits.indices(I), dtype=np.intp)
            mask = np.zeros(self.ring.size, dtype=bool)
            mask[self.ring.mul[x, idx]] = True
            hit = self._xI[x, I] = bits.from_mask(mask)
        return hit

    def prod(self, I: int, J: int) -> int:
        return product_bits(self.ring, I, J)

    def colon(self, R: int, X: int) -> int:
        return colon_bits(self.ring, R, X)

    def holds(self, form: str, R: int) -> bool:
        key = (form, R)
        if key not in self._memo:
            self._memo[key] = getattr(self, "_" + form)(R)
        return self._memo[key]

    # a, b nonunits; I proper: abI in R implies aI in R or b in R
    def _elt_iv(self, R):
        mul, nu = self.ring.mul, self.nonunits
        for a in nu:
            for b in nu:
                ab = int(mul[a, b])
                if (R >> b) & 1:
                    continue
                for I in self.proper:
                    if bits.subset(self.xI(ab, I), R) and not bits.subset(self.xI(a, I), R):
                        return False
        return True

    # a nonunit; I proper with aI not in R: (R : aI) = R
    def _elt_v(self, R):
        for a in self.nonunits:
            for I in self.proper:
                aI = self.xI(a, I)
                if not bits.subset(aI, R) and self.colon(R, aI) != R:
                    return False
        return True

    # a nonunit; I, J proper: aIJ in R implies aI in R or J in R
    def _elt_vi(self, R):
        for a in self.nonunits:
            for I in self.proper:
                aI = self.xI(a, I)
                if bits.subset(aI, R):
                    continue
                for J in self.proper:
                    if bits.subset(self.prod(aI, J), R) and not bits.subset(J, R):
                        return False
        return True

    # I, J proper with IJ not in R: (R : IJ) = R
    def _elt_vii(self, R):
        for I in self.proper:
            for J in self.proper:
                IJ = self.prod(I, J)
                if not bits.subset(IJ, R) and self.colon(R, IJ) != R:
                    return False
        return True

    # I, J, K proper: IJK in R implies IJ in R or K in R
    def _elt_viii(self, R):
        for I in self.proper:
            for J in self.proper:
                IJ = self.prod(I, J)
                if bits.subset(IJ, R):
                    continue
                for K in self.proper:
                    if bits.subset(self.prod(IJ, K), R) and not bits.subset(K, R):
                        return False
        return True

    # a, b nonunits with ab not in R: (R : ab) = R
    def _sub_iv(self, R):
        mul = self.ring.mul
        for a in self.nonunits:
            for b in self.nonunits:
                ab = int(mul[a, b])
                if not (R >> ab) & 1 and self.colon(R, 1 << ab) != R:
                    return False
        return True

    # a, b nonunits; I proper: abI in R implies ab in R or I in R
    def _sub_v(self, R):
        mul = self.ring.mul
        for a in self.nonunits:
            for b in self.nonunits:
                ab = int(mul[a, b])
                if (R >> ab) & 1:
                    continue
                for I in self.proper:
                    if bits.subset(self.xI(ab, I), R) and not bits.subset(I, R):
                        return False
        return True


def ideal_forms(R: FiniteRing, ideal_cap: int = 64) -> Optional[_IdealForms]:
    """Shared per-ring evaluator of the ideal-quantified forms; None past the cap."""
    key = ("forms", ideal_cap)
    if key not in R._cache:
        try:
            R._cache[key] = _IdealForms(R, ideal_cap)
        except TooLargeError:
            R._cache[key] = None
    return R._cache[key]


def _residual_ideals_by_element(T: np.ndarray) -> list[int]:
    return [bits.from_mask(T[:, m]) for m in range(T.shape[1])]


def _residual_submodules_by_ring(T: np.ndarray) -> list[int]:
    return [bits.from_mask(T[x, :]) for x in range(T.shape[0])]


def classical_1abs_oracles(P: Submodule, ideal_cap: int = 64,
                           submodule_cap: int = MAX_ENUMERATE) -> dict:
    """Evaluate each residual characterization of the classical 1-absorbing prime
    property independently. Values are True, False or "skipped" (cap hit)."""
    _require_proper(P)
    M = P.module
    R = M.ring
    T = membership_table(P)
    mul, act = R.mul, M.action
    nu = R.nonunits
    colM = _residual_submodules_by_ring(T)          # (P :_M x) per ring element
    resA = _residual_ideals_by_element(T)           # (P :_A m) per module element
    out = {}

    triples = {(colM[int(mul[mul[a, b], c])], colM[int(mul[a, b])], colM[c])
               for a in nu for b in nu for c in nu}
    out["tmain_ii"] = all(X == (Y | Z) for X, Y, Z in triples)
    out["tmain2_ii"] = all(X == Y or X == Z for X, Y, Z in triples)

    ok = True
    ab_values = sorted({int(mul[a, b]) for a in nu for b in nu})
    for ab in ab_values:
        for m in range(M.size):
            abm = int(act[ab, m])
            if not (P.members >> abm) & 1 and resA[abm] != resA[m]:
                ok = False
                break
        if not ok:
            break
    out["tmain_iii"] = ok

    outside = sorted({resA[m] for m in range(M.size) if not (P.members >> m) & 1})
    out["tmain_ix"] = all(one_absorbing_prime_bits(R, r) for r in outside)

    forms = ideal_forms(R, ideal_cap)
    for name, form in zip(IDEAL_FORMS, ("elt_iv", "elt_v", "elt_vi", "elt_vii", "elt_viii")):
        out[name] = SKIPPED if forms is None else all(forms.holds(form, r) for r in outside)

    try:
        subs = all_submodules(M, cap=submodule_cap)
    except TooLargeError:
        subs = None
    if subs is None:
        for name in SUBMODULE_FORMS:
            out[name] = SKIPPED
        return out

    ok = True
    for L in subs:
        for X, Y, Z in triples:
            if bits.subset(L.members, X) and not (bits.subset(L.members, Y) or bits.subset(L.members, Z)):
                ok = False
                break
        if not ok:
            break
    out["tmain2_iii"] = ok

    res_L = set()
    for L in subs:
        if bits.subset(L.members, P.members):
            continue
        li = np.asarray(L.elements, dtype=np.intp)
        res_L.add(bits.from_mask(T[:, li].all(axis=1)))
    res_L = sorted(res_L)
    out["tmain2_x"] = all(one_absorbing_prime_bits(R, r) for r in res_L)
    for name, form in zip(("tmain2_iv", "tmain2_v", "tmain2_vi", "tmain2_vii", "tmain2_viii", "tmain2_ix"),
                          ("sub_iv", "sub_v", "elt_v", "elt_vi", "elt_vii", "elt_viii")):
        out[name] = SKIPPED if forms is None else all(forms.holds(form, r) for r in res_L)
    return out


def residual_union_decomposition(P: Submodule, a: int, b: int, c: int, m: int) -> Optional[str]:
    """For nonunits a, b, c: compare (P:_A abcm) with (P:_A abm) and (P:_A cm).

    Returns "abm", "cm" or "both" naming the side(s) equal to (P:_A abcm), or None
    when neither matches (which also means the union equality fails)."""
    M, R = P.module, P.module.ring
    if any(R.is_unit(x) for x in (a, b, c)):
        raise ValueError("a, b, c must be nonunits")
    T = membership_table(P)
    ab = int(R.mul[a, b])
    abcm = int(M.action[R.mul[ab, c], m])
    abm = int(M.action[ab, m])
    cm = int(M.action[c, m])
    lhs = bits.from_mask(T[:, abcm])
    left, right = bits.from_mask(T[:, abm]), bits.from_mask(T[:, cm])
    if lhs != left | right:
        return None
    if lhs == left and lhs == right:
        return "both"
    if lhs == left:
        return "abm"
    if lhs == right:
        return "cm"
    return None


def minimal_classical_1abs_primes(M: FiniteModule) -> list[Submodule]:
    members = [P for P in proper_submodules(M) if c1ap(P)]
    return [P for P in members
            if not any(K.members != P.members and K <= P for K in members)]


# -- m-closed sets ------------------------------------------------------------

MCLOSED_MAX_MODULE = 16
MCLOSED_MAX_IDEALS = 16


def is_c1ap_m_closed(M: FiniteModule, S: int, max_module: int = MCLOSED_MAX_MODULE,
                     max_ideals: int = MCLOSED_MAX_IDEALS) -> Check:
    """Sweep the m-closed condition over proper ideals I, J, K and submodules L, N.

    ``S`` is a bitset over M not containing zero. Witness (I, J, K, L, N) as bitsets."""
    if (S >> M.zero) & 1:
        raise ValueError("S must avoid zero")
    R = M.ring
    ideals = all_ideals(R)
    if M.size > max_module or len(ideals) > max_ideals:
        raise TooLargeError(f"m-closed sweep limited to |M| <= {max_module} and "
                            f"<= {max_ideals} ideals")
    proper = [I.members for I in ideals if I.proper]
    k = len(proper)
    subs = [L.members for L in all_submodules(M)]
    # every product ideal that can occur, indexed for vectorized lookup
    p2 = [[product_bits(R, I, J) for J in proper] for I in proper]
    p3 = [[[product_bits(R, p2[i][j], K) for K in proper] for j in range(k)] for i in range(k)]
    universe = sorted({x for row in p2 for x in row} | set(proper)
                      | {x for plane in p3 for row in plane for x in row})
    pos = {x: i for i, x in enumerate(universe)}
    P2 = np.array([[pos[x] for x in row] for row in p2], dtype=np.intp).reshape(k, k)
    P3 = np.array([[[pos[x] for x in row] for row in plane] for plane in p3],
                  dtype=np.intp).reshape(k, k, k)
    KK = np.array([pos[x] for x in proper], dtype=np.intp)
    sums = {}
    for L in subs:
        XL = [ideal_times_bits(M, X, L) for X in universe]
        for N in subs:
            F = np.empty(len(universe), dtype=bool)
            for i, Y in enumerate(XL):
                key = (N, Y)
                s = sums.get(key)
                if s is None:
                    s = sums[key] = sum_bits(M.add, N, Y)
                F[i] = (s & S) != 0
            viol = F[P2][:, :, None] & F[KK][None, None, :] & ~F[P3]
            w = _first(viol)
            if w is not None:
                i, j, kk = w
                return Check(False, (proper[i], proper[j], proper[kk], L, N))
    return Check(True)


def maximal_disjoint_submodules(M: FiniteModule, S: int) -> list[Submodule]:
    disjoint = [P for P in all_submodules(M) if P.members & S == 0]
    return [P for P in disjoint
            if not any(Q.members != P.members and P <= Q for Q in disjoint)]


def krull_maximal_disjoint(M: FiniteModule, S: int) -> Submodule:
    """A maximal submodule disjoint from the m-closed set S (least bitset among maximal ones)."""
    if not is_c1ap_m_closed(M, S):
        raise ValueError("S is not a classical 1-absorbing prime m-closed set")
    best = min(maximal_disjoint_submodules(M, S), key=lambda P: P.members)
    if not best.proper or not c1ap(best):
        raise AssertionError(f"maximal disjoint submodule {best!r} is not classical 1-absorbing prime")
    return best

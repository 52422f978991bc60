"""Independent brute-force oracles: plain Python loops over table entries, no bitsets,
no vectorization. Used to derive expected values for the fast implementations."""

from itertools import combinations, product


def units(R):
    return [a for a in range(R.size) if any(int(R.mul[a, b]) == R.one for b in range(R.size))]


def nonunits(R):
    u = set(units(R))
    return [a for a in range(R.size) if a not in u]


def is_submodule(M, S):
    if M.zero not in S:
        return False
    for x in S:
        for y in S:
            if int(M.add[x, y]) not in S:
                return False
        for a in range(M.ring.size):
            if int(M.action[a, x]) not in S:
                return False
    return True


def submodules(M):
    """Every submodule, by testing every subset containing zero (small M only)."""
    others = [m for m in range(M.size) if m != M.zero]
    out = []
    for k in range(len(others) + 1):
        for combo in combinations(others, k):
            S = frozenset(combo) | {M.zero}
            if is_submodule(M, S):
                out.append(S)
    return out


def ideals(R):
    others = [x for x in range(R.size) if x != R.zero]
    out = []
    for k in range(len(others) + 1):
        for combo in combinations(others, k):
            S = frozenset(combo) | {R.zero}
            if all(int(R.add[x, y]) in S for x in S for y in S) and \
                    all(int(R.mul[a, x]) in S for a in range(R.size) for x in S):
                out.append(S)
    return out


def colon_module(M, P):
    """(P :_A M) as a set of ring elements."""
    return {a for a in range(M.ring.size) if all(int(M.action[a, m]) in P for m in range(M.size))}


def act(M, *args):
    *ring, m = args
    for a in reversed(ring):
        m = int(M.action[a, m])
    return m


def flags(M, P):
    """Six definitional flags with lex-least witnesses, by nested loops."""
    R = M.ring
    P = set(P)
    nu = nonunits(R)
    everything = range(R.size)
    mods = range(M.size)
    ann = colon_module(M, P)
    out = {}

    def first(space, bad):
        for t in space:
            if bad(*t):
                return t
        return None

    out["prime"] = first(product(everything, mods),
                         lambda a, m: act(M, a, m) in P and a not in ann and m not in P)
    out["classical_prime"] = first(product(everything, everything, mods),
                                   lambda a, b, m: act(M, a, b, m) in P and act(M, a, m) not in P
                                   and act(M, b, m) not in P)
    out["semiprime"] = first(product(everything, mods),
                             lambda a, m: act(M, a, a, m) in P and act(M, a, m) not in P)
    out["one_abs_prime"] = first(product(nu, nu, nu, mods),
                                 lambda a, b, c, m: act(M, a, b, c, m) in P
                                 and int(R.mul[a, b]) not in ann and act(M, c, m) not in P)
    out["classical_one_abs_prime"] = first(product(nu, nu, nu, mods),
                                           lambda a, b, c, m: act(M, a, b, c, m) in P
                                           and act(M, a, b, m) not in P and act(M, c, m) not in P)
    out["classical_two_absorbing"] = first(product(everything, everything, everything, mods),
                                           lambda a, b, c, m: act(M, a, b, c, m) in P
                                           and act(M, a, b, m) not in P and act(M, a, c, m) not in P
                                           and act(M, b, c, m) not in P)
    return {k: (w is None, w) for k, w in out.items()}


def one_absorbing_ideal(R, I):
    nu = nonunits(R)
    for a, b, c in product(nu, nu, nu):
        ab = int(R.mul[a, b])
        if int(R.mul[ab, c]) in I and ab not in I and c not in I:
            return False
    return True


def local_square_zero(R):
    nu = set(nonunits(R))
    closed = all(int(R.add[x, y]) in nu for x in nu for y in nu)
    return closed and all(int(R.mul[x, y]) == R.zero for x in nu for y in nu)

"""Independent brute-force oracles.

Nothing here imports the package under test: these are the reference
implementations the tests compare against, kept deliberately naive.
"""

import itertools
from fractions import Fraction
from math import gcd


def brute_reachable(target: int, coins) -> bool:
    """Coin-problem membership by plain DP."""
    if target < 0:
        return False
    table = [False] * (target + 1)
    table[0] = True
    for t in range(1, target + 1):
        table[t] = any(c <= t and table[t - c] for c in coins)
    return table[target]


def brute_member_set(coins, bound: int) -> set[int]:
    table = [False] * (bound + 1)
    table[0] = True
    for t in range(1, bound + 1):
        table[t] = any(c <= t and table[t - c] for c in coins)
    return {t for t in range(bound + 1) if table[t]}


def brute_frobenius(gens) -> int:
    """Largest gap, by scanning until min(gens) consecutive members appear."""
    g = 0
    for a in gens:
        g = gcd(g, a)
    assert g == 1, "gcd must be 1 for a largest gap to exist"
    step = min(gens)
    bound = 2 * step
    while True:
        members = brute_member_set(gens, bound)
        run = 0
        largest_gap = -1
        for t in range(bound + 1):
            if t in members:
                run += 1
                if run >= step:
                    return largest_gap
            else:
                run = 0
                largest_gap = t
        bound *= 2


def brute_apery(gens, m: int, frobenius: int) -> list[int]:
    """Least member in each residue class mod m, by direct scan."""
    cap = frobenius + 1 + 2 * m
    members = sorted(brute_member_set(gens, cap))
    out = []
    for r in range(m):
        out.append(next(x for x in members if x % m == r))
    return out


def brute_coefficient_vectors(coins, target: int):
    """Every nonnegative vector c with sum(c[i]*coins[i]) == target.

    Pure recursion over the coefficient box, no ordering tricks.
    """
    solutions = []
    vec = [0] * len(coins)

    def recurse(i: int, remaining: int):
        if i == len(coins):
            if remaining == 0:
                solutions.append(tuple(vec))
            return
        for c in range(remaining // coins[i] + 1):
            vec[i] = c
            recurse(i + 1, remaining - c * coins[i])
        vec[i] = 0

    recurse(0, target)
    return set(solutions)


def brute_rational_factorizations(atoms, x: Fraction) -> set[tuple]:
    """Factorizations of x over rational atoms, via the coefficient box."""
    x = Fraction(x)
    dens = [a.denominator for a in atoms] + [x.denominator]
    scale = 1
    for d in dens:
        scale = scale * d // gcd(scale, d)
    coins = [int(a * scale) for a in atoms]
    target = int(x * scale)
    out = set()
    for vec in brute_coefficient_vectors(coins, target):
        out.add(tuple((atoms[i], c) for i, c in enumerate(vec) if c))
    return out


# ---------------------------------------------------------------------------
# Zero-sum oracles


def all_group_elements(orders):
    return list(itertools.product(*(range(o) for o in orders)))


def seq_sum(orders, counts):
    """counts: dict element -> multiplicity."""
    total = tuple(0 for _ in orders)
    for elem, c in counts.items():
        total = tuple((t + v * c) % o for t, v, o in zip(total, elem, orders))
    return total


def brute_minimal_blocks(orders, cap: int) -> set[tuple]:
    """Minimal zero-sum multisets of length <= cap, as sorted element tuples.

    Enumerates count vectors over the whole group (a different scheme from
    multiset combinations), and checks minimality by exhausting proper
    nonempty sub-vectors.
    """
    elements = all_group_elements(orders)
    zero = tuple(0 for _ in orders)
    found = set()
    for vec in itertools.product(range(cap + 1), repeat=len(elements)):
        length = sum(vec)
        if not 1 <= length <= cap:
            continue
        counts = {e: c for e, c in zip(elements, vec) if c}
        if seq_sum(orders, counts) != zero:
            continue
        if _has_proper_zero_sub(orders, elements, vec):
            continue
        flat = tuple(
            sorted(e for e, c in zip(elements, vec) for _ in range(c))
        )
        found.add(flat)
    return found


def _has_proper_zero_sub(orders, elements, vec) -> bool:
    zero = tuple(0 for _ in orders)
    for sub in itertools.product(*(range(c + 1) for c in vec)):
        if not any(sub) or sub == tuple(vec):
            continue
        counts = {e: c for e, c in zip(elements, sub) if c}
        if seq_sum(orders, counts) == zero:
            return True
    return False


def brute_davenport(orders) -> int:
    size = 1
    for o in orders:
        size *= o
    blocks = brute_minimal_blocks(orders, size)
    return max(len(b) for b in blocks)

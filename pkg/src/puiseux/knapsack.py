"""Unbounded integer-knapsack primitives.

All coins are positive integers and coefficients range over the nonnegative
integers.  These routines are the computational core behind membership and
factorization queries once denominators have been cleared.
"""

from math import gcd
from typing import Sequence


def reachable_table(bound: int, coins: Sequence[int]) -> bytearray:
    """table[t] == 1 iff t is a nonnegative integer combination of coins."""
    table = bytearray(bound + 1)
    table[0] = 1
    for t in range(1, bound + 1):
        for c in coins:
            if c <= t and table[t - c]:
                table[t] = 1
                break
    return table


def representable(target: int, coins: Sequence[int]) -> bool:
    if target < 0:
        return False
    return bool(reachable_table(target, coins)[target])


def witness(target: int, coins: Sequence[int]) -> list[int] | None:
    """One coefficient vector summing to target, or None."""
    if target < 0:
        return None
    used = [-1] * (target + 1)
    used[0] = len(coins)  # sentinel: zero needs no coin
    for t in range(1, target + 1):
        for i, c in enumerate(coins):
            if c <= t and used[t - c] >= 0:
                used[t] = i
                break
    if used[target] < 0:
        return None
    counts = [0] * len(coins)
    t = target
    while t > 0:
        i = used[t]
        counts[i] += 1
        t -= coins[i]
    return counts


def all_solutions(target: int, coins: Sequence[int]) -> list[tuple[int, ...]]:
    """Every coefficient vector with sum(c_i * coins[i]) == target.

    Depth-first over coins in descending order, pruning branches whose
    remainder is not divisible by the gcd of the coins still available.
    """
    if target < 0:
        return []
    k = len(coins)
    order = sorted(range(k), key=lambda i: -coins[i])
    suffix_gcd = [0] * (k + 1)
    for pos in range(k - 1, -1, -1):
        suffix_gcd[pos] = gcd(coins[order[pos]], suffix_gcd[pos + 1])
    out: list[tuple[int, ...]] = []
    vec = [0] * k

    def descend(pos: int, remaining: int) -> None:
        if remaining == 0:
            for p in range(pos, k):
                vec[order[p]] = 0
            out.append(tuple(vec))
            return
        if pos == k or remaining % suffix_gcd[pos]:
            return
        i = order[pos]
        c = coins[i]
        if pos == k - 1:
            q, r = divmod(remaining, c)
            if r == 0:
                vec[i] = q
                out.append(tuple(vec))
            return
        for count in range(remaining // c, -1, -1):
            vec[i] = count
            descend(pos + 1, remaining - count * c)
        vec[i] = 0

    descend(0, target)
    for p in range(k):
        vec[p] = 0
    return sorted(out)

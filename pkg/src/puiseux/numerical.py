"""Numerical monoids: cofinite additive submonoids of the nonnegative integers.

A monoid is stored by its unique minimal generating set.  Membership and the
Frobenius number both go through the Apery set relative to the smallest
generator, computed once per monoid by round-robin shortest-path relaxation
over residue classes.
"""

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Sequence

from . import knapsack
from .errors import DomainError


@dataclass(frozen=True)
class NumericalMonoid:
    """Submonoid of N0 with gcd of generators equal to 1."""

    min_gens: tuple[int, ...]

    def __post_init__(self):
        gens = self.min_gens
        if not gens:
            raise DomainError("a numerical monoid needs at least one generator")
        if any(g <= 0 for g in gens):
            raise DomainError("generators must be positive integers")
        if tuple(sorted(set(gens))) != gens:
            raise DomainError("min_gens must be sorted and duplicate-free")
        d = 0
        for g in gens:
            d = gcd(d, g)
        if d != 1:
            raise DomainError(f"gcd of generators is {d}, not 1; use from_generators")
        for i, g in enumerate(gens):
            others = gens[:i] + gens[i + 1 :]
            if others and knapsack.representable(g, others):
                raise DomainError(
                    f"{g} is generated by the other generators; use from_generators"
                )

    # Apery set relative to the smallest generator; the one-shot computation
    # is idempotent, so concurrent first reads are harmless.
    @cached_property
    def _apery_min(self) -> tuple[int, ...]:
        return tuple(self._apery_for(self.min_gens[0]))

    def _apery_for(self, m: int) -> list[int]:
        dist: list[int | None] = [None] * m
        dist[0] = 0
        changed = True
        while changed:
            changed = False
            for r in range(m):
                d = dist[r]
                if d is None:
                    continue
                for g in self.min_gens:
                    r2 = (r + g) % m
                    cand = d + g
                    if dist[r2] is None or cand < dist[r2]:
                        dist[r2] = cand
                        changed = True
        return dist  # every class is hit because the monoid is cofinite

    def contains(self, x: int) -> bool:
        """Is x a nonnegative integer combination of the generators?"""
        if x < 0:
            return False
        m = self.min_gens[0]
        return x >= self._apery_min[x % m]

    def frobenius(self) -> int:
        """Largest integer not in the monoid; -1 for N0 itself."""
        m = self.min_gens[0]
        return max(self._apery_min) - m

    def apery(self, m: int) -> list[int]:
        """Least element of the monoid in each residue class mod m.

        Indexed by residue, so apery(m)[0] == 0 always.
        """
        if m <= 0:
            raise DomainError("the Apery modulus must be positive")
        if not self.contains(m):
            raise DomainError(f"{m} is not an element of {self}")
        return self._apery_for(m)

    def atoms(self) -> tuple[int, ...]:
        return self.min_gens

    def max_atom(self) -> int:
        return self.min_gens[-1]

    def __str__(self) -> str:
        return "<" + ", ".join(str(g) for g in self.min_gens) + ">"

    def to_json(self) -> dict:
        return {"kind": "numerical", "generators": list(self.min_gens)}


def from_generators(gens: Sequence[int]) -> tuple[NumericalMonoid, int]:
    """Normalize an arbitrary generator list.

    Divides out the gcd d and drops redundant generators, returning the
    minimally generated monoid together with the scale d (multiplication by d
    is an isomorphism onto the monoid generated by the original list).
    """
    gens = list(gens)
    if not gens:
        raise DomainError("empty generator list")
    if any(not isinstance(g, int) or g <= 0 for g in gens):
        raise DomainError("generators must be positive integers")
    d = 0
    for g in gens:
        d = gcd(d, g)
    reduced = sorted({g // d for g in gens})
    kept = [
        g
        for i, g in enumerate(reduced)
        if not knapsack.representable(g, reduced[:i] + reduced[i + 1 :])
    ]
    return NumericalMonoid(tuple(kept)), d

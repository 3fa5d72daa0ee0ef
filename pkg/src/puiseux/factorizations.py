"""Factorizations over finitely generated Puiseux monoids.

Everything here works on an explicit list of positive rational atoms.
Queries clear denominators with one lcm and run the integer-knapsack
primitives; results are mapped back to exact rationals.  Complete
enumeration (every factorization of x) is the contract, not sampling.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from . import knapsack
from .errors import DomainError
from .rationals import format_rational


@dataclass(frozen=True)
class Factorization:
    """Multiset of atoms with positive multiplicities, sorted by atom."""

    counts: tuple[tuple[Fraction, int], ...]

    def __post_init__(self):
        if list(self.counts) != sorted(self.counts):
            raise DomainError("factorization entries must be sorted by atom")
        if any(c <= 0 for _, c in self.counts):
            raise DomainError("multiplicities must be positive")

    @classmethod
    def from_counts(cls, mapping) -> "Factorization":
        items = tuple(
            sorted((Fraction(a), int(c)) for a, c in dict(mapping).items() if c)
        )
        return cls(items)

    @property
    def length(self) -> int:
        return sum(c for _, c in self.counts)

    @property
    def value(self) -> Fraction:
        return sum((a * c for a, c in self.counts), Fraction(0))

    def to_json(self) -> list[dict]:
        return [{"atom": format_rational(a), "count": c} for a, c in self.counts]

    def __str__(self) -> str:
        if not self.counts:
            return "(empty)"
        return " + ".join(
            format_rational(a) if c == 1 else f"{c}*{format_rational(a)}"
            for a, c in self.counts
        )


EMPTY_FACTORIZATION = Factorization(())


def cleared(atoms: Sequence[Fraction], x: Fraction | None = None):
    """Common denominator L, integer coins L*a, and integer target L*x."""
    dens = [a.denominator for a in atoms]
    if x is not None:
        dens.append(Fraction(x).denominator)
    scale = lcm(*dens) if dens else 1
    coins = [int(a * scale) for a in atoms]
    if x is None:
        return scale, coins, None
    return scale, coins, int(Fraction(x) * scale)


def minimal_generators(gens: Iterable[Fraction]) -> tuple[Fraction, ...]:
    """Drop every generator expressible from the others.

    For a reduced finitely generated Puiseux monoid the survivors are
    exactly the atoms.  A generator whose denominator does not divide the
    lcm of the other denominators is kept without a search.
    """
    ordered = sorted({Fraction(g) for g in gens})
    if any(g <= 0 for g in ordered):
        raise DomainError("generators must be positive")
    kept = []
    for i, g in enumerate(ordered):
        others = ordered[:i] + ordered[i + 1 :]
        if not others:
            kept.append(g)
            continue
        others_lcm = lcm(*(o.denominator for o in others))
        if others_lcm % g.denominator or solve_counts(others, g) is None:
            kept.append(g)
    return tuple(kept)


# Above this many table entries the cleared-denominator DP would thrash;
# fall back to the fraction-level search.
_DP_TARGET_CAP = 4_000_000

#: Sentinel: a capped search ran out of nodes without settling the query.
SEARCH_CAPPED = object()


def solve_counts(
    atoms: Sequence[Fraction], x: Fraction, node_cap: int | None = None
):
    """One atom-multiset summing to x (a dict), or None when x is no member.

    With node_cap set, a search that exhausts its budget returns
    SEARCH_CAPPED instead of an answer; callers that cannot afford a
    complete search map that to an honest Unknown.
    """
    x = Fraction(x)
    if x < 0:
        return None
    if x == 0:
        return {}
    scale, coins, target = cleared(atoms, x)
    if target <= _DP_TARGET_CAP:
        counts = knapsack.witness(target, coins)
        if counts is None:
            return None
        return {a: c for a, c in zip(atoms, counts) if c}
    return _search_counts(sorted(atoms, reverse=True), x, node_cap)


def _search_counts(atoms_desc: list[Fraction], x: Fraction, node_cap: int | None):
    """Depth-first membership search over exact fractions.

    Used when denominators are too heterogeneous for the integer DP.  The
    denominator of the remainder must always divide the lcm of the
    remaining atom denominators, which prunes coprime-denominator families
    almost immediately.  Complete when node_cap is None.
    """
    k = len(atoms_desc)
    suffix_lcm = [1] * (k + 1)
    suffix_min: list[Fraction | None] = [None] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix_lcm[i] = lcm(suffix_lcm[i + 1], atoms_desc[i].denominator)
        tail = suffix_min[i + 1]
        suffix_min[i] = atoms_desc[i] if tail is None else min(atoms_desc[i], tail)
    dead: set[tuple[int, Fraction]] = set()
    budget = [node_cap if node_cap is not None else -1]

    class _Capped(Exception):
        pass

    def descend(idx: int, rest: Fraction) -> dict[Fraction, int] | None:
        if budget[0] == 0:
            raise _Capped
        budget[0] -= 1
        if rest == 0:
            return {}
        if idx == len(atoms_desc) or rest < suffix_min[idx]:
            return None
        if suffix_lcm[idx] % rest.denominator:
            return None
        key = (idx, rest)
        if key in dead:
            return None
        atom = atoms_desc[idx]
        for count in range(int(rest / atom), -1, -1):
            sub = descend(idx + 1, rest - count * atom)
            if sub is not None:
                if count:
                    sub[atom] = count
                return sub
        dead.add(key)
        return None

    try:
        return descend(0, x)
    except _Capped:
        return SEARCH_CAPPED


def enumerate_factorizations(
    atoms: Sequence[Fraction], x: Fraction
) -> list[Factorization]:
    """The complete set of factorizations of x over the given atoms."""
    x = Fraction(x)
    if x < 0:
        return []
    if x == 0:
        return [EMPTY_FACTORIZATION]
    scale, coins, target = cleared(atoms, x)
    out = [
        Factorization.from_counts(
            {a: c for a, c in zip(atoms, vec) if c}
        )
        for vec in knapsack.all_solutions(target, coins)
    ]
    return sorted(out, key=lambda f: f.counts)


def elements_up_to(atoms: Sequence[Fraction], bound: Fraction) -> list[Fraction]:
    """All monoid elements x with 0 < x <= bound, ascending."""
    bound = Fraction(bound)
    if bound <= 0 or not atoms:
        return []
    scale, coins, cap = cleared(atoms, bound)
    if cap > 50_000_000:
        raise DomainError(
            "the cleared-denominator lattice is too fine to sweep exactly; "
            "lower the bound or the depth"
        )
    table = knapsack.reachable_table(cap, coins)
    return [Fraction(t, scale) for t in range(1, cap + 1) if table[t]]


def _atoms_of(monoid) -> tuple[Fraction, ...]:
    """Atom set of a finitely generated monoid argument.

    Accepts a FiniteGen spec or any iterable of positive rationals; the
    parametric infinite families are refused so that callers truncate
    explicitly and own the approximation.
    """
    from .monoids import FiniteGen  # local import keeps layering one-way

    if isinstance(monoid, FiniteGen):
        return minimal_generators(monoid.gens)
    if hasattr(monoid, "ratio") or hasattr(monoid, "form") or hasattr(monoid, "levels"):
        raise DomainError(
            "factorizations over an infinite family are truncation-dependent; "
            "truncate(spec, depth) first"
        )
    return minimal_generators(monoid)


def factorizations(monoid, x: Fraction) -> list[Factorization]:
    """Z(x): every multiset of atoms of the monoid summing to x.

    The empty list means x is not a member; Z(0) is the singleton holding
    the empty factorization.
    """
    return enumerate_factorizations(_atoms_of(monoid), Fraction(x))


def length_set(monoid, x: Fraction) -> list[int]:
    """L(x): sorted factorization lengths of x."""
    return sorted({f.length for f in factorizations(monoid, x)})


def elasticity(monoid, x: Fraction) -> Fraction:
    """max L(x) / min L(x) for a nonzero member x."""
    x = Fraction(x)
    if x <= 0:
        raise DomainError("elasticity is defined for nonzero members only")
    lengths = length_set(monoid, x)
    if not lengths:
        raise DomainError(f"{format_rational(x)} is not a member")
    return Fraction(max(lengths), min(lengths))


def half_factorial_up_to(monoid, bound: Fraction) -> tuple[bool, Fraction | None]:
    """Check |L(x)| <= 1 for every member x <= bound.

    Returns (True, None) or (False, least counterexample).
    """
    bound = Fraction(bound)
    if bound <= 0:
        raise DomainError("bound must be positive")
    atoms = _atoms_of(monoid)
    for x in elements_up_to(atoms, bound):
        if len({f.length for f in enumerate_factorizations(atoms, x)}) > 1:
            return False, x
    return True, None

"""Zero-sum combinatorics over finite abelian groups.

Groups are direct products of cyclic groups, elements are residue vectors.
Sequences are multisets of group elements; the blocks are the zero-sum
sequences, and the atoms of the block monoid are the minimal ones.  The
Davenport constant bounds every enumeration: a minimal zero-sum sequence is
never longer than the group order (two equal prefix sums inside a longer
sequence would cut out a proper zero-sum piece).
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod
from typing import Iterable

from .errors import DomainError, ScanCapError

Element = tuple[int, ...]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Direct product of cyclic groups of the given orders."""

    orders: tuple[int, ...]

    def __post_init__(self):
        if not self.orders or any(o < 1 for o in self.orders):
            raise DomainError("group orders must be positive integers")
        object.__setattr__(self, "orders", tuple(int(o) for o in self.orders))

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def identity(self) -> Element:
        return (0,) * self.rank

    def size(self) -> int:
        return prod(self.orders)

    def element(self, value) -> Element:
        """Coerce an int (rank one) or a residue vector, with range checks."""
        if isinstance(value, int):
            value = (value,)
        vec = tuple(int(v) for v in value)
        if len(vec) != self.rank:
            raise DomainError(f"element {vec} has rank {len(vec)}, expected {self.rank}")
        if any(not 0 <= v < o for v, o in zip(vec, self.orders)):
            raise DomainError(f"element {vec} is out of range for orders {self.orders}")
        return vec

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % o for x, y, o in zip(a, b, self.orders))

    def scale(self, a: Element, k: int) -> Element:
        return tuple((x * k) % o for x, o in zip(a, self.orders))

    def elements(self) -> list[Element]:
        return list(itertools.product(*(range(o) for o in self.orders)))

    def to_json(self) -> dict:
        return {"orders": list(self.orders)}


@dataclass(frozen=True)
class GSequence:
    """Finite multiset of group elements, stored as sorted (element, count)."""

    counts: tuple[tuple[Element, int], ...]

    def __post_init__(self):
        if any(c <= 0 for _, c in self.counts):
            raise DomainError("multiplicities must be positive")
        object.__setattr__(self, "counts", tuple(sorted(self.counts)))

    @classmethod
    def of(cls, group: FiniteAbelianGroup, elements: Iterable) -> "GSequence":
        bag: dict[Element, int] = {}
        for e in elements:
            g = group.element(e)
            bag[g] = bag.get(g, 0) + 1
        return cls(tuple(sorted(bag.items())))

    @property
    def length(self) -> int:
        return sum(c for _, c in self.counts)

    def support(self) -> set[Element]:
        return {g for g, _ in self.counts}

    def multiplicity(self, g: Element) -> int:
        return dict(self.counts).get(g, 0)

    def as_list(self) -> list[Element]:
        return [g for g, c in self.counts for _ in range(c)]

    def to_json(self) -> list[dict]:
        return [{"element": list(g), "count": c} for g, c in self.counts]

    def __str__(self) -> str:
        return "[" + ", ".join(map(str, self.as_list())) + "]"


EMPTY_SEQUENCE = GSequence(())


def sigma(group: FiniteAbelianGroup, seq) -> Element:
    """Sum of the sequence in the group."""
    seq = _as_sequence(group, seq)
    total = group.identity
    for g, c in seq.counts:
        total = group.add(total, group.scale(group.element(g), c))
    return total


def is_block(group: FiniteAbelianGroup, g0, seq) -> bool:
    """Zero sum and support inside g0."""
    seq = _as_sequence(group, seq)
    support_ok = seq.support() <= _as_subset(group, g0)
    return support_ok and sigma(group, seq) == group.identity


def _as_sequence(group: FiniteAbelianGroup, seq) -> GSequence:
    if isinstance(seq, GSequence):
        for g, _ in seq.counts:
            group.element(g)
        return seq
    return GSequence.of(group, seq)


def _as_subset(group: FiniteAbelianGroup, g0) -> set[Element]:
    if g0 is None:
        return set(group.elements())
    subset = {group.element(g) for g in g0}
    if not subset:
        raise DomainError("the support set must be nonempty")
    return subset


def _has_proper_zero_subsequence(group: FiniteAbelianGroup, seq: GSequence) -> bool:
    """Any nonempty proper sub-multiset with zero sum?"""
    items = seq.counts
    ranges = [range(c + 1) for _, c in items]
    full = tuple(c for _, c in items)
    for combo in itertools.product(*ranges):
        if not any(combo) or combo == full:
            continue
        total = group.identity
        for (g, _), c in zip(items, combo):
            total = group.add(total, group.scale(g, c))
        if total == group.identity:
            return True
    return False


def _minimal_blocks_up_to(
    group: FiniteAbelianGroup, g0: set[Element], cap: int
) -> list[GSequence]:
    base = sorted(g0)
    found = []
    for length in range(1, cap + 1):
        for combo in itertools.combinations_with_replacement(base, length):
            seq = GSequence.of(group, combo)
            if sigma(group, seq) != group.identity:
                continue
            if not _has_proper_zero_subsequence(group, seq):
                found.append(seq)
    return sorted(found, key=lambda s: (s.length, s.counts))


@lru_cache(maxsize=None)
def _davenport_cached(orders: tuple[int, ...]) -> int:
    group = FiniteAbelianGroup(orders)
    blocks = _minimal_blocks_up_to(group, set(group.elements()), group.size())
    return max(b.length for b in blocks)


def davenport(group: FiniteAbelianGroup) -> int:
    """Maximal length of a minimal zero-sum sequence, by exhaustive search."""
    return _davenport_cached(group.orders)


def block_atoms(group: FiniteAbelianGroup, g0=None) -> list[GSequence]:
    """Atoms of the block monoid restricted to g0: minimal zero-sum sequences."""
    subset = _as_subset(group, g0)
    return _minimal_blocks_up_to(group, subset, davenport(group))


def block_factorizations(
    group: FiniteAbelianGroup, g0, seq
) -> list[tuple[tuple[GSequence, int], ...]]:
    """Every decomposition of a block into atoms, as (atom, count) multisets."""
    seq = _as_sequence(group, seq)
    if not is_block(group, g0, seq):
        raise DomainError(f"{seq} is not a block over the given support")
    atoms = [a for a in block_atoms(group, g0) if _fits(a, seq)]
    out: list[tuple[tuple[GSequence, int], ...]] = []

    def remaining_empty(bag: dict[Element, int]) -> bool:
        return not any(bag.values())

    def max_fit(atom: GSequence, bag: dict[Element, int]) -> int:
        return min(bag.get(g, 0) // c for g, c in atom.counts)

    def descend(i: int, bag: dict[Element, int], chosen: list[tuple[GSequence, int]]):
        if remaining_empty(bag):
            out.append(tuple(chosen))
            return
        if i == len(atoms):
            return
        atom = atoms[i]
        top = max_fit(atom, bag)
        for k in range(top, -1, -1):
            if k:
                for g, c in atom.counts:
                    bag[g] -= c * k
                chosen.append((atom, k))
            descend(i + 1, bag, chosen)
            if k:
                chosen.pop()
                for g, c in atom.counts:
                    bag[g] += c * k

    descend(0, dict(seq.counts), [])
    return sorted(out, key=lambda dec: [(a.counts, k) for a, k in dec])


def _fits(atom: GSequence, seq: GSequence) -> bool:
    bag = dict(seq.counts)
    return all(bag.get(g, 0) >= c for g, c in atom.counts)


def block_length_set(group: FiniteAbelianGroup, g0, seq) -> list[int]:
    """Sorted lengths (number of atoms, with multiplicity) of all decompositions."""
    return sorted(
        {sum(k for _, k in dec) for dec in block_factorizations(group, g0, seq)}
    )


def gcd_stabilization(seq, cap: int = 100) -> int:
    """Least m with the (m+1)-th term inside the monoid of the first m terms.

    Consumes any iterable of positive integers; each prefix check divides out
    the running gcd and asks numerical-monoid membership.  Eventual success
    is guaranteed for infinite sequences; the cap only bounds this scan.
    """
    from .numerical import from_generators

    it = iter(seq)
    try:
        first = next(it)
    except StopIteration:
        raise DomainError("the sequence must be nonempty") from None
    prefix = [_positive_int(first)]
    for m in itertools.count(1):
        if m > cap:
            raise ScanCapError(f"no stabilization within the first {cap} prefix terms")
        try:
            nxt = _positive_int(next(it))
        except StopIteration:
            raise ScanCapError(
                f"sequence exhausted after {len(prefix)} terms without stabilizing"
            ) from None
        monoid, scale = from_generators(prefix)
        if nxt % scale == 0 and monoid.contains(nxt // scale):
            return m
        prefix.append(nxt)


def _positive_int(value) -> int:
    if not isinstance(value, int) or value <= 0:
        raise DomainError(f"sequence terms must be positive integers, got {value!r}")
    return value


def sequence_from_json(group: FiniteAbelianGroup, payload) -> GSequence:
    """Accept [elem, ...] lists or [{"element": [...], "count": k}, ...]."""
    if isinstance(payload, dict):
        raise DomainError("a sequence is a JSON array")
    items: list = []
    for entry in payload:
        if isinstance(entry, dict):
            count = int(entry.get("count", 1))
            if count <= 0:
                raise DomainError("counts must be positive")
            items.extend([entry["element"]] * count)
        else:
            items.append(entry)
    return GSequence.of(group, items)

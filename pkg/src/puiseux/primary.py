"""Strongly-primary certificates and refutations.

A finitary certificate is a pair (n, S) with n * M-nonzero contained in
S + M.  That statement quantifies over the whole monoid, so for infinite
families the verifier is scope-bounded and says so; the valuation-based
refutation, by contrast, is a full disproof of a candidate pair whenever
the generators have pairwise coprime denominators, because the valuation
argument does not depend on any truncation.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import DomainError
from .factorizations import Factorization, elements_up_to, minimal_generators
from .monoids import (
    FiniteGen,
    Poly,
    PrimaryConstruction,
    PrimeReciprocal,
    PuiseuxSpec,
    family_atoms,
    member,
    truncate,
)
from .numerical import NumericalMonoid, from_generators
from .rationals import format_rational


def _fractions(values) -> tuple[Fraction, ...]:
    from .rationals import parse_rational

    out = []
    for v in values:
        f = parse_rational(v) if isinstance(v, str) else Fraction(v)
        if f <= 0:
            raise DomainError("certificate sets contain nonzero members only")
        out.append(f)
    return tuple(sorted(set(out)))


# ---------------------------------------------------------------------------
# Scoped certificates


@dataclass(frozen=True)
class CertificateScope:
    x_bound: Fraction
    depth: int
    elements_checked: int


@dataclass(frozen=True)
class FinitaryCertificate:
    """(n, S) verified over every truncation element up to the scope bound.

    witnesses records, for each swept element x, the member s of S with
    n*x - s back in the monoid, so the sweep can be re-audited element by
    element.
    """

    n: int
    s: tuple[Fraction, ...]
    scope: CertificateScope
    witnesses: tuple[tuple[Fraction, Fraction], ...] = ()

    kind = "scopedCertificate"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "s": [format_rational(v) for v in self.s],
            "xBound": format_rational(self.scope.x_bound),
            "depth": self.scope.depth,
            "elementsChecked": self.scope.elements_checked,
            "witnesses": [
                {"x": format_rational(x), "s": format_rational(v)}
                for x, v in self.witnesses
            ],
        }


@dataclass(frozen=True)
class CertificateFailure:
    """Least x in the sweep with n*x - s outside the monoid for every s."""

    x: Fraction
    n: int
    s: tuple[Fraction, ...]

    kind = "failureWitness"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "x": format_rational(self.x),
            "n": self.n,
            "s": [format_rational(v) for v in self.s],
        }


@dataclass(frozen=True)
class CertificateInconclusive:
    """First sweep element whose membership queries came back Unknown."""

    x: Fraction
    n: int
    s: tuple[Fraction, ...]
    depth: int

    kind = "inconclusive"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "x": format_rational(self.x),
            "n": self.n,
            "s": [format_rational(v) for v in self.s],
            "depth": self.depth,
        }


def _bulk_membership(spec, cap: Fraction):
    """Membership-below-cap test for exactly decidable specs, else None.

    One reachability table answers every query in a certificate sweep; this
    matters because the sweep asks about hundreds of shifted values.
    """
    from . import knapsack
    from .factorizations import cleared
    from .monoids import Geometric, family_atoms

    atoms: list[Fraction] | None = None
    if isinstance(spec, FiniteGen):
        atoms = list(spec.gens)
    elif isinstance(spec, Geometric) and not spec.biinfinite and spec.ratio > 1:
        atoms = []
        for g in family_atoms(spec):
            if g > cap:
                break
            atoms.append(g)
    elif isinstance(spec, PrimaryConstruction):
        atoms = []
        level = 1
        while True:
            spec.validate_growth(level)
            gens = spec.level_generators(level)
            if gens[0] > cap:
                break
            atoms.extend(g for g in gens if g <= cap)
            level += 1
    if atoms is None:
        return None
    if not atoms:
        return lambda v: v == 0
    scale, coins, target = cleared(atoms, cap)
    if target > 50_000_000:
        return None
    table = knapsack.reachable_table(target, coins)

    def contains(v: Fraction) -> bool:
        if v == 0:
            return True
        t = v * scale
        return t.denominator == 1 and 0 < t <= target and bool(table[int(t)])

    return contains


def verify_finitary_certificate(
    spec: PuiseuxSpec,
    n: int,
    s: Sequence,
    x_bound,
    depth: int,
):
    """Sweep the truncated monoid, checking n*x in S + M for each element.

    Membership of n*x - s is asked of the full monoid at the given depth.
    The result records its scope; it certifies nothing beyond it.
    """
    if n < 1:
        raise DomainError("the multiplier n must be a positive integer")
    x_bound = Fraction(x_bound)
    if x_bound <= 0:
        raise DomainError("x_bound must be positive")
    s_set = _fractions(s)
    if not s_set:
        raise DomainError("S must be nonempty")
    for v in s_set:
        ans = member(spec, v, depth)
        if not ans.is_yes:
            raise DomainError(
                f"{format_rational(v)} was not verified as a member ({ans.verdict})"
            )
    bulk = _bulk_membership(spec, n * x_bound)
    trunc = truncate(spec, depth)
    witnesses: list[tuple[Fraction, Fraction]] = []
    for x in elements_up_to(trunc.gens, x_bound):
        saw_unknown = False
        found = None
        for v in s_set:
            rest = n * x - v
            if rest < 0:
                continue
            if bulk is not None:
                if bulk(rest):
                    found = v
                    break
                continue
            ans = member(spec, rest, depth)
            if ans.is_yes:
                found = v
                break
            if ans.is_unknown:
                saw_unknown = True
        if found is not None:
            witnesses.append((x, found))
            continue
        if saw_unknown:
            return CertificateInconclusive(x=x, n=n, s=s_set, depth=depth)
        return CertificateFailure(x=x, n=n, s=s_set)
    return FinitaryCertificate(
        n=n,
        s=s_set,
        scope=CertificateScope(x_bound, depth, len(witnesses)),
        witnesses=tuple(witnesses),
    )


# ---------------------------------------------------------------------------
# The geometric-family certificate


@dataclass(frozen=True)
class GeometricCertificate:
    """(d(r), {n(r)}) for the one-sided geometric monoid with ratio r > 1.

    identity_checks holds, for each j, the telescoping factorization showing
    n(r) divides n(r) * r^j in the monoid: multiplicity n(r) - d(r) on each
    of the atoms r^1 .. r^j.
    """

    ratio: Fraction
    n: int
    s: tuple[Fraction, ...]
    identity_checks: tuple[tuple[int, Fraction, Factorization], ...]

    kind = "scopedCertificate"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "ratio": format_rational(self.ratio),
            "n": self.n,
            "s": [format_rational(v) for v in self.s],
            "identityChecks": [
                {"j": j, "value": format_rational(v), "factorization": f.to_json()}
                for j, v, f in self.identity_checks
            ],
        }


def mcyclic_certificate(r, j_bound: int = 4) -> GeometricCertificate:
    """Certificate pair for the geometric monoid of ratio r > 1.

    Takes n = d(r) and S = {n(r)}, and verifies the divisibility identity
    n(r)*r^j - n(r) = (n(r) - d(r)) * (r + r^2 + ... + r^j) exactly for every
    j up to j_bound by constructing that factorization.
    """
    r = Fraction(r)
    if r <= 1:
        raise DomainError("the certificate requires a ratio above 1")
    num, den = r.numerator, r.denominator
    checks = []
    for j in range(1, j_bound + 1):
        value = num * r**j - num
        fact = Factorization.from_counts({r**i: num - den for i in range(1, j + 1)})
        if fact.value != value:
            raise AssertionError(
                f"telescoping identity failed at j={j}: {fact.value} != {value}"
            )
        checks.append((j, value, fact))
    return GeometricCertificate(
        ratio=r, n=den, s=(Fraction(num),), identity_checks=tuple(checks)
    )


# ---------------------------------------------------------------------------
# The layered construction


def build_primary_construction(
    p: int, q: int, f, levels, depth: int
) -> tuple[PrimaryConstruction, list[tuple[int, Fraction, int]]]:
    """Validated layered spec plus the growth-inequality report.

    Each report row is (n, lhs, rhs) with lhs > rhs required; a violated
    level raises ConstructionError naming it.  Structural hypotheses
    (coprimality, f(1) = 1, inclusion-decreasing levels) are enforced by the
    spec constructor itself.
    """
    formula = f if isinstance(f, Poly) else Poly.parse(f)
    normalized = []
    for entry in levels:
        if isinstance(entry, NumericalMonoid):
            normalized.append(entry)
            continue
        monoid, scale = from_generators(list(entry))
        if scale != 1:
            raise DomainError(
                f"level generators {list(entry)} have gcd {scale}; not a numerical monoid"
            )
        normalized.append(monoid)
    spec = PrimaryConstruction(p, q, formula, tuple(normalized))
    rows = spec.validate_growth(depth)
    return spec, rows


def integer_intersection_atoms(
    spec: PrimaryConstruction, depth: int, bound: int | None = None
) -> list[int]:
    """Minimal generators of the integer elements found in a truncation.

    The integer part of the monoid is a submonoid of the nonnegative
    integers, so it is finitely generated, but its generators can grow with
    depth; they are recomputed per depth, up to the search bound.
    """
    if bound is None:
        bound = 2 * spec.p * spec.q * spec.level(1).max_atom()
    trunc = truncate(spec, depth)
    integers = [
        x for x in elements_up_to(trunc.gens, Fraction(bound)) if x.denominator == 1
    ]
    if not integers:
        return []
    return [int(g) for g in minimal_generators(integers)]


def construction_certificate(
    spec: PrimaryConstruction, depth: int, int_bound: int | None = None
) -> tuple[int, tuple[Fraction, ...]]:
    """Candidate certificate pair (p, A(M and N0) union q*A(S_1))."""
    s: set[Fraction] = {
        Fraction(a) for a in integer_intersection_atoms(spec, depth, int_bound)
    }
    s.update(Fraction(spec.q * a) for a in spec.level(1).atoms())
    return spec.p, tuple(sorted(s))


# ---------------------------------------------------------------------------
# Valuation refutation


@dataclass(frozen=True)
class ValuationRefutation:
    """Disproof of a candidate (n, S), valid for the whole monoid.

    witness_atom is the first atom whose denominator exceeds
    max(n, every d(s)) and is coprime to every d(s).  In any putative
    n*a = s + sum(alpha_i a_i), taking w-adic valuations for the primes w
    dividing d(a) forces d(a) to divide n - alpha (alpha the multiplicity
    of a itself), so alpha = n and s = 0: a contradiction.
    """

    n: int
    s: tuple[Fraction, ...]
    dividing_atoms: tuple[Fraction, ...]
    witness_atom: Fraction
    witness_denominator: int
    witness_index: int

    kind = "theoremBackedRefutation"

    def __post_init__(self):
        limit = max([self.n] + [v.denominator for v in self.dividing_atoms])
        if not self.witness_denominator > limit:
            raise DomainError(
                "refutation witness must have denominator above max(n, d(S))"
            )

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "s": [format_rational(v) for v in self.s],
            "witnessAtom": format_rational(self.witness_atom),
            "witnessDenominator": self.witness_denominator,
            "witnessIndex": self.witness_index,
        }


@dataclass(frozen=True)
class NotRefuted:
    """No qualifying witness exists; finite lists can exhaust."""

    reason: str

    kind = "notRefuted"

    def to_json(self) -> dict:
        return {"kind": self.kind, "reason": self.reason}


def _coprime_denominator_family(spec) -> bool:
    if isinstance(spec, PrimeReciprocal):
        return True  # distinct prime denominators
    if isinstance(spec, FiniteGen):
        dens = [g.denominator for g in spec.gens]
        return all(
            gcd(a, b) == 1 for i, a in enumerate(dens) for b in dens[i + 1 :]
        )
    return False


def refute_strongly_primary(spec, n: int, s: Sequence, depth: int = 12):
    """Refute n * M-nonzero within S + M by the valuation argument.

    Sound exactly for generator families with pairwise coprime denominators.
    Each s in S is first replaced by an atom dividing it (taken from its
    membership witness); the scan then looks for the first atom whose
    denominator clears max(n, d of those atoms) and shares no factor with
    them.  A finite generator list may exhaust without a witness, in which
    case NotRefuted is returned.
    """
    if n < 1:
        raise DomainError("the multiplier n must be a positive integer")
    if not isinstance(spec, (PrimeReciprocal, FiniteGen)):
        raise DomainError(
            "the valuation refutation applies to coprime-denominator families"
        )
    if not _coprime_denominator_family(spec):
        raise DomainError(
            "generator denominators are not pairwise coprime; the argument is unsound"
        )
    s_set = _fractions(s)
    if not s_set:
        raise DomainError("S must be nonempty")
    dividing: list[Fraction] = []
    for v in s_set:
        ans = member(spec, v, depth)
        if not ans.is_yes:
            raise DomainError(
                f"{format_rational(v)} was not verified as a member ({ans.verdict})"
            )
        if ans.witness.counts:
            dividing.append(ans.witness.counts[0][0])
        else:  # v == 0 is excluded already, but stay safe
            raise DomainError("members of S must be nonzero")
    limit = max([n] + [a.denominator for a in dividing])
    for index, atom in enumerate(family_atoms(spec), start=1):
        d = atom.denominator
        if d > limit and all(gcd(d, a.denominator) == 1 for a in dividing):
            return ValuationRefutation(
                n=n,
                s=s_set,
                dividing_atoms=tuple(dividing),
                witness_atom=atom,
                witness_denominator=d,
                witness_index=index,
            )
    return NotRefuted(
        reason=f"no generator denominator exceeds max(n, d(S)) = {limit}"
    )


def corroborate_refutation(
    spec, refutation: ValuationRefutation, extra_depth: int = 5
) -> bool:
    """Bounded cross-check of a refutation.

    Confirms n*a - s is outside the depth-(index + extra) truncation for
    every s in the candidate set; negative differences count as outside.
    """
    depth = refutation.witness_index + extra_depth
    if isinstance(spec, FiniteGen):
        trunc = spec
    else:
        trunc = truncate(spec, depth)
    for v in refutation.s:
        rest = refutation.n * refutation.witness_atom - v
        if rest < 0:
            continue
        if member(trunc, rest).is_yes:
            return False
    return True


# ---------------------------------------------------------------------------
# Primary triviality


@dataclass(frozen=True)
class DivisorClosureCounterexample:
    """Witness that a proper nontrivial submonoid is not divisor-closed.

    x is an atom outside the submonoid, y a generator inside it, and
    n(x)*n(y) a common multiple: x divides it in the big monoid while it
    sits inside the submonoid, so closure fails at x.
    """

    x: Fraction
    y: Fraction
    multiple: Fraction

    def to_json(self) -> dict:
        return {
            "x": format_rational(self.x),
            "y": format_rational(self.y),
            "multiple": format_rational(self.multiple),
        }


def divisor_closure_counterexample(
    spec: FiniteGen, subset: Sequence
) -> DivisorClosureCounterexample:
    """Exhibit the failure of divisor-closedness for <subset> inside <spec>."""
    atoms = minimal_generators(spec.gens)
    chosen = _fractions(subset)
    if not set(chosen) < set(atoms):
        raise DomainError("subset must be a strict subset of the atom set")
    if not chosen:
        raise DomainError("subset must be nonempty")
    x = next(a for a in atoms if a not in set(chosen))
    y = chosen[0]
    multiple = Fraction(x.numerator * y.numerator)
    # multiple == x * (d(x) n(y)) == y * (d(y) n(x)); the checks are exact
    if x * x.denominator * y.numerator != multiple:
        raise AssertionError("multiple is not an integer multiple of x")
    if member(FiniteGen(chosen), x).is_yes:
        raise AssertionError(f"{x} unexpectedly lies in the submonoid")
    return DivisorClosureCounterexample(x=x, y=y, multiple=multiple)

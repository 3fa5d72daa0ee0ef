"""Puiseux monoid descriptions and their decision procedures.

Four monoid shapes are supported: explicit finite generator lists and three
parametric infinite families (geometric powers of a rational, one atom per
prime, and a layered prime-power construction).  Infinite families are never
materialized; every answer is either a closed form backed by a theorem about
the family or a truncation-bounded computation that reports its depth.
"""

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Union

from .errors import AtomicityUnknownError, DomainError
from .factorizations import (
    EMPTY_FACTORIZATION,
    SEARCH_CAPPED,
    Factorization,
    minimal_generators,
    solve_counts,
)
from .numerical import NumericalMonoid
from .rationals import format_rational, int_valuation, parse_rational, prime_stream


class _Unknown:
    """Tri-state verdict marker.  Deliberately unusable as a boolean."""

    __slots__ = ()

    def __repr__(self):
        return "Unknown"

    def __bool__(self):
        raise TypeError("Unknown has no truth value; compare with UNKNOWN by identity")


UNKNOWN = _Unknown()


# ---------------------------------------------------------------------------
# Index formulas


@dataclass(frozen=True)
class Poly:
    """Polynomial in the level index n, with nonnegative integer coefficients.

    coeffs[k] multiplies n**k.  Restricting exponents this way keeps the
    layered construction exact and total.
    """

    coeffs: tuple[int, ...]

    _TERM = re.compile(
        r"^(?:(\d+)\s*\*?\s*)?(n)?(?:\s*(?:\^|\*\*)\s*(\d+))?$"
    )

    def __post_init__(self):
        if not self.coeffs or any(c < 0 for c in self.coeffs):
            raise DomainError("formula coefficients must be nonnegative integers")

    def __call__(self, n: int) -> int:
        return sum(c * n**k for k, c in enumerate(self.coeffs))

    @classmethod
    def parse(cls, text: str) -> "Poly":
        text = str(text).replace("−", "-")
        if "-" in text:
            raise DomainError("formula coefficients must be nonnegative")
        coeffs: dict[int, int] = {}
        for raw in text.split("+"):
            term = raw.strip()
            if not term:
                raise DomainError(f"empty term in formula {text!r}")
            m = cls._TERM.match(term)
            if not m or (m.group(3) and not m.group(2)) or not (m.group(1) or m.group(2)):
                raise DomainError(
                    f"cannot parse term {term!r}; formulas are sums of c, n, c*n^k"
                )
            coeff = int(m.group(1)) if m.group(1) else 1
            degree = 0
            if m.group(2):
                degree = int(m.group(3)) if m.group(3) else 1
            coeffs[degree] = coeffs.get(degree, 0) + coeff
        top = max(coeffs)
        return cls(tuple(coeffs.get(k, 0) for k in range(top + 1)))

    def __str__(self) -> str:
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append("n" if c == 1 else f"{c}*n")
            else:
                terms.append(f"n^{k}" if c == 1 else f"{c}*n^{k}")
        return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# Spec variants


@dataclass(frozen=True)
class FiniteGen:
    """Monoid generated by an explicit finite list of positive rationals."""

    gens: tuple[Fraction, ...]

    def __post_init__(self):
        normalized = tuple(sorted({_as_fraction(g) for g in self.gens}))
        if not normalized:
            raise DomainError("a finite spec needs at least one generator")
        if normalized[0] <= 0:
            raise DomainError("generators must be strictly positive")
        object.__setattr__(self, "gens", normalized)


@dataclass(frozen=True)
class Geometric:
    """Powers of a fixed ratio r: one-sided <r^n : n >= start> or all of n in Z."""

    ratio: Fraction
    start: int = 1
    biinfinite: bool = False

    def __post_init__(self):
        r = _as_fraction(self.ratio)
        if r <= 0:
            raise DomainError("the ratio must be a positive rational")
        object.__setattr__(self, "ratio", r)
        if self.biinfinite:
            object.__setattr__(self, "start", 0)

    def has_closed_form_atoms(self) -> bool:
        """The closed-form atom set needs numerator and denominator above 1."""
        return self.ratio.numerator > 1 and self.ratio.denominator > 1


_PRIME_FORMS = ("1/p", "(p-1)/p", "(p^2+1)/p")
_FORM_ALIASES = {
    "(p−1)/p": "(p-1)/p",          # unicode minus
    "(p²+1)/p": "(p^2+1)/p",       # superscript two
}


@dataclass(frozen=True)
class PrimeReciprocal:
    """One generator per admissible prime p, shaped by a fixed formula in p."""

    form: str
    primes: str = "all"

    def __post_init__(self):
        form = _FORM_ALIASES.get(self.form, self.form)
        if form not in _PRIME_FORMS:
            raise DomainError(f"unknown form {self.form!r}; expected one of {_PRIME_FORMS}")
        object.__setattr__(self, "form", form)
        if self.primes not in ("all", "odd"):
            raise DomainError("prime filter must be 'all' or 'odd'")

    def admissible_primes(self) -> Iterator[int]:
        return prime_stream(odd_only=self.primes == "odd")

    def is_admissible(self, p: int) -> bool:
        if self.primes == "odd" and p == 2:
            return False
        from .rationals import is_prime

        return is_prime(p)

    def atom_for(self, p: int) -> Fraction:
        if self.form == "1/p":
            return Fraction(1, p)
        if self.form == "(p-1)/p":
            return Fraction(p - 1, p)
        return Fraction(p * p + 1, p)

    def increasing(self) -> bool:
        """Whether the atom sequence increases with p."""
        return self.form != "1/p"


@dataclass(frozen=True)
class PrimaryConstruction:
    """Layered monoid <q^f(n) * s / p^n : n >= 1, s in S_n>.

    The level list S_n extends by repeating its last entry.  Structural
    hypotheses (coprimality, f(1) = 1, inclusion-decreasing levels) are
    checked here; the growth inequality is checked level by level wherever a
    computation touches the family.
    """

    p: int
    q: int
    f: Poly
    levels: tuple[NumericalMonoid, ...]

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise DomainError("p and q must be positive integers")
        if gcd(self.p, self.q) != 1:
            raise DomainError(f"p={self.p} and q={self.q} must be coprime")
        f = self.f if isinstance(self.f, Poly) else Poly.parse(self.f)
        object.__setattr__(self, "f", f)
        if f(1) != 1:
            raise DomainError(f"the exponent formula must satisfy f(1) = 1, got {f(1)}")
        levels = tuple(self.levels)
        if not levels:
            raise DomainError("at least one level monoid is required")
        object.__setattr__(self, "levels", levels)
        for earlier, later in zip(levels, levels[1:]):
            for g in later.min_gens:
                if not earlier.contains(g):
                    raise DomainError(
                        f"levels must be inclusion-decreasing: {g} from {later} "
                        f"is outside {earlier}"
                    )

    def level(self, n: int) -> NumericalMonoid:
        return self.levels[min(n, len(self.levels)) - 1]

    def level_generators(self, n: int) -> list[Fraction]:
        scale = Fraction(self.q ** self.f(n), self.p**n)
        return sorted(scale * a for a in self.level(n).atoms())

    def growth_sides(self, n: int) -> tuple[Fraction, int]:
        """Left and right side of the level-n growth inequality."""
        e = self.f(n + 1) - self.f(n)
        lhs = (Fraction(self.q) ** e) - self.p**n
        s = self.level(n)
        rhs = self.p * max(s.frobenius(), s.max_atom())
        return lhs, rhs

    def validate_growth(self, depth: int) -> list[tuple[int, Fraction, int]]:
        from .errors import ConstructionError

        rows = []
        for n in range(1, depth + 1):
            lhs, rhs = self.growth_sides(n)
            if not lhs > rhs:
                raise ConstructionError(n, lhs, rhs)
            rows.append((n, lhs, rhs))
        return rows


PuiseuxSpec = Union[FiniteGen, Geometric, PrimeReciprocal, PrimaryConstruction]


def _as_fraction(value) -> Fraction:
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise DomainError("floats are not exact; pass a string like \"3/2\"")
    return Fraction(value)


# ---------------------------------------------------------------------------
# Truncation: finite windows of the families


def family_atoms(spec: PuiseuxSpec) -> Iterator[Fraction]:
    """Generators in the family's canonical enumeration order."""
    if isinstance(spec, FiniteGen):
        yield from spec.gens
    elif isinstance(spec, Geometric):
        if spec.biinfinite:
            yield spec.ratio**0
            for k in itertools.count(1):
                yield spec.ratio**-k
                yield spec.ratio**k
        else:
            for n in itertools.count(spec.start):
                yield spec.ratio**n
    elif isinstance(spec, PrimeReciprocal):
        for p in spec.admissible_primes():
            yield spec.atom_for(p)
    elif isinstance(spec, PrimaryConstruction):
        for n in itertools.count(1):
            spec.validate_growth(n)
            yield from spec.level_generators(n)
    else:
        raise DomainError(f"not a monoid description: {spec!r}")


def truncate(spec: PuiseuxSpec, depth: int) -> FiniteGen:
    """The submonoid generated by the first `depth` generators (or levels).

    Geometric windows take indices start..start+depth-1, or -depth..depth in
    the two-sided case; the prime family takes its first `depth` admissible
    primes; the layered construction takes all generators of levels <= depth.
    The generator sets grow monotonically with depth.
    """
    if depth < 1:
        raise DomainError("depth must be at least 1")
    if isinstance(spec, FiniteGen):
        return FiniteGen(spec.gens[:depth])
    if isinstance(spec, Geometric):
        if spec.biinfinite:
            gens = [spec.ratio**k for k in range(-depth, depth + 1)]
        else:
            gens = [spec.ratio**n for n in range(spec.start, spec.start + depth)]
        return FiniteGen(tuple(gens))
    if isinstance(spec, PrimeReciprocal):
        primes = itertools.islice(spec.admissible_primes(), depth)
        return FiniteGen(tuple(spec.atom_for(p) for p in primes))
    if isinstance(spec, PrimaryConstruction):
        spec.validate_growth(depth)
        gens: list[Fraction] = []
        for n in range(1, depth + 1):
            gens.extend(spec.level_generators(n))
        return FiniteGen(tuple(gens))
    raise DomainError(f"not a monoid description: {spec!r}")


# ---------------------------------------------------------------------------
# Membership


@dataclass(frozen=True)
class Membership:
    """Yes with an exact witness, a sound No, or Unknown at a search depth."""

    verdict: str
    witness: Factorization | None = None
    reason: str | None = None
    depth: int | None = None

    @classmethod
    def yes(cls, witness: Factorization) -> "Membership":
        return cls("yes", witness=witness)

    @classmethod
    def no(cls, reason: str) -> "Membership":
        return cls("no", reason=reason)

    @classmethod
    def unknown(cls, depth: int) -> "Membership":
        return cls("unknown", depth=depth)

    @property
    def is_yes(self) -> bool:
        return self.verdict == "yes"

    @property
    def is_no(self) -> bool:
        return self.verdict == "no"

    @property
    def is_unknown(self) -> bool:
        return self.verdict == "unknown"

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.reason is not None:
            out["reason"] = self.reason
        if self.depth is not None:
            out["depth"] = self.depth
        return out


# Inexact truncation searches can only answer Yes or Unknown, so capping
# their effort is sound; exact paths must run to completion.
_SEARCH_NODE_CAP = 200_000


def _member_over_atoms(atoms, x: Fraction, exact: bool, depth: int | None) -> Membership:
    counts = solve_counts(atoms, x, node_cap=None if exact else _SEARCH_NODE_CAP)
    if counts is SEARCH_CAPPED:
        return Membership.unknown(depth if depth is not None else 0)
    if counts is not None:
        return Membership.yes(Factorization.from_counts(counts))
    if exact:
        return Membership.no("no atom combination reaches the value")
    return Membership.unknown(depth if depth is not None else 0)


def _prime_support_block(spec, x: Fraction) -> str | None:
    """Valuation-based exclusions shared by the infinite families.

    Returns a reason string when x provably lies outside the monoid, None
    otherwise.  Sums of nonnegative rationals can only lower a p-adic
    valuation as far as the least valuation among the generators.
    """
    if isinstance(spec, PrimeReciprocal):
        den = x.denominator
        for p in range(2, den + 1):
            if den % p:
                continue
            if not spec.is_admissible(p):
                return f"denominator prime {p} is not an admissible prime"
            if den % (p * p) == 0:
                return f"members have squarefree denominators; {p}^2 divides d(x)"
            while den % p == 0:
                den //= p
        return None
    if isinstance(spec, Geometric):
        r = spec.ratio
        allowed = set()
        for part in (r.numerator, r.denominator):
            for p in range(2, part + 1):
                while part % p == 0:
                    allowed.add(p)
                    part //= p
        den = x.denominator
        for p in range(2, den + 1):
            if den % p:
                continue
            if p not in allowed:
                return f"denominator prime {p} divides neither n(r) nor d(r)"
            while den % p == 0:
                den //= p
        if not spec.biinfinite:
            for p in allowed:
                if r.numerator % p == 0:
                    floor = spec.start * int_valuation(p, r.numerator)
                    vx = int_valuation(p, x.numerator) - int_valuation(p, x.denominator)
                    if vx < floor:
                        return (
                            f"{p}-adic valuation {vx} is below the family minimum {floor}"
                        )
        return None
    return None


def member(spec: PuiseuxSpec, x, depth_limit: int = 8) -> Membership:
    """Decide x in M, exactly where the family allows it.

    Finite specs are always decidable.  Families whose generators increase
    without bound reduce to the finitely many generators <= x and are also
    decidable.  The remaining cases search a truncation and answer Unknown
    (never a bare No) unless a valuation argument excludes x outright.
    """
    x = _as_fraction(x)
    if x < 0:
        return Membership.no("negative values are outside the monoid")
    if x == 0:
        return Membership.yes(EMPTY_FACTORIZATION)

    if isinstance(spec, FiniteGen):
        return _member_over_atoms(minimal_generators(spec.gens), x, exact=True, depth=None)

    if isinstance(spec, Geometric):
        r = spec.ratio
        if r == 1:
            if x.denominator == 1:
                return Membership.yes(
                    Factorization.from_counts({Fraction(1): x.numerator})
                )
            return Membership.no("the monoid contains only integers")
        block = _prime_support_block(spec, x)
        if block:
            return Membership.no(block)
        if not spec.biinfinite and r > 1:
            gens = []
            for g in family_atoms(spec):
                if g > x:
                    break
                gens.append(g)
            if not gens:
                return Membership.no("every generator exceeds the value")
            return _member_over_atoms(minimal_generators(gens), x, exact=True, depth=None)
        trunc = truncate(spec, depth_limit)
        return _member_over_atoms(trunc.gens, x, exact=False, depth=depth_limit)

    if isinstance(spec, PrimeReciprocal):
        block = _prime_support_block(spec, x)
        if block:
            return Membership.no(block)
        # Only finitely many atoms fit below x when the atom sequence is
        # unbounded, or bounded by 1 with x < 1; those cases are exact.
        if spec.form == "(p^2+1)/p" or (spec.form == "(p-1)/p" and x < 1):
            gens = []
            for g in family_atoms(spec):
                if g > x:
                    break
                gens.append(g)
            if not gens:
                return Membership.no("every generator exceeds the value")
            return _member_over_atoms(minimal_generators(gens), x, exact=True, depth=None)
        trunc = truncate(spec, depth_limit)
        return _member_over_atoms(trunc.gens, x, exact=False, depth=depth_limit)

    if isinstance(spec, PrimaryConstruction):
        gens: list[Fraction] = []
        n = 1
        while True:
            spec.validate_growth(n)
            level = spec.level_generators(n)
            if level[0] > x:
                break
            gens.extend(g for g in level if g <= x)
            n += 1
        if not gens:
            return Membership.no("every generator exceeds the value")
        return _member_over_atoms(minimal_generators(gens), x, exact=True, depth=None)

    raise DomainError(f"not a monoid description: {spec!r}")


# ---------------------------------------------------------------------------
# Atoms


def atoms_up_to(spec: PuiseuxSpec, depth: int) -> list[Fraction]:
    """Atom window of the monoid.

    Finite specs return their full minimal generating set (equal to the atom
    set).  Families return the first `depth` closed-form atoms, each
    re-verified as an atom of the depth-`depth` truncation; candidates that
    fail re-verification are dropped.
    """
    if depth < 1:
        raise DomainError("depth must be at least 1")
    if isinstance(spec, FiniteGen):
        return list(minimal_generators(spec.gens))
    if isinstance(spec, Geometric):
        r = spec.ratio
        if r == 1:
            return [Fraction(1)]
        if spec.biinfinite:
            if not spec.has_closed_form_atoms():
                raise AtomicityUnknownError(
                    "two-sided powers of an integer or unit-fraction ratio have no atoms"
                )
        elif r.numerator == 1:
            raise AtomicityUnknownError(
                f"no known atom description for ratio {format_rational(r)}"
            )
    verified = set(minimal_generators(truncate(spec, depth).gens))
    window = itertools.islice(family_atoms(spec), _window_size(spec, depth))
    return sorted(c for c in window if c in verified)


def _window_size(spec: PuiseuxSpec, depth: int) -> int:
    if isinstance(spec, Geometric) and spec.biinfinite:
        return 2 * depth + 1
    if isinstance(spec, PrimaryConstruction):
        return sum(len(spec.level(n).atoms()) for n in range(1, depth + 1))
    return depth


# ---------------------------------------------------------------------------
# Density and classification


def zero_is_limit_point(spec: PuiseuxSpec) -> bool:
    """Does the monoid accumulate at 0?  Closed form per family."""
    if isinstance(spec, FiniteGen):
        return False
    if isinstance(spec, Geometric):
        if spec.biinfinite:
            return spec.ratio != 1
        return spec.ratio < 1
    if isinstance(spec, PrimeReciprocal):
        return spec.form == "1/p"
    if isinstance(spec, PrimaryConstruction):
        return False
    raise DomainError(f"not a monoid description: {spec!r}")


def is_bf_witnessed(spec: PuiseuxSpec):
    """True when 0 is not a limit point (a sufficient condition for BF).

    The criterion is not necessary, so the other branch is UNKNOWN rather
    than False.
    """
    return True if not zero_is_limit_point(spec) else UNKNOWN


@dataclass(frozen=True)
class Classification:
    transfer_finite: bool
    transfer_krull: bool
    krull: bool
    c_monoid: bool
    evidence: str

    def to_json(self) -> dict:
        return {
            "transferFinite": self.transfer_finite,
            "transferKrull": self.transfer_krull,
            "krull": self.krull,
            "cMonoid": self.c_monoid,
            "evidence": self.evidence,
        }


def _classification(finitely_generated: bool, cyclic: bool, evidence: str) -> Classification:
    return Classification(
        transfer_finite=finitely_generated,
        transfer_krull=cyclic,
        krull=cyclic,
        c_monoid=finitely_generated,
        evidence=evidence,
    )


def classify(spec: PuiseuxSpec) -> Classification:
    """Structural classification of the monoid.

    Transfer-finiteness and the C-monoid property both come down to being
    isomorphic to a numerical monoid (equivalently, finitely generated);
    the Krull and transfer-Krull properties both come down to having a
    single minimal generator.
    """
    if isinstance(spec, FiniteGen):
        atoms = minimal_generators(spec.gens)
        if len(atoms) == 1:
            return _classification(True, True, "single minimal generator")
        return _classification(
            True, False, f"finitely generated with {len(atoms)} minimal generators"
        )
    if isinstance(spec, Geometric):
        r = spec.ratio
        if r == 1:
            return _classification(True, True, "all generators equal 1")
        if not spec.biinfinite and r.denominator == 1:
            return _classification(
                True, True, "integer ratio: the powers collapse to one generator"
            )
        if spec.has_closed_form_atoms():
            return _classification(False, False, "infinitely many atoms")
        return _classification(
            False, False, "unbounded denominators, not finitely generated"
        )
    if isinstance(spec, PrimeReciprocal):
        return _classification(False, False, "infinitely many atoms")
    if isinstance(spec, PrimaryConstruction):
        return _classification(
            False, False, "unbounded denominators, not finitely generated"
        )
    raise DomainError(f"not a monoid description: {spec!r}")


# ---------------------------------------------------------------------------
# JSON forms


def spec_to_json(spec) -> dict:
    if isinstance(spec, NumericalMonoid):
        return spec.to_json()
    if isinstance(spec, FiniteGen):
        return {"kind": "finite", "generators": [format_rational(g) for g in spec.gens]}
    if isinstance(spec, Geometric):
        out = {"kind": "geometric", "ratio": format_rational(spec.ratio)}
        if spec.biinfinite:
            out["biinfinite"] = True
        else:
            out["from"] = spec.start
        return out
    if isinstance(spec, PrimeReciprocal):
        return {"kind": "primeReciprocal", "form": spec.form, "primes": spec.primes}
    if isinstance(spec, PrimaryConstruction):
        return {
            "kind": "primaryConstruction",
            "p": spec.p,
            "q": spec.q,
            "f": str(spec.f),
            "Sn": [list(s.min_gens) for s in spec.levels],
        }
    raise DomainError(f"not a monoid description: {spec!r}")


def spec_from_json(obj):
    """Build a spec from its JSON form (dict, not raw text)."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise DomainError("a spec object needs a 'kind' field")
    kind = obj["kind"]
    if kind == "finite":
        gens = obj.get("generators")
        if not gens:
            raise DomainError("finite spec needs a nonempty 'generators' list")
        return FiniteGen(tuple(_as_fraction(g) for g in gens))
    if kind == "geometric":
        ratio = _as_fraction(obj["ratio"])
        if obj.get("biinfinite"):
            if "from" in obj:
                raise DomainError("'biinfinite' and 'from' are mutually exclusive")
            return Geometric(ratio, biinfinite=True)
        return Geometric(ratio, start=int(obj.get("from", 1)))
    if kind == "primeReciprocal":
        return PrimeReciprocal(obj["form"], obj.get("primes", "all"))
    if kind == "primaryConstruction":
        levels = []
        for gens in obj.get("Sn", []):
            monoid, scale = _numerical_from(gens)
            if scale != 1:
                raise DomainError(
                    f"level generators {gens} have gcd {scale}; not a numerical monoid"
                )
            levels.append(monoid)
        return PrimaryConstruction(
            int(obj["p"]), int(obj["q"]), Poly.parse(obj["f"]), tuple(levels)
        )
    if kind == "numerical":
        monoid, _scale = _numerical_from(obj.get("generators"))
        return monoid
    raise DomainError(f"unknown spec kind {kind!r}")


def _numerical_from(gens):
    from .numerical import from_generators

    if not gens:
        raise DomainError("numerical spec needs a nonempty 'generators' list")
    cleaned = []
    for g in gens:
        q = _as_fraction(g)
        if q.denominator != 1:
            raise DomainError(f"generator {format_rational(q)} is not an integer")
        cleaned.append(q.numerator)
    return from_generators(cleaned)


def as_puiseux(spec) -> PuiseuxSpec:
    """View a numerical monoid as a finite Puiseux spec; pass others through."""
    if isinstance(spec, NumericalMonoid):
        return FiniteGen(tuple(Fraction(g) for g in spec.min_gens))
    return spec

"""Homomorphisms between Puiseux monoids.

Every monoid homomorphism between Puiseux monoids is multiplication by a
fixed nonnegative rational, and such a map is a transfer homomorphism
exactly when it is surjective.  That collapses hom detection to membership
checks of the scaled generators, transfer checks to two-sided generator
containment, and automorphism search for the two-sided geometric family to
an integer-power test decided by p-adic fingerprints.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError
from .factorizations import length_set, minimal_generators
from .monoids import (
    FiniteGen,
    Geometric,
    PrimeReciprocal,
    PuiseuxSpec,
    member,
    truncate,
)
from .rationals import format_rational, int_valuation


def _fraction(value) -> Fraction:
    from .rationals import parse_rational

    return parse_rational(value) if isinstance(value, str) else Fraction(value)


# ---------------------------------------------------------------------------
# Hom detection


@dataclass(frozen=True)
class HomCheck:
    """valid | invalid | valid_at_depth | unknown, with the failing generator."""

    status: str
    multiplier: Fraction
    witness: Fraction | None = None
    depth: int | None = None

    @property
    def is_valid(self) -> bool:
        return self.status in ("valid", "valid_at_depth")

    def to_json(self) -> dict:
        out: dict = {"status": self.status, "q": format_rational(self.multiplier)}
        if self.witness is not None:
            out["witness"] = format_rational(self.witness)
        if self.depth is not None:
            out["depth"] = self.depth
        return out


def check_hom(q, domain: PuiseuxSpec, codomain: PuiseuxSpec, depth: int = 8) -> HomCheck:
    """Is multiplication by q a homomorphism from domain into codomain?

    Multiplication maps are the only candidates, so checking q*g in N over
    the generators g settles the question: completely when the domain is
    finitely generated, to the stated depth otherwise.
    """
    q = _fraction(q)
    if q < 0:
        raise DomainError("multipliers are nonnegative rationals")
    if q == 0:
        return HomCheck("valid", q)
    exact = isinstance(domain, FiniteGen)
    gens = domain.gens if exact else truncate(domain, depth).gens
    saw_unknown = None
    for g in gens:
        ans = member(codomain, q * g, depth)
        if ans.is_no:
            return HomCheck("invalid", q, witness=g)
        if ans.is_unknown and saw_unknown is None:
            saw_unknown = g
    if saw_unknown is not None:
        return HomCheck("unknown", q, witness=saw_unknown, depth=depth)
    if exact:
        return HomCheck("valid", q)
    return HomCheck("valid_at_depth", q, depth=depth)


# ---------------------------------------------------------------------------
# Transfer checks


@dataclass(frozen=True)
class TransferCheck:
    """Transfer = surjective: verdict plus a missed generator on failure."""

    verdict: str  # "true" | "false" | "true_at_depth" | "unknown"
    multiplier: Fraction
    witness: Fraction | None = None
    note: str | None = None
    depth: int | None = None

    @property
    def ok(self) -> bool:
        return self.verdict in ("true", "true_at_depth")

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict, "q": format_rational(self.multiplier)}
        if self.witness is not None:
            out["witness"] = format_rational(self.witness)
        if self.note:
            out["note"] = self.note
        if self.depth is not None:
            out["depth"] = self.depth
        return out


def is_transfer(q, domain: PuiseuxSpec, codomain: PuiseuxSpec, depth: int = 8) -> TransferCheck:
    """Decide surjectivity of a verified multiplication hom.

    Exact for finite/finite pairs (two-sided generator membership) and for
    geometric/geometric pairs with a power multiplier; other family pairs
    get a depth-tagged verdict.
    """
    q = _fraction(q)
    if q == 0:
        return TransferCheck(
            "false", q, note="the zero map collapses a nontrivial codomain"
        )
    if (
        isinstance(domain, Geometric)
        and isinstance(codomain, Geometric)
        and domain.ratio == codomain.ratio
        and domain.ratio != 1
    ):
        # settled symbolically: the multiplier must shift the atom set
        k = power_index(q, domain.ratio)
        if k is None:
            return TransferCheck("false", q, note="multiplier is not a power of the ratio")
        if domain.biinfinite and codomain.biinfinite:
            return TransferCheck("true", q, note=f"index shift by {k}")
        if domain.biinfinite != codomain.biinfinite:
            return TransferCheck("false", q, note="one-sided and two-sided windows differ")
        if domain.start + k == codomain.start:
            return TransferCheck("true", q, note=f"index shift by {k}")
        missing = codomain.ratio**codomain.start
        return TransferCheck("false", q, witness=missing)
    hom = check_hom(q, domain, codomain, depth)
    if hom.status == "invalid":
        return TransferCheck(
            "false", q, witness=hom.witness, note="not a homomorphism into the codomain"
        )
    if isinstance(domain, FiniteGen) and isinstance(codomain, FiniteGen):
        for h in codomain.gens:
            if not member(domain, h / q).is_yes:
                return TransferCheck("false", q, witness=h)
        return TransferCheck("true", q)
    # generic family pair: verify codomain generators at depth only
    for h in truncate(codomain, depth).gens:
        ans = member(domain, h / q, depth)
        if ans.is_no:
            return TransferCheck("false", q, witness=h)
        if ans.is_unknown:
            return TransferCheck("unknown", q, witness=h, depth=depth)
    return TransferCheck("true_at_depth", q, depth=depth)


@dataclass(frozen=True)
class SampleCheck:
    x: Fraction
    image: Fraction
    in_domain: bool
    atom_match: bool | None
    lengths_domain: tuple[int, ...] | None
    lengths_image: tuple[int, ...] | None

    @property
    def ok(self) -> bool:
        if not self.in_domain:
            return True  # skipped, not failed
        return bool(self.atom_match) and self.lengths_domain == self.lengths_image

    def to_json(self) -> dict:
        out: dict = {
            "x": format_rational(self.x),
            "image": format_rational(self.image),
            "inDomain": self.in_domain,
        }
        if not self.in_domain:
            out["note"] = "skipped: not a member"
            return out
        out["atomMatch"] = self.atom_match
        out["lengthsDomain"] = list(self.lengths_domain)
        out["lengthsImage"] = list(self.lengths_image)
        out["ok"] = self.ok
        return out


def verify_transfer_properties(
    q, domain: FiniteGen, codomain: FiniteGen, samples: Sequence
) -> list[SampleCheck]:
    """Check the transfer consequences sample by sample.

    For each member x: x is an atom iff q*x is an atom, and the length sets
    of x and q*x agree.  Non-members are recorded as skipped.
    """
    q = _fraction(q)
    if not (isinstance(domain, FiniteGen) and isinstance(codomain, FiniteGen)):
        raise DomainError("property verification runs on finitely generated pairs")
    check = is_transfer(q, domain, codomain)
    if not check.ok:
        raise DomainError("not a transfer homomorphism; nothing to verify")
    atoms_m = set(minimal_generators(domain.gens))
    atoms_n = set(minimal_generators(codomain.gens))
    out = []
    for raw in samples:
        x = _fraction(raw)
        if not member(domain, x).is_yes:
            out.append(
                SampleCheck(x, q * x, False, None, None, None)
            )
            continue
        lengths_m = tuple(length_set(domain, x))
        lengths_n = tuple(length_set(codomain, q * x))
        out.append(
            SampleCheck(
                x=x,
                image=q * x,
                in_domain=True,
                atom_match=(x in atoms_m) == (q * x in atoms_n),
                lengths_domain=lengths_m,
                lengths_image=lengths_n,
            )
        )
    return out


# ---------------------------------------------------------------------------
# Automorphisms of the two-sided geometric family


def power_index(q, r) -> int | None:
    """The integer k with q == r**k, or None.

    Decided by a p-adic fingerprint: any prime p dividing n(r) pins k as
    v_p(q) / v_p(r), and the candidate is confirmed by exact comparison.
    """
    q = _fraction(q)
    r = _fraction(r)
    if q <= 0 or r <= 0:
        raise DomainError("powers are considered for positive rationals only")
    if r == 1:
        return 0 if q == 1 else None
    if q == 1:
        return 0
    base = r.numerator if r.numerator > 1 else r.denominator
    p = next(p for p in range(2, base + 1) if base % p == 0)
    vr = int_valuation(p, r.numerator) - int_valuation(p, r.denominator)
    vq = int_valuation(p, q.numerator) - int_valuation(p, q.denominator)
    if vr == 0 or vq % vr:
        return None
    k = vq // vr
    return k if r**k == q else None


@dataclass(frozen=True)
class AutomorphismWindow:
    """Multipliers found to permute the two-sided atom set, within a window."""

    ratio: Fraction
    window: int
    multipliers: tuple[Fraction, ...]
    rejected: tuple[tuple[Fraction, str], ...]

    def to_json(self) -> dict:
        return {
            "ratio": format_rational(self.ratio),
            "window": self.window,
            "multipliers": [format_rational(m) for m in self.multipliers],
            "rejectedSample": [
                {"q": format_rational(m), "reason": why} for m, why in self.rejected[:10]
            ],
        }


def automorphism_search(spec: Geometric, window: int) -> AutomorphismWindow:
    """Window slice of the automorphism group of a two-sided geometric monoid.

    Candidates are the ratio powers r**k for |k| <= window plus every a/b
    bounded by the window's numerators and denominators; a candidate
    survives iff it is an integer power of r (then it shifts the atom set),
    which the fingerprint test decides.  Survivors are spot-verified on a
    truncation wide enough to contain their shifted window.
    """
    if not isinstance(spec, Geometric) or not spec.biinfinite:
        raise DomainError("the automorphism search runs on two-sided geometric monoids")
    if not spec.has_closed_form_atoms():
        raise DomainError("the atom description requires n(r) > 1 and d(r) > 1")
    if window < 1:
        raise DomainError("window must be at least 1")
    r = spec.ratio
    bound = max(r.numerator, r.denominator) ** window
    candidates = {r**k for k in range(-window, window + 1)}
    candidates.update(
        Fraction(a, b) for a in range(1, bound + 1) for b in range(1, bound + 1)
    )
    accepted = []
    rejected = []
    for q in sorted(candidates):
        k = power_index(q, r)
        if k is None:
            rejected.append((q, "not an integer power of the ratio"))
        elif abs(k) > window:
            rejected.append((q, f"power index {k} outside the window"))
        else:
            accepted.append((k, q))
    trunc = truncate(spec, 2 * window)  # wide enough for any accepted shift
    trunc_set = set(trunc.gens)
    for k, q in accepted:
        for n in range(-window, window + 1):
            if q * r**n not in trunc_set:
                raise AssertionError(
                    f"{format_rational(q)} failed the spot check at index {n}"
                )
    return AutomorphismWindow(
        ratio=r,
        window=window,
        multipliers=tuple(q for _, q in sorted(accepted)),
        rejected=tuple(rejected),
    )


# ---------------------------------------------------------------------------
# The parity fixture


@dataclass(frozen=True)
class ParityFixture:
    """Surjective parity map with a nontrivial kernel, on <1/p : p odd prime>.

    theta(x) is the parity of the reduced numerator.  The map is additive
    because all denominators are odd, it is onto Z2, and theta(2/3) == 0
    with 2/3 != 0 shows the kernel is larger than {0}: surjectivity alone
    does not make the domain finitely generated.
    """

    additive_checks: int
    additive_ok: bool
    surjective: bool
    kernel_witness: Fraction
    kernel_witness_value: int

    def to_json(self) -> dict:
        return {
            "additiveChecks": self.additive_checks,
            "additiveOk": self.additive_ok,
            "surjective": self.surjective,
            "kernelWitness": format_rational(self.kernel_witness),
            "kernelWitnessValue": self.kernel_witness_value,
        }


def parity_value(x) -> int:
    """Parity of the reduced numerator; 0 maps to 0."""
    return _fraction(x).numerator % 2


def parity_hom_fixture(depth: int = 6, sample_terms: int = 3) -> ParityFixture:
    """Build and check the parity map on the odd prime-reciprocal monoid."""
    spec = PrimeReciprocal("1/p", "odd")
    atoms = truncate(spec, depth).gens
    combos = []
    for size in range(1, sample_terms + 1):
        combos.extend(
            sum(c, Fraction(0)) for c in itertools.combinations(atoms, size)
        )
    combos.append(Fraction(0))
    checks = 0
    ok = True
    for x, y in itertools.combinations_with_replacement(combos, 2):
        checks += 1
        if parity_value(x + y) != (parity_value(x) + parity_value(y)) % 2:
            ok = False
    witness = Fraction(2, 3)  # = 1/3 + 1/3, a member; even numerator
    if not member(spec, witness, depth).is_yes:
        raise AssertionError("kernel witness must be a member")
    surjective = parity_value(Fraction(1, 3)) == 1 and parity_value(Fraction(0)) == 0
    return ParityFixture(
        additive_checks=checks,
        additive_ok=ok,
        surjective=surjective,
        kernel_witness=witness,
        kernel_witness_value=parity_value(witness),
    )

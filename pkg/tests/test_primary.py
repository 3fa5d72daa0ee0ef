from fractions import Fraction

import pytest

from puiseux.errors import ConstructionError, DomainError
from puiseux.factorizations import elements_up_to
from puiseux.monoids import (
    FiniteGen,
    Geometric,
    PrimeReciprocal,
    member,
    truncate,
)
from puiseux.primary import (
    CertificateFailure,
    FinitaryCertificate,
    NotRefuted,
    ValuationRefutation,
    build_primary_construction,
    construction_certificate,
    corroborate_refutation,
    divisor_closure_counterexample,
    integer_intersection_atoms,
    mcyclic_certificate,
    refute_strongly_primary,
    verify_finitary_certificate,
)

from helpers import brute_rational_factorizations

F = Fraction


# ---------------------------------------------------------------------------
# Scoped certificates


def test_certificate_for_geometric_five_halves():
    result = verify_finitary_certificate(Geometric(F(5, 2)), 2, [5], 30, 4)
    assert isinstance(result, FinitaryCertificate)
    assert result.n == 2 and result.s == (F(5),)
    assert result.scope.elements_checked > 0


def test_certificate_soundness_recheck():
    # independent recheck: every recorded witness (x, s) really has
    # n*x - s factoring over the window atoms (brute force enumeration)
    spec = Geometric(F(5, 2))
    result = verify_finitary_certificate(spec, 2, [5], 20, 4)
    atoms = list(truncate(spec, 5).gens)
    swept = elements_up_to(truncate(spec, 4).gens, 20)
    assert [x for x, _ in result.witnesses] == swept
    for x, s in result.witnesses:
        rest = 2 * x - s
        assert rest >= 0
        assert brute_rational_factorizations(atoms, rest), x


def test_certificate_for_finitely_generated_monoid():
    result = verify_finitary_certificate(FiniteGen((F(3), F(5))), 1, [3, 5], 40, 1)
    assert isinstance(result, FinitaryCertificate)


def test_certificate_failure_is_least_element():
    # for n=2, S={1/3} over the odd prime reciprocals, the least truncation
    # element 1/13 already fails: 2/13 < 1/3, so 2/13 - s < 0 for every s
    result = verify_finitary_certificate(
        PrimeReciprocal("1/p", "odd"), 2, [F(1, 3)], 2, 5
    )
    assert isinstance(result, CertificateFailure)
    assert result.x == F(1, 13)


def test_certificate_rejects_non_member_s():
    with pytest.raises(DomainError):
        verify_finitary_certificate(Geometric(F(5, 2)), 2, [F(1, 7)], 10, 4)
    with pytest.raises(DomainError):
        verify_finitary_certificate(Geometric(F(5, 2)), 0, [5], 10, 4)


def test_certificate_inconclusive_when_membership_is_unknown():
    # 2*(1/3) - 1/5 = 7/15 is not reachable within the depth-3 window and
    # no exclusion applies, so the sweep must stop at Unknown, not No
    from puiseux.primary import CertificateInconclusive

    result = verify_finitary_certificate(
        PrimeReciprocal("1/p", "all"), 2, [F(1, 5)], 1, 3
    )
    assert isinstance(result, CertificateInconclusive)
    assert result.x == F(1, 3)
    assert member(PrimeReciprocal("1/p", "all"), F(7, 15), 3).is_unknown


# ---------------------------------------------------------------------------
# Geometric certificate


def test_mcyclic_certificate_five_halves():
    cert = mcyclic_certificate(F(5, 2), 3)
    assert cert.n == 2 and cert.s == (F(5),)
    j1 = cert.identity_checks[0]
    assert j1[0] == 1 and j1[1] == F(15, 2)
    assert j1[2].counts == ((F(5, 2), 3),)


def test_mcyclic_certificate_three_halves():
    cert = mcyclic_certificate(F(3, 2), 2)
    assert cert.n == 2 and cert.s == (F(3),)
    j1 = cert.identity_checks[0]
    assert j1[1] == F(3, 2) and j1[2].counts == ((F(3, 2), 1),)


def test_mcyclic_rejects_small_ratio():
    with pytest.raises(DomainError):
        mcyclic_certificate(F(2, 3), 2)


@pytest.mark.parametrize("ratio", [F(5, 2), F(3, 2), F(7, 3)])
def test_mcyclic_pair_passes_the_scoped_verifier(ratio):
    cert = mcyclic_certificate(ratio, 3)
    result = verify_finitary_certificate(
        Geometric(ratio), cert.n, list(cert.s), 50, 5
    )
    assert isinstance(result, FinitaryCertificate)


# ---------------------------------------------------------------------------
# The layered construction


def test_build_construction_valid_example():
    spec, rows = build_primary_construction(2, 3, "n^2", [[3, 5]], 4)
    for n, lhs, rhs in rows:
        assert lhs == 3 ** (2 * n + 1) - 2**n
        assert rhs == 14
        assert lhs > rhs


def test_build_construction_linear_exponent_fails_at_one():
    with pytest.raises(ConstructionError) as err:
        build_primary_construction(2, 3, "n", [[3, 5]], 4)
    assert err.value.level == 1


def test_build_construction_rejects_non_coprime():
    with pytest.raises(DomainError):
        build_primary_construction(2, 4, "n^2", [[3, 5]], 2)


def test_integer_intersection_atoms():
    spec, _ = build_primary_construction(2, 3, "n^2", [[3, 5]], 3)
    atoms = integer_intersection_atoms(spec, 2)
    # integers among sums of 9/2 and 15/2 under the default bound:
    # 9 = 2*(9/2), 12 = 9/2 + 15/2, 15 = 2*(15/2); none expressible from
    # the others (9a + 12b + 15c steps stay 3 apart)
    assert atoms == [9, 12, 15]


def test_construction_certificate_passes_verifier():
    spec, _ = build_primary_construction(2, 3, "n^2", [[3, 5]], 3)
    n, s = construction_certificate(spec, 2)
    assert n == 2
    assert F(9) in s and F(15) in s  # q * atoms of the first level
    result = verify_finitary_certificate(spec, n, list(s), 40, 2)
    assert isinstance(result, FinitaryCertificate)
    # audit each recorded witness against an independent enumeration
    window = list(truncate(spec, 3).gens)
    for x, v in result.witnesses:
        assert brute_rational_factorizations(window, n * x - v), (x, v)


# ---------------------------------------------------------------------------
# Valuation refutations


def test_refutation_unit_reciprocal():
    spec = PrimeReciprocal("1/p", "all")
    result = refute_strongly_primary(spec, 2, [F(1, 2)])
    assert isinstance(result, ValuationRefutation)
    # first denominator above max(n, d(S)) = 2
    assert result.witness_atom == F(1, 3)
    assert corroborate_refutation(spec, result)


def test_refutation_shifted_reciprocal():
    spec = PrimeReciprocal("(p-1)/p", "all")
    result = refute_strongly_primary(spec, 3, [F(1, 2), F(2, 3)])
    assert isinstance(result, ValuationRefutation)
    assert result.witness_atom == F(4, 5)  # 5 > max(3, 3)
    assert corroborate_refutation(spec, result)


def test_refutation_quadratic_reciprocal():
    spec = PrimeReciprocal("(p^2+1)/p", "all")
    result = refute_strongly_primary(spec, 2, [F(5, 2)])
    assert isinstance(result, ValuationRefutation)
    assert result.witness_denominator > 2
    assert corroborate_refutation(spec, result)


def test_refutation_witness_invariant():
    spec = PrimeReciprocal("1/p", "odd")
    result = refute_strongly_primary(spec, 4, [F(1, 3), F(1, 5)])
    assert result.witness_denominator > max(
        [result.n] + [v.denominator for v in result.dividing_atoms]
    )
    assert corroborate_refutation(spec, result)


def test_finite_list_can_exhaust():
    # no generator denominator exceeds max(n, d(S)) = 3
    result = refute_strongly_primary(FiniteGen((F(1, 2), F(1, 3))), 3, [F(1, 3)])
    assert isinstance(result, NotRefuted)


def test_finite_list_refutation_of_a_bad_pair():
    # the pair (2, {1/2}) genuinely fails for <1/2, 1/3>: the witness 1/3
    # gives 2/3 - 1/2 = 1/6, which is not a member
    spec = FiniteGen((F(1, 2), F(1, 3)))
    result = refute_strongly_primary(spec, 2, [F(1, 2)])
    assert isinstance(result, ValuationRefutation)
    assert result.witness_atom == F(1, 3)
    assert member(spec, F(1, 6)).is_no
    assert corroborate_refutation(spec, result)


def test_refutation_rejects_non_coprime_denominators():
    with pytest.raises(DomainError):
        refute_strongly_primary(FiniteGen((F(1, 2), F(3, 4))), 2, [F(1, 2)])


def test_refutation_rejects_unsupported_specs():
    with pytest.raises(DomainError):
        refute_strongly_primary(Geometric(F(3, 2)), 2, [F(3, 2)])


# ---------------------------------------------------------------------------
# Primary triviality


def test_divisor_closure_counterexample():
    witness = divisor_closure_counterexample(FiniteGen((F(2), F(3))), [F(3)])
    assert witness.x == F(2) and witness.y == F(3)
    assert witness.multiple == F(6)
    # 6 = 3*2 lies in <3>, and 2 divides 6 in <2,3> with cofactor 4 = 2+2...
    assert member(FiniteGen((F(2), F(3))), witness.multiple - witness.x).is_yes


def test_divisor_closure_counterexample_rational_case():
    spec = FiniteGen((F(3, 2), F(5, 2)))
    witness = divisor_closure_counterexample(spec, [F(5, 2)])
    assert witness.x == F(3, 2)
    assert witness.multiple == F(15)  # n(x) * n(y) = 3 * 5
    assert member(FiniteGen((F(5, 2),)), witness.multiple).is_yes
    assert member(spec, witness.multiple - witness.x).is_yes


def test_divisor_closure_requires_strict_subset():
    with pytest.raises(DomainError):
        divisor_closure_counterexample(FiniteGen((F(2), F(3))), [F(2), F(3)])

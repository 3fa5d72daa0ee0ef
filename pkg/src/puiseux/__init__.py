"""Exact-arithmetic toolkit for Puiseux, numerical, and block monoids."""

from .blocks import (
    FiniteAbelianGroup,
    GSequence,
    block_atoms,
    block_factorizations,
    block_length_set,
    davenport,
    gcd_stabilization,
    is_block,
    sigma,
)
from .errors import (
    AtomicityUnknownError,
    ConstructionError,
    DomainError,
    ScanCapError,
)
from .factorizations import (
    Factorization,
    elasticity,
    factorizations,
    half_factorial_up_to,
    length_set,
    minimal_generators,
)
from .homs import (
    automorphism_search,
    check_hom,
    is_transfer,
    parity_hom_fixture,
    power_index,
    verify_transfer_properties,
)
from .monoids import (
    UNKNOWN,
    Classification,
    FiniteGen,
    Geometric,
    Membership,
    Poly,
    PrimaryConstruction,
    PrimeReciprocal,
    atoms_up_to,
    classify,
    is_bf_witnessed,
    member,
    spec_from_json,
    spec_to_json,
    truncate,
    zero_is_limit_point,
)
from .numerical import NumericalMonoid, from_generators
from .primary import (
    CertificateFailure,
    CertificateInconclusive,
    FinitaryCertificate,
    GeometricCertificate,
    NotRefuted,
    ValuationRefutation,
    build_primary_construction,
    construction_certificate,
    corroborate_refutation,
    divisor_closure_counterexample,
    mcyclic_certificate,
    refute_strongly_primary,
    verify_finitary_certificate,
)
from .rationals import (
    INFINITY,
    format_rational,
    normalize,
    padic_valuation,
    parse_rational,
)

__version__ = "0.1.0"

"""Command-line front end.

One query per invocation.  Results go to stdout (JSON with --json, aligned
text otherwise), diagnostics to stderr.  Exit codes: 0 success, 1 unreadable
or malformed input, 2 domain errors, 3 honest Unknown verdicts (so scripts
can distinguish "no" from "raise the depth and retry").
"""

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import blocks, homs, primary
from .errors import DomainError, ScanCapError
from .factorizations import elasticity, factorizations, length_set
from .monoids import (
    FiniteGen,
    as_puiseux,
    atoms_up_to,
    classify,
    member,
    spec_from_json,
    spec_to_json,
    truncate,
)
from .numerical import from_generators
from .rationals import format_rational, parse_rational

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DOMAIN = 2
EXIT_UNKNOWN = 3


class SpecInputError(Exception):
    """Unreadable spec file or malformed JSON (exit 1)."""


def _load_json(text: str):
    text = text.strip()
    if not (text.startswith("{") or text.startswith("[")):
        try:
            text = Path(text).read_text()
        except OSError as exc:
            raise SpecInputError(f"cannot read spec file: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecInputError(
            f"malformed JSON at position {exc.pos} "
            f"(line {exc.lineno}, column {exc.colno}): {exc.msg}"
        ) from None


def _spec(args) -> object:
    return spec_from_json(_load_json(args.spec))


def _puiseux_spec(args):
    return as_puiseux(_spec(args))


def _numerical(args):
    obj = _load_json(args.spec)
    if not isinstance(obj, dict) or obj.get("kind") not in ("numerical", "finite"):
        raise DomainError("this command expects a numerical monoid spec")
    gens = []
    for g in obj.get("generators", []):
        if isinstance(g, str):
            q = parse_rational(g)
        elif isinstance(g, int):
            q = Fraction(g)
        else:
            raise DomainError(f"generator {g!r} must be an integer or a string")
        if q.denominator != 1:
            raise DomainError(f"generator {format_rational(q)} is not an integer")
        gens.append(q.numerator)
    return from_generators(gens)


def _rationals(text: str) -> list[Fraction]:
    return [parse_rational(part.strip()) for part in text.split(",") if part.strip()]


def _finite_window(args):
    """Finite spec for factorization queries; families need --truncate."""
    spec = _puiseux_spec(args)
    if isinstance(spec, FiniteGen):
        return spec, None
    if args.truncate is None:
        raise DomainError(
            "factorizations over an infinite family depend on the window; "
            "pass --truncate DEPTH to make the approximation explicit"
        )
    return truncate(spec, args.truncate), args.truncate


def _group(args) -> blocks.FiniteAbelianGroup:
    obj = _load_json(args.group)
    if not isinstance(obj, dict) or "orders" not in obj:
        raise DomainError('a group spec looks like {"orders": [2, 2]}')
    return blocks.FiniteAbelianGroup(tuple(obj["orders"]))


def _g0(args, group):
    if getattr(args, "g0", None) is None:
        return None
    return [group.element(e) for e in _load_json(args.g0)]


# ---------------------------------------------------------------------------
# Handlers: each returns (exit_code, payload)


def cmd_member(args):
    spec = _puiseux_spec(args)
    ans = member(spec, parse_rational(args.x), args.depth)
    payload = ans.to_json()
    payload["depth"] = args.depth
    return (EXIT_UNKNOWN if ans.is_unknown else EXIT_OK), payload


def cmd_atoms(args):
    spec = _puiseux_spec(args)
    atoms = atoms_up_to(spec, args.depth)
    return EXIT_OK, {
        "atoms": [format_rational(a) for a in atoms],
        "depth": args.depth,
    }


def cmd_factor(args):
    spec, depth = _finite_window(args)
    facts = factorizations(spec, parse_rational(args.x))
    payload = {"factorizations": [f.to_json() for f in facts], "count": len(facts)}
    if depth is not None:
        payload["truncatedTo"] = depth
    return EXIT_OK, payload


def cmd_lengths(args):
    spec, depth = _finite_window(args)
    payload = {"lengths": length_set(spec, parse_rational(args.x))}
    if depth is not None:
        payload["truncatedTo"] = depth
    return EXIT_OK, payload


def cmd_elasticity(args):
    spec, depth = _finite_window(args)
    value = elasticity(spec, parse_rational(args.x))
    payload = {"elasticity": format_rational(value)}
    if depth is not None:
        payload["truncatedTo"] = depth
    return EXIT_OK, payload


def cmd_frobenius(args):
    monoid, scale = _numerical(args)
    payload = {"frobenius": monoid.frobenius()}
    if scale != 1:
        payload["scale"] = scale
        payload["generators"] = list(monoid.min_gens)
    return EXIT_OK, payload


def cmd_apery(args):
    monoid, scale = _numerical(args)
    payload = {"m": args.m, "apery": monoid.apery(args.m)}
    if scale != 1:
        payload["scale"] = scale
        payload["generators"] = list(monoid.min_gens)
    return EXIT_OK, payload


def cmd_classify(args):
    spec = _puiseux_spec(args)
    return EXIT_OK, classify(spec).to_json()


def cmd_certify_primary(args):
    spec = _puiseux_spec(args)
    result = primary.verify_finitary_certificate(
        spec, args.n, _rationals(args.s), parse_rational(args.bound), args.depth
    )
    code = EXIT_UNKNOWN if result.kind == "inconclusive" else EXIT_OK
    return code, result.to_json()


def cmd_refute_primary(args):
    spec = _puiseux_spec(args)
    result = primary.refute_strongly_primary(spec, args.n, _rationals(args.s))
    payload = result.to_json()
    if isinstance(result, primary.ValuationRefutation):
        payload["corroborated"] = primary.corroborate_refutation(spec, result)
    return EXIT_OK, payload


def cmd_build_construction(args):
    levels = [
        [int(g) for g in part.split(",") if g.strip()]
        for part in args.sn.split(";")
        if part.strip()
    ]
    spec, rows = primary.build_primary_construction(
        args.p, args.q, args.f, levels, args.depth
    )
    return EXIT_OK, {
        "spec": spec_to_json(spec),
        "inequality": [
            {"n": n, "lhs": format_rational(lhs), "rhs": format_rational(rhs)}
            for n, lhs, rhs in rows
        ],
    }


def cmd_hom_check(args):
    domain = as_puiseux(spec_from_json(_load_json(args.domain)))
    codomain = as_puiseux(spec_from_json(_load_json(args.codomain)))
    res = homs.check_hom(parse_rational(args.q), domain, codomain, args.depth)
    payload = res.to_json()
    payload["domain"] = spec_to_json(domain)
    payload["codomain"] = spec_to_json(codomain)
    return (EXIT_UNKNOWN if res.status == "unknown" else EXIT_OK), payload


def cmd_transfer_check(args):
    domain = as_puiseux(spec_from_json(_load_json(args.domain)))
    codomain = as_puiseux(spec_from_json(_load_json(args.codomain)))
    res = homs.is_transfer(parse_rational(args.q), domain, codomain, args.depth)
    payload = res.to_json()
    payload["domain"] = spec_to_json(domain)
    payload["codomain"] = spec_to_json(codomain)
    return (EXIT_UNKNOWN if res.verdict == "unknown" else EXIT_OK), payload


def cmd_transfer_verify(args):
    domain = as_puiseux(spec_from_json(_load_json(args.domain)))
    codomain = as_puiseux(spec_from_json(_load_json(args.codomain)))
    checks = homs.verify_transfer_properties(
        parse_rational(args.q), domain, codomain, _rationals(args.samples)
    )
    return EXIT_OK, {
        "q": args.q,
        "checks": [c.to_json() for c in checks],
        "allOk": all(c.ok for c in checks),
    }


def cmd_aut_search(args):
    spec = _puiseux_spec(args)
    result = homs.automorphism_search(spec, args.window)
    return EXIT_OK, result.to_json()


def cmd_block_atoms(args):
    group = _group(args)
    atoms = blocks.block_atoms(group, _g0(args, group))
    return EXIT_OK, {
        "group": group.to_json(),
        "atoms": [a.to_json() for a in atoms],
        "count": len(atoms),
    }


def cmd_block_factor(args):
    group = _group(args)
    g0 = _g0(args, group)
    seq = blocks.sequence_from_json(group, _load_json(args.x))
    decs = blocks.block_factorizations(group, g0, seq)
    return EXIT_OK, {
        "group": group.to_json(),
        "factorizations": [
            [{"atom": atom.to_json(), "count": count} for atom, count in dec]
            for dec in decs
        ],
        "lengths": blocks.block_length_set(group, g0, seq),
    }


def cmd_davenport(args):
    group = _group(args)
    return EXIT_OK, {"group": group.to_json(), "davenport": blocks.davenport(group)}


def cmd_gcd_lemma(args):
    terms = [int(part) for part in args.terms.split(",") if part.strip()]
    m = blocks.gcd_stabilization(terms, cap=args.cap)
    return EXIT_OK, {"m": m, "stabilizingTerm": terms[m]}


def cmd_report(args):
    from .report import write_report  # matplotlib import stays off the hot path

    spec = _puiseux_spec(args)
    result = write_report(spec, parse_rational(args.bound), args.depth, args.out)
    result["bound"] = args.bound
    result["depth"] = args.depth
    return EXIT_OK, result


# ---------------------------------------------------------------------------
# Parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="puiseux",
        description="Exact computations in Puiseux, numerical, and block monoids.",
    )
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--json", action="store_true", help="emit JSON instead of text")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, parents=[shared], **kwargs)
        p.set_defaults(handler=handler)
        return p

    def spec_arg(p, name="--spec"):
        p.add_argument(name, required=True, help="inline JSON or a path to a spec file")

    def depth_arg(p, default=8):
        p.add_argument("--depth", type=int, default=default, help=f"family window (default {default})")

    p = add("member", cmd_member, help="decide membership of a rational")
    spec_arg(p)
    p.add_argument("--x", required=True)
    depth_arg(p)

    p = add("atoms", cmd_atoms, help="atom window of the monoid")
    spec_arg(p)
    depth_arg(p)

    for name, handler, extra in (
        ("factor", cmd_factor, "--x"),
        ("lengths", cmd_lengths, "--x"),
        ("elasticity", cmd_elasticity, "--x"),
    ):
        p = add(name, handler, help=f"{name} of an element over a finite window")
        spec_arg(p)
        p.add_argument(extra, required=True)
        p.add_argument("--truncate", type=int, default=None, help="window for families")

    p = add("frobenius", cmd_frobenius, help="largest gap of a numerical monoid")
    spec_arg(p)

    p = add("apery", cmd_apery, help="least monoid element per residue class")
    spec_arg(p)
    p.add_argument("--m", type=int, required=True)

    p = add("classify", cmd_classify, help="structural classification flags")
    spec_arg(p)

    p = add("certify-primary", cmd_certify_primary, help="scoped finitary certificate sweep")
    spec_arg(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", required=True, help="comma-separated members, e.g. '5' or '3,5/2'")
    p.add_argument("--bound", default="100", help="sweep bound (default 100)")
    depth_arg(p)

    p = add("refute-primary", cmd_refute_primary, help="valuation refutation of a pair (n, S)")
    spec_arg(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", required=True)

    p = add("build-construction", cmd_build_construction, help="validate the layered construction")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--f", required=True, help="exponent formula, e.g. 'n^2'")
    p.add_argument("--sn", required=True, help="levels as 'a,b;c,d' generator lists")
    depth_arg(p, default=4)

    p = add("hom-check", cmd_hom_check, help="is multiplication by q a homomorphism?")
    p.add_argument("--q", required=True)
    p.add_argument("--domain", required=True)
    p.add_argument("--codomain", required=True)
    depth_arg(p)

    p = add("transfer-check", cmd_transfer_check, help="is the hom surjective (= transfer)?")
    p.add_argument("--q", required=True)
    p.add_argument("--domain", required=True)
    p.add_argument("--codomain", required=True)
    depth_arg(p)

    p = add("transfer-verify", cmd_transfer_verify, help="check length sets across a transfer")
    p.add_argument("--q", required=True)
    p.add_argument("--domain", required=True)
    p.add_argument("--codomain", required=True)
    p.add_argument("--samples", required=True, help="comma-separated members")

    p = add("aut-search", cmd_aut_search, help="automorphism window of a two-sided geometric monoid")
    spec_arg(p)
    p.add_argument("--window", type=int, required=True)

    p = add("block-atoms", cmd_block_atoms, help="minimal zero-sum sequences")
    p.add_argument("--group", required=True, help='e.g. {"orders":[3]}')
    p.add_argument("--g0", default=None, help="JSON list of allowed elements")

    p = add("block-factor", cmd_block_factor, help="decompositions of a block into atoms")
    p.add_argument("--group", required=True)
    p.add_argument("--g0", default=None)
    p.add_argument("--x", required=True, help="JSON sequence, e.g. [1,1,1]")

    p = add("davenport", cmd_davenport, help="Davenport constant by exhaustive search")
    p.add_argument("--group", required=True)

    p = add("gcd-lemma", cmd_gcd_lemma, help="least m with term m+1 in the monoid of the prefix")
    p.add_argument("--terms", required=True, help="comma-separated positive integers")
    p.add_argument("--cap", type=int, default=100)

    p = add("report", cmd_report, help="CSV profile plus rendered figures for a window")
    spec_arg(p)
    p.add_argument("--bound", default="100")
    depth_arg(p)
    p.add_argument("--out", required=True, help="output directory")

    return parser


def _scalar(value) -> str:
    if isinstance(value, str):
        return value
    return json.dumps(value)


def _text_lines(payload: dict, prefix: str = "") -> list[str]:
    lines = []
    for key, value in payload.items():
        label = f"{prefix}{key}"
        if isinstance(value, dict):
            lines.extend(_text_lines(value, prefix=f"{label}."))
        else:
            lines.append(f"{label}: {_scalar(value)}")
    return lines


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        code, payload = args.handler(args)
    except SpecInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ScanCapError as exc:
        print(f"unknown: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in _text_lines(payload):
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())

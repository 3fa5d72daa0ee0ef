"""Length-profile reports: delimited data plus rendered figures.

Sweeps the elements of a finite monoid window up to a bound, tabulating the
number of factorizations, the length-set extremes, and the elasticity of
each element.  The table lands in a CSV file; two PNG figures (length
spread and elasticity) are rendered next to it.
"""

import csv
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .errors import DomainError
from .factorizations import elements_up_to, enumerate_factorizations, minimal_generators
from .monoids import FiniteGen, PuiseuxSpec, truncate
from .rationals import format_rational


@dataclass(frozen=True)
class ProfileRow:
    x: Fraction
    factorization_count: int
    min_length: int
    max_length: int
    elasticity: Fraction


def length_profile(spec: PuiseuxSpec, bound, depth: int = 8) -> list[ProfileRow]:
    """Per-element factorization statistics for members up to the bound."""
    bound = Fraction(bound)
    if bound <= 0:
        raise DomainError("bound must be positive")
    finite = spec if isinstance(spec, FiniteGen) else truncate(spec, depth)
    atoms = minimal_generators(finite.gens)
    rows = []
    for x in elements_up_to(atoms, bound):
        facts = enumerate_factorizations(atoms, x)
        lengths = sorted({f.length for f in facts})
        rows.append(
            ProfileRow(
                x=x,
                factorization_count=len(facts),
                min_length=lengths[0],
                max_length=lengths[-1],
                elasticity=Fraction(lengths[-1], lengths[0]),
            )
        )
    return rows


def write_report(spec: PuiseuxSpec, bound, depth: int, outdir) -> dict:
    """Write profile.csv plus lengths.png and elasticity.png under outdir."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = length_profile(spec, bound, depth)

    csv_path = outdir / "profile.csv"
    with open(csv_path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["x", "factorizations", "min_length", "max_length", "elasticity"])
        for row in rows:
            writer.writerow(
                [
                    format_rational(row.x),
                    row.factorization_count,
                    row.min_length,
                    row.max_length,
                    format_rational(row.elasticity),
                ]
            )

    xs = [float(r.x) for r in rows]

    lengths_path = outdir / "lengths.png"
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.fill_between(
        xs,
        [r.min_length for r in rows],
        [r.max_length for r in rows],
        alpha=0.25,
        step="mid",
        label="length spread",
    )
    ax.plot(xs, [r.min_length for r in rows], ".-", lw=0.8, ms=3, label="min |z|")
    ax.plot(xs, [r.max_length for r in rows], ".-", lw=0.8, ms=3, label="max |z|")
    ax.set_xlabel("element")
    ax.set_ylabel("factorization length")
    ax.legend(loc="upper left", frameon=False)
    fig.tight_layout()
    fig.savefig(lengths_path, dpi=150)
    plt.close(fig)

    elasticity_path = outdir / "elasticity.png"
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(xs, [float(r.elasticity) for r in rows], ".-", lw=0.8, ms=3)
    ax.axhline(1.0, color="0.6", lw=0.8, ls="--")
    ax.set_xlabel("element")
    ax.set_ylabel("elasticity")
    fig.tight_layout()
    fig.savefig(elasticity_path, dpi=150)
    plt.close(fig)

    return {
        "rows": len(rows),
        "csv": str(csv_path),
        "figures": [str(lengths_path), str(elasticity_path)],
    }

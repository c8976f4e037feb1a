"""Corrupt single compositor entries and tally how each corruption is caught."""

import argparse
from collections import Counter, defaultdict

from modcat.algebra import validate_algebra
from modcat.corpus import mutation_suite
from modcat.errors import ModulationError, NonAssociativeAlgebra
from modcat.linalg import Field
from modcat.mcalgebra import build_algebra
from modcat.modulation import validate


def classify(mutant) -> str:
    try:
        validate(mutant)
    except ModulationError as e:
        return type(e).__name__
    try:
        validate_algebra(build_algebra(mutant, check=False).carrier)
    except NonAssociativeAlgebra:
        return "NonAssociativeAlgebra"
    return "undetected"


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--field", default="q")
    args = p.parse_args()
    by_source: dict[str, Counter] = defaultdict(Counter)
    for mu in mutation_suite(Field.from_spec(args.field)):
        by_source[mu.source][classify(mu.mutant)] += 1
    total = Counter()
    for source, counts in sorted(by_source.items()):
        total.update(counts)
        print(f"{source:12s} " + ", ".join(f"{k}={v}" for k, v in sorted(counts.items())))
    print(f"{'total':12s} " + ", ".join(f"{k}={v}" for k, v in sorted(total.items())))
    if total["undetected"]:
        raise SystemExit(1)


if __name__ == "__main__":
    main()

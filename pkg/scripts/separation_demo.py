"""Print the finite-type vs finite-generation separation on x ⇉ y as JSON."""

import argparse
import json

from modcat.finiteness import separation_demo
from modcat.linalg import Field


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--field", default="q", help="q or fp:<p>")
    args = p.parse_args()
    print(json.dumps(separation_demo(Field.from_spec(args.field)), indent=2, ensure_ascii=False))


if __name__ == "__main__":
    main()

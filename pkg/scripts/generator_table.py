#!/usr/bin/env python3
"""Print the polynomial generators of the mod-p quotient up to a weight.

Each row shows the index, the variety carrying the generator, the diagonal
single-part coefficient, and the full class.  Handy for eyeballing how the
Milnor rows fill in the indices where P^i fails the criterion.
"""

import argparse
import json

from cobordlab.chow import atom_class
from cobordlab.cobordism import generator_atom, perturbed_family, standard_generators
from cobordlab.fpring import format_bpoly
from cobordlab.partitions import in_np


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-p", "--prime", type=int, required=True)
    ap.add_argument("-w", "--max-weight", type=int, default=12)
    ap.add_argument("--perturbed", type=int, default=None, metavar="SEED",
                    help="show the perturbed family instead of the standard one")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    p = args.prime
    if args.perturbed is not None:
        fam = perturbed_family(p, args.perturbed, max_index=args.max_weight)
    else:
        fam = standard_generators(p, max_index=args.max_weight)

    rows = []
    for i in range(1, args.max_weight + 1):
        if not in_np(i, p):
            rows.append({"index": i, "skipped": f"{i + 1} is a power of {p}"})
            continue
        atom = generator_atom(i, p)
        rows.append({
            "index": i,
            "variety": str(atom),
            "diagonal": fam.diagonal(i),
            "class": fam.generator(i).to_json_dict(),
            "standardClass": atom_class(atom, p) == fam.generator(i),
        })

    if args.json:
        print(json.dumps({"p": p, "rows": rows}, sort_keys=True, indent=2))
        return
    for row in rows:
        if "skipped" in row:
            print(f"i={row['index']:>3}  --  ({row['skipped']})")
        else:
            cls = format_bpoly(fam.generator(row["index"]))
            tag = "" if row["standardClass"] else "  [perturbed]"
            print(f"i={row['index']:>3}  {row['variety']:<9} diag={row['diagonal']}{tag}  {cls}")


if __name__ == "__main__":
    main()

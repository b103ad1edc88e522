"""Regenerate src/knotshadows/data/knot_table.txt from a KnotInfo CSV export.

Usage: python3 tools/make_knot_table.py knotinfo_data_complete.csv [max_crossings]

Each output line holds a knot name, its symmetry class, an oriented PD code in
the KnotTheory X[i,j,k,l] convention and the HOMFLY polynomial converted to the
(a, z) variables used by the package (a = 1/v relative to KnotInfo).
"""
import csv
import sys

import sympy

SYMMETRY = {
    "reversible": "reversible",
    "fully amphicheiral": "full",
    "chiral": "none",
    "negative amphicheiral": "amphichiral",
    "positive amphicheiral": "mirror",
}


def convert_homfly(text):
    v, z, a = sympy.symbols("v z a")
    expr = sympy.sympify(text.replace("^", "**"), locals={"v": v, "z": z})
    expr = sympy.expand(expr.subs(v, 1 / a))
    terms = []
    for (ea, ez), c in sympy.Poly(expr * a**64, a, z).terms():
        terms.append((ea - 64, ez, int(c)))
    terms.sort()
    return " ".join(f"{c:+d}*a^{ea}*z^{ez}" for ea, ez, c in terms)


def main(path, max_crossings=8):
    csv.field_size_limit(10**9)
    with open(path, newline="") as fh:
        reader = csv.reader(fh, delimiter="|")
        header = next(reader)
        col = {k: i for i, k in enumerate(header)}
        next(reader)
        out = []
        for row in reader:
            cn = row[col["crossing_number"]]
            if not cn.isdigit() or not 3 <= int(cn) <= max_crossings:
                continue
            pd = row[col["pd_notation"]].strip()
            quads = [q.strip("[] ") for q in pd[1:-1].split("],")]
            xs = " ".join("X[" + q.replace(" ", "") + "]" for q in quads)
            out.append(
                f"{row[col['name']]} | {SYMMETRY[row[col['symmetry_type']]]} | {xs} | "
                f"{convert_homfly(row[col['homfly_polynomial']])}"
            )
    print("# name | symmetry | oriented PD code | HOMFLY (a, z)")
    print("\n".join(out))


if __name__ == "__main__":
    main(sys.argv[1], int(sys.argv[2]) if len(sys.argv) > 2 else 8)

#!/usr/bin/env python3
"""Add the non-rational Galois orbits at levels 1, 6 and 8 to the fixture file and
cross-check the rational records against an independent PARI/GP computation.

Orbits are ordered as in LMFDB labels: by dimension, then by the trace form. The Hecke
field is presented by a polredabs-reduced polynomial and a_p is given in its power basis.

Usage: python3 tools/pari_orbits.py crates/cli/fixtures/newforms.json
(rewrites the file in place; requires cypari2)
"""

import json
import string
import sys

import cypari2

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9)

KEEP = [5, 7, 11, 13]
LEVELS = [(1, range(12, 28, 2)), (6, range(4, 22, 2)), (8, range(4, 22, 2))]
PROVENANCE = "computed: PARI/GP mfsplit eigenforms, field polredabs-reduced"


def orbits(level, k):
    mf = pari.mfinit([level, k, 1], 0)
    pols = pari.mfsplit(mf, 0, 1)[1]
    eig = pari.mfeigenbasis(mf)
    out = []
    for i in range(len(pols)):
        pol = pols[i]
        coefs = pari.mfcoefs(eig[i], max(KEEP) + 1)
        deg = int(pari.poldegree(pol))
        if deg > 1:
            trace = [int(pari.trace(pari.Mod(pari.lift(c), pol))) for c in coefs]
        else:
            trace = [int(c) for c in coefs]
        out.append((deg, trace[1:], pol, coefs))
    out.sort(key=lambda r: (r[0], r[1]))
    return out


def power_basis(c, pol, red):
    """Coordinates of c (a polynomial in y mod pol) in the basis of a root of red[0]."""
    q, a = red[0], red[1]
    v = pari.lift(pari.subst(pari.lift(c), "y", pari.lift(a)))
    v = pari.lift(pari.Mod(pari.subst(v, "y", "x"), pari.subst(q, "y", "x")))
    deg = int(pari.poldegree(q))
    return [str(pari.polcoef(v, j, "x")) for j in range(deg)]


def main():
    path = sys.argv[1]
    with open(path) as fh:
        data = json.load(fh)
    by_label = {r["label"]: r for r in data["records"]}
    added = []
    for level, weights in LEVELS:
        for k in weights:
            for j, (deg, trace, pol, coefs) in enumerate(orbits(level, k)):
                label = f"{level}.{k}.a.{string.ascii_lowercase[j]}"
                if deg == 1:
                    rec = by_label.get(label)
                    if rec is None:
                        sys.exit(f"rational orbit {label} missing from {path}")
                    for p, v in rec["hecke_data"].items():
                        assert int(v["coords"][0]) == int(coefs[int(p)]), (label, p)
                    continue
                red = pari.polredabs(pari.subst(pol, "y", "y"), 1)
                q = red[0]
                field = [int(pari.polcoef(q, j2, "y")) for j2 in range(deg + 1)]
                ap = {str(p): {"coords": power_basis(coefs[p], pol, red)} for p in KEEP if level % p}
                rec = {
                    "schema_version": 1,
                    "label": label,
                    "level": level,
                    "weight": k,
                    "char_order": 1,
                    "is_cm": False,
                    "field_poly": field,
                    "hecke_data": ap,
                    "provenance": PROVENANCE,
                    "trace_head": [str(t) for t in trace[:7]],
                }
                if label in by_label:
                    old = by_label[label]
                    assert old["field_poly"] == field or len(old["field_poly"]) == len(field), label
                    continue
                added.append(rec)
                sys.stderr.write(f"added {label} (degree {deg})\n")
    data["records"].extend(added)
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main()

"""Classify every ordered pair of a catalog and write the table.

    python3 scripts/sweep_catalog.py --catalog catalogs/acceptance.json --n 2 3 4 --out sweep.txt
"""

import argparse
from pathlib import Path

from njordan.catalog import load_catalog
from njordan.search import render_classification_text, run_classification


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--catalog", type=Path)
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--enum-budget", type=int, default=10**6)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()

    catalog = load_catalog(args.catalog)
    rows = run_classification(catalog, None, args.n, enum_budget=args.enum_budget, jobs=args.jobs)
    text = render_classification_text(rows)
    if args.out:
        args.out.write_text(text)
    else:
        print(text, end="")

    # pairs where n-Jordan maps outnumber both hom kinds are the interesting ones
    gaps = [r for r in rows if r.status == "ok" and r.n_jordan > max(r.n_hom, r.anti_n_hom)]
    print(f"\n{len(rows)} rows, {len(gaps)} with n-Jordan maps beyond (anti-)homs")
    for r in gaps:
        print(f"  {r.domain} -> {r.codomain} n={r.n}: {r.n_jordan} vs {r.n_hom}/{r.anti_n_hom}")


if __name__ == "__main__":
    main()

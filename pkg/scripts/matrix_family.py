"""Structured maps on M_k(Z_m): identity, transpose, conjugations and their
composites, classified for n = 2..4 without enumerating all additive maps."""

import argparse

import numpy as np

from njordan.jordan import classify
from njordan.maps import identity_map, map_from_values, transpose_map, zero_map
from njordan.rings import matrix_elements, matrix_ring


def conjugation(R, m, k, u):
    mats = matrix_elements(m, k)
    # inverse by search; fine at desk scale
    inv = next(v for v in mats if ((u @ v) % m == np.eye(k, dtype=np.int64)).all())
    weights = m ** np.arange(k * k - 1, -1, -1)
    conj = (u @ mats @ inv) % m
    return map_from_values(R, R, conj.reshape(-1, k * k) @ weights)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--modulus", type=int, default=3)
    ap.add_argument("--dim", type=int, default=2)
    args = ap.parse_args()
    m, k = args.modulus, args.dim

    R = matrix_ring(m, k)
    t = transpose_map(R, m, k)
    u = np.eye(k, dtype=np.int64)
    u[0, -1] = 1
    c = conjugation(R, m, k, u)
    family = {
        "zero": zero_map(R, R),
        "identity": identity_map(R),
        "transpose": t,
        "conj(u)": c,
        "conj(u)*transpose": map_from_values(R, R, c.values[t.values]),
    }
    print(f"{'map':<20} n  jordan  n-jordan  n-hom  anti-n-hom")
    for name, h in family.items():
        for n in (2, 3, 4):
            r = classify(h, n)
            print(f"{name:<20} {n}  {r.is_jordan!s:<7} {r.is_n_jordan!s:<9} {r.is_n_hom!s:<6} {r.is_anti_n_hom}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Sweep the derived constants over a range of divisor powers and print
a plot-ready CSV: the Euler products, the aggregate derivative constant,
and the mean/variance prefactors under both alternating-sum conventions.

Example:
    python scripts/constants_table.py --r-max 6 --prime-cutoff 1000000
"""

import argparse

from divpart import dirichlet as dl


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r-min", type=int, default=2)
    ap.add_argument("--r-max", type=int, default=6)
    ap.add_argument("--prime-cutoff", type=int, default=dl.DEFAULT_PRIME_CUTOFF)
    args = ap.parse_args()

    print("r,C,Cprime,K1,E1,N,C_mu_standard,C_mu_shifted,C_sigma_standard,C_sigma_shifted")
    for r in range(args.r_min, args.r_max + 1):
        c = dl.constant_C(r, cutoff=args.prime_cutoff).value
        e1, cp = dl.E_r_and_Cprime(1.0, r, cutoff=args.prime_cutoff)
        k1 = dl.euler_K(1.0, r, cutoff=args.prime_cutoff).value
        gc = dl.growth_constants(r, cutoff=args.prime_cutoff)
        print(
            f"{r},{c:.12g},{cp.value:.12g},{k1:.12g},{e1.value:.12g},"
            f"{gc.N:.12g},{gc.C_mu['standard']:.12g},{gc.C_mu['shifted-zeta']:.12g},"
            f"{gc.C_sigma['standard']:.12g},{gc.C_sigma['shifted-zeta']:.12g}"
        )


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Scan the far-arc suppression of the weighted product: log of
|Q(e^(-tau - i theta), u)| / Q(e^(-tau), u) over a (tau, theta) grid,
plot-ready CSV.  The log collapses like -c tau^(-r/7) at theta = pi.

Example:
    python scripts/minor_arc_scan.py --r 2 --u 1.0
"""

import argparse
import math

from divpart import saddle


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r", type=int, default=2)
    ap.add_argument("--u", type=float, default=1.0)
    ap.add_argument("--tau", type=lambda s: [float(t) for t in s.split(",")],
                    default=[0.2, 0.1, 0.05, 0.02])
    ap.add_argument("--theta-steps", type=int, default=8)
    args = ap.parse_args()

    print("tau,theta,log_ratio,scaled_by_tau_pow")
    for tau in args.tau:
        theta_lo = tau ** (1.0 + 3.0 * args.r / 7.0)
        for i in range(1, args.theta_steps + 1):
            theta = theta_lo + (math.pi - theta_lo) * i / args.theta_steps
            log_ratio = saddle.minor_arc_log_ratio(tau, theta, args.u, args.r)
            scaled = log_ratio * tau ** (args.r / 7.0)
            print(f"{tau},{theta:.6f},{log_ratio:.6e},{scaled:.6e}")


if __name__ == "__main__":
    main()

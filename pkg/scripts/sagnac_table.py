"""Tabulate rim transit times, proper times and global light speeds against ωR."""

import argparse

import numpy as np

from framelab.experiments import rim_circle, sagnac_analytic, sagnac_numeric


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--speeds", type=float, nargs="+", default=[1e-4, 0.01, 0.1, 0.3, 0.5, 0.7, 0.89])
    args = p.parse_args()
    print(f"{'wR':>8} {'T_co':>14} {'T_counter':>14} {'dtau':>14} {'4wS':>14} "
          f"{'c_co':>10} {'c_counter':>10} {'|num-ana|':>10}")
    for wr in args.speeds:
        omega = wr / args.radius
        s = sagnac_analytic(omega, args.radius)
        g, loop = rim_circle(omega, args.radius)
        dev = max(abs(sagnac_numeric(g, loop, "co") - s.T_co),
                  abs(sagnac_numeric(g, loop, "counter") - s.T_counter))
        four_ws = 4 * omega * np.pi * args.radius**2
        print(f"{wr:8.4g} {s.T_co:14.9f} {s.T_counter:14.9f} {s.delta_tau:14.9g} {four_ws:14.9g} "
              f"{s.c_co:10.6f} {s.c_counter:10.6f} {dev:10.2e}")


if __name__ == "__main__":
    main()

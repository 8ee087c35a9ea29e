"""Classify every frame in the scenario library and print its kinematic summary."""

import argparse

from framelab.frames import classify, kinematic_decomposition
from framelab.scenarios import SCENARIOS, build_scenario


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--omega", type=float, default=0.5)
    p.add_argument("--boost", type=float, default=0.6)
    p.add_argument("--grid", type=int, default=6)
    args = p.parse_args()
    print(f"{'frame':<11} {'inertial':>8} {'rotating':>8} {'loc.sync':>8} {'pt.sync':>8} "
          f"{'max|ω|':>10} {'max|α∧dα|':>10} {'max|Θ|':>10} {'residual':>10}")
    for name in SCENARIOS:
        s = build_scenario(name, omega=args.omega, boost=args.boost, n=args.grid)
        rep = classify(s.metric, s.frame, s.grid)
        k = kinematic_decomposition(s.metric, s.frame, s.grid.points())
        res = max(k.reconstruction_error(), k.projection_identity_error())
        print(f"{name:<11} {rep.inertial!s:>8} {rep.rotating!s:>8} "
              f"{rep.locally_synchronizable!s:>8} {rep.locally_proper_time_synchronizable!s:>8} "
              f"{rep.max_rotation:10.3e} {rep.max_frobenius:10.3e} "
              f"{abs(k.expansion).max():10.3e} {res:10.2e}")


if __name__ == "__main__":
    main()

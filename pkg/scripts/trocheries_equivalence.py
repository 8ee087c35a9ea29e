"""Deviation of the Lorentz-like rotating frame from rigid rotation over an (r, ω) grid.

Compares the radius-dependent equivalence profile with constant profiles.
"""

import argparse

import numpy as np

from framelab.scenarios import (constant_profile_deviation, physicality_constraint,
                                verify_Pbar_equals_P)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=20, help="grid points per axis")
    args = p.parse_args()
    grid = np.linspace(0.05, 0.95, args.n)
    rep = verify_Pbar_equals_P(grid, grid)
    print(f"equivalence profile: max deviation {rep.max_deviation:.3e} "
          f"(sense {rep.sense}; other sense {rep.max_deviation_other_sense:.3f})")
    print(f"constant profile Ω = -ω: max deviation {constant_profile_deviation(grid, grid):.3e}")
    print("\nper-ω deviation with a constant profile:")
    for w in grid[::max(1, args.n // 5)]:
        print(f"  ω = {w:.3f}: {constant_profile_deviation([w], grid):.3e}")
    phys = physicality_constraint(np.arcsinh(1.0), 1.0)
    print(f"\nrim condition sinh(ΩR) = 1 at R = 1: Ω = {phys.omega_for_constraint:.6f}, "
          f"rim speed tanh(ΩR) = {phys.rim_speed_under_constraint:.6f}")


if __name__ == "__main__":
    main()

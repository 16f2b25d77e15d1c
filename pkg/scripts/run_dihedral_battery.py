"""Sweep the dihedral family and print an invariant-theory digest per group.

Usage:
    python scripts/run_dihedral_battery.py --start 3 --stop 8 --seed 0
"""

import argparse
import random
import time

from refleig.eigenspace import random_generic_weight
from refleig.groups import builtin
from refleig.harmonics import compute_harmonics, find_fundamental_invariants
from refleig.report import PipelineConfig, eigenspace_section


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--start", type=int, default=3)
    parser.add_argument("--stop", type=int, default=8)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    for n in range(args.start, args.stop + 1):
        t0 = time.perf_counter()
        group = builtin(f"dihedral:{n}")
        invariants = find_fundamental_invariants(group)
        harmonics = compute_harmonics(group, invariants)
        w = random_generic_weight(group, rng)
        section = eigenspace_section(
            group, invariants, harmonics, w, PipelineConfig(), rng
        )
        elapsed = time.perf_counter() - t0
        profile = ",".join(
            str(len(basis)) for _, basis in harmonics.basis_by_degree
        )
        print(
            f"dihedral:{n:<2d} order={group.order:<3d} "
            f"degrees={tuple(invariants.degrees.degrees)} "
            f"harmonic_profile=[{profile}] "
            f"weight={section['weight']} "
            f"rank={section['evaluation_rank']} "
            f"commutant={section['commutant_dim']} "
            f"certified={section['irreducible_certified']} "
            f"({elapsed:.2f}s)"
        )


if __name__ == "__main__":
    main()

"""Compare the identification-vector membership test with brute-force propagation.

For each random system a steady state is obtained by propagating a seed state
to convergence, then several initial states are classified both ways.

    python scripts/oracle_sweep.py --systems 300 --seed 1
"""

import argparse
import time
from collections import Counter

import numpy as np

import lindblad_doa as ld
from lindblad_doa.operators import random_density
from lindblad_doa.sampling import FAMILIES, random_system


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--systems", type=int, default=300)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4])
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    tally = Counter()
    start = time.perf_counter()
    for trial in range(args.systems):
        n = args.dims[trial % len(args.dims)]
        family = FAMILIES[trial % len(FAMILIES)]
        s = random_system(n, family, rng)
        gen = ld.build_generator(s.system)
        sd = ld.full_spectrum(gen)
        cs = ld.peripheral_observables(sd)
        t_long = 40.0 / sd.gap if sd.gap else 40.0
        for seed in s.seeds:
            lim = ld.converged_limit(gen, seed, sd.gap)
            if not lim.converged:
                tally["seed without limit"] += 1
                continue
            for rho0 in (seed, random_density(n, rng), 0.5 * (seed + random_density(n, rng))):
                cert = ld.membership(gen, sd, cs, lim.state, rho0)
                if cert.marginal:
                    tally["marginal"] += 1
                    continue
                oracle = ld.hs_norm(ld.evolve(gen, rho0, t_long) - lim.state) < 1e-4
                tally["agree" if oracle == cert.member else "disagree"] += 1
                tally[f"{family} {'member' if cert.member else 'non-member'}"] += 1

    print(f"{args.systems} systems in {time.perf_counter() - start:.1f} s")
    for key in sorted(tally):
        print(f"  {key}: {tally[key]}")


if __name__ == "__main__":
    main()

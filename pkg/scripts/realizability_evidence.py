"""Look for resonance outside the essential bound on the Fano plane.

The inclusion of the torus part of R^p in Bound^p_ess is only known for
complex-realizable matroids. The Fano plane is not one, so this samples
torus points of its resonance over Q and prints any that escape the
essential bound.
"""

import argparse
import random

from resonator.bounds import bound
from resonator.fields import FieldSpec, Q
from resonator.matroid import from_matrix
from resonator.resonance import cohomology_profile

F2 = FieldSpec.prime(2)
FANO = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1]]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=200)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    m = from_matrix(FANO, F2)
    m.realizable = False
    arrs = {p: bound(m, p, essential=True) for p in range(m.rank() + 1)}
    escapes = resonant = 0
    for _ in range(args.samples):
        v = [rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(m.n - 1)]
        v.append(-sum(v))
        if 0 in v:
            continue
        prof = cohomology_profile(m, Q, v)
        for p in range(m.rank() + 1):
            if prof[p] >= 1:
                resonant += 1
                if not arrs[p].contains_vector(v):
                    escapes += 1
                    print(f"escape at p={p}: v={v} dims={prof.dims}")
    print(f"Fano plane over Q: {resonant} resonant (point, degree) pairs, {escapes} outside Bound_ess")


if __name__ == "__main__":
    main()

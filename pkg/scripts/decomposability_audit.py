"""Compare the rank-2 splitting decision with a bounded orthogonal-basis search.

For definite forms the two always agree; for indefinite forms the bounded
search misses splittings whose witnesses are long, which this script counts.

    python scripts/decomposability_audit.py --samples 2000 --bound 24
"""

import argparse
import random

from mukai.lattice import IntegralLattice, brute_force_split, is_decomposable_rank2


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--bound", type=int, default=24)
    ap.add_argument("--max-det", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    stats = {"definite": [0, 0, 0], "indefinite": [0, 0, 0]}  # samples, agree, missed by search
    examples = []
    done = 0
    while done < args.samples:
        a, b, c = rng.randint(-12, 12), rng.randint(-10, 10), rng.randint(-12, 12)
        det = a * c - b * b
        if not 0 < abs(det) <= args.max_det:
            continue
        done += 1
        kind = "definite" if det > 0 else "indefinite"
        res = is_decomposable_rank2(IntegralLattice(((a, b), (b, c))))
        found = brute_force_split(((a, b), (b, c)), args.bound)
        st = stats[kind]
        st[0] += 1
        if bool(res) == (found is not None):
            st[1] += 1
        elif res and found is None:
            st[2] += 1
            if len(examples) < 5:
                examples.append(((a, b, c), res.witness, res.diagonal))
        else:
            raise AssertionError(f"search found a splitting the decision missed: {(a, b, c)}")
    for kind, (n, agree, missed) in stats.items():
        print(f"{kind:10}: {n} forms, {agree} agree, {missed} splittings beyond the search box")
    for g, w, dg in examples:
        print(f"  form {g}: orthogonal basis {w} with squares {dg}")


if __name__ == "__main__":
    main()

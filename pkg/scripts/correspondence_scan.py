"""Scan (r, d, n, a) with <v^2> = 4 and summarise the Kummer K3 vectors.

    python scripts/correspondence_scan.py --r-max 10 --n-max 40 --a-max 40
"""

import argparse
from collections import Counter
from math import gcd, isqrt

from mukai.correspondence import HypothesisError, PolarizedVector, kummer_k3_vector, nonrigid_locus
from mukai.selftest import correspondence_scan


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--r-max", type=int, default=10)
    ap.add_argument("--n-max", type=int, default=40)
    ap.add_argument("--a-max", type=int, default=40)
    ap.add_argument("--show", type=int, default=12, help="print this many example rows")
    args = ap.parse_args()

    count, failures = correspondence_scan(args.r_max, args.n_max, args.a_max)
    print(f"valid vectors: {count}, failures: {len(failures)}")
    tags, shown = Counter(), 0
    for r in range(1, args.r_max + 1):
        for n in range(1, args.n_max + 1):
            for a in range(-args.a_max, args.a_max + 1):
                num = 2 + r * a
                if num < 0 or num % n or isqrt(num // n) ** 2 != num // n:
                    continue
                d = isqrt(num // n)
                if gcd(r, d) != 1:
                    continue
                try:
                    w = kummer_k3_vector(PolarizedVector(r, d, n, a))
                except HypothesisError:
                    continue
                tags[w.case_tag] += 1
                if shown < args.show:
                    locus = "".join("1" if nonrigid_locus(w, i) else "0" for i in range(1, 17))
                    print(f"r={r} d={d} n={n} a={a}: {w.case_tag:8} (xi^2)={w.xi_square:5} b={w.b:4} <w^2>={w.square} N(w,i)={locus}")
                    shown += 1
    print("cases (d >= 0 only):", dict(tags))


if __name__ == "__main__":
    main()

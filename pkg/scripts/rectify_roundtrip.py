"""Sample words, push L0 and L1 through them, and rectify the images back.

    python3 scripts/rectify_roundtrip.py --seed 2024 --count 50
"""
import argparse
import time
from collections import Counter

from conic_complement.corpus import WordSampler, round_trip_corpus
from conic_complement.lines import EVEN, ODD, degree_conditions, rectify


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--max-length", type=int, default=4)
    ap.add_argument("--max-s-degree", type=int, default=3)
    ap.add_argument("--budget", type=int, default=500)
    args = ap.parse_args()

    cfg = WordSampler(max_length=args.max_length, max_s_degree=args.max_s_degree)
    start = time.perf_counter()
    odd, even = round_trip_corpus(args.seed, args.count, cfg)
    tally = Counter()
    worst = 0
    for pairs, want in ((odd, ODD), (even, EVEN)):
        for _, j in pairs:
            res = rectify(j, args.budget)
            tally[(want, res.outcome == want)] += 1
            tally["degree_conditions"] += degree_conditions(j).passes
            worst = max(worst, j.max_degree)
    elapsed = time.perf_counter() - start
    for want in (ODD, EVEN):
        print(f"{want}: {tally[(want, True)]}/{args.count} recovered")
    print(f"degree conditions hold on {tally['degree_conditions']}/{2 * args.count} images")
    print(f"largest degree {worst}, {elapsed:.2f}s")
    return 0 if tally[(ODD, True)] + tally[(EVEN, True)] == 2 * args.count else 1


if __name__ == "__main__":
    raise SystemExit(main())

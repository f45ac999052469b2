"""Inspect the characteristic-p exotic lines.

Prints the degree profile, the embedding verdict with its certificate,
the lift membership in the double-cover chart and the rectify outcome.
"""
import argparse
import json
import time

from conic_complement.lines import (
    antipodal_collision,
    degree_conditions,
    double_cover_chart,
    exotic_line,
    is_closed_embedding,
    lift_embedding,
    rectify,
)


def report(p):
    start = time.perf_counter()
    j = exotic_line(p)
    x, v = double_cover_chart(j)
    lift = lift_embedding(j)
    verdict = is_closed_embedding(j)
    col = antipodal_collision(j)
    out = {
        "p": p,
        "degrees": list(j.degrees),
        "c": j.field.to_str(j.c),
        "chart": {"x": x.to_str(), "v": v.to_str()},
        "t_in_k[x,v]": lift.status,
        "closed_embedding": verdict.to_json(),
        "double_point": None if col is None else {"sign": col[0], "locus": col[1].to_str()},
        "degree_conditions": degree_conditions(j).passes,
        "rectify": rectify(j).diagnostics.get("reason"),
        "seconds": round(time.perf_counter() - start, 2),
    }
    out["closed_embedding"].pop("witness", None)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("primes", nargs="*", type=int, default=[3, 5, 7])
    args = ap.parse_args()
    for p in args.primes:
        print(json.dumps(report(p), indent=2))


if __name__ == "__main__":
    main()

"""Classify every (n, k) up to --n-max and report unknowns and contradictions."""
import argparse
import json
import time

from sumfree import catalog


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=16)
    ap.add_argument("--budget", type=int, default=256)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--json", action="store_true", help="dump the full report")
    args = ap.parse_args()

    t0 = time.perf_counter()
    rep = catalog.conjecture_sweep(args.n_max, search_budget=args.budget, seed=args.seed, threads=args.threads)
    elapsed = time.perf_counter() - t0
    if args.json:
        print(json.dumps(rep, indent=2))
        return
    reasons = {}
    for p in rep["pairs"]:
        reasons[p["reason"]] = reasons.get(p["reason"], 0) + 1
    print(f"{len(rep['pairs'])} pairs classified in {elapsed:.1f}s")
    for r, c in sorted(reasons.items(), key=lambda t: -t[1]):
        print(f"  {c:>5}  {r}")
    print("unknown:", rep["unknown"])
    print("contradictions:", rep["contradictions"])


if __name__ == "__main__":
    main()

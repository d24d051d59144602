"""For each k in K_n, build a certificate from the factor, by random search and (small n) exhaustively."""
import argparse
import time

from sumfree import catalog, gf2lin, witness
from sumfree.gf2n import field_new


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=14)
    ap.add_argument("--budget", type=int, default=1 << 16)
    ap.add_argument("--exhaustive-max", type=int, default=1 << 22, help="skip exhaustive above this many subspaces")
    args = ap.parse_args()
    bad = 0
    for n in range(2, args.n_max + 1):
        ctx = field_new(n)
        for k in catalog.compute_Kn(n).kset:
            fac = witness.witness_from_factor(ctx, catalog.realizing_factor(n, k))
            t0 = time.perf_counter()
            rnd = witness.witness_search_random(ctx, k, budget=args.budget)
            draws = rnd.params.get("draw") if rnd is not None else None
            ex = "-"
            if gf2lin.gaussian_binomial(n, k) <= args.exhaustive_max:
                res = witness.witness_search_exhaustive(ctx, k)
                ex = "cert" if isinstance(res, witness.Certificate) else "SUM-FREE?!"
            ok = fac.verified and rnd is not None and ex != "SUM-FREE?!"
            bad += not ok
            print(f"n={n:>2} k={k:>2} factor={fac.verified} random={'ok' if rnd else 'none'}"
                  f" draw={draws} ({time.perf_counter() - t0:.2f}s) exhaustive={ex}")
    print("disagreements:", bad)
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())

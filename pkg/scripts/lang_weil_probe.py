"""Best-effort probe: random search at the smallest (n, k) the point-count bound covers.

Not part of acceptance.  Per-draw success is roughly 2^-(k-1) for the
F_k-solving search, so k = 3 is the friendly end.
"""
import argparse
import time

from sumfree import catalog, witness
from sumfree.gf2n import field_new


def smallest_n(k):
    n = k + 1
    while not catalog.lang_weil_applicable(n, k)[0]:
        n += 1
    return n


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, nargs="+", default=[3, 4])
    ap.add_argument("--budget", type=int, default=256)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    for k in args.k:
        n = smallest_n(k)
        t = catalog.small_threshold(k)
        t0 = time.perf_counter()
        cert = witness.witness_search_random(field_new(n), k, budget=args.budget, threads=args.threads)
        dt = time.perf_counter() - t0
        state = "found" if cert is not None else "none"
        print(f"k={k}: threshold in [{float(t.a):.4f}, {float(t.b):.4f}], n={n}, random search {state} ({dt:.1f}s)")
        if cert is not None:
            print("  basis:", " ".join(format(v, "x") for v in cert.basis), "verified:", witness.verify_certificate(cert))


if __name__ == "__main__":
    main()

"""Print the cyclotomic data table and the K_n table, with timings."""
import argparse
import time

from sumfree import catalog


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d-max", type=int, default=31)
    ap.add_argument("--n-max", type=int, default=32)
    args = ap.parse_args()

    t0 = time.perf_counter()
    rows = catalog.table1(args.d_max)
    t1 = time.perf_counter()
    print(catalog.format_table1(rows))
    print(f"[{len(rows)} rows in {t1 - t0:.2f}s]\n")

    t0 = time.perf_counter()
    reports = [catalog.compute_Kn(n) for n in range(1, args.n_max + 1)]
    t1 = time.perf_counter()
    print(catalog.format_table2(reports))
    print(f"[n <= {args.n_max} in {t1 - t0:.2f}s]")


if __name__ == "__main__":
    main()

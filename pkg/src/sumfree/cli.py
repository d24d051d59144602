"""The ``sumfree`` command line.

Every subcommand writes JSON (default) or a plain-text table to stdout or to
``--output``.  Exit status: 0 success, 1 a certificate failed verification,
2 bad arguments.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import List, Optional

from . import binpoly, catalog, witness
from .gf2n import FieldError, field_new

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2

METHODS = ("auto", "factor", "lift", "random", "exhaustive")


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: Optional[int] = None
    k: Optional[int] = None
    d_max: Optional[int] = None
    n_max: Optional[int] = None
    method: str = "auto"
    seed: int = 0
    budget: int = 256
    exhaustive_cap: int = witness.DEFAULT_EXHAUSTIVE_CAP
    threads: int = 1
    fmt: str = "json"
    output: Optional[str] = None
    path: Optional[str] = None
    full_parity: bool = False
    s: Optional[int] = None


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _need(value, name):
    if value is None:
        raise UsageError(f"--{name} is required")
    return value


# ---------- commands (each returns (text, exit code))

def cmd_factor(cfg: RunConfig):
    n = _need(cfg.n, "n")
    if n < 1:
        raise UsageError("n must be positive")
    fac = binpoly.factorize_xn_minus_1(n)
    if cfg.fmt == "json":
        return _dump(fac.to_json()), EXIT_OK
    lines = [f"X^{n}+1 = product over d | {fac.t} of Phi_d^{1 << fac.e}"]
    for f in fac.factors:
        mark = "  zero-trace" if f.zero_trace else ""
        lines.append(f"d={f.d:>4}  ({binpoly.poly_str(f.poly)})^{f.mult}{mark}")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_table1(cfg: RunConfig):
    d_max = cfg.d_max if cfg.d_max is not None else 31
    if d_max < 1:
        raise UsageError("--d-max must be at least 1")
    rows = catalog.table1(d_max)
    if cfg.fmt == "json":
        return _dump([r.to_json() for r in rows]), EXIT_OK
    return catalog.format_table1(rows), EXIT_OK


def cmd_table2(cfg: RunConfig):
    n_max = cfg.n_max if cfg.n_max is not None else 32
    if n_max < 1:
        raise UsageError("--n-max must be at least 1")
    reports = [catalog.compute_Kn(n) for n in range(1, n_max + 1)]
    if cfg.fmt == "json":
        rows = [
            {
                "n": r.n,
                "kset": list(r.kset),
                "factors": {str(k): binpoly.poly_hex(r.realizations[k].reversed_poly) for k in r.kset},
            }
            for r in reports
        ]
        return _dump(rows), EXIT_OK
    return catalog.format_table2(reports), EXIT_OK


def cmd_kset(cfg: RunConfig):
    n = _need(cfg.n, "n")
    if n < 1:
        raise UsageError("n must be positive")
    rep = catalog.compute_Kn(n)
    if cfg.fmt == "json":
        return _dump(rep.to_json()), EXIT_OK
    lines = [f"K_{n} = {{{','.join(map(str, rep.kset))}}}"]
    for k in rep.kset:
        r = rep.realizations[k]
        lines.append(f"k={k:>3}  {binpoly.poly_str(r.reversed_poly)}")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_c2(cfg: RunConfig):
    n = _need(cfg.n, "n")
    try:
        triples = catalog.cor_c2_enumerate(n, cfg.full_parity)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    ks = sorted({t.k for t in triples})
    if cfg.fmt == "json":
        return _dump({"n": n, "kset": ks, "triples": [t.to_json() for t in triples]}), EXIT_OK
    lines = [str(t) for t in triples] + [f"k in {{{','.join(map(str, ks))}}}"]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_cc3(cfg: RunConfig):
    n = _need(cfg.n, "n")
    if n < 1:
        raise UsageError("n must be positive")
    try:
        rows = catalog.cor_cc3_enumerate(n, cfg.s)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    ks = sorted({r.k for r in rows})
    if cfg.fmt == "json":
        return _dump({"n": n, "kset": ks, "rows": [r.to_json() for r in rows]}), EXIT_OK
    lines = [f"s={r.s}  R={binpoly.poly_str(r.R)}  k={r.k}" for r in rows]
    lines.append(f"k in {{{','.join(map(str, ks))}}}")
    return "\n".join(lines) + "\n", EXIT_OK


def find_witness(cfg: RunConfig):
    """Certificate, SumFreeResult, or None (unknown)."""
    n, k = _need(cfg.n, "n"), _need(cfg.k, "k")
    ctx = field_new(n)
    if not 1 <= k <= n:
        raise UsageError(f"need 1 <= k <= n (n={n}, k={k})")

    def factor():
        f = catalog.realizing_factor(n, k)
        return witness.witness_from_factor(ctx, f) if f is not None else None

    def lift():
        return witness.witness_by_lifting(ctx, k) if k >= 4 else None

    def random_():
        return witness.witness_search_random(ctx, k, seed=cfg.seed, budget=cfg.budget, threads=cfg.threads) if k >= 2 else None

    def exhaustive():
        try:
            return witness.witness_search_exhaustive(ctx, k, cfg.exhaustive_cap)
        except witness.SearchCapExceeded:
            return None

    if cfg.method == "factor":
        return factor()
    if cfg.method == "lift":
        return lift()
    if cfg.method == "random":
        return random_()
    if cfg.method == "exhaustive":
        return exhaustive()
    # auto: constructions first, then searches
    if k >= 2 and k in catalog.compute_Kn(n).kset:
        return factor()
    if k >= 2 and math.gcd(k, n) > 1:
        return witness.witness_subfield_span(ctx, k)
    if k == 3 and n >= 6:
        return witness.witness_search_scan(ctx, 3)
    return lift() or random_() or exhaustive()


def cmd_witness(cfg: RunConfig):
    res = find_witness(cfg)
    if res is None:
        obj = {"n": cfg.n, "k": cfg.k, "result": "unknown", "method": cfg.method}
    else:
        obj = res.to_json()
    if cfg.fmt == "json":
        return _dump(obj), EXIT_OK
    if res is None:
        return f"n={cfg.n} k={cfg.k}: unknown\n", EXIT_OK
    if isinstance(res, witness.SumFreeResult):
        return f"n={cfg.n} k={cfg.k}: sum-free ({res.enumerated} subspaces checked)\n", EXIT_OK
    basis = " ".join(format(v, "x") for v in res.basis)
    return f"n={res.n} k={res.k} method={res.method} verified={res.verified}\nbasis: {basis}\n", EXIT_OK


def cmd_verify(cfg: RunConfig):
    path = _need(cfg.path, "path")
    try:
        with open(path) as fh:
            obj = json.load(fh)
        cert = witness.Certificate.from_json(obj)
        ok = witness.verify_certificate(cert)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except (ValueError, FieldError) as exc:
        # a certificate that cannot even be parsed is a failed verification
        return _dump({"path": path, "verified": False, "error": str(exc)}), EXIT_VERIFY
    code = EXIT_OK if ok else EXIT_VERIFY
    if cfg.fmt == "json":
        return _dump({"path": path, "n": cert.n, "k": cert.k, "verified": ok}), code
    return f"{path}: {'OK' if ok else 'FAILED'}\n", code


def cmd_status(cfg: RunConfig):
    n, k = _need(cfg.n, "n"), _need(cfg.k, "k")
    if not 1 <= k <= n:
        raise UsageError(f"need 1 <= k <= n (n={n}, k={k})")
    field_new(n)
    v = catalog.classify(n, k, search_budget=cfg.budget, seed=cfg.seed, threads=cfg.threads)
    if cfg.fmt == "json":
        return _dump(v.to_json()), EXIT_OK
    return f"n={n} k={k}: {v.verdict} ({v.reason}) criteria={','.join(v.criteria_fired)}\n", EXIT_OK


def cmd_conjecture(cfg: RunConfig):
    n_max = cfg.n_max if cfg.n_max is not None else 12
    if not 2 <= n_max <= 64:
        raise UsageError("--n-max must be in [2, 64]")
    rep = catalog.conjecture_sweep(n_max, search_budget=cfg.budget, seed=cfg.seed, threads=cfg.threads)
    if cfg.fmt == "json":
        return _dump(rep), EXIT_OK
    lines = []
    for n in range(2, n_max + 1):
        cells = []
        for p in rep["pairs"]:
            if p["n"] == n:
                cells.append({"NOT_SUM_FREE": "x", "SUM_FREE": ".", "UNKNOWN": "?"}[p["verdict"]])
        lines.append(f"{n:>3} {''.join(cells)}")
    lines.append(f"unknown: {rep['unknown']}")
    lines.append(f"contradictions: {rep['contradictions']}")
    return "\n".join(lines) + "\n", EXIT_OK


COMMANDS = {
    "factor": cmd_factor,
    "table1": cmd_table1,
    "table2": cmd_table2,
    "kset": cmd_kset,
    "c2": cmd_c2,
    "cc3": cmd_cc3,
    "witness": cmd_witness,
    "verify": cmd_verify,
    "status": cmd_status,
    "conjecture": cmd_conjecture,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("json", "table"), default="json")
    common.add_argument("--output", help="write here instead of stdout")
    common.add_argument("--threads", type=int, default=None, help="worker processes (default $SUMFREE_THREADS or 1)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=256, help="random-search draws")
    common.add_argument("--exhaustive-cap", type=int, default=witness.DEFAULT_EXHAUSTIVE_CAP)

    p = argparse.ArgumentParser(prog="sumfree", description="Higher-order sum-freedom of the inverse function on GF(2^n).")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, *args):
        sp = sub.add_parser(name, parents=[common], help=help_)
        for a in args:
            if a == "n":
                sp.add_argument("--n", type=int, required=True)
            elif a == "k":
                sp.add_argument("--k", type=int, required=True)
        return sp

    add("factor", "factor X^n+1 over GF(2)", "n")
    add("table1", "o_d(2), phi(d)/o_d(2) and N_d for odd d").add_argument("--d-max", type=int, default=31)
    add("table2", "K_n for 1 <= n <= n-max").add_argument("--n-max", type=int, default=32)
    add("kset", "K_n with a realizing factor per k", "n")
    add("c2", "products of distinct cyclotomic polynomials without an X term", "n").add_argument(
        "--full-parity", action="store_true", help="allow every even corner weight, not only 0 and 2"
    )
    add("cc3", "divisors R(X^s) of X^n+1", "n").add_argument("--s", type=int, default=None)
    add("witness", "find a zero inverse-sum subspace", "n", "k").add_argument("--method", choices=METHODS, default="auto")
    add("verify", "re-verify a certificate file").add_argument("path")
    add("status", "classify one (n, k)", "n", "k")
    add("conjecture", "classify every (n, k) with n <= n-max").add_argument("--n-max", type=int, default=12)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    threads = ns.threads
    if threads is None:
        env = os.environ.get("SUMFREE_THREADS", "1")
        try:
            threads = int(env)
        except ValueError:
            raise UsageError(f"SUMFREE_THREADS={env!r} is not an integer")
    if threads < 1:
        raise UsageError("--threads must be positive")
    if ns.budget < 0 or ns.exhaustive_cap < 0:
        raise UsageError("--budget and --exhaustive-cap must be non-negative")
    return RunConfig(
        command=ns.command,
        n=getattr(ns, "n", None),
        k=getattr(ns, "k", None),
        d_max=getattr(ns, "d_max", None),
        n_max=getattr(ns, "n_max", None),
        method=getattr(ns, "method", "auto"),
        seed=ns.seed,
        budget=ns.budget,
        exhaustive_cap=ns.exhaustive_cap,
        threads=threads,
        fmt=ns.fmt,
        output=ns.output,
        path=getattr(ns, "path", None),
        full_parity=getattr(ns, "full_parity", False),
        s=getattr(ns, "s", None),
    )


def run(cfg: RunConfig):
    try:
        return COMMANDS[cfg.command](cfg)
    except FieldError as exc:
        raise UsageError(str(exc)) from exc


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)  # exits with 2 on bad flags
    try:
        cfg = config_from_args(ns)
        text, code = run(cfg)
    except UsageError as exc:
        print(f"sumfree: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

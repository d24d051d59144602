"""Zero inverse-sum subspaces: construction, search, lifting and verification.

A certificate is a k-dimensional subspace E of GF(2^n) with sum_{0 != x in E} 1/x = 0,
which proves that the inverse function is not kth order sum-free.  Only the
exhaustive search ever concludes the opposite.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import binpoly, gf2lin
from .gf2n import FieldCtx, field_new, from_hex, to_hex
from .moore import (
    ENUM_MAX_K,
    delta_i,
    independent_with,
    inverse_sum_enumerate,
    moore_det,
    random_independent,
    solve_first_var,
)

DEFAULT_EXHAUSTIVE_CAP = 1 << 28
# the exhaustive search tabulates 1/x for the whole field
EXHAUSTIVE_MAX_N = 22
SHARD_DRAWS = 32


class SearchCapExceeded(RuntimeError):
    """The exhaustive search refused to run: the answer stays unknown."""


@dataclass
class Certificate:
    n: int
    modulus: int
    basis: Tuple[int, ...]
    method: str
    params: dict = field(default_factory=dict)
    verified: bool = False

    @property
    def k(self) -> int:
        return len(self.basis)

    @property
    def ctx(self) -> FieldCtx:
        return field_new(self.n, self.modulus)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "modulus": binpoly.poly_hex(self.modulus),
            "k": self.k,
            "basis": [to_hex(v) for v in self.basis],
            "method": self.method,
            "method_params": self.params,
            "verified": self.verified,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Certificate":
        try:
            basis = tuple(from_hex(h) for h in obj["basis"])
            cert = cls(
                n=int(obj["n"]),
                modulus=from_hex(obj["modulus"]),
                basis=basis,
                method=str(obj.get("method", "unknown")),
                params=dict(obj.get("method_params", {})),
                verified=False,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed certificate: {exc}") from exc
        if "k" in obj and int(obj["k"]) != len(basis):
            raise ValueError("malformed certificate: k does not match the basis length")
        return cert


@dataclass(frozen=True)
class SumFreeResult:
    n: int
    k: int
    enumerated: int

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "result": "sum-free", "enumerated": self.enumerated}


def verify_certificate(cert: Certificate) -> bool:
    """Independence, zero sum by the determinant formula, and (k <= 20) by enumeration."""
    ctx = cert.ctx
    if not cert.basis:
        raise ValueError("malformed certificate: empty basis")
    if cert.k > ctx.n:
        raise ValueError("malformed certificate: more basis vectors than n")
    for v in cert.basis:
        ctx.check(v)
    if moore_det(ctx, cert.basis) == 0:
        return False
    if delta_i(ctx, cert.basis, 1) != 0:
        return False
    if cert.k <= ENUM_MAX_K and inverse_sum_enumerate(ctx, cert.basis) != 0:
        return False
    return True


def _certify(ctx: FieldCtx, basis: Sequence[int], method: str, params: dict) -> Certificate:
    cert = Certificate(ctx.n, ctx.modulus, tuple(basis), method, params)
    if not verify_certificate(cert):
        raise AssertionError(f"{method} construction produced an invalid certificate")
    cert.verified = True
    return cert


# ---------- constructions

def witness_subfield(ctx: FieldCtx, k: int) -> Certificate:
    """GF(2^k) inside GF(2^n); the inverse permutes it, so it sums to 0."""
    if k < 2 or ctx.n % k:
        raise ValueError(f"subfield witness needs k >= 2 dividing n (n={ctx.n}, k={k})")
    return _certify(ctx, ctx.subfield_basis(k), "subfield", {"k": k})


def witness_subfield_span(ctx: FieldCtx, k: int) -> Certificate:
    """A GF(2^d)-subspace of GF(2)-dimension k, d = gcd(k, n) > 1.

    Its nonzero elements split into GF(2^d)^*-orbits, and 1/x summed over each
    orbit is (1/x) * sum(GF(2^d)^*) = 0.
    """
    d = math.gcd(k, ctx.n)
    if d < 2 or not 2 <= k <= ctx.n:
        raise ValueError(f"need gcd(k, n) > 1 (n={ctx.n}, k={k})")
    sub = ctx.subfield_basis(d)
    basis: List[int] = []
    u = 1
    while len(basis) < k:
        cand = [ctx.mul(w, u) for w in sub]
        if gf2lin.is_independent(basis + cand):
            basis += cand
        u += 1
    return _certify(ctx, basis, "subfield_span", {"d": d})


def witness_from_factor(ctx: FieldCtx, f: int, method: str = "factor", params: Optional[dict] = None) -> Certificate:
    """Frobenius-stable witness from a divisor f = X^k + ... + a_2 X^2 + 1 of X^n + 1.

    With g = (X^n + 1)/f and alpha normal, x = g(sigma)(alpha) gives the basis
    x, sigma(x), ..., sigma^(k-1)(x).
    """
    n = ctx.n
    g, r = binpoly.poly_divrem(binpoly.xn_plus_1(n), f)
    if r:
        raise ValueError(f"{binpoly.poly_str(f)} does not divide X^{n}+1")
    k = binpoly.deg(f)
    if k < 2:
        raise ValueError("factor must have degree >= 2")
    if (f >> 1) & 1:
        raise ValueError(f"{binpoly.poly_str(f)} has a nonzero X coefficient")
    x = ctx.apply_sigma_poly(g, ctx.normal_element())
    basis = ctx.conjugates(x, k)
    p = {"f": binpoly.poly_hex(f)}
    p.update(params or {})
    return _certify(ctx, basis, method, p)


def frobenius_span_from_factor(ctx: FieldCtx, f: int) -> List[int]:
    """The same basis as ``witness_from_factor`` without the shape check (used by tests)."""
    g, r = binpoly.poly_divrem(binpoly.xn_plus_1(ctx.n), f)
    if r:
        raise ValueError("not a divisor of X^n+1")
    return ctx.conjugates(ctx.apply_sigma_poly(g, ctx.normal_element()), binpoly.deg(f))


def witness_lift(ctx: FieldCtx, inner: Certificate, l: int) -> Certificate:
    """From an r-dimensional witness F build an (l + r)-dimensional one.

    Pick a != 0 with Tr_{n/l}(a v) = 0 on F, so aF lies in the image of
    L(x) = x^(2^l) + x.  Pull aF back through L, keep the preimages in a fixed
    complement of GF(2^l), and add GF(2^l) itself.
    """
    n = ctx.n
    r = inner.k
    if l < 2 or n % l:
        raise ValueError(f"lift needs l >= 2 dividing n (n={n}, l={l})")
    if r >= n // l:
        raise ValueError(f"lift needs r < n/l (r={r}, n/l={n // l})")
    if (inner.n, inner.modulus) != (ctx.n, ctx.modulus):
        raise ValueError("inner certificate lives in a different field")

    images = []
    for i in range(n):
        img = 0
        for j, v in enumerate(inner.basis):
            img |= ctx.rel_trace(ctx.mul(1 << i, v), l) << (j * n)
        images.append(img)
    ker = gf2lin.echelon(gf2lin.LinearMap(images).kernel())
    if not ker:
        raise AssertionError("no trace-annihilating multiplier; r < n/l should guarantee one")
    a = min(ker)

    sub = ctx.subfield_basis(l)
    sub_pivots = {v.bit_length() - 1: v for v in sub}
    coeffs = [0] * (l + 1)
    coeffs[0] = coeffs[l] = 1
    L = ctx.linearized_map(coeffs)
    lifted = []
    for v in inner.basis:
        x = L.preimage(ctx.mul(a, v))
        if x is None:
            raise AssertionError("a*v left the image of x^(2^l) + x")
        lifted.append(gf2lin.reduce(x, sub_pivots))
    params = {"l": l, "a": to_hex(a), "inner": inner.to_json()}
    return _certify(ctx, list(sub) + lifted, "lift", params)


# ---------- searches

def _search_shard(ctx: FieldCtx, k: int, seed: int, shard: int, draws: int):
    rng = random.Random(f"{seed}:{shard}")
    for t in range(draws):
        rest = random_independent(ctx, k - 1, rng)
        for x in solve_first_var(ctx, rest):
            if independent_with(x, rest):
                return [x] + rest, t
    return None


def _shard_job(args):
    return _search_shard(*args)


def witness_search_random(
    ctx: FieldCtx, k: int, seed: int = 0, budget: int = 256, threads: int = 1
) -> Optional[Certificate]:
    """Draw random independent v_2..v_k and solve F_k(x, v_2..v_k) = 0 for x.

    ``budget`` counts draws.  Draws are grouped into fixed shards, each with
    its own seeded generator; the lowest shard with a hit wins, so the result
    does not depend on ``threads``.  None means nothing was found, not that
    the function is sum-free.
    """
    if not 2 <= k <= ctx.n:
        raise ValueError(f"need 2 <= k <= n (n={ctx.n}, k={k})")
    shards = [(s, min(SHARD_DRAWS, budget - s * SHARD_DRAWS)) for s in range(-(-budget // SHARD_DRAWS))]

    def wrap(shard, hit):
        basis, t = hit
        params = {"seed": seed, "shard": shard, "draw": t}
        return _certify(ctx, basis, "random_solve", params)

    if threads <= 1:
        for s, draws in shards:
            hit = _search_shard(ctx, k, seed, s, draws)
            if hit:
                return wrap(s, hit)
        return None
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for start in range(0, len(shards), threads):
            batch = shards[start:start + threads]
            jobs = [(ctx, k, seed, s, d) for s, d in batch]
            for (s, _), hit in zip(batch, pool.map(_shard_job, jobs)):
                if hit:
                    return wrap(s, hit)
    return None


def _increasing_tuples(lo: int, hi: int, r: int):
    # itertools.combinations would copy range(lo, hi) into a tuple first
    if r == 0:
        yield ()
        return
    for a in range(lo, hi - r + 1):
        for tail in _increasing_tuples(a + 1, hi, r - 1):
            yield (a, *tail)


def witness_search_scan(ctx: FieldCtx, k: int, limit: Optional[int] = None) -> Optional[Certificate]:
    """Deterministic variant of the random search.

    Scaling a subspace scales its inverse sum, so every subspace can be moved
    to one containing 1.  The fixed vectors are 1 together with k - 2 further
    elements taken in increasing order; for k = 3 this covers every
    3-dimensional subspace.
    """
    if not 2 <= k <= ctx.n:
        raise ValueError(f"need 2 <= k <= n (n={ctx.n}, k={k})")
    for t, tail in enumerate(_increasing_tuples(2, 1 << ctx.n, k - 2)):
        if limit is not None and t >= limit:
            break
        rest = [1, *tail]
        if not gf2lin.is_independent(rest):
            continue
        for x in solve_first_var(ctx, rest):
            if independent_with(x, rest):
                return _certify(ctx, [x] + rest, "scan", {"index": t})
    return None


def inverse_table(ctx: FieldCtx) -> np.ndarray:
    return np.array([ctx.inv(x) for x in range(1 << ctx.n)], dtype=np.uint64)


def _patterns(p: int, free: List[int]) -> np.ndarray:
    arr = np.array([1 << p], dtype=np.uint64)
    for j in free:
        arr = np.concatenate([arr, arr | np.uint64(1 << j)])
    return arr


def witness_search_exhaustive(
    ctx: FieldCtx, k: int, cap: int = DEFAULT_EXHAUSTIVE_CAP
) -> Union[Certificate, SumFreeResult]:
    """Walk every k-dimensional subspace once, in reduced echelon form.

    Rows are added by increasing leading bit; a row with leading bit p may use
    any lower bit that is not already a leading bit.  Returns the first
    zero-sum subspace, or a SumFreeResult, which is a proof of kth order
    sum-freedom for this n.
    """
    n = ctx.n
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n (n={n}, k={k})")
    total = gf2lin.gaussian_binomial(n, k)
    if total > cap:
        raise SearchCapExceeded(f"{total} subspaces of dimension {k} exceed the cap {cap}")
    if n > EXHAUSTIVE_MAX_N:
        raise SearchCapExceeded(f"n = {n} is too large to tabulate inverses")
    inv = inverse_table(ctx)
    count = 0

    def dfs(rows: List[int], last: int, used: int, span: np.ndarray, acc: int):
        nonlocal count
        remaining = k - len(rows)
        for p in range(last + 1, n - remaining + 1):
            free = [j for j in range(p) if not (used >> j) & 1]
            cands = _patterns(p, free)
            if remaining == 1:
                sums = np.bitwise_xor.reduce(inv[span[None, :] ^ cands[:, None]], axis=1) ^ np.uint64(acc)
                count += len(cands)
                hits = np.flatnonzero(sums == 0)
                if hits.size:
                    return rows + [int(cands[hits[0]])]
            else:
                for c in cands:
                    shifted = span ^ c
                    found = dfs(
                        rows + [int(c)],
                        p,
                        used | (1 << p),
                        np.concatenate([span, shifted]),
                        acc ^ int(np.bitwise_xor.reduce(inv[shifted])),
                    )
                    if found:
                        return found
        return None

    found = dfs([], -1, 0, np.zeros(1, dtype=np.uint64), 0)
    if found:
        return _certify(ctx, found, "exhaustive", {"visited": count})
    if count != total:
        raise AssertionError(f"enumerated {count} subspaces, expected {total}")
    return SumFreeResult(n, k, count)


# ---------- even n: every 2 <= k <= n-2

@dataclass
class ChainLink:
    k: int
    via: str
    certificate: Optional[Certificate] = None
    dual: Optional[Certificate] = None

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "via": self.via,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "dual": self.dual.to_json() if self.dual else None,
        }


def _base3(ctx: FieldCtx) -> Certificate:
    from .catalog import realizing_factor

    f = realizing_factor(ctx.n, 3)
    if f is not None:
        return witness_from_factor(ctx, f)
    cert = witness_search_scan(ctx, 3)
    if cert is None:
        raise AssertionError(f"no 3-dimensional witness in GF(2^{ctx.n})")
    return cert


def witness_even_chain(
    ctx: FieldCtx, seed: int = 0, budget: int = 64, direct_large: bool = True
) -> Dict[int, ChainLink]:
    """Certificates for every 2 <= k <= n - 2, n even.

    k = 2 is GF(4); k = 3 comes from a factor of X^n + 1 when one has the
    right shape, otherwise from the deterministic scan.  Each further k is a
    lift of k - 2 by l = 2, possible while k - 2 < n/2.  The remaining large k
    rest on the k <-> n - k equivalence with the certificate for n - k
    attached; a direct certificate is attempted from a factor, then by
    random search.
    """
    n = ctx.n
    if n % 2 or n < 4:
        raise ValueError("the even chain needs an even n >= 4")
    chain: Dict[int, ChainLink] = {2: ChainLink(2, "subfield", witness_subfield(ctx, 2))}
    if n >= 6:
        base = _base3(ctx)
        chain[3] = ChainLink(3, base.method, base)
    for k in range(4, n - 1):
        if k - 2 < n // 2:
            chain[k] = ChainLink(k, "lift", witness_lift(ctx, chain[k - 2].certificate, 2))
    for k in range(4, n - 1):
        if k in chain:
            continue
        link = ChainLink(k, "duality", dual=chain[n - k].certificate)
        if direct_large:
            from .catalog import realizing_factor

            f = realizing_factor(n, k)
            if f is not None:
                link.certificate = witness_from_factor(ctx, f)
            else:
                link.certificate = witness_search_random(ctx, k, seed=seed, budget=budget)
        chain[k] = link
    return dict(sorted(chain.items()))


def even_chain_link(ctx: FieldCtx, k: int, seed: int = 0, budget: int = 64, direct_large: bool = True) -> ChainLink:
    """The link for one k of ``witness_even_chain``, building only the lifts it needs."""
    n = ctx.n
    if n % 2 or n < 4 or not 2 <= k <= n - 2:
        raise ValueError(f"need an even n >= 4 and 2 <= k <= n - 2 (n={n}, k={k})")

    def build(j: int) -> ChainLink:
        cert = witness_subfield(ctx, 2) if j % 2 == 0 else _base3(ctx)
        if j <= 3:
            return ChainLink(j, cert.method, cert)
        for _ in range(j // 2 - 1 if j % 2 == 0 else (j - 3) // 2):
            cert = witness_lift(ctx, cert, 2)
        return ChainLink(j, "lift", cert)

    if k - 2 < n // 2:
        return build(k)
    link = ChainLink(k, "duality", dual=build(n - k).certificate)
    if direct_large:
        from .catalog import realizing_factor

        f = realizing_factor(n, k)
        if f is not None:
            link.certificate = witness_from_factor(ctx, f)
        else:
            link.certificate = witness_search_random(ctx, k, seed=seed, budget=budget)
    return link


def witness_by_lifting(ctx: FieldCtx, k: int, depth: int = 4) -> Optional[Certificate]:
    """Try l | n, l >= 2, on a witness of dimension k - l < n/l (found recursively)."""
    from .catalog import realizing_factor

    n = ctx.n

    def base(r: int, d: int) -> Optional[Certificate]:
        if r < 2:
            return None
        f = realizing_factor(n, r)
        if f is not None:
            return witness_from_factor(ctx, f)
        if math.gcd(r, n) > 1:
            return witness_subfield_span(ctx, r)
        if r == 3 and n >= 6:
            return witness_search_scan(ctx, 3)
        return witness_by_lifting(ctx, r, d - 1) if d > 0 else None

    for l in binpoly.divisors(n):
        r = k - l
        if l < 2 or r < 2 or r >= n // l:
            continue
        inner = base(r, depth)
        if inner is not None:
            return witness_lift(ctx, inner, l)
    return None

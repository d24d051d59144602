"""The ring GF(2)[X], with polynomials stored as ints (bit i = coefficient of X^i).

Besides the usual ring operations this module factors X^n + 1 completely.  The
factorization goes through 2-cyclotomic cosets: for every odd d | t (n = 2^e t)
the irreducible factors of the cyclotomic polynomial Phi_d are the minimal
polynomials of zeta^j, j running over one coset of (Z/dZ)^x, where zeta has
multiplicative order d in GF(2^l), l = o_d(2).  That route hands back the
index d of every factor, which is what the degree catalogs need.

The n odd discussion of the companion-matrix approach (splitting
(X^n+1)/(X+1) into g*h) needs no separate code: every divisor of X^n+1 is a
product of the factors listed here, and ``catalog.compute_Kn`` enumerates them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import List, Tuple

ZERO = 0
ONE = 1
X = 2


def deg(f: int) -> int:
    """Degree of f; the zero polynomial gets -1."""
    return f.bit_length() - 1


def poly_mul(a: int, b: int) -> int:
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_divrem(a: int, b: int) -> Tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = deg(b)
    q = 0
    while a and deg(a) >= db:
        s = deg(a) - db
        q |= 1 << s
        a ^= b << s
    return q, a


def poly_mod(a: int, b: int) -> int:
    return poly_divrem(a, b)[1]


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def poly_mulmod(a: int, b: int, m: int) -> int:
    return poly_mod(poly_mul(a, b), m)


def poly_powmod(a: int, e: int, m: int) -> int:
    if e < 0:
        raise ValueError("negative exponent")
    result = poly_mod(1, m)
    a = poly_mod(a, m)
    while e:
        if e & 1:
            result = poly_mulmod(result, a, m)
        a = poly_mulmod(a, a, m)
        e >>= 1
    return result


def poly_reverse(f: int) -> int:
    """The reciprocal X^deg(f) * f(1/X)."""
    return int(bin(f)[:1:-1], 2) if f else 0


def poly_compose_power(f: int, s: int) -> int:
    """f(X^s)."""
    out = 0
    i = 0
    while f:
        if f & 1:
            out |= 1 << (i * s)
        f >>= 1
        i += 1
    return out


def xn_plus_1(n: int) -> int:
    return (1 << n) | 1


def poly_str(f: int) -> str:
    if f == 0:
        return "0"
    terms = []
    for i in range(deg(f), -1, -1):
        if (f >> i) & 1:
            terms.append("1" if i == 0 else "X" if i == 1 else f"X^{i}")
    return "+".join(terms)


def poly_hex(f: int) -> str:
    return format(f, "x")


def derivative(f: int) -> int:
    # only odd exponents survive in characteristic 2
    mask = int("01" * (f.bit_length() // 2 + 1), 2)
    return (f >> 1) & mask


def _sqrt(f: int) -> int:
    # f(X) = s(X^2) -> s(X)
    s = 0
    i = 0
    while f:
        if f & 1:
            s |= 1 << i
        f >>= 2
        i += 1
    return s


# ---------- number theory helpers

def prime_factors(n: int) -> List[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def factorint(n: int) -> List[Tuple[int, int]]:
    out = []
    for p in prime_factors(n):
        a = 0
        while n % p == 0:
            n //= p
            a += 1
        out.append((p, a))
    return out


def divisors(n: int) -> List[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def totient(n: int) -> int:
    r = n
    for p in prime_factors(n):
        r -= r // p
    return r


def mult_order(d: int, base: int = 2) -> int:
    """Multiplicative order of ``base`` modulo d (1 for d = 1)."""
    if d == 1:
        return 1
    if math.gcd(base, d) != 1:
        raise ValueError(f"{base} is not a unit modulo {d}")
    o, x = 1, base % d
    while x != 1:
        x = x * base % d
        o += 1
    return o


def odd_part(n: int) -> Tuple[int, int]:
    """(t, e) with n = 2^e * t and t odd."""
    e = (n & -n).bit_length() - 1
    return n >> e, e


# ---------- irreducibility

def is_irreducible(f: int) -> bool:
    """Rabin's test over GF(2)."""
    n = deg(f)
    if n < 1:
        return False
    if n == 1:
        return True
    if not f & 1:
        return False
    if poly_powmod(X, 1 << n, f) != X:
        return False
    for p in prime_factors(n):
        h = poly_powmod(X, 1 << (n // p), f) ^ X
        if poly_gcd(f, h) != 1:
            return False
    return True


# ---------- cyclotomic polynomials and cosets

@lru_cache(maxsize=None)
def cyclotomic(d: int) -> int:
    """Phi_d reduced mod 2, for odd d >= 1."""
    if d < 1 or d % 2 == 0:
        raise ValueError(f"cyclotomic index must be odd and positive, got {d}")
    num = xn_plus_1(d)
    for dd in divisors(d)[:-1]:
        num, r = poly_divrem(num, cyclotomic(dd))
        assert r == 0
    return num


def cyclotomic_any(d: int) -> int:
    """Phi_d mod 2 for any d >= 1: Phi_{2^a m} = Phi_m^(2^(a-1)) for odd m and a >= 1."""
    m, a = odd_part(d)
    phi = cyclotomic(m)
    return phi if a == 0 else poly_compose_power(phi, 1 << (a - 1))


def cyclotomic_cosets(d: int) -> List[List[int]]:
    """2-cyclotomic cosets of the units mod d, each in orbit order.

    For d = 1 the single coset [0] stands for the factor X + 1.
    """
    if d < 1 or d % 2 == 0:
        raise ValueError(f"coset modulus must be odd and positive, got {d}")
    if d == 1:
        return [[0]]
    seen = set()
    cosets = []
    for r in range(1, d):
        if r in seen or math.gcd(r, d) != 1:
            continue
        orbit = []
        x = r
        while x not in seen:
            seen.add(x)
            orbit.append(x)
            x = 2 * x % d
        cosets.append(orbit)
    return cosets


# ---------- factorization of X^n + 1

@dataclass(frozen=True)
class Factor:
    poly: int
    d: int
    mult: int

    @property
    def degree(self) -> int:
        return deg(self.poly)

    @property
    def zero_trace(self) -> bool:
        return not (self.poly >> (self.degree - 1)) & 1


@dataclass(frozen=True)
class XnFactorization:
    n: int
    t: int
    e: int
    factors: Tuple[Factor, ...]

    def product(self) -> int:
        out = 1
        for f in self.factors:
            for _ in range(f.mult):
                out = poly_mul(out, f.poly)
        return out

    def of_index(self, d: int) -> List[Factor]:
        return [f for f in self.factors if f.d == d]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "e": self.e,
            "factors": [
                {"poly": poly_hex(f.poly), "d": f.d, "mult": f.mult, "zero_trace": f.zero_trace}
                for f in self.factors
            ],
        }


def element_of_order(ctx, d: int) -> int:
    """Some element of multiplicative order exactly d in ctx (d | 2^n - 1)."""
    q1 = (1 << ctx.n) - 1
    if q1 % d:
        raise ValueError(f"{d} does not divide 2^{ctx.n} - 1")
    cof = q1 // d
    primes = prime_factors(d)
    for c in range(2, 1 << ctx.n):
        y = ctx.pow(c, cof)
        if all(ctx.pow(y, d // p) != 1 for p in primes):
            return y
    raise AssertionError("unreachable: the multiplicative group is cyclic")


def minimal_polys(d: int) -> List[int]:
    """Irreducible factors of Phi_d, one per 2-cyclotomic coset, in coset order."""
    if d == 1:
        return [0b11]
    from .gf2n import extension_field

    l = mult_order(d)
    K = extension_field(l)
    zeta = element_of_order(K, d)
    out = []
    for coset in cyclotomic_cosets(d):
        coeffs = [1]  # ascending powers, entries in K
        for j in coset:
            root = K.pow(zeta, j)
            nxt = [0] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i + 1] ^= c
                nxt[i] ^= K.mul(c, root)
            coeffs = nxt
        if any(c not in (0, 1) for c in coeffs):
            raise AssertionError(f"minimal polynomial for d={d} left GF(2)")
        out.append(sum(c << i for i, c in enumerate(coeffs)))
    return out


@lru_cache(maxsize=None)
def factorize_xn_minus_1(n: int) -> XnFactorization:
    if n < 1:
        raise ValueError("n must be positive")
    t, e = odd_part(n)
    factors = []
    for d in divisors(t):
        for f in minimal_polys(d):
            factors.append(Factor(f, d, 1 << e))
    return XnFactorization(n, t, e, tuple(factors))


# ---------- order of a polynomial

def squarefree_decomposition(f: int) -> List[Tuple[int, int]]:
    """[(g, m)] with f = prod g^m and every g squarefree (g's pairwise coprime per m)."""
    out: List[Tuple[int, int]] = []
    c = poly_gcd(f, derivative(f))
    w = poly_divrem(f, c)[0]
    i = 1
    while w != 1:
        y = poly_gcd(w, c)
        z = poly_divrem(w, y)[0]
        if z != 1:
            out.append((z, i))
        w = y
        c = poly_divrem(c, y)[0]
        i += 1
    if c != 1:
        for g, m in squarefree_decomposition(_sqrt(c)):
            out.append((g, 2 * m))
    return out


def distinct_degree(f: int) -> List[Tuple[int, int]]:
    """[(g, m)] where g is the product of all degree-m irreducible factors of squarefree f."""
    out = []
    h = X
    m = 0
    while deg(f) >= 2 * (m + 1):
        m += 1
        h = poly_mulmod(h, h, f)
        g = poly_gcd(f, h ^ X)
        if g != 1:
            out.append((g, m))
            f = poly_divrem(f, g)[0]
            h = poly_mod(h, f) if deg(f) > 0 else 0
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def _order_of_x(g: int, group_order: int) -> int:
    # X^group_order == 1 mod g; strip primes while that stays true
    e = group_order
    for p in prime_factors(group_order):
        while e % p == 0 and poly_powmod(X, e // p, g) == 1:
            e //= p
    return e


def poly_order(P: int) -> int:
    """Smallest e >= 1 with P | X^e + 1."""
    if deg(P) < 1:
        raise ValueError("poly_order needs degree >= 1")
    if not P & 1:
        raise ValueError("poly_order needs P(0) = 1")
    odd = 1
    top_mult = 1
    for g, m in squarefree_decomposition(P):
        top_mult = max(top_mult, m)
        for h, dd in distinct_degree(g):
            if h == 0b11:
                continue
            odd = math.lcm(odd, _order_of_x(h, (1 << dd) - 1))
    return odd * (1 << (top_mult - 1).bit_length())


def product(polys) -> int:
    return reduce(poly_mul, polys, 1)

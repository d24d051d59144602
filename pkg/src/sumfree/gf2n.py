"""Arithmetic in GF(2^n), 2 <= n <= 64, in a polynomial basis.

Elements are plain ints below 2^n (bit i = coefficient of X^i).  A FieldCtx
carries the degree and the irreducible modulus; every operation is a method on
it and is a pure function of its arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional

from . import binpoly, gf2lin

MIN_N = 2
MAX_N = 64


class FieldError(ValueError):
    pass


@lru_cache(maxsize=None)
def default_modulus(n: int) -> int:
    """Lexicographically smallest irreducible polynomial of degree n."""
    for m in range((1 << n) | 1, 1 << (n + 1), 2):
        if binpoly.is_irreducible(m):
            return m
    raise AssertionError("unreachable: irreducibles exist in every degree")


@dataclass(frozen=True)
class FieldCtx:
    n: int
    modulus: int

    def __post_init__(self):
        if binpoly.deg(self.modulus) != self.n:
            raise FieldError(f"modulus {self.modulus:#x} does not have degree {self.n}")

    @property
    def order(self) -> int:
        return 1 << self.n

    def check(self, a: int) -> int:
        if not 0 <= a < (1 << self.n):
            raise FieldError(f"{a:#x} is not an element of GF(2^{self.n})")
        return a

    # ---- arithmetic

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        r = 0
        top = 1 << self.n
        m = self.modulus
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= m
        return r

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        """a^(2^n - 2): the inverse of a, and 0 for a = 0 (binary extended Euclid)."""
        if a == 0:
            return 0
        u, v = a, self.modulus
        g1, g2 = 1, 0
        while u != 1:
            j = u.bit_length() - v.bit_length()
            if j < 0:
                u, v = v, u
                g1, g2 = g2, g1
                j = -j
            u ^= v << j
            g1 ^= g2 << j
        return g1

    def inv_pow(self, a: int) -> int:
        """Same map as ``inv``, by exponentiation to 2^n - 2."""
        return self.pow(a, (1 << self.n) - 2)

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero in GF(2^n)")
        return self.mul(a, self.inv(b))

    # ---- Frobenius and friends

    def frobenius(self, a: int, i: int = 1) -> int:
        if i < 0:
            raise ValueError("negative Frobenius exponent")
        for _ in range(i % self.n):
            a = self.mul(a, a)
        return a

    def conjugates(self, a: int, count: Optional[int] = None) -> List[int]:
        """[a, a^2, a^4, ...] with ``count`` entries (default n)."""
        out = []
        for _ in range(self.n if count is None else count):
            out.append(a)
            a = self.mul(a, a)
        return out

    def rel_trace(self, a: int, l: int) -> int:
        """Trace from GF(2^n) down to GF(2^l)."""
        if l < 1 or self.n % l:
            raise FieldError(f"{l} does not divide {self.n}")
        s = 0
        for _ in range(self.n // l):
            s ^= a
            a = self.frobenius(a, l)
        return s

    def trace(self, a: int) -> int:
        return self.rel_trace(a, 1)

    def is_normal(self, a: int) -> bool:
        return gf2lin.rank(self.conjugates(a)) == self.n

    def normal_element(self) -> int:
        """Smallest a (as an integer) whose conjugates form a GF(2)-basis."""
        return _normal_element(self)

    def apply_sigma_poly(self, g: int, x: int) -> int:
        """(g(sigma))(x) = sum of x^(2^i) over the set bits i of g."""
        s = 0
        while g:
            if g & 1:
                s ^= x
            g >>= 1
            x = self.mul(x, x)
        return s

    def linearized_map(self, coeffs: List[int]) -> gf2lin.LinearMap:
        """x -> sum_i coeffs[i] * x^(2^i) as a GF(2)-linear map on bit vectors."""
        images = []
        for j in range(self.n):
            x = 1 << j
            img = 0
            for c in coeffs:
                if c:
                    img ^= self.mul(c, x)
                x = self.mul(x, x)
            images.append(img)
        return gf2lin.LinearMap(images)

    def subfield_basis(self, l: int) -> List[int]:
        """A GF(2)-basis of GF(2^l) inside this field: the kernel of x -> x^(2^l) + x."""
        if l < 1 or self.n % l:
            raise FieldError(f"{l} does not divide {self.n}")
        coeffs = [0] * (l + 1)
        coeffs[0] = coeffs[l] = 1
        return gf2lin.echelon(self.linearized_map(coeffs).kernel())

    # ---- serialization

    def to_json(self) -> dict:
        return {"n": self.n, "modulus": binpoly.poly_hex(self.modulus)}


@lru_cache(maxsize=None)
def _normal_element(ctx: FieldCtx) -> int:
    # a is normal iff it avoids K_f = ker ((X^n+1)/f)(sigma) for every
    # irreducible f | X^n + 1.  The smallest such a is fixed bit by bit from
    # the top, asking each time whether the box prefix + span(bits < j) still
    # meets the complement of the union of the K_f (branch and bound on the
    # next free bit when counting alone cannot decide).
    n = ctx.n
    xn = binpoly.xn_plus_1(n)
    irred = [f.poly for f in binpoly.factorize_xn_minus_1(n).factors]

    def kernel_of(g):
        coeffs = [(g >> i) & 1 for i in range(binpoly.deg(g) + 1)]
        return tuple(gf2lin.echelon(ctx.linearized_map(coeffs).kernel()))

    kernels = [kernel_of(binpoly.poly_divrem(xn, f)[0]) for f in irred]
    pivots = [{v.bit_length() - 1: v for v in K} for K in kernels]

    def meets(K, prefix, j):
        """|(prefix + span(bits < j)) & K|."""
        high = gf2lin.echelon([v >> j for v in K])
        if gf2lin.rank([*high, prefix >> j]) > len(high):
            return 0
        return 1 << (len(K) - len(high))

    def has_normal(prefix, j):
        counts = [meets(K, prefix, j) for K in kernels]
        if max(counts) == 1 << j:
            return False  # the whole box sits inside one kernel
        if sum(counts) < 1 << j:
            return True
        if j <= 10:
            return any(all(gf2lin.reduce(prefix | low, p) for p in pivots) for low in range(1 << j))
        return has_normal(prefix, j - 1) or has_normal(prefix | 1 << (j - 1), j - 1)

    top = next(h for h in range(n) if has_normal(1 << h, h))
    a = 1 << top
    for j in range(top - 1, -1, -1):
        if not has_normal(a, j):
            a |= 1 << j
    if not ctx.is_normal(a):
        raise AssertionError("normal element search went wrong")
    return a


@lru_cache(maxsize=None)
def _default_field(n: int) -> FieldCtx:
    return FieldCtx(n, default_modulus(n))


def field_new(n: int, modulus: Optional[int] = None) -> FieldCtx:
    if not isinstance(n, int) or not MIN_N <= n <= MAX_N:
        raise FieldError(f"n must be an integer in [{MIN_N}, {MAX_N}], got {n!r}")
    if modulus is None:
        return _default_field(n)
    if binpoly.deg(modulus) != n:
        raise FieldError(f"modulus {binpoly.poly_str(modulus)} does not have degree {n}")
    if not binpoly.is_irreducible(modulus):
        raise FieldError(f"modulus {binpoly.poly_str(modulus)} is reducible")
    return FieldCtx(n, modulus)


def extension_field(l: int) -> FieldCtx:
    """GF(2^l) with the default modulus and no upper bound on l (internal use)."""
    if l < 1:
        raise FieldError("extension degree must be positive")
    return _default_field(l)


def find_normal_element(ctx: FieldCtx) -> int:
    return ctx.normal_element()


def to_hex(a: int) -> str:
    return format(a, "x")


def from_hex(s: str) -> int:
    return int(s, 16)

"""Linear algebra over GF(2) with vectors packed into Python ints (bit i = coordinate i)."""

from __future__ import annotations

from typing import Iterable, Iterator, List, Optional, Sequence, Tuple


def rank(vectors: Iterable[int]) -> int:
    pivots: dict[int, int] = {}
    for v in vectors:
        while v:
            h = v.bit_length() - 1
            p = pivots.get(h)
            if p is None:
                pivots[h] = v
                break
            v ^= p
    return len(pivots)


def is_independent(vectors: Sequence[int]) -> bool:
    return rank(vectors) == len(vectors)


def echelon(vectors: Iterable[int]) -> List[int]:
    """Fully reduced echelon basis of the span, sorted by decreasing leading bit.

    Each basis vector has a distinct leading bit and every other basis vector
    is zero at that bit, so the result is a canonical form of the span.
    """
    pivots: dict[int, int] = {}
    for v in vectors:
        v = reduce(v, pivots)
        if v:
            h = v.bit_length() - 1
            for k in list(pivots):
                if (pivots[k] >> h) & 1:
                    pivots[k] ^= v
            pivots[h] = v
    return [pivots[h] for h in sorted(pivots, reverse=True)]


def reduce(v: int, pivots: dict[int, int]) -> int:
    """Clear every pivot bit of ``v`` using a {leading bit: vector} table."""
    for h in sorted(pivots, reverse=True):
        if (v >> h) & 1:
            v ^= pivots[h]
    return v


class LinearMap:
    """A GF(2)-linear map given by the images of the unit vectors.

    ``images[j]`` is the image of ``1 << j``.  Elimination is done once at
    construction; afterwards ``preimage`` and ``kernel`` are cheap.
    """

    def __init__(self, images: Sequence[int]):
        self.images = list(images)
        self._pivots: dict[int, Tuple[int, int]] = {}
        self._kernel: List[int] = []
        for j, img in enumerate(self.images):
            combo = 1 << j
            while img:
                h = img.bit_length() - 1
                hit = self._pivots.get(h)
                if hit is None:
                    self._pivots[h] = (img, combo)
                    break
                img ^= hit[0]
                combo ^= hit[1]
            if not img:
                self._kernel.append(combo)

    def __call__(self, x: int) -> int:
        out = 0
        j = 0
        while x:
            if x & 1:
                out ^= self.images[j]
            x >>= 1
            j += 1
        return out

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def kernel(self) -> List[int]:
        return list(self._kernel)

    def preimage(self, y: int) -> Optional[int]:
        """One x with f(x) = y, or None when y is outside the image."""
        x = 0
        while y:
            h = y.bit_length() - 1
            hit = self._pivots.get(h)
            if hit is None:
                return None
            y ^= hit[0]
            x ^= hit[1]
        return x

    def solve(self, y: int) -> List[int]:
        """All solutions of f(x) = y: empty, or a coset of the kernel."""
        x0 = self.preimage(y)
        if x0 is None:
            return []
        return [x0 ^ k for k in span(self._kernel)]


def span(basis: Sequence[int]) -> Iterator[int]:
    """All 2^len(basis) combinations, in Gray-code order starting at 0."""
    x = 0
    yield x
    for i in range(1, 1 << len(basis)):
        x ^= basis[(i & -i).bit_length() - 1]
        yield x


def gaussian_binomial(n: int, k: int) -> int:
    """Number of k-dimensional subspaces of GF(2)^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= (1 << (n - i)) - 1
        den *= (1 << (i + 1)) - 1
    return num // den

"""Moore determinants, subspace polynomials and the inverse sum over a subspace.

Every Moore-type determinant here is a determinant of a matrix whose entry in
row r, column j is v_j^(2^e_r) for an increasing list of exponents e_r:

* ``moore_det``  -- exponents 0..k-1
* ``delta_i``    -- exponents 0..k with i removed
* ``delta_ij``   -- exponents 0..k+1 with i and j removed

None of these is ever expanded symbolically; they are evaluated at field points
and identities between them are checked pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from . import gf2lin
from .gf2n import FieldCtx, field_new, from_hex, to_hex

# inverse sums are enumerated directly up to 2^ENUM_MAX_K elements
ENUM_MAX_K = 20
PRODUCT_MAX_K = 8


class DependentBasisError(ValueError):
    pass


@dataclass(frozen=True)
class Subspace:
    ctx: FieldCtx
    basis: Tuple[int, ...]

    def __post_init__(self):
        for v in self.basis:
            self.ctx.check(v)
        if not 1 <= len(self.basis) <= self.ctx.n:
            raise ValueError(f"dimension must be in [1, {self.ctx.n}]")
        if not gf2lin.is_independent(self.basis):
            raise DependentBasisError("basis vectors are linearly dependent")

    @property
    def k(self) -> int:
        return len(self.basis)

    def elements(self):
        return gf2lin.span(self.basis)

    def __contains__(self, x: int) -> bool:
        return gf2lin.rank(self.basis + (x,)) == self.k

    def to_json(self) -> dict:
        return {**self.ctx.to_json(), "basis": [to_hex(v) for v in self.basis]}

    @classmethod
    def from_json(cls, obj: dict) -> "Subspace":
        ctx = field_new(obj["n"], from_hex(obj["modulus"]))
        return cls(ctx, tuple(from_hex(h) for h in obj["basis"]))


def _basis(v) -> List[int]:
    return list(v.basis) if isinstance(v, Subspace) else list(v)


def _require_independent(v: Sequence[int]) -> None:
    if not gf2lin.is_independent(v):
        raise DependentBasisError("vectors are linearly dependent over GF(2)")


# ---------- determinants

def det(ctx: FieldCtx, rows: List[List[int]]) -> int:
    """Determinant over GF(2^n) by Gaussian elimination."""
    m = [list(r) for r in rows]
    size = len(m)
    d = 1
    for c in range(size):
        p = next((r for r in range(c, size) if m[r][c]), None)
        if p is None:
            return 0
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        d = ctx.mul(d, piv)
        pinv = ctx.inv(piv)
        for r in range(c + 1, size):
            if m[r][c]:
                f = ctx.mul(m[r][c], pinv)
                m[r] = [a ^ ctx.mul(f, b) for a, b in zip(m[r], m[c])]
    return d


def frobenius_det(ctx: FieldCtx, v: Sequence[int], exps: Sequence[int]) -> int:
    """det[v_j^(2^e)] with rows e in ``exps`` and columns j."""
    if len(exps) != len(v):
        raise ValueError("need a square matrix")
    if not v:
        return 1
    top = max(exps)
    conj = [ctx.conjugates(x, top + 1) for x in v]
    return det(ctx, [[conj[j][e] for j in range(len(v))] for e in exps])


def moore_det(ctx: FieldCtx, v: Sequence[int], method: str = "auto") -> int:
    """The Moore determinant of v_1..v_k; zero exactly when they are dependent.

    ``method="product"`` multiplies all nonzero GF(2)-combinations of the
    inputs, ``method="gauss"`` eliminates the k x k matrix [v_j^(2^i)];
    ``"auto"`` takes the product up to k = PRODUCT_MAX_K.
    """
    if method == "auto":
        method = "product" if len(v) <= PRODUCT_MAX_K else "gauss"
    if method == "gauss":
        return frobenius_det(ctx, v, range(len(v)))
    if method != "product":
        raise ValueError(f"unknown method {method!r}")
    p = 1
    it = gf2lin.span(list(v))
    next(it)
    for x in it:
        p = ctx.mul(p, x)
    return p


def delta_i(ctx: FieldCtx, v: Sequence[int], i: int) -> int:
    k = len(v)
    if not 0 <= i <= k:
        raise ValueError(f"row index {i} outside [0, {k}]")
    return frobenius_det(ctx, v, [e for e in range(k + 1) if e != i])


def delta_ij(ctx: FieldCtx, v: Sequence[int], i: int, j: int) -> int:
    k = len(v)
    if not 0 <= i < j <= k + 1:
        raise ValueError(f"need 0 <= i < j <= {k + 1}")
    return frobenius_det(ctx, v, [e for e in range(k + 2) if e not in (i, j)])


# ---------- subspace polynomials

def subspace_poly(ctx: FieldCtx, basis: Sequence[int]) -> List[int]:
    """Coefficients b_0..b_k of L(X) = prod_{u in span}(X + u) = sum b_i X^(2^i).

    Built one basis vector at a time from L_new(X) = L(X)^2 + L(v) L(X).
    """
    b = [1]
    for v in _basis(basis):
        c = eval_linearized(ctx, b, v)
        if c == 0:
            raise DependentBasisError("basis vectors are linearly dependent")
        sq = [ctx.mul(x, x) for x in b]
        b = [ctx.mul(c, b[0])] + [sq[i - 1] ^ ctx.mul(c, b[i]) for i in range(1, len(b))] + [sq[-1]]
    return b


def eval_linearized(ctx: FieldCtx, coeffs: Sequence[int], x: int) -> int:
    s = 0
    for c in coeffs:
        if c:
            s ^= ctx.mul(c, x)
        x = ctx.mul(x, x)
    return s


# ---------- inverse sums

def inverse_sum_enumerate(ctx: FieldCtx, basis: Sequence[int], inv_table=None) -> int:
    inv = inv_table.__getitem__ if inv_table is not None else ctx.inv
    s = 0
    for x in gf2lin.span(list(basis)):
        s ^= inv(x)
    return s


def inverse_sum_formula(ctx: FieldCtx, basis: Sequence[int]) -> int:
    d = moore_det(ctx, basis)
    if d == 0:
        raise DependentBasisError("basis vectors are linearly dependent")
    return ctx.div(delta_i(ctx, basis, 1), ctx.mul(d, d))


def inverse_sum(ctx: FieldCtx, basis: Sequence[int], method: str = "auto") -> int:
    """Sum of 1/x over the nonzero x in span(basis)."""
    basis = _basis(basis)
    _require_independent(basis)
    if method == "auto":
        method = "enumerate" if len(basis) <= ENUM_MAX_K else "formula"
    if method == "enumerate":
        return inverse_sum_enumerate(ctx, basis)
    if method == "formula":
        return inverse_sum_formula(ctx, basis)
    raise ValueError(f"unknown method {method!r}")


def affine_sum_nonzero_check(ctx: FieldCtx, basis: Sequence[int], c: int) -> int:
    """Sum of 1/u over the coset c + span(basis), which must avoid 0.

    Enumerates the coset and compares with prod_{0 != u in E} u / prod_{u in A} u;
    the result is never zero.
    """
    basis = _basis(basis)
    _require_independent(basis)
    if gf2lin.rank(list(basis) + [c]) == len(basis):
        raise ValueError("c lies in the subspace, so the coset contains 0")
    s = 0
    num = 1
    den = 1
    for u in gf2lin.span(list(basis)):
        s ^= ctx.inv(c ^ u)
        den = ctx.mul(den, c ^ u)
        if u:
            num = ctx.mul(num, u)
    closed = ctx.div(num, den)
    if s != closed:
        raise AssertionError("coset inverse sum disagrees with its closed form")
    if s == 0:
        raise AssertionError("coset inverse sum vanished")
    return s


# ---------- F_k = Delta_1 / Delta

def eval_Fk(ctx: FieldCtx, v: Sequence[int]) -> int:
    d = moore_det(ctx, v)
    if d == 0:
        raise DependentBasisError("F_k is only evaluated at independent points")
    return ctx.div(delta_i(ctx, v, 1), d)


def fk_first_var_coeffs(ctx: FieldCtx, rest: Sequence[int]) -> Tuple[List[int], int]:
    """F_k(X_1, rest) as an affine 2-polynomial in X_1.

    Returns ``(lin, const)`` with F_k(x, rest) = sum_i lin[i] x^(2^i) + const,
    i = 0..k-1, where k = len(rest) + 1.
    """
    d = moore_det(ctx, rest)
    if d == 0:
        raise DependentBasisError("the fixed variables are linearly dependent")
    m = len(rest)
    top = ctx.div(delta_i(ctx, rest, 1), d)  # F_{k-1}(rest)
    dinv = ctx.inv(d)
    lin = [ctx.mul(top, ctx.mul(delta_i(ctx, rest, i), dinv)) for i in range(m)]
    lin.append(top)
    return lin, ctx.mul(d, d)


def delta_1i_identity_check(ctx: FieldCtx, rest: Sequence[int], i: int) -> bool:
    """Compare Delta_{1i}(rest) with Delta_1 Delta_{i-1}^2 / Delta^2 + Delta_i Delta^2."""
    m = len(rest)
    if not 2 <= i <= m:
        raise ValueError(f"need 2 <= i <= {m}")
    d = moore_det(ctx, rest)
    if d == 0:
        raise DependentBasisError("the fixed variables are linearly dependent")
    lhs = delta_ij(ctx, rest, 1, i)
    d2 = ctx.mul(d, d)
    dm1 = delta_i(ctx, rest, i - 1)
    rhs = ctx.div(ctx.mul(delta_i(ctx, rest, 1), ctx.mul(dm1, dm1)), d2) ^ ctx.mul(delta_i(ctx, rest, i), d2)
    return lhs == rhs


def fk_first_var_coeffs_fast(ctx: FieldCtx, rest: Sequence[int]) -> Tuple[List[int], int]:
    """Same output as ``fk_first_var_coeffs``, read off the subspace polynomial of rest.

    With L = sum b_i X^(2^i) vanishing on span(rest): b_i = Delta_i / Delta and
    b_0 = Delta (the product of the nonzero span elements), so the linear part
    is b_1 * L and the constant is b_0^2.  O(k^2) products instead of k
    determinants.
    """
    b = subspace_poly(ctx, rest)
    return [ctx.mul(b[1], c) for c in b], ctx.mul(b[0], b[0])


def solve_first_var(ctx: FieldCtx, rest: Sequence[int]) -> List[int]:
    """Every x in GF(2^n) with F_k(x, rest) = 0 as a polynomial identity.

    The solutions are an affine GF(2)-space (possibly empty).  Some of them may
    lie in span(rest); the caller filters those out.
    """
    lin, const = fk_first_var_coeffs_fast(ctx, rest)
    return ctx.linearized_map(lin).solve(const)


def independent_with(x: int, rest: Sequence[int]) -> bool:
    return gf2lin.is_independent(list(rest) + [x])


def random_independent(ctx: FieldCtx, k: int, rng) -> List[int]:
    out: List[int] = []
    pivots: dict[int, int] = {}
    while len(out) < k:
        v = rng.randrange(1, 1 << ctx.n)
        r = gf2lin.reduce(v, pivots)
        if r:
            pivots[r.bit_length() - 1] = r
            out.append(v)
    return out


__all__ = [
    "DependentBasisError",
    "Subspace",
    "affine_sum_nonzero_check",
    "delta_1i_identity_check",
    "delta_i",
    "delta_ij",
    "det",
    "eval_Fk",
    "eval_linearized",
    "fk_first_var_coeffs",
    "fk_first_var_coeffs_fast",
    "frobenius_det",
    "independent_with",
    "inverse_sum",
    "moore_det",
    "random_independent",
    "solve_first_var",
    "subspace_poly",
]

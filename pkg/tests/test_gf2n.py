import pytest
from hypothesis import given, strategies as st

from sumfree import binpoly, gf2lin
from sumfree.gf2n import FieldError, default_modulus, field_new, find_normal_element, from_hex, to_hex

from oracles import gf_inv_brute, gf_mul, irreducible_brute


@st.composite
def field_and_elems(draw, count=2, n_min=2, n_max=64):
    n = draw(st.integers(n_min, n_max))
    ctx = field_new(n)
    return (ctx, *[draw(st.integers(0, (1 << n) - 1)) for _ in range(count)])


def test_default_moduli():
    assert field_new(2).modulus == 0b111
    assert field_new(3).modulus == 0b1011
    assert to_hex(field_new(3).modulus) == "b"


@pytest.mark.parametrize("n", range(2, 13))
def test_default_modulus_is_lexicographically_first(n):
    first = next(m for m in range((1 << n) | 1, 1 << (n + 1)) if irreducible_brute(m))
    assert default_modulus(n) == first


def test_field_new_errors():
    with pytest.raises(FieldError):
        field_new(4, 0b111)
    with pytest.raises(FieldError):
        field_new(4, 0b10101)  # (X^2+X+1)^2
    for n in (0, 1, 65):
        with pytest.raises(FieldError):
            field_new(n)


def test_small_arithmetic():
    gf4 = field_new(2)
    assert gf4.mul(0b10, 0b10) == 0b11
    gf8 = field_new(3)
    assert gf8.inv(0b10) == 0b101
    assert gf8.inv(0) == 0 and gf8.inv(1) == 1


@given(field_and_elems(n_max=12))
def test_mul_matches_schoolbook(t):
    ctx, a, b = t
    assert ctx.mul(a, b) == gf_mul(a, b, ctx.modulus)


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_inverse_exhaustive_small(n):
    ctx = field_new(n)
    for a in range(1 << n):
        assert ctx.inv(a) == gf_inv_brute(a, n, ctx.modulus)


@given(field_and_elems(count=1))
def test_inverse_two_routes(t):
    ctx, a = t
    assert ctx.inv(a) == ctx.inv_pow(a)
    if a:
        assert ctx.mul(a, ctx.inv(a)) == 1
        assert ctx.pow(a, (1 << ctx.n) - 1) == 1
    assert ctx.add(a, a) == 0
    assert ctx.pow(a, 0) == 1


@given(field_and_elems(count=3, n_max=40), st.integers(0, 200))
def test_ring_laws_and_frobenius(t, i):
    ctx, a, b, c = t
    assert ctx.mul(a, b ^ c) == ctx.mul(a, b) ^ ctx.mul(a, c)
    assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))
    assert ctx.frobenius(ctx.mul(a, b), i) == ctx.mul(ctx.frobenius(a, i), ctx.frobenius(b, i))
    assert ctx.frobenius(a ^ b, i) == ctx.frobenius(a, i) ^ ctx.frobenius(b, i)
    assert ctx.frobenius(a, 0) == a and ctx.frobenius(a, ctx.n) == a


@given(field_and_elems(count=1, n_max=36), st.data())
def test_relative_trace_lands_in_subfield(t, data):
    ctx, a = t
    l = data.draw(st.sampled_from(binpoly.divisors(ctx.n)))
    tr = ctx.rel_trace(a, l)
    assert ctx.frobenius(tr, l) == tr
    assert ctx.rel_trace(a, ctx.n) == a
    assert ctx.rel_trace(0, l) == 0


def test_relative_trace_on_subfield_elements():
    ctx = field_new(12)
    for l in (2, 3, 4, 6):
        for a in gf2lin.span(ctx.subfield_basis(l)):
            assert ctx.rel_trace(a, l) == (a if (12 // l) % 2 else 0)
    with pytest.raises(FieldError):
        ctx.rel_trace(3, 5)


@pytest.mark.parametrize("n", range(2, 17))
def test_normal_element_is_smallest(n):
    ctx = field_new(n)
    a = find_normal_element(ctx)
    assert gf2lin.rank(ctx.conjugates(a)) == n
    assert not any(ctx.is_normal(b) for b in range(1, a))


def test_normal_element_examples():
    assert field_new(2).normal_element() == 0b10
    for n in (2, 7, 20, 33, 64):
        ctx = field_new(n)
        assert not ctx.is_normal(1)
        assert ctx.is_normal(ctx.normal_element())


@given(field_and_elems(count=2, n_max=30), st.integers(0, 1 << 12), st.integers(0, 1 << 12))
def test_sigma_polynomial_action(t, g, h):
    ctx, x, y = t
    assert ctx.apply_sigma_poly(1, x) == x
    assert ctx.apply_sigma_poly(binpoly.xn_plus_1(ctx.n), x) == 0
    gh = binpoly.poly_mul(g, h)
    assert ctx.apply_sigma_poly(gh, x) == ctx.apply_sigma_poly(g, ctx.apply_sigma_poly(h, x))
    assert ctx.apply_sigma_poly(g, x ^ y) == ctx.apply_sigma_poly(g, x) ^ ctx.apply_sigma_poly(g, y)


def test_subfield_basis_is_closed():
    ctx = field_new(12)
    for l in (1, 2, 3, 4, 6, 12):
        basis = ctx.subfield_basis(l)
        assert len(basis) == l
        for a in basis:
            assert ctx.frobenius(a, l) == a


def test_hex_roundtrip():
    assert from_hex(to_hex(0xDEADBEEF)) == 0xDEADBEEF
    assert field_new(3).to_json() == {"n": 3, "modulus": "b"}


def test_element_range_check():
    with pytest.raises(FieldError):
        field_new(4).check(16)

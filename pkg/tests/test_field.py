import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wildtorsion.errors import InputError
from wildtorsion.field import (
    FieldCtx,
    field_make,
    is_irreducible,
    is_prime,
    primitive_root_of_unity,
    smallest_irreducible,
)

# (p, e) pairs small enough to enumerate
SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (5, 2), (2, 6), (7, 2)]


def make(p, e):
    if e == 1:
        return FieldCtx(p)
    return FieldCtx(p, e, smallest_irreducible(p, e))


@st.composite
def field_triples(draw):
    ctx = make(*draw(st.sampled_from(SMALL_FIELDS)))
    codes = st.integers(0, ctx.order - 1)
    return tuple(ctx.from_code(draw(codes)) for _ in range(3))


def test_field_make_examples():
    f = field_make(7, 3)
    assert (f.p, f.e) == (7, 1)
    f = field_make(2, 3)
    assert (f.p, f.e) == (2, 2)
    assert f.modulus == (1, 1, 1)
    f = field_make(5, 1)
    assert (f.p, f.e) == (5, 1)


def test_field_make_errors():
    with pytest.raises(InputError):
        field_make(4, 1)
    with pytest.raises(InputError):
        field_make(3, 6)  # 3 | d
    with pytest.raises(InputError):
        field_make(5, 97)
    with pytest.raises(InputError):
        field_make(101, 1)


def test_arithmetic_examples():
    f5 = FieldCtx(5)
    assert f5(3) + f5(4) == f5(2)
    f4 = field_make(2, 3)
    a = f4.gen
    assert a * a == a + 1
    f7 = FieldCtx(7)
    assert f7(3).inv() == f7(5)
    with pytest.raises(ZeroDivisionError):
        f7(0).inv()


def test_ctx_mismatch():
    with pytest.raises(InputError):
        FieldCtx(5)(1) + FieldCtx(7)(1)


def test_primitive_roots():
    assert primitive_root_of_unity(FieldCtx(7), 3) == 2
    assert primitive_root_of_unity(FieldCtx(5), 1) == 1
    assert primitive_root_of_unity(FieldCtx(5), 4) == 2
    with pytest.raises(InputError):
        primitive_root_of_unity(FieldCtx(5), 3)


@pytest.mark.parametrize("p,d", [(2, 3), (2, 5), (3, 2), (3, 4), (5, 3), (5, 6), (7, 9), (2, 7), (3, 13)])
def test_primitive_root_order(p, d):
    ctx = field_make(p, d)
    z = primitive_root_of_unity(ctx, d)
    assert (z**d).is_one()
    assert all(not (z**j).is_one() for j in range(1, d))
    # smallest such element by code
    for x in itertools.islice(ctx.elements(), 1, z.code):
        assert not ((x**d).is_one() and all(not (x**j).is_one() for j in range(1, d)))


def test_smallest_irreducible_is_smallest():
    for p, e in [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2)]:
        f = smallest_irreducible(p, e)
        assert is_irreducible(f, p)
        code = sum(c * p**i for i, c in enumerate(f[:-1]))
        for smaller in range(code):
            g = tuple((smaller // p**i) % p for i in range(e)) + (1,)
            assert not is_irreducible(g, p)


def test_reducible_modulus_rejected():
    with pytest.raises(InputError):
        FieldCtx(2, 2, (1, 0, 1))  # (x + 1)^2


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@given(field_triples())
def test_field_axioms(abc):
    a, b, c = abc
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0
    if a:
        assert a * a.inv() == 1
        assert (b / a) * a == b


@pytest.mark.parametrize("p,e", [(p, e) for p, e in SMALL_FIELDS if p**e <= 64])
def test_frobenius_additive_exhaustive(p, e):
    ctx = make(p, e)
    elems = list(ctx.elements())
    frob = {x.code: x.frobenius() for x in elems}
    for x in elems:
        for y in elems:
            assert frob[(x + y).code] == frob[x.code] + frob[y.code]


def test_multiplicative_group_cyclic():
    ctx = make(3, 2)
    z = primitive_root_of_unity(ctx, 8)
    assert len({(z**k).code for k in range(8)}) == 8

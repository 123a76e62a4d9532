import itertools

import pytest

from quadfq.gf import (Elem, FieldError, FieldMismatchError, extend_field,
                       field_of_order, inv, is_irreducible, is_square,
                       make_field, power)

SMALL = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]


def test_prime_fields():
    assert make_field(2).q == 2
    assert make_field(3, 1).q == 3


def test_f4_modulus_is_the_only_irreducible_quadratic():
    # all four monic quadratics over F_2, checked by hand for roots
    candidates = {(0, 0, 1): False, (1, 0, 1): False, (0, 1, 1): False, (1, 1, 1): True}
    for poly, irreducible in candidates.items():
        has_root = any(sum(c * x ** k for k, c in enumerate(poly)) % 2 == 0 for x in (0, 1))
        assert (not has_root) == irreducible
        assert is_irreducible(poly, 2) == irreducible
    assert make_field(2, 2).modulus == (1, 1, 1)


def test_lowest_modulus_is_deterministic():
    assert make_field(2, 3).modulus == (1, 1, 0, 1)   # t^3 + t + 1
    assert make_field(3, 2).modulus == (1, 0, 1)      # t^2 + 1


@pytest.mark.parametrize("p,m,cap", [(4, 1, 64), (6, 1, 64), (2, 0, 64), (2, 7, 64), (3, 2, 8)])
def test_make_field_errors(p, m, cap):
    with pytest.raises(FieldError):
        make_field(p, m, cap)


def test_reducible_modulus_rejected():
    from quadfq.gf import FieldSpec
    with pytest.raises(FieldError):
        FieldSpec(2, 2, (1, 0, 1))


def test_field_of_order():
    assert field_of_order(9) == make_field(3, 2)
    with pytest.raises(FieldError):
        field_of_order(12)


def test_arithmetic_examples():
    F3 = make_field(3)
    assert inv(F3.elem(2)) == F3.elem(2)
    F4 = make_field(2, 2)
    t = F4.elem([0, 1])
    assert t * t == F4.elem([1, 1])
    for p, m in SMALL:
        F = make_field(p, m)
        for a in range(1, F.q):
            assert power(Elem(F, a), F.q - 1) == F.one


def test_inverse_of_zero():
    F = make_field(5)
    with pytest.raises(ZeroDivisionError):
        F.zero.inverse()


def test_cross_field_operands():
    a, b = make_field(3).one, make_field(5).one
    with pytest.raises(FieldMismatchError):
        a + b
    with pytest.raises(FieldMismatchError):
        a * b


def test_elem_operators():
    F = make_field(7)
    a, b = F.elem(3), F.elem(5)
    assert (a + b).value == 1
    assert (a - b).value == 5
    assert (a / b * b) == a
    assert (-a).value == 4
    assert 2 * a == F.elem(6)
    assert 1 - a == F.elem(5)
    assert repr(Elem(make_field(2, 2), 3)) == "[1,1]"


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)])
def test_field_axioms_exhaustive(p, m):
    F = make_field(p, m)
    els = list(F.elements())
    for a, b, c in itertools.product(els, repeat=3):
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    for a, b in itertools.product(els, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        assert F.add(a, 0) == a and F.mul(a, 1) == a
        if a:
            assert F.mul(a, F.inv(a)) == 1


def test_is_square_examples():
    assert not is_square(make_field(3).elem(2))
    assert is_square(make_field(2).elem(1))
    assert is_square(make_field(5).elem(4))


@pytest.mark.parametrize("p,m", SMALL)
def test_square_counts(p, m):
    F = make_field(p, m)
    nonzero_squares = sum(F.is_square(a) for a in range(1, F.q))
    assert nonzero_squares == (F.q - 1 if p == 2 else (F.q - 1) // 2)
    if p != 2:
        for a in range(1, F.q):
            assert F.is_square(a) == (F.pow(a, (F.q - 1) // 2) == 1)
    for a in range(F.q):
        if F.is_square(a):
            r = F.sqrt(a)
            assert F.mul(r, r) == a


def test_extend_field():
    ext = extend_field(make_field(2), 2)
    assert ext.field.q == 4
    assert ext.embed(make_field(2).one) == ext.field.one
    assert extend_field(make_field(3), 2).field.q - 1 == 8


@pytest.mark.parametrize("p,m,k", [(2, 1, 3), (3, 1, 2), (2, 2, 2), (2, 2, 3), (2, 3, 2)])
def test_extension_embedding_is_a_homomorphism(p, m, k):
    base = make_field(p, m)
    ext = extend_field(base, k)
    E = ext.field
    img = ext.image
    assert len(set(img)) == base.q
    for a, b in itertools.product(base.elements(), repeat=2):
        assert img[base.add(a, b)] == E.add(img[a], img[b])
        assert img[base.mul(a, b)] == E.mul(img[a], img[b])
    # the image is exactly the fixed field of x -> x^q
    fixed = {x for x in E.elements() if E.pow(x, base.q) == x}
    assert fixed == set(img)


def test_extension_cap():
    with pytest.raises(FieldError):
        extend_field(make_field(3), 4)


def test_serialization():
    F = make_field(2, 2)
    assert F.serialize(3) == [1, 1]
    assert F.deserialize([1, 1]) == 3
    assert make_field(5).serialize(4) == 4
    assert make_field(5).deserialize(9) == 4

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from partrank.errors import PrankError
from partrank.fields import (arith, ext_coords, extension, is_irreducible, make_field,
                             smallest_irreducible)

SPECS = ["Q", "GF(2)", "GF(3)", "GF(7)", "GF(4)", "GF(8)", "GF(9)", "GF(16)", "GF(25)", "GF(27)"]


def test_make_prime():
    F = make_field("GF(7)")
    assert F.kind == "PRIME" and F.p == 7 and F.order == 7


def test_make_gf4_modulus():
    F = make_field("GF(4)")
    assert F.kind == "EXT" and (F.p, F.e) == (2, 2)
    assert F.modulus == (1, 1, 1)  # x^2 + x + 1, low degree first


def test_unique_irreducible_quadratic_over_gf2():
    quads = [(c0, c1, 1) for c0 in range(2) for c1 in range(2)]
    assert [q for q in quads if is_irreducible(q, 2)] == [(1, 1, 1)]


def test_smallest_irreducible_gf9():
    assert smallest_irreducible(3, 2) == (1, 0, 1)


@pytest.mark.parametrize("spec,code", [
    ("GF(6)", "NON_PRIME"),
    ("GF(1)", "NON_PRIME"),
    ("GF(2^2;1,0,1)", "REDUCIBLE_MODULUS"),
    ("R", "UNSUPPORTED"),
])
def test_make_errors(spec, code):
    with pytest.raises(PrankError) as exc:
        make_field(spec)
    assert exc.value.code == code


def test_explicit_modulus_and_power_spelling():
    assert make_field("GF(2^2)") == make_field("GF(4)")
    assert make_field("GF(2^2;1,1,1)") == make_field("GF(4)")


def test_inv_three_mod_seven():
    F = make_field("GF(7)")
    assert arith(None, F(3), "INV").value == 5


def test_omega_squared():
    F = make_field("GF(4)")
    w = F.from_digits([0, 1])
    assert F.mul(w, w) == F.from_digits([1, 1])
    assert (F(w) * F(w)).value == F.from_digits([1, 1])


def test_inv_zero():
    F = make_field("GF(5)")
    with pytest.raises(PrankError) as exc:
        arith(None, F(0), "INV")
    assert exc.value.code == "DIV_BY_ZERO"


def test_mismatched_fields():
    with pytest.raises(PrankError) as exc:
        make_field("GF(5)")(1) + make_field("GF(7)")(1)
    assert exc.value.code == "FIELD_MISMATCH"


@pytest.mark.parametrize("L,x,want", [
    ("GF(4)", (0, 0), (0, 0)),
    ("GF(4)", (1, 1), (1, 1)),
    ("GF(9)", (1, 0), (1, 0)),
])
def test_ext_coords_examples(L, x, want):
    F = make_field(L)
    assert tuple(ext_coords(F, F.from_digits(list(x)))) == want


@pytest.mark.parametrize("spec", SPECS)
def test_field_axioms_sampled(spec):
    F = make_field(spec)
    rng = random.Random(11)
    for _ in range(1000):
        a, b, c = (F.random(rng) for _ in range(3))
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        if a != 0:
            assert F.mul(a, F.inv(a)) == F.one


@pytest.mark.parametrize("K,L", [("GF(2)", "GF(4)"), ("GF(2)", "GF(8)"), ("GF(3)", "GF(9)"),
                                 ("GF(4)", "GF(16)"), ("GF(3)", "GF(27)")])
def test_ext_coords_linear_and_roundtrip(K, L):
    K, L = make_field(K), make_field(L)
    ext = extension(K, L)
    rng = random.Random(5)
    for _ in range(1000):
        x, y = L.random(rng), L.random(rng)
        cx, cy = ext.coords(x), ext.coords(y)
        assert tuple(ext.coords(L.add(x, y))) == tuple(K.add(a, b) for a, b in zip(cx, cy))
        assert ext.recombine(cx) == x


@pytest.mark.parametrize("K,L", [("GF(2)", "GF(4)"), ("GF(4)", "GF(16)"), ("GF(3)", "GF(9)")])
def test_embedding_is_a_homomorphism(K, L):
    K, L = make_field(K), make_field(L)
    ext = extension(K, L)
    for a in K.elements():
        for b in K.elements():
            assert ext.embed(K.add(a, b)) == L.add(ext.embed(a), ext.embed(b))
            assert ext.embed(K.mul(a, b)) == L.mul(ext.embed(a), ext.embed(b))


def test_not_an_extension():
    with pytest.raises(PrankError) as exc:
        extension(make_field("GF(4)"), make_field("GF(8)"))
    assert exc.value.code == "NOT_AN_EXTENSION"


@given(st.sampled_from(SPECS), st.integers(0, 10**6))
@settings(max_examples=200, deadline=None)
def test_literal_roundtrip(spec, seed):
    F = make_field(spec)
    x = F.random(random.Random(seed))
    assert F.parse(F.format(x)) == x


def test_rational_literals():
    Q = make_field("Q")
    assert Q.format(Fraction(4, 2)) == "2"
    assert Q.format(Fraction(-1, 3)) == "-1/3"
    assert Q.parse("-1/3") == Fraction(-1, 3)


@pytest.mark.parametrize("spec", ["GF(4)", "GF(9)", "GF(8)"])
def test_frobenius_fixes_prime_field(spec):
    F = make_field(spec)
    fixed = [a for a in F.elements() if F.frobenius(a) == a]
    assert len(fixed) == F.p

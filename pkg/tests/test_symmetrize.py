import random
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from partrank.errors import PrankError
from partrank.fields import make_field
from partrank.harness import random_form, random_tensor
from partrank.poly import parse_form
from partrank.search import prk_exact, strength_exact
from partrank.symmetrize import dconst, polarize_iota, sym_pi, theorem_char_ok
from partrank.tensor import Tensor

Q, F5 = make_field("Q"), make_field("GF(5)")


def test_pi_examples():
    t = Tensor.from_dict(Q, (2, 2, 2), {(0, 0, 0): 1})
    assert sym_pi(t) == parse_form("x1^3", Q, 2)
    t = Tensor.from_dict(Q, (2, 2), {(0, 1): 1, (1, 0): 1})
    assert sym_pi(t) == parse_form("2*x1*x2", Q, 2)
    t = Tensor.from_dict(Q, (2, 2), {(0, 1): 1, (1, 0): -1})
    assert sym_pi(t).is_zero()


def test_pi_not_cubical():
    with pytest.raises(PrankError) as exc:
        sym_pi(Tensor(Q, (2, 3)))
    assert exc.value.code == "NOT_CUBICAL"


def test_iota_examples():
    assert polarize_iota(parse_form("x1*x2", Q, 2)) == Tensor.from_dict(Q, (2, 2), {(0, 1): 1, (1, 0): 1})
    assert polarize_iota(parse_form("x1^2", Q, 2)) == Tensor.from_dict(Q, (2, 2), {(0, 0): 2})
    perms = {(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)}
    assert polarize_iota(parse_form("x1*x2*x3", Q, 3)) == Tensor.from_dict(Q, (3, 3, 3), {p: 1 for p in perms})


@pytest.mark.parametrize("d,want", [(2, 2), (3, 3), (4, 6)])
def test_dconst(d, want):
    assert dconst(d) == want


def test_char_gate():
    assert theorem_char_ok(Q, 9) and theorem_char_ok(F5, 4)
    assert not theorem_char_ok(F5, 5)


@given(st.sampled_from(["Q", "GF(5)", "GF(7)"]), st.integers(1, 4), st.integers(1, 3), st.integers(0, 10**6))
@settings(max_examples=200, deadline=None)
def test_pi_iota_identity(spec, d, n, seed):
    F = make_field(spec)
    f = random_form(F, n, d, random.Random(seed))
    assert sym_pi(polarize_iota(f)) == f.scale(F.from_int(factorial(d)))


@given(st.sampled_from(["GF(2)", "GF(3)"]), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_strength_of_pi_bounded_by_prk(spec, seed):
    F = make_field(spec)
    t = random_tensor(F, (2, 2, 2), random.Random(seed))
    assert strength_exact([sym_pi(t)]).value <= prk_exact([t]).value


@given(st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_prk_of_iota_bounded_by_strength(seed):
    f = random_form(F5, 2, 3, random.Random(seed))
    s = strength_exact([f]).value
    assert prk_exact([polarize_iota(f)]).value <= dconst(3) * s

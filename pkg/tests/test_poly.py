import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from partrank.errors import PrankError
from partrank.fields import make_field
from partrank.poly import (Form, form_eval, form_mul, form_partial, monomials, monomials_of_degree,
                           parse_form)

Q, F2, F3, F5 = (make_field(s) for s in ("Q", "GF(2)", "GF(3)", "GF(5)"))


def rform(F, n, d, rng):
    return Form.from_vector(F, n, d, [F.random(rng) for _ in monomials_of_degree(n, d)])


def test_mul_examples():
    assert form_mul(parse_form("x1", Q, 2), parse_form("x2", Q, 2)) == parse_form("x1*x2", Q, 2)
    s = parse_form("x1 + x2", Q, 2)
    assert form_mul(s, s) == parse_form("x1^2 + 2*x1*x2 + x2^2", Q, 2)
    s2 = parse_form("x1 + x2", F2, 2)
    assert form_mul(s2, s2) == parse_form("x1^2 + x2^2", F2, 2)


def test_partial_examples():
    assert form_partial(parse_form("x1^2*x2", Q, 2), 1) == parse_form("2*x1*x2", Q, 2)
    assert form_partial(parse_form("x2^3", Q, 2), 1).is_zero()
    assert form_partial(parse_form("x1^2", F2, 1), 1).is_zero()


def test_partial_bad_index():
    with pytest.raises(PrankError) as exc:
        form_partial(parse_form("x1", Q, 1), 2)
    assert exc.value.code == "BAD_INDEX"


def test_eval_examples():
    assert form_eval(parse_form("x1*x2 + x3^2", F3, 3), [1, 1, 1]) == 2
    assert form_eval(parse_form("x1^2 + x2^2", F5, 2), [1, 2]) == 0
    assert form_eval(parse_form("x1^2 + 3*x1*x2", F5, 2), [0, 0]) == 0


@pytest.mark.parametrize("n,D,count", [(2, 1, 3), (1, 5, 6), (3, 2, 10)])
def test_monomial_counts(n, D, count):
    ms = monomials(n, D)
    assert len(ms) == count == comb(n + D, n)
    assert len(set(ms)) == count


def test_monomial_order_small():
    assert monomials(2, 1) == ((0, 0), (1, 0), (0, 1))


def test_zero_forms_compare_equal():
    assert Form.zero(F3, 2, 1) == Form.zero(F3, 2, 4)


def test_mismatch_errors():
    with pytest.raises(PrankError) as exc:
        form_mul(parse_form("x1", F3, 2), parse_form("x1", F5, 2))
    assert exc.value.code == "FIELD_MISMATCH"
    with pytest.raises(PrankError) as exc:
        form_mul(parse_form("x1", F3, 2), parse_form("x1", F3, 3))
    assert exc.value.code == "VAR_MISMATCH"


@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.integers(0, 10**6))
@settings(max_examples=100, deadline=None)
def test_homogeneity_preserved(n, d1, d2, seed):
    rng = random.Random(seed)
    a, b = rform(F5, n, d1, rng), rform(F5, n, d2, rng)
    p = form_mul(a, b)
    assert all(sum(m) == d1 + d2 for m in p.terms)
    for i in range(1, n + 1):
        assert all(sum(m) == d1 - 1 for m in form_partial(a, i).terms)


@pytest.mark.parametrize("spec", ["Q", "GF(5)", "GF(7)"])
def test_euler_relation(spec):
    F = make_field(spec)
    rng = random.Random(3)
    for _ in range(500):
        n, d = rng.randint(1, 4), rng.randint(1, 4)
        if 0 < F.char <= d:
            continue
        f = rform(F, n, d, rng)
        acc = Form.zero(F, n, d)
        for i in range(n):
            if f.degree >= 1:
                acc = acc + form_mul(Form.var(F, n, i), f.partial(i))
        assert acc == f.scale(F.from_int(d))


@given(st.integers(1, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 10**6))
@settings(max_examples=150, deadline=None)
def test_eval_is_multiplicative(n, d1, d2, seed):
    rng = random.Random(seed)
    a, b = rform(F5, n, d1, rng), rform(F5, n, d2, rng)
    P = [F5.random(rng) for _ in range(n)]
    assert form_eval(form_mul(a, b), P) == F5.mul(form_eval(a, P), form_eval(b, P))


def test_items_graded_lex_and_str():
    f = parse_form("x2^2 + x1*x2 + 2*x1^2", F5, 2)
    assert [m for m, _ in f.items()] == [(2, 0), (1, 1), (0, 2)]
    assert str(f) == "2*x1^2 + x1*x2 + x2^2"


def test_substitute_swaps_variables():
    f = parse_form("x1^2 + 3*x1*x2", F5, 2)
    g = f.substitute([[0, 1], [1, 0]])
    assert g == parse_form("x2^2 + 3*x1*x2", F5, 2)

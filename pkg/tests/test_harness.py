import random

from partrank.certificate import check_decomposition
from partrank.fields import make_field
from partrank.harness import (descent_instance, suite_coeff_extract, suite_descent, suite_pi_iota,
                              suite_prop_sym)


def test_pi_iota_counts():
    r = suite_pi_iota(make_field("GF(5)"), 3, 2, 50, seed=7)
    assert r.passed == 50 and r.ok


def test_pi_iota_skips_small_char():
    r = suite_pi_iota(make_field("GF(3)"), 3, 2, 10)
    assert r.skipped == 10 and r.note == "SKIPPED_CHAR"


def test_prop_sym_d2_gf3():
    r = suite_prop_sym(make_field("GF(3)"), 2, 2)
    assert r.ok and r.passed == 3**4 + 3**3


def test_descent_suite():
    r = suite_descent(make_field("GF(2)"), 2, 30, seed=1)
    assert r.ok and r.passed == 30


def test_coeff_extract_suite():
    r = suite_coeff_extract(make_field("GF(5)"), (2, 2, 2), 20)
    assert r.ok and r.passed == 20


def test_instances_are_consistent():
    K, L = make_field("GF(3)"), make_field("GF(9)")
    rng = random.Random(0)
    for _ in range(30):
        items, dec = descent_instance(K, L, rng)
        assert dec.field == L and dec.coeffs[-1] != 0
        # the L-certificate decomposes the embedded combination
        from partrank.fields import extension
        ext = extension(K, L)
        check_decomposition(dec, [x.map_field(ext.embed, L) for x in items])

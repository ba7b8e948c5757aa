import random

import pytest

from partrank.eqmine import (LocusSpec, cubical_prk_bound, degree_bound, degree_bound_details,
                             enumerate_image, min_n, mine_equation, prk_bound, sample_image,
                             sample_tuple, vanishes_on_samples)
from partrank.errors import PrankError
from partrank.fields import make_field
from partrank import linalg
from partrank.poly import Polynomial
from partrank.search import prk_exact
from partrank.tensor import flattening_rank

F2, F3, F101 = make_field("GF(2)"), make_field("GF(3)"), make_field("GF(101)")


def test_rank_one_sample():
    spec = LocusSpec(d=2, shape=(3, 3), r=1)
    (t,) = sample_tuple(spec, F3, random.Random(0))
    assert flattening_rank(t, (0,)) <= 1


def test_r_zero_is_zero():
    assert not any(sample_image(LocusSpec(d=3, shape=(2, 2, 2), r=0), F3, 5))


def test_samples_have_bounded_prk():
    spec = LocusSpec(d=3, shape=(2, 2, 2), r=1, partitions=((1,),))
    rng = random.Random(3)
    for _ in range(20):
        assert prk_exact(sample_tuple(spec, F3, rng)).value <= 1


def det_poly(F):
    return Polynomial(F, 4, {(1, 0, 0, 1): 1, (0, 1, 1, 0): F.neg(1)})


def test_mined_determinant():
    eq = mine_equation(LocusSpec(d=2, shape=(2, 2), r=1), F101, 2, seed=3)
    p = eq.polynomial
    lead = p.terms[(1, 0, 0, 1)]
    assert p == det_poly(F101).scale(lead)


def test_linear_equations_none():
    assert mine_equation(LocusSpec(d=2, shape=(2, 2), r=1), F101, 1) is None


def test_two_by_three_minors():
    eq = mine_equation(LocusSpec(d=2, shape=(2, 3), r=1), F101, 2, seed=1)
    assert eq.kernel_dim >= 3
    # coordinates x1..x6 = row-major entries; minors (a, b) columns
    minors = []
    for a, b in [(0, 1), (0, 2), (1, 2)]:
        m = [0] * 6
        m[a], m[3 + b], m[b], m[3 + a] = 1, 1, 1, 1
        minors.append({tuple(1 if i in (a, 3 + b) else 0 for i in range(6)): 1,
                       tuple(1 if i in (b, 3 + a) else 0 for i in range(6)): 100})
    monos = sorted({mo for p in eq.kernel for mo in p.terms} | {mo for mi in minors for mo in mi})
    K = [[p.terms.get(mo, 0) for mo in monos] for p in eq.kernel]
    r = linalg.rank(K, F101)
    for mi in minors:
        assert linalg.rank(K + [[mi.get(mo, 0) for mo in monos]], F101) == r


def test_mined_equation_vanishes_on_fresh_samples():
    spec = LocusSpec(d=2, shape=(2, 2), r=1)
    eq = mine_equation(spec, F101, 2)
    assert vanishes_on_samples(eq.polynomial, spec, F101, 1000, seed=12345)


def test_dense_form_locus_has_no_equation():
    # products of two binary linear forms fill a dense subset of the quadrics
    assert mine_equation(LocusSpec(d=2, nvars=2, r=1), F101, 3) is None


def test_mined_form_locus():
    # ternary quadrics of strength <= 1 have vanishing determinant
    spec = LocusSpec(d=2, nvars=3, r=1)
    eq = mine_equation(spec, F101, 3)
    assert eq is not None and eq.polynomial.degree == 3
    assert vanishes_on_samples(eq.polynomial, spec, F101, 1000, seed=7)


def test_exhaustive_soundness_gf2():
    spec = LocusSpec(d=2, shape=(2, 2), r=1)
    eq = mine_equation(spec, F2, 2)
    pts = list(enumerate_image(spec, F2))
    assert len(pts) == 10  # zero plus the nine rank-one matrices
    assert all(eq.polynomial.evaluate(p) == 0 for p in pts)


def test_cap_exceeded():
    with pytest.raises(PrankError) as exc:
        mine_equation(LocusSpec(d=3, shape=(3, 3, 3), r=1), F101, 3, max_entries=1000)
    assert exc.value.code == "CAP_EXCEEDED"


@pytest.mark.parametrize("args,want", [((3, 1, 1), 2), ((2, 1, 1), 3), ((4, 1, 2), 3)])
def test_min_n(args, want):
    assert min_n(*args) == want


def test_min_n_monotone():
    for d in range(2, 6):
        for m in range(1, 4):
            for r in range(0, 11):
                n = min_n(d, m, r)
                assert min_n(d, m, r + 1) >= n
                assert min_n(d, m + 1, r) >= n


@pytest.mark.parametrize("d,m,shape,want", [(3, 1, (2, 2, 2), 12), (2, 1, (3, 3), 6), (4, 2, (2, 2, 2, 2), 112)])
def test_prk_bound(d, m, shape, want):
    assert prk_bound(d, m, shape) == want
    if len(set(shape)) == 1:
        assert cubical_prk_bound(d, m, shape[0]) == want


@pytest.mark.parametrize("n", range(1, 8))
def test_prk_bound_matrix(n):
    assert prk_bound(2, 1, n) == 2 * n


def test_degree_bound_d3():
    info = degree_bound_details(3, 1, 1)
    assert info["n"] == 8
    assert abs(info["rhs_bits"] - 19.8) < 0.1
    D = info["D"]
    import math
    assert math.log2(D) >= info["rhs_bits"] > math.log2(D - 1)


def test_degree_bound_d2():
    info = degree_bound_details(2, 1, 1)
    assert info["n"] == 8 and info["D"] >= 1


def test_degree_bound_monotone():
    assert degree_bound(3, 1, 2) >= degree_bound(3, 1, 1)


def test_degree_bound_exact_rational_oracle():
    from fractions import Fraction
    import math
    # rhs with exact rationals for the polynomial parts, logs in high precision
    import mpmath
    with mpmath.workdps(80):
        n, d, m = 8, 3, 1
        rhs = 4 * mpmath.log(m * n**d, 2) + 4 * mpmath.mpf(Fraction(3, 4).numerator) / 4 * \
            mpmath.log(3 * mpmath.e / (mpmath.mpf(2) / 3 * n**d), 2)
        D = degree_bound(3, 1, 1)
        assert mpmath.log(D, 2) >= rhs > mpmath.log(D - 1, 2)


def test_locus_validation():
    with pytest.raises(PrankError):
        LocusSpec(d=3, shape=(2, 2), r=1)
    with pytest.raises(PrankError) as exc:
        LocusSpec(d=2, shape=(2, 2), r=1, partitions=((0, 1),))
    assert exc.value.code == "BAD_SUBSET"

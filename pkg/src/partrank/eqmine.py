"""Sampling bounded-rank loci, mining their equations, and explicit bounds.

A locus is the image of the parameterisation

    (g, t_1..t_{m-1}, (a_i, b_i)_i)  ->  g . (t_1, ..., t_{m-1}, sum_i a_i * b_i)

where ``g`` is an ``m x m`` matrix acting by taking linear combinations.  An
equation of degree ``<= D`` vanishing on the image is found as a kernel
vector of the matrix of all monomials of degree ``<= D`` evaluated at seeded
sample points.  Such an equation is only certified on samples; the sample
counts and field size are reported so the caller can judge confidence.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from math import comb, prod

import mpmath

from . import linalg
from .errors import PrankError
from .poly import Form, Polynomial, monomials, monomials_of_degree
from .tensor import Tensor, complement, linear_combination, outer


@dataclass(frozen=True)
class LocusSpec:
    """Parameters of a bounded (collective) rank locus.

    Tensor loci set ``shape`` and one slot subset per term in ``partitions``
    (0-based slots); form loci set ``nvars`` and one degree ``d_i`` per term
    in ``degree_splits``.  Omitted partitions / splits default to the first
    slot / degree 1 for every term.
    """

    d: int
    m: int = 1
    r: int = 1
    shape: tuple = ()
    partitions: tuple = ()
    nvars: int = 0
    degree_splits: tuple = ()

    def __post_init__(self):
        if self.m < 1 or self.r < 0 or self.d < 1:
            raise PrankError("UNSUPPORTED", "need d >= 1, m >= 1, r >= 0")
        if self.shape:
            if len(self.shape) != self.d:
                raise PrankError("SHAPE_MISMATCH", f"shape {self.shape} for d={self.d}")
            parts = self.partitions or ((0,),) * self.r
            parts = tuple(tuple(sorted(I)) for I in parts)
            if len(parts) != self.r:
                raise PrankError("UNSUPPORTED", f"{len(parts)} partitions for r={self.r}")
            for I in parts:
                if not I or len(I) >= self.d or I[0] < 0 or I[-1] >= self.d:
                    raise PrankError("BAD_SUBSET", f"{I} is not a proper nonempty slot subset")
            object.__setattr__(self, "shape", tuple(self.shape))
            object.__setattr__(self, "partitions", parts)
        else:
            if self.nvars < 1:
                raise PrankError("UNSUPPORTED", "a locus needs a shape or nvars")
            splits = tuple(self.degree_splits or (1,) * self.r)
            if len(splits) != self.r or any(not 1 <= s <= self.d - 1 for s in splits):
                raise PrankError("UNSUPPORTED", f"degree splits {splits} must lie in [1, d-1]")
            object.__setattr__(self, "degree_splits", splits)

    @property
    def is_tensor(self):
        return bool(self.shape)

    @property
    def block_size(self):
        if self.is_tensor:
            return prod(self.shape)
        return comb(self.nvars + self.d - 1, self.d)

    @property
    def n_coords(self):
        return self.m * self.block_size


def _random_tensor(F, shape, rng):
    return Tensor(F, shape, [F.random(rng) for _ in range(prod(shape))])


def _random_form(F, n, d, rng):
    return Form.from_vector(F, n, d, [F.random(rng) for _ in monomials_of_degree(n, d)])


def sample_tuple(spec, F, rng):
    """One point of the locus as a list of ``m`` Tensors or Forms."""
    if not F.is_finite:
        raise PrankError("INFINITE_FIELD", "sampling needs a finite field")
    m = spec.m
    g = [[F.random(rng) for _ in range(m)] for _ in range(m)]
    if spec.is_tensor:
        shape, d = spec.shape, spec.d
        free = [_random_tensor(F, shape, rng) for _ in range(m - 1)]
        low = Tensor(F, shape)
        for I in spec.partitions:
            a = _random_tensor(F, tuple(shape[j] for j in I), rng)
            b = _random_tensor(F, tuple(shape[j] for j in complement(I, d)), rng)
            low = low + outer(a, b, I, shape)
        gens = free + [low]
        return [linear_combination(row, gens) for row in g]
    n, d = spec.nvars, spec.d
    free = [_random_form(F, n, d, rng) for _ in range(m - 1)]
    low = Form.zero(F, n, d)
    for di in spec.degree_splits:
        low = low + _random_form(F, n, di, rng) * _random_form(F, n, d - di, rng)
    gens = free + [low]
    out = []
    for row in g:
        acc = Form.zero(F, n, d)
        for c, h in zip(row, gens):
            acc = acc + h.scale(c)
        out.append(acc)
    return out


def point_coords(objs):
    """Concatenated coordinates of a tuple of tensors / forms."""
    out = []
    for x in objs:
        out.extend(x.entries if isinstance(x, Tensor) else x.vector())
    return tuple(out)


def sample_image(spec, F, seed=0):
    """A seeded point of the locus as a flat coordinate tuple."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return point_coords(sample_tuple(spec, F, rng))


@dataclass
class MinedEquation:
    """A nonzero polynomial vanishing on every sample it was checked against."""

    polynomial: Polynomial
    degree_cap: int
    samples_used: int
    verification_samples: int
    seed: int
    field: object = None
    kernel: list = dc_field(default_factory=list)

    @property
    def kernel_dim(self):
        return len(self.kernel)


def _monomial_row(point, monos, D, F):
    powers = []
    for x in point:
        pw = [F.one]
        for _ in range(D):
            pw.append(F.mul(pw[-1], x))
        powers.append(pw)
    row = []
    for mono in monos:
        v = F.one
        for i, a in enumerate(mono):
            if a:
                v = F.mul(v, powers[i][a])
                if v == 0:
                    break
        row.append(v)
    return row


def mine_equation(spec, F, degree_cap, margin=16, seed=0, max_entries=4_000_000):
    """Find a polynomial of degree ``<= degree_cap`` vanishing on the locus.

    Returns ``None`` when the evaluation matrix has trivial kernel.  The
    reported polynomial is the kernel basis vector (reduced echelon form,
    monomials ordered graded-lex descending) with the smallest leading
    monomial, scaled to leading coefficient 1.
    """
    if not F.is_finite:
        raise PrankError("INFINITE_FIELD", "mining needs a finite field")
    N = spec.n_coords
    monos = monomials(N, degree_cap)
    n_samples = len(monos) + margin
    if n_samples * len(monos) > max_entries:
        raise PrankError("CAP_EXCEEDED", f"{n_samples} x {len(monos)} evaluation matrix")
    rng = random.Random(seed)
    rows = [_monomial_row(sample_image(spec, F, rng), monos, degree_cap, F) for _ in range(n_samples)]
    ker = linalg.kernel(rows, len(monos), F)
    if not ker:
        return None
    # echelon form with columns in descending graded-lex order, so each row
    # leads with its largest monomial
    order = sorted(range(len(monos)), key=lambda i: (sum(monos[i]), monos[i]), reverse=True)
    R, _ = linalg.rref([[v[i] for i in order] for v in ker], F)
    polys = [Polynomial(F, N, {monos[i]: c for i, c in zip(order, v) if c != 0}) for v in R]
    chosen = polys[-1]
    for _ in range(margin):
        pt = sample_image(spec, F, rng)
        if chosen.evaluate(pt) != 0:
            raise PrankError("VERIFICATION_FAILED",
                             f"mined polynomial is nonzero at a fresh sample (|K|={F.order}, "
                             f"{n_samples} samples); raise the margin or the field size")
    return MinedEquation(chosen, degree_cap, n_samples, margin, seed, F, polys)


def vanishes_on_samples(poly, spec, F, count, seed):
    rng = random.Random(seed)
    return all(poly.evaluate(sample_image(spec, F, rng)) == 0 for _ in range(count))


def enumerate_image(spec, F):
    """Every point of a tensor locus with ``m = 1`` by exhausting the factors.

    Only for tiny shapes over tiny fields.
    """
    if not spec.is_tensor or spec.m != 1:
        raise PrankError("UNSUPPORTED", "exhaustive image only for m = 1 tensor loci")
    shape, d = spec.shape, spec.d
    q = F.order
    factor_shapes = []
    for I in spec.partitions:
        factor_shapes.append(tuple(shape[j] for j in I))
        factor_shapes.append(tuple(shape[j] for j in complement(I, d)))
    sizes = [prod(s) for s in factor_shapes]
    seen = set()
    for values in itertools.product(range(q), repeat=sum(sizes)):
        pos = 0
        acc = Tensor(F, shape)
        for k, I in enumerate(spec.partitions):
            sa, sb = factor_shapes[2 * k], factor_shapes[2 * k + 1]
            a = Tensor(F, sa, values[pos:pos + sizes[2 * k]])
            pos += sizes[2 * k]
            b = Tensor(F, sb, values[pos:pos + sizes[2 * k + 1]])
            pos += sizes[2 * k + 1]
            acc = acc + outer(a, b, I, shape)
        if acc.entries not in seen:
            seen.add(acc.entries)
            yield acc.entries


# -- explicit bounds -------------------------------------------------------------

def _nbound_ok(n, d, m, r):
    return n**d > m * m + r * (n ** (d - 1) + n)


def min_n(d, m, r):
    """Least ``n`` with ``n^d > m^2 + r (n^(d-1) + n)``."""
    if d < 2 or m < 1 or r < 0:
        raise PrankError("UNSUPPORTED", "need d >= 2, m >= 1, r >= 0")
    n = 1
    while not _nbound_ok(n, d, m, r):
        n += 1
    return n


def prk_bound(d, m, shape):
    """``m * sum_{1 <= |I| <= d/2} prod_{j not in I} n_j``.

    ``shape`` may be a tuple of ``d`` sizes or a single int for cubical shape.
    """
    if d < 2:
        raise PrankError("UNSUPPORTED", "need d >= 2")
    if isinstance(shape, int):
        shape = (shape,) * d
    if len(shape) != d:
        raise PrankError("SHAPE_MISMATCH", f"shape {shape} for d={d}")
    total = 0
    for size in range(1, d // 2 + 1):
        for I in itertools.combinations(range(d), size):
            total += prod(shape[j] for j in range(d) if j not in I)
    return m * total


def cubical_prk_bound(d, m, n):
    """Closed form ``m * sum_{e=1}^{d/2} C(d, e) n^(d-e)`` of the cubical bound."""
    return m * sum(comb(d, e) * n ** (d - e) for e in range(1, d // 2 + 1))


def degree_bound_details(d, m, r, dps=60):
    """Evaluate the sufficient degree condition at ``n = ceil(4 (r + m^(2/d)))``.

    Returns ``{"n", "rhs_bits", "D"}`` where ``D`` is the least integer with
    ``log2 D >= 4 log2(m n^d) + 4 (m - 1/4) log2(3e / ((m - 1/3) n^d))`` and
    ``D >= (m - 1/4) n^d``.
    """
    if d < 2 or m < 1 or r < 0:
        raise PrankError("UNSUPPORTED", "need d >= 2, m >= 1, r >= 0")
    with mpmath.workdps(dps):
        n = int(mpmath.ceil(4 * (r + mpmath.mpf(m) ** (mpmath.mpf(2) / d))))
        if not _nbound_ok(n, d, m, r):
            raise PrankError("NBOUND_UNMET", f"n = {n} violates n^d > m^2 + r(n^(d-1) + n)")
        nd = mpmath.mpf(n) ** d
        rhs = (4 * mpmath.log(m * nd, 2)
               + 4 * (m - mpmath.mpf(1) / 4) * mpmath.log(3 * mpmath.e / ((m - mpmath.mpf(1) / 3) * nd), 2))
        D = int(mpmath.ceil(mpmath.power(2, rhs)))
        while D > 1 and mpmath.log(D - 1, 2) >= rhs:
            D -= 1
        while mpmath.log(D, 2) < rhs:
            D += 1
        floor_D = int(mpmath.ceil((m - mpmath.mpf(1) / 4) * nd))
        return {"n": n, "rhs_bits": float(rhs), "D": max(D, floor_D, 1)}


def degree_bound(d, m, r):
    return degree_bound_details(d, m, r)["D"]

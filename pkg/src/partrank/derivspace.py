"""Derivative spaces, subalgebra membership, and adapted-basis coefficient extraction."""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import prod
from dataclasses import dataclass, field as dc_field

from . import linalg
from .certificate import INF
from .errors import PrankError
from .poly import Form, form_mul
from .tensor import Tensor, check_tuple, mode_product


@dataclass
class DerivativeSpace:
    """Graded basis of the span of all partials of ``source`` of order ``1..d-1``."""

    source: Form
    basis: list
    by_degree: dict = dc_field(default_factory=dict)
    n_partials: int = 0  # distinct multiset-partials generated

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, g):
        rows = [b.vector() for b in self.by_degree.get(g.degree, [])]
        if g.is_zero():
            return True
        if not rows:
            return False
        return linalg.rank(rows + [g.vector()], g.field) == len(rows)


def iterated_partials(f):
    """``{multiset of directions: partial}`` for orders ``1..d-1``.

    Directions are 0-based and multisets are sorted tuples; each partial is
    derived from its parent with the last direction removed.
    """
    out = {(): f}
    layer = [()]
    for _ in range(1, f.degree):
        nxt = []
        for ms in layer:
            start = ms[-1] if ms else 0
            for i in range(start, f.nvars):
                child = ms + (i,)
                out[child] = out[ms].partial(i)
                nxt.append(child)
        layer = nxt
    del out[()]
    return out


def dspace(f):
    if f.is_zero() or f.degree < 2:
        return DerivativeSpace(f, [], {}, 0)
    F, n = f.field, f.nvars
    parts = iterated_partials(f)
    basis, by_degree = [], {}
    for e in range(f.degree - 1, 0, -1):
        rows = [g.vector() for ms, g in parts.items() if len(ms) == f.degree - e and g]
        if not rows:
            continue
        R, _ = linalg.rref(rows, F)
        piece = [Form.from_vector(F, n, e, r) for r in R]
        by_degree[e] = piece
        basis.extend(piece)
    return DerivativeSpace(f, basis, by_degree, len(parts))


@dataclass
class Membership:
    """Outcome of a subalgebra membership test.

    ``combination`` lists ``(coeff, gen_indices)`` with ``f = sum coeff *
    prod gens[j]``; empty for ``f = 0``.
    """

    member: bool
    combination: list = dc_field(default_factory=list)
    n_products: int = 0

    @property
    def verdict(self):
        return "MEMBER" if self.member else "NOT_MEMBER"


def _products(gens, d):
    """Non-decreasing index tuples of ``gens`` whose degrees sum to ``d``."""
    degs = [g.degree for g in gens]

    def rec(start, left, acc):
        if left == 0:
            yield tuple(acc)
            return
        for j in range(start, len(gens)):
            if 1 <= degs[j] <= left:
                acc.append(j)
                yield from rec(j, left - degs[j], acc)
                acc.pop()

    yield from rec(0, d, [])


def _product_form(gens, idx):
    g = gens[idx[0]]
    for j in idx[1:]:
        g = form_mul(g, gens[j])
    return g


def subalgebra_member(f, gens):
    """Is ``f`` in the degree-``d`` piece of the algebra generated by ``gens``?"""
    gens = list(gens)
    for g in gens:
        f._check(g)
        if g.degree < 1:
            raise PrankError("UNSUPPORTED", "generators must have degree >= 1")
    if f.is_zero():
        return Membership(True, [], 0)
    F, d = f.field, f.degree
    prods = [(idx, _product_form(gens, idx)) for idx in _products(gens, d)]
    prods = [(idx, p) for idx, p in prods if p]
    if not prods:
        return Membership(False, [], 0)
    cols = [p.vector() for _, p in prods]
    sol = linalg.solve(linalg.transpose(cols), f.vector(), F)
    if sol is None:
        return Membership(False, [], len(prods))
    combo = [(c, idx) for c, (idx, _) in zip(sol, prods) if c != 0]
    return Membership(True, combo, len(prods))


def recombine(combination, gens, like):
    """Evaluate a membership combination back to a Form shaped like ``like``."""
    out = Form.zero(like.field, like.nvars, like.degree)
    for c, idx in combination:
        out = out + _product_form(gens, idx).scale(c)
    return out


def df_experiment(f, budget=None):
    """Observational run: is ``f`` generated by its own derivative space?

    Returns a flat dict; ``flags`` carries OUTSIDE_THEOREM_HYPOTHESES when
    ``0 < char <= d``.
    """
    from .search import SearchBudget, strength_exact

    F = f.field
    D = dspace(f)
    gens = list(D.basis)
    mem = subalgebra_member(f, gens)
    kept = list(gens)
    if mem.member:
        i = 0
        while i < len(kept):
            trial = kept[:i] + kept[i + 1:]
            if subalgebra_member(f, trial).member:
                kept = trial
            else:
                i += 1
    flags = []
    if 0 < F.char <= f.degree:
        flags.append("OUTSIDE_THEOREM_HYPOTHESES")
    strength = None
    if F.is_finite and not f.is_zero():
        cert = strength_exact([f], budget or SearchBudget(max_nodes=200_000))
        strength = cert.value if cert.exhaustive else f"<={cert.value}"
    elif f.is_zero():
        strength = 0
    return {
        "degree": f.degree,
        "dspace_dim": D.dim,
        "member": mem.member,
        "generators": len(kept) if mem.member else None,
        "kept": kept if mem.member else [],
        "strength": "INF" if strength == INF else strength,
        "flags": flags,
    }


# -- slot splits and coefficient extraction -------------------------------------------

@dataclass(frozen=True)
class SlotSplit:
    """Per slot ``j``: a basis ``U'_j`` and a complementary basis ``V'_j`` of ``V_j``.

    Vectors are tuples of raw field values in standard coordinates.
    """

    field: object
    U: tuple
    V: tuple

    def __post_init__(self):
        if len(self.U) != len(self.V):
            raise PrankError("BAD_SPLIT", "U' and V' must list the same slots")
        for j, (u, v) in enumerate(zip(self.U, self.V)):
            rows = [list(x) for x in u] + [list(x) for x in v]
            n = len(rows)
            if any(len(r) != n for r in rows) or linalg.rank(rows, self.field) != n:
                raise PrankError("BAD_SPLIT", f"slot {j}: U' and V' do not form a basis")

    @property
    def shape(self):
        return tuple(len(u) + len(v) for u, v in zip(self.U, self.V))

    def basis(self, j):
        return [list(x) for x in self.U[j]] + [list(x) for x in self.V[j]]

    def duals(self, j):
        """Rows are the dual functionals of :meth:`basis`."""
        return _duals(self, j)


@lru_cache(maxsize=4096)
def _duals(split, j):
    return linalg.inverse_matrix(linalg.transpose(split.basis(j)), split.field)


def random_split(F, shape, rng):
    U, V = [], []
    for n in shape:
        while True:
            B = [[F.random(rng) for _ in range(n)] for _ in range(n)]
            if linalg.rank(B, F) == n:
                break
        k = rng.randrange(n + 1)
        U.append(tuple(tuple(r) for r in B[:k]))
        V.append(tuple(tuple(r) for r in B[k:]))
    return SlotSplit(F, tuple(U), tuple(V))


def all_monomials(split):
    """Every ``u`` as a sorted tuple of ``(slot, index into U'_slot)`` pairs."""
    d = len(split.U)
    for size in range(d + 1):
        for I in itertools.combinations(range(d), size):
            for ks in itertools.product(*(range(len(split.U[j])) for j in I)):
                yield tuple(zip(I, ks))


def _norm_u(u, split):
    u = tuple(sorted(dict(u).items()))
    for j, k in u:
        if not 0 <= j < len(split.U) or not 0 <= k < len(split.U[j]):
            raise PrankError("BAD_INDEX", f"monomial entry ({j}, {k}) outside the split")
    return u


def _drop_slots(t, slots):
    keep = tuple(n for j, n in enumerate(t.shape) if j not in slots)
    return Tensor(t.field, keep, t.entries)


def _extract_adapted(t, split, u):
    """Read coordinates in the adapted basis, then map the V' part back."""
    F = t.field
    fixed = dict(u)
    C = t
    for j in range(t.order):
        C = mode_product(C, j, split.duals(j))
    for j in range(t.order):
        n = t.shape[j]
        if j in fixed:
            C = mode_product(C, j, [[F.one if i == fixed[j] else F.zero for i in range(n)]])
        else:
            B, k = split.basis(j), len(split.U[j])
            M = [[B[c][i] if c >= k else F.zero for c in range(n)] for i in range(n)]
            C = mode_product(C, j, M)
    return _drop_slots(C, fixed)


def _extract_ie(t, split, u):
    """Alternating sum of contractions by extended monomials ``u' = u * u''``."""
    F = t.field
    fixed = dict(u)
    rest = [j for j in range(t.order) if j not in fixed]
    shape = tuple(t.shape[j] for j in rest)
    acc = [F.zero] * prod(shape)
    base = t
    for j, k in fixed.items():
        base = mode_product(base, j, [split.duals(j)[k]])
    for size in range(len(rest) + 1):
        sign = F.one if size % 2 == 0 else F.neg(F.one)
        for J in itertools.combinations(rest, size):
            for ks in itertools.product(*(range(len(split.U[j])) for j in J)):
                T = base
                for j, k in zip(J, ks):
                    T = mode_product(T, j, [split.duals(j)[k]])
                    T = mode_product(T, j, [[x] for x in split.U[j][k]])
                for i, x in enumerate(T.entries):
                    if x != 0:
                        acc[i] = F.add(acc[i], F.mul(sign, x))
    return Tensor(F, shape, acc)


def coeff_extract(ts, split, u):
    """``t_{i,u}`` for every tensor of the tuple, computed two ways.

    ``u`` maps slots ``I`` to indices into the ``U'`` bases (a dict or pairs);
    each result lives on the slots outside ``I`` in standard coordinates.
    Raises IE_MISMATCH if the two computations differ.
    """
    F, shape = check_tuple(list(ts))
    if split.field != F or split.shape != shape:
        raise PrankError("SHAPE_MISMATCH", f"split for {split.shape} over {split.field}")
    u = _norm_u(u, split)
    out = []
    for t in ts:
        a = _extract_adapted(t, split, u)
        b = _extract_ie(t, split, u)
        if a != b:
            raise PrankError("IE_MISMATCH", f"adapted and inclusion-exclusion paths differ at u={u}")
        out.append(a)
    return out


def place(coef, split, u, shape):
    """``u (x) coef`` as a full tensor of ``shape``."""
    fixed = dict(u)
    full = tuple(1 if j in fixed else n for j, n in enumerate(shape))
    T = Tensor(coef.field, full, coef.entries)
    for j, k in fixed.items():
        T = mode_product(T, j, [[x] for x in split.U[j][k]])
    return T


def reconstruct(t, split):
    """``sum_u u (x) t_u``; equals ``t`` when the decomposition is sound."""
    out = Tensor(t.field, t.shape)
    for u in all_monomials(split):
        out = out + place(coeff_extract([t], split, u)[0], split, u, t.shape)
    return out

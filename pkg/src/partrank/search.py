"""Exact strength and partition rank over finite fields.

Both searches share one idea: a decomposition ``x = sum_i a_i * b_i`` is
linear in the ``b_i`` once the ``a_i`` are fixed.  So only the ``a_i`` are
enumerated (projectively, one "atom" per choice of slot subset / degree and
factor), and the question "do suitable ``b_i`` exist?" becomes membership of
``x`` in the span of the columns ``a_i * (basis of the b-space)``.  The span
is grown incrementally along a depth-first walk over atom combinations.

Values are searched in increasing order, so the first hit is minimal and all
smaller values are excluded exhaustively.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import ceil, prod

from . import linalg
from .certificate import (INF, PARTITION, STRENGTH, Decomposition, PartitionTerm, RankCertificate,
                          StrengthTerm, check_certificate, combine)
from .errors import PrankError
from .poly import Form, monomials_of_degree
from .tensor import Tensor, _split_positions, apply_maps, check_tuple, complement, concise_reduce


@dataclass(frozen=True)
class SearchBudget:
    """Caps on search effort.

    ``max_nodes`` bounds the number of span extensions in the depth-first
    walk; ``max_atoms`` bounds the number of candidate factors per search.
    """

    max_nodes: int = 5_000_000
    max_atoms: int = 100_000


class _BudgetHit(Exception):
    pass


class _Counter:
    def __init__(self, budget):
        self.budget = budget or SearchBudget()
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _BudgetHit


def projective_points(F, dim):
    """Nonzero vectors of ``F^dim`` with first nonzero coordinate 1, in code order."""
    if dim == 0:
        return
    q = F.order
    for lead in range(dim):
        for rest in itertools.product(range(q), repeat=dim - lead - 1):
            yield (0,) * lead + (1,) + rest


def projective_count(q, dim):
    return (q**dim - 1) // (q - 1) if dim else 0


def _require_finite(F):
    if not F.is_finite:
        raise PrankError("INFINITE_FIELD", f"exact search needs a finite field, got {F}")


def _first_hit(target, atoms, r, counter, F):
    """Indices of ``r`` atoms whose column blocks span ``target``, or None.

    Assumes no combination of fewer atoms works, which licenses skipping any
    atom that adds nothing to the current span.
    """
    span = linalg.Span(F, len(target))
    chosen = []

    def dfs(start):
        if len(chosen) == r:
            return span.contains(target)
        for k in range(start, len(atoms) - (r - len(chosen)) + 1):
            counter.tick()
            grew = 0
            for col in atoms[k]:
                if span.add(col):
                    grew += 1
            if grew:
                chosen.append(k)
                if dfs(k + 1):
                    return True
                chosen.pop()
            span.pop(grew)
        return False

    return list(chosen) if dfs(0) else None


def _solve_factors(target, blocks, F):
    """Solve ``target = sum_i blocks_i . y_i`` and split the solution per block."""
    cols = [c for block in blocks for c in block]
    rows = linalg.transpose(cols)
    y = linalg.solve(rows, list(target), F)
    if y is None:  # pragma: no cover - guarded by the span test
        raise PrankError("UNSOLVABLE", "span test and solver disagree")
    out, k = [], 0
    for block in blocks:
        out.append(y[k:k + len(block)])
        k += len(block)
    return out


# -- partition rank ------------------------------------------------------------

def normalized_subsets(d):
    """Slot subsets with ``1 <= |I| <= d/2``; at ``|I| = d/2`` only those holding slot 0."""
    out = []
    for size in range(1, d // 2 + 1):
        for I in itertools.combinations(range(d), size):
            if 2 * size == d and 0 not in I:
                continue
            out.append(I)
    return out


def _partition_atoms(shape, F, counter):
    d = len(shape)
    atoms, labels = [], []
    size = prod(shape)
    for I in normalized_subsets(d):
        dim_a = prod(shape[j] for j in I)
        dim_b = size // dim_a if dim_a else 0
        if dim_a == 0 or dim_b == 0:
            continue
        if len(atoms) + projective_count(F.order, dim_a) > counter.budget.max_atoms:
            raise _BudgetHit
        rows, cols = _split_positions(shape, I)
        for a in projective_points(F, dim_a):
            block = []
            for k in range(dim_b):
                block.append([a[r] if c == k else 0 for r, c in zip(rows, cols)])
            atoms.append(block)
            labels.append((I, a))
    return atoms, labels


def _cap_partition(t):
    """Remark-style upper bound: slice along the slot of least concise dimension."""
    (tr,), incl = concise_reduce([t])
    F, d = t.field, t.order
    j = min(range(d), key=lambda s: tr.shape[s])
    terms = []
    others = complement((j,), d)
    for k in range(tr.shape[j]):
        a = Tensor.basis(F, (tr.shape[j],), (k,))
        b_entries = [v for idx, v in zip(itertools.product(*(range(n) for n in tr.shape)), tr.entries)
                     if idx[j] == k]
        b = Tensor(F, tuple(tr.shape[s] for s in others), b_entries)
        terms.append(_lift_term((j,), a, b, incl, d))
    return terms


def _lift_term(I, a, b, incl, d):
    Ic = complement(I, d)
    a = apply_maps(a, [incl[j] for j in I])
    b = apply_maps(b, [incl[j] for j in Ic])
    return PartitionTerm(tuple(I), a, b)


def _prk_single(t, counter, limit=INF):
    """``(value, terms, exhaustive)`` for one tensor; ``None`` if nothing below ``limit``."""
    F, d = t.field, t.order
    if t.is_zero():
        return 0, [], True
    if d == 1:
        # no proper nonempty subsets: a nonzero vector has no decomposition
        return INF, [], True
    (tr,), incl = concise_reduce([t])
    cap = min(tr.shape)
    top = min(cap, limit)
    atoms, labels = _partition_atoms(tr.shape, F, counter)
    for r in range(1, top):
        hit = _first_hit(tr.entries, atoms, r, counter, F)
        if hit is not None:
            sols = _solve_factors(tr.entries, [atoms[k] for k in hit], F)
            terms = []
            for k, y in zip(hit, sols):
                I, a = labels[k]
                Ic = complement(I, d)
                a_t = Tensor(F, tuple(tr.shape[j] for j in I), a)
                b_t = Tensor(F, tuple(tr.shape[j] for j in Ic), y)
                terms.append(_lift_term(I, a_t, b_t, incl, d))
            return r, terms, True
    if cap < limit:
        return cap, _cap_partition(t), True
    return None


def easy_cap(ts):
    """Upper bound from slicing along the smallest concise slot.

    For a single tensor this is ``min_j dim V'_j``; for ``m > 1`` tensors the
    bound is taken ``m``-fold.
    """
    reduced, _ = concise_reduce(list(ts))
    base = min(reduced[0].shape)
    return base if len(ts) == 1 else len(ts) * base


# -- strength ------------------------------------------------------------------

def _strength_atoms(nvars, d, F, counter):
    atoms, labels = [], []
    target_index = {m: i for i, m in enumerate(monomials_of_degree(nvars, d))}
    size = len(target_index)
    for e in range(1, d // 2 + 1):
        monos_a = monomials_of_degree(nvars, e)
        monos_b = monomials_of_degree(nvars, d - e)
        if len(atoms) + projective_count(F.order, len(monos_a)) > counter.budget.max_atoms:
            raise _BudgetHit
        for a in projective_points(F, len(monos_a)):
            support = [(ma, c) for ma, c in zip(monos_a, a) if c != 0]
            block = []
            for mb in monos_b:
                col = [0] * size
                for ma, c in support:
                    col[target_index[tuple(x + y for x, y in zip(ma, mb))]] = c
                block.append(col)
            atoms.append(block)
            labels.append((e, a))
    return atoms, labels


def _cap_strength(f):
    """``f = sum_i x_i g_i`` grouping each term under its first variable."""
    F, n, d = f.field, f.nvars, f.degree
    groups = {}
    for mono, c in f.items():
        i = next(k for k, a in enumerate(mono) if a)
        rest = mono[:i] + (mono[i] - 1,) + mono[i + 1:]
        groups.setdefault(i, {})[rest] = c
    return [StrengthTerm(Form.var(F, n, i), Form(F, n, d - 1, g)) for i, g in sorted(groups.items())]


def _strength_single(f, counter, limit=INF):
    F, n, d = f.field, f.nvars, f.degree
    if f.is_zero():
        return 0, [], True
    if d <= 1:
        return INF, [], True
    cap_terms = _cap_strength(f)
    cap = len(cap_terms)
    top = min(cap, limit)
    target = f.vector()
    atoms, labels = _strength_atoms(n, d, F, counter)
    for r in range(1, top):
        hit = _first_hit(target, atoms, r, counter, F)
        if hit is not None:
            sols = _solve_factors(target, [atoms[k] for k in hit], F)
            terms = []
            for k, y in zip(hit, sols):
                e, a = labels[k]
                terms.append(StrengthTerm(Form.from_vector(F, n, e, a), Form.from_vector(F, n, d - e, y)))
            return r, terms, True
    if cap < limit:
        return cap, cap_terms, True
    return None


# -- public entry points ----------------------------------------------------------

def _collective(items, single, cap_terms, kind, target, budget):
    F = items[0].field
    _require_finite(F)
    counter = _Counter(budget)
    m = len(items)
    best = None  # (value, terms, coeffs)
    complete = True
    if m > 1 and linear_dependent(items):
        rows = linalg.transpose([_as_vector(x) for x in items])
        c = linalg.kernel(rows, m, F)[0]
        lead = next(v for v in c if v != 0)
        best = (0, [], tuple(F.div(v, lead) for v in c))
    else:
        points = list(projective_points(F, m))
        # a cheap upper bound first, so that a budget stop still has a witness
        terms = cap_terms(combine(points[0], items))
        if terms is not None:
            best = (len(terms), terms, points[0])
        try:
            for c in points:
                limit = best[0] if best else INF
                res = single(combine(c, items), counter, limit)
                if res is not None and (best is None or res[0] < best[0]):
                    best = (res[0], res[1], c)
                if best is not None and best[0] == 1:
                    break
        except _BudgetHit:
            complete = False
    if best is None:
        return RankCertificate(INF, None, exhaustive=complete, budget_hit=not complete, kind=kind,
                               stats={"nodes": counter.nodes})
    value, terms, c = best
    witness = None
    if value != INF and (value > 0 or m > 1):
        witness = Decomposition(kind, F, target, tuple(terms), tuple(c))
    cert = RankCertificate(value, witness, exhaustive=complete, budget_hit=not complete, kind=kind,
                           stats={"nodes": counter.nodes})
    check_certificate(cert, items)
    return cert


def _as_vector(x):
    return list(x.entries) if isinstance(x, Tensor) else x.vector()


def _cap_partition_or_none(t):
    if t.order < 2:
        return None if not t.is_zero() else []
    return [] if t.is_zero() else _cap_partition(t)


def _cap_strength_or_none(f):
    if f.is_zero():
        return []
    return None if f.degree <= 1 else _cap_strength(f)


def prk_exact(ts, budget=None):
    """Exact (collective) partition rank of a tensor tuple over a finite field."""
    ts = list(ts)
    F, shape = check_tuple(ts)
    return _collective(ts, _prk_single, _cap_partition_or_none, PARTITION, shape, budget)


def strength_exact(fs, budget=None):
    """Exact (collective) strength of a form tuple over a finite field.

    Nonzero linear forms have strength ``INF``; a tuple has collective value 0
    exactly when its entries are linearly dependent.
    """
    fs = list(fs)
    f0 = fs[0]
    for f in fs[1:]:
        f0._check(f)
        if f.degree != f0.degree and f and f0:
            raise PrankError("UNSUPPORTED", "form tuple with mixed degrees")
    degree = max(f.degree for f in fs)
    return _collective(fs, _strength_single, _cap_strength_or_none, STRENGTH, (f0.nvars, degree), budget)


# -- quadrics -----------------------------------------------------------------------

ALG_CLOSED, REAL_DIAGONAL, FINITE_ODD = "ALG_CLOSED", "REAL_DIAGONAL", "FINITE_ODD"


def gram_matrix(q):
    """Symmetric Gram matrix of a quadratic form (odd characteristic or Q)."""
    F, n = q.field, q.nvars
    if F.char == 2:
        raise PrankError("CHAR_TWO_UNSUPPORTED", "Gram matrices need odd characteristic")
    half = F.inv(F.from_int(2))
    G = [[F.zero] * n for _ in range(n)]
    for mono, c in q.terms.items():
        idx = [i for i, a in enumerate(mono) for _ in range(a)]
        i, j = idx
        if i == j:
            G[i][i] = c
        else:
            G[i][j] = G[j][i] = F.mul(c, half)
    return G


def _as_quadric(desc, field):
    """Normalise a Form / diagonal / Gram description to ``(field, gram)``."""
    from fractions import Fraction

    from .fields import make_field

    if isinstance(desc, Form):
        if desc.degree != 2 and not desc.is_zero():
            raise PrankError("NOT_QUADRATIC", f"degree {desc.degree} form")
        return desc.field, gram_matrix(desc)
    desc = list(desc)
    F = field or make_field("Q")
    if desc and isinstance(desc[0], (list, tuple)):
        G = [[F.coerce(Fraction(x)) if F.kind == "Q" else F.coerce(x) for x in row] for row in desc]
        if any(G[i][j] != G[j][i] for i in range(len(G)) for j in range(len(G))):
            raise PrankError("NOT_QUADRATIC", "Gram matrix is not symmetric")
        return F, G
    n = len(desc)
    G = [[F.zero] * n for _ in range(n)]
    for i, x in enumerate(desc):
        G[i][i] = F.coerce(Fraction(x)) if F.kind == "Q" else F.coerce(x)
    return F, G


def _qval(G, v, F):
    acc = F.zero
    for i, row in enumerate(G):
        if v[i] == 0:
            continue
        for j, g in enumerate(row):
            if g != 0 and v[j] != 0:
                acc = F.add(acc, F.mul(g, F.mul(v[i], v[j])))
    return acc


def max_totally_singular_dim(G, F):
    """Largest dimension of a subspace on which the quadric vanishes (exhaustive)."""
    n = len(G)
    bound = n - ceil(linalg.rank(G, F) / 2)
    iso = [v for v in projective_points(F, n) if _qval(G, v, F) == 0]
    Gv = {v: linalg.matvec(G, list(v), F) for v in iso}

    def orth(u, v):
        acc = F.zero
        for x, y in zip(Gv[u], v):
            if x != 0 and y != 0:
                acc = F.add(acc, F.mul(x, y))
        return acc == 0

    best = 0
    span = linalg.Span(F, n)
    chosen = []

    def dfs(start):
        nonlocal best
        best = max(best, len(chosen))
        if best >= bound:
            return True
        for k in range(start, len(iso)):
            v = iso[k]
            if all(orth(u, v) for u in chosen) and span.add(list(v)):
                chosen.append(v)
                if dfs(k + 1):
                    return True
                chosen.pop()
                span.pop()
        return False

    dfs(0)
    return best


def quad_strength(desc, field_mode, field=None):
    """Strength of a quadratic form from its Witt-type data.

    ``desc`` is a degree-2 :class:`Form`, a list of diagonal coefficients, or a
    symmetric Gram matrix.  ``ALG_CLOSED`` returns ``ceil(rank/2)``;
    ``REAL_DIAGONAL`` returns ``max(#positive, #negative)`` of a rational
    diagonal; ``FINITE_ODD`` returns ``n`` minus the largest totally singular
    dimension, found by exhaustive search.
    """
    if field_mode == REAL_DIAGONAL:
        if isinstance(desc, Form):
            if desc.degree != 2 and not desc.is_zero():
                raise PrankError("NOT_QUADRATIC", f"degree {desc.degree} form")
            if desc.field.kind != "Q":
                raise PrankError("UNSUPPORTED", "REAL_DIAGONAL needs rational coefficients")
            G = gram_matrix(desc)
            if any(G[i][j] for i in range(len(G)) for j in range(len(G)) if i != j):
                raise PrankError("UNSUPPORTED", "REAL_DIAGONAL needs a diagonal form")
            diag = [G[i][i] for i in range(len(G))]
        else:
            diag = list(desc)
            if diag and isinstance(diag[0], (list, tuple)):
                raise PrankError("UNSUPPORTED", "REAL_DIAGONAL needs diagonal coefficients")
        pos = sum(1 for x in diag if x > 0)
        neg = sum(1 for x in diag if x < 0)
        return max(pos, neg)
    F, G = _as_quadric(desc, field)
    if F.char == 2:
        raise PrankError("CHAR_TWO_UNSUPPORTED", "quadric strength needs odd characteristic")
    if field_mode == ALG_CLOSED:
        return ceil(linalg.rank(G, F) / 2)
    if field_mode == FINITE_ODD:
        _require_finite(F)
        return len(G) - max_totally_singular_dim(G, F)
    raise PrankError("UNSUPPORTED", f"unknown field mode {field_mode!r}")


def linear_dependent(items):
    """Whether the tuple's entries are linearly dependent."""
    return linalg.rank([_as_vector(x) for x in items], items[0].field) < len(items)



"""Descending decompositions from a finite extension L to its subfield K.

An ``r``-term decomposition over ``L`` of ``sum_k c_k x_k`` (with ``x`` over
``K``) becomes an at most ``e*r``-term decomposition over ``K``, ``e = [L:K]``:
each factor ``a_i`` is split into K-coordinates ``a_i = sum_j z^j a_ij`` and
the companion factors together with the collective coefficients are
re-solved as one linear system over ``K``.
"""

from . import linalg
from .certificate import (PARTITION, Decomposition, PartitionTerm, StrengthTerm,
                          check_decomposition)
from .errors import PrankError
from .fields import extension
from .poly import Form, monomials_of_degree
from .tensor import Tensor, _split_positions, complement


def blowup_bound(e, r):
    """Term budget ``e*r`` after descending an ``r``-term decomposition."""
    return e * r


def ext_degree_needed(d, deg_h):
    """Least integer degree exceeding ``log2(d * deg_h)``."""
    if d < 1 or deg_h < 1:
        raise PrankError("UNSUPPORTED", "need d >= 1 and deg_h >= 1")
    return (d * deg_h).bit_length()


def _pivot(coeffs):
    return max(k for k, c in enumerate(coeffs) if c != 0)


def _normalize(dec, L):
    """Scale so that the pivot coefficient is 1."""
    p = _pivot(dec.coeffs)
    lam = L.inv(dec.coeffs[p])
    coeffs = tuple(L.mul(lam, c) for c in dec.coeffs)
    if dec.kind == PARTITION:
        terms = tuple(PartitionTerm(t.subset, t.a, t.b.scale(lam)) for t in dec.terms)
    else:
        terms = tuple(StrengthTerm(t.a, t.b.scale(lam)) for t in dec.terms)
    return Decomposition(dec.kind, L, dec.target, terms, coeffs)


def _all_in(dec, ext):
    vals = list(dec.coeffs)
    for t in dec.terms:
        for x in (t.a, t.b):
            vals.extend(x.entries if isinstance(x, Tensor) else x.terms.values())
    return all(ext.contains(v) for v in vals)


def descend(items, L, dec):
    """Turn an L-decomposition of a K-tuple into a K-decomposition.

    ``items`` are Tensors or Forms over ``K``; ``dec`` is a Decomposition over
    ``L`` of ``sum_k c_k items_k``.  The result has coefficient 1 at the largest
    index with ``c_k != 0`` and at most ``[L:K] * len(dec)`` terms.
    """
    items = list(items)
    K = items[0].field
    ext = extension(K, L)
    lifted = [x.map_field(ext.embed, L) for x in items]
    if dec.field != L:
        raise PrankError("FIELD_MISMATCH", f"decomposition over {dec.field}, expected {L}")
    check_decomposition(dec, lifted)
    if K == L:
        return _normalize(dec, L)
    if _all_in(dec, ext):
        out = _normalize(dec.map_field(ext.restrict, K), K)
        check_decomposition(out, items)
        return out

    piv = _pivot(dec.coeffs)
    others = [k for k in range(len(items)) if k != piv]
    e = ext.degree

    # K-coordinate pieces of every a-factor, keeping the nonzero ones
    pieces = []
    for term in dec.terms:
        if dec.kind == PARTITION:
            coords = [ext.coords(x) for x in term.a.entries]
            for j in range(e):
                a_ij = Tensor(K, term.a.shape, [c[j] for c in coords])
                if not a_ij.is_zero():
                    pieces.append((term.subset, a_ij))
        else:
            for j in range(e):
                part = {m: ext.coords(c)[j] for m, c in term.a.terms.items()}
                a_ij = Form(K, term.a.nvars, term.a.degree, part)
                if not a_ij.is_zero():
                    pieces.append((None, a_ij))

    columns, blocks = [], []
    if dec.kind == PARTITION:
        shape = tuple(dec.target)
        d = len(shape)
        target = list(items[piv].entries)
        for I, a in pieces:
            rows, cols = _split_positions(shape, I)
            dim_b = len(target) // len(a.entries)
            block = [[a.entries[r] if c == l else K.zero for r, c in zip(rows, cols)]
                     for l in range(dim_b)]
            blocks.append(len(block))
            columns.extend(block)
        for k in others:
            columns.append([K.neg(x) for x in items[k].entries])
    else:
        nvars, degree = dec.target
        index = {m: i for i, m in enumerate(monomials_of_degree(nvars, degree))}
        target = items[piv].vector() if items[piv].degree == degree else [K.zero] * len(index)
        for _, a in pieces:
            block = []
            for mb in monomials_of_degree(nvars, degree - a.degree):
                col = [K.zero] * len(index)
                for ma, c in a.terms.items():
                    col[index[tuple(x + y for x, y in zip(ma, mb))]] = c
                block.append(col)
            blocks.append(len(block))
            columns.extend(block)
        for k in others:
            f = items[k]
            vec = f.vector() if f.degree == degree else [K.zero] * len(index)
            columns.append([K.neg(x) for x in vec])

    sol = linalg.solve(linalg.transpose(columns), target, K) if columns else None
    if sol is None:
        if not any(target) and not columns:
            sol = []
        else:
            raise PrankError("UNSOLVABLE", "descent system has no K-solution; this is a bug")

    terms, pos = [], 0
    for (I, a), size in zip(pieces, blocks):
        y = sol[pos:pos + size]
        pos += size
        if not any(y):
            continue
        if dec.kind == PARTITION:
            b_shape = tuple(shape[j] for j in complement(I, d))
            terms.append(PartitionTerm(I, a, Tensor(K, b_shape, y)))
        else:
            terms.append(StrengthTerm(a, Form.from_vector(K, a.nvars, degree - a.degree, y)))
    coeffs = [K.zero] * len(items)
    coeffs[piv] = K.one
    for k, c in zip(others, sol[pos:]):
        coeffs[k] = c
    out = Decomposition(dec.kind, K, dec.target, tuple(terms), tuple(coeffs))
    check_decomposition(out, items)
    return out

"""Dense order-d tensors over an exact field.

Slots are numbered from 0 in the Python API (the text formats and the CLI use
1-based slot numbers and indices).  Entries are stored flat in row-major
order over ``(i_1, ..., i_d)``.
"""

from __future__ import annotations

import itertools
from math import prod

from . import linalg
from .errors import PrankError


def all_indices(shape):
    return itertools.product(*(range(n) for n in shape))


def _strides(shape):
    out = [1] * len(shape)
    for j in range(len(shape) - 2, -1, -1):
        out[j] = out[j + 1] * shape[j + 1]
    return tuple(out)


class Tensor:
    __slots__ = ("field", "shape", "entries", "_strides")

    def __init__(self, field, shape, entries=None):
        shape = tuple(int(n) for n in shape)
        if min(shape, default=0) < 0:
            raise PrankError("SHAPE_MISMATCH", f"bad shape {shape}")
        size = prod(shape)
        if entries is None:
            entries = (field.zero,) * size
        entries = tuple(entries)
        if len(entries) != size:
            raise PrankError("SHAPE_MISMATCH", f"{len(entries)} entries for shape {shape}")
        self.field = field
        self.shape = shape
        self.entries = entries
        self._strides = _strides(shape)

    # constructors

    @classmethod
    def zeros(cls, field, shape):
        return cls(field, shape)

    @classmethod
    def from_dict(cls, field, shape, values):
        """Tensor with the given ``{index tuple: raw value}`` entries (0-based)."""
        t = cls(field, shape)
        ent = list(t.entries)
        for idx, v in values.items():
            ent[t.flat_index(idx)] = v
        return cls(field, shape, ent)

    @classmethod
    def basis(cls, field, shape, idx):
        return cls.from_dict(field, shape, {tuple(idx): field.one})

    @classmethod
    def vector(cls, field, values):
        return cls(field, (len(values),), values)

    # protocol

    @property
    def order(self):
        return len(self.shape)

    @property
    def size(self):
        return len(self.entries)

    def flat_index(self, idx):
        if len(idx) != len(self.shape) or any(not 0 <= i < n for i, n in zip(idx, self.shape)):
            raise PrankError("SHAPE_MISMATCH", f"index {idx} outside shape {self.shape}")
        return sum(i * s for i, s in zip(idx, self._strides))

    def __getitem__(self, idx):
        return self.entries[self.flat_index(idx)]

    def items(self):
        """Nonzero ``(index, value)`` pairs in row-major order."""
        for idx, v in zip(all_indices(self.shape), self.entries):
            if v != 0:
                yield idx, v

    def is_zero(self):
        return not any(self.entries)

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return (self.field, self.shape, self.entries) == (other.field, other.shape, other.entries)

    def __hash__(self):
        return hash((self.field, self.shape, self.entries))

    def __repr__(self):
        body = ", ".join(f"{tuple(i + 1 for i in idx)}: {self.field.format(v)}"
                         for idx, v in self.items())
        return f"Tensor({self.field}, shape={self.shape}, {{{body}}})"

    def _check(self, other):
        if self.field != other.field:
            raise PrankError("FIELD_MISMATCH", f"{self.field} vs {other.field}")
        if self.shape != other.shape:
            raise PrankError("SHAPE_MISMATCH", f"{self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check(other)
        add = self.field.add
        return Tensor(self.field, self.shape, [add(x, y) for x, y in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._check(other)
        sub = self.field.sub
        return Tensor(self.field, self.shape, [sub(x, y) for x, y in zip(self.entries, other.entries)])

    def __neg__(self):
        neg = self.field.neg
        return Tensor(self.field, self.shape, [neg(x) for x in self.entries])

    def scale(self, c):
        mul = self.field.mul
        return Tensor(self.field, self.shape, [mul(c, x) for x in self.entries])

    def map_field(self, func, field):
        return Tensor(field, self.shape, [func(x) for x in self.entries])


def linear_combination(coeffs, ts):
    """``sum_k c_k t_k`` for raw coefficients ``c_k``."""
    F = ts[0].field
    out = [F.zero] * ts[0].size
    for c, t in zip(coeffs, ts):
        if c == 0:
            continue
        for k, x in enumerate(t.entries):
            if x != 0:
                out[k] = F.add(out[k], F.mul(c, x))
    return Tensor(F, ts[0].shape, out)


def check_tuple(ts):
    if not ts:
        raise PrankError("SHAPE_MISMATCH", "empty tensor tuple")
    for t in ts[1:]:
        ts[0]._check(t)
    return ts[0].field, ts[0].shape


def _check_subset(I, d):
    I = tuple(sorted(set(I)))
    if not I or len(I) >= d or I[0] < 0 or I[-1] >= d:
        raise PrankError("BAD_SUBSET", f"{I} is not a nonempty proper subset of 0..{d - 1}")
    return I


def complement(I, d):
    return tuple(j for j in range(d) if j not in I)


def _split_positions(shape, I):
    """For each flat entry, its (row, col) under the I | I^c identification."""
    d = len(shape)
    Ic = complement(I, d)
    rs = _strides([shape[j] for j in I])
    cs = _strides([shape[j] for j in Ic])
    rows, cols = [], []
    for idx in all_indices(shape):
        rows.append(sum(idx[j] * s for j, s in zip(I, rs)))
        cols.append(sum(idx[j] * s for j, s in zip(Ic, cs)))
    return rows, cols


def flatten(t, I):
    """The matrix ``V_I x V_{I^c}`` of ``t`` (rows over I in row-major order)."""
    I = _check_subset(I, t.order)
    Ic = complement(I, t.order)
    nr = prod(t.shape[j] for j in I)
    nc = prod(t.shape[j] for j in Ic)
    mat = [[t.field.zero] * nc for _ in range(nr)]
    rows, cols = _split_positions(t.shape, I)
    for v, r, c in zip(t.entries, rows, cols):
        mat[r][c] = v
    return mat


def flattening_rank(t, I):
    return linalg.rank(flatten(t, I), t.field)


def outer(a, b, I, shape):
    """Place ``a`` (on slots ``I``) and ``b`` (on the complement) into ``shape``."""
    d = len(shape)
    I = _check_subset(I, d)
    Ic = complement(I, d)
    if a.shape != tuple(shape[j] for j in I) or b.shape != tuple(shape[j] for j in Ic):
        raise PrankError("SHAPE_MISMATCH", f"factor shapes {a.shape}, {b.shape} vs {shape} at {I}")
    F = a.field
    rows, cols = _split_positions(shape, I)
    ae, be, mul = a.entries, b.entries, F.mul
    return Tensor(F, shape, [mul(ae[r], be[c]) for r, c in zip(rows, cols)])


def contract(ts, I, xis):
    """``sum_i xi_i(t_i)``: pair every slot outside ``I`` with a functional.

    Each ``xis[i]`` is a Tensor of shape ``(n_j)_{j not in I}``; the result has
    shape ``(n_j)_{j in I}``.
    """
    F, shape = check_tuple(ts)
    I = _check_subset(I, len(shape))
    Ic = complement(I, len(shape))
    if len(xis) != len(ts):
        raise PrankError("SHAPE_MISMATCH", f"{len(xis)} functionals for {len(ts)} tensors")
    want = tuple(shape[j] for j in Ic)
    for xi in xis:
        if xi.shape != want:
            raise PrankError("SHAPE_MISMATCH", f"functional shape {xi.shape}, expected {want}")
    rows, cols = _split_positions(shape, I)
    out = [F.zero] * prod(shape[j] for j in I)
    for t, xi in zip(ts, xis):
        xe = xi.entries
        for v, r, c in zip(t.entries, rows, cols):
            if v != 0 and xe[c] != 0:
                out[r] = F.add(out[r], F.mul(v, xe[c]))
    return Tensor(F, tuple(shape[j] for j in I), out)


def mode_product(t, j, M):
    """Apply the matrix ``M`` (``n'_j x n_j``) to slot ``j``."""
    F = t.field
    nj = t.shape[j]
    if any(len(row) != nj for row in M):
        raise PrankError("SHAPE_MISMATCH", f"map with wrong column count for slot {j}")
    pre = prod(t.shape[:j])
    post = prod(t.shape[j + 1:])
    new_nj = len(M)
    src = t.entries
    out = []
    add, mul = F.add, F.mul
    for a in range(pre):
        base = a * nj * post
        for row in M:
            for b in range(post):
                acc = F.zero
                for k, m in enumerate(row):
                    if m != 0:
                        x = src[base + k * post + b]
                        if x != 0:
                            acc = add(acc, mul(m, x))
                out.append(acc)
    shape = t.shape[:j] + (new_nj,) + t.shape[j + 1:]
    return Tensor(F, shape, out)


def apply_maps(t, maps):
    """Multilinear action of ``d`` matrices, slot by slot."""
    if len(maps) != t.order:
        raise PrankError("SHAPE_MISMATCH", f"{len(maps)} maps for an order-{t.order} tensor")
    for j, M in enumerate(maps):
        t = mode_product(t, j, M)
    return t


def slot_support(ts, j):
    """RREF basis (as rows) of the smallest subspace of ``V_j`` supporting ``ts``."""
    F, shape = check_tuple(ts)
    d = len(shape)
    fibres = []
    for t in ts:
        if d == 1:
            fibres.append(list(t.entries))
            continue
        fibres.extend(linalg.transpose(flatten(t, (j,))))
    R, piv = linalg.rref(fibres, F) if fibres else ([], [])
    return R, piv


def concise_reduce(ts):
    """Express a tuple in bases of its slot supports.

    Returns ``(reduced_tuple, inclusions)`` where ``inclusions[j]`` is the
    ``n_j x k_j`` matrix whose columns are the chosen basis of the slot-j
    support; ``apply_maps(reduced, inclusions)`` reproduces each input tensor.
    """
    F, shape = check_tuple(ts)
    d = len(shape)
    inclusions, projections = [], []
    for j in range(d):
        R, piv = slot_support(ts, j)
        inclusions.append([[R[c][i] for c in range(len(R))] for i in range(shape[j])])
        # the RREF basis has identity columns at the pivots: selecting pivot
        # coordinates is a left inverse of the inclusion
        projections.append([[F.one if i == pc else F.zero for i in range(shape[j])] for pc in piv])
    reduced = [apply_maps(t, projections) for t in ts]
    return reduced, inclusions


def contraction_for(ts, j, v):
    """Functionals ``xis`` with ``contract(ts, (j,), xis) == v``, or None.

    For a concise tuple every ``v`` in ``V_j`` is reachable, since the slot-j
    flattenings jointly have full row rank.
    """
    F, shape = check_tuple(ts)
    d = len(shape)
    if d < 2:
        raise PrankError("UNSUPPORTED", "contractions need order >= 2")
    mats = [flatten(t, (j,)) for t in ts]
    width = len(mats[0][0])
    # v = sum_i M_i xi_i : one row per coordinate of V_j
    rows = [[x for M in mats for x in M[r]] for r in range(shape[j])]
    sol = linalg.solve(rows, list(v), F)
    if sol is None:
        return None
    rest = tuple(shape[k] for k in range(d) if k != j)
    return [Tensor(F, rest, sol[i * width:(i + 1) * width]) for i in range(len(ts))]

"""Gaussian elimination over an exact field.

Matrices are lists of rows of raw field values (see :mod:`partrank.fields`).
Pivoting always takes the first nonzero entry, so ranks, kernels and
solutions are reproducible.
"""

from .fields import PRIME


def _row_ops(F):
    """``(sub_scaled, scale)`` specialised to the field.

    ``sub_scaled(v, c, w)`` returns ``v - c*w``; ``scale(c, w)`` returns ``c*w``.
    """
    if F.kind == PRIME:
        p = F.p

        def sub_scaled(v, c, w):
            return [(x - c * y) % p for x, y in zip(v, w)]

        def scale(c, w):
            return [(c * y) % p for y in w]
    else:
        add, mul, neg = F.add, F.mul, F.neg

        def sub_scaled(v, c, w):
            nc = neg(c)
            return [add(x, mul(nc, y)) if y else x for x, y in zip(v, w)]

        def scale(c, w):
            return [mul(c, y) for y in w]
    return sub_scaled, scale


def rref(rows, F):
    """Reduced row echelon form; returns ``(nonzero_rows, pivot_columns)``."""
    sub_scaled, scale = _row_ops(F)
    work = [list(r) for r in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots = []
    out = []
    r = 0
    for col in range(ncols):
        pr = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        work[r] = scale(F.inv(work[r][col]), work[r])
        for i in range(len(work)):
            if i != r and work[i][col] != 0:
                work[i] = sub_scaled(work[i], work[i][col], work[r])
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    out = work[:r]
    return out, pivots


def rank(rows, F):
    return len(rref(rows, F)[1])


def kernel(rows, ncols, F):
    """Basis of ``{x : A x = 0}``; one vector per free column, 1 at that column."""
    if not rows:
        return [[F.one if j == i else F.zero for j in range(ncols)] for i in range(ncols)]
    R, piv = rref(rows, F)
    pivset = set(piv)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [F.zero] * ncols
        v[free] = F.one
        for row, pc in zip(R, piv):
            if row[free] != 0:
                v[pc] = F.neg(row[free])
        basis.append(v)
    return basis


def solve(rows, rhs, F):
    """One solution of ``A x = rhs`` (free variables set to zero) or ``None``."""
    if not rows:
        return None
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, piv = rref(aug, F)
    if piv and piv[-1] == ncols:
        return None
    x = [F.zero] * ncols
    for row, pc in zip(R, piv):
        x[pc] = row[ncols]
    return x


def transpose(mat):
    return [list(col) for col in zip(*mat)]


def matmul(A, B, F):
    Bt = transpose(B)
    out = []
    for row in A:
        out_row = []
        for col in Bt:
            acc = F.zero
            for x, y in zip(row, col):
                if x != 0 and y != 0:
                    acc = F.add(acc, F.mul(x, y))
            out_row.append(acc)
        out.append(out_row)
    return out


def matvec(A, v, F):
    out = []
    for row in A:
        acc = F.zero
        for x, y in zip(row, v):
            if x != 0 and y != 0:
                acc = F.add(acc, F.mul(x, y))
        out.append(acc)
    return out


def identity(n, F):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def inverse_matrix(mat, F):
    n = len(mat)
    aug = [list(r) + e for r, e in zip(mat, identity(n, F))]
    R, piv = rref(aug, F)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ValueError("singular matrix")
    return [row[n:] for row in R[:n]]


class Span:
    """Incrementally built subspace supporting membership tests.

    Row ``k`` is zero at the pivots of rows ``0..k-1`` (but not necessarily at
    later pivots), so reducing a vector by the rows in insertion order is
    exact.  Because rows are only appended, :meth:`pop` undoes :meth:`add`,
    which is what depth-first searches need.
    """

    def __init__(self, F, dim):
        self.F = F
        self.dim = dim
        self._sub, self._scale = _row_ops(F)
        self.rows = []
        self.pivots = []

    def __len__(self):
        return len(self.rows)

    def reduce(self, v):
        sub = self._sub
        for piv, row in zip(self.pivots, self.rows):
            c = v[piv]
            if c != 0:
                v = sub(v, c, row)
        return v

    def contains(self, v):
        return not any(self.reduce(v))

    def add(self, v):
        """Add ``v``; returns True when the dimension grew."""
        v = self.reduce(v)
        piv = next((i for i, x in enumerate(v) if x != 0), None)
        if piv is None:
            return False
        self.rows.append(self._scale(self.F.inv(v[piv]), v))
        self.pivots.append(piv)
        return True

    def pop(self, count=1):
        for _ in range(count):
            self.rows.pop()
            self.pivots.pop()

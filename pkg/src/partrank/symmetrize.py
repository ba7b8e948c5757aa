"""Symmetrisation ``V^{(x)d} -> S^d V`` and polarisation ``S^d V -> V^{(x)d}``."""

from math import comb, factorial, prod

from .errors import PrankError
from .poly import Form
from .tensor import Tensor, all_indices


def _content(idx, n):
    alpha = [0] * n
    for i in idx:
        alpha[i] += 1
    return tuple(alpha)


def sym_pi(t):
    """Multiply out the slots: ``v_1 (x) ... (x) v_d -> v_1 ... v_d``."""
    n = t.shape[0]
    if any(m != n for m in t.shape):
        raise PrankError("NOT_CUBICAL", f"shape {t.shape} is not cubical")
    F = t.field
    terms = {}
    for idx, v in t.items():
        alpha = _content(idx, n)
        terms[alpha] = F.add(terms.get(alpha, F.zero), v)
    return Form(F, n, t.order, terms)


def polarize_iota(f):
    """Sum over all orderings of each monomial's factors.

    The entry at a multi-index with content ``alpha`` is ``alpha! * coeff``
    where ``alpha! = prod_j alpha_j!`` (the number of permutations fixing the
    multi-index).
    """
    F, n, d = f.field, f.nvars, f.degree
    if d < 1:
        raise PrankError("UNSUPPORTED", "polarisation needs degree >= 1")
    shape = (n,) * d
    entries = []
    for idx in all_indices(shape):
        alpha = _content(idx, n)
        c = f.terms.get(alpha)
        if c is None:
            entries.append(F.zero)
        else:
            entries.append(F.mul(F.from_int(prod(factorial(a) for a in alpha)), c))
    return Tensor(F, shape, entries)


def dconst(d):
    """The central binomial ``C(d, floor(d/2))``."""
    if d < 1:
        raise PrankError("UNSUPPORTED", "d must be >= 1")
    return comb(d, d // 2)


def theorem_char_ok(field, d):
    """Whether ``char = 0`` or ``char > d`` (so that ``d!`` is invertible)."""
    return field.char == 0 or field.char > d

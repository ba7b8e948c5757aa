"""Decomposition certificates and their reassembly checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import PrankError
from .poly import Form
from .tensor import Tensor, linear_combination, outer

STRENGTH, PARTITION = "STRENGTH", "PARTITION"
INF = math.inf


@dataclass(frozen=True)
class PartitionTerm:
    subset: tuple  # 0-based slots carrying ``a``
    a: Tensor
    b: Tensor


@dataclass(frozen=True)
class StrengthTerm:
    a: Form
    b: Form


@dataclass(frozen=True)
class Decomposition:
    """``sum_k c_k x_k = sum_i a_i * b_i`` for a tuple ``x`` of forms or tensors.

    ``target`` is the shape (PARTITION) or ``(nvars, degree)`` (STRENGTH) of
    the decomposed objects, so that empty decompositions still reassemble.
    """

    kind: str
    field: object
    target: tuple
    terms: tuple = ()
    coeffs: tuple = (1,)

    def __len__(self):
        return len(self.terms)

    @property
    def m(self):
        return len(self.coeffs)

    def map_field(self, func, field):
        """Push every coefficient through ``func`` into ``field``."""
        if self.kind == PARTITION:
            terms = tuple(PartitionTerm(t.subset, t.a.map_field(func, field), t.b.map_field(func, field))
                          for t in self.terms)
        else:
            terms = tuple(StrengthTerm(t.a.map_field(func, field), t.b.map_field(func, field))
                          for t in self.terms)
        return Decomposition(self.kind, field, self.target, terms, tuple(func(c) for c in self.coeffs))


@dataclass(frozen=True)
class RankCertificate:
    """A computed rank, its witness, and how much was proven.

    ``exhaustive`` means every smaller value was excluded by complete search.
    """

    value: float | int
    witness: Optional[Decomposition] = None
    exhaustive: bool = True
    budget_hit: bool = False
    kind: str = PARTITION
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def coeffs(self):
        return None if self.witness is None else self.witness.coeffs


def reassemble(dec):
    """``sum_i a_i * b_i`` as a Tensor or Form."""
    F = dec.field
    if dec.kind == PARTITION:
        shape = tuple(dec.target)
        d = len(shape)
        out = Tensor(F, shape)
        for term in dec.terms:
            I = tuple(term.subset)
            if not I or len(I) >= d:
                raise PrankError("NOT_A_DECOMPOSITION", f"subset {I} is not proper and nonempty")
            out = out + outer(term.a, term.b, I, shape)
        return out
    nvars, degree = dec.target
    out = Form.zero(F, nvars, degree)
    for term in dec.terms:
        if term.a.degree < 1 or term.b.degree < 1 or term.a.degree + term.b.degree != degree:
            raise PrankError("NOT_A_DECOMPOSITION", "factor degrees must be positive and sum to d")
        out = out + term.a * term.b
    return out


def combine(coeffs, items):
    """``sum_k c_k x_k`` for tensors or forms."""
    if isinstance(items[0], Tensor):
        return linear_combination(coeffs, items)
    F = items[0].field
    out = Form.zero(F, items[0].nvars, items[0].degree)
    for c, f in zip(coeffs, items):
        if c != 0:
            out = out + f.scale(c)
    return out


def check_decomposition(dec, items):
    """Raise ``NOT_A_DECOMPOSITION`` unless ``dec`` reassembles ``sum c_k x_k``."""
    if len(dec.coeffs) != len(items):
        raise PrankError("NOT_A_DECOMPOSITION", f"{len(dec.coeffs)} coefficients for {len(items)} items")
    if all(c == 0 for c in dec.coeffs):
        raise PrankError("NOT_A_DECOMPOSITION", "collective coefficients are all zero")
    if items[0].field != dec.field:
        raise PrankError("FIELD_MISMATCH", f"{items[0].field} vs {dec.field}")
    lhs = combine(dec.coeffs, items)
    rhs = reassemble(dec)
    if lhs != rhs:
        raise PrankError("NOT_A_DECOMPOSITION", "reassembly differs from the input combination")
    return True


def is_decomposition(dec, items):
    try:
        return check_decomposition(dec, items)
    except PrankError:
        return False


def check_certificate(cert, items):
    """Soundness of a certificate: the witness reassembles and its size is the value."""
    if cert.witness is None:
        if cert.value == 0:
            if len(items) == 1 and not items[0].is_zero():
                raise PrankError("NOT_A_DECOMPOSITION", "value 0 for a nonzero input")
        return True
    check_decomposition(cert.witness, items)
    if cert.value != len(cert.witness.terms):
        raise PrankError("NOT_A_DECOMPOSITION", f"value {cert.value} but {len(cert.witness)} terms")
    return True


__all__ = [
    "STRENGTH", "PARTITION", "INF", "PartitionTerm", "StrengthTerm", "Decomposition",
    "RankCertificate", "reassemble", "combine", "check_decomposition", "is_decomposition",
    "check_certificate",
]

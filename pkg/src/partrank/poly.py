"""Sparse homogeneous forms over an exact field.

Terms are stored as ``{exponent tuple: raw coefficient}`` with no zero
coefficients.  Iteration is graded-lexicographic: by total degree, then
lexicographically with ``x1 > x2 > ... > xn``.
"""

from __future__ import annotations

import functools
import re
from math import comb

from .errors import PrankError
from .fields import FieldElement


@functools.lru_cache(maxsize=None)
def monomials_of_degree(n, d):
    """Exponent vectors of total degree ``d`` in ``n`` variables, lex-descending."""
    if n == 1:
        return ((d,),)
    out = []
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - a):
            out.append((a,) + rest)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def monomials(n, max_degree):
    """All exponent vectors of degree ``<= max_degree`` in graded-lex order.

    >>> monomials(2, 1)
    ((0, 0), (1, 0), (0, 1))
    """
    out = []
    for d in range(max_degree + 1):
        out.extend(monomials_of_degree(n, d))
    assert len(out) == comb(n + max_degree, n)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _monomial_index(n, d):
    return {m: i for i, m in enumerate(monomials_of_degree(n, d))}


def _graded_key(mono):
    return (sum(mono), tuple(-a for a in mono))


def _raw(F, c):
    if isinstance(c, FieldElement):
        if c.ctx != F:
            raise PrankError("FIELD_MISMATCH", f"{c.ctx} vs {F}")
        return c.value
    return c


def _term_str(F, mono, c):
    factors = [f"x{i + 1}^{a}" if a > 1 else f"x{i + 1}" for i, a in enumerate(mono) if a]
    if c == F.one and factors:
        return "*".join(factors)
    return "*".join([F.format(c)] + factors)


class Form:
    """A homogeneous polynomial of degree ``degree`` in ``nvars`` variables."""

    __slots__ = ("field", "nvars", "degree", "terms")

    def __init__(self, field, nvars, degree, terms=None):
        if nvars < 1 or degree < 0:
            raise PrankError("UNSUPPORTED", "need nvars >= 1 and degree >= 0")
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != nvars or sum(mono) != degree or min(mono) < 0:
                raise PrankError("UNSUPPORTED", f"monomial {mono} not of degree {degree} in {nvars} vars")
            c = _raw(field, c)
            if c != 0:
                clean[mono] = c
        self.field = field
        self.nvars = nvars
        self.degree = degree
        self.terms = clean

    # constructors

    @classmethod
    def zero(cls, field, nvars, degree=0):
        return cls(field, nvars, degree)

    @classmethod
    def var(cls, field, nvars, i):
        """The variable ``x_{i+1}`` (``i`` is 0-based)."""
        mono = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(field, nvars, 1, {mono: field.one})

    @classmethod
    def from_vector(cls, field, nvars, degree, vec):
        """Inverse of :meth:`vector`."""
        monos = monomials_of_degree(nvars, degree)
        return cls(field, nvars, degree, {m: c for m, c in zip(monos, vec) if c != 0})

    # basic protocol

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if self.field != other.field or self.nvars != other.nvars:
            return False
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, self.nvars, frozenset(self.terms.items())))

    def items(self):
        """Terms in graded-lex order."""
        for mono in sorted(self.terms, key=_graded_key):
            yield mono, self.terms[mono]

    def coeff(self, mono):
        return self.terms.get(tuple(mono), self.field.zero)

    def vector(self):
        """Coefficients against :func:`monomials_of_degree` (dense)."""
        z = self.field.zero
        return [self.terms.get(m, z) for m in monomials_of_degree(self.nvars, self.degree)]

    def __repr__(self):
        return f"Form({self.field}, n={self.nvars}, d={self.degree}: {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(_term_str(self.field, m, c) for m, c in self.items())

    # arithmetic

    def _check(self, other):
        if self.field != other.field:
            raise PrankError("FIELD_MISMATCH", f"{self.field} vs {other.field}")
        if self.nvars != other.nvars:
            raise PrankError("VAR_MISMATCH", f"{self.nvars} vs {other.nvars} variables")

    def __add__(self, other):
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        if self.degree != other.degree:
            raise PrankError("UNSUPPORTED", "sum of forms of different degree")
        F = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = F.add(out.get(m, F.zero), c)
        return Form(F, self.nvars, self.degree, out)

    def __neg__(self):
        F = self.field
        return Form(F, self.nvars, self.degree, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        F = self.field
        c = _raw(F, c)
        return Form(F, self.nvars, self.degree, {m: F.mul(c, v) for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Form):
            return form_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def partial(self, i):
        """Formal derivative in ``x_{i+1}`` (0-based ``i``)."""
        if not 0 <= i < self.nvars:
            raise PrankError("BAD_INDEX", f"variable index {i} out of range")
        if self.degree < 1:
            raise PrankError("BAD_INDEX", "cannot differentiate a constant form")
        F = self.field
        out = {}
        for mono, c in self.terms.items():
            a = mono[i]
            if a:
                c2 = F.mul(F.from_int(a), c)
                if c2 != 0:
                    out[mono[:i] + (a - 1,) + mono[i + 1:]] = c2
        return Form(F, self.nvars, self.degree - 1, out)

    def evaluate(self, point):
        """Evaluate at a point of raw field values."""
        F = self.field
        acc = F.zero
        for mono, c in self.terms.items():
            v = c
            for x, a in zip(point, mono):
                if a:
                    v = F.mul(v, F.pow(x, a))
                    if v == 0:
                        break
            acc = F.add(acc, v)
        return acc

    def map_field(self, func, field):
        """Apply a coefficient map (e.g. an embedding K -> L) into ``field``."""
        return Form(field, self.nvars, self.degree, {m: func(c) for m, c in self.terms.items()})

    def substitute(self, matrix):
        """Linear change of variables ``x_i -> sum_j matrix[i][j] x_j``."""
        F, n = self.field, self.nvars
        lins = [Form(F, n, 1, {tuple(1 if k == j else 0 for k in range(n)): row[j] for j in range(n)})
                for row in matrix]
        one = Form(F, n, 0, {(0,) * n: F.one})
        out = Form.zero(F, n, self.degree)
        for mono, c in self.terms.items():
            term = one.scale(c)
            for i, a in enumerate(mono):
                for _ in range(a):
                    term = form_mul(term, lins[i])
            out = out + term if term else out
        return out


def form_mul(a, b):
    """Product of two forms; the degree tag is the sum of the tags."""
    a._check(b)
    F = a.field
    out = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = F.add(out.get(m, F.zero), F.mul(ca, cb))
    return Form(F, a.nvars, a.degree + b.degree, out)


def form_partial(f, i):
    """``d f / d x_i`` with a 1-based variable index."""
    if not 1 <= i <= f.nvars:
        raise PrankError("BAD_INDEX", f"variable index {i} not in 1..{f.nvars}")
    return f.partial(i - 1)


def form_eval(f, point):
    """Evaluate ``f`` at a point given as FieldElements or raw values."""
    if len(point) != f.nvars:
        raise PrankError("VAR_MISMATCH", f"point of length {len(point)} for {f.nvars} variables")
    raw = [_raw(f.field, x) for x in point]
    out = f.evaluate(raw)
    if point and isinstance(point[0], FieldElement):
        return FieldElement(f.field, out)
    return out


_VAR_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_form(text, field, nvars):
    """Parse human notation such as ``"x1^2 + 2*x1*x2 - x3^2"``.

    Coefficients are element literals of ``field`` (``[1,1]`` for extension
    elements).  The degree is taken from the terms; ``"0"`` gives the zero form.
    """
    F = field
    terms = {}
    degree = None
    # protect extension literals, whose commas and brackets are not operators
    text = text.replace(" ", "")
    tokens = re.findall(r"[+-]?(?:\[[^\]]*\]|[^+-])+", text)
    for tok in tokens:
        sign = -1 if tok.startswith("-") else 1
        tok = tok.lstrip("+-")
        coeff = F.one
        mono = [0] * nvars
        for factor in tok.split("*"):
            m = _VAR_RE.match(factor)
            if m:
                i = int(m.group(1)) - 1
                if not 0 <= i < nvars:
                    raise PrankError("BAD_INDEX", f"x{i + 1} with {nvars} variables")
                mono[i] += int(m.group(2) or 1)
            else:
                coeff = F.mul(coeff, F.parse(factor))
        if sign < 0:
            coeff = F.neg(coeff)
        mono = tuple(mono)
        deg = sum(mono)
        if coeff == 0:
            continue
        if degree is not None and deg != degree:
            raise PrankError("UNSUPPORTED", "form is not homogeneous")
        degree = deg
        terms[mono] = F.add(terms.get(mono, F.zero), coeff)
    return Form(F, nvars, degree or 0, terms)


class Polynomial:
    """A not-necessarily-homogeneous sparse polynomial (mined equations)."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field, nvars, terms):
        self.field = field
        self.nvars = nvars
        self.terms = {tuple(m): c for m, c in terms.items() if c != 0}

    @property
    def degree(self):
        return max((sum(m) for m in self.terms), default=0)

    def is_zero(self):
        return not self.terms

    def is_homogeneous(self):
        return len({sum(m) for m in self.terms}) <= 1

    def as_form(self):
        if not self.is_homogeneous():
            raise PrankError("UNSUPPORTED", "polynomial is not homogeneous")
        return Form(self.field, self.nvars, self.degree, self.terms)

    def items(self):
        for mono in sorted(self.terms, key=_graded_key):
            yield mono, self.terms[mono]

    def evaluate(self, point):
        F = self.field
        acc = F.zero
        for mono, c in self.terms.items():
            v = c
            for x, a in zip(point, mono):
                if a:
                    v = F.mul(v, F.pow(x, a))
            acc = F.add(acc, v)
        return acc

    def scale(self, c):
        F = self.field
        return Polynomial(F, self.nvars, {m: F.mul(c, v) for m, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.field, self.nvars, self.terms) == (other.field, other.nvars, other.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(_term_str(self.field, m, c) for m, c in self.items())

"""Exact arithmetic over Q, GF(p) and GF(p^e).

A :class:`FieldCtx` owns the arithmetic; elements are plain Python values
("raw" values) so that the polynomial and tensor kernels can stay fast:

* ``Q``: :class:`fractions.Fraction`
* ``GF(p)``: ``int`` residue in ``[0, p)``
* ``GF(p^e)``: ``int`` code ``c0 + c1*p + ... + c_{e-1}*p^(e-1)`` of the
  power-basis coefficient vector ``(c0, ..., c_{e-1})``.

:class:`FieldElement` wraps a raw value together with its context for
user-facing code that wants operator syntax and mismatch checks.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import PrankError

RATIONAL, PRIME, EXTENSION = "Q", "PRIME", "EXT"

# dense addition tables are built only for fields up to this order
_ADD_TABLE_MAX = 256


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def prime_power(q):
    """Return ``(p, e)`` with ``q == p**e`` or ``None``."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            return (p, e) if q == 1 else None
    return None


# -- univariate polynomials over GF(p), coefficient lists low-to-high ---------

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    """Remainder of ``a`` modulo monic ``m`` over GF(p)."""
    a = [c % p for c in a]
    _ptrim(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _ptrim(a)
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def is_irreducible(modulus, p):
    """Irreducibility of a monic polynomial over GF(p) by trial division.

    ``modulus`` lists coefficients low-to-high.  Desk scale only: every monic
    polynomial of degree up to ``deg/2`` is tried as a divisor.
    """
    modulus = [c % p for c in modulus]
    deg = len(modulus) - 1
    if deg < 1 or modulus[-1] != 1:
        return False
    if deg == 1:
        return True
    if modulus[0] == 0:
        return False
    for k in range(1, deg // 2 + 1):
        for code in range(p**k):
            cand = [(code // p**i) % p for i in range(k)] + [1]
            if not _pmod(modulus, cand, p):
                return False
    return True


def smallest_irreducible(p, e):
    """Monic irreducible of degree ``e`` with the smallest coefficient code.

    Candidates are ordered by ``c0 + c1*p + ... + c_{e-1}*p^(e-1)``, which is
    lexicographic order on ``(c_{e-1}, ..., c0)``.
    """
    for code in range(p**e):
        cand = [(code // p**i) % p for i in range(e)] + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise PrankError("UNSUPPORTED", f"no irreducible of degree {e} over GF({p})")


# -- field contexts ------------------------------------------------------------

@dataclass(frozen=True)
class FieldCtx:
    """A field descriptor that owns element arithmetic on raw values."""

    kind: str
    p: int = 0
    e: int = 1
    modulus: tuple = ()

    def __str__(self):
        if self.kind == RATIONAL:
            return "Q"
        if self.kind == PRIME:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e};{','.join(map(str, self.modulus))})"

    def __repr__(self):
        return f"FieldCtx({self})"

    # structure

    @property
    def char(self):
        return 0 if self.kind == RATIONAL else self.p

    @property
    def is_finite(self):
        return self.kind != RATIONAL

    @property
    def order(self):
        if self.kind == RATIONAL:
            return None
        return self.p**self.e

    @property
    def zero(self):
        return Fraction(0) if self.kind == RATIONAL else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == RATIONAL else 1

    def elements(self):
        """All raw elements in code order (finite fields only)."""
        if not self.is_finite:
            raise PrankError("INFINITE_FIELD", "Q has no element enumeration")
        return range(self.order)

    def nonzero_elements(self):
        return range(1, self.order)

    def __call__(self, x):
        """Wrap ``x`` (int, Fraction, raw value or literal string) as an element."""
        if isinstance(x, FieldElement):
            if x.ctx != self:
                raise PrankError("FIELD_MISMATCH", f"{x.ctx} vs {self}")
            return x
        if isinstance(x, str):
            return FieldElement(self, self.parse(x))
        return FieldElement(self, self.coerce(x))

    def coerce(self, x):
        """Raw value from an integer / Fraction (reduced into the field)."""
        if self.kind == RATIONAL:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise PrankError("DIV_BY_ZERO", f"{x} has no image in {self}")
            return self.mul(self.from_int(x.numerator), self.inv(self.from_int(x.denominator)))
        if self.kind == EXTENSION and not 0 <= x < self.order:
            raise PrankError("UNSUPPORTED", f"extension code {x} out of range")
        return x % self.p if self.kind == PRIME else x

    def from_int(self, k):
        if self.kind == RATIONAL:
            return Fraction(k)
        return k % self.p

    # arithmetic on raw values

    def add(self, a, b):
        if self.kind == PRIME:
            return (a + b) % self.p
        if self.kind == RATIONAL:
            return a + b
        t = self._tables
        if t.add is not None:
            return t.add[a][b]
        p = self.p
        return self.from_digits([(x + y) % p for x, y in zip(t.digits[a], t.digits[b])])

    def neg(self, a):
        if self.kind == PRIME:
            return (-a) % self.p
        if self.kind == RATIONAL:
            return -a
        return self._tables.neg[a]

    def sub(self, a, b):
        if self.kind == PRIME:
            return (a - b) % self.p
        if self.kind == RATIONAL:
            return a - b
        return self.add(a, self._tables.neg[b])

    def mul(self, a, b):
        if self.kind == PRIME:
            return (a * b) % self.p
        if self.kind == RATIONAL:
            return a * b
        if a == 0 or b == 0:
            return 0
        t = self._tables
        return t.exp[t.log[a] + t.log[b]]

    def inv(self, a):
        if a == 0:
            raise PrankError("DIV_BY_ZERO", f"inverse of zero in {self}")
        if self.kind == PRIME:
            return pow(a, -1, self.p)
        if self.kind == RATIONAL:
            return 1 / a
        t = self._tables
        return t.exp[(self.order - 1 - t.log[a]) % (self.order - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k):
        if k < 0:
            return self.pow(self.inv(a), -k)
        if self.kind == PRIME:
            return pow(a, k, self.p)
        if self.kind == RATIONAL:
            return a**k
        if k == 0:
            return 1
        if a == 0:
            return 0
        t = self._tables
        return t.exp[(t.log[a] * k) % (self.order - 1)]

    def frobenius(self, a):
        """``a -> a^p`` (the identity on Q and prime fields)."""
        if self.kind == EXTENSION:
            return self.pow(a, self.p)
        return a

    # extension-field coordinates

    def digits(self, a):
        """Power-basis coefficients ``(c0, ..., c_{e-1})`` of a raw value."""
        if self.kind == EXTENSION:
            return self._tables.digits[a]
        if self.kind == PRIME:
            return (a,)
        raise PrankError("UNSUPPORTED", "Q has no power basis")

    def from_digits(self, cs):
        code = 0
        for c in reversed(cs):
            code = code * self.p + c % self.p
        return code

    @cached_property
    def _tables(self):
        return _ExtTables(self)

    # literals

    def parse(self, text):
        """Parse an element literal into a raw value."""
        text = text.strip()
        try:
            if self.kind == RATIONAL:
                return Fraction(text)
            if text.startswith("["):
                if not text.endswith("]"):
                    raise ValueError(text)
                parts = [int(c) for c in text[1:-1].split(",") if c.strip()]
                if len(parts) != self.e:
                    raise ValueError(text)
                if self.kind == PRIME:
                    return parts[0] % self.p
                return self.from_digits(parts)
            return self.from_int(int(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise PrankError("UNSUPPORTED", f"bad element literal {text!r} for {self}") from exc

    def format(self, a):
        """Canonical literal of a raw value; ``parse(format(a)) == a``."""
        if self.kind == RATIONAL:
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        if self.kind == PRIME:
            return str(a)
        return "[" + ",".join(map(str, self.digits(a))) + "]"

    def random(self, rng, nonzero=False):
        if self.kind == RATIONAL:
            while True:
                x = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                if x or not nonzero:
                    return x
        lo = 1 if nonzero else 0
        return rng.randrange(lo, self.order)


class _ExtTables:
    """Log/exp tables for GF(p^e) built from a primitive element."""

    def __init__(self, F):
        p, e, q = F.p, F.e, F.p**F.e
        mod = list(F.modulus)
        self.digits = [tuple((c // p**i) % p for i in range(e)) for c in range(q)]

        def code(poly):
            poly = list(poly) + [0] * (e - len(poly))
            return F.from_digits(poly)

        for g in range(1, q):
            gpoly = _ptrim(list(self.digits[g]))
            exp = []
            cur = [1]
            seen = set()
            for _ in range(q - 1):
                c = code(cur)
                if c in seen:
                    break
                seen.add(c)
                exp.append(c)
                cur = _pmod(_pmul(cur, gpoly, p), mod, p)
            if len(exp) == q - 1:
                break
        else:  # pragma: no cover - a finite field always has a generator
            raise PrankError("REDUCIBLE_MODULUS", str(F))
        self.exp = exp + exp
        self.log = [0] * q
        for k, c in enumerate(exp):
            self.log[c] = k
        self.neg = [F.from_digits([(-x) % p for x in self.digits[a]]) for a in range(q)]
        self.add = None
        if q <= _ADD_TABLE_MAX:
            self.add = [
                [F.from_digits([(x + y) % p for x, y in zip(self.digits[a], self.digits[b])])
                 for b in range(q)]
                for a in range(q)
            ]


_SPEC_RE = re.compile(r"^GF\((\d+)(?:\^(\d+))?(?:;([\d,\s]+))?\)$")


@functools.lru_cache(maxsize=None)
def make_field(spec):
    """Build a validated :class:`FieldCtx` from a field spec string.

    Grammar: ``Q`` | ``GF(p)`` | ``GF(q)`` (q a prime power) | ``GF(p^e)`` |
    ``GF(p^e;c0,c1,...,ce)`` with modulus coefficients low-to-high.

    >>> make_field("GF(4)")
    FieldCtx(GF(2^2;1,1,1))
    """
    s = spec.replace(" ", "")
    if s in ("Q", "QQ"):
        return FieldCtx(RATIONAL)
    m = _SPEC_RE.match(s)
    if not m:
        raise PrankError("UNSUPPORTED", f"unrecognised field spec {spec!r}")
    base, exp, coeffs = int(m.group(1)), m.group(2), m.group(3)
    if exp is None:
        pe = prime_power(base)
        if pe is None:
            raise PrankError("NON_PRIME", f"{base} is not a prime power")
        p, e = pe
    else:
        p, e = base, int(exp)
        if not is_prime(p):
            raise PrankError("NON_PRIME", f"{p} is not prime")
        if e < 1:
            raise PrankError("UNSUPPORTED", "extension degree must be >= 1")
    if coeffs is not None:
        mod = tuple(int(c) % p for c in coeffs.split(","))
        if len(mod) != e + 1 or mod[-1] != 1:
            raise PrankError("UNSUPPORTED", "modulus must be monic of degree e")
        if not is_irreducible(list(mod), p):
            raise PrankError("REDUCIBLE_MODULUS", f"{coeffs} factors over GF({p})")
    elif e > 1:
        mod = smallest_irreducible(p, e)
    if e == 1:
        return FieldCtx(PRIME, p)
    return FieldCtx(EXTENSION, p, e, mod)


# -- element wrapper -----------------------------------------------------------

@dataclass(frozen=True)
class FieldElement:
    ctx: FieldCtx
    value: object

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise PrankError("FIELD_MISMATCH", f"{self.ctx} vs {other.ctx}")
            return other.value
        return self.ctx.coerce(other)

    def __add__(self, other):
        return FieldElement(self.ctx, self.ctx.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.ctx, self.ctx.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.ctx, self.ctx.div(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, k):
        return FieldElement(self.ctx, self.ctx.pow(self.value, k))

    def inverse(self):
        return FieldElement(self.ctx, self.ctx.inv(self.value))

    def is_zero(self):
        return self.value == 0

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.ctx.format(self.value)


def arith(a, b, op):
    """Apply ``ADD``/``MUL`` to ``(a, b)`` or the unary ``INV``/``NEG`` to ``b``."""
    if op in ("ADD", "MUL"):
        if a.ctx != b.ctx:
            raise PrankError("FIELD_MISMATCH", f"{a.ctx} vs {b.ctx}")
        return a + b if op == "ADD" else a * b
    if op == "INV":
        return b.inverse()
    if op == "NEG":
        return -b
    raise PrankError("UNSUPPORTED", f"unknown op {op!r}")


# -- subfields and coordinates -------------------------------------------------

class Extension:
    """``L`` viewed as a vector space over a subfield ``K``.

    The K-basis of L is ``1, z, ..., z^(b-1)`` where ``z`` is L's power-basis
    generator and ``b = [L:K]``.  For a non-prime ``K`` the embedding
    ``K -> L`` sends K's generator to the smallest-code root of K's modulus
    in L.
    """

    def __init__(self, K, L):
        self.K, self.L = K, L
        if K == L:
            self.degree = 1
            self.root = None
            return
        if not (K.is_finite and L.is_finite and K.p == L.p and L.e % K.e == 0):
            raise PrankError("NOT_AN_EXTENSION", f"{L} is not an extension of {K}")
        self.degree = L.e // K.e
        p = L.p
        if K.kind == PRIME:
            self.root = None
        else:
            self.root = next(x for x in L.elements() if self._eval_in_L(K.modulus, x) == 0)
            self._rho_pows = [L.pow(self.root, i) for i in range(K.e)]
            z = L.from_digits([0, 1])
            # GF(p)-basis rho^i z^j of L, ordered j-major
            cols = []
            for j in range(self.degree):
                zj = L.pow(z, j)
                for i in range(K.e):
                    cols.append(L.digits(L.mul(self._rho_pows[i], zj)))
            n = L.e
            mat = [[cols[c][r] for c in range(n)] for r in range(n)]
            from .linalg import inverse_matrix

            self._to_basis = inverse_matrix(mat, FieldCtx(PRIME, p))

    def _eval_in_L(self, poly, x):
        L = self.L
        acc = 0
        for c in reversed(poly):
            acc = L.add(L.mul(acc, x), L.from_int(c))
        return acc

    def embed(self, k):
        """Image of a raw K-value in L."""
        if self.K == self.L or self.K.kind == PRIME:
            return k
        L = self.L
        acc = 0
        for c, rp in zip(self.K.digits(k), self._rho_pows):
            if c:
                acc = L.add(acc, L.mul(L.from_int(c), rp))
        return acc

    def coords(self, x):
        """The K-coordinates of ``x`` in the basis ``1, z, ..., z^(b-1)``."""
        if self.K == self.L:
            return (x,)
        if self.K.kind == PRIME:
            return self.L.digits(x)
        p, a = self.L.p, self.K.e
        dig = self.L.digits(x)
        flat = [sum(row[c] * dig[c] for c in range(len(dig))) % p for row in self._to_basis]
        return tuple(self.K.from_digits(flat[j * a:(j + 1) * a]) for j in range(self.degree))

    def recombine(self, coords):
        L = self.L
        if self.K == L:
            return coords[0]
        z = L.from_digits([0, 1])
        acc = 0
        for j, k in enumerate(coords):
            acc = L.add(acc, L.mul(self.embed(k), L.pow(z, j)))
        return acc

    def contains(self, x):
        """Whether the L-value ``x`` lies in (the image of) K."""
        c = self.coords(x)
        return all(v == 0 for v in c[1:])

    def restrict(self, x):
        """The K-value whose image is ``x``; ``x`` must lie in K."""
        c = self.coords(x)
        if any(v != 0 for v in c[1:]):
            raise PrankError("NOT_AN_EXTENSION", f"{self.L.format(x)} is not in {self.K}")
        return c[0]


@functools.lru_cache(maxsize=None)
def extension(K, L):
    return Extension(K, L)


def prime_subfield(F):
    if F.kind == RATIONAL:
        return F
    return FieldCtx(PRIME, F.p)


def ext_coords(L, x, K=None):
    """Coordinates of ``x`` (a FieldElement or raw value of ``L``) over ``K``.

    ``K`` defaults to the prime subfield.  Returns a tuple of FieldElements
    of K when given a FieldElement, raw values otherwise.
    """
    K = prime_subfield(L) if K is None else K
    ext = extension(K, L)
    if isinstance(x, FieldElement):
        if x.ctx != L:
            raise PrankError("FIELD_MISMATCH", f"{x.ctx} vs {L}")
        return tuple(FieldElement(K, c) for c in ext.coords(x.value))
    return ext.coords(x)

"""Line-oriented text formats for forms, tensors, tuples and certificates.

Blocks::

    FORM <field> n=<nvars> d=<degree>      then  e1 ... en : <literal>
    TENSOR <field> shape=n1,...,nd          then  i1 ... id : <literal>  (1-based)
    POLY <field> n=<nvars>                  inhomogeneous polynomial, same term lines
    CERT <kind> value=<int|INF> exhaustive=<0|1> [field=.. target=.. budget_hit=..]
    c: <literal> ...                        collective coefficients (m > 1)
    TERM [I=<1-based slots>]                followed by the a-block and the b-block

Blank lines and lines starting with ``#`` are ignored.  A tuple file is just
several FORM or TENSOR blocks in a row.
"""

from __future__ import annotations

from .certificate import (INF, PARTITION, STRENGTH, Decomposition, PartitionTerm,
                          RankCertificate, StrengthTerm)
from .errors import PrankError
from .fields import extension, make_field
from .poly import Form, Polynomial
from .tensor import Tensor


def _bad(msg):
    return PrankError("PARSE_ERROR", msg)


def _kv(tokens):
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise _bad(f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        out[k] = v
    return out


def _ints(text):
    return tuple(int(x) for x in text.split(",") if x.strip())


def _term_lines(F, terms):
    for key, c in terms:
        yield " ".join(map(str, key)) + " : " + F.format(c)


# -- writers ---------------------------------------------------------------------

def format_form(f):
    head = f"FORM {f.field} n={f.nvars} d={f.degree}"
    return "\n".join([head, *_term_lines(f.field, f.items())]) + "\n"


def format_tensor(t):
    head = f"TENSOR {t.field} shape={','.join(map(str, t.shape))}"
    items = ((tuple(i + 1 for i in idx), v) for idx, v in t.items())
    return "\n".join([head, *_term_lines(t.field, items)]) + "\n"


def format_poly(p):
    head = f"POLY {p.field} n={p.nvars}"
    return "\n".join([head, *_term_lines(p.field, p.items())]) + "\n"


def format_block(x):
    if isinstance(x, Tensor):
        return format_tensor(x)
    if isinstance(x, Form):
        return format_form(x)
    if isinstance(x, Polynomial):
        return format_poly(x)
    raise TypeError(f"cannot serialise {type(x).__name__}")


def format_tuple(items):
    return "".join(format_block(x) for x in items)


def _value_text(v):
    return "INF" if v == INF else str(int(v))


def format_cert(cert, field=None, target=None):
    """Serialise a RankCertificate; ``field``/``target`` are needed without a witness."""
    w = cert.witness
    field = w.field if w is not None else field
    target = w.target if w is not None else target
    head = [f"CERT {cert.kind}", f"value={_value_text(cert.value)}",
            f"exhaustive={int(bool(cert.exhaustive))}"]
    if field is not None:
        head.append(f"field={field}")
    if target is not None:
        head.append("target=" + ",".join(map(str, target)))
    if cert.budget_hit:
        head.append("budget_hit=1")
    lines = [" ".join(head)]
    if w is not None:
        if w.m > 1:
            lines.append("c: " + " ".join(w.field.format(c) for c in w.coeffs))
        for term in w.terms:
            if w.kind == PARTITION:
                lines.append("TERM I=" + ",".join(str(j + 1) for j in term.subset))
            else:
                lines.append("TERM")
            lines.append(format_block(term.a).rstrip("\n"))
            lines.append(format_block(term.b).rstrip("\n"))
    return "\n".join(lines) + "\n"


def format_decomposition(dec, value=None, exhaustive=False):
    """A certificate file for a bare decomposition (e.g. a descent output)."""
    cert = RankCertificate(len(dec) if value is None else value, dec, exhaustive=exhaustive, kind=dec.kind)
    return format_cert(cert)


# -- readers ---------------------------------------------------------------------

def _lines(text):
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            yield line


def _parse_term(F, line, width):
    if ":" not in line:
        raise _bad(f"missing ':' in term line {line!r}")
    left, right = line.split(":", 1)
    key = tuple(int(x) for x in left.split())
    if len(key) != width:
        raise _bad(f"expected {width} indices in {line!r}")
    return key, F.parse(right)


def _read_block(head, body):
    parts = head.split()
    kind = parts[0]
    if len(parts) < 2:
        raise _bad(f"header without field: {head!r}")
    F = make_field(parts[1])
    kv = _kv(parts[2:])
    try:
        if kind == "FORM":
            n, d = int(kv["n"]), int(kv["d"])
            terms = {}
            for line in body:
                mono, c = _parse_term(F, line, n)
                if sum(mono) != d or min(mono, default=0) < 0:
                    raise _bad(f"monomial {mono} is not of degree {d}")
                terms[mono] = F.add(terms.get(mono, F.zero), c)
            return Form(F, n, d, terms)
        if kind == "TENSOR":
            shape = _ints(kv["shape"])
            values = {}
            for line in body:
                idx, c = _parse_term(F, line, len(shape))
                if any(not 1 <= i <= n for i, n in zip(idx, shape)):
                    raise _bad(f"index {idx} outside shape {shape}")
                values[tuple(i - 1 for i in idx)] = c
            t = Tensor(F, shape)
            entries = list(t.entries)
            for idx, c in values.items():
                entries[t.flat_index(idx)] = c
            return Tensor(F, shape, entries)
        if kind == "POLY":
            n = int(kv["n"])
            terms = {}
            for line in body:
                mono, c = _parse_term(F, line, n)
                terms[mono] = F.add(terms.get(mono, F.zero), c)
            return Polynomial(F, n, terms)
    except KeyError as exc:
        raise _bad(f"header {head!r} lacks {exc.args[0]}=") from exc
    raise _bad(f"unknown block {kind!r}")


_BLOCKS = ("FORM", "TENSOR", "POLY")


def _split_blocks(lines):
    """Group lines into ``(header, body)`` pairs."""
    out = []
    for line in lines:
        word = line.split(None, 1)[0]
        if word in _BLOCKS:
            out.append((line, []))
        elif not out:
            raise _bad(f"data before any header: {line!r}")
        else:
            out[-1][1].append(line)
    return out


def parse_tuple(text, field=None):
    """All FORM / TENSOR / POLY blocks of a file.

    With ``field`` given, items over a subfield are embedded into it; any
    other mismatch raises FIELD_MISMATCH.
    """
    items = [_read_block(h, b) for h, b in _split_blocks(_lines(text))]
    if not items:
        raise _bad("no blocks found")
    return [lift(x, field) for x in items] if field is not None else items


def lift(x, field):
    if x.field == field:
        return x
    try:
        ext = extension(x.field, field)
    except PrankError as exc:
        raise PrankError("FIELD_MISMATCH", f"input over {x.field}, requested {field}") from exc
    return x.map_field(ext.embed, field)


def parse_cert(text):
    """Read a CERT file back into a RankCertificate (witness included)."""
    lines = list(_lines(text))
    if not lines or not lines[0].startswith("CERT "):
        raise _bad("certificate must start with a CERT header")
    parts = lines[0].split()
    if len(parts) < 2 or parts[1] not in (STRENGTH, PARTITION):
        raise _bad(f"bad certificate kind in {lines[0]!r}")
    kind = parts[1]
    kv = _kv(parts[2:])
    try:
        value = INF if kv["value"] == "INF" else int(kv["value"])
        exhaustive = kv["exhaustive"] == "1"
    except (KeyError, ValueError) as exc:
        raise _bad("CERT header needs value= and exhaustive=") from exc
    budget_hit = kv.get("budget_hit", "0") == "1"
    F = make_field(kv["field"]) if "field" in kv else None
    target = _ints(kv["target"]) if "target" in kv else None

    coeffs = None
    rest = lines[1:]
    if rest and rest[0].startswith("c:"):
        coeffs = rest[0][2:].split()
        rest = rest[1:]
    terms, chunk = [], []
    groups = []
    for line in rest:
        if line.startswith("TERM"):
            if chunk:
                groups.append(chunk)
            chunk = [line]
        elif not chunk:
            raise _bad(f"unexpected line {line!r}")
        else:
            chunk.append(line)
    if chunk:
        groups.append(chunk)
    for g in groups:
        blocks = [_read_block(h, b) for h, b in _split_blocks(g[1:])]
        if len(blocks) != 2:
            raise _bad("each TERM needs exactly two blocks")
        a, b = blocks
        F = F or a.field
        if kind == PARTITION:
            tok = g[0].split()
            sub = _kv(tok[1:]).get("I")
            if sub is None:
                raise _bad("partition TERM needs I=")
            terms.append(PartitionTerm(tuple(i - 1 for i in _ints(sub)), a, b))
        else:
            terms.append(StrengthTerm(a, b))
    if F is None:
        if coeffs or terms:
            raise _bad("certificate lacks a field")
        return RankCertificate(value, None, exhaustive, budget_hit, kind)
    if target is None and terms:
        if kind == PARTITION:
            raise _bad("partition certificate needs target=")
        target = (terms[0].a.nvars, terms[0].a.degree + terms[0].b.degree)
    c = tuple(F.parse(x) for x in coeffs) if coeffs else (F.one,)
    witness = None
    if terms or coeffs or ("field" in kv and target is not None and value == 0):
        if target is None:
            raise _bad("certificate needs target=")
        witness = Decomposition(kind, F, tuple(target), tuple(terms), c)
    elif value != INF and value > 0:
        raise _bad("positive value without terms")
    return RankCertificate(value, witness, exhaustive, budget_hit, kind)


def read_text(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)

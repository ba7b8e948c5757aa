import random

import pytest
from hypothesis import given, settings, strategies as st

from partrank.errors import PrankError
from partrank.fields import make_field
from partrank.harness import random_form, random_tensor
from partrank.io import format_cert, format_tuple, parse_cert, parse_tuple
from partrank.search import prk_exact, strength_exact
from partrank.certificate import check_certificate

F3, F9 = make_field("GF(3)"), make_field("GF(9)")


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["GF(2)", "GF(5)", "GF(9)", "Q"]), st.integers(0, 10**6))
def test_tuple_round_trip(spec, seed):
    F = make_field(spec)
    rng = random.Random(seed)
    items = [random_tensor(F, (2, 1, 3), rng), random_tensor(F, (2, 1, 3), rng)]
    assert parse_tuple(format_tuple(items)) == items
    forms = [random_form(F, 3, 2, rng)]
    assert parse_tuple(format_tuple(forms)) == forms


def test_cert_round_trip():
    rng = random.Random(4)
    for _ in range(10):
        t = random_tensor(F3, (2, 2, 2), rng)
        cert = prk_exact([t])
        text = format_cert(cert)
        back = parse_cert(text)
        assert back.value == cert.value and back.exhaustive
        check_certificate(back, [t])
        assert format_cert(back) == text
        f = random_form(F3, 2, 3, rng)
        cs = strength_exact([f])
        check_certificate(parse_cert(format_cert(cs)), [f])


def test_comments_and_blanks():
    text = "# hi\n\nTENSOR GF(3) shape=2\n\n1 : 2\n# bye\n"
    (t,) = parse_tuple(text)
    assert t.entries == (2, 0)


def test_lift_to_extension():
    (t,) = parse_tuple("TENSOR GF(3) shape=2\n1 : 2\n", F9)
    assert t.field == F9


@pytest.mark.parametrize("text", [
    "", "1 2 : 3\n", "TENSOR GF(3) shape=2\n3 : 1\n", "FORM GF(3) n=2 d=2\n1 0 : 1\n",
    "TENSOR GF(3)\n", "WHAT GF(3) n=1\n", "TENSOR GF(3) shape=2\n1 2\n",
])
def test_parse_errors(text):
    with pytest.raises(PrankError) as exc:
        parse_tuple(text)
    assert exc.value.code == "PARSE_ERROR"


def test_field_mismatch():
    with pytest.raises(PrankError) as exc:
        parse_tuple("TENSOR GF(5) shape=1\n1 : 1\n", F9)
    assert exc.value.code == "FIELD_MISMATCH"


def test_bad_cert():
    for text in ["", "CERT FOO value=1 exhaustive=1\n", "CERT STRENGTH exhaustive=1\n"]:
        with pytest.raises(PrankError):
            parse_cert(text)

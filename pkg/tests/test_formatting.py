import math

import pytest
from flint import arb
from hypothesis import given, settings
from hypothesis import strategies as st

from eulerprods.arith import PrecisionContext, to_arb
from eulerprods.constants import CONSTANTS, named_constant
from eulerprods.errors import DomainError
from eulerprods.formatting import certify, decimal_string, format_digit_blocks, format_latex

from reference_values import CONSTANT_DIGITS


def test_alpha_twenty_digits():
    assert format_digit_blocks(named_constant("alpha0_3", 30), 20) == "0.63890 94054 45343 88225"


def test_single_boundary_ball():
    x = arb(1, 10**-40)
    assert format_digit_blocks(x, 10) == "1.00000 00000"
    c = certify(x, 10)
    assert not c.truncated and c.n == 10
    assert certify(arb("0.51234567891", 10**-40), 10).truncated


def test_shortfall_note():
    with PrecisionContext(20).workprec():
        x = arb("0.123449999", "1e-4")
    text = format_digit_blocks(x, 8)
    head, note = text.split("  ")
    assert len(head.replace(" ", "")) - 2 <= 4
    assert note.startswith("[shortfall:") and "of 8 decimals" in note


def test_negative_and_uncertified():
    assert format_digit_blocks(arb("-2.5", "1e-20"), 3) == "-2.500"
    assert format_digit_blocks(arb(0, 10**-30), 5) == "0.00000"
    assert format_digit_blocks(arb(0, "1e-3"), 5) == "0.00  [shortfall: 2 of 5 decimals certified]"
    assert certify(arb(0, 10), 5) is None
    assert certify(arb("inf"), 5) is None
    assert format_digit_blocks(arb(0, 10), 5).startswith("?")


def test_latex_layout():
    x = named_constant("gs_A", 120)
    tex = format_latex(x, 100)
    assert tex.startswith(r"1.&95049\,11124\,46287")
    assert tex.count("\n\\\\&") == 1 and tex.endswith(r"\cdots")
    assert tex.replace(r"\,", "").replace("\n\\\\&", "").replace("&", "")[:-len(r"\cdots")] == CONSTANT_DIGITS["gs_A"]
    assert format_latex(arb(1, "1e-3"), 10).endswith(r"\ (\text{shortfall})")


@settings(max_examples=200)
@given(st.fractions(min_value=-50, max_value=50, max_denominator=10**12), st.integers(0, 30), st.integers(1, 20))
def test_certified_digits_are_sound(x, rad_exp, n):
    with PrecisionContext(40).workprec():
        ball = to_arb(x) + arb(0, 10 ** (-rad_exp))
    c = certify(ball, n)
    if c is None:
        return
    shown = int(c.integer + c.fraction) * (-1 if c.negative else 1)
    # every point of the ball is within one unit in the last place
    assert abs(x * 10**c.n - shown) <= 1 + 10 ** (c.n - rad_exp)
    if c.truncated:
        assert shown == (math.floor(abs(x) * 10**c.n) * (-1 if x < 0 else 1))


def test_prefix_property():
    long = format_digit_blocks(named_constant("beta0", 200), 200).replace(" ", "")
    short = format_digit_blocks(named_constant("beta0", 60), 60).replace(" ", "")
    assert long.startswith(short)


def test_decimal_string_round_trip():
    x = named_constant("alpha0_3", 50)
    s = decimal_string(x, 60)
    with PrecisionContext(60).workprec():
        assert arb(s).overlaps(x) or abs(arb(s) - x) < 10**-58


@pytest.mark.parametrize("name", sorted(CONSTANTS))
def test_named_constants_fifty_digits(name):
    assert format_digit_blocks(named_constant(name, 60), 50).replace(" ", "") == CONSTANT_DIGITS[name][: len(CONSTANT_DIGITS[name].split(".")[0]) + 51]


def test_unknown_constant():
    with pytest.raises(DomainError):
        named_constant("zeta5", 10)
    with pytest.raises(DomainError):
        named_constant("gs_A", 0)


def test_many_digits():
    with PrecisionContext(6000).workprec():
        x = arb.pi()
    text = format_digit_blocks(x, 6000)
    assert text.startswith("3.14159 26535") and len(text.replace(" ", "")) == 6002

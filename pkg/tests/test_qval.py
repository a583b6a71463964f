"""Exact q-power value semantics."""

from __future__ import annotations

from fractions import Fraction

from ffba import QVal, ZERO, qexp
from ffba.qval import BelowLimit


def test_ordering_with_zero():
    assert ZERO < qexp(-100)
    assert not (qexp(-100) < ZERO)
    assert qexp(-3) < qexp(-2) < qexp(0) < qexp(5)
    assert ZERO == QVal(None)
    assert ZERO.is_zero and not qexp(0).is_zero


def test_product_and_scaling():
    assert qexp(2) * qexp(-5) == qexp(-3)
    assert qexp(1) * ZERO == ZERO
    assert ZERO * ZERO == ZERO
    assert qexp(4).scaled(-4) == qexp(0)
    assert ZERO.scaled(7) == ZERO


def test_fraction_exponents_normalize():
    assert qexp(Fraction(3, 2)) < qexp(2)
    assert qexp(Fraction(4, 2)) == qexp(2)
    assert isinstance(QVal(Fraction(6, 3)).exponent, int)


def test_to_float():
    assert qexp(-2).to_float(2) == 0.25
    assert ZERO.to_float(3) == 0.0
    assert abs(qexp(Fraction(1, 2)).to_float(4) - 2.0) < 1e-12


def test_json_roundtrip():
    for v in (ZERO, qexp(-7), qexp(Fraction(5, 3))):
        assert QVal.from_json(v.to_json()) == v


def test_below_limit_equality():
    assert BelowLimit(8) == BelowLimit(8)
    assert BelowLimit(8) != BelowLimit(9)
    assert len({BelowLimit(3), BelowLimit(3)}) == 1

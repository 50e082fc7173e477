"""Tests for scalar arithmetic and parsing."""

from fractions import Fraction

import numpy as np
import pytest
from sympy import Rational, sqrt

from akverify.core.errors import ModeMismatchError, NegativeRootError, ScalarParseError
from akverify.core.scalar import (
    EXACT,
    ScalarMode,
    check_same_mode,
    exact_sqrt,
    float_mode,
    format_scalar,
    parse_scalar,
)


class TestScalarMode:
    """Test mode construction, coercion and comparison."""

    def test_exact_mode_rejects_tolerance(self):
        """Exact mode takes no tolerance."""
        with pytest.raises(ValueError, match="no tolerance"):
            ScalarMode("exact", 1e-3)

    def test_negative_tolerance(self):
        """Tolerances are nonnegative."""
        with pytest.raises(ValueError, match="nonnegative"):
            float_mode(-1.0)

    def test_coerce_int_and_fraction(self):
        """Integers and fractions enter exact mode unchanged in value."""
        assert EXACT.coerce(3) == Rational(3)
        assert isinstance(EXACT.coerce(3), Rational)
        assert EXACT.coerce(Rational(1, 3)) == Rational(1, 3)

    def test_coerce_float_into_exact(self):
        """A float never silently becomes a rational."""
        with pytest.raises(ModeMismatchError, match="exact computation"):
            EXACT.coerce(0.5)

    def test_coerce_into_float(self):
        """Float mode turns everything into floats."""
        mode = float_mode()
        assert mode.coerce(Rational(1, 4)) == 0.25
        assert isinstance(mode.coerce(2), float)

    def test_exact_zero_is_exact(self):
        """Exact zero test has no tolerance."""
        assert EXACT.is_zero(Rational(0))
        assert not EXACT.is_zero(Rational(1, 10**30))

    def test_float_zero_within_tolerance(self):
        """Float mode treats |x| <= tol as zero."""
        mode = float_mode(1e-6)
        assert mode.is_zero(5e-7)
        assert not mode.is_zero(2e-6)
        assert mode.equal(1.0, 1.0 + 1e-7)

    def test_sqrt_exact(self):
        """Exact roots of rational squares."""
        assert EXACT.sqrt(Rational(9, 4)) == Rational(3, 2)

    def test_sqrt_radical(self):
        """Exact mode keeps irrational roots as algebraic numbers."""
        root = EXACT.sqrt(Rational(1, 2))
        assert root == sqrt(2) / 2
        assert EXACT.equal(root * root, Rational(1, 2))

    def test_radical_zero_test(self):
        """Sums of radicals that cancel are zero."""
        value = (1 + sqrt(2)) * (1 - sqrt(2)) + 1
        assert EXACT.is_zero(value)
        assert not EXACT.is_zero(sqrt(2) - sqrt(3) + 1)

    def test_coerce_stdlib_fraction(self):
        """Standard-library fractions become sympy rationals."""
        value = EXACT.coerce(Fraction(2, 6))
        assert value == Rational(1, 3)
        assert isinstance(value, Rational)

    def test_sqrt_float_tiny_negative(self):
        """Float mode clamps roundoff below zero."""
        assert float_mode(1e-9).sqrt(-1e-12) == 0.0

    def test_labels(self):
        """Mode labels appear in reports."""
        assert EXACT.label() == "exact"
        assert float_mode(1e-9).label() == "float(tol=1e-09)"


class TestParseScalar:
    """Test literal parsing."""

    def test_rational_literals(self):
        """Integers and p/q strings."""
        assert parse_scalar("3") == Rational(3)
        assert parse_scalar("-2/6") == Rational(-1, 3)
        assert parse_scalar(" 1 / 2 ") == Rational(1, 2)

    def test_zero_denominator(self):
        """p/0 is rejected."""
        with pytest.raises(ScalarParseError, match="Zero denominator"):
            parse_scalar("1/0")

    def test_decimal_needs_float_mode(self):
        """Decimals are float-mode only."""
        with pytest.raises(ScalarParseError, match="p/q"):
            parse_scalar("0.5")
        assert parse_scalar("0.5", float_mode()) == 0.5

    def test_garbage(self):
        """Non-numeric text fails in both modes."""
        with pytest.raises(ScalarParseError):
            parse_scalar("abc", float_mode())

    def test_bool_rejected(self):
        """Booleans are not scalar literals."""
        with pytest.raises(ScalarParseError):
            parse_scalar(True)

    def test_mode_parse_method(self):
        """ScalarMode.parse delegates to parse_scalar."""
        assert EXACT.parse("7/3") == Rational(7, 3)


class TestFormatScalar:
    """Test canonical formatting."""

    def test_integer_and_fraction(self):
        """Integers have no denominator."""
        assert format_scalar(Rational(4, 2)) == "2"
        assert format_scalar(Rational(-3, 6)) == "-1/2"

    def test_float_uses_repr(self):
        """Floats keep full precision."""
        assert format_scalar(0.1) == "0.1"

    def test_numpy_float(self):
        """Numpy floats format like plain floats."""
        assert format_scalar(np.float64(0.25)) == "0.25"

    def test_radical(self):
        """Radicals use sympy notation."""
        assert format_scalar(sqrt(8) / 4) == "sqrt(2)/2"


class TestHelpers:
    """Test module-level helpers."""

    def test_exact_sqrt_negative(self):
        """Negative values have no root."""
        with pytest.raises(NegativeRootError, match="negative"):
            exact_sqrt(Rational(-4))

    def test_check_same_mode(self):
        """Mixing exact and float values is rejected."""
        check_same_mode(Rational(1), Rational(2))
        with pytest.raises(ModeMismatchError):
            check_same_mode(Rational(1), 2.0)

"""
Scalar arithmetic for exact and floating computations.

Exact scalars are sympy numbers: ``sympy.Rational`` for rationals and
algebraic expressions built with ``sympy.sqrt`` where a square root is not
rational. Float scalars are plain ``float`` values. The active mode travels
with the containers that hold the scalars (matrices, tensors, structures)
as a :class:`ScalarMode`; the helpers here coerce, compare and format
values for a given mode.
"""

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Union

import sympy
from sympy import Rational

from akverify.core.errors import ModeMismatchError, NegativeRootError, ScalarParseError

Scalar = Union[sympy.Expr, float]

DEFAULT_TOLERANCE = 1e-9

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def reduce_exact(value: sympy.Expr) -> sympy.Expr:
    """Canonical form of an exact scalar.

    Rationals pass through. Sums of square roots of rationals are expanded
    with rationalized denominators, which makes ``== 0`` a decision.
    """
    if not isinstance(value, sympy.Basic):
        value = sympy.sympify(value)
    if value.is_Rational:
        return value
    return sympy.expand(sympy.radsimp(value))


@dataclass(frozen=True)
class ScalarMode:
    """Arithmetic mode: exact sympy numbers, or floats compared within a tolerance."""

    kind: Literal["exact", "float"] = "exact"
    tol: float = 0.0

    def __post_init__(self):
        if self.kind not in ("exact", "float"):
            raise ValueError(f"Unknown scalar mode: {self.kind}")
        if self.tol < 0:
            raise ValueError(f"Tolerance must be nonnegative, got {self.tol}")
        if self.kind == "exact" and self.tol != 0:
            raise ValueError("Exact mode takes no tolerance")

    @property
    def exact(self) -> bool:
        return self.kind == "exact"

    @property
    def zero(self) -> Scalar:
        return sympy.S.Zero if self.exact else 0.0

    @property
    def one(self) -> Scalar:
        return sympy.S.One if self.exact else 1.0

    def coerce(self, value: int | Fraction | Scalar) -> Scalar:
        """Bring a value into this mode.

        Integers, fractions and exact sympy numbers are accepted in both
        modes. A float given to exact mode is rejected rather than
        silently rationalized.

        Raises:
            ModeMismatchError: If a float reaches exact mode.
        """
        if isinstance(value, bool):
            value = int(value)
        if self.exact:
            if isinstance(value, (float, sympy.Float)):
                raise ModeMismatchError(f"Float value {value!r} in exact computation")
            if isinstance(value, (int, Fraction)):
                return Rational(value)
            if isinstance(value, sympy.Expr) and value.is_number:
                return value
            raise TypeError(f"Unsupported scalar type: {type(value).__name__}")
        if isinstance(value, (int, Fraction, float, sympy.Expr)):
            return float(value)
        raise TypeError(f"Unsupported scalar type: {type(value).__name__}")

    def reduce(self, value: Scalar) -> Scalar:
        """Canonical form in exact mode; floats pass through."""
        return reduce_exact(value) if self.exact else value

    def is_zero(self, value: Scalar) -> bool:
        if self.exact:
            return reduce_exact(value) == 0
        return abs(value) <= self.tol

    def equal(self, a: Scalar, b: Scalar) -> bool:
        return self.is_zero(a - b)

    def sqrt(self, value: Scalar) -> Scalar:
        """Square root in this mode; exact mode returns an algebraic number when needed.

        Raises:
            NegativeRootError: On a negative argument.
        """
        if self.exact:
            return exact_sqrt(value)
        if value < 0:
            if value >= -self.tol:
                return 0.0
            raise NegativeRootError(f"Square root of negative value {value}")
        return math.sqrt(value)

    def parse(self, text: str) -> Scalar:
        return parse_scalar(text, self)

    def label(self) -> str:
        return "exact" if self.exact else f"float(tol={self.tol!r})"


EXACT = ScalarMode()


def float_mode(tol: float = DEFAULT_TOLERANCE) -> ScalarMode:
    """Float mode with the given comparison tolerance."""
    return ScalarMode("float", tol)


def mode_of(value: Scalar) -> str:
    return "float" if isinstance(value, (float, sympy.Float)) else "exact"


def check_same_mode(*values: Scalar) -> None:
    """Reject a mixture of exact and float values.

    Raises:
        ModeMismatchError: If both kinds appear.
    """
    kinds = {mode_of(v) for v in values}
    if len(kinds) > 1:
        raise ModeMismatchError("Exact and float scalars mixed in one computation")


def exact_sqrt(value: Scalar) -> sympy.Expr:
    """Exact square root of a nonnegative exact number.

    Rational squares give rationals; anything else gives ``sympy.sqrt``.

    Raises:
        NegativeRootError: If the value is negative.
    """
    value = reduce_exact(sympy.sympify(value))
    if value.is_negative:
        raise NegativeRootError(f"Square root of negative value {value}")
    return reduce_exact(sympy.sqrt(value))


def is_rational(value: Scalar) -> bool:
    return isinstance(value, sympy.Expr) and reduce_exact(value).is_Rational


def parse_scalar(text: str | int | float, mode: ScalarMode = EXACT) -> Scalar:
    """
    Parse a scalar literal.

    Rational literals are ``"p/q"`` or ``"n"``. Decimal literals such as
    ``"0.5"`` are accepted only in float mode.

    Args:
        text: Literal to parse (ints pass through).
        mode: Target mode.

    Returns:
        The parsed scalar, coerced to ``mode``.

    Raises:
        ScalarParseError: If the literal is malformed or needs float mode.
    """
    if isinstance(text, bool):
        raise ScalarParseError(f"Not a scalar literal: {text!r}")
    if isinstance(text, int):
        return mode.coerce(text)
    if isinstance(text, float):
        if mode.exact:
            raise ScalarParseError(f"Float literal {text!r} requires float mode")
        return text
    match = _RATIONAL_RE.match(text)
    if match:
        num = int(match.group(1))
        den = int(match.group(2)) if match.group(2) is not None else 1
        if den == 0:
            raise ScalarParseError(f"Zero denominator in {text!r}")
        return mode.coerce(Rational(num, den))
    if mode.exact:
        raise ScalarParseError(f"Not a rational literal: {text!r} (use \"p/q\")")
    try:
        return float(text)
    except ValueError:
        raise ScalarParseError(f"Not a scalar literal: {text!r}")


def format_scalar(value: Scalar) -> str:
    """Format as ``"p/q"`` (``"n"`` for integers), sympy text for radicals, ``repr`` for floats."""
    if isinstance(value, float):
        return repr(float(value))
    if isinstance(value, (int, Fraction)):
        value = Rational(value)
    value = reduce_exact(value)
    if value.is_Rational:
        if value.q == 1:
            return str(value.p)
        return f"{value.p}/{value.q}"
    return sympy.sstr(value)

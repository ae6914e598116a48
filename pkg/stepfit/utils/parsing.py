"""Exact number parsing and instance file reading.

Every numeric literal becomes a :class:`fractions.Fraction`; binary floating
point never enters the solver.
"""

import re
import sys
from decimal import Context, Decimal
from fractions import Fraction
from pathlib import Path
from typing import Iterable, List, Optional, TextIO, Tuple, Union

from stepfit.core.errors import InputFormatError, ValidationError

DECIMAL_PATTERN = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?(\d+))?$")
# Larger exponents would make Fraction build astronomically large integers.
MAX_EXPONENT_DIGITS = 4
FRACTION_PATTERN = re.compile(r"^[+-]?\d+/\d+$")
COMMENT_PREFIX = "#"

RationalLike = Union[int, str, Fraction]


def parse_rational(token: str) -> Fraction:
    """Parse a decimal (``-1.25``, ``3e2``) or fraction (``p/q``) literal exactly.

    Args:
        token: The literal to parse

    Returns:
        The exact value

    Raises:
        InputFormatError: If the literal is malformed or has a zero denominator
    """
    token = token.strip()
    match = DECIMAL_PATTERN.match(token)
    if match:
        exponent = match.group(4)
        if exponent is not None and len(exponent.lstrip("0")) > MAX_EXPONENT_DIGITS:
            raise InputFormatError(f"exponent out of range in {token!r}")
        return Fraction(token)
    if FRACTION_PATTERN.match(token):
        _, den = token.split("/")
        if int(den) == 0:
            raise InputFormatError(f"zero denominator in {token!r}")
        return Fraction(token)
    raise InputFormatError(f"not a number: {token!r}")


def to_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or literal to an exact Fraction.

    Floats are rejected: they cannot be converted without silently keeping
    their binary rounding error.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise ValidationError(
            "inexact numeric value", details={"value": repr(value)}
        )
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise ValidationError("unsupported numeric type", details={"type": type(value).__name__})


def iter_records(
    lines: Iterable[str], min_fields: int, max_fields: int
) -> Iterable[Tuple[int, List[Fraction]]]:
    """Yield ``(line_number, values)`` for every data line.

    Blank lines and lines whose first non-blank character is ``#`` are skipped.
    """
    for line_number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith(COMMENT_PREFIX):
            continue
        fields = line.split()
        if not min_fields <= len(fields) <= max_fields:
            expected = (
                str(min_fields)
                if min_fields == max_fields
                else f"{min_fields}-{max_fields}"
            )
            raise InputFormatError(
                f"expected {expected} fields, got {len(fields)}",
                line_number=line_number,
            )
        try:
            values = [parse_rational(field) for field in fields]
        except InputFormatError as e:
            raise InputFormatError(e.message, line_number=line_number)
        yield line_number, values


def read_point_records(
    stream: TextIO,
) -> List[Tuple[Fraction, Fraction, Fraction]]:
    """Read ``x y w`` records, validating positive weights.

    Raises:
        InputFormatError: On malformed lines, non-positive weights or empty input
    """
    records = []
    for line_number, (x, y, w) in iter_records(stream, 3, 3):
        if w <= 0:
            raise InputFormatError("weight must be positive", line_number=line_number)
        records.append((x, y, w))
    if not records:
        raise InputFormatError("empty point set")
    return records


def read_site_records(stream: TextIO) -> List[Tuple[Fraction, Fraction]]:
    """Read ``r [w]`` k-center records; a missing weight defaults to 1."""
    records = []
    for line_number, values in iter_records(stream, 1, 2):
        r = values[0]
        w = values[1] if len(values) == 2 else Fraction(1)
        if w <= 0:
            raise InputFormatError("weight must be positive", line_number=line_number)
        records.append((r, w))
    if not records:
        raise InputFormatError("empty site set")
    return records


def open_input(path: Optional[Union[str, Path]]) -> TextIO:
    """Open ``path`` as UTF-8 text; ``-`` or None means standard input."""
    if path is None or str(path) == "-":
        return sys.stdin
    try:
        return open(path, encoding="utf-8")
    except OSError as e:
        raise InputFormatError(f"cannot open {path}: {e.strerror}")


def format_fraction(value: Fraction) -> str:
    """Render a Fraction as ``num/den`` (denominator always present)."""
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: Fraction, precision: int) -> str:
    """Round a Fraction to ``precision`` significant digits, without floats."""
    context = Context(prec=precision)
    quotient = context.divide(Decimal(value.numerator), Decimal(value.denominator))
    return format(quotient.normalize(context), "f")

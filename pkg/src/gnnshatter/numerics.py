"""Exact rational helpers and a sine evaluator with exact period reduction.

Rationals are :class:`fractions.Fraction`. The sine activation
``r -> sin(pi/2 * r)`` reduces its argument modulo 4 in rational arithmetic
first, so arguments that are multiples of 4 give an exact zero no matter how
large they are.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bits import BitVector

Rational = Fraction

SQRT3_HALF = math.sqrt(3) / 2
LEMMA_SLACK = 1e-12


def format_rational(q: Fraction) -> str:
    """Always ``num/den``, also for integers."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str | int) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {text!r}") from exc


def gamma_pl(x: BitVector) -> Fraction:
    """Integer parameter whose binary digits are x (x_1 least significant)."""
    return Fraction(x.to_int())


def gamma_sine(x: BitVector) -> Fraction:
    """sum_k x_k / 4^k, a rational in [0, 1/3] with denominator dividing 4^b."""
    b = x.b
    num = sum(v << (2 * (b - k)) for k, v in enumerate(x.bits, start=1))
    return Fraction(num, 1 << (2 * b))


class SinKind(enum.Enum):
    EXACT_ZERO = "exact_zero"
    EXACT_ONE = "exact_one"
    EXACT_MINUS_ONE = "exact_minus_one"
    APPROX = "approx"


_EXACT = {
    Fraction(0): (SinKind.EXACT_ZERO, 0.0),
    Fraction(2): (SinKind.EXACT_ZERO, 0.0),
    Fraction(1): (SinKind.EXACT_ONE, 1.0),
    Fraction(3): (SinKind.EXACT_MINUS_ONE, -1.0),
}


@dataclass(frozen=True)
class SinValue:
    kind: SinKind
    value: float
    reduced_arg: Fraction

    @property
    def exact(self) -> bool:
        return self.kind is not SinKind.APPROX

    def scalar(self) -> Fraction | float:
        """Fraction for the exact kinds, float otherwise."""
        if self.kind is SinKind.APPROX:
            return self.value
        return Fraction(int(self.value))


def sinpi_half(r: Fraction) -> SinValue:
    """sin(pi/2 * r) with the argument reduced exactly modulo 4."""
    red = Fraction(r) % 4
    hit = _EXACT.get(red)
    if hit is not None:
        return SinValue(hit[0], hit[1], red)
    return SinValue(SinKind.APPROX, math.sin(math.pi * float(red) / 2), red)


_RATIO_EXACT = (Fraction(0), Fraction(1), Fraction(0), Fraction(-1))


def sinpi_half_ratio(num: int, den: int) -> Fraction | float:
    """``sinpi_half(Fraction(num, den)).scalar()`` using integer reduction only."""
    m = num % (4 * den)
    q, rem = divmod(m, den)
    if rem == 0:
        return _RATIO_EXACT[q]
    return math.sin(math.pi * (m / den) / 2)


def sinpi_half_float(r):
    """Double-precision sin(pi/2 * r); fmod reduction is exact on doubles.

    Accepts a float or an ndarray.
    """
    red = np.fmod(r, 4.0)
    red = np.where(red < 0, red + 4.0, red)
    out = np.sin(np.pi / 2 * red)
    # exact quarter-period points, as in the rational path
    out = np.where((red == 0.0) | (red == 2.0), 0.0, out)
    if np.ndim(out) == 0:
        return float(out)
    return out


def sin_bit_extract(x: BitVector, j: int) -> SinValue:
    """sin(4^j * pi/2 * gamma_sine(x)); near x_j for j <= b, exactly 0 past b."""
    if j < 1:
        raise ValueError(f"j must be positive, got {j}")
    return sinpi_half((1 << (2 * j)) * gamma_sine(x))

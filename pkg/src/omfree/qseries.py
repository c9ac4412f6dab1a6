"""Exact truncated q-expansions with bounded fractional exponents.

Every expansion in this package is a finite sum ``sum c_e * q^e`` where the
coefficients ``c_e`` are exact rationals and the exponents ``e`` are
nonnegative rationals whose denominators divide a small bound.  A series
carries a truncation ``T``: all terms with exponent ``< T`` are faithfully
represented and everything at or beyond ``T`` is unknown.  Arithmetic always
propagates the smaller truncation of its operands; precision is never
silently extended.  There is no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable, Mapping, Tuple, Union

RationalLike = Union[int, Fraction]

#: Largest allowed denominator of an exponent.  q^(1/2) arises from level-2
#: slash operators, q^(1/3) from eta^8, q^(1/4) from half-integral towers;
#: 24 covers all of them with room for eta itself.
DEFAULT_EXPONENT_DENOMINATOR_CAP = 24


class ExponentDenominatorError(ValueError):
    """An operation would produce exponent denominators above the cap."""


class TruncationError(ValueError):
    """A coefficient beyond the faithful range was requested."""


def as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}: {x!r}")


class QSeries:
    """Sparse exact series ``sum c_e q^e`` with ``0 <= e < truncation``.

    Instances are immutable and canonical: no zero coefficients are stored,
    every exponent satisfies ``0 <= e < truncation`` and ``e * denominator``
    is an integer.  Two series are equal iff their truncations and their
    coefficient tables agree.
    """

    __slots__ = ("_coeffs", "truncation", "denominator")

    def __init__(
        self,
        terms: Union[Mapping[RationalLike, RationalLike], Iterable[Tuple[RationalLike, RationalLike]]],
        truncation: RationalLike,
        cap: int = DEFAULT_EXPONENT_DENOMINATOR_CAP,
    ):
        trunc = as_fraction(truncation)
        if trunc <= 0:
            raise ValueError(f"truncation must be positive, got {trunc}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        coeffs = {}
        den = 1
        for e, c in items:
            e = as_fraction(e)
            c = as_fraction(c)
            if c == 0 or e >= trunc:
                continue
            if e < 0:
                raise ValueError(f"negative exponent {e} not supported")
            if e.denominator > cap:
                raise ExponentDenominatorError(
                    f"exponent {e} has denominator {e.denominator} > cap {cap}"
                )
            coeffs[e] = coeffs.get(e, Fraction(0)) + c
            den = lcm(den, e.denominator)
        object.__setattr__(self, "_coeffs", {e: c for e, c in coeffs.items() if c != 0})
        object.__setattr__(self, "truncation", trunc)
        object.__setattr__(self, "denominator", den)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(truncation: RationalLike) -> "QSeries":
        return QSeries({}, truncation)

    @staticmethod
    def one(truncation: RationalLike) -> "QSeries":
        return QSeries({Fraction(0): Fraction(1)}, truncation)

    @staticmethod
    def monomial(exponent: RationalLike, coeff: RationalLike, truncation: RationalLike) -> "QSeries":
        return QSeries({as_fraction(exponent): as_fraction(coeff)}, truncation)

    # -- access ------------------------------------------------------------

    def coefficient(self, e: RationalLike) -> Fraction:
        e = as_fraction(e)
        if e >= self.truncation:
            raise TruncationError(f"coefficient at q^{e} lies beyond truncation O(q^{self.truncation})")
        return self._coeffs.get(e, Fraction(0))

    def terms(self) -> list:
        """Sorted list of (exponent, coefficient) pairs."""
        return sorted(self._coeffs.items())

    def support(self) -> list:
        return sorted(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def valuation(self) -> Fraction:
        """Smallest exponent with nonzero coefficient (truncation if zero)."""
        return min(self._coeffs) if self._coeffs else self.truncation

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.truncation == other.truncation and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.truncation, tuple(sorted(self._coeffs.items()))))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        trunc = min(self.truncation, other.truncation)
        coeffs = dict(self._coeffs)
        for e, c in other._coeffs.items():
            coeffs[e] = coeffs.get(e, Fraction(0)) + c
        return QSeries(coeffs, trunc)

    def __neg__(self) -> "QSeries":
        return QSeries({e: -c for e, c in self._coeffs.items()}, self.truncation)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction, Rational)):
            c0 = as_fraction(other)
            return QSeries({e: c * c0 for e, c in self._coeffs.items()}, self.truncation)
        if not isinstance(other, QSeries):
            return NotImplemented
        trunc = min(self.truncation, other.truncation)
        coeffs = {}
        for e1, c1 in self._coeffs.items():
            if e1 >= trunc:
                continue
            for e2, c2 in other._coeffs.items():
                e = e1 + e2
                if e >= trunc:
                    continue
                coeffs[e] = coeffs.get(e, Fraction(0)) + c1 * c2
        return QSeries(coeffs, trunc)

    def __rmul__(self, other) -> "QSeries":
        return self.__mul__(other)

    def __truediv__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction, Rational)):
            return self * (Fraction(1) / as_fraction(other))
        return NotImplemented

    def __pow__(self, n: int) -> "QSeries":
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"power must be a nonnegative integer, got {n}")
        result = QSeries.one(self.truncation)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- substitutions -----------------------------------------------------

    def rescale(self, c: RationalLike, cap: int = DEFAULT_EXPONENT_DENOMINATOR_CAP) -> "QSeries":
        """Substitute tau -> c*tau: exponent e maps to c*e, coefficients kept.

        Raises ExponentDenominatorError if any rescaled exponent needs a
        denominator above the cap.
        """
        c = as_fraction(c)
        if c <= 0:
            raise ValueError(f"rescale factor must be positive, got {c}")
        for e in self._coeffs:
            if (c * e).denominator > cap:
                raise ExponentDenominatorError(
                    f"rescale by {c} sends q^{e} to denominator {(c * e).denominator} > cap {cap}"
                )
        return QSeries({c * e: v for e, v in self._coeffs.items()}, c * self.truncation, cap=cap)

    def half_twist(self) -> "QSeries":
        """Substitute tau -> (tau+1)/2 on an integer-exponent series.

        q^n maps to (-1)^n q^(n/2).
        """
        for e in self._coeffs:
            if e.denominator != 1:
                raise ValueError(f"half_twist requires integer exponents, found q^{e}")
        coeffs = {}
        for e, c in self._coeffs.items():
            n = int(e)
            coeffs[Fraction(n, 2)] = c if n % 2 == 0 else -c
        return QSeries(coeffs, self.truncation / 2)

    def shift(self, e0: RationalLike) -> "QSeries":
        """Multiply by the exact monomial q^e0 (e0 >= 0)."""
        e0 = as_fraction(e0)
        if e0 < 0:
            raise ValueError("shift exponent must be nonnegative")
        return QSeries({e + e0: c for e, c in self._coeffs.items()}, self.truncation + e0)

    def truncate(self, truncation: RationalLike) -> "QSeries":
        trunc = as_fraction(truncation)
        if trunc > self.truncation:
            raise TruncationError(
                f"cannot extend truncation from O(q^{self.truncation}) to O(q^{trunc})"
            )
        return QSeries(self._coeffs, trunc)

    # -- rendering ---------------------------------------------------------

    @staticmethod
    def _fmt_exp(e: Fraction) -> str:
        if e.denominator == 1:
            return str(e.numerator)
        return f"({e.numerator}/{e.denominator})"

    def __str__(self) -> str:
        parts = []
        for e, c in self.terms():
            if e == 0:
                parts.append(str(c))
            else:
                coeff = str(c) if c.denominator == 1 else f"({c})"
                parts.append(f"{coeff}*q^{self._fmt_exp(e)}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(q^{self._fmt_exp(self.truncation)})"

    def __repr__(self) -> str:
        return f"QSeries({self})"

    def to_json_terms(self) -> list:
        """Rendering as [[e_num, e_den, c_num, c_den], ...] sorted by exponent."""
        return [
            [e.numerator, e.denominator, c.numerator, c.denominator]
            for e, c in self.terms()
        ]

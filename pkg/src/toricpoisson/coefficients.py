"""Exact arithmetic in the Gaussian rationals Q(i).

Every scalar in the package (entries of B, coefficients of multivector
fields, matrix entries during elimination) is a :class:`GaussianRational`.
Real and imaginary parts are :class:`fractions.Fraction`, which keeps them
reduced with a positive denominator, so structural equality is field
equality.
"""

from fractions import Fraction
from numbers import Rational

__all__ = [
    "GaussianRational",
    "GaussianZeroDivisionError",
    "GQParseError",
    "gq",
    "parse_gq",
    "serialize_gq",
    "ZERO",
    "ONE",
    "I",
]


class GaussianZeroDivisionError(ZeroDivisionError):
    """Division by the zero element of Q(i)."""


class GQParseError(ValueError):
    """Malformed Gaussian-rational text; ``position`` is the 0-based offset."""

    def __init__(self, message, text, position):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class GaussianRational:
    """An element ``re + im*i`` of Q(i).  Immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            re, im = re.re, re.im + Fraction(im)
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _make(cls, re, im):
        # Skip coercion: re and im are already Fractions.
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    # -- predicates -------------------------------------------------------

    def is_zero(self):
        return not self.re and not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self):
        return not self.im

    def is_integer(self):
        return not self.im and self.re.denominator == 1

    # -- arithmetic -------------------------------------------------------

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._make(a * c, b)
        return GaussianRational._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inv(self):
        a, b = self.re, self.im
        norm = a * a + b * b
        if not norm:
            raise GaussianZeroDivisionError("inverse of zero in Q(i)")
        return GaussianRational._make(a / norm, -b / norm)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.im:
            if not other.re:
                raise GaussianZeroDivisionError("division by zero in Q(i)")
            return GaussianRational._make(self.re / other.re, self.im / other.re)
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def conj(self):
        return GaussianRational._make(self.re, -self.im)

    def norm(self):
        """``|x|^2`` as a Fraction."""
        return self.re * self.re + self.im * self.im

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({serialize_gq(self)!r})"

    def __str__(self):
        return serialize_gq(self)

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Rational)):
        return GaussianRational._make(Fraction(x), Fraction(0))
    if isinstance(x, complex):
        return GaussianRational(Fraction(x.real), Fraction(x.imag))
    return NotImplemented


def gq(x, im=0):
    """Coerce ints, Fractions, strings or GaussianRationals into Q(i)."""
    if isinstance(x, str):
        if im:
            raise TypeError("imaginary part cannot be combined with a string")
        return parse_gq(x)
    if isinstance(x, GaussianRational):
        return x if not im else x + GaussianRational(0, im)
    return GaussianRational(x, im)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def _fmt_rat(q):
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def serialize_gq(x):
    """Canonical text form: ``a/b``, ``a/b+c/di``, ``-i``, ``0`` ..."""
    x = gq(x)
    re, im = x.re, x.im
    if not im:
        return _fmt_rat(re)
    mag = abs(im)
    imag = "i" if mag == 1 else _fmt_rat(mag) + "i"
    if not re:
        return ("-" if im < 0 else "") + imag
    return _fmt_rat(re) + ("-" if im < 0 else "+") + imag


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, message):
        raise GQParseError(message, self.text, self.pos)

    def digits(self):
        start = self.pos
        while self.peek().isdigit() and self.peek().isascii():
            self.pos += 1
        return self.text[start:self.pos]

    def unsigned_rat(self, required):
        """Parse ``int ("/" posint)?`` without sign; None if absent."""
        num = self.digits()
        if not num:
            if required:
                self.error("expected digits")
            return None
        if self.peek() == "/":
            self.pos += 1
            at = self.pos
            den = self.digits()
            if not den:
                self.error("expected denominator")
            if int(den) == 0:
                raise GQParseError("zero denominator", self.text, at)
            return Fraction(int(num), int(den))
        return Fraction(int(num))


def parse_gq(text):
    """Parse the canonical text grammar (and its non-canonical variants).

    Accepted shapes: ``3``, ``-3/4``, ``3/2+1/2i``, ``1-i``, ``i``,
    ``-2/3i``.  Surrounding whitespace is ignored.
    """
    if not isinstance(text, str):
        raise TypeError("parse_gq expects a string")
    s = _Scanner(text.strip())
    if not s.text:
        s.error("empty input")
    sign = 1
    if s.peek() in "+-":
        sign = -1 if s.peek() == "-" else 1
        s.pos += 1
    first = s.unsigned_rat(required=False)
    nxt = s.peek()
    if nxt == "i":
        s.pos += 1
        if s.pos != len(s.text):
            s.error("unexpected trailing characters")
        mag = Fraction(1) if first is None else first
        return GaussianRational(0, sign * mag)
    if first is None:
        s.error("expected digits or 'i'")
    re = sign * first
    if nxt == "":
        return GaussianRational(re)
    if nxt not in "+-":
        s.error("unexpected character")
    isign = -1 if nxt == "-" else 1
    s.pos += 1
    mag = s.unsigned_rat(required=False)
    if s.peek() != "i":
        s.error("expected 'i'")
    s.pos += 1
    if s.pos != len(s.text):
        s.error("unexpected trailing characters")
    return GaussianRational(re, isign * (Fraction(1) if mag is None else mag))

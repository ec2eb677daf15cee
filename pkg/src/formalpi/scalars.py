"""Exact scalars: rationals, dual numbers over the rationals, Gaussian rationals.

``Fraction`` is the default scalar everywhere.  :class:`Dual` adjoins an
infinitesimal ``eps`` with ``eps**2 == 0`` and is used for first-order
perturbations of coordinate changes.  :class:`GaussianRational` only shows up
when a series is rewritten in the oscillatory convention ``kappa = i*hbar``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

__all__ = [
    "Dual",
    "GaussianRational",
    "EPS",
    "as_fraction",
    "format_scalar",
    "format_sum",
    "is_unit",
    "real_part",
    "eps_part",
]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected; they would silently smuggle rounding into exact code.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _coerce(other):
    if isinstance(other, Dual):
        return other
    if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
        return Dual(Fraction(other), Fraction(0))
    return None


@dataclass(frozen=True, slots=True)
class Dual:
    """``re + eps * eps_coeff`` with ``eps**2 = 0``."""

    re: Fraction
    eps: Fraction = Fraction(0)

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Dual(self.re + o.re, self.eps + o.eps)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Dual(self.re - o.re, self.eps - o.eps)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Dual(self.re * o.re, self.re * o.eps + self.eps * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if o.re == 0:
            raise ZeroDivisionError("division by a dual number with zero real part")
        return Dual(self.re / o.re, (self.eps * o.re - self.re * o.eps) / (o.re * o.re))

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Dual(-self.re, -self.eps)

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.eps == o.eps

    def __hash__(self):
        if self.eps == 0:
            return hash(self.re)
        return hash((self.re, self.eps))

    def __bool__(self):
        return bool(self.re) or bool(self.eps)

    def __repr__(self):
        return f"Dual({self.re}, {self.eps})"

    def __str__(self):
        return f"{format_scalar(self.re)} + {format_scalar(self.eps)}*eps"


EPS = Dual(Fraction(0), Fraction(1))


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """``re + i * im`` with rational parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(Fraction(other))
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if self.im == 0:
            return format_scalar(self.re)
        if self.re == 0:
            return f"{format_scalar(self.im)}*i"
        return f"{format_scalar(self.re)} + {format_scalar(self.im)}*i"


def is_unit(x) -> bool:
    """True if ``x`` is invertible in its scalar ring."""
    if isinstance(x, Dual):
        return x.re != 0
    return x != 0


def real_part(x):
    return x.re if isinstance(x, Dual) else x


def eps_part(x):
    return x.eps if isinstance(x, Dual) else Fraction(0)


def format_scalar(x) -> str:
    """Stable text form: ``p/q`` for rationals, never a float."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return str(x)


def format_sum(terms) -> str:
    """Join ``(coefficient, monomial)`` pairs into ``a - b*x + ...``.

    Unit rational coefficients are dropped in front of a monomial; other
    scalars are parenthesised when they carry their own sum.
    """
    out = []
    for c, mono in terms:
        if c == 0:
            continue
        if isinstance(c, (int, Fraction)):
            sign = "-" if c < 0 else "+"
            mag = abs(Fraction(c))
            body = mono if mono and mag == 1 else (
                str(mag) + ("*" + mono if mono else ""))
        else:
            sign = "+"
            text = format_scalar(c)
            body = (f"({text})" if " " in text else text) + ("*" + mono if mono else "")
        if not out:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f"{sign} {body}")
    return " ".join(out) if out else "0"

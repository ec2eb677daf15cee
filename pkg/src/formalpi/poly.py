"""Sparse multivariate polynomials with exact coefficients.

Used for jet <-> polynomial conversion, Jacobian determinants and the
expansion oracles.  Exponents are tuples of non-negative ints.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, prod

from .scalars import format_sum


class Polynomial:
    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms=None):
        self.dim = dim
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != dim:
                raise ValueError(f"exponent {exp} has wrong length for dim {dim}")
            if c != 0:
                clean[exp] = clean.get(exp, 0) + c
        self.terms = {e: c for e, c in clean.items() if c != 0}

    @classmethod
    def constant(cls, dim, c):
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def variable(cls, dim, i):
        exp = [0] * dim
        exp[i] = 1
        return cls(dim, {tuple(exp): Fraction(1)})

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.dim, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return Polynomial(self.dim, {e: s * c for e, c in self.terms.items()})

    def mul(self, other, max_degree=None):
        out = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if max_degree is not None and d1 + sum(e2) > max_degree:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.dim, out)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return self.mul(other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Polynomial.constant(self.dim, Fraction(1))
        for _ in range(k):
            out = out.mul(self)
        return out

    def truncate(self, max_degree):
        return Polynomial(self.dim, {e: c for e, c in self.terms.items() if sum(e) <= max_degree})

    def homogeneous_part(self, degree):
        return Polynomial(self.dim, {e: c for e, c in self.terms.items() if sum(e) == degree})

    def diff(self, i):
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return Polynomial(self.dim, out)

    def constant_term(self):
        return self.terms.get((0,) * self.dim, Fraction(0))

    def __call__(self, point):
        total = Fraction(0)
        for e, c in self.terms.items():
            total = total + c * prod((x**k for x, k in zip(point, e)), start=Fraction(1))
        return total

    def substitute(self, polys, max_degree=None):
        """Compose with a polynomial map ``x_i -> polys[i]``, truncating by degree."""
        dim = polys[0].dim
        result = Polynomial(dim)
        cache = {}

        def power(i, k):
            if (i, k) not in cache:
                if k == 0:
                    cache[(i, k)] = Polynomial.constant(dim, Fraction(1))
                else:
                    cache[(i, k)] = power(i, k - 1).mul(polys[i], max_degree)
            return cache[(i, k)]

        for e, c in self.terms.items():
            term = Polynomial.constant(dim, c)
            for i, k in enumerate(e):
                if k:
                    term = term.mul(power(i, k), max_degree)
            result = result + term
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.dim == other.dim and self.terms == other.terms
        return NotImplemented

    def __repr__(self):
        return f"Polynomial({self.dim}, {self.terms!r})"

    def __str__(self):
        names = "xyz"[: self.dim] if self.dim <= 3 else [f"x{i + 1}" for i in range(self.dim)]

        def mono(exp):
            parts = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, exp) if k]
            return "*".join(parts)

        order = sorted(self.terms, key=lambda e: (sum(e), tuple(-k for k in e)))
        return format_sum((self.terms[e], mono(e)) for e in order)


def exponent_of(index, dim):
    """Multi-index (tuple of coordinates) -> exponent vector."""
    exp = [0] * dim
    for i in index:
        exp[i] += 1
    return tuple(exp)


def index_of(exp):
    """Exponent vector -> sorted multi-index."""
    return tuple(i for i, k in enumerate(exp) for _ in range(k))


def multinomial_factorial(exp):
    return prod(factorial(k) for k in exp)

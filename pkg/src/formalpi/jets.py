"""Truncated Taylor jets of actions and maps at a critical point.

Coefficients are stored as the derivatives themselves: the order-``n``
coefficient of a scalar jet is the symmetric form ``f^(n)(0)`` and the
function is ``sum_n f^(n) . x^{(x)n} / n!``.  Tensor indices start at 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import factorial
from typing import Mapping, Sequence

import numpy as np

from . import linalg
from .errors import DegenerateCriticalPoint, DimensionMismatch, NotCriticalPoint, NotInvertible
from .poly import Polynomial, exponent_of, index_of, multinomial_factorial

__all__ = [
    "SymmetricTensor",
    "ScalarJet",
    "ActionJet",
    "MapJet",
    "contract",
    "evaluate_jet",
    "hessian_inverse",
    "hessian_determinant",
    "hessian_signature",
]


def sorted_indices(order: int, dim: int):
    return combinations_with_replacement(range(dim), order)


@dataclass(frozen=True, eq=False)
class SymmetricTensor:
    """A symmetric ``order``-linear form on a ``dim``-dimensional space.

    Only sorted multi-indices are stored; missing entries are zero.
    """

    order: int
    dim: int
    entries: Mapping[tuple, object]

    def __post_init__(self):
        if self.order < 0 or self.dim < 1:
            raise ValueError("need order >= 0 and dim >= 1")
        clean = {}
        for idx, value in dict(self.entries).items():
            idx = tuple(idx)
            if len(idx) != self.order:
                raise ValueError(f"index {idx} does not have length {self.order}")
            if any(not 0 <= i < self.dim for i in idx):
                raise DimensionMismatch(f"index {idx} out of range for dim {self.dim}")
            if list(idx) != sorted(idx):
                raise ValueError(f"index {idx} is not sorted")
            if value != 0:
                clean[idx] = value
        object.__setattr__(self, "entries", clean)

    @classmethod
    def zero(cls, order, dim):
        return cls(order, dim, {})

    @classmethod
    def from_items(cls, order, dim, items):
        """Build from possibly unsorted ``(index, value)`` pairs; values are summed."""
        acc = {}
        for idx, value in items:
            key = tuple(sorted(idx))
            acc[key] = acc.get(key, 0) + value
        return cls(order, dim, acc)

    @classmethod
    def from_dense(cls, array):
        array = np.asarray(array, dtype=object)
        order, dim = array.ndim, (array.shape[0] if array.ndim else 1)
        entries = {}
        for idx in product(range(dim), repeat=order):
            key = tuple(sorted(idx))
            if key in entries:
                if entries[key] != array[idx]:
                    raise ValueError("array is not symmetric")
            else:
                entries[key] = array[idx]
        return cls(order, dim, entries)

    @classmethod
    def from_matrix(cls, rows):
        dim = len(rows)
        return cls(2, dim, {(i, j): rows[i][j] for i in range(dim) for j in range(i, dim)})

    def __getitem__(self, idx):
        return self.entries.get(tuple(sorted(idx)), Fraction(0))

    def is_zero(self):
        return not self.entries

    def to_dense(self):
        out = np.empty((self.dim,) * self.order, dtype=object)
        for idx in product(range(self.dim), repeat=self.order):
            out[idx] = self[idx]
        return out

    def to_matrix(self):
        if self.order != 2:
            raise ValueError("only order-2 tensors are matrices")
        return [[self[i, j] for j in range(self.dim)] for i in range(self.dim)]

    def map(self, fn):
        return SymmetricTensor(self.order, self.dim, {k: fn(v) for k, v in self.entries.items()})

    def __neg__(self):
        return self.map(lambda v: -v)

    def __add__(self, other):
        if (self.order, self.dim) != (other.order, other.dim):
            raise DimensionMismatch("tensor shapes differ")
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return SymmetricTensor(self.order, self.dim, out)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return self.map(lambda v: s * v)

    def __eq__(self, other):
        if not isinstance(other, SymmetricTensor):
            return NotImplemented
        return (self.order, self.dim, self.entries) == (other.order, other.dim, other.entries)

    def __hash__(self):
        return hash((self.order, self.dim, frozenset(self.entries.items())))

    def __repr__(self):
        return f"SymmetricTensor(order={self.order}, dim={self.dim}, entries={self.entries!r})"


def _contract_one(tensor: SymmetricTensor, v):
    """Insert one vector into the first slot."""
    n, d = tensor.order, tensor.dim
    out = {}
    for idx in sorted_indices(n - 1, d):
        total = Fraction(0)
        for i in range(d):
            if v[i] != 0:
                t = tensor[idx + (i,)]
                if t != 0:
                    total = total + v[i] * t
        out[idx] = total
    return SymmetricTensor(n - 1, d, out)


def contract(tensor: SymmetricTensor, vectors: Sequence[Sequence]):
    """Contract ``tensor`` with ``vectors`` in its leading slots.

    Returns a scalar for a full contraction and the residual symmetric form
    otherwise.
    """
    if len(vectors) > tensor.order:
        raise DimensionMismatch(
            f"{len(vectors)} vectors supplied to an order-{tensor.order} tensor"
        )
    for v in vectors:
        if len(v) != tensor.dim:
            raise DimensionMismatch(f"vector of length {len(v)} for dim {tensor.dim}")
    result = tensor
    for v in vectors:
        if result.is_zero():
            result = SymmetricTensor.zero(result.order - 1, result.dim)
            continue
        result = _contract_one(result, v)
    if result.order == 0:
        return result[()]
    return result


def _check_tensor_list(dim, tensors):
    for n, t in enumerate(tensors):
        if t.order != n or t.dim != dim:
            raise DimensionMismatch(f"coefficient {n} has order {t.order}, dim {t.dim}")


@dataclass(frozen=True, eq=False)
class ScalarJet:
    """Truncated Taylor data of a scalar function at the origin.

    ``derivatives[n]`` is the order-``n`` derivative tensor, ``n = 0..order``.
    """

    dim: int
    derivatives: tuple

    def __post_init__(self):
        object.__setattr__(self, "derivatives", tuple(self.derivatives))
        if not self.derivatives:
            raise ValueError("a jet needs at least the order-0 coefficient")
        _check_tensor_list(self.dim, self.derivatives)

    @property
    def order(self):
        return len(self.derivatives) - 1

    def __getitem__(self, n):
        return self.derivatives[n]

    @property
    def value(self):
        return self.derivatives[0][()]

    @classmethod
    def _build(cls, dim, derivatives):
        return cls(dim, derivatives)

    @classmethod
    def constant(cls, dim, order, c):
        ders = [SymmetricTensor(0, dim, {(): c})] + [
            SymmetricTensor.zero(n, dim) for n in range(1, order + 1)
        ]
        return ScalarJet(dim, ders)

    @classmethod
    def from_polynomial(cls, poly: Polynomial, order: int):
        """Taylor data of a polynomial, truncated at ``order``."""
        dim = poly.dim
        buckets = [dict() for _ in range(order + 1)]
        for exp, c in poly.terms.items():
            n = sum(exp)
            if n <= order:
                buckets[n][index_of(exp)] = c * multinomial_factorial(exp)
        ders = [SymmetricTensor(n, dim, b) for n, b in enumerate(buckets)]
        return cls._build(dim, ders)

    def to_polynomial(self) -> Polynomial:
        terms = {}
        for t in self.derivatives:
            for idx, v in t.entries.items():
                exp = exponent_of(idx, self.dim)
                terms[exp] = v / multinomial_factorial(exp)
        return Polynomial(self.dim, terms)

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot truncate an order-{self.order} jet to order {order}")
        return self._build(self.dim, self.derivatives[: order + 1])

    def map_scalars(self, fn):
        return self._build(self.dim, [t.map(fn) for t in self.derivatives])

    def __add__(self, other):
        if (self.dim, self.order) != (other.dim, other.order):
            raise DimensionMismatch("jets do not match")
        return self._build(self.dim, [a + b for a, b in zip(self.derivatives, other.derivatives)])

    def scale(self, s):
        return self.map_scalars(lambda v: s * v)

    def is_constant(self, c=None):
        if any(not t.is_zero() for t in self.derivatives[1:]):
            return False
        return c is None or self.value == c

    def __eq__(self, other):
        if not isinstance(other, ScalarJet):
            return NotImplemented
        return self.dim == other.dim and self.derivatives == other.derivatives

    def __hash__(self):
        return hash((self.dim, self.derivatives))

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim}, order={self.order}, derivatives={self.derivatives!r})"


class ActionJet(ScalarJet):
    """Taylor data of an action at a critical point (first derivative zero).

    Construct with :meth:`from_tensors` or :meth:`from_polynomial`.  The
    Hessian is only checked for nondegeneracy when it is used.
    """

    def __post_init__(self):
        super().__post_init__()
        if self.order < 2:
            raise ValueError("an action jet needs truncation order >= 2")
        if not self.derivatives[1].is_zero():
            raise NotCriticalPoint("first derivative is nonzero: origin is not a critical point")

    @classmethod
    def from_tensors(cls, dim, tensors, value_at_critical=Fraction(0)):
        """``tensors[k]`` is the order-``k+1`` derivative; pass ``None`` for zero."""
        ders = [SymmetricTensor(0, dim, {(): value_at_critical})]
        for n, t in enumerate(tensors, start=1):
            ders.append(SymmetricTensor.zero(n, dim) if t is None else t)
        return cls(dim, ders)

    @property
    def value_at_critical(self):
        return self.value

    @property
    def hessian(self):
        return self.derivatives[2].to_matrix()

    def extend(self, order):
        """Pad with zero coefficients; only meaningful when the action is polynomial."""
        if order < self.order:
            return self.truncate(order)
        extra = [SymmetricTensor.zero(n, self.dim) for n in range(self.order + 1, order + 1)]
        return ActionJet(self.dim, self.derivatives + tuple(extra))


@dataclass(frozen=True, eq=False)
class MapJet:
    """Truncated Taylor data of a map ``R^d -> R^d`` fixing the origin.

    ``components[n-1][i]`` is the order-``n`` derivative tensor of the
    ``i``-th output coordinate.  Also used for vector fields, whose linear
    part may be singular; inversion checks invertibility itself.
    """

    dim: int
    components: tuple

    def __post_init__(self):
        comps = tuple(tuple(level) for level in self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("a map jet needs at least its linear part")
        for n, level in enumerate(comps, start=1):
            if len(level) != self.dim:
                raise DimensionMismatch(f"order {n} has {len(level)} components, need {self.dim}")
            for t in level:
                if t.order != n or t.dim != self.dim:
                    raise DimensionMismatch(f"order-{n} component has order {t.order}, dim {t.dim}")

    @property
    def order(self):
        return len(self.components)

    def __getitem__(self, n):
        if n < 1:
            raise IndexError("map jets have no order-0 coefficient")
        return self.components[n - 1]

    @classmethod
    def identity(cls, dim, order):
        return cls.linear(linalg.identity(dim), order)

    @classmethod
    def linear(cls, matrix, order):
        dim = len(matrix)
        lin = [SymmetricTensor(1, dim, {(j,): matrix[i][j] for j in range(dim)}) for i in range(dim)]
        rest = [[SymmetricTensor.zero(n, dim) for _ in range(dim)] for n in range(2, order + 1)]
        return cls(dim, [lin] + rest)

    @classmethod
    def zero(cls, dim, order):
        return cls(dim, [[SymmetricTensor.zero(n, dim) for _ in range(dim)] for n in range(1, order + 1)])

    @classmethod
    def from_polynomials(cls, polys, order):
        dim = len(polys)
        jets = [ScalarJet.from_polynomial(p, order) for p in polys]
        for j in jets:
            if not j[0].is_zero():
                raise ValueError("map must fix the origin")
        return cls(dim, [[jets[i][n] for i in range(dim)] for n in range(1, order + 1)])

    def to_polynomials(self):
        out = []
        for i in range(self.dim):
            ders = [SymmetricTensor.zero(0, self.dim)] + [self[n][i] for n in range(1, self.order + 1)]
            out.append(ScalarJet(self.dim, ders).to_polynomial())
        return out

    def linear_part(self):
        return [[self[1][i][(j,)] for j in range(self.dim)] for i in range(self.dim)]

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot truncate an order-{self.order} jet to order {order}")
        return MapJet(self.dim, self.components[:order])

    def map_scalars(self, fn):
        return MapJet(self.dim, [[t.map(fn) for t in level] for level in self.components])

    def scale(self, s):
        return self.map_scalars(lambda v: s * v)

    def __add__(self, other):
        if (self.dim, self.order) != (other.dim, other.order):
            raise DimensionMismatch("jets do not match")
        return MapJet(
            self.dim,
            [[a + b for a, b in zip(l1, l2)] for l1, l2 in zip(self.components, other.components)],
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def is_identity(self):
        return self == MapJet.identity(self.dim, self.order)

    def __eq__(self, other):
        if not isinstance(other, MapJet):
            return NotImplemented
        return self.dim == other.dim and self.components == other.components

    def __hash__(self):
        return hash((self.dim, self.components))

    def __repr__(self):
        return f"MapJet(dim={self.dim}, order={self.order}, components={self.components!r})"


def evaluate_jet(jet, point):
    """Value of the truncated Taylor polynomial at ``point``."""
    if len(point) != jet.dim:
        raise DimensionMismatch(f"point of length {len(point)} for dim {jet.dim}")
    point = list(point)
    if isinstance(jet, MapJet):
        out = [Fraction(0)] * jet.dim
        for n in range(1, jet.order + 1):
            for i, t in enumerate(jet[n]):
                out[i] = out[i] + contract(t, [point] * n) / factorial(n)
        return out
    total = jet.value
    for n in range(1, jet.order + 1):
        total = total + contract(jet[n], [point] * n) / factorial(n)
    return total


def hessian_inverse(action: ActionJet):
    try:
        return linalg.inverse(action.hessian)
    except NotInvertible:
        raise DegenerateCriticalPoint("Hessian has a nontrivial kernel") from None


def hessian_determinant(action: ActionJet):
    return linalg.determinant(action.hessian)


def hessian_signature(action: ActionJet) -> int:
    if hessian_determinant(action) == 0:
        raise DegenerateCriticalPoint("Hessian has a nontrivial kernel")
    return linalg.signature(action.hessian)

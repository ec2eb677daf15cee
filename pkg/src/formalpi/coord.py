"""Coordinate changes at the level of jets.

Composition follows the set-partition form of the higher chain rule:

    (A o g)^(n)(xi_1..xi_n) = sum_S A^(|S|)( g^(|s|)(xi_s) for s in S )

with ``S`` running over set partitions of ``{1..n}``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, permutations

from . import linalg
from .errors import DimensionMismatch, NotInvertible, PreconditionError
from .jets import ActionJet, MapJet, ScalarJet, SymmetricTensor, contract
from .poly import Polynomial
from .scalars import EPS

__all__ = [
    "PartitionSet",
    "JacobianJet",
    "enumerate_partitions",
    "compose_jets",
    "invert_jet",
    "pushforward_action",
    "jacobian_determinant_jet",
    "is_volume_preserving",
    "divergence_jet",
    "moser_homotopy",
    "infinitesimal_map",
]

MAX_PARTITION_SIZE = 12

JacobianJet = ScalarJet


@dataclass(frozen=True)
class PartitionSet:
    """All set partitions of ``{1, ..., n}``; blocks are sorted tuples."""

    n: int
    partitions: tuple

    def __len__(self):
        return len(self.partitions)

    def __iter__(self):
        return iter(self.partitions)


@lru_cache(maxsize=None)
def _partitions0(n):
    # restricted growth strings, in lexicographic order
    out = []

    def rec(i, labels, nblocks):
        if i == n:
            blocks = [[] for _ in range(nblocks)]
            for pos, b in enumerate(labels):
                blocks[b].append(pos)
            out.append(tuple(tuple(b) for b in blocks))
            return
        for b in range(nblocks + 1):
            labels.append(b)
            rec(i + 1, labels, max(nblocks, b + 1))
            labels.pop()

    rec(0, [], 0)
    return tuple(out)


def enumerate_partitions(n: int) -> PartitionSet:
    if not 1 <= n <= MAX_PARTITION_SIZE:
        raise ValueError(f"partition size must be in 1..{MAX_PARTITION_SIZE}, got {n}")
    parts = tuple(tuple(tuple(p + 1 for p in block) for block in part) for part in _partitions0(n))
    return PartitionSet(n, parts)


def _check_pair(outer, inner):
    if not isinstance(inner, MapJet):
        raise TypeError("inner jet must be a MapJet")
    if outer.dim != inner.dim:
        raise DimensionMismatch(f"dimensions differ: {outer.dim} vs {inner.dim}")
    if outer.order != inner.order:
        raise DimensionMismatch(f"truncation orders differ: {outer.order} vs {inner.order}")


def _composed_tensors(outer_tensors, inner, order, dim):
    """Order-``n`` coefficients (n = 1..order) of ``T o inner`` for a scalar jet ``T``.

    ``outer_tensors[m]`` is the order-``m`` derivative of the outer function.
    """
    block_cache = {}

    def block_vector(sub):
        vec = block_cache.get(sub)
        if vec is None:
            level = inner[len(sub)]
            vec = tuple(level[c][sub] for c in range(dim))
            block_cache[sub] = vec
        return vec

    result = []
    for n in range(1, order + 1):
        entries = {}
        parts = _partitions0(n)
        for idx in combinations_with_replacement(range(dim), n):
            shapes = Counter(
                tuple(sorted(tuple(idx[p] for p in block) for block in part)) for part in parts
            )
            total = Fraction(0)
            for key, mult in shapes.items():
                t = outer_tensors[len(key)]
                if t.is_zero():
                    continue
                vectors = [block_vector(sub) for sub in key]
                if any(all(x == 0 for x in v) for v in vectors):
                    continue
                total = total + mult * contract(t, vectors)
            entries[idx] = total
        result.append(SymmetricTensor(n, dim, entries))
    return result


def compose_jets(outer, inner: MapJet):
    """Jet of ``outer o inner``; ``outer`` is a scalar jet or a map jet."""
    _check_pair(outer, inner)
    dim, order = inner.dim, inner.order
    if isinstance(outer, MapJet):
        per_component = []
        for i in range(dim):
            tensors = [SymmetricTensor.zero(0, dim)] + [outer[n][i] for n in range(1, order + 1)]
            per_component.append(_composed_tensors(tensors, inner, order, dim))
        return MapJet(dim, [[per_component[i][n] for i in range(dim)] for n in range(order)])
    tensors = list(outer.derivatives)
    ders = [outer[0]] + _composed_tensors(tensors, inner, order, dim)
    return type(outer)(dim, ders)


def invert_jet(g: MapJet) -> MapJet:
    """Compositional inverse of ``g`` to the same truncation order.

    Built order by order: each step composes ``g`` with the current
    approximation and removes the lowest nonzero residual.
    """
    dim, order = g.dim, g.order
    try:
        lin_inv = linalg.inverse(g.linear_part())
    except NotInvertible:
        raise NotInvertible("linear part of the map jet is singular") from None
    h = MapJet.linear(lin_inv, order)
    for n in range(2, order + 1):
        residual = compose_jets(g.truncate(n), h.truncate(n))[n]
        levels = [list(level) for level in h.components]
        for i in range(dim):
            corr = levels[n - 1][i]
            for j in range(dim):
                if lin_inv[i][j] != 0 and not residual[j].is_zero():
                    corr = corr - residual[j].scale(lin_inv[i][j])
            levels[n - 1][i] = corr
        h = MapJet(dim, levels)
    return h


def pushforward_action(action: ActionJet, g: MapJet) -> ActionJet:
    """The action expressed in the new coordinates: ``action o g^{-1}``."""
    return compose_jets(action, invert_jet(g))


def _jacobian_polys(g: MapJet):
    polys = g.to_polynomials()
    return [[polys[i].diff(j) for j in range(g.dim)] for i in range(g.dim)]


def _poly_det(matrix, max_degree):
    n = len(matrix)
    dim = matrix[0][0].dim
    total = Polynomial(dim)
    for perm in permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = Polynomial.constant(dim, Fraction(-1 if inversions % 2 else 1))
        for i, j in enumerate(perm):
            term = term.mul(matrix[i][j], max_degree)
        total = total + term
    return total


def jacobian_determinant_jet(g: MapJet) -> JacobianJet:
    """Jet of ``q -> det g'(q)`` at the origin, to order ``g.order - 1``."""
    order = g.order - 1
    det = _poly_det(_jacobian_polys(g), order)
    return ScalarJet.from_polynomial(det, order)


def is_volume_preserving(g: MapJet) -> bool:
    return jacobian_determinant_jet(g).is_constant(1)


def divergence_jet(e: MapJet) -> ScalarJet:
    """Jet of ``q -> tr e'(q)``.  The order-``m`` coefficient is
    ``sum_i e_i^(m+1)[J + (i,)]``: the trace over the last slot."""
    dim = e.dim
    ders = []
    for m in range(e.order):
        level = e[m + 1]
        entries = {}
        for idx in combinations_with_replacement(range(dim), m):
            total = Fraction(0)
            for i in range(dim):
                total = total + level[i][idx + (i,)]
            entries[idx] = total
        ders.append(SymmetricTensor(m, dim, entries))
    return ScalarJet(dim, ders)


def moser_homotopy(f: MapJet, s) -> MapJet:
    """Jet of ``F(s, q) = f(s q) / s``: the order-``n`` coefficient scaled by ``s^(n-1)``.

    ``F(1) = f``, ``F(0) = id`` and ``det F(s)'(q) = det f'(s q)``, so every
    slice stays volume preserving.
    """
    s = Fraction(s)
    if not 0 <= s <= 1:
        raise PreconditionError("homotopy parameter must lie in [0, 1]")
    if f.linear_part() != linalg.identity(f.dim):
        raise PreconditionError("map must have identity linear part")
    if not is_volume_preserving(f):
        raise PreconditionError("map is not volume preserving")
    return MapJet(
        f.dim,
        [[t.scale(s ** (n - 1)) for t in f[n]] for n in range(1, f.order + 1)],
    )


def infinitesimal_map(e: MapJet) -> MapJet:
    """``id + eps * e`` over dual numbers (``eps**2 = 0``)."""
    return MapJet.identity(e.dim, e.order) + e.scale(EPS)

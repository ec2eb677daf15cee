"""Coordinate independence of the diagram series, checked exactly.

For ``y = g(x)`` the Laplace integral transforms as
``int e^{-A o g^{-1}} dy = int e^{-A} det g'(x) dx``.  The diagram series
therefore cannot move when ``det g'`` is identically 1.  For an infinitesimal
change ``g = id + eps e`` the first-order change of the series is the sum of
diagrams with a single inserted vertex carrying the derivatives of
``div e`` -- the trace of ``e^(n+1)`` over its last slot.  :func:`trace_terms`
assembles exactly those diagrams; :func:`first_variation` differentiates the
pushed-forward series with dual numbers.  The two are computed independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .coord import divergence_jet, infinitesimal_map, is_volume_preserving, pushforward_action
from .diagrams import enumerate_marked_diagrams
from .errors import TruncationExceeded
from .feynman import FormalSeries, _propagator_array, contract_network, diagram_sum, required_truncation
from .jets import ActionJet, MapJet

__all__ = ["InvarianceReport", "check_invariance", "first_variation", "trace_terms"]


@dataclass(frozen=True)
class InvarianceReport:
    base_series: FormalSeries
    pushed_series: FormalSeries
    max_order: int
    volume_preserving: bool
    first_difference: Optional[tuple] = None  # (order, pushed - base)

    @property
    def equal(self):
        return self.first_difference is None

    @property
    def verdict(self):
        if self.equal:
            return "equal"
        return f"unequal at order {self.first_difference[0]}"

    @property
    def theorem_violated(self):
        return self.volume_preserving and not self.equal


def _prepared(action, field, max_order, what):
    need = required_truncation(max_order)
    for name, jet in (("action", action), (what, field)):
        if jet.order < need:
            raise TruncationExceeded(
                f"order-{max_order} comparison needs {name} jets to order {need}; have {jet.order}"
            )
    return action.truncate(need), field.truncate(need)


def check_invariance(action: ActionJet, g: MapJet, max_order: int) -> InvarianceReport:
    """Compare the series of ``action`` with that of ``action o g^{-1}``."""
    a, g = _prepared(action, g, max_order, "map")
    base = diagram_sum(a, max_order)
    pushed = diagram_sum(pushforward_action(a, g), max_order)
    return InvarianceReport(
        base_series=base,
        pushed_series=pushed,
        max_order=max_order,
        volume_preserving=is_volume_preserving(g),
        first_difference=base.first_difference(pushed),
    )


def first_variation(action: ActionJet, e: MapJet, max_order: int) -> FormalSeries:
    """``eps``-coefficient of the series after pushing forward by ``id + eps e``."""
    a, e = _prepared(action, e, max_order, "vector field")
    pushed = pushforward_action(a, infinitesimal_map(e))
    return diagram_sum(pushed, max_order).eps_part()


def trace_terms(action: ActionJet, e: MapJet, max_order: int) -> FormalSeries:
    """Sum of diagrams with one inserted trace vertex ``(div e)^(n)``, ``n >= 1``.

    The remaining vertices are the ordinary ``-f^(m)`` vertices with ``m >= 3``.
    The constant part of ``div e`` does not enter: it is absorbed by the
    Gaussian determinant.
    """
    a, e = _prepared(action, e, max_order, "vector field")
    div = divergence_jet(e)  # order 2*max_order + 1
    prop = _propagator_array(a)
    dense = {}

    def base_tensor(deg):
        if deg not in dense:
            t = -a[deg]
            dense[deg] = None if t.is_zero() else t.to_dense()
        return dense[deg]

    coeffs = [0] * (max_order + 1)
    for cls in enumerate_marked_diagrams(max_order, 1, 2 * max_order):
        d = cls.canonical
        tensors = []
        for i, deg in enumerate(d.degrees):
            if i == d.marked:
                t = div[deg]
                t = None if t.is_zero() else t.to_dense()
            else:
                t = base_tensor(deg)
            if t is None:
                break
            tensors.append(t)
        else:
            ev = contract_network(d, tensors, prop)
            coeffs[cls.order] = coeffs[cls.order] + ev / cls.aut_count
    return FormalSeries(tuple(coeffs))

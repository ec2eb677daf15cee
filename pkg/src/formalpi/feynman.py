"""Feynman rules and the diagrammatic stationary-phase series.

Convention: the integrand is ``exp(-f / kappa)``.  A vertex of valence ``n``
carries ``-f^(n)(0)``, an edge carries the inverse Hessian, and a diagram
``G`` contributes ``kappa^(|E|-|V|) ev(G) / |Aut G|``.  Setting
``kappa = i*hbar`` gives the oscillatory integral, ``kappa = hbar > 0`` the
Laplace integral; the coefficients are the same.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import pi
from typing import Sequence

import numpy as np

from .diagrams import FeynmanDiagram, enumerate_diagrams
from .errors import DegenerateCriticalPoint, TruncationExceeded
from .jets import ActionJet, SymmetricTensor, hessian_determinant, hessian_inverse, hessian_signature
from .scalars import GaussianRational, eps_part, format_scalar, format_sum, real_part

__all__ = [
    "FormalSeries",
    "Prefactor",
    "vertex_weight",
    "evaluate_diagram",
    "contract_network",
    "diagram_sum",
    "required_truncation",
    "prefactor",
    "series_exp",
    "series_log",
]


@dataclass(frozen=True)
class FormalSeries:
    """Polynomial in the coupling ``kappa`` truncated at ``order``."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        if not self.coefficients:
            raise ValueError("a series needs at least its constant term")

    @classmethod
    def zero(cls, order):
        return cls((Fraction(0),) * (order + 1))

    @classmethod
    def one(cls, order):
        return cls((Fraction(1),) + (Fraction(0),) * order)

    @property
    def order(self):
        return len(self.coefficients) - 1

    def __getitem__(self, k):
        return self.coefficients[k]

    def __len__(self):
        return len(self.coefficients)

    def _common(self, other):
        n = min(self.order, other.order)
        return self.coefficients[: n + 1], other.coefficients[: n + 1]

    def __add__(self, other):
        a, b = self._common(other)
        return FormalSeries(tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other):
        a, b = self._common(other)
        return FormalSeries(tuple(x - y for x, y in zip(a, b)))

    def __mul__(self, other):
        if not isinstance(other, FormalSeries):
            return FormalSeries(tuple(other * c for c in self.coefficients))
        a, b = self._common(other)
        n = len(a)
        out = []
        for k in range(n):
            total = Fraction(0)
            for i in range(k + 1):
                total = total + a[i] * b[k - i]
            out.append(total)
        return FormalSeries(tuple(out))

    __rmul__ = __mul__

    def truncate(self, order):
        return FormalSeries(self.coefficients[: order + 1])

    def is_zero(self):
        return all(c == 0 for c in self.coefficients)

    def real_part(self):
        return FormalSeries(tuple(real_part(c) for c in self.coefficients))

    def eps_part(self):
        """Coefficient of ``eps`` when the series has dual-number coefficients."""
        return FormalSeries(tuple(eps_part(c) for c in self.coefficients))

    def first_difference(self, other):
        """``(order, other - self)`` at the lowest differing order, or None."""
        a, b = self._common(other)
        for k, (x, y) in enumerate(zip(a, b)):
            if x != y:
                return k, y - x
        return None

    def __call__(self, kappa: float) -> float:
        return sum(float(c) * kappa**k for k, c in enumerate(self.coefficients))

    def oscillatory(self):
        """Coefficients of ``hbar^k`` after substituting ``kappa = i*hbar``."""
        unit = [(1, 0), (0, 1), (-1, 0), (0, -1)]
        out = []
        for k, c in enumerate(self.coefficients):
            re, im = unit[k % 4]
            out.append(GaussianRational(Fraction(re) * c, Fraction(im) * c))
        return out

    def format(self):
        return [format_scalar(c) for c in self.coefficients]

    def __str__(self):
        monos = ["", "k"] + [f"k^{n}" for n in range(2, len(self.coefficients))]
        return format_sum(zip(self.coefficients, monos))


def series_exp(s: FormalSeries) -> FormalSeries:
    if s[0] != 0:
        raise ValueError("exp needs a series with zero constant term")
    n = s.order
    e = [Fraction(1)]
    for k in range(1, n + 1):
        total = Fraction(0)
        for j in range(1, k + 1):
            total = total + j * s[j] * e[k - j]
        e.append(total / k)
    return FormalSeries(tuple(e))


def series_log(s: FormalSeries) -> FormalSeries:
    if s[0] != 1:
        raise ValueError("log needs a series with constant term 1")
    n = s.order
    out = [Fraction(0)]
    for k in range(1, n + 1):
        total = s[k]
        for j in range(1, k):
            total = total - Fraction(j, k) * out[j] * s[k - j]
        out.append(total)
    return FormalSeries(tuple(out))


@dataclass(frozen=True)
class Prefactor:
    """Gaussian prefactor ``(2 pi kappa)^(d/2) e^(i pi sig/4) e^(-f(c)/kappa) |det|^(-1/2)``.

    ``phase_eighths`` is the phase in units of ``2 pi / 8``, i.e. the
    signature mod 8.  In the Laplace regime the phase is absent.
    """

    half_dim_power: Fraction
    phase_eighths: int
    classical_value: object
    abs_det: Fraction
    det_exponent: Fraction = Fraction(-1, 2)
    signature: int = 0

    def laplace_value(self, kappa: float) -> float:
        """Numeric value for real ``kappa > 0``; assumes a positive-definite Hessian."""
        return (
            (2 * pi * kappa) ** float(self.half_dim_power)
            * float(self.abs_det) ** float(self.det_exponent)
            * np.exp(-float(self.classical_value) / kappa)
        )


def prefactor(action: ActionJet) -> Prefactor:
    det = hessian_determinant(action)
    if det == 0:
        raise DegenerateCriticalPoint("Hessian has a nontrivial kernel")
    sig = hessian_signature(action)
    return Prefactor(
        half_dim_power=Fraction(action.dim, 2),
        phase_eighths=sig % 8,
        classical_value=action.value_at_critical,
        abs_det=abs(Fraction(real_part(det))),
        signature=sig,
    )


def vertex_weight(action: ActionJet, n: int) -> SymmetricTensor:
    if n < 1:
        raise ValueError("vertices have valence >= 1")
    if n > action.order:
        raise TruncationExceeded(f"valence-{n} vertex needs an order-{n} jet; have {action.order}")
    return -action[n]


def contract_network(diagram: FeynmanDiagram, vertex_tensors: Sequence, propagator):
    """Full contraction of a diagram with the given dense vertex tensors.

    ``vertex_tensors[i]`` has one axis per half-edge of vertex ``i`` (in the
    vertex's sorted half-edge order); every edge inserts ``propagator``.
    """
    nets = []
    for v, t in zip(diagram.vertices, vertex_tensors):
        nets.append((t, list(v)))
    for a, b in diagram.edges:
        nets.append((propagator, [a, b]))
    scalars = []
    while nets:
        if len(nets) == 1:
            t, labels = nets.pop()
            if labels:
                raise ValueError("uncontracted half-edges remain")
            scalars.append(t[()] if isinstance(t, np.ndarray) else t)
            break
        best = None
        for i in range(len(nets)):
            li = set(nets[i][1])
            for j in range(i + 1, len(nets)):
                shared = li.intersection(nets[j][1])
                if not shared:
                    continue
                rank = len(nets[i][1]) + len(nets[j][1]) - 2 * len(shared)
                if best is None or rank < best[0]:
                    best = (rank, i, j, shared)
        if best is None:
            # remaining pieces are disjoint and therefore all scalars
            for t, labels in nets:
                if labels:
                    raise ValueError("uncontracted half-edges remain")
                scalars.append(t[()] if isinstance(t, np.ndarray) else t)
            break
        _, i, j, shared = best
        (ti, li), (tj, lj) = nets[i], nets[j]
        shared = sorted(shared)
        ax_i = [li.index(s) for s in shared]
        ax_j = [lj.index(s) for s in shared]
        t = np.tensordot(ti, tj, axes=(ax_i, ax_j))
        labels = [x for x in li if x not in shared] + [x for x in lj if x not in shared]
        nets = [n for k, n in enumerate(nets) if k not in (i, j)]
        if labels:
            nets.append((t, labels))
        else:
            scalars.append(t[()] if isinstance(t, np.ndarray) else t)
    total = Fraction(1)
    for s in scalars:
        total = total * s
    return total


def _propagator_array(action):
    inv = hessian_inverse(action)
    arr = np.empty((action.dim, action.dim), dtype=object)
    for i in range(action.dim):
        for j in range(action.dim):
            arr[i, j] = inv[i][j]
    return arr


def evaluate_diagram(diagram: FeynmanDiagram, action: ActionJet, *, _propagator=None, _dense=None):
    """``ev(G)``: vertex ``-f^(deg)``, edge ``(f^(2))^(-1)``, all indices summed."""
    if not diagram.vertices:
        return Fraction(1)
    for deg in diagram.degrees:
        if deg > action.order:
            raise TruncationExceeded(
                f"valence-{deg} vertex needs an order-{deg} jet; have {action.order}"
            )
    prop = _propagator if _propagator is not None else _propagator_array(action)
    dense = _dense if _dense is not None else {}
    tensors = []
    for deg in diagram.degrees:
        if deg not in dense:
            w = vertex_weight(action, deg)
            dense[deg] = None if w.is_zero() else w.to_dense()
        if dense[deg] is None:
            return Fraction(0)
        tensors.append(dense[deg])
    return contract_network(diagram, tensors, prop)


def required_truncation(max_order: int) -> int:
    """Jet order needed for the series through ``kappa^max_order``.

    The single vertex with ``max_order + 1`` self-loops has valence
    ``2 max_order + 2``.
    """
    return 2 * max_order + 2


def diagram_sum(action: ActionJet, max_order: int, connected_only: bool = False) -> FormalSeries:
    """``sum_G kappa^(order G) ev(G) / |Aut G|`` over trivalent-and-higher diagrams."""
    need = required_truncation(max_order)
    if action.order < need:
        raise TruncationExceeded(
            f"series through order {max_order} needs an order-{need} action jet; have {action.order}"
        )
    prop = _propagator_array(action)
    dense = {}
    coeffs = [Fraction(0)] * (max_order + 1)
    for cls in enumerate_diagrams(max_order, 3, connected_only):
        ev = evaluate_diagram(cls.canonical, action, _propagator=prop, _dense=dense)
        if ev != 0:
            coeffs[cls.order] = coeffs[cls.order] + ev / cls.aut_count
    return FormalSeries(tuple(coeffs))

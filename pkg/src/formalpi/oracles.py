"""Ground-truth computations that share no code with the diagram engine.

* :func:`moment_expansion` expands ``exp(-V/kappa)`` and takes Gaussian
  moments with Isserlis' pairing rule.
* :func:`operator_expansion` applies ``exp((kappa/2) C^{jk} d_j d_k)`` to the
  same exponential and evaluates at the origin.
* :func:`laplace_quadrature` integrates ``exp(-f/kappa)`` numerically.
* :func:`index_sum_evaluation` evaluates a diagram by the literal sum over all
  half-edge index assignments.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import erfc, factorial, sqrt

import numpy as np
from scipy import integrate

from . import linalg
from .errors import DegenerateCriticalPoint, NotInvertible, PreconditionError, QuadraturePrecisionError, TruncationExceeded
from .feynman import FormalSeries
from .jets import ActionJet
from .poly import Polynomial

__all__ = [
    "QuadratureResult",
    "moment_expansion",
    "operator_expansion",
    "laplace_quadrature",
    "gaussian_moment",
    "pairings",
    "index_sum_evaluation",
]


def _covariance(action):
    try:
        return linalg.inverse(action.hessian)
    except NotInvertible:
        raise DegenerateCriticalPoint("Hessian has a nontrivial kernel") from None


def _interaction(action: ActionJet, max_order: int) -> Polynomial:
    need = 2 * max_order + 2
    if action.order < need:
        raise TruncationExceeded(f"order {max_order} needs an order-{need} action jet; have {action.order}")
    poly = action.to_polynomial()
    # drop f(c) and the quadratic part
    return Polynomial(action.dim, {e: c for e, c in poly.terms.items() if sum(e) >= 3})


def _interaction_powers(V: Polynomial, max_order: int):
    """``V^m`` for ``m <= 2 max_order``, keeping degrees ``<= 2(max_order + m)``."""
    out = [Polynomial.constant(V.dim, Fraction(1))]
    for m in range(1, 2 * max_order + 1):
        out.append(out[-1].mul(V, 2 * (max_order + m)))
    return out


def pairings(items):
    """All perfect matchings of a list, as lists of index pairs."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for k in range(len(rest)):
        partner = rest[k]
        remaining = rest[:k] + rest[k + 1:]
        for sub in pairings(remaining):
            yield [(first, partner)] + sub


def gaussian_moment(cov, multi_index):
    """Isserlis: ``E[x_i1 ... x_in]`` as the sum over pairings of covariance products."""
    total = Fraction(0)
    for matching in pairings(range(len(multi_index))):
        term = Fraction(1)
        for a, b in matching:
            term *= cov[multi_index[a]][multi_index[b]]
        total += term
    return total


def _moment_table(cov):
    dim = len(cov)

    @lru_cache(maxsize=None)
    def moment(exp):
        # peel one factor x_i and pair it with every remaining factor
        if sum(exp) == 0:
            return Fraction(1)
        if sum(exp) % 2:
            return Fraction(0)
        i = next(k for k, e in enumerate(exp) if e)
        rest = list(exp)
        rest[i] -= 1
        total = Fraction(0)
        for j in range(dim):
            if rest[j] and cov[i][j] != 0:
                r2 = list(rest)
                r2[j] -= 1
                total += rest[j] * cov[i][j] * moment(tuple(r2))
        return total

    return moment


def moment_expansion(action: ActionJet, max_order: int) -> FormalSeries:
    """Normalized Gaussian expectation of ``exp(-V/kappa)`` as a series in ``kappa``."""
    V = _interaction(action, max_order)
    moment = _moment_table(_covariance(action))
    coeffs = [Fraction(0)] * (max_order + 1)
    for m, Vm in enumerate(_interaction_powers(V, max_order)):
        weight = Fraction((-1) ** m, factorial(m))
        for exp, c in Vm.terms.items():
            deg = sum(exp)
            if deg % 2:
                continue
            k = deg // 2 - m  # E[x^exp] carries kappa^(deg/2), the vertices kappa^(-m)
            if 0 <= k <= max_order:
                coeffs[k] += weight * c * moment(exp)
    return FormalSeries(tuple(coeffs))


def _apply_heat_operator(poly: Polynomial, cov):
    """``(1/2) sum_jk C^{jk} d_j d_k`` applied to a polynomial."""
    dim = poly.dim
    out = Polynomial(dim)
    for j in range(dim):
        dj = poly.diff(j)
        for k in range(dim):
            if cov[j][k] != 0:
                out = out + dj.diff(k).scale(Fraction(cov[j][k]) / 2)
    return out


def operator_expansion(action: ActionJet, max_order: int) -> FormalSeries:
    """``exp((kappa/2) C d d) exp(-V/kappa)`` at the origin, term by term."""
    V = _interaction(action, max_order)
    cov = _covariance(action)
    coeffs = [Fraction(0)] * (max_order + 1)
    for m, Vm in enumerate(_interaction_powers(V, max_order)):
        term = Vm.scale(Fraction((-1) ** m, factorial(m)))
        # r applications of the operator contribute kappa^(r - m) / r!
        q = term
        r = 0
        while q.terms:
            k = r - m
            if 0 <= k <= max_order:
                coeffs[k] += q.constant_term() / factorial(r)
            if k >= max_order:
                break
            q = _apply_heat_operator(q, cov)
            r += 1
    return FormalSeries(tuple(coeffs))


def index_sum_evaluation(diagram, action: ActionJet):
    """Evaluate a diagram by summing over every assignment of an index to each half-edge."""
    cov = _covariance(action)
    h = diagram.num_half_edges
    if h == 0:
        return Fraction(1)
    total = Fraction(0)
    for assign in product(range(action.dim), repeat=h):
        term = Fraction(1)
        for v in diagram.vertices:
            term *= -action[len(v)][tuple(assign[x] for x in v)]
            if term == 0:
                break
        if term == 0:
            continue
        for a, b in diagram.edges:
            term *= cov[assign[a]][assign[b]]
        total += term
    return total


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int


def _float_poly(action: ActionJet):
    poly = action.to_polynomial()
    terms = [(np.array(e), float(c)) for e, c in poly.terms.items() if sum(e) >= 2]

    def f(*x):
        total = 0.0
        for e, c in terms:
            term = c
            for xi, k in zip(x, e):
                if k:
                    term *= xi**k
            total += term
        return total

    return f


def laplace_quadrature(action: ActionJet, kappa: float, domain_halfwidth: float | None = None,
                       width_sigmas: float = 8.0, tol: float = 1e-13) -> QuadratureResult:
    """``int exp(-(f - f(c))/kappa)`` over a box, divided by ``(2 pi kappa)^(d/2) |det f''|^(-1/2)``.

    The jet is read as an exact polynomial (no higher terms).  The box
    half-width defaults to ``width_sigmas * sqrt(kappa / lambda_min)``; the
    Gaussian mass outside the box is added to the error estimate.
    """
    if kappa <= 0:
        raise PreconditionError("Laplace quadrature needs kappa > 0")
    if action.dim > 2:
        raise PreconditionError("quadrature is limited to dimension <= 2")
    hess = np.array([[float(x) for x in row] for row in action.hessian])
    eig = np.linalg.eigvalsh(hess)
    if eig.min() <= 0:
        raise PreconditionError("Laplace quadrature needs a positive-definite Hessian")
    lam = float(eig.min())
    if domain_halfwidth is None:
        domain_halfwidth = width_sigmas * sqrt(kappa / lam)
    f = _float_poly(action)
    norm = (2 * np.pi * kappa) ** (action.dim / 2) / sqrt(float(np.linalg.det(hess)))

    def integrand(*x):
        return np.exp(-f(*x) / kappa) / norm

    a = domain_halfwidth
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            if action.dim == 1:
                value, err, info = integrate.quad(integrand, -a, a, epsabs=tol, epsrel=tol,
                                                  limit=200, full_output=1)[:3]
                nev = info["neval"]
            else:
                value, err, info = integrate.nquad(integrand, [[-a, a], [-a, a]],
                                                   opts={"epsabs": tol, "epsrel": tol, "limit": 200},
                                                   full_output=True)
                nev = info["neval"]
        except integrate.IntegrationWarning as exc:
            raise QuadraturePrecisionError(
                f"quadrature did not converge: {exc}",
                {"kappa": kappa, "halfwidth": a, "dim": action.dim},
            ) from None
    tail = action.dim * erfc(a * sqrt(lam / (2 * kappa)))
    if not np.isfinite(value) or value <= 0:
        # the integrand is positive, so a zero or negative value means the
        # rule never sampled the peak
        raise QuadraturePrecisionError(
            f"quadrature returned {value!r} for a positive integrand",
            {"kappa": kappa, "halfwidth": a, "dim": action.dim, "evaluations": nev},
        )
    return QuadratureResult(float(value), float(abs(err) + tail), int(nev))

from fractions import Fraction as F
from math import log

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CORPUS, action, variables
from formalpi import (
    PreconditionError,
    QuadraturePrecisionError,
    diagram_sum,
    laplace_quadrature,
    moment_expansion,
    operator_expansion,
)
from formalpi.oracles import _moment_table, gaussian_moment, pairings

(x,) = variables(1)
X, Y = variables(2)
QUARTIC = action(CORPUS["quartic"], 8)


def test_pairings_count_is_double_factorial():
    assert [sum(1 for _ in pairings(range(n))) for n in (0, 2, 4, 6, 8)] == [1, 1, 3, 15, 105]
    assert sum(1 for _ in pairings(range(3))) == 0


def test_isserlis_examples():
    unit = [[F(1)]]
    assert gaussian_moment(unit, (0, 0, 0, 0)) == 3
    assert gaussian_moment(unit, (0,) * 8) == 105
    assert gaussian_moment(unit, (0,) * 6) == 15
    c = [[F(2), F(1, 3)], [F(1, 3), F(5)]]
    assert gaussian_moment(c, (0, 0, 1, 1)) == c[0][0] * c[1][1] + 2 * c[0][1] ** 2
    assert gaussian_moment(c, (0, 1, 1)) == 0


@settings(max_examples=40, deadline=None)
@given(st.fractions(min_value=-2, max_value=2, max_denominator=5),
       st.fractions(min_value=F(1, 5), max_value=3, max_denominator=5),
       st.fractions(min_value=F(1, 5), max_value=3, max_denominator=5),
       st.tuples(st.integers(0, 4), st.integers(0, 4)))
def test_memoized_moments_match_literal_isserlis(c01, c00, c11, exp):
    cov = [[c00, c01], [c01, c11]]
    literal = gaussian_moment(cov, (0,) * exp[0] + (1,) * exp[1])
    assert _moment_table(cov)(exp) == literal


def test_moment_expansion_examples():
    assert moment_expansion(action(x * x * F(1, 2), 8), 3).coefficients == (1, 0, 0, 0)
    assert moment_expansion(QUARTIC, 2).coefficients == (1, F(-1, 8), F(35, 384))
    assert moment_expansion(action(CORPUS["cubic"], 4), 1).coefficients == (1, F(5, 24))


def test_operator_expansion_examples():
    assert operator_expansion(action(X * X + Y * Y, 8), 3).coefficients == (1, 0, 0, 0)
    assert operator_expansion(QUARTIC, 3) == moment_expansion(QUARTIC, 3)
    assert operator_expansion(action(CORPUS["cubic"], 4), 1).coefficients == (1, F(5, 24))


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_both_oracles_agree_through_order_three(name, corpus):
    assert moment_expansion(corpus[name], 3) == operator_expansion(corpus[name], 3)


@pytest.mark.parametrize("kappa", [0.01, 0.1, 0.5, 2.0])
def test_quadrature_of_pure_gaussian(kappa):
    assert abs(laplace_quadrature(action(x * x * F(1, 2), 2), kappa).value - 1.0) <= 1e-10
    r = laplace_quadrature(action(X * X + X * Y * F(1, 2) + Y * Y * 3, 2), kappa)
    assert abs(r.value - 1.0) <= 1e-10


def test_quadrature_quartic_against_series():
    s = diagram_sum(QUARTIC, 2)
    assert abs(s(0.1) - 0.988411) < 1e-6
    assert abs(laplace_quadrature(QUARTIC, 0.1).value - s(0.1)) < 2e-3


def test_quadrature_residual_shrinks_like_kappa_cubed():
    s = diagram_sum(QUARTIC, 2)
    residuals = [abs(laplace_quadrature(QUARTIC, k).value - s(k)) for k in (0.2, 0.1, 0.05)]
    ratios = [residuals[0] / residuals[1], residuals[1] / residuals[2]]
    assert all(6 < r < 8.5 for r in ratios)


def test_quadrature_two_dimensional_against_series():
    a = action(CORPUS["quartic2d"], 8)
    s = diagram_sum(a, 3)
    assert abs(laplace_quadrature(a, 0.05).value - s(0.05)) < 1e-5


def test_quadrature_preconditions_and_failures():
    with pytest.raises(PreconditionError):
        laplace_quadrature(QUARTIC, -0.1)
    with pytest.raises(PreconditionError):
        laplace_quadrature(action(CORPUS["indefinite2d"], 4), 0.1)
    with pytest.raises(QuadraturePrecisionError) as info:
        laplace_quadrature(QUARTIC, 0.1, domain_halfwidth=1e4)
    assert info.value.diagnostics["halfwidth"] == 1e4

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CORPUS, action, map_jet, variables
from formalpi import (
    DegenerateCriticalPoint,
    FeynmanDiagram,
    FormalSeries,
    SymmetricTensor,
    TruncationExceeded,
    diagram_sum,
    disjoint_union,
    enumerate_diagrams,
    evaluate_diagram,
    prefactor,
    pushforward_action,
    series_exp,
    series_log,
    vertex_weight,
)
from formalpi.oracles import index_sum_evaluation
from formalpi.scalars import GaussianRational

(x,) = variables(1)
X, Y = variables(2)

FIGURE_EIGHT = FeynmanDiagram(((0, 1, 2, 3),), ((0, 1), (2, 3)))
THETA = FeynmanDiagram(((0, 1, 2), (3, 4, 5)), ((0, 3), (1, 4), (2, 5)))
DUMBBELL = FeynmanDiagram(((0, 1, 2), (3, 4, 5)), ((0, 1), (2, 3), (4, 5)))
LOOP_ON_LINE = FeynmanDiagram(((0, 1),), ((0, 1),))

QUARTIC = x * x * F(1, 2) + x**4 * F(1, 24)
CUBIC = x * x * F(1, 2) + x**3 * F(1, 6)


def test_vertex_weight_examples():
    eye = action((X * X + Y * Y) * F(1, 2), 4)
    assert vertex_weight(eye, 2) == SymmetricTensor.from_matrix([[-1, 0], [0, -1]])
    w = vertex_weight(action(QUARTIC, 4), 4)
    assert w[0, 0, 0, 0] == -1 and w.order == 4
    assert vertex_weight(action(QUARTIC, 4), 3).is_zero()
    with pytest.raises(TruncationExceeded):
        vertex_weight(action(QUARTIC, 4), 5)


def test_evaluate_examples():
    assert evaluate_diagram(FIGURE_EIGHT, action(x * x * F(1, 2) + x**4 * F(1, 24), 4)) == -1
    assert evaluate_diagram(THETA, action(CUBIC, 4)) == 1
    for dim in (1, 2, 3):
        vs = variables(dim)
        quad = sum((v * v for v in vs[1:]), vs[0] * vs[0]) * F(1, 2)
        assert evaluate_diagram(LOOP_ON_LINE, action(quad, 2)) == -dim


def test_evaluate_empty_is_one():
    assert evaluate_diagram(FeynmanDiagram((), ()), action(QUARTIC, 4)) == 1


def test_evaluate_degenerate_and_truncated():
    with pytest.raises(DegenerateCriticalPoint):
        evaluate_diagram(THETA, action(X * X * F(1, 2) + Y**3, 3))
    with pytest.raises(TruncationExceeded):
        evaluate_diagram(FIGURE_EIGHT, action(QUARTIC, 3))


SAMPLE = [c.canonical for c in enumerate_diagrams(2)] + [LOOP_ON_LINE]


@pytest.mark.parametrize("name", ["generic2d", "indefinite2d", "coupled2d", "mixed1d"])
def test_network_contraction_matches_index_sum(name):
    a = action(CORPUS[name], 6)
    for d in SAMPLE:
        assert evaluate_diagram(d, a) == index_sum_evaluation(d, a), d.to_text()


def subdivide(d, edge_index):
    """Insert a bivalent vertex on one edge."""
    h = d.num_half_edges
    a, b = d.edges[edge_index]
    edges = list(d.edges[:edge_index]) + [(a, h), (h + 1, b)] + list(d.edges[edge_index + 1:])
    return FeynmanDiagram(d.vertices + ((h, h + 1),), tuple(edges))


@pytest.mark.parametrize("name", ["generic2d", "indefinite2d", "cubic", "quartic2d"])
def test_bivalent_vertex_is_minus_strand(name):
    a = action(CORPUS[name], 6)
    for d in (THETA, DUMBBELL, FIGURE_EIGHT, LOOP_ON_LINE):
        for k in range(len(d.edges)):
            assert evaluate_diagram(subdivide(d, k), a) == -evaluate_diagram(d, a)


@pytest.mark.parametrize("name", ["generic2d", "coupled2d", "stiff1d"])
def test_multiplicative_over_disjoint_union(name):
    a = action(CORPUS[name], 6)
    for p in (THETA, DUMBBELL, FIGURE_EIGHT):
        for q in (THETA, LOOP_ON_LINE):
            u = disjoint_union(p, q)
            assert evaluate_diagram(u, a) == evaluate_diagram(p, a) * evaluate_diagram(q, a)


def test_diagram_sum_examples():
    assert diagram_sum(action(QUARTIC, 6), 2).coefficients == (1, F(-1, 8), F(35, 384))
    assert diagram_sum(action(CUBIC, 4), 1).coefficients == (1, F(5, 24))
    for k in range(4):
        assert diagram_sum(action(x * x * F(1, 2), 2 * k + 2), k).coefficients == (1,) + (0,) * k


def test_diagram_sum_needs_truncation():
    with pytest.raises(TruncationExceeded):
        diagram_sum(action(QUARTIC, 5), 2)


@pytest.mark.parametrize("matrix", [
    [[1, 1], [0, 1]],
    [[2, 3], [1, 2]],
    [[0, 1], [-1, 0]],
    [[1, 0], [F(5, 3), -1]],
])
def test_affine_invariance(matrix):
    a = action(CORPUS["generic2d"], 6)
    g = map_jet([matrix[0][0] * X + matrix[0][1] * Y, matrix[1][0] * X + matrix[1][1] * Y], 6)
    assert diagram_sum(pushforward_action(a, g), 2) == diagram_sum(a, 2)


def test_series_exp_log():
    z = FormalSeries.zero(4)
    assert series_exp(z) == FormalSeries.one(4)
    kappa = FormalSeries((0, 1, 0, 0, 0))
    assert series_log(series_exp(kappa)) == kappa
    with pytest.raises(ValueError):
        series_log(FormalSeries((2, 1)))
    with pytest.raises(ValueError):
        series_exp(FormalSeries((1, 1)))


series_strategy = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=9),
                           min_size=1, max_size=5).map(lambda cs: FormalSeries((F(0),) + tuple(cs)))


@settings(max_examples=50, deadline=None)
@given(series_strategy, series_strategy)
def test_exp_log_are_inverse_and_exp_is_multiplicative(s, t):
    assert series_log(series_exp(s)) == s
    n = min(s.order, t.order)
    assert series_exp((s + t).truncate(n)) == series_exp(s.truncate(n)) * series_exp(t.truncate(n))


def test_exp_connected_quartic_order_one():
    a = action(QUARTIC, 4)
    assert series_exp(diagram_sum(a, 1, connected_only=True)) == diagram_sum(a, 1)


def test_series_arithmetic_truncates():
    a, b = FormalSeries((1, 2, 3)), FormalSeries((1, 1))
    assert (a * b).coefficients == (1, 3)
    assert (a + b).coefficients == (2, 3)
    assert a.first_difference(a) is None
    assert a.first_difference(FormalSeries((1, 2, 4))) == (2, 1)


def test_oscillatory_regime():
    s = FormalSeries((1, F(-1, 8), F(35, 384)))
    osc = s.oscillatory()
    assert osc[1] == GaussianRational(0, F(-1, 8))
    assert osc[2] == GaussianRational(F(-35, 384), 0)


def test_prefactor_examples():
    p = prefactor(action(x * x * F(1, 2), 2))
    assert (p.half_dim_power, p.phase_eighths, p.abs_det) == (F(1, 2), 1, 1)
    p = prefactor(action((X * X - Y * Y) * F(1, 2), 2))
    assert (p.phase_eighths, p.abs_det, p.signature) == (0, 1, 0)
    p = prefactor(action(x * x, 2))
    assert (p.abs_det, p.det_exponent) == (2, F(-1, 2))
    p = prefactor(action(-(X * X + Y * Y) * 3 + 7, 2))
    assert p.phase_eighths == (-2) % 8 and p.classical_value == 7 and p.abs_det == 36
    with pytest.raises(DegenerateCriticalPoint):
        prefactor(action(X * X + Y**3, 3))


def test_series_text_form():
    assert str(FormalSeries((1, F(-1, 8), F(35, 384)))) == "1 - 1/8*k + 35/384*k^2"
    assert str(FormalSeries((0, 0))) == "0"
    assert str(FormalSeries((0, 1, -1))) == "k - k^2"

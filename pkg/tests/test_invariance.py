from fractions import Fraction as F

import pytest

from conftest import CORPUS, action, map_jet, variables
from formalpi import (
    MapJet,
    TruncationExceeded,
    check_invariance,
    compose_jets,
    divergence_jet,
    first_variation,
    moser_homotopy,
    trace_terms,
)

(x,) = variables(1)
X, Y = variables(2)


def test_identity_map_is_equal():
    for name in ("quartic", "generic2d"):
        a = action(CORPUS[name], 8)
        dim = a.dim
        r = check_invariance(a, MapJet.identity(dim, 8), 3)
        assert r.equal and r.volume_preserving and r.verdict == "equal"


@pytest.mark.parametrize("a", [F(1), F(-2, 3), F(5, 2)])
def test_shear_is_equal(a):
    act = action(CORPUS["quartic2d"], 6)
    r = check_invariance(act, map_jet([X + Y * Y * a, Y], 6), 2)
    assert r.volume_preserving and r.equal
    assert r.base_series.coefficients == r.pushed_series.coefficients


def test_composite_shears_on_generic_action():
    act = action(CORPUS["generic2d"], 6)
    s1 = map_jet([X + Y * Y - Y**3 * F(1, 2), Y], 6)
    s2 = map_jet([X, Y + X * X * F(2, 3)], 6)
    g = compose_jets(s1, s2)
    r = check_invariance(act, g, 2)
    assert r.volume_preserving and r.equal and not r.theorem_violated
    h = moser_homotopy(g, F(1, 3))
    assert check_invariance(act, h, 2).equal


def test_nonvolume_preserving_odd_map_changes_quartic_series():
    r = check_invariance(action(CORPUS["quartic"], 6), map_jet([x + x**3], 6), 2)
    assert not r.volume_preserving
    assert r.verdict == "unequal at order 1"
    assert r.first_difference == (1, F(3))
    assert not r.theorem_violated


def test_square_map_on_cubic_action_changes_series():
    r = check_invariance(action(CORPUS["cubic"], 6), map_jet([x + x * x], 6), 2)
    assert r.first_difference[0] == 1 and r.first_difference[1] == -1


def test_square_map_on_quartic_action():
    """The pushed series is the average of 1 + 2x, and x averages to zero for an even action."""
    r = check_invariance(action(CORPUS["quartic"], 6), map_jet([x + x * x], 6), 2)
    assert not r.volume_preserving
    assert r.pushed_series == r.base_series


def test_invariance_needs_truncation():
    with pytest.raises(TruncationExceeded):
        check_invariance(action(CORPUS["quartic"], 5), map_jet([x + x * x], 6), 2)
    with pytest.raises(TruncationExceeded):
        check_invariance(action(CORPUS["quartic"], 6), map_jet([x + x * x], 5), 2)


def hamiltonian(h, order):
    return map_jet([h.diff(1), -h.diff(0)], order)


def test_first_variation_examples():
    quartic2d = action(CORPUS["quartic2d"], 6)
    assert first_variation(quartic2d, MapJet.zero(2, 6), 2).is_zero()
    assert first_variation(quartic2d, hamiltonian(X * X * Y, 6), 2).is_zero()
    cubic = action(CORPUS["cubic"], 6)
    fv = first_variation(cubic, map_jet([x * x], 6), 2)
    assert fv[1] != 0
    assert fv == trace_terms(cubic, map_jet([x * x], 6), 2)


def test_trace_terms_examples():
    quartic2d = action(CORPUS["quartic2d"], 6)
    assert trace_terms(quartic2d, MapJet.zero(2, 6), 2).is_zero()
    assert trace_terms(quartic2d, hamiltonian(X**3 * Y - Y**4, 6), 2).is_zero()


def test_linear_field_has_no_first_variation():
    """A linear field only rescales the Gaussian determinant, which the normalised series omits."""
    act = action(CORPUS["generic2d"], 6)
    M = [[F(1), F(2)], [F(-1), F(3)]]
    e = MapJet.linear(M, 6)
    assert divergence_jet(e).is_constant(4)
    assert first_variation(act, e, 2).is_zero()
    assert trace_terms(act, e, 2).is_zero()


@pytest.mark.parametrize("name,field", [
    ("cubic", [x * x]),
    ("quartic", [x**3 + x * x * F(1, 2)]),
    ("mixed1d", [x * x - x**4 * F(2, 3)]),
    ("generic2d", [X * X * Y + X**3, X * Y * Y]),
    ("coupled2d", [Y * Y, X * Y - X**3 * F(1, 4)]),
    ("indefinite2d", [X * X, Y**3 + X * Y]),
])
def test_first_variation_equals_trace_terms(name, field):
    act = action(CORPUS[name], 6)
    e = map_jet(field, 6)
    assert first_variation(act, e, 2) == trace_terms(act, e, 2)


def test_known_first_variation_values():
    act = action(CORPUS["cubic"], 6)
    assert first_variation(act, map_jet([x * x], 6), 2).coefficients == (0, -1, F(-35, 24))
    act = action(CORPUS["quartic"], 6)
    assert first_variation(act, map_jet([x * x], 6), 2).is_zero()


def test_first_variation_is_linear_in_field():
    act = action(CORPUS["generic2d"], 6)
    e1 = map_jet([X * X, Y * X], 6)
    e2 = map_jet([Y**3, X * X * Y], 6)
    both = first_variation(act, e1 + e2.scale(F(3)), 2)
    fv1, fv2 = first_variation(act, e1, 2), first_variation(act, e2, 2)
    assert both.coefficients == tuple(a + 3 * b for a, b in zip(fv1.coefficients, fv2.coefficients))

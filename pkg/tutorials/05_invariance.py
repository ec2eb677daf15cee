"""
Invariance under volume-preserving maps
=======================================

The diagram series does not change when the action is pushed forward by a
map with unit Jacobian.  Maps that stretch volume generally do change it,
and the infinitesimal version of the change is a sum of trace diagrams.
"""

from fractions import Fraction

from formalpi import (
    ActionJet,
    MapJet,
    Polynomial,
    check_invariance,
    compose_jets,
    first_variation,
    trace_terms,
)

X, Y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
f = ActionJet.from_polynomial(
    X * X * Fraction(1, 2) + Y * Y + X * Y * Fraction(1, 3) + X**3 * Fraction(1, 5) + Y**4 * Fraction(1, 24), 6)

shear_x = MapJet.from_polynomials([X + Y * Y, Y], 6)
shear_y = MapJet.from_polynomials([X, Y - X**3 * Fraction(2, 5)], 6)
report = check_invariance(f, compose_jets(shear_x, shear_y), 2)
print("two shears:", report.verdict, "| volume preserving:", report.volume_preserving)
print("  base  ", report.base_series)
print("  pushed", report.pushed_series)

x = Polynomial.variable(1, 0)
quartic = ActionJet.from_polynomial(x * x * Fraction(1, 2) + x**4 * Fraction(1, 24), 6)
cubic = ActionJet.from_polynomial(x * x * Fraction(1, 2) + x**3 * Fraction(1, 6), 6)
for name, action, g in (("x + x^3 on quartic", quartic, x + x**3),
                        ("x + x^2 on cubic", cubic, x + x * x),
                        ("x + x^2 on quartic", quartic, x + x * x)):
    r = check_invariance(action, MapJet.from_polynomials([g], 6), 2)
    print(f"{name}: {r.verdict}, first difference {r.first_difference}")
# The last one is equal: the pushed series averages 1 + 2x, and x averages to
# zero under an even action.

# Infinitesimally: a Hamiltonian field has no effect, a field with varying
# divergence changes the series by exactly the trace diagrams.
h = X * X * Y
hamiltonian = MapJet.from_polynomials([h.diff(1), -h.diff(0)], 6)
print("Hamiltonian first variation:", first_variation(f, hamiltonian, 2))
e = MapJet.from_polynomials([X * X * Y + X**3, X * Y * Y], 6)
print("first variation:", first_variation(f, e, 2))
print("trace terms:    ", trace_terms(f, e, 2))

"""
Independent checks: Wick moments and quadrature
===============================================

The diagram sum is compared with two algebraic computations that never
build a diagram, and with a numerical integral.
"""

from fractions import Fraction

from formalpi import (
    ActionJet,
    Polynomial,
    diagram_sum,
    laplace_quadrature,
    moment_expansion,
    operator_expansion,
)

X, Y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
f = ActionJet.from_polynomial(
    X * X + X * Y + Y * Y + X**3 * Fraction(1, 6) - Y**3 * Fraction(1, 4) + X * X * Y * Y * Fraction(1, 8), 8)
print("diagrams:", diagram_sum(f, 3))
print("moments: ", moment_expansion(f, 3))
print("operator:", operator_expansion(f, 3))

# The truncated series should track the integral with an error of order kappa^3.
x = Polynomial.variable(1, 0)
quartic = ActionJet.from_polynomial(x * x * Fraction(1, 2) + x**4 * Fraction(1, 24), 6)
series = diagram_sum(quartic, 2)
print("\nkappa   quadrature          series              residual     residual/kappa^3")
for kappa in (0.2, 0.1, 0.05):
    q = laplace_quadrature(quartic, kappa)
    s = series(kappa)
    print(f"{kappa:<6}  {q.value:.15f}  {s:.15f}  {q.value - s:+.3e}  {(q.value - s) / kappa**3:+.4f}")

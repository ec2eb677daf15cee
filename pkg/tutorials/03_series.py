"""
The diagram series of a Laplace integral
========================================

For an integrand exp(-f/kappa) the normalised integral has an asymptotic
series in kappa whose coefficients are sums over diagrams.  Here we compute
it for the quartic and cubic toy actions and look at the Gaussian prefactor
that sits in front.
"""

from fractions import Fraction

from formalpi import ActionJet, Polynomial, diagram_sum, prefactor, series_exp, series_log

x = Polynomial.variable(1, 0)
quartic = ActionJet.from_polynomial(x * x * Fraction(1, 2) + x**4 * Fraction(1, 24), 8)
cubic = ActionJet.from_polynomial(x * x * Fraction(1, 2) + x**3 * Fraction(1, 6), 8)

for name, action in (("quartic", quartic), ("cubic", cubic)):
    series = diagram_sum(action, 3)
    print(f"{name:8s} {series}")

# Only connected diagrams are needed: the full sum is their exponential.
full = diagram_sum(quartic, 3)
connected = diagram_sum(quartic, 3, connected_only=True)
print("connected:", connected)
print("exp(connected) == full:", series_exp(connected) == full)
print("log(full) == connected:", series_log(full) == connected)

# With kappa = i hbar the same numbers give the oscillatory (stationary phase) series.
print("in powers of hbar:", [str(c) for c in full.oscillatory()])

# The prefactor is reported separately from the series.
p = prefactor(quartic)
print("prefactor: (2 pi kappa)^%s, phase %s/8 turns, |det|^%s with |det| = %s"
      % (p.half_dim_power, p.phase_eighths, p.det_exponent, p.abs_det))

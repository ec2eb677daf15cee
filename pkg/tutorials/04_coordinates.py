"""
Changing coordinates on jets
============================

Composition of jets uses the set-partition form of the chain rule.  With it
we can invert maps and push actions forward, then compute Jacobian determinants,
all exactly.
"""

from fractions import Fraction

from formalpi import (
    EPS,
    MapJet,
    Polynomial,
    divergence_jet,
    enumerate_partitions,
    infinitesimal_map,
    invert_jet,
    is_volume_preserving,
    jacobian_determinant_jet,
    moser_homotopy,
)

print("set partitions of 4 elements:", len(enumerate_partitions(4)))

x = Polynomial.variable(1, 0)
g = MapJet.from_polynomials([x + x * x], 4)
print("inverse of x + x^2:", invert_jet(g).to_polynomials()[0])
print("det jet of x + x^2:", jacobian_determinant_jet(g).to_polynomial())

# A shear has unit Jacobian no matter how strong it is.
X, Y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
shear = MapJet.from_polynomials([X + Y * Y * Fraction(3, 2), Y], 5)
print("shear volume preserving:", is_volume_preserving(shear))

# Scaling the order-n part by s^(n-1) connects the shear to the identity.
for s in (0, Fraction(1, 2), 1):
    F = moser_homotopy(shear, s)
    print(f"s = {s}: {F.to_polynomials()[0]},  det jet constant 1: {jacobian_determinant_jet(F).is_constant(1)}")

# Infinitesimal maps id + eps e live over dual numbers with eps^2 = 0.
e = MapJet.from_polynomials([X * X * Y, X * Y * Y + Y**3], 5)
h = infinitesimal_map(e)
print("inverse is id - eps e:", invert_jet(h) == MapJet.identity(2, 5) - e.scale(EPS))
print("divergence of e:", divergence_jet(e).to_polynomial())

"""
Jets, symmetric tensors and the Hessian
=======================================

An action is stored by its Taylor data at a critical point: the exact
derivative tensors f^(0), ..., f^(N).  This script builds a couple of jets
and reads off the quantities the expansion needs.
"""

from fractions import Fraction

from formalpi import (
    ActionJet,
    MapJet,
    Polynomial,
    SymmetricTensor,
    contract,
    evaluate_jet,
    hessian_determinant,
    hessian_inverse,
    hessian_signature,
)

# Polynomials are the friendliest way in.  x**4/24 has fourth derivative 1.
x = Polynomial.variable(1, 0)
quartic = ActionJet.from_polynomial(x * x * Fraction(1, 2) + x**4 * Fraction(1, 24), 4)
print("f'''' entry:", quartic[4][0, 0, 0, 0])
print("jet at x = 2:", evaluate_jet(quartic, [2]))

# Symmetric tensors only keep sorted indices, so any permutation reads the same entry.
t = SymmetricTensor(3, 2, {(0, 1, 1): Fraction(5)})
print("t[1,0,1] =", t[1, 0, 1], " t[1,1,0] =", t[1, 1, 0])

# Contracting with vectors evaluates the multilinear form.
print("t(v, v, v) with v = (1, 2):", contract(t, [(1, 2)] * 3))

# A two-dimensional action and its quadratic data.
X, Y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
f = ActionJet.from_polynomial(X * X + X * Y + Y * Y + X * Y * Y * Fraction(1, 3), 4)

def show(matrix):
    return "[" + ", ".join("[" + ", ".join(str(v) for v in row) + "]" for row in matrix) + "]"


print("Hessian:", show(f.hessian))
print("inverse Hessian (the propagator):", show(hessian_inverse(f)))
print("determinant:", hessian_determinant(f), " signature:", hessian_signature(f))

# Maps are jets too; the identity jet leaves every point alone.
point = evaluate_jet(MapJet.identity(2, 4), [3, Fraction(-1, 2)])
print("identity at (3, -1/2):", [str(v) for v in point])

"""
Counting Feynman diagrams
=========================

Diagrams are half-edge graphs: half-edges grouped into vertices and paired
into edges.  Each isomorphism class enters the expansion divided by the size
of its automorphism group.
"""

from fractions import Fraction

from formalpi import (
    FeynmanDiagram,
    automorphism_count,
    connected_components,
    disjoint_union,
    enumerate_diagrams,
)

# The three connected one-loop-order vacuum diagrams with vertices of valence >= 3.
for cls in enumerate_diagrams(1, min_valence=3, connected_only=True):
    print(f"{cls.canonical.to_text():45s} chi={cls.euler}  |Aut|={cls.aut_count}")

# A bivalent vertex closed on itself can be flipped: two automorphisms.
loop = FeynmanDiagram(((0, 1),), ((0, 1),))
print("bivalent self-loop |Aut| =", automorphism_count(loop))

# Two copies of the figure-eight can also be swapped with each other.
eight = FeynmanDiagram(((0, 1, 2, 3),), ((0, 1), (2, 3)))
pair = disjoint_union(eight, eight)
print("figure-eight pair |Aut| =", automorphism_count(pair), "components:", len(connected_components(pair)))

# How the census grows with the order.
for k in range(4):
    every = enumerate_diagrams(k)
    connected = enumerate_diagrams(k, connected_only=True)
    weight = sum(Fraction(1, c.aut_count) for c in every if c.order == k)
    print(f"order <= {k}: {len(every):4d} classes, {len(connected):4d} connected;"
          f" sum of 1/|Aut| at order {k} = {weight}")

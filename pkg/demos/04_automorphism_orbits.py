"""Symmetry-group counts and the orbit gap.

The automorphism group of the algebra has dimension 13 + 18m + 8m^2;
the subgroup compatible with the quaternionic triple has 1 + 9m + 2m^2,
so lattice-induced deformations sweep an orbit of dimension
12 + 9m + 6m^2 -- strictly below the 6m^2 + 11m + 12 parameters of the
deformation space.  The surplus 2m directions are deformations that no
lattice change produces.
"""
import random

from nilquat.automorphisms import (group_dimensions, is_lie_automorphism,
                                   is_triangular_form, random_triangular,
                                   strict_intersection_dimension)
from nilquat.lie_core import make_heisenberg_ext

for m in (1, 2, 3, 4):
    g, h, eff = group_dimensions(m)
    deform = 6 * m * m + 11 * m + 12
    print("m=%d: aut %3d  compatible %3d  orbit %3d  <  deformations %3d  (gap %d)"
          % (m, g, h, eff, deform, deform - eff))
    print("      strict bracket-pairing intersection: %d"
          % strict_intersection_dimension(m))

print("\nrandom block-triangular matrices are automorphisms:")
A = make_heisenberg_ext(1)
rng = random.Random(0)
M = random_triangular(1, rng)
ok, s0 = is_triangular_form(M, 1)
print("  predicate:", ok, " scale:", s0, " automorphism:",
      is_lie_automorphism(M, A))

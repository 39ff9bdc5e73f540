"""Walk through the dimension counts at small size.

The parameter space of the fibered geometry splits in three pieces: a
12-dimensional fiber part, an 8m mixed part, and a 3m(2m+1) base part,
for a total of 6m^2 + 11m + 12.  Passing to the full tangent sheaf
removes exactly the three fiberline quadratics.  On the torus side the
counts are 12m^2 and 12m^2 - 3.
"""
from nilquat.cohomology import assemble_H1_W_D, quaternionic_sequence, torus_dims

for m in (1, 2, 3):
    rep = assemble_H1_W_D(m)
    q = quaternionic_sequence(m)
    t = torus_dims(m)
    print("m = %d" % m)
    print("  parameter space: %d  (= 12 + %d + %d, formula 6m^2+11m+12 = %d)"
          % (rep.dim, rep.dim_coker_p, rep.dim_ker_d1, 6 * m * m + 11 * m + 12))
    print("  full tangent sheaf: %d  (injection of the %d fiberline quadratics)"
          % (q.dim_H1_Theta, q.dim_H0_O2))
    print("  torus: %d, torus up to frame rotation: %d"
          % (t["dim_H1_Z_D"], t["dim_quaternionic"]))
    assert all(rep.checks.values())
print("\nall counts verified exactly")

"""The quadratic potentials behind the flat quaternionic coordinates.

Applying the triple to dz and chasing the invariant coframe produces
exact differentials: I_k dz = d f_k for three explicit quadratic
functions f_1, f_2, f_3.  Together with x, y, z they give global
coordinates identifying the structure with the standard flat one.
"""
from nilquat.coord_calc import (d_of_function, one_form, quaternionic_potentials,
                                theta, triple_on_oneforms, var_names,
                                verify_quaternionic_coordinates, z_idx, ext_d)
from nilquat.hypercomplex import standard_triple

m = 1
names = var_names(m)


def pretty(poly):
    bits = []
    for key in sorted(poly.terms):
        mono = "*".join(names[v] + ("^%d" % e if e > 1 else "") for v, e in key)
        c = str(poly.terms[key])
        bits.append(mono if c == "1" else "%s*%s" % (c, mono))
    return " + ".join(bits).replace("+ -", "- ")


f1, f2, f3 = quaternionic_potentials(m)
print("f1 =", pretty(f1))
print("f2 =", pretty(f2))
print("f3 =", pretty(f3))

T = standard_triple(m)
dz = one_form(m, z_idx(m))
images = triple_on_oneforms(T, m, dz)
for k, (img, f) in enumerate(zip(images, (f1, f2, f3)), start=1):
    print("I_%d dz == d f_%d :" % (k, k), img == d_of_function(m, f))

print("\nstructural equation d theta:", ext_d(theta(m)).comp)
print("full report:", verify_quaternionic_coordinates(m))

"""Solve the deformation equation order by order for a sample parameter.

Every right side of the recursion decomposes through the primitive
solver, so the series stays inside the distinguished invariant class;
the residual of the equation is re-checked exactly at every order, and a
sampled sup-norm sequence gives a growth diagnostic.
"""
import json
import pathlib
import random

from nilquat.mc_solver import (DeformationParam, check_holomorphic_projection,
                               check_invariance, mc_residual, norm_growth,
                               solve_mc)

fixture = pathlib.Path(__file__).parent / "fixtures" / "phi1_m1_ker.json"
phi = DeformationParam.from_json(json.loads(fixture.read_text()), 1)
S = solve_mc(phi, 1, 6)
print("fixture parameter, order 6:")
for n, term in enumerate(S.terms, start=1):
    print("  order %d: %r" % (n, term))
print("residuals all zero:", all(r.is_zero() for r in mc_residual(S)))
print("invariant:", check_invariance(S),
      " projection-vertical:", check_holomorphic_projection(S))

print("\nrandom parameter at m=2:")
phi = DeformationParam.random(2, random.Random(1), support=6)
S = solve_mc(phi, 2, 6)
print("residuals all zero:", all(r.is_zero() for r in mc_residual(S)))
g = norm_growth(S, samples=30, seed=0)
print("sampled sup-norms:", ["%.4g" % x for x in g["sup_norms"]])
print("growth ratios:    ", ["%.3f" % x for x in g["ratios"]])

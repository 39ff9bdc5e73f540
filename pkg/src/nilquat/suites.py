"""The verification suites behind the CLI: each function runs one module's
invariants at the requested size and returns a Report."""
from __future__ import annotations

import random
import time

from . import cohomology as coh
from . import coord_calc as cc
from . import twistor as tw
from .automorphisms import (group_dimensions, is_compatible_form,
                            is_lie_automorphism, is_triangular_form,
                            random_compatible, random_triangular,
                            strict_intersection_dimension)
from .exact_linalg import G0, GaussRat, rat
from .hypercomplex import (check_quaternion_relations, connection_is_torsion_free,
                           connection_preserves, nijenhuis_vanishes,
                           obata_connection, reduced_equals_full,
                           standard_triple, unit_combination)
from .lie_core import (bracket, center_subspace, check_jacobi,
                       derivation_dimension, derived_ideal, make_heisenberg_ext)
from .mc_solver import (DeformationParam, check_holomorphic_projection,
                        check_invariance, mc_residual, norm_growth, solve_mc)
from .reports import Report


def _timed(fn):
    def wrapper(*a, **k):
        t0 = time.time()
        rep = fn(*a, **k)
        rep.elapsed = time.time() - t0
        return rep
    return wrapper


@_timed
def algebra_suite(m: int, seed: int = 0) -> Report:
    rep = Report("algebra", m, seed)
    A = make_heisenberg_ext(m)
    rep.add("jacobi", "Jacobi identity on all basis triples",
            check_jacobi(A) is None)
    rep.add("center_dim", "center is 4-dimensional",
            len(center_subspace(A)) == 4)
    rep.add("derived_dim", "derived ideal is 1-dimensional (the Z line)",
            len(derived_ideal(A)) == 1)
    table_ok = True
    for j in range(1, 2 * m + 1):
        for k in range(1, 2 * m + 1):
            got = bracket(A, A.basis_vector("Y%d" % j), A.basis_vector("X%d" % k))
            want = A.vector(Z=4) if j == k else A.vector()
            table_ok = table_ok and got == want
    rep.add("bracket_table", "[Y_j, X_k] = 4 delta_jk Z, all other pairs zero",
            table_ok)
    d = derivation_dimension(A)
    rep.add("derivation_dim", "derivation algebra dimension = 13 + 18m + 8m^2",
            d == 13 + 18 * m + 8 * m * m, "got %d" % d)
    return rep


@_timed
def hypercomplex_suite(m: int, seed: int = 0) -> Report:
    rep = Report("hypercomplex", m, seed)
    A = make_heisenberg_ext(m)
    T = standard_triple(m)
    rep.add("quaternion_relations", "I1^2 = I2^2 = I3^2 = -1, I1 I2 = I3 = -I2 I1",
            check_quaternion_relations(T) is None)
    nij = all(nijenhuis_vanishes(A, J) for J in T)
    rep.add("nijenhuis_basis", "invariant Nijenhuis tensor zero for I1, I2, I3", nij)
    Jc = unit_combination(T, rat("3/5"), rat("4/5"), 0)
    rep.add("nijenhuis_combination",
            "Nijenhuis tensor zero for a rational unit combination",
            nijenhuis_vanishes(A, Jc))
    C = obata_connection(A, T)
    rep.add("torsion_free", "connection torsion vanishes against the brackets",
            connection_is_torsion_free(A, C))
    rep.add("parallel_triple", "connection preserves I1, I2, I3",
            all(connection_preserves(A, C, J) for J in T))
    rep.add("reduced_vs_full", "reduced and full connection formulas agree",
            reduced_equals_full(A, T))
    return rep


@_timed
def coords_suite(m: int, seed: int = 0) -> Report:
    rep = Report("coords", m, seed)
    rng = random.Random(seed + 101)
    n = 4 * m + 1

    def rand_point():
        return tuple(GaussRat(rat(rng.randint(-9, 9), rng.randint(1, 5)))
                     for _ in range(n))

    ok = True
    for _ in range(100):
        p, q, r = rand_point(), rand_point(), rand_point()
        lhs = cc.group_mul(m, cc.group_mul(m, p, q), r)
        rhs = cc.group_mul(m, p, cc.group_mul(m, q, r))
        ok = ok and lhs == rhs
    rep.add("associativity", "group product associative on 100 exact triples", ok)
    e = cc.identity_point(m)
    p = rand_point()
    rep.add("identity", "origin is a two-sided identity",
            cc.group_mul(m, p, e) == p and cc.group_mul(m, e, p) == p)
    dth = cc.ext_d(cc.theta(m))
    want = cc.PolyForm(m, 2)
    for j in range(1, 2 * m + 1):
        want = want + cc.PolyForm(m, 2, {(cc.x_idx(m, j), cc.y_idx(m, j)): GaussRat(4)})
    rep.add("structural_equation",
            "d theta = 4 sum_j dx_j ^ dy_j", dth == want)
    rep.add("d_squared", "d o d = 0 on theta and coordinate functions",
            cc.ext_d(dth).is_zero()
            and cc.ext_d(cc.d_of_function(m, cc.quaternionic_potentials(m)[0])).is_zero())
    qrep = cc.verify_quaternionic_coordinates(m)
    rep.add("quaternionic_coordinates",
            "I_k dz = d f_k for the three quadratic potentials",
            qrep == {1: True, 2: True, 3: True})
    F = cc.left_invariant_fields(m)
    th = cc.theta(m)
    ann = all(th.eval_on([F[lab]]).is_zero()
              for lab in F if lab.startswith(("X", "Y")))
    rep.add("theta_annihilates", "theta kills the horizontal frame, theta(Z) = 1",
            ann and th.eval_on([F["Z"]]) == cc.CoordPoly.constant(1))
    return rep


@_timed
def twistor_suite(m: int, seed: int = 0, trials: int = 50,
                  closure_pairs=None) -> Report:
    rep = Report("twistor", m, seed)
    rng = random.Random(seed + 7)

    def rand_scalar():
        num = {}
        for _ in range(rng.randint(1, 4)):
            num[(rng.randint(0, 3), rng.randint(0, 3))] = GaussRat(
                rng.randint(-4, 4), rng.randint(-2, 2))
        return tw.SphereScalar(num, rng.randint(0, 3))

    ok = True
    for _ in range(30):
        a, b, c = rand_scalar(), rand_scalar(), rand_scalar()
        ok = ok and (a + b) * c == a * c + b * c and a * (b * c) == (a * b) * c
        ok = ok and (a * b).conjugate() == a.conjugate() * b.conjugate()
    rep.add("ring_laws", "sphere-scalar ring laws on random exact instances", ok)
    rep.add("dbar_displays",
            "derivative displays for the three basic sphere functions",
            tw.F1.d_dmubar() == tw.SphereScalar.monomial(2, 0, -1, 2)
            and tw.F2.d_dmubar() == tw.SphereScalar.monomial(0, 0, 1, 2)
            and tw.F3.d_dmubar() == tw.SphereScalar.monomial(1, 0, -1, 2))
    # del-bar squared kills everything at form level (dmubar ^ dmubar = 0)
    phi = tw.VectorValuedForm(1)
    phi.add_term(tw.holo(1, m + 1), (tw.sigma_bar(1, 1),), tw.F2)
    phi.add_term(tw.holo(2, 1), (tw.sigma_bar(2, m + 1),), tw.F1 * tw.F2)
    rep.add("dbar_squared", "del-bar o del-bar = 0 on vector-valued forms",
            tw.dbar_apply(tw.dbar_apply(phi)).is_zero())
    prim_ok = True
    for _ in range(20):
        f = rand_scalar()
        g = f.d_dmubar()
        if not tw.is_smooth_on_sphere(g, as_form_coeff=True):
            continue
        try:
            p = tw.dbar_primitive(g)
        except (ValueError, tw.NoPrimitiveError):
            prim_ok = False
            continue
        prim_ok = (prim_ok and p.d_dmubar() == g
                   and tw.is_smooth_on_sphere(p) and p.value_at_zero() == G0.re)
    rep.add("primitive_roundtrip",
            "primitive solver inverts the derivative with the zero gauge", prim_ok)
    rep.add("central_expansion",
            "inverted frame relations reproduce the central projection",
            tw.verify_central_expansion(m))
    rep.add("twisted_form_identities",
            "projection forms equal their chart expansions, exactly",
            tw.verify_twisted_form_identities(m))
    E = coh.space_E(m)
    sym_ok = True
    for _ in range(10):
        i, j = rng.randrange(len(E)), rng.randrange(len(E))
        a = tw.chart_restrict_combo(E[i].combo, m)
        b = tw.chart_restrict_combo(E[j].combo, m)
        sym_ok = sym_ok and tw.nijenhuis_bracket(a, b, m) == tw.nijenhuis_bracket(b, a, m)
    rep.add("bracket_symmetric", "deformation bracket symmetric on random pairs",
            sym_ok)
    for kind in ("frame_bracket", "lie_derivative", "forms", "w_identities"):
        err = tw.numeric_crosscheck(kind, m, trials=trials, seed=seed)
        rep.add("numeric_%s" % kind,
                "rewrite table vs coordinate realization, max error < 1e-9",
                err < 1e-9, "max error %.3e" % err)
    closure = tw.verify_bracket_closure(m, pairs=closure_pairs, seed=seed)
    rep.add("bracket_closure",
            "every basis bracket is del-bar of a smooth combination",
            closure["ok"],
            "%d pairs, %d zero" % (closure["pairs_checked"], closure["zero_brackets"]))
    return rep


@_timed
def cohomology_suite(m: int, seed: int = 0) -> Report:
    rep = Report("cohomology", m, seed)
    h1 = coh.assemble_H1_W_D(m)
    for key, ok in h1.checks.items():
        rep.add(key, {
            "delta0_rank_4m": "first coboundary injective of rank 4m",
            "image_avoids_central_forms": "first coboundary image avoids central forms",
            "cokernel_complement": "cokernel representatives complement the image",
            "ker_delta1_dim": "kernel of second coboundary has dimension 3m(2m+1)",
            "ker_delta1_span": "displayed kernel families span the exact kernel",
            "theorem_dimension": "parameter space dimension = 6m^2 + 11m + 12",
            "exactness_bookkeeping": "dimension matches the exact-sequence bookkeeping",
        }[key], ok)
    rep.info("splitting", "cokernel split 12 / 8m / 3m(2m+1)",
             "%d / %d / %d" % (h1.dim_coker_dd, h1.dim_coker_p, h1.dim_ker_d1))
    q = coh.quaternionic_sequence(m)
    rep.add("quat_delta0", "fiberline quadratics inject (rank 3)",
            q.delta0_injective and q.dim_H0_O2 == 3)
    rep.add("quat_image", "their image lies in the assembled parameter space",
            q.image_in_H1_W_D)
    rep.add("quat_delta1", "second connecting map injective", q.delta1_injective)
    rep.add("quat_dimension", "full-tangent parameter count = 6m^2 + 11m + 9",
            q.formula_ok, "got %d" % q.dim_H1_Theta)
    t = coh.torus_dims(m)
    rep.add("torus_dims", "torus counts 12m^2 and 12m^2 - 3",
            t["hyper_formula_ok"] and t["quat_formula_ok"] and t["sections_ok"],
            "%d / %d" % (t["dim_H1_Z_D"], t["dim_quaternionic"]))
    if m <= 2:
        A = coh.delta0_map(m)
        B = tw.delta0_via_chern_connection(m)
        same = (A.rows, A.cols) == (B.rows, B.cols) and all(
            A.get(r, c) == B.get(r, c)
            for r in range(A.rows) for c in range(A.cols))
        rep.add("delta0_crosscheck",
                "coboundary matrix equals the chart-engine recomputation", same)
    return rep


@_timed
def mc_suite(m: int, seed: int = 0, runs: int = 5, order: int = 6,
             support: int = 6) -> Report:
    rep = Report("mc", m, seed)
    rng = random.Random(seed + 13)
    all_zero = True
    all_inv = True
    all_holo = True
    for r in range(runs):
        phi = DeformationParam.random(m, rng, support=support)
        S = solve_mc(phi, m, order)
        all_zero = all_zero and all(x.is_zero() for x in mc_residual(S))
        all_inv = all_inv and check_invariance(S)
        all_holo = all_holo and check_holomorphic_projection(S)
        if r == 0:
            S2 = solve_mc(phi.scale(GaussRat(2)), m, order)
            hom = all(S2.terms[n - 1] == S.terms[n - 1].scale(GaussRat(2 ** n))
                      for n in range(1, order + 1))
            rep.add("homogeneity", "doubling the parameter scales order n by 2^n", hom)
            g = norm_growth(S, samples=25, seed=seed)
            rep.info("norm_growth", "sampled sup-norm growth ratios",
                     " ".join("%.4f" % x for x in g["ratios"]))
    rep.add("residual_zero",
            "power-series equation residual exactly zero at every order",
            all_zero, "%d runs, order %d" % (runs, order))
    rep.add("invariance", "every term stays in the distinguished smooth class",
            all_inv)
    rep.add("holomorphic_projection",
            "deformed antiholomorphic vectors stay projection-vertical", all_holo)
    return rep


@_timed
def aut_suite(m: int, seed: int = 0, count: int = 200) -> Report:
    rep = Report("aut", m, seed)
    g, h, eff = group_dimensions(m)
    rep.add("dim_full", "automorphism count = 13 + 18m + 8m^2",
            g == 13 + 18 * m + 8 * m * m, "got %d" % g)
    rep.add("dim_compatible", "compatible subgroup count = 1 + 9m + 2m^2",
            h == 1 + 9 * m + 2 * m * m, "got %d" % h)
    rep.add("dim_effective", "effective parameters = 12 + 9m + 6m^2",
            eff == 12 + 9 * m + 6 * m * m, "got %d" % eff)
    rep.info("dim_strict_intersection",
             "bracket-pairing reading of the conformal block (for comparison)",
             "%d" % strict_intersection_dimension(m))
    deform = 6 * m * m + 11 * m + 12
    rep.add("orbit_gap",
            "effective orbit dimension below the deformation count",
            eff < deform, "%d < %d" % (eff, deform))
    A = make_heisenberg_ext(m)
    rng = random.Random(seed + 3)
    ok2 = True
    for _ in range(count):
        M = random_triangular(m, rng)
        p2, s0 = is_triangular_form(M, m)
        ok2 = ok2 and p2 and s0 and is_lie_automorphism(M, A)
    rep.add("random_triangular", "random block-triangular matrices are automorphisms",
            ok2, "%d samples" % count)
    ok3 = True
    for _ in range(max(count // 4, 10)):
        M = random_compatible(m, rng)
        ok3 = ok3 and is_compatible_form(M, m) and is_lie_automorphism(M, A)
    rep.add("random_compatible", "random compatible-shape matrices pass both predicates",
            ok3)
    return rep


SUITES = {
    "algebra": algebra_suite,
    "hypercomplex": hypercomplex_suite,
    "coords": coords_suite,
    "twistor": twistor_suite,
    "cohomology": cohomology_suite,
    "mc": mc_suite,
    "aut": aut_suite,
}


def run_suite(name: str, m: int, seed: int = 0) -> Report:
    if name == "twistor":
        pairs = None if m == 1 else 200
        return twistor_suite(m, seed=seed, closure_pairs=pairs)
    return SUITES[name](m, seed=seed)

import random

import pytest

from nilquat.cohomology import space_E
from nilquat.exact_linalg import GaussRat, rat
from nilquat.mc_solver import (DeformationParam, MCSeries, check_holomorphic_projection,
                               check_invariance, mc_residual, norm_growth,
                               param_to_form, solve_mc)
from nilquat.twistor import (DMU, DMUBAR, F1, SphereScalar, VectorValuedForm,
                             holo, sigma_bar)


def eidx(m, name):
    for i, e in enumerate(space_E(m)):
        if e.name == name:
            return i
    raise KeyError(name)


def test_zero_parameter():
    S = solve_mc(DeformationParam(1, {}), 1, 5)
    assert all(t.is_zero() for t in S.terms)
    assert all(r.is_zero() for r in mc_residual(S))
    assert check_invariance(S) and check_holomorphic_projection(S)


def test_single_vertical_parameter():
    m = 1
    idx = eidx(m, "HV[k=2,V1,Om_2^2]")
    S = solve_mc(DeformationParam(m, {idx: GaussRat(1)}), m, 4)
    # self-bracket feeds a single slot forever; second order is the
    # primitive the solver exhibits
    want = VectorValuedForm(1)
    want.add_term(holo(1, 2), (sigma_bar(2, 2),),
                  SphereScalar.monomial(3, 0, -1, 2))
    assert S.terms[1] == want
    assert all(r.is_zero() for r in mc_residual(S))


def test_kernel_self_pair_matches_primitive():
    # the symmetric kernel family reproduces the explicit combination:
    # for the lambda_1^2 element the second-order term is
    # -(1/2) * primitive of the self-bracket, supported on the same slot
    m = 1
    idx = eidx(m, "ker1_sym12[k=2,a=1,b=1]")
    S = solve_mc(DeformationParam(m, {idx: GaussRat(rat(1, 2))}), m, 3)
    want = VectorValuedForm(1)
    want.add_term(holo(1, 1), (sigma_bar(2, 1),), SphereScalar.monomial(3, 0, -1, 2))
    assert S.terms[1] == want


def test_order_bounds():
    with pytest.raises(ValueError):
        solve_mc(DeformationParam(1, {}), 1, 0)
    with pytest.raises(ValueError):
        solve_mc(DeformationParam(1, {}), 2, 3)


def test_residual_detects_perturbation():
    m = 1
    phi = DeformationParam.random(m, random.Random(3), support=4)
    S = solve_mc(phi, m, 3)
    bad = [t for t in S.terms]
    pert = VectorValuedForm(1)
    pert.add_term(holo(1, 1), (sigma_bar(2, 1),), F1)
    bad[1] = bad[1] + pert
    S2 = MCSeries(m, 3, bad)
    assert not all(r.is_zero() for r in mc_residual(S2))


def test_residual_vacuous_at_order_one():
    S = solve_mc(DeformationParam.random(1, random.Random(1), 3), 1, 1)
    assert mc_residual(S) == []


def test_invariance_rejects_bad_slots():
    m = 1
    good = solve_mc(DeformationParam.random(m, random.Random(2), 3), m, 2)
    bad_form = VectorValuedForm(1)
    bad_form.add_term(holo(1, 1), (DMUBAR,), F1)
    S = MCSeries(m, 2, [good.terms[0], bad_form])
    assert not check_invariance(S)
    bad_vec = VectorValuedForm(1)
    bad_vec.add_term(DMU, (sigma_bar(1, 1),), F1)
    S = MCSeries(m, 2, [good.terms[0], bad_vec])
    assert not check_invariance(S)
    assert not check_holomorphic_projection(S)


def test_holomorphic_projection_trivial_cases():
    S = MCSeries(1, 1, [VectorValuedForm(1)])
    assert check_holomorphic_projection(S)


def test_residuals_random():
    for m, seeds in ((1, (0, 1, 2)), (2, (0, 1))):
        for s in seeds:
            phi = DeformationParam.random(m, random.Random(10 * m + s), support=5)
            S = solve_mc(phi, m, 5)
            assert all(r.is_zero() for r in mc_residual(S))
            assert check_invariance(S)
            assert check_holomorphic_projection(S)


def test_homogeneity_exact():
    m = 1
    phi = DeformationParam.random(m, random.Random(8), support=5)
    S1 = solve_mc(phi, m, 5)
    S2 = solve_mc(phi.scale(GaussRat(2)), m, 5)
    for n in range(1, 6):
        assert S2.terms[n - 1] == S1.terms[n - 1].scale(GaussRat(2 ** n))


def test_determinism():
    m = 2
    phi = DeformationParam.random(m, random.Random(12), support=6)
    S1 = solve_mc(phi, m, 4)
    S2 = solve_mc(phi, m, 4)
    assert all(a == b for a, b in zip(S1.terms, S2.terms))


def test_norm_growth():
    m = 1
    phi = DeformationParam.random(m, random.Random(4), support=4)
    S = solve_mc(phi, m, 6)
    g = norm_growth(S, samples=15, seed=2)
    assert len(g["sup_norms"]) == 6 and len(g["ratios"]) == 5
    # scaling the parameter by 2 scales order n sup-norms by 2^n
    S2 = solve_mc(phi.scale(GaussRat(2)), m, 6)
    g2 = norm_growth(S2, samples=15, seed=2)
    for n in range(6):
        assert abs(g2["sup_norms"][n] - 2 ** (n + 1) * g["sup_norms"][n]) < 1e-9 * max(
            1.0, g2["sup_norms"][n])
    zero = solve_mc(DeformationParam(m, {}), m, 3)
    gz = norm_growth(zero, samples=5, seed=0)
    assert gz["sup_norms"] == [0.0, 0.0, 0.0]
    with pytest.raises(ValueError):
        norm_growth(solve_mc(DeformationParam(m, {}), m, 1))


def test_param_json_roundtrip_and_errors():
    m = 2
    phi = DeformationParam.random(m, random.Random(9), support=7)
    assert DeformationParam.from_json(phi.to_json(), m).coeffs == phi.coeffs
    with pytest.raises(ValueError):
        DeformationParam.from_json([{"family": "nope", "k": 0, "re": "1"}], 1)
    with pytest.raises(ValueError):
        DeformationParam.from_json(
            [{"family": "HV", "k": 0, "i": 1, "j": 1, "beta": 5, "re": "1"}], 1)


def test_param_to_form_matches_chart():
    m = 1
    idx = eidx(m, "HV[k=1,V2,Om_1^2]")
    phi = DeformationParam(m, {idx: GaussRat(3)})
    form = param_to_form(phi)
    assert form.terms == {(holo(2, 2), (sigma_bar(1, 2),)):
                          SphereScalar.monomial(1, 0, 3, 1)}

import random

import pytest

from nilquat.cohomology import elem, space_E
from nilquat.exact_linalg import G0, GaussRat
from nilquat.twistor import (DMU, DMUBAR, DMUBAR_V, F1, F2, F3, INV, MU, MUBAR,
                             SS0, SS1, DecompositionError, FrameVector,
                             NoPrimitiveError, SphereScalar, VectorValuedForm,
                             antiholo, chart_restrict, chart_restrict_combo,
                             dbar_apply, dbar_primitive, decompose_as_dbar_of_E,
                             frame_bracket, frame_vector_bracket, gamma0_split,
                             holo, is_o2_section_coeff, is_smooth_on_sphere,
                             lie_derivative_form, nijenhuis_bracket,
                             scalar_ops, sigma_bar, verify_bracket_closure,
                             verify_central_expansion)


def mono(a, b, c=1, den=0):
    return SphereScalar.monomial(a, b, c, den)


def rand_scalar(rng, max_deg=3, max_den=3):
    num = {}
    for _ in range(rng.randint(1, 4)):
        num[(rng.randint(0, max_deg), rng.randint(0, max_deg))] = GaussRat(
            rng.randint(-4, 4), rng.randint(-2, 2))
    return SphereScalar(num, rng.randint(0, max_den))


def test_scalar_ops_examples():
    ops = scalar_ops()
    assert ops["d_dmubar"](F1) == mono(2, 0, -1, 2)
    assert ops["d_dmubar"](F2) == mono(0, 0, 1, 2)
    assert ops["normalize"](SphereScalar({(0, 0): 1, (1, 1): 1}, 2)) == INV
    assert ops["conjugate"](F1) == F2
    assert ops["add"](F1, F2) == (MU + MUBAR) * INV
    assert ops["mul"](MU, MUBAR) == mono(1, 1)


def test_scalar_ring_laws_random():
    rng = random.Random(2024)
    for _ in range(40):
        a, b, c = (rand_scalar(rng) for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert a * (b * c) == (a * b) * c
        assert a - a == SS0
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()
        # derivatives commute (independent variables)
        assert a.d_dmu().d_dmubar() == a.d_dmubar().d_dmu()


def test_reduction_is_canonical():
    # (1+t)^2 / (1+t)^3 reduces fully
    s = SphereScalar({(0, 0): 1, (1, 1): 2, (2, 2): 1}, 3)
    assert s == INV
    assert s.den == 1


def test_smoothness():
    assert is_smooth_on_sphere(F3)
    assert not is_smooth_on_sphere(MU * MU)
    assert is_smooth_on_sphere(mono(2, 0, -1, 2), as_form_coeff=True)
    assert not is_smooth_on_sphere(SS1, as_form_coeff=True)
    assert is_smooth_on_sphere(SS0, as_form_coeff=True)


def test_o2_section_class():
    assert is_o2_section_coeff(mono(2, 0, 1, 1))        # chart coefficients
    assert is_o2_section_coeff(F2 * INV)                # f2/(1+t)
    assert not is_o2_section_coeff(SS1)                 # constants are not
    assert not is_o2_section_coeff(MUBAR * INV)         # b too large for den


def test_gamma0_split_roundtrip():
    rng = random.Random(5)
    for _ in range(30):
        g0, g1, g2 = (rand_scalar(rng, 2, 2) for _ in range(3))
        # force smooth functions
        if not all(is_smooth_on_sphere(g) for g in (g0, g1, g2)):
            continue
        H = (g0 + g1 * MU + g2 * MU * MU).div_one_plus()
        s0, s1, s2 = gamma0_split(H)
        assert (s0 + s1 * MU + s2 * MU * MU).div_one_plus() == H
        assert all(is_smooth_on_sphere(s) for s in (s0, s1, s2))
    with pytest.raises(ValueError):
        gamma0_split(SS1)


def test_frame_bracket_table():
    m = 1
    fb = frame_bracket(antiholo(1, 1), holo(2, 1), m)
    want = FrameVector({holo(1, 2): MU * GaussRat(-2),
                        holo(2, 2): SphereScalar.constant(-2),
                        antiholo(1, 2): MUBAR * GaussRat(-2),
                        antiholo(2, 2): SphereScalar.constant(-2)})
    assert fb == want
    assert frame_bracket(antiholo(1, 1), holo(1, 1), m).is_zero()
    assert frame_bracket(antiholo(1, 2), holo(1, 1), m).is_zero()
    assert frame_bracket(holo(1, 1), holo(2, 2), m).is_zero()
    assert frame_bracket(antiholo(1, 1), antiholo(2, 1), m).is_zero()
    # connecting brackets with the fiber directions
    assert frame_bracket(antiholo(1, 1), DMU, m).part({"h"}).terms == {holo(2, 1): -INV}
    assert frame_bracket(antiholo(2, 1), DMU, m).part({"h"}).terms == {holo(1, 1): INV}
    assert frame_bracket(holo(1, 1), DMUBAR_V, m).part({"a"}).terms == {antiholo(2, 1): -INV}
    # antisymmetry
    a, b = antiholo(2, 1), holo(1, 1)
    assert frame_bracket(a, b, m) == -frame_bracket(b, a, m)


def test_frame_bracket_range_check():
    with pytest.raises(ValueError):
        frame_bracket(holo(1, 3), holo(2, 1), 1)


def test_lie_derivative_table():
    m = 1
    assert lie_derivative_form(holo(1, 1), sigma_bar(2, 1), m) == {DMUBAR: INV}
    assert lie_derivative_form(holo(2, 1), sigma_bar(1, 1), m) == {DMUBAR: -INV}
    assert lie_derivative_form(holo(1, 1), sigma_bar(1, 1), m) == {}
    # central-form exceptions
    assert lie_derivative_form(holo(1, 1), sigma_bar(1, 2), m) == {
        sigma_bar(2, 1): MUBAR * GaussRat(2)}
    assert lie_derivative_form(holo(2, 1), sigma_bar(1, 2), m) == {
        sigma_bar(1, 1): MUBAR * GaussRat(-2)}
    assert lie_derivative_form(holo(1, 1), sigma_bar(2, 2), m) == {
        sigma_bar(2, 1): SphereScalar.constant(2)}
    assert lie_derivative_form(holo(2, 1), sigma_bar(2, 2), m) == {
        sigma_bar(1, 1): SphereScalar.constant(-2)}
    # central vector index follows the generic rule
    assert lie_derivative_form(holo(1, 2), sigma_bar(2, 2), m) == {DMUBAR: INV}
    assert lie_derivative_form(holo(1, 2), sigma_bar(1, 2), m) == {}
    with pytest.raises(ValueError):
        lie_derivative_form(antiholo(1, 1), sigma_bar(1, 1), m)


def test_dbar_apply_twisted():
    # the chart frame carries a (1+|mu|^2) normalization, so constants are
    # not closed while chart coefficients mu^k/(1+t) are
    m = 1
    phi = VectorValuedForm(1)
    phi.add_term(holo(1, 2), (sigma_bar(1, 1),), F2)
    out = dbar_apply(phi)
    key = (holo(1, 2), (DMUBAR, sigma_bar(1, 1)))
    assert out.terms == {key: INV}
    for k in (0, 1, 2):
        chart = VectorValuedForm(1)
        chart.add_term(holo(1, 1), (sigma_bar(2, 1),), mono(k, 0, 1, 1))
        assert dbar_apply(chart).is_zero()
    assert dbar_apply(dbar_apply(phi)).is_zero()


def test_dbar_primitive_examples():
    assert dbar_primitive(mono(2, 0, -1, 2)) == F1
    assert dbar_primitive(mono(0, 0, 1, 2)) == F2
    assert dbar_primitive(SS0) == SS0
    p = dbar_primitive(mono(1, 0, -1, 2))
    assert p == F3 - SS1 and p.value_at_zero() == G0.re
    with pytest.raises(ValueError):
        dbar_primitive(SS1)  # not smooth as a form coefficient


def test_primitive_then_dbar_identity():
    rng = random.Random(31)
    for _ in range(25):
        f = rand_scalar(rng)
        g = f.d_dmubar()
        if not is_smooth_on_sphere(g, as_form_coeff=True):
            continue
        p = dbar_primitive(g)
        assert p.d_dmubar() == g
        assert is_smooth_on_sphere(p)


def test_chart_restrict():
    m = 1
    out = chart_restrict(elem(2, 0, (1, 1), ((2, 1),)), m)
    assert out.terms == {(holo(1, 1), (sigma_bar(2, 1),)): mono(2, 0, 1, 1)}
    out = chart_restrict(elem(0, 2, (2, 2), ((1, 2),)), m)
    assert out.terms == {(holo(2, 2), (sigma_bar(1, 2),)): mono(0, 0, 1, 1)}
    combo = {elem(2, 0, (1, 1), ((2, 1),)): GaussRat(2),
             elem(0, 2, (2, 2), ((1, 2),)): GaussRat(-1)}
    lin = chart_restrict_combo(combo, m)
    assert lin.terms[(holo(1, 1), (sigma_bar(2, 1),))] == mono(2, 0, 2, 1)
    with pytest.raises(ValueError):
        chart_restrict(elem(1, 0, (1, 1), ((2, 1),)), m)


def test_self_bracket_zero_case():
    # f1 d_1^{m+1} (x) sb_1^{m+1}: the eps factor kills both Lie terms
    m = 1
    phi = VectorValuedForm(1)
    phi.add_term(holo(1, m + 1), (sigma_bar(1, m + 1),), F1)
    assert nijenhuis_bracket(phi, phi, m).is_zero()


def test_bracket_decomposition_and_oracle():
    m = 1
    E = {e.name: e for e in space_E(m)}
    phi = chart_restrict_combo(E["HV[k=2,V1,Om_2^2]"].combo, m)
    B = nijenhuis_bracket(phi, phi, m)
    nxt, gauge = decompose_as_dbar_of_E(B, m)
    assert dbar_apply(nxt) == B
    want = VectorValuedForm(1)
    want.add_term(holo(1, 2), (sigma_bar(2, 2),), F1 * mono(2, 0, 2, 1))
    assert nxt == want


def test_mixed_lemma_support():
    # kernel family against a non-central mixed element stays supported on
    # the central-vector monomials
    m = 1
    E = {e.name: e for e in space_E(m)}
    ker = chart_restrict_combo(E["ker1_sym12[k=2,a=1,b=1]"].combo, m)
    hv = chart_restrict_combo(E["HV[k=1,V2,Om_2^1]"].combo, m)
    B = nijenhuis_bracket(ker, hv, m)
    assert not B.is_zero()
    nxt, _ = decompose_as_dbar_of_E(B, m)
    for (vec, forms) in nxt.terms:
        assert vec.alpha == m + 1


def test_zero_lemmas():
    m = 1
    E = {e.name: e for e in space_E(m)}
    s12 = chart_restrict_combo(E["ker1_sym12[k=1,a=1,b=1]"].combo, m)
    s21 = chart_restrict_combo(E["ker1_sym21[k=2,a=1,b=1]"].combo, m)
    central = chart_restrict_combo(E["HV[k=0,V2,Om_2^2]"].combo, m)
    assert nijenhuis_bracket(s12, s21, m).is_zero()
    assert nijenhuis_bracket(s12, central, m).is_zero()
    assert nijenhuis_bracket(s21, central, m).is_zero()


def test_sigma_sigma_leftover_is_loud():
    # a bracket value with a sigma^sigma component cannot be decomposed
    m = 1
    B = VectorValuedForm(2)
    B.add_term(holo(1, 1), (sigma_bar(1, 1), sigma_bar(2, 1)), F1)
    with pytest.raises(DecompositionError):
        decompose_as_dbar_of_E(B, m)


def test_central_expansion_selfcheck():
    for m in (1, 2, 3):
        assert verify_central_expansion(m)


def test_twisted_form_identities():
    from nilquat.twistor import verify_twisted_form_identities
    for m in (1, 2, 3):
        assert verify_twisted_form_identities(m)


def test_frame_vector_bracket_product_rule():
    # [d/dmubar, f1 d_1^1] includes the derivative of the coefficient
    m = 1
    F = FrameVector({DMUBAR_V: SS1})
    G = FrameVector({holo(1, 1): F1})
    out = frame_vector_bracket(F, G, m)
    # = (df1/dmubar) d_1^1 + f1 [dmubar, d_1^1]
    manual = FrameVector({holo(1, 1): F1.d_dmubar()})
    manual = manual + frame_bracket(DMUBAR_V, holo(1, 1), m).scale(F1)
    assert out == manual


def test_closure_small():
    rep = verify_bracket_closure(1, pairs=60, seed=4)
    assert rep["ok"] and rep["pairs_checked"] == 60

"""Coordinate realization of the chart symbols, for numeric cross-checks.

Frame symbols become combinations of the left-invariant coordinate fields
with sphere-scalar coefficients (plus d/dmu parts); form symbols become
combinations of the invariant coframe.  Brackets, pairings and Lie
derivatives are then computed from scratch with `coord_calc` -- never from
the rewrite tables -- and both sides are evaluated in floating point at
random (point, mu) samples.
"""
from __future__ import annotations

from . import coord_calc as cc
from .exact_linalg import GaussRat, rat
from .twistor import (DMU, DMUBAR, DMUBAR_V, FrameSymbol, FormSymbol,
                      FrameVector, SS0, SS1, SphereScalar,
                      form_symbol_invariant_coeffs, frame_bracket,
                      frame_symbol_invariant_coeffs, lie_derivative_form,
                      sigma_bar, antiholo, holo, stereographic_components)


class RVec:
    """sum_c s_c(mu) * F_c + s_mu d/dmu + s_mubar d/dmubar with F_c
    coordinate PolyFields."""

    def __init__(self, fields=None, dmu=SS0, dmubar=SS0):
        self.fields = list(fields or [])
        self.dmu = dmu
        self.dmubar = dmubar

    def __add__(self, other):
        return RVec(self.fields + other.fields, self.dmu + other.dmu,
                    self.dmubar + other.dmubar)

    def scale(self, s):
        return RVec([(c * s, F) for c, F in self.fields],
                    self.dmu * s, self.dmubar * s)

    def eval(self, point, mu, ncoords):
        out = [0j] * ncoords
        for c, F in self.fields:
            cv = c.eval(mu)
            if cv == 0:
                continue
            for d, p in F.comp.items():
                out[d] += cv * p.eval(point)
        return out, self.dmu.eval(mu), self.dmubar.eval(mu)


class RForm:
    """sum s_c(mu) * w_c + s_mu dmu + s_mubar dmubar with w_c coordinate
    1-forms."""

    def __init__(self, forms=None, dmu=SS0, dmubar=SS0):
        self.forms = list(forms or [])
        self.dmu = dmu
        self.dmubar = dmubar

    def __add__(self, other):
        return RForm(self.forms + other.forms, self.dmu + other.dmu,
                     self.dmubar + other.dmubar)

    def scale(self, s):
        return RForm([(c * s, w) for c, w in self.forms],
                     self.dmu * s, self.dmubar * s)


class MixedScalar:
    """sum s_c(mu) * P_c(x); the scalars produced by pairings."""

    def __init__(self, parts=None):
        self.parts = list(parts or [])

    def __add__(self, other):
        return MixedScalar(self.parts + other.parts)

    def scale_neg(self):
        return MixedScalar([(s * GaussRat(-1), p) for s, p in self.parts])

    def eval(self, point, mu):
        return sum(s.eval(mu) * p.eval(point) for s, p in self.parts)


def realize_frame_symbol(sym: FrameSymbol, m: int) -> RVec:
    if sym.kind == "dmu":
        return RVec(dmu=SS1)
    if sym.kind == "dmubar":
        return RVec(dmubar=SS1)
    inv = cc.left_invariant_fields(m)
    return RVec([(c, inv[lab]) for lab, c in
                 frame_symbol_invariant_coeffs(sym, m).items()])


def realize_frame_vector(F: FrameVector, m: int) -> RVec:
    out = RVec()
    for sym, c in F.terms.items():
        out = out + realize_frame_symbol(sym, m).scale(c)
    return out


def realize_form_symbol(fsym: FormSymbol, m: int) -> RForm:
    if fsym.kind == "dmubar":
        return RForm(dmubar=SS1)
    cof = cc.invariant_coframe(m)
    parts = []
    for lab, c in form_symbol_invariant_coeffs(fsym, m).items():
        parts.append((c, cof[lab]))
    return RForm(parts)


def realize_form_dict(d, m: int) -> RForm:
    out = RForm()
    for fsym, c in d.items():
        out = out + realize_form_symbol(fsym, m).scale(c)
    return out


def r_bracket(V: RVec, W: RVec, m: int) -> RVec:
    out = RVec()
    for c1, F1 in V.fields:
        for c2, F2 in W.fields:
            br = cc.field_bracket(F1, F2)
            if not br.is_zero():
                out.fields.append((c1 * c2, br))
    # fiber components differentiate the other side's mu-coefficients
    if not V.dmu.is_zero() or not V.dmubar.is_zero():
        for c2, F2 in W.fields:
            d = V.dmu * c2.d_dmu() + V.dmubar * c2.d_dmubar()
            if not d.is_zero():
                out.fields.append((d, F2))
        out.dmu = out.dmu + V.dmu * W.dmu.d_dmu() + V.dmubar * W.dmu.d_dmubar()
        out.dmubar = (out.dmubar + V.dmu * W.dmubar.d_dmu()
                      + V.dmubar * W.dmubar.d_dmubar())
    if not W.dmu.is_zero() or not W.dmubar.is_zero():
        for c1, F1 in V.fields:
            d = W.dmu * c1.d_dmu() + W.dmubar * c1.d_dmubar()
            if not d.is_zero():
                out.fields.append((d * GaussRat(-1), F1))
        out.dmu = out.dmu - (W.dmu * V.dmu.d_dmu() + W.dmubar * V.dmu.d_dmubar())
        out.dmubar = (out.dmubar
                      - (W.dmu * V.dmubar.d_dmu() + W.dmubar * V.dmubar.d_dmubar()))
    return out


def r_pair(w: RForm, V: RVec) -> MixedScalar:
    out = MixedScalar()
    for s, form in w.forms:
        for c, F in V.fields:
            p = form.eval_on([F])
            if not p.is_zero():
                out.parts.append((s * c, p))
    if not w.dmu.is_zero() and not V.dmu.is_zero():
        out.parts.append((w.dmu * V.dmu, cc.CoordPoly.constant(1)))
    if not w.dmubar.is_zero() and not V.dmubar.is_zero():
        out.parts.append((w.dmubar * V.dmubar, cc.CoordPoly.constant(1)))
    return out


def v_apply_scalar(V: RVec, s: MixedScalar) -> MixedScalar:
    out = MixedScalar()
    for c, F in V.fields:
        for sc, p in s.parts:
            dp = F.apply_to(p)
            if not dp.is_zero():
                out.parts.append((c * sc, dp))
    if not V.dmu.is_zero() or not V.dmubar.is_zero():
        for sc, p in s.parts:
            d = V.dmu * sc.d_dmu() + V.dmubar * sc.d_dmubar()
            if not d.is_zero():
                out.parts.append((d, p))
    return out


def lie_derivative_value(V: RVec, w: RForm, U: RVec, m: int) -> MixedScalar:
    """(L_V w)(U) = V(w(U)) - w([V, U]), all from coordinates."""
    return v_apply_scalar(V, r_pair(w, U)) + r_pair(w, r_bracket(V, U, m)).scale_neg()


def _all_frame_symbols(m):
    syms = []
    for kind in ("h", "a"):
        for i in (1, 2):
            for alpha in range(1, m + 2):
                syms.append(FrameSymbol(kind, i, alpha))
    return syms + [DMU, DMUBAR_V]


def _all_form_symbols(m):
    out = [DMUBAR]
    for j in (1, 2):
        for beta in range(1, m + 2):
            out.append(sigma_bar(j, beta))
    return out


def _sample(rng, m):
    point = [rng.uniform(-1.5, 1.5) for _ in range(cc.n_coords(m))]
    mu = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
    return point, mu


def check_frame_brackets(m: int, trials: int, rng) -> float:
    """Max |table - direct| over random samples, all symbol pairs."""
    syms = _all_frame_symbols(m)
    realized = {s: realize_frame_symbol(s, m) for s in syms}
    err = 0.0
    cases = []
    for i, s1 in enumerate(syms):
        for s2 in syms[i:]:
            table = realize_frame_vector(frame_bracket(s1, s2, m), m)
            direct = r_bracket(realized[s1], realized[s2], m)
            cases.append((table, direct))
    for _ in range(trials):
        point, mu = _sample(rng, m)
        for table, direct in cases:
            tv, tmu, tmb = table.eval(point, mu, cc.n_coords(m))
            dv, dmu_, dmb = direct.eval(point, mu, cc.n_coords(m))
            err = max(err, max(abs(a - b) for a, b in zip(tv, dv)),
                      abs(tmu - dmu_), abs(tmb - dmb))
    return err


def check_lie_derivatives(m: int, trials: int, rng) -> float:
    """Max |table - Cartan| over random samples, holomorphic frame against
    every form symbol, paired with every frame symbol."""
    vsyms = [FrameSymbol("h", i, alpha) for i in (1, 2) for alpha in range(1, m + 2)]
    fsyms = _all_form_symbols(m)
    usyms = _all_frame_symbols(m)
    realized_u = {u: realize_frame_symbol(u, m) for u in usyms}
    err = 0.0
    cases = []
    for v in vsyms:
        rv = realize_frame_symbol(v, m)
        for f in fsyms:
            table = realize_form_dict(lie_derivative_form(v, f, m), m)
            rw = realize_form_symbol(f, m)
            for u in usyms:
                direct = lie_derivative_value(rv, rw, realized_u[u], m)
                tabled = r_pair(table, realized_u[u])
                cases.append((tabled, direct))
    for _ in range(trials):
        point, mu = _sample(rng, m)
        for tabled, direct in cases:
            err = max(err, abs(tabled.eval(point, mu) - direct.eval(point, mu)))
    return err


def check_form_realizations(m: int, trials: int, rng) -> float:
    """Duality of the realized frames and the antiholomorphy residual of
    the realized sigma forms: d(sigma) must vanish on (0,1) x (0,1)."""
    fsyms = _all_form_symbols(m)
    vsyms = _all_frame_symbols(m)
    dual_value = {}
    for f in fsyms:
        for v in vsyms:
            if f.kind == "dmubar":
                want = 1.0 if v.kind == "dmubar" else 0.0
            else:
                want = 1.0 if (v.kind == "a" and (v.i, v.alpha) == (f.j, f.beta)) else 0.0
            dual_value[(f, v)] = want
    realized_f = {f: realize_form_symbol(f, m) for f in fsyms}
    realized_v = {v: realize_frame_symbol(v, m) for v in vsyms}
    anti = [v for v in vsyms if v.kind in ("a",)] + [DMUBAR_V]
    err = 0.0
    for _ in range(trials):
        point, mu = _sample(rng, m)
        for (f, v), want in dual_value.items():
            got = r_pair(realized_f[f], realized_v[v]).eval(point, mu)
            err = max(err, abs(got - want))
        # d sigma (0,2)-residual: d w (A,B) = A(w(B)) - B(w(A)) - w([A,B])
        for f in fsyms:
            if f.kind != "sb":
                continue
            w = realized_f[f]
            for ai in range(len(anti)):
                for bi in range(ai + 1, len(anti)):
                    A, B = realized_v[anti[ai]], realized_v[anti[bi]]
                    val = (v_apply_scalar(A, r_pair(w, B)).eval(point, mu)
                           - v_apply_scalar(B, r_pair(w, A)).eval(point, mu)
                           - r_pair(w, r_bracket(A, B, m)).eval(point, mu))
                    err = max(err, abs(val))
    return err


def check_w_identities(m: int, trials: int, rng) -> float:
    """The inverted frame relations against the projection definition: the
    central W_0 and the lifted W~_k^a, realized from the triple action and
    the stereographic point, match their chart-frame expressions."""
    from .hypercomplex import standard_triple
    from .twistor import w_lift_frame_vector
    T = standard_triple(m)
    inv = cc.left_invariant_fields(m)
    labels = list(inv)
    a1, a2, a3 = stereographic_components()
    mih = GaussRat(0, rat(-1, 2))
    half = GaussRat(rat(1, 2))

    def projection_of(label):
        # (v - i I_a v)/2 realized, v a frame label
        base = cc.PolyField(m, dict(inv[label].comp))
        out = RVec([(SphereScalar.constant(half), base)])
        col = labels.index(label)
        for (s, J) in ((a1, T.I1), (a2, T.I2), (a3, T.I3)):
            for r, lab2 in enumerate(labels):
                c = J.mat[r][col]
                if c:
                    out.fields.append((s * (mih * c), inv[lab2]))
        return out

    cases = []
    # central: W_0 = (Z - i I_a Z)/2 vs (mu d_1^{m+1} + d_2^{m+1})/(1+t)
    from .twistor import F1 as _F1, INV as _INV
    chart = RVec()
    for c, sym in ((_F1, holo(1, m + 1)), (_INV, holo(2, m + 1))):
        chart = chart + realize_frame_symbol(sym, m).scale(c)
    cases.append((projection_of("Z"), chart))
    # lifted: W~_k^a = (I_k X_{2a-1} - i I_a I_k X_{2a-1})/2
    for a in range(1, m + 1):
        lab = "X%d" % (2 * a - 1)
        col = labels.index(lab)
        for k in range(4):
            if k == 0:
                proj = projection_of(lab)
            else:
                J = (T.I1, T.I2, T.I3)[k - 1]
                tgt = [r for r in range(len(labels)) if J.mat[r][col]]
                (r,) = tgt
                proj = projection_of(labels[r]).scale(
                    SphereScalar.constant(J.mat[r][col]))
            cases.append((proj, realize_frame_vector(w_lift_frame_vector(k, a, m), m)))
    err = 0.0
    n = cc.n_coords(m)
    for _ in range(trials):
        point, mu = _sample(rng, m)
        for lhs, rhs in cases:
            lv, lmu, lmb = lhs.eval(point, mu, n)
            rv, rmu, rmb = rhs.eval(point, mu, n)
            err = max(err, max(abs(x - y) for x, y in zip(lv, rv)),
                      abs(lmu - rmu), abs(lmb - rmb))
    return err

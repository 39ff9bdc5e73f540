"""Polynomial-coefficient calculus in the global coordinates of the group.

Coordinates are (x_1..x_{2m}, y_1..y_{2m}, z, e_1, e_2, e_3).  The module
provides the twisted product, the left-invariant frame, coordinate Lie
brackets, the exterior derivative, the action of the quaternionic triple
on invariant 1-forms, the quadratic potentials f_1, f_2, f_3 whose
differentials realize I_k dz, and a floating-point evaluation oracle.
"""
from __future__ import annotations

from .exact_linalg import G0, G1, GaussRat
from .hypercomplex import HyperTriple


def var_names(m: int):
    names = ["x%d" % j for j in range(1, 2 * m + 1)]
    names += ["y%d" % j for j in range(1, 2 * m + 1)]
    names += ["z", "e1", "e2", "e3"]
    return names


def n_coords(m: int) -> int:
    return 4 * m + 4


def x_idx(m, j):
    return j - 1


def y_idx(m, j):
    return 2 * m + j - 1


def z_idx(m):
    return 4 * m


def e_idx(m, i):
    return 4 * m + i


class CoordPoly:
    """Sparse multivariate polynomial over GaussRat.

    Monomial keys are tuples of (var_index, exponent) pairs sorted by
    variable; zero coefficients are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, v in terms.items():
                v = v if isinstance(v, GaussRat) else GaussRat(v)
                if v:
                    self.terms[k] = v

    @staticmethod
    def constant(c):
        c = c if isinstance(c, GaussRat) else GaussRat(c)
        return CoordPoly({(): c} if c else {})

    @staticmethod
    def variable(idx, coeff=1):
        return CoordPoly({((idx, 1),): GaussRat(coeff)})

    def __add__(self, other):
        other = _as_poly(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            nv = out.get(k, G0) + v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        p = CoordPoly()
        p.terms = out
        return p

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __neg__(self):
        p = CoordPoly()
        p.terms = {k: -v for k, v in self.terms.items()}
        return p

    def __mul__(self, other):
        other = _as_poly(other)
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = _mono_mul(k1, k2)
                nv = out.get(k, G0) + v1 * v2
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        p = CoordPoly()
        p.terms = out
        return p

    __rmul__ = __mul__

    def scale(self, s):
        s = s if isinstance(s, GaussRat) else GaussRat(s)
        p = CoordPoly()
        if s:
            p.terms = {k: v * s for k, v in self.terms.items()}
        return p

    def diff(self, var):
        out = {}
        for k, v in self.terms.items():
            for pos, (vi, e) in enumerate(k):
                if vi == var:
                    nk = list(k)
                    if e == 1:
                        nk.pop(pos)
                    else:
                        nk[pos] = (vi, e - 1)
                    nk = tuple(nk)
                    nv = out.get(nk, G0) + v * e
                    if nv:
                        out[nk] = nv
                    else:
                        out.pop(nk, None)
                    break
        p = CoordPoly()
        p.terms = out
        return p

    def subst_zero(self, vars_set):
        """Set the given variables to zero (drop monomials containing them)."""
        p = CoordPoly()
        p.terms = {k: v for k, v in self.terms.items()
                   if not any(vi in vars_set for vi, _ in k)}
        return p

    def eval(self, point):
        total = 0j
        for k, v in self.terms.items():
            val = complex(v)
            for vi, e in k:
                val *= point[vi] ** e
            total += val
        return total

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return self.terms == _as_poly(other).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for k in sorted(self.terms):
            mono = "*".join("v%d^%d" % (vi, e) for vi, e in k) or "1"
            bits.append("%s*%s" % (self.terms[k], mono))
        return " + ".join(bits)


def _as_poly(x):
    if isinstance(x, CoordPoly):
        return x
    return CoordPoly.constant(x)


def _mono_mul(k1, k2):
    if not k1:
        return k2
    if not k2:
        return k1
    d = dict(k1)
    for vi, e in k2:
        d[vi] = d.get(vi, 0) + e
    return tuple(sorted(d.items()))


def group_mul(m: int, p, q):
    """The twisted product; entries may be exact scalars or CoordPoly.

    Points carry 4m+1 coordinates; an appended 3-vector (the abelian
    factor) multiplies additively.
    """
    n_h = 4 * m + 1
    if len(p) != len(q) or len(p) not in (n_h, n_h + 3):
        raise ValueError("points must both have 4m+1 or 4m+4 coordinates")
    out = [a + b for a, b in zip(p, q)]
    twist = None
    for j in range(2 * m):
        t = p[j] * q[2 * m + j] - p[2 * m + j] * q[j]
        twist = t if twist is None else twist + t
    out[4 * m] = out[4 * m] - GaussRat(2) * twist
    return tuple(out)


def identity_point(m: int, with_abelian=False):
    n = 4 * m + 4 if with_abelian else 4 * m + 1
    return tuple(G0 for _ in range(n))


class PolyField:
    """Vector field with CoordPoly coefficient per coordinate direction."""

    __slots__ = ("m", "comp")

    def __init__(self, m, comp=None):
        self.m = m
        self.comp = {}
        if comp:
            for d, p in comp.items():
                p = _as_poly(p)
                if not p.is_zero():
                    self.comp[d] = p

    def __add__(self, other):
        out = dict(self.comp)
        for d, p in other.comp.items():
            np = out.get(d, CoordPoly()) + p
            if np.is_zero():
                out.pop(d, None)
            else:
                out[d] = np
        return PolyField(self.m, out)

    def __sub__(self, other):
        return self + other.scale(GaussRat(-1))

    def scale(self, s):
        return PolyField(self.m, {d: p.scale(s) for d, p in self.comp.items()})

    def scale_poly(self, q):
        return PolyField(self.m, {d: p * q for d, p in self.comp.items()})

    def apply_to(self, f: CoordPoly) -> CoordPoly:
        out = CoordPoly()
        for d, p in self.comp.items():
            out = out + p * f.diff(d)
        return out

    def is_zero(self):
        return not self.comp

    def __eq__(self, other):
        return self.m == other.m and self.comp == other.comp

    def __repr__(self):
        return "PolyField(%s)" % {d: str(p) for d, p in self.comp.items()}


def left_invariant_fields(m: int):
    """The frame {X_j, Y_j, Z, E_i} keyed by label, in the algebra order."""
    out = {}
    out["Z"] = PolyField(m, {z_idx(m): G1})
    for i in (1, 2, 3):
        out["E%d" % i] = PolyField(m, {e_idx(m, i): G1})
    for j in range(1, 2 * m + 1):
        out["X%d" % j] = PolyField(m, {
            x_idx(m, j): G1,
            z_idx(m): CoordPoly.variable(y_idx(m, j), 2),
        })
    for j in range(1, 2 * m + 1):
        out["Y%d" % j] = PolyField(m, {
            y_idx(m, j): G1,
            z_idx(m): CoordPoly.variable(x_idx(m, j), -2),
        })
    # reorder to (Z, E1..E3, X.., Y..)
    order = ["Z", "E1", "E2", "E3"]
    order += ["X%d" % j for j in range(1, 2 * m + 1)]
    order += ["Y%d" % j for j in range(1, 2 * m + 1)]
    return {k: out[k] for k in order}


def field_bracket(V: PolyField, W: PolyField) -> PolyField:
    if V.m != W.m:
        raise ValueError("fields live on different groups")
    out = {}
    for d, w in W.comp.items():
        p = V.apply_to(w)
        if not p.is_zero():
            out[d] = out.get(d, CoordPoly()) + p
    for d, v in V.comp.items():
        p = W.apply_to(v)
        if not p.is_zero():
            out[d] = out.get(d, CoordPoly()) - p
    return PolyField(V.m, out)


class PolyForm:
    """Degree-k form; CoordPoly coefficient per sorted k-tuple of
    coordinate differentials."""

    __slots__ = ("m", "degree", "comp")

    def __init__(self, m, degree, comp=None):
        self.m = m
        self.degree = degree
        self.comp = {}
        if comp:
            for key, p in comp.items():
                p = _as_poly(p)
                if p.is_zero():
                    continue
                if len(key) != degree:
                    raise ValueError("key length does not match degree")
                skey, sign = _sort_key(key)
                if skey is None:
                    continue
                q = self.comp.get(skey, CoordPoly()) + (p if sign > 0 else -p)
                if q.is_zero():
                    self.comp.pop(skey, None)
                else:
                    self.comp[skey] = q

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        out = dict(self.comp)
        for k, p in other.comp.items():
            q = out.get(k, CoordPoly()) + p
            if q.is_zero():
                out.pop(k, None)
            else:
                out[k] = q
        f = PolyForm(self.m, self.degree)
        f.comp = out
        return f

    def __sub__(self, other):
        return self + other.scale(GaussRat(-1))

    def scale(self, s):
        f = PolyForm(self.m, self.degree)
        f.comp = {k: p.scale(s) for k, p in self.comp.items()}
        return f

    def scale_poly(self, q):
        f = PolyForm(self.m, self.degree)
        f.comp = {k: p * q for k, p in self.comp.items()}
        return f

    def is_zero(self):
        return not self.comp

    def __eq__(self, other):
        return (self.degree == other.degree and self.m == other.m
                and self.comp == other.comp)

    def eval_on(self, fields):
        """Pair a k-form with k PolyFields (full antisymmetrization)."""
        if len(fields) != self.degree:
            raise ValueError("need exactly degree fields")
        out = CoordPoly()
        if self.degree == 1:
            (V,) = fields
            for (d,), p in self.comp.items():
                c = V.comp.get(d)
                if c is not None:
                    out = out + p * c
            return out
        if self.degree == 2:
            V, W = fields
            for (d1, d2), p in self.comp.items():
                v1, w2 = V.comp.get(d1), W.comp.get(d2)
                if v1 is not None and w2 is not None:
                    out = out + p * v1 * w2
                v2, w1 = V.comp.get(d2), W.comp.get(d1)
                if v2 is not None and w1 is not None:
                    out = out - p * v2 * w1
            return out
        raise NotImplementedError("degree > 2 pairing not needed")

    def __repr__(self):
        return "PolyForm(deg%d, %s)" % (self.degree, {k: str(p) for k, p in self.comp.items()})


def _sort_key(key):
    key = list(key)
    sign = 1
    for i in range(len(key)):
        for j in range(len(key) - 1 - i):
            if key[j] > key[j + 1]:
                key[j], key[j + 1] = key[j + 1], key[j]
                sign = -sign
            elif key[j] == key[j + 1]:
                return None, 0
    return tuple(key), sign


def one_form(m, d, coeff=1):
    return PolyForm(m, 1, {(d,): coeff})


def ext_d(omega: PolyForm) -> PolyForm:
    """Exterior derivative: d(f dx_S) summed over all variables."""
    m = omega.m
    nvars = n_coords(m)
    comp = {}
    for key, p in omega.comp.items():
        for var in _vars_of(p):
            dp = p.diff(var)
            if dp.is_zero():
                continue
            comp[(var,) + key] = comp.get((var,) + key, CoordPoly()) + dp
    return PolyForm(m, omega.degree + 1, comp)


def d_of_function(m: int, f: CoordPoly) -> PolyForm:
    comp = {}
    for var in range(n_coords(m)):
        df = f.diff(var)
        if not df.is_zero():
            comp[(var,)] = df
    return PolyForm(m, 1, comp)


def _vars_of(p: CoordPoly):
    out = set()
    for k in p.terms:
        for vi, _ in k:
            out.add(vi)
    return out


def theta(m: int) -> PolyForm:
    """dz - 2 sum_i (y_i dx_i - x_i dy_i), the invariant dual of Z."""
    comp = {(z_idx(m),): G1}
    for j in range(1, 2 * m + 1):
        comp[(x_idx(m, j),)] = CoordPoly.variable(y_idx(m, j), -2)
        comp[(y_idx(m, j),)] = CoordPoly.variable(x_idx(m, j), 2)
    return PolyForm(m, 1, comp)


def invariant_coframe(m: int):
    """Duals of the invariant frame, keyed by the frame labels."""
    out = {"Z": theta(m)}
    for i in (1, 2, 3):
        out["E%d" % i] = one_form(m, e_idx(m, i))
    for j in range(1, 2 * m + 1):
        out["X%d" % j] = one_form(m, x_idx(m, j))
    for j in range(1, 2 * m + 1):
        out["Y%d" % j] = one_form(m, y_idx(m, j))
    return out


def _coframe_order(m):
    order = ["Z", "E1", "E2", "E3"]
    order += ["X%d" % j for j in range(1, 2 * m + 1)]
    order += ["Y%d" % j for j in range(1, 2 * m + 1)]
    return order


def to_coframe_coords(m: int, omega: PolyForm):
    """Decompose a 1-form over the invariant coframe.

    dz is eliminated through theta, so the result is a dict label ->
    CoordPoly with omega = sum coeff * coframe[label].
    """
    if omega.degree != 1:
        raise ValueError("only 1-forms decompose over the coframe")
    coeffs = {}
    rest = {k: p for k, p in omega.comp.items()}
    zc = rest.pop((z_idx(m),), None)
    out = {}
    if zc is not None:
        out["Z"] = zc
        # subtract zc * (theta - dz) i.e. add back the x/y parts
        for j in range(1, 2 * m + 1):
            kx, ky = (x_idx(m, j),), (y_idx(m, j),)
            rest[kx] = rest.get(kx, CoordPoly()) + zc * CoordPoly.variable(y_idx(m, j), 2)
            rest[ky] = rest.get(ky, CoordPoly()) - zc * CoordPoly.variable(x_idx(m, j), 2)
    for j in range(1, 2 * m + 1):
        p = rest.pop((x_idx(m, j),), None)
        if p is not None and not p.is_zero():
            out["X%d" % j] = p
        p = rest.pop((y_idx(m, j),), None)
        if p is not None and not p.is_zero():
            out["Y%d" % j] = p
    for i in (1, 2, 3):
        p = rest.pop((e_idx(m, i),), None)
        if p is not None and not p.is_zero():
            out["E%d" % i] = p
    return {k: v for k, v in out.items() if not v.is_zero()}


def from_coframe_coords(m: int, coeffs) -> PolyForm:
    cof = invariant_coframe(m)
    out = PolyForm(m, 1)
    for lab, c in coeffs.items():
        out = out + cof[lab].scale_poly(_as_poly(c))
    return out


def endo_on_oneform(endo, m: int, omega: PolyForm) -> PolyForm:
    """Dual action (I w)(v) = -w(I v) of an algebra endomorphism on an
    invariant 1-form, extended to arbitrary polynomial coefficients."""
    order = _coframe_order(m)
    coeffs = to_coframe_coords(m, omega)
    vec = [coeffs.get(lab, CoordPoly()) for lab in order]
    n = len(order)
    out = {}
    # (I w)_b = -sum_a w_a M[a][b]
    for b in range(n):
        acc = CoordPoly()
        for a in range(n):
            e = endo.mat[a][b]
            if e and not vec[a].is_zero():
                acc = acc - vec[a].scale(e)
        if not acc.is_zero():
            out[order[b]] = acc
    return from_coframe_coords(m, out)


def triple_on_oneforms(T: HyperTriple, m: int, omega: PolyForm):
    """(I1 w, I2 w, I3 w) via the dual action on the invariant coframe."""
    return tuple(endo_on_oneform(J, m, omega) for J in T)


def quaternionic_potentials(m: int):
    """The functions f_1, f_2, f_3 with I_k dz = df_k."""
    f1 = CoordPoly.variable(e_idx(m, 1))
    f2 = CoordPoly.variable(e_idx(m, 2))
    f3 = CoordPoly.variable(e_idx(m, 3))
    two = GaussRat(2)
    for a in range(1, m + 1):
        xo, xe = x_idx(m, 2 * a - 1), x_idx(m, 2 * a)
        yo, ye = y_idx(m, 2 * a - 1), y_idx(m, 2 * a)
        vy_o, vy_e = CoordPoly.variable(yo), CoordPoly.variable(ye)
        vx_o, vx_e = CoordPoly.variable(xo), CoordPoly.variable(xe)
        f1 = f1 + (vy_o * vx_e - vx_o * vy_e).scale(two)
        f2 = f2 + vy_o * vy_o + vx_o * vx_o - vy_e * vy_e - vx_e * vx_e
        f3 = f3 + (vy_o * vy_e + vx_o * vx_e).scale(two)
    return f1, f2, f3


def verify_quaternionic_coordinates(m: int):
    """Check I_k dz = df_k exactly for k = 1, 2, 3; returns {k: bool}."""
    from .hypercomplex import standard_triple
    T = standard_triple(m)
    dz = one_form(m, z_idx(m))
    images = triple_on_oneforms(T, m, dz)
    pots = quaternionic_potentials(m)
    return {k + 1: images[k] == d_of_function(m, pots[k]) for k in range(3)}


def numeric_eval(obj, point):
    """Floating evaluation of all coefficients of a PolyField or PolyForm."""
    if isinstance(obj, PolyField):
        return {d: p.eval(point) for d, p in obj.comp.items()}
    if isinstance(obj, PolyForm):
        return {k: p.eval(point) for k, p in obj.comp.items()}
    if isinstance(obj, CoordPoly):
        return obj.eval(point)
    raise TypeError("numeric_eval expects PolyField, PolyForm or CoordPoly")

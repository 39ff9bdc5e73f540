"""Exact Gaussian-rational scalars and exact linear algebra.

Everything downstream (Lie algebra kernels, coboundary matrices, the
primitive solver on the sphere) runs on these two primitives: `GaussRat`,
a complex number with rational real and imaginary parts, and
`ExactMatrix`, a sparse matrix over that field with rank / kernel / solve
done by exact Gaussian elimination.  No floating point ever enters here.

gmpy2.mpq backs the rational arithmetic; it is exact and much faster than
fractions.Fraction for the small numerators these computations produce.
"""
from __future__ import annotations

from gmpy2 import mpq


def rat(x, y=None):
    """Coerce to an exact rational (accepts int, str 'p/q', mpq, Fraction)."""
    if y is None:
        return mpq(x)
    return mpq(x, y)


class GaussRat:
    """Exact complex scalar a + b*i with rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = mpq(re)
        self.im = mpq(im)

    # -- constructors ---------------------------------------------------
    @staticmethod
    def from_str(re_s, im_s="0"):
        return GaussRat(mpq(re_s), mpq(im_s))

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return GaussRat(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if not self.im and not other.im:
            return GaussRat(self.re * other.re, 0)
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if not other.im:
            if not other.re:
                raise ZeroDivisionError("division by zero GaussRat")
            return GaussRat(self.re / other.re, self.im / other.re)
        n = other.re * other.re + other.im * other.im
        return GaussRat(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def conjugate(self):
        return GaussRat(self.re, -self.im)

    def __eq__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return "%s*i" % self.im
        return "(%s%s%s*i)" % (self.re, "+" if self.im > 0 else "-", abs(self.im))

    def to_json(self):
        return {"re": str(self.re), "im": str(self.im)}


def _coerce(x):
    if isinstance(x, GaussRat):
        return x
    return GaussRat(x)


def _coerce_or_none(x):
    if isinstance(x, GaussRat):
        return x
    try:
        return GaussRat(x)
    except TypeError:
        return None


G0 = GaussRat(0)
G1 = GaussRat(1)
GI = GaussRat(0, 1)


class ExactMatrix:
    """Sparse matrix over GaussRat with labelled rows and columns.

    Rows are dicts column-index -> GaussRat (zero entries absent).  Labels
    are opaque tokens naming basis elements; they default to the indices.
    """

    def __init__(self, rows, cols, entries=None, row_labels=None, col_labels=None):
        self.rows = rows
        self.cols = cols
        self.row_labels = list(row_labels) if row_labels is not None else list(range(rows))
        self.col_labels = list(col_labels) if col_labels is not None else list(range(cols))
        if len(self.row_labels) != rows or len(self.col_labels) != cols:
            raise ValueError("label list lengths must equal rows/cols")
        self.data = [dict() for _ in range(rows)]
        if entries:
            for (r, c), v in entries.items():
                self.set(r, c, v)

    def set(self, r, c, v):
        v = _coerce(v)
        if v:
            self.data[r][c] = v
        else:
            self.data[r].pop(c, None)

    def get(self, r, c):
        return self.data[r].get(c, G0)

    def copy_data(self):
        return [dict(row) for row in self.data]

    def column(self, c):
        return [self.get(r, c) for r in range(self.rows)]

    def __repr__(self):
        return "ExactMatrix(%dx%d, %d nonzero)" % (
            self.rows, self.cols, sum(len(r) for r in self.data))


def _eliminate(data, cols, augment=None):
    """In-place row echelon reduction.

    Pivot rule: scan columns left to right, take the topmost unprocessed
    row with a nonzero entry.  Deterministic, which keeps kernel bases
    stable for golden tests.  Returns the list of (pivot_row, pivot_col).
    """
    pivots = []
    piv_r = 0
    nrows = len(data)
    for c in range(cols):
        sel = None
        for r in range(piv_r, nrows):
            if c in data[r]:
                sel = r
                break
        if sel is None:
            continue
        if sel != piv_r:
            data[piv_r], data[sel] = data[sel], data[piv_r]
            if augment is not None:
                augment[piv_r], augment[sel] = augment[sel], augment[piv_r]
        prow = data[piv_r]
        pv = prow[c]
        for r in range(piv_r + 1, nrows):
            row = data[r]
            f = row.get(c)
            if f is None:
                continue
            f = f / pv
            for cc, vv in prow.items():
                nv = row.get(cc, G0) - f * vv
                if nv:
                    row[cc] = nv
                else:
                    row.pop(cc, None)
            if augment is not None:
                augment[r] = augment[r] - f * augment[piv_r]
        pivots.append((piv_r, c))
        piv_r += 1
    return pivots


def rank(M: ExactMatrix) -> int:
    data = M.copy_data()
    return len(_eliminate(data, M.cols))


def kernel_basis(M: ExactMatrix):
    """Basis of the null space; each vector is a list of GaussRat of length cols.

    Back-substitution through the echelon form gives the canonical basis
    with one free column set to 1 per vector.
    """
    data = M.copy_data()
    pivots = _eliminate(data, M.cols)
    pivot_cols = [c for (_, c) in pivots]
    pivot_of_col = {c: r for (r, c) in pivots}
    free_cols = [c for c in range(M.cols) if c not in pivot_of_col]
    basis = []
    for fc in free_cols:
        v = [G0] * M.cols
        v[fc] = G1
        # solve pivot rows bottom-up
        for r, c in reversed(pivots):
            row = data[r]
            s = G0
            for cc, vv in row.items():
                if cc != c and v[cc]:
                    s = s + vv * v[cc]
            v[c] = -s / row[c]
        basis.append(v)
    return basis


NO_SOLUTION = object()


def solve(M: ExactMatrix, b):
    """Return x with Mx = b exactly, or NO_SOLUTION.

    Free variables are set to zero, so the particular solution returned is
    deterministic.  Raises on dimension mismatch.
    """
    if len(b) != M.rows:
        raise ValueError("right-hand side length %d != rows %d" % (len(b), M.rows))
    data = M.copy_data()
    aug = [_coerce(x) for x in b]
    pivots = _eliminate(data, M.cols, augment=aug)
    used_rows = {r for (r, _) in pivots}
    for r in range(M.rows):
        if r not in used_rows and aug[r]:
            return NO_SOLUTION
    x = [G0] * M.cols
    for r, c in reversed(pivots):
        row = data[r]
        s = aug[r]
        for cc, vv in row.items():
            if cc != c and x[cc]:
                s = s - vv * x[cc]
        x[c] = s / row[c]
    return x


def from_columns(columns, rows, row_labels=None, col_labels=None):
    """Assemble an ExactMatrix whose c-th column is columns[c] (sparse dicts)."""
    M = ExactMatrix(rows, len(columns), row_labels=row_labels, col_labels=col_labels)
    for c, col in enumerate(columns):
        for r, v in col.items():
            M.set(r, c, v)
    return M


def row_space_rank(vectors, cols):
    """Rank of the span of the given vectors (each a sparse dict or list)."""
    data = []
    for v in vectors:
        if isinstance(v, dict):
            data.append({c: _coerce(x) for c, x in v.items() if _coerce(x)})
        else:
            data.append({c: _coerce(x) for c, x in enumerate(v) if _coerce(x)})
    return len(_eliminate(data, cols))

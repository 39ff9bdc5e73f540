"""Finite-dimensional Lie algebras by exact structure constants.

The central object is the (4m+4)-dimensional two-step nilpotent algebra
built from the Heisenberg algebra of dimension 4m+1 plus a 3-dimensional
abelian summand, with ordered basis (Z, E1, E2, E3, X1..X_{2m}, Y1..Y_{2m})
and only nonzero brackets [Y_j, X_j] = 4 Z.  All predicates (Jacobi,
center, derived ideal, derivation counts) reduce to exact kernels.
"""
from __future__ import annotations

from .exact_linalg import ExactMatrix, G0, G1, GaussRat, kernel_basis, rat, row_space_rank


class AlgVector:
    """Element of a LieAlgebra's underlying vector space."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(c if isinstance(c, GaussRat) else GaussRat(c) for c in coeffs)

    def __add__(self, other):
        return AlgVector([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return AlgVector([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return AlgVector([-a for a in self.coeffs])

    def scale(self, s):
        return AlgVector([a * s for a in self.coeffs])

    def is_zero(self):
        return not any(self.coeffs)

    def __eq__(self, other):
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "AlgVector(%s)" % (list(map(str, self.coeffs)),)


class LieAlgebra:
    """Lie algebra given by labelled basis and sparse structure constants.

    Structure constants are stored for i < j only; antisymmetry is
    structural.  `table[(i, j)]` maps k -> c_ij^k as GaussRat.
    """

    def __init__(self, basis_labels, table):
        self.basis_labels = tuple(basis_labels)
        self.dim = len(self.basis_labels)
        self.index = {lab: i for i, lab in enumerate(self.basis_labels)}
        self.table = {}
        for (i, j), row in table.items():
            if not (0 <= i < j < self.dim):
                raise ValueError("structure constants must be keyed by i < j")
            clean = {k: (v if isinstance(v, GaussRat) else GaussRat(v)) for k, v in row.items()}
            clean = {k: v for k, v in clean.items() if v}
            if clean:
                self.table[(i, j)] = clean

    # -- basics ----------------------------------------------------------
    def basis_vector(self, i):
        if isinstance(i, str):
            i = self.index[i]
        c = [G0] * self.dim
        c[i] = G1
        return AlgVector(c)

    def vector(self, **coeffs):
        c = [G0] * self.dim
        for lab, v in coeffs.items():
            c[self.index[lab]] = v if isinstance(v, GaussRat) else GaussRat(v)
        return AlgVector(c)

    def bracket_basis(self, i, j):
        """[e_i, e_j] as a sparse dict k -> GaussRat."""
        if i == j:
            return {}
        if i < j:
            return self.table.get((i, j), {})
        return {k: -v for k, v in self.table.get((j, i), {}).items()}

    def to_json(self):
        consts = {}
        for (i, j), row in self.table.items():
            consts["%d,%d" % (i, j)] = {str(k): str(v.re) for k, v in row.items()}
        return {"dim": self.dim, "labels": list(self.basis_labels), "constants": consts}

    @staticmethod
    def from_json(obj):
        table = {}
        for key, row in obj["constants"].items():
            i, j = (int(t) for t in key.split(","))
            table[(i, j)] = {int(k): GaussRat(rat(v)) for k, v in row.items()}
        alg = LieAlgebra(obj["labels"], table)
        if alg.dim != obj["dim"]:
            raise ValueError("dim field does not match label count")
        return alg


def make_heisenberg_ext(m: int) -> LieAlgebra:
    """The algebra h_{4m+1} + t_3 in the fixed basis order.

    Basis (Z, E1, E2, E3, X1..X_{2m}, Y1..Y_{2m}); the only nonzero
    brackets are [Y_j, X_j] = 4 Z.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    labels = ["Z", "E1", "E2", "E3"]
    labels += ["X%d" % j for j in range(1, 2 * m + 1)]
    labels += ["Y%d" % j for j in range(1, 2 * m + 1)]
    table = {}
    for j in range(1, 2 * m + 1):
        xi = 4 + j - 1
        yi = 4 + 2 * m + j - 1
        # stored with i < j:  [X_j, Y_j] = -4 Z
        table[(xi, yi)] = {0: GaussRat(-4)}
    return LieAlgebra(labels, table)


def bracket(A: LieAlgebra, v: AlgVector, w: AlgVector) -> AlgVector:
    if len(v.coeffs) != A.dim or len(w.coeffs) != A.dim:
        raise ValueError("vector dimension does not match algebra")
    out = [G0] * A.dim
    for (i, j), row in A.table.items():
        c = v.coeffs[i] * w.coeffs[j] - v.coeffs[j] * w.coeffs[i]
        if c:
            for k, ck in row.items():
                out[k] = out[k] + c * ck
    return AlgVector(out)


def check_jacobi(A: LieAlgebra):
    """None if the Jacobi identity holds on all basis triples, else a
    counterexample triple (i, j, k)."""
    for i in range(A.dim):
        ei = A.basis_vector(i)
        for j in range(i + 1, A.dim):
            ej = A.basis_vector(j)
            bij = bracket(A, ei, ej)
            if bij.is_zero():
                bij = None
            for k in range(j + 1, A.dim):
                ek = A.basis_vector(k)
                total = None
                if bij is not None:
                    total = bracket(A, bij, ek)
                bjk = bracket(A, ej, ek)
                if not bjk.is_zero():
                    t = bracket(A, bjk, ei)
                    total = t if total is None else total + t
                bki = bracket(A, ek, ei)
                if not bki.is_zero():
                    t = bracket(A, bki, ej)
                    total = t if total is None else total + t
                if total is not None and not total.is_zero():
                    return (i, j, k)
    return None


def _ad_stack(A: LieAlgebra) -> ExactMatrix:
    """Matrix of v -> ([v, e_j])_j stacked over all j; kernel = center."""
    n = A.dim
    M = ExactMatrix(n * n, n)
    for j in range(n):
        for i in range(n):
            for k, c in A.bracket_basis(i, j).items():
                M.set(j * n + k, i, M.get(j * n + k, i) + c)
    return M


def center_subspace(A: LieAlgebra):
    return [AlgVector(v) for v in kernel_basis(_ad_stack(A))]


def derived_ideal(A: LieAlgebra):
    """Basis of the span of all brackets of basis pairs."""
    vecs = []
    for (i, j), row in A.table.items():
        vecs.append(dict(row))
    # reduce to an independent set, deterministically
    basis = []
    chosen = []
    for v in vecs:
        trial = chosen + [v]
        if row_space_rank(trial, A.dim) > len(chosen):
            chosen.append(v)
            full = [G0] * A.dim
            for k, c in v.items():
                full[k] = c
            basis.append(AlgVector(full))
    return basis


def _derivation_system(A: LieAlgebra, constraints=()):
    """Linear system whose kernel is the space of derivations.

    Unknowns D[k][i] (column-major index i * n + k) with De_i = sum_k D[k][i] e_k.
    Equations: D[e_i,e_j] = [De_i, e_j] + [e_i, De_j] for i < j, plus
    D I = I D for each constraint endomorphism I (matrix over GaussRat).
    """
    n = A.dim
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            cij = A.bracket_basis(i, j)
            eq = [dict() for _ in range(n)]  # one equation per output component l

            def add(l, col, coeff):
                if coeff:
                    eq[l][col] = eq[l].get(col, G0) + coeff

            # D[e_i, e_j] = sum_k c_ij^k D e_k
            for k, c in cij.items():
                for l in range(n):
                    add(l, k * n + l, c)
            # -[D e_i, e_j] = -sum_k D[k][i] [e_k, e_j]
            for k in range(n):
                for l, c in A.bracket_basis(k, j).items():
                    add(l, i * n + k, -c)
            # -[e_i, D e_j]
            for k in range(n):
                for l, c in A.bracket_basis(i, k).items():
                    add(l, j * n + k, -c)
            for e in eq:
                e = {c: v for c, v in e.items() if v}
                if e:
                    rows.append(e)
    for I in constraints:
        # (D I - I D)[l][i] = sum_k D[l][k] I[k][i] - I[l][k] D[k][i] = 0
        for i in range(n):
            for l in range(n):
                e = {}
                for k in range(n):
                    v = I[k][i]
                    if v:
                        e[k * n + l] = e.get(k * n + l, G0) + v
                    v = I[l][k]
                    if v:
                        e[i * n + k] = e.get(i * n + k, G0) - v
                e = {c: v for c, v in e.items() if v}
                if e:
                    rows.append(e)
    M = ExactMatrix(len(rows), n * n)
    for r, e in enumerate(rows):
        for c, v in e.items():
            M.set(r, c, v)
    return M


def derivation_basis(A: LieAlgebra, constraints=()):
    """Kernel basis of the derivation system, each vector reshaped to an
    n x n matrix (list of rows)."""
    n = A.dim
    out = []
    for v in kernel_basis(_derivation_system(A, constraints)):
        D = [[G0] * n for _ in range(n)]
        for i in range(n):
            for k in range(n):
                D[k][i] = v[i * n + k]
        out.append(D)
    return out


def derivation_dimension(A: LieAlgebra, constraints=None) -> int:
    """Dimension of the derivation algebra, optionally restricted to
    derivations commuting with each given endomorphism."""
    cons = []
    if constraints:
        for I in constraints:
            cons.append(I.mat if hasattr(I, "mat") else I)
    M = _derivation_system(A, cons)
    from .exact_linalg import rank as _rank
    return A.dim * A.dim - _rank(M)

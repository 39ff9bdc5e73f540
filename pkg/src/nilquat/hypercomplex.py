"""The invariant quaternionic triple of endomorphisms and its checks.

Left multiplication by i, j, k on quaternion quadruples equips the algebra
from `lie_core` with three anticommuting complex structures.  This module
builds them, verifies the quaternion relations and the vanishing of the
invariant Nijenhuis tensor, and computes the torsion-free connection that
makes all three parallel (in both its reduced and full forms, which are
checked against each other).
"""
from __future__ import annotations

from .exact_linalg import G0, G1, GaussRat, ExactMatrix, solve, NO_SOLUTION
from .lie_core import AlgVector, LieAlgebra, bracket


class Endo:
    """Endomorphism of the algebra's vector space; column-convention matrix
    (image of e_i is the i-th column)."""

    __slots__ = ("mat", "n")

    def __init__(self, mat):
        self.mat = [list(row) for row in mat]
        self.n = len(self.mat)
        for row in self.mat:
            if len(row) != self.n:
                raise ValueError("matrix must be square")

    @staticmethod
    def identity(n):
        return Endo([[G1 if i == j else G0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(n):
        return Endo([[G0] * n for _ in range(n)])

    def apply(self, v: AlgVector) -> AlgVector:
        out = [G0] * self.n
        for j, c in enumerate(v.coeffs):
            if not c:
                continue
            col = self.mat
            for i in range(self.n):
                e = col[i][j]
                if e:
                    out[i] = out[i] + e * c
        return AlgVector(out)

    def compose(self, other: "Endo") -> "Endo":
        n = self.n
        out = [[G0] * n for _ in range(n)]
        for i in range(n):
            arow = self.mat[i]
            for k in range(n):
                a = arow[k]
                if not a:
                    continue
                brow = other.mat[k]
                orow = out[i]
                for j in range(n):
                    b = brow[j]
                    if b:
                        orow[j] = orow[j] + a * b
        return Endo(out)

    def __add__(self, other):
        return Endo([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.mat, other.mat)])

    def __sub__(self, other):
        return Endo([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.mat, other.mat)])

    def __neg__(self):
        return Endo([[-a for a in row] for row in self.mat])

    def scale(self, s):
        s = s if isinstance(s, GaussRat) else GaussRat(s)
        return Endo([[a * s for a in row] for row in self.mat])

    def __eq__(self, other):
        return self.mat == other.mat

    def inverse(self) -> "Endo":
        n = self.n
        M = ExactMatrix(n, n)
        for i in range(n):
            for j in range(n):
                M.set(i, j, self.mat[i][j])
        cols = []
        for j in range(n):
            b = [G1 if i == j else G0 for i in range(n)]
            x = solve(M, b)
            if x is NO_SOLUTION:
                raise ValueError("endomorphism is not invertible")
            cols.append(x)
        return Endo([[cols[j][i] for j in range(n)] for i in range(n)])

    def is_almost_complex(self) -> bool:
        return self.compose(self) == Endo.identity(self.n).scale(GaussRat(-1))

    def __repr__(self):
        return "Endo(%dx%d)" % (self.n, self.n)


class HyperTriple:
    """Triple (I1, I2, I3) expected to satisfy the quaternion relations."""

    __slots__ = ("I1", "I2", "I3")

    def __init__(self, I1, I2, I3):
        self.I1, self.I2, self.I3 = I1, I2, I3

    def __iter__(self):
        return iter((self.I1, self.I2, self.I3))


# Left multiplication by i, j, k on a quadruple (1, i, j, k), as columns.
_J1 = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
_J2 = [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]
_J3 = [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]


def quadruple_index_blocks(m: int):
    """Index quadruples on which the triple acts by the 4x4 patterns: the
    center (Z, E1, E2, E3) and, per a, (X_{2a-1}, X_{2a}, Y_{2a-1}, Y_{2a})."""
    blocks = [(0, 1, 2, 3)]
    for a in range(1, m + 1):
        x0 = 4 + (2 * a - 1) - 1
        y0 = 4 + 2 * m + (2 * a - 1) - 1
        blocks.append((x0, x0 + 1, y0, y0 + 1))
    return blocks


def standard_triple(m: int) -> HyperTriple:
    """The invariant triple: block-diagonal left i/j/k multiplication in the
    quadruple grouping of the fixed basis order."""
    if m < 1:
        raise ValueError("m must be >= 1")
    n = 4 * m + 4
    mats = []
    for J in (_J1, _J2, _J3):
        M = [[G0] * n for _ in range(n)]
        for block in quadruple_index_blocks(m):
            for bi in range(4):
                for bj in range(4):
                    if J[bi][bj]:
                        M[block[bi]][block[bj]] = GaussRat(J[bi][bj])
        mats.append(Endo(M))
    return HyperTriple(*mats)


def check_quaternion_relations(T: HyperTriple):
    """None if all five identities hold, else the name of the first failure."""
    n = T.I1.n
    minus_id = Endo.identity(n).scale(GaussRat(-1))
    if T.I1.compose(T.I1) != minus_id:
        return "I1^2 != -id"
    if T.I2.compose(T.I2) != minus_id:
        return "I2^2 != -id"
    if T.I3.compose(T.I3) != minus_id:
        return "I3^2 != -id"
    if T.I1.compose(T.I2) != T.I3:
        return "I1*I2 != I3"
    if T.I2.compose(T.I1) != -T.I3:
        return "I2*I1 != -I3"
    return None


def unit_combination(T: HyperTriple, a1, a2, a3) -> Endo:
    """a1*I1 + a2*I2 + a3*I3 for a rational unit vector (a1, a2, a3)."""
    a1, a2, a3 = (x if isinstance(x, GaussRat) else GaussRat(x) for x in (a1, a2, a3))
    if a1 * a1 + a2 * a2 + a3 * a3 != G1:
        raise ValueError("(a1, a2, a3) must be a rational unit vector")
    return T.I1.scale(a1) + T.I2.scale(a2) + T.I3.scale(a3)


def nijenhuis_invariant(A: LieAlgebra, J: Endo, v: AlgVector, w: AlgVector) -> AlgVector:
    """N_J(v, w) = [Jv, Jw] - [v, w] - J[Jv, w] - J[v, Jw] on invariant vectors."""
    if not J.is_almost_complex():
        raise ValueError("J^2 != -identity")
    Jv, Jw = J.apply(v), J.apply(w)
    return (bracket(A, Jv, Jw) - bracket(A, v, w)
            - J.apply(bracket(A, Jv, w)) - J.apply(bracket(A, v, Jw)))


def nijenhuis_vanishes(A: LieAlgebra, J: Endo) -> bool:
    for i in range(A.dim):
        ei = A.basis_vector(i)
        for j in range(i + 1, A.dim):
            if not nijenhuis_invariant(A, J, ei, A.basis_vector(j)).is_zero():
                return False
    return True


def is_abelian_type(A: LieAlgebra, T: HyperTriple) -> bool:
    """[I_a v, I_a w] = [v, w] on all basis pairs, for a = 1, 2, 3."""
    for J in T:
        for i in range(A.dim):
            ei = A.basis_vector(i)
            Jei = J.apply(ei)
            for j in range(i + 1, A.dim):
                ej = A.basis_vector(j)
                if bracket(A, Jei, J.apply(ej)) != bracket(A, ei, ej):
                    return False
    return True


class ConnectionCoeffs:
    """Table G[(i, j)] = coefficients of nabla_{e_i} e_j in the basis."""

    def __init__(self, dim, table):
        self.dim = dim
        self.table = table  # dict (i, j) -> AlgVector

    def nabla(self, i, j) -> AlgVector:
        return self.table[(i, j)]


def _reduced_obata(A, T, v, w):
    # (1/2)[v, w] + (1/2) sum_a I_a [I_a v, w]
    half = GaussRat("1/2")
    out = bracket(A, v, w)
    for J in T:
        out = out + J.apply(bracket(A, J.apply(v), w))
    return out.scale(half)


def full_torsion_free_formula(A: LieAlgebra, T: HyperTriple, v: AlgVector, w: AlgVector) -> AlgVector:
    """The generic three-term formula for the connection, used as the oracle
    against the reduced one."""
    twelfth = GaussRat("1/12")
    sixth = GaussRat("1/6")
    Is = (T.I1, T.I2, T.I3)
    out = bracket(A, v, w).scale(GaussRat("1/2"))
    for (a, b, c) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        Ia, Ib, Ic = Is[a], Is[b], Is[c]
        t = bracket(A, Ib.apply(v), Ic.apply(w)) + bracket(A, Ib.apply(w), Ic.apply(v))
        out = out + Ia.apply(t).scale(twelfth)
    for J in Is:
        t = bracket(A, J.apply(v), w) + bracket(A, J.apply(w), v)
        out = out + J.apply(t).scale(sixth)
    return out


def obata_connection(A: LieAlgebra, T: HyperTriple) -> ConnectionCoeffs:
    """Connection coefficients on the invariant frame via the reduced formula.

    Requires the triple to be integrable in the invariant sense checked by
    `is_abelian_type`; raises otherwise.
    """
    if not is_abelian_type(A, T):
        raise ValueError("triple does not satisfy [I_a v, I_a w] = [v, w]")
    table = {}
    for i in range(A.dim):
        ei = A.basis_vector(i)
        for j in range(A.dim):
            table[(i, j)] = _reduced_obata(A, T, ei, A.basis_vector(j))
    return ConnectionCoeffs(A.dim, table)


def connection_is_torsion_free(A: LieAlgebra, C: ConnectionCoeffs) -> bool:
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = C.nabla(i, j) - C.nabla(j, i)
            if lhs != bracket(A, A.basis_vector(i), A.basis_vector(j)):
                return False
    return True


def connection_preserves(A: LieAlgebra, C: ConnectionCoeffs, J: Endo) -> bool:
    """nabla J = 0 as equations on coefficient tables:
    nabla_{e_i}(J e_j) = J nabla_{e_i} e_j for all i, j."""
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = [G0] * A.dim
            for k in range(A.dim):
                c = J.mat[k][j]
                if c:
                    lhs = [x + y * c for x, y in zip(lhs, C.nabla(i, k).coeffs)]
            if AlgVector(lhs) != J.apply(C.nabla(i, j)):
                return False
    return True


def reduced_equals_full(A: LieAlgebra, T: HyperTriple) -> bool:
    """Brute-force equivalence of the reduced and full connection formulas
    on every basis pair."""
    for i in range(A.dim):
        ei = A.basis_vector(i)
        for j in range(A.dim):
            ej = A.basis_vector(j)
            if _reduced_obata(A, T, ei, ej) != full_torsion_free_formula(A, T, ei, ej):
                return False
    return True

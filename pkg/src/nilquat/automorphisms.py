"""Matrix predicates and dimension counts for the symmetry groups.

The algebra automorphisms are block-triangular in the basis
(Z, E1, E2, E3, X.., Y..): the center block fixes Z up to a scalar S0, the
strip into the center is free, and the block on the X/Y space rescales the
symplectic pairing [V, V'] = -2 w(V, V') Z by the same S0.  Compatibility
with the quaternionic triple further forces scalar center action and
quaternion-linear blocks in the quadruple grouping, except that the Z-row
of the strip stays free (it absorbs the affine translation part).  Group
dimensions are obtained infinitesimally, as exact kernels.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .exact_linalg import ExactMatrix, G0, G1, GaussRat, rat
from .hypercomplex import Endo, HyperTriple, quadruple_index_blocks
from .lie_core import LieAlgebra, make_heisenberg_ext


@dataclass
class AutMatrix:
    """Square matrix over the rationals in the fixed (4m+4) basis order."""
    mat: list

    def __post_init__(self):
        n = len(self.mat)
        self.mat = [[v if isinstance(v, GaussRat) else GaussRat(v) for v in row]
                    for row in self.mat]
        for row in self.mat:
            if len(row) != n:
                raise ValueError("matrix must be square")

    @property
    def n(self):
        return len(self.mat)

    def endo(self):
        return Endo(self.mat)

    def to_json(self):
        return [[str(v.re) for v in row] for row in self.mat]

    @staticmethod
    def from_json(rows, m: int) -> "AutMatrix":
        n = 4 * m + 4
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("matrix must be %dx%d" % (n, n))
        return AutMatrix([[GaussRat(rat(v)) for v in row] for row in rows])

    @staticmethod
    def identity(m: int) -> "AutMatrix":
        n = 4 * m + 4
        return AutMatrix([[G1 if i == j else G0 for j in range(n)] for i in range(n)])


def omega_matrix(m: int):
    """The pairing on the X/Y block: w(X_j, Y_j) = 2, antisymmetric,
    so that [V, V'] = -2 w(V, V') Z reproduces the structure constants."""
    n = 4 * m
    W = [[G0] * n for _ in range(n)]
    two = GaussRat(2)
    for j in range(2 * m):
        W[j][2 * m + j] = two
        W[2 * m + j][j] = -two
    return W


@dataclass
class SymplecticData:
    m: int
    omega: list

    @staticmethod
    def standard(m: int):
        return SymplecticData(m, omega_matrix(m))


def _mat_of(M):
    return M.mat if isinstance(M, (AutMatrix, Endo)) else M


def is_lie_automorphism(M: AutMatrix, A: LieAlgebra) -> bool:
    """Invertible and bracket-preserving on all basis pairs."""
    mat = _mat_of(M)
    n = A.dim
    if len(mat) != n:
        raise ValueError("matrix size does not match algebra dimension")
    from .exact_linalg import rank as _rank
    R = ExactMatrix(n, n)
    for i in range(n):
        for j in range(n):
            R.set(i, j, mat[i][j])
    if _rank(R) != n:
        return False
    E = Endo(mat)
    from .lie_core import bracket
    for i in range(n):
        Mei = E.apply(A.basis_vector(i))
        for j in range(i + 1, n):
            lhs = [G0] * n
            for k, c in A.bracket_basis(i, j).items():
                for r in range(n):
                    if mat[r][k]:
                        lhs[r] = lhs[r] + mat[r][k] * c
            rhs = bracket(A, Mei, E.apply(A.basis_vector(j)))
            if tuple(lhs) != rhs.coeffs:
                return False
    return True


def _omega_scale(C, m):
    """If w(Cv, Cv') = S w(v, v') exactly on all basis pairs, return S,
    else None.  C is the 4m x 4m block as nested lists."""
    W = omega_matrix(m)
    n = 4 * m
    # T = C^t W C
    WC = [[G0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            s = G0
            for k in range(n):
                if W[i][k] and C[k][j]:
                    s = s + W[i][k] * C[k][j]
            WC[i][j] = s
    S = None
    for i in range(n):
        for j in range(n):
            s = G0
            for k in range(n):
                if C[k][i] and WC[k][j]:
                    s = s + C[k][i] * WC[k][j]
            want = W[i][j]
            if want:
                cand = s / want
                if S is None:
                    S = cand
                elif cand != S:
                    return None
            elif s:
                return None
    return S


def is_triangular_form(M: AutMatrix, m: int):
    """(ok, S0): block-triangular with the center line scaled by S0 and the
    X/Y block rescaling the symplectic pairing by the same S0."""
    mat = _mat_of(M)
    n = 4 * m + 4
    for i in range(4, n):
        for j in range(4):
            if mat[i][j]:
                return False, None
    S0 = mat[0][0]
    for i in (1, 2, 3):
        if mat[i][0]:
            return False, None
    C = [[mat[4 + i][4 + j] for j in range(4 * m)] for i in range(4 * m)]
    S = _omega_scale(C, m)
    if S is None or S != S0:
        return False, None
    return True, S0


def is_hypercomplex_automorphism(M: AutMatrix, T: HyperTriple) -> bool:
    """Commutes with I_1 and I_2 (and then with I_3; asserted anyway)."""
    E = Endo(_mat_of(M))
    for J in (T.I1, T.I2, T.I3):
        if E.compose(J) != J.compose(E):
            return False
    return True


def _quat_block_pattern_ok(B):
    """4x4 block of the quaternion-linear shape
    [[a, b, c, d], [-b, a, -d, c], [-c, d, a, -b], [-d, -c, b, a]]."""
    a, b, c, d = B[0]
    want = [
        [a, b, c, d],
        [-b, a, -d, c],
        [-c, d, a, -b],
        [-d, -c, b, a],
    ]
    return B == want


def _blocks_of(mat, m):
    blocks = quadruple_index_blocks(m)
    out = {}
    for bi, rows in enumerate(blocks):
        for bj, cols in enumerate(blocks):
            out[(bi, bj)] = [[mat[r][c] for c in cols] for r in rows]
    return out


def is_compatible_form(M: AutMatrix, m: int) -> bool:
    """The compatible shape: scalar (nonzero) center block; X/Y block
    quaternion-linear and conformal-symplectic with the same scalar; strip
    blocks quaternion-linear below their first (Z-) row, which is free."""
    mat = _mat_of(M)
    n = 4 * m + 4
    for i in range(4, n):
        for j in range(4):
            if mat[i][j]:
                return False
    s = mat[0][0]
    if not s:
        return False
    for i in range(4):
        for j in range(4):
            want = s if i == j else G0
            if mat[i][j] != want:
                return False
    blocks = _blocks_of(mat, m)
    for bi in range(1, m + 1):
        for bj in range(1, m + 1):
            if not _quat_block_pattern_ok(blocks[(bi, bj)]):
                return False
    C = [[mat[4 + i][4 + j] for j in range(4 * m)] for i in range(4 * m)]
    if _omega_scale(C, m) != s:
        return False
    for bj in range(1, m + 1):
        strip = blocks[(0, bj)]
        a, b, c, d = strip[1][1], -strip[1][0], -strip[2][0], -strip[3][0]
        want = [
            [-b, a, -d, c],
            [-c, d, a, -b],
            [-d, -c, b, a],
        ]
        if strip[1:] != want:
            return False
    return True


# ---------------------------------------------------------------------------
# dimension counts
# ---------------------------------------------------------------------------


# quaternion pattern on a 4x4 block with rows r0..r3, cols c0..c3: twelve
# equations tying every entry to the first row (a, b, c, d)
_QUAT_TIES = {
    (1, 0): (0, 1, -1), (1, 1): (0, 0, 1), (1, 2): (0, 3, -1), (1, 3): (0, 2, 1),
    (2, 0): (0, 2, -1), (2, 1): (0, 3, 1), (2, 2): (0, 0, 1), (2, 3): (0, 1, -1),
    (3, 0): (0, 3, -1), (3, 1): (0, 2, -1), (3, 2): (0, 1, 1), (3, 3): (0, 0, 1),
}


def _shape_constraint_rows(m, conformal="similarity"):
    """Linear constraints (sparse rows over D[k][i] unknowns, column-major
    index i*n + k) for the infinitesimal compatible shape: block
    triangular, scalar center block, quaternion-linear X/Y blocks, strip
    blocks patterned below their free first row, and the conformal tie of
    the X/Y block to the center scalar.

    conformal='similarity': the block scales the quaternionic norm
    (M + M^t = s2 * id), the reading under which the closed-form counts
    1 + 9m + 2m^2 come out.  conformal='symplectic': the block rescales
    the bracket pairing instead (the strict intersection with the
    automorphism algebra; smaller).
    """
    n = 4 * m + 4
    rows = []

    def entry(r, c):
        return c * n + r

    # block triangular: X/Y rows over center columns vanish
    for i in range(4, n):
        for j in range(4):
            rows.append({entry(i, j): G1})
    # center block: off-diagonal zero, diagonal entries all equal
    for i in range(4):
        for j in range(4):
            if i != j:
                rows.append({entry(i, j): G1})
    for i in (1, 2, 3):
        rows.append({entry(0, 0): G1, entry(i, i): -G1})
    blocks = quadruple_index_blocks(m)
    for bi in range(1, m + 1):
        for bj in range(1, m + 1):
            rr, cc = blocks[bi], blocks[bj]
            for (r, c), (pr, pc, sgn) in _QUAT_TIES.items():
                rows.append({entry(rr[r], cc[c]): G1,
                             entry(rr[pr], cc[pc]): GaussRat(-sgn)})
    # strips: rows 1..3 follow the pattern whose (virtual) first row is
    # (a, b, c, d) = (D[r1][c1], -D[r1][c0], -D[r2][c0], -D[r3][c0])
    for bj in range(1, m + 1):
        r, c = blocks[0], blocks[bj]
        a, b, cq, d = (r[1], c[1]), (r[1], c[0]), (r[2], c[0]), (r[3], c[0])
        ties = [
            ((r[1], c[2]), d, G1),    # -d
            ((r[1], c[3]), cq, -G1),  # c
            ((r[2], c[1]), d, -G1),   # d
            ((r[2], c[2]), a, G1),    # a
            ((r[2], c[3]), b, G1),    # -b
            ((r[3], c[1]), cq, G1),   # -c
            ((r[3], c[2]), b, -G1),   # b
            ((r[3], c[3]), a, G1),    # a
        ]
        for (pos, ref, sgn) in ties:
            rows.append({entry(*pos): G1, entry(*ref): -sgn})
    # conformal tie of the X/Y block to the center scalar
    if conformal == "similarity":
        # M + M^t = s2 * id on the X/Y block
        for i in range(4 * m):
            ri = 4 + i
            for j in range(i, 4 * m):
                rj = 4 + j
                row = {}
                row[entry(ri, rj)] = row.get(entry(ri, rj), G0) + G1
                row[entry(rj, ri)] = row.get(entry(rj, ri), G0) + G1
                if i == j:
                    row[entry(0, 0)] = -G1
                rows.append({k: v for k, v in row.items() if v})
    elif conformal == "symplectic":
        # w(Mv, v') + w(v, Mv') = s2 w(v, v') on the X/Y block
        W = omega_matrix(m)
        for i in range(4 * m):
            for j in range(i + 1, 4 * m):
                row = {}
                for k in range(4 * m):
                    if W[k][j]:
                        key = entry(4 + k, 4 + i)
                        row[key] = row.get(key, G0) + W[k][j]
                    if W[i][k]:
                        key = entry(4 + k, 4 + j)
                        row[key] = row.get(key, G0) + W[i][k]
                if W[i][j]:
                    key = entry(0, 0)
                    row[key] = row.get(key, G0) - W[i][j]
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    else:
        raise ValueError("conformal must be 'similarity' or 'symplectic'")
    return rows


def _shape_kernel_dimension(m, conformal):
    rows = _shape_constraint_rows(m, conformal)
    n = 4 * m + 4
    M = ExactMatrix(len(rows), n * n)
    for r, row in enumerate(rows):
        for c, v in row.items():
            M.set(r, c, v)
    from .exact_linalg import rank as _rank
    return n * n - _rank(M)


def hyper_aut_dimension(m: int) -> int:
    """Infinitesimal count of the compatible shape, with the conformal
    constraint read for the quaternionic similarity pairing -- the reading
    whose block arithmetic (1 scalar + m(2m+1) + 8m) reproduces the
    closed form 1 + 9m + 2m^2."""
    return _shape_kernel_dimension(m, "similarity")


def strict_intersection_dimension(m: int) -> int:
    """Infinitesimal count with the conformal constraint read for the
    bracket (symplectic) pairing instead: the literal intersection of the
    compatible shape with the automorphism algebra.  Strictly smaller than
    hyper_aut_dimension (by 2m); reported for comparison, never silently
    substituted."""
    return _shape_kernel_dimension(m, "symplectic")


def group_dimensions(m: int):
    """(dim G, dim H, effective): the full automorphism count, the
    compatible-subgroup count, and their difference; the closed forms are
    13 + 18m + 8m^2, 1 + 9m + 2m^2 and 12 + 9m + 6m^2."""
    from .lie_core import derivation_dimension
    A = make_heisenberg_ext(m)
    dim_g = derivation_dimension(A)
    dim_h = hyper_aut_dimension(m)
    return dim_g, dim_h, dim_g - dim_h


# ---------------------------------------------------------------------------
# random generation for two-sided property tests
# ---------------------------------------------------------------------------


def random_symplectic(m: int, rng: random.Random, transvections: int = 5):
    """Product of symplectic transvections v -> v + t w(v, u) u, exact."""
    n = 4 * m
    W = omega_matrix(m)
    C = [[G1 if i == j else G0 for j in range(n)] for i in range(n)]
    for _ in range(transvections):
        u = [GaussRat(rng.randint(-2, 2)) for _ in range(n)]
        t = GaussRat(rat(rng.randint(-3, 3), rng.randint(1, 2)))
        if not any(u) or not t:
            continue
        # T[i][j] = delta + t * u_i * (w u)_j  with (w u)_j = sum_k w(e_j, u)
        wu = []
        for j in range(n):
            s = G0
            for k in range(n):
                if W[j][k] and u[k]:
                    s = s + W[j][k] * u[k]
            wu.append(s)
        T = [[(G1 if i == j else G0) + t * u[i] * wu[j] for j in range(n)]
             for i in range(n)]
        C = [[sum((T[i][k] * C[k][j] for k in range(n)), G0) for j in range(n)]
             for i in range(n)]
    return C


def random_triangular(m: int, rng: random.Random) -> AutMatrix:
    """Random matrix of the block-triangular shape: scaled symplectic X/Y
    block (scale t^2, possibly negated by the X/Y swap), matching center
    scalar, random center/strip entries, invertible."""
    n = 4 * m + 4
    C = random_symplectic(m, rng)
    t = G0
    while not t:
        t = GaussRat(rat(rng.randint(-3, 3), rng.randint(1, 2)))
    S0 = t * t
    if rng.random() < 0.5:
        # swap X_j <-> Y_j: flips the pairing sign
        nn = 4 * m
        P = [[G0] * nn for _ in range(nn)]
        for j in range(2 * m):
            P[j][2 * m + j] = G1
            P[2 * m + j][j] = G1
        C = [[sum((C[i][k] * P[k][j] for k in range(nn)), G0) for j in range(nn)]
             for i in range(nn)]
        S0 = -S0
    C = [[t * v for v in row] for row in C]
    mat = [[G0] * n for _ in range(n)]
    mat[0][0] = S0
    while True:
        E = [[GaussRat(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
        det = (E[0][0] * (E[1][1] * E[2][2] - E[1][2] * E[2][1])
               - E[0][1] * (E[1][0] * E[2][2] - E[1][2] * E[2][0])
               + E[0][2] * (E[1][0] * E[2][1] - E[1][1] * E[2][0]))
        if det:
            break
    for i in range(3):
        mat[0][1 + i] = GaussRat(rng.randint(-2, 2))
        for j in range(3):
            mat[1 + i][1 + j] = E[i][j]
    for i in range(4):
        for j in range(4 * m):
            mat[i][4 + j] = GaussRat(rng.randint(-2, 2))
    for i in range(4 * m):
        for j in range(4 * m):
            mat[4 + i][4 + j] = C[i][j]
    return AutMatrix(mat)


def random_compatible(m: int, rng: random.Random) -> AutMatrix:
    """Random matrix of the compatible shape, built so that the pairing
    rescales by exactly the center scalar: all diagonal X/Y blocks carry
    the same quadruple from the (1, j)-plane (scale a^2 + c^2) or the
    (i, k)-plane (scale -(b^2 + d^2)), off-diagonal X/Y blocks zero, strip
    first rows free.  Every output is also a Lie automorphism."""
    n = 4 * m + 4
    mat = [[G0] * n for _ in range(n)]

    def quat_block(a, b, c, d):
        return [[a, b, c, d], [-b, a, -d, c], [-c, d, a, -b], [-d, -c, b, a]]

    while True:
        a = GaussRat(rat(rng.randint(-3, 3), rng.randint(1, 2)))
        c = GaussRat(rat(rng.randint(-3, 3), rng.randint(1, 2)))
        if a or c:
            break
    if rng.random() < 0.5:
        B = quat_block(a, G0, c, G0)
        s = a * a + c * c
    else:
        B = quat_block(G0, a, G0, c)
        s = -(a * a + c * c)
    for i in range(4):
        mat[i][i] = s
    blocks = quadruple_index_blocks(m)
    for bi in range(1, m + 1):
        rows = blocks[bi]
        for i in range(4):
            for j in range(4):
                mat[rows[i]][rows[j]] = B[i][j]
    for bj in range(1, m + 1):
        rows0, cols = blocks[0], blocks[bj]
        sa, sb, sc, sd = (GaussRat(rng.randint(-2, 2)) for _ in range(4))
        S = quat_block(sa, sb, sc, sd)
        for j in range(4):
            mat[rows0[0]][cols[j]] = GaussRat(rng.randint(-2, 2))
        for i in (1, 2, 3):
            for j in range(4):
                mat[rows0[i]][cols[j]] = S[i][j]
    return AutMatrix(mat)

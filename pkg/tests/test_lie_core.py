import pytest

from nilquat.exact_linalg import G0, G1, GaussRat, row_space_rank
from nilquat.lie_core import (LieAlgebra, bracket, check_jacobi, center_subspace,
                              derivation_basis, derivation_dimension,
                              derived_ideal, make_heisenberg_ext)


def abelian(n):
    return LieAlgebra(["a%d" % i for i in range(n)], {})


def test_heisenberg_ext_dimensions():
    assert make_heisenberg_ext(1).dim == 8
    assert make_heisenberg_ext(2).dim == 12
    with pytest.raises(ValueError):
        make_heisenberg_ext(0)


def test_heisenberg_bracket_table():
    A = make_heisenberg_ext(1)
    y1, x1 = A.basis_vector("Y1"), A.basis_vector("X1")
    assert bracket(A, y1, x1) == A.vector(Z=4)
    assert bracket(A, A.basis_vector("X1"), A.basis_vector("X2")).is_zero()
    # [Y_j, X_k] = 0 for j != k
    A2 = make_heisenberg_ext(2)
    assert bracket(A2, A2.basis_vector("Y1"), A2.basis_vector("X2")).is_zero()


def test_bracket_linearity_and_antisymmetry():
    A = make_heisenberg_ext(2)
    v = A.basis_vector("Y1") + A.basis_vector("Y2")
    assert bracket(A, v, A.basis_vector("X1")) == A.vector(Z=4)
    assert bracket(A, v, v).is_zero()
    assert bracket(A, A.basis_vector("Z"), v).is_zero()


def test_bracket_dimension_mismatch():
    A1, A2 = make_heisenberg_ext(1), make_heisenberg_ext(2)
    with pytest.raises(ValueError):
        bracket(A1, A2.basis_vector(0), A2.basis_vector(1))


def test_jacobi():
    assert check_jacobi(make_heisenberg_ext(1)) is None
    assert check_jacobi(abelian(4)) is None


def test_jacobi_counterexample():
    # [e1, e2] = e3 and [e1, e3] = e1 fail Jacobi on (e1, e2, e3):
    # the cyclic sum is [[e3,e1],e2] = -[e1,e2] = -e3.  Brute force agrees.
    bad = LieAlgebra(["a", "b", "c"], {(0, 1): {2: G1}, (0, 2): {0: G1}})
    assert check_jacobi(bad) == (0, 1, 2)


def test_center():
    for m in (1, 2, 3):
        A = make_heisenberg_ext(m)
        ker = center_subspace(A)
        assert len(ker) == 4
        span = row_space_rank([list(v.coeffs) for v in ker], A.dim)
        expected = [list(A.basis_vector(lab).coeffs) for lab in ("Z", "E1", "E2", "E3")]
        both = [list(v.coeffs) for v in ker] + expected
        assert span == 4 and row_space_rank(both, A.dim) == 4
    assert len(center_subspace(abelian(4))) == 4


def test_center_bare_heisenberg():
    # h_5 alone: only Z is central
    table = {(1, 3): {0: GaussRat(-4)}, (2, 4): {0: GaussRat(-4)}}
    h5 = LieAlgebra(["Z", "X1", "X2", "Y1", "Y2"], table)
    ker = center_subspace(h5)
    assert len(ker) == 1
    assert ker[0].coeffs[0] != G0


def test_derived_ideal():
    for m in (1, 3):
        A = make_heisenberg_ext(m)
        der = derived_ideal(A)
        assert len(der) == 1
        assert der[0] == A.vector(Z=-4)
    assert derived_ideal(abelian(3)) == []


def test_derivation_dimension_formula():
    for m in (1, 2, 3, 4):
        A = make_heisenberg_ext(m)
        assert derivation_dimension(A) == 13 + 18 * m + 8 * m * m


def test_derivation_dimension_abelian():
    assert derivation_dimension(abelian(4)) == 16


def test_derivation_dimension_with_constraint():
    # on an abelian algebra every linear map is a derivation, so the
    # constrained count is the commutant of the constraint: for one
    # complex structure on R^4 that is the complex-linear maps, dim 8
    J = [[GaussRat(v) for v in row] for row in
         [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]]
    assert derivation_dimension(abelian(4), [J]) == 8


def test_derivations_preserve_derived_ideal():
    A = make_heisenberg_ext(1)
    zi = A.index["Z"]
    for D in derivation_basis(A):
        # D(Z) must stay proportional to Z
        col = [D[k][zi] for k in range(A.dim)]
        assert all(col[k] == G0 for k in range(A.dim) if k != zi)


def test_json_roundtrip():
    A = make_heisenberg_ext(2)
    B = LieAlgebra.from_json(A.to_json())
    assert B.basis_labels == A.basis_labels
    assert B.table == A.table

import random

import pytest

from nilquat.automorphisms import (AutMatrix, SymplecticData, group_dimensions,
                                   hyper_aut_dimension, is_hypercomplex_automorphism,
                                   is_lie_automorphism, is_triangular_form,
                                   is_compatible_form, omega_matrix, random_triangular,
                                   random_compatible, strict_intersection_dimension)
from nilquat.exact_linalg import G0, G1, GaussRat
from nilquat.hypercomplex import quadruple_index_blocks, standard_triple
from nilquat.lie_core import bracket, make_heisenberg_ext


def ident(m):
    return AutMatrix.identity(m)


def test_omega_reproduces_brackets():
    # [V, V'] = -2 w(V, V') Z on the X/Y block
    m = 2
    A = make_heisenberg_ext(m)
    W = SymplecticData.standard(m).omega
    for i in range(4 * m):
        for j in range(4 * m):
            b = bracket(A, A.basis_vector(4 + i), A.basis_vector(4 + j))
            assert b.coeffs[0] == -GaussRat(2) * W[i][j]
            assert all(c == G0 for c in b.coeffs[1:])


def test_identity_predicates():
    m = 1
    A = make_heisenberg_ext(m)
    T = standard_triple(m)
    M = ident(m)
    assert is_lie_automorphism(M, A)
    ok, s0 = is_triangular_form(M, m)
    assert ok and s0 == G1
    assert is_hypercomplex_automorphism(M, T)
    assert is_compatible_form(M, m)


def test_scaling_automorphism():
    # Z -> 2Z, Y_j -> 2Y_j: scales the pairing by 2
    m = 1
    A = make_heisenberg_ext(m)
    n = 8
    mat = [[G1 if i == j else G0 for j in range(n)] for i in range(n)]
    mat[0][0] = GaussRat(2)
    for j in (6, 7):
        mat[j][j] = GaussRat(2)
    M = AutMatrix(mat)
    assert is_lie_automorphism(M, A)
    ok, s0 = is_triangular_form(M, m)
    assert ok and s0 == GaussRat(2)


def test_center_swap_is_not_automorphism():
    m = 1
    A = make_heisenberg_ext(m)
    n = 8
    mat = [[G1 if i == j else G0 for j in range(n)] for i in range(n)]
    mat[0][0] = mat[1][1] = G0
    mat[0][1] = mat[1][0] = G1
    assert not is_lie_automorphism(AutMatrix(mat), A)


def test_triangular_rejects_scale_mismatch():
    m = 1
    n = 8
    mat = [[G1 if i == j else G0 for j in range(n)] for i in range(n)]
    mat[0][0] = GaussRat(2)  # S0 = 2 but the X/Y block keeps the pairing
    ok, _ = is_triangular_form(AutMatrix(mat), m)
    assert not ok


def test_triangular_rejects_lower_block():
    m = 1
    n = 8
    mat = [[G1 if i == j else G0 for j in range(n)] for i in range(n)]
    mat[5][0] = G1
    ok, _ = is_triangular_form(AutMatrix(mat), m)
    assert not ok


def test_compatible_rejects_nonscalar_center():
    m = 1
    n = 8
    mat = [[G1 if i == j else G0 for j in range(n)] for i in range(n)]
    mat[1][1] = GaussRat(2)
    M = AutMatrix(mat)
    assert is_lie_automorphism(M, make_heisenberg_ext(m))
    assert is_triangular_form(M, m)[0]
    assert not is_compatible_form(M, m)


def test_triple_is_not_hypercomplex_automorphism():
    T = standard_triple(1)
    assert not is_hypercomplex_automorphism(AutMatrix(T.I1.mat), T)


def test_block_pattern_is_commutant():
    rng = random.Random(7)

    def quat_block(a, b, c, d):
        return [[a, b, c, d], [-b, a, -d, c], [-c, d, a, -b], [-d, -c, b, a]]

    m = 1
    blocks = quadruple_index_blocks(m)
    n = 8
    mat = [[G0] * n for _ in range(n)]
    for bi in range(m + 1):
        for bj in range(m + 1):
            B = quat_block(*(GaussRat(rng.randint(-2, 2)) for _ in range(4)))
            for i in range(4):
                for j in range(4):
                    mat[blocks[bi][i]][blocks[bj][j]] = B[i][j]
    T = standard_triple(m)
    assert is_hypercomplex_automorphism(AutMatrix([row[:] for row in mat]), T)
    mat[0][4] = mat[0][4] + G1
    assert not is_hypercomplex_automorphism(AutMatrix(mat), T)


def test_group_dimensions_closed_forms():
    for m in (1, 2, 3, 4):
        g, h, eff = group_dimensions(m)
        assert g == 13 + 18 * m + 8 * m * m
        assert h == 1 + 9 * m + 2 * m * m
        assert eff == 12 + 9 * m + 6 * m * m
        # the strict bracket-pairing reading is smaller by exactly 2m
        assert strict_intersection_dimension(m) == h - 2 * m
        # orbit gap against the deformation count
        assert eff < 6 * m * m + 11 * m + 12
    assert group_dimensions(1) == (39, 12, 27)
    assert group_dimensions(2) == (81, 27, 54)


def test_random_triangular_two_sided():
    for m in (1, 2, 3):
        A = make_heisenberg_ext(m)
        rng = random.Random(40 + m)
        for _ in range(30):
            M = random_triangular(m, rng)
            assert is_lie_automorphism(M, A)
            ok, s0 = is_triangular_form(M, m)
            assert ok and s0
        # products of generators stay in the family
        for _ in range(10):
            P = random_triangular(m, rng).endo().compose(random_triangular(m, rng).endo())
            assert is_triangular_form(AutMatrix(P.mat), m)[0]


def test_random_compatible_family():
    for m in (1, 2):
        A = make_heisenberg_ext(m)
        T = standard_triple(m)
        rng = random.Random(60 + m)
        for _ in range(25):
            M = random_compatible(m, rng)
            assert is_compatible_form(M, m)
            assert is_lie_automorphism(M, A)
            assert is_triangular_form(M, m)[0]


def test_json_and_size_validation():
    M = ident(1)
    again = AutMatrix.from_json(M.to_json(), 1)
    assert again.mat == M.mat
    with pytest.raises(ValueError):
        AutMatrix.from_json(M.to_json(), 2)
    with pytest.raises(ValueError):
        AutMatrix([[G0, G1]])


def test_size_mismatch_errors():
    with pytest.raises(ValueError):
        is_lie_automorphism(ident(2), make_heisenberg_ext(1))

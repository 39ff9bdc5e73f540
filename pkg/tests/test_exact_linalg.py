import random

from hypothesis import given, strategies as st

from nilquat.exact_linalg import (ExactMatrix, G0, G1, GI, GaussRat, NO_SOLUTION,
                                  kernel_basis, rank, rat, row_space_rank, solve)


def M(rows):
    rs, cs = len(rows), len(rows[0])
    out = ExactMatrix(rs, cs)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            out.set(i, j, v)
    return out


def matvec(A, v):
    out = []
    for r in range(A.rows):
        s = G0
        for c, x in A.data[r].items():
            s = s + x * v[c]
        out.append(s)
    return out


def test_gaussrat_basics():
    a = GaussRat(rat("1/2"), rat("-3/4"))
    b = GaussRat(2, 1)
    assert a + b == GaussRat(rat("5/2"), rat("1/4"))
    assert a * GaussRat(0, 1) == GaussRat(rat("3/4"), rat("1/2"))
    assert (a / a) == G1
    assert a.conjugate().conjugate() == a
    assert GI * GI == GaussRat(-1)
    assert not GaussRat(0, 0)


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=9)
gauss = st.builds(lambda r, i: GaussRat(rat(r), rat(i)), rationals, rationals)


@given(gauss, gauss, gauss)
def test_gaussrat_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * (b * c) == (a * b) * c
    assert a + b == b + a
    assert a - a == G0


def test_rank_identity_and_zero():
    assert rank(M([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3
    assert rank(M([[0, 0], [0, 0]])) == 0


def test_rank_dependent_complex_rows():
    # second row is -i times the first
    A = M([[G1, GI], [-GI, G1]])
    assert rank(A) == 1


def test_kernel_identity_empty():
    assert kernel_basis(M([[1, 0], [0, 1]])) == []


def test_kernel_zero_matrix():
    ker = kernel_basis(M([[0, 0], [0, 0]]))
    assert len(ker) == 2


def test_kernel_complex_by_substitution():
    A = M([[G1, GI], [-GI, G1]])
    ker = kernel_basis(A)
    assert len(ker) == 1
    assert all(x == G0 for x in matvec(A, ker[0]))


def test_solve_identity():
    b = [GaussRat(3), GaussRat(-7)]
    assert solve(M([[1, 0], [0, 1]]), b) == b


def test_solve_no_solution():
    assert solve(M([[0, 0], [0, 0]]), [G1, G0]) is NO_SOLUTION


def test_solve_diagonal():
    x = solve(M([[2, 0], [0, 4]]), [GaussRat(4), GaussRat(8)])
    assert x == [GaussRat(2), GaussRat(2)]


def test_solve_dimension_mismatch():
    import pytest
    with pytest.raises(ValueError):
        solve(M([[1, 0], [0, 1]]), [G1])


def test_rank_plus_nullity_random():
    rng = random.Random(20240811)
    for _ in range(25):
        rs = rng.randint(1, 6)
        cs = rng.randint(1, 6)
        A = ExactMatrix(rs, cs)
        for i in range(rs):
            for j in range(cs):
                if rng.random() < 0.6:
                    A.set(i, j, GaussRat(rng.randint(-4, 4), rng.randint(-2, 2)))
        ker = kernel_basis(A)
        assert rank(A) + len(ker) == cs
        for v in ker:
            assert all(x == G0 for x in matvec(A, v))


def test_solve_consistency_random():
    rng = random.Random(7)
    for _ in range(25):
        rs, cs = rng.randint(1, 5), rng.randint(1, 5)
        A = ExactMatrix(rs, cs)
        for i in range(rs):
            for j in range(cs):
                if rng.random() < 0.7:
                    A.set(i, j, GaussRat(rng.randint(-3, 3)))
        xtrue = [GaussRat(rng.randint(-3, 3)) for _ in range(cs)]
        b = matvec(A, xtrue)
        x = solve(A, b)
        assert x is not NO_SOLUTION
        assert matvec(A, x) == b
        # when no solution is claimed, the augmented rank must grow
        b2 = list(b)
        x2 = solve(A, b2)
        assert x2 is not NO_SOLUTION


def test_no_solution_rank_certificate():
    A = M([[1, 1], [1, 1]])
    b = [G0, G1]
    assert solve(A, b) is NO_SOLUTION
    aug = M([[1, 1, 0], [1, 1, 1]])
    assert rank(aug) > rank(A)


def test_row_space_rank():
    assert row_space_rank([{0: G1}, {0: GaussRat(2)}], 2) == 1
    assert row_space_rank([[1, 0], [1, 1]], 2) == 2


def test_labels_validated():
    import pytest
    with pytest.raises(ValueError):
        ExactMatrix(2, 2, row_labels=["a"])

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpalie.linalg import (
    Matrix,
    NotAnEigenvalue,
    NotSquare,
    Polynomial,
    Subspace,
    char_poly,
    determinant,
    format_fraction,
    generalized_eigenspace,
    is_nilpotent,
    kernel,
    rank,
    rational_eigen,
    rational_roots,
    restrict,
    rref,
    solve_affine,
    squarefree_decomposition,
    to_fraction,
)
from strategies import leibniz_det, mat_vec, matrices, small_rationals

M12 = Matrix.from_rows([[1, 2], [2, 4]], 2)


def test_rref_examples():
    I3 = Matrix.identity(3)
    assert rref(I3) == (I3, (0, 1, 2), 3)
    Z = Matrix.zeros(2, 2)
    m, piv, rk = rref(Z)
    assert m == Z and tuple(piv) == () and rk == 0
    m, piv, rk = rref(M12)
    assert m == Matrix.from_rows([[1, 2], [0, 0]], 2) and tuple(piv) == (0,) and rk == 1


def test_kernel_examples():
    assert kernel(Matrix.identity(2)).is_zero()
    assert kernel(Matrix.zeros(2, 2)).is_full()
    k = kernel(M12)
    assert k == Subspace.span([(-2, 1)], 2)
    assert k.vectors == ((-2, 1),) or k.vectors == ((1, Fraction(-1, 2)),)


def test_solve_affine_examples():
    part, ker = solve_affine(Matrix.identity(2), (3, 5))
    assert part == (3, 5) and ker.is_zero()
    assert solve_affine(M12, (1, 3)) is None
    part, ker = solve_affine(Matrix.from_rows([[0, 0]], 2), (0,))
    assert part == (0, 0) and ker.is_full()


def test_eigen_examples():
    # phi at alpha = 2, beta = 4: char poly t^2 - 1
    m = Matrix.from_rows([[-1, -2], [0, 1]], 2)
    assert char_poly(m) == Polynomial.of(-1, 0, 1)
    assert rational_eigen(m) == [(-1, 1), (1, 1)]
    n = Matrix.from_rows([[0, -1], [0, 0]], 2)
    assert char_poly(n) == Polynomial.of(0, 0, 1)
    assert rational_eigen(n) == [(0, 2)]
    assert generalized_eigenspace(n, 0).is_full()
    assert rational_eigen(Matrix.identity(4)) == [(1, 4)]


def test_eigen_errors_and_unsupported():
    with pytest.raises(NotSquare):
        generalized_eigenspace(Matrix.zeros(2, 3), 0)
    with pytest.raises(NotAnEigenvalue):
        generalized_eigenspace(Matrix.identity(2), 2)
    rot = Matrix.from_rows([[0, -1], [1, 0]], 2)
    assert rational_eigen(rot) is None
    assert rational_eigen(Matrix.from_rows([[0, 2], [1, 0]], 2)) is None  # eigenvalues +-sqrt(2)


def test_rationals_are_exact():
    with pytest.raises(TypeError):
        to_fraction(0.5)
    assert format_fraction(Fraction(-3, 6)) == "-1/2"
    assert format_fraction(Fraction(4, 2)) == "2"


def test_polynomial_helpers():
    p = Polynomial.of(-2, 1) * Polynomial.of(-2, 1) * Polynomial.of(3, 1)  # (t-2)^2 (t+3)
    assert rational_roots(p) == [-3, 2]
    parts = dict((k, f) for f, k in squarefree_decomposition(p))
    assert parts[2] == Polynomial.of(-2, 1) and parts[1] == Polynomial.of(3, 1)
    q, r = divmod(p, Polynomial.of(-2, 1))
    assert r == Polynomial.of() and q * Polynomial.of(-2, 1) == p


def test_restrict():
    m = Matrix.from_rows([[1, 1], [0, 2]], 2)
    assert restrict(m, Subspace.span([(1, 0)], 2)) == Matrix.from_rows([[1]], 1)
    assert restrict(m, Subspace.span([(0, 1)], 2)) is None


# properties -----------------------------------------------------------------


@given(matrices())
def test_rref_idempotent(m):
    r, piv, rk = rref(m)
    assert rref(r)[0] == r
    assert rk == len(piv) == rank(m)


@given(matrices())
def test_kernel_vectors_annihilate_and_rank_nullity(m):
    k = kernel(m)
    for v in k.vectors:
        assert not any(m.apply(v))
    assert k.dim + rank(m) == m.cols


@given(matrices(), st.data())
def test_solve_affine_round_trip(m, data):
    x = data.draw(st.lists(small_rationals, min_size=m.cols, max_size=m.cols))
    b = m.apply(x)
    part, ker = solve_affine(m, b)
    assert m.apply(part) == b
    diff = tuple(a - c for a, c in zip(x, part))
    assert ker.contains(diff)


@settings(max_examples=60, deadline=None)
@given(matrices(max_rows=6, square=True))
def test_cayley_hamilton(m):
    assert char_poly(m).eval_matrix(m).is_zero()


@settings(max_examples=60, deadline=None)
@given(matrices(max_rows=5, square=True))
def test_char_poly_matches_permutation_determinant(m):
    p = char_poly(m)
    n = m.rows
    for x in (-2, 0, 1, 3):
        shifted = [[(x if i == j else 0) - m[i, j] for j in range(n)] for i in range(n)]
        assert p(x) == leibniz_det(shifted)
    assert determinant(m) == leibniz_det([list(m.row(i)) for i in range(n)])


@st.composite
def triangular(draw):
    n = draw(st.integers(1, 5))
    diag = draw(st.lists(st.integers(-2, 2).map(Fraction), min_size=n, max_size=n))
    rows = [[diag[i] if i == j else (draw(small_rationals) if j > i else 0) for j in range(n)] for i in range(n)]
    return Matrix.from_rows(rows, n), diag


@settings(deadline=None)
@given(triangular())
def test_generalized_eigenspaces_fill_space(md):
    m, diag = md
    spectrum = rational_eigen(m)
    assert spectrum is not None
    assert dict(spectrum) == {lam: diag.count(lam) for lam in set(diag)}
    total = Subspace.zero(m.rows)
    for lam, mult in spectrum:
        g = generalized_eigenspace(m, lam)
        assert g.dim == mult
        total = total + g
    assert total.is_full()


@given(matrices(max_rows=4, square=True))
def test_nilpotent_iff_char_poly_is_power(m):
    assert is_nilpotent(m) == (char_poly(m) == Polynomial.monomial(1, m.rows))


@given(st.lists(st.lists(small_rationals, min_size=4, max_size=4), max_size=4),
       st.lists(st.lists(small_rationals, min_size=4, max_size=4), max_size=4))
def test_subspace_dimension_formula(a, b):
    A, B = Subspace.span(a, 4), Subspace.span(b, 4)
    assert (A + B).dim + A.intersect(B).dim == A.dim + B.dim
    for v in A.intersect(B).vectors:
        assert A.contains(v) and B.contains(v)
    assert A <= A + B and A.intersect(B) <= B


@given(matrices(max_rows=4, max_cols=4))
def test_apply_matches_row_dot(m):
    v = tuple(Fraction(k + 1) for k in range(m.cols))
    assert m.apply(v) == mat_vec([m.row(i) for i in range(m.rows)], v)

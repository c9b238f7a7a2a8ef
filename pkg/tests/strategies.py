"""Hypothesis strategies and brute-force oracles shared by the tests."""

from fractions import Fraction
from itertools import permutations

from hypothesis import strategies as st

from cpalie.linalg import Matrix

small_rationals = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


@st.composite
def matrices(draw, max_rows=5, max_cols=5, square=False, min_dim=1):
    r = draw(st.integers(min_dim, max_rows))
    c = r if square else draw(st.integers(min_dim, max_cols))
    rows = draw(st.lists(st.lists(small_rationals, min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix.from_rows(rows, c)


def leibniz_det(rows):
    """Determinant by the permutation expansion; independent of elimination."""
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = Fraction(-1 if inversions % 2 else 1)
        for i, p in enumerate(perm):
            term *= rows[i][p]
            if not term:
                break
        total += term
    return total


def mat_vec(rows, v):
    return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in rows)


def naive_bracket(c, x, y):
    n = len(x)
    out = [Fraction(0)] * n
    for i in range(n):
        for j in range(n):
            if x[i] and y[j]:
                for k in range(n):
                    out[k] += x[i] * y[j] * c[i][j][k]
    return tuple(out)


def naive_product(d, x, y):
    return naive_bracket(d, x, y)


def naive_cpa_ok(c, d):
    """All three axioms over all basis triples, with plain loops over index tables."""
    n = len(c)
    e = [tuple(Fraction(int(i == k)) for k in range(n)) for i in range(n)]
    for i in range(n):
        for j in range(n):
            if d[i][j] != d[j][i]:
                return False
    for x in e:
        for y in e:
            for z in e:
                lhs = naive_product(d, naive_bracket(c, x, y), z)
                rhs = tuple(a - b for a, b in zip(naive_product(d, x, naive_product(d, y, z)),
                                                   naive_product(d, y, naive_product(d, x, z))))
                if lhs != rhs:
                    return False
                lhs = naive_product(d, x, naive_bracket(c, y, z))
                rhs = tuple(a + b for a, b in zip(naive_bracket(c, naive_product(d, x, y), z),
                                                   naive_bracket(c, y, naive_product(d, x, z))))
                if lhs != rhs:
                    return False
    return True

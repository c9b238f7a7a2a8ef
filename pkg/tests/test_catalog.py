import pytest

from cpalie import catalog, lie
from cpalie.linalg import Matrix, Subspace

# brackets of the 6-dimensional parabolic, written out by hand (0-based indices)
EXAMPLE_TABLE = {
    (0, 2): {4: 1}, (0, 3): {1: 1}, (0, 4): {0: -2}, (0, 5): {0: 1},
    (1, 2): {3: -1}, (1, 4): {1: -1}, (1, 5): {1: -1}, (2, 4): {2: 2},
    (2, 5): {2: -1}, (3, 4): {3: 1}, (3, 5): {3: -2},
}


def _elem(n, i, j):
    return Matrix.from_rows([[1 if (r, c) == (i, j) else 0 for c in range(n)] for r in range(n)], n)


def _matrix_of(label, n):
    if label.startswith("h"):
        i = int(label[1:]) - 1
        return _elem(n, i, i) - _elem(n, i + 1, i + 1)
    return _elem(n, int(label[1]) - 1, int(label[2]) - 1)


@pytest.mark.parametrize("key,n", [("sl(2)", 2), ("sl(3)", 3), ("borel_sl(3)", 3), ("borel_sl(4)", 4), ("parabolic_sl(4,1,3)", 4)])
def test_structure_constants_match_matrix_commutators(key, n):
    L = catalog.make(key)
    mats = [_matrix_of(lab, n) for lab in L.basis_labels]
    for i in range(L.dim):
        for j in range(L.dim):
            comm = mats[i] @ mats[j] - mats[j] @ mats[i]
            recon = Matrix.zeros(n, n)
            for k, a in enumerate(L.c[i][j]):
                recon = recon + mats[k].scaled(a)
            assert recon == comm


def test_make_examples():
    B = catalog.make("borel_sl(2)")
    assert B.dim == 2 and B.c[0][1] == (-2, 0)
    E = catalog.make("example_3_6")
    assert E.dim == 6
    got = {(i, j): {k: a for k, a in enumerate(v) if a} for i, j, v in E.nonzero_brackets()}
    assert got == EXAMPLE_TABLE
    A = catalog.make("abelian(3)")
    assert all(not any(v) for row in A.c for v in row)


def test_parabolic_matches_example_basis():
    P = catalog.parabolic_sl(3, [1])
    E = catalog.example_3_6()
    # the basis map is the identity: both list (E12, E13, E21, E23, h1, h2)
    assert P.basis_labels == ("E12", "E13", "E21", "E23", "h1", "h2")
    assert P.c == E.c


@pytest.mark.parametrize("text,expected", [
    ("sl(2)", ("sl", (2,))), ("sl2", ("sl", (2,))), ("borel_sl3", ("borel_sl", (3,))),
    ("parabolic_sl(4,1,3)", ("parabolic_sl", (4, 1, 3))), ("parabolic_sl(4,{1,3})", ("parabolic_sl", (4, 1, 3))),
    ("example_3_6", ("example_3_6", ())), ("heisenberg", ("heisenberg", ())),
])
def test_parse_key(text, expected):
    k = catalog.parse_key(text)
    assert (k.name, k.params) == expected


@pytest.mark.parametrize("bad", ["sl(1)", "borel_sl(1)", "abelian(0)", "parabolic_sl(3)", "parabolic_sl(3,1,2)",
                                 "parabolic_sl(3,3)", "nonsense", "sl(x)", "heisenberg(2)"])
def test_bad_parameters(bad):
    with pytest.raises(catalog.BadParameters):
        catalog.make(bad)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_borel_properties(n):
    B = catalog.borel_sl(n)
    r = lie.structure_report(B)
    assert r.solvable and lie.is_complete(B)
    assert r.metabelian == (n == 2)


@pytest.mark.parametrize("n", [2, 3])
def test_sl_perfect(n):
    r = lie.structure_report(catalog.sl(n))
    assert r.perfect and r.radical.is_zero()


@pytest.mark.parametrize("k", [2, 3, 4])
def test_borel_center_element(k):
    B, z, hs = catalog.borel_center_element(k)
    assert B.dim == k * (k + 1) // 2 + k
    h = [B.basis_vector(i) for i in hs]
    assert lie.bracket(B, h[0], z) == z and lie.bracket(B, h[-1], z) == z
    for hi in h[1:-1]:
        assert not any(lie.bracket(B, hi, z))
    nil = lie.derived_algebra(B)
    Zn = lie.centralizer(B, nil, within=nil)
    assert Zn == Subspace.span([z], B.dim)
    with pytest.raises(catalog.BadParameters):
        catalog.borel_center_element(1)


def test_irreps_are_representations():
    for n in (1, 2, 3, 4):
        assert lie.is_representation(catalog.sl(2), catalog.sl2_irrep(n))


def test_semidirect_perfect_for_nontrivial_module():
    for n in (2, 3):
        r = lie.structure_report(catalog.sl2_semidirect_V(n))
        assert r.perfect and not r.solvable
    assert not lie.structure_report(catalog.sl2_semidirect_V(1)).perfect

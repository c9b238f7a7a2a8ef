from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpalie import catalog, lie
from cpalie.lie import LieAlgebra
from cpalie.linalg import DimensionMismatch, Matrix, Subspace
from strategies import naive_bracket, small_rationals

H = catalog.heisenberg()
SL2 = catalog.sl(2)
B2 = catalog.borel_sl(2)


def test_validate_examples():
    assert lie.validate(H) == []
    assert lie.validate(SL2) == []
    broken = LieAlgebra.from_table(
        "broken", ["e1", "e2", "e3"],
        [[(0, 0, 0), (0, 0, 1), (0, 0, 0)], [(0, 0, 1), (0, 0, 0), (0, 0, 0)], [(0, 0, 0)] * 3],
    )
    bad = lie.validate(broken)
    assert bad and bad[0].kind == "antisymmetry" and bad[0].indices == (0, 1, 2)


def test_jacobi_violation_detected():
    # [e1,e2] = e3, [e2,e3] = e1, [e1,e3] = e1 is antisymmetric but not Lie
    bad = LieAlgebra.from_brackets("bad", ["a", "b", "c"], {(0, 1): (0, 0, 1), (1, 2): (1, 0, 0), (0, 2): (1, 0, 0)}, check=False)
    assert any(v.kind == "jacobi" for v in lie.validate(bad))
    with pytest.raises(lie.InvalidAlgebra):
        LieAlgebra.from_brackets("bad", ["a", "b", "c"], {(0, 1): (0, 0, 1), (1, 2): (1, 0, 0), (0, 2): (1, 0, 0)})


def test_bracket_examples():
    e = [H.basis_vector(i) for i in range(3)]
    assert lie.bracket(H, e[0], e[1]) == (0, 0, 1)
    assert lie.bracket(B2, B2.basis_vector(0), B2.basis_vector(1)) == (-2, 0)
    with pytest.raises(DimensionMismatch):
        lie.bracket(H, (1, 0), (0, 1))


@given(st.lists(small_rationals, min_size=3, max_size=3), st.lists(small_rationals, min_size=3, max_size=3))
def test_bracket_against_naive_and_adjoint(x, y):
    L = SL2
    b = lie.bracket(L, x, y)
    assert b == naive_bracket(L.c, x, y)
    assert lie.adjoint(L, x).apply(y) == b
    assert lie.bracket(L, x, x) == (0, 0, 0)
    assert lie.bracket(L, y, x) == tuple(-a for a in b)


def test_ideal_generated_examples():
    assert lie.ideal_generated(B2, Subspace.zero(2)).is_zero()
    assert lie.ideal_generated(B2, Subspace.span([(1, 0)], 2)) == Subspace.span([(1, 0)], 2)
    e = SL2.basis_labels.index("E12")
    assert lie.ideal_generated(SL2, Subspace.span([SL2.basis_vector(e)], 3)).is_full()


def _closure_oracle(L, vecs):
    """Repeatedly add brackets with basis vectors until nothing new appears."""
    S = Subspace.span(vecs, L.dim)
    while True:
        new = S + Subspace.span([naive_bracket(L.c, L.basis_vector(i), v) for i in range(L.dim) for v in S.vectors], L.dim)
        if new == S:
            return S
        S = new


@pytest.mark.parametrize("key", ["borel_sl(3)", "example_3_6", "heisenberg", "sl2_semidirect_V(2)"])
def test_ideal_generated_matches_closure(key):
    L = catalog.make(key)
    for i in range(L.dim):
        v = [L.basis_vector(i)]
        assert lie.ideal_generated(L, Subspace.span(v, L.dim)) == _closure_oracle(L, v)


def test_structure_reports():
    r = lie.structure_report(H)
    assert r.nilpotent and r.solvable and not r.perfect
    assert r.center == Subspace.span([(0, 0, 1)], 3)
    r = lie.structure_report(SL2)
    assert r.perfect and r.radical.is_zero()
    E = catalog.example_3_6()
    r = lie.structure_report(E)
    assert not r.perfect and lie.derived_algebra(E).dim == 5
    assert r.radical == Subspace.span([(0, 1, 0, 0, 0, 0), (0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 1, 2)], 6)


def test_sl2_killing_form():
    # basis (E12, E21, h1): K(e,f) = 4, K(h,h) = 8
    K = lie.killing_form(SL2)
    assert K == Matrix.from_rows([[0, 4, 0], [4, 0, 0], [0, 0, 8]], 3)


def test_derivations_and_completeness():
    assert lie.is_complete(B2)
    assert not lie.is_complete(H)
    assert lie.derivations(SL2).dim == 3 and lie.is_complete(SL2)
    assert lie.derivations(H).dim == 6  # gl(2) on span{e1,e2} plus maps into the center
    assert lie.derivations(catalog.abelian(3)).dim == 9


@pytest.mark.parametrize("key", ["heisenberg", "sl(2)", "borel_sl(3)", "example_3_6"])
def test_adjoints_are_derivations(key):
    L = catalog.make(key)
    D = lie.derivations(L)
    for i in range(L.dim):
        assert D.contains(lie.adjoint(L, L.basis_vector(i)).flatten())
    for M in lie.derivation_matrices(L):
        assert lie.is_derivation(L, M)


def test_quotient_direct_sum_semidirect():
    Q, proj = lie.quotient(H, lie.center(H))
    assert Q.dim == 2 and lie.structure_report(Q).abelian
    assert lie.is_homomorphism(H, Q, proj)
    with pytest.raises(lie.NotAnIdeal):
        lie.quotient(H, Subspace.span([(1, 0, 0)], 3))
    S = lie.direct_sum(B2, B2)
    assert S.dim == 4 and lie.validate(S) == [] and len(set(S.basis_labels)) == 4
    nat = catalog.sl2_irrep(2)
    V = lie.semidirect(SL2, nat, 2)
    assert V.dim == 5 and lie.validate(V) == [] and lie.structure_report(V).perfect
    with pytest.raises(lie.NotARepresentation):
        lie.semidirect(SL2, [Matrix.identity(2)] * 3, 2)


def test_fix_witness_examples():
    assert lie.fix_witness_ideal(H)[0].is_zero()
    assert lie.fix_witness_ideal(SL2)[0].is_full()
    ideal, wit = lie.fix_witness_ideal(B2)
    assert ideal == Subspace.span([(1, 0)], 2)
    assert wit[0].x == (1, 0) and wit[0].y == (0, Fraction(1, 2))


CATALOG_KEYS = [
    "abelian(2)", "heisenberg", "sl(2)", "sl(3)", "borel_sl(2)", "borel_sl(3)", "borel_sl(4)",
    "example_3_6", "parabolic_sl(4,2)", "sl2_semidirect_V(2)", "sl2_semidirect_V(3)",
]


@pytest.mark.parametrize("key", CATALOG_KEYS)
def test_catalog_invariants(key):
    L = catalog.make(key)
    assert lie.validate(L) == []
    D = lie.derived_algebra(L)
    assert lie.fix_witness_ideal(L)[0] <= D
    rad = lie.radical(L)
    assert lie.is_ideal(L, rad) and lie.is_solvable(L) == rad.is_full()
    if L.dim <= 8 and not rad.is_full():
        Q, _ = lie.quotient(L, rad)
        assert lie.radical(Q).is_zero()


def test_radical_contains_solvable_ideals():
    E = catalog.example_3_6()
    rad = lie.radical(E)
    nil = Subspace.span([(0, 1, 0, 0, 0, 0), (0, 0, 0, 1, 0, 0)], 6)  # span{E13, E23} is an abelian ideal
    assert lie.is_ideal(E, nil) and nil <= rad


def test_series_and_sums():
    B3 = catalog.borel_sl(3)
    for B in (B3, catalog.borel_sl(4)):
        rad = lie.radical(B)
        assert rad.is_full()
    assert lie.is_solvable(lie.direct_sum(B3, H))
    assert [s.dim for s in lie.derived_series(B3)] == [5, 3, 1, 0]
    assert [s.dim for s in lie.lower_central_series(H)] == [3, 1, 0]


@settings(deadline=None, max_examples=30)
@given(st.lists(small_rationals, min_size=3, max_size=3))
def test_is_ideal_of_line_in_heisenberg(v):
    S = Subspace.span([v], 3)
    # a line is an ideal iff it lies in the center or is zero
    assert lie.is_ideal(H, S) == (S <= lie.center(H))

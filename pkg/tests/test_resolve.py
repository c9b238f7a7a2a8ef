from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cpalie.poly import MPoly, from_json, monomial_str
from cpalie.resolve import affine_component, linear_reduce, resolve, split_quadratic

t = [MPoly.var(3, i) for i in range(3)]
ints = st.integers(-3, 3)


def test_poly_arithmetic_and_printing():
    p = t[0] * t[0] - t[0] * 2
    assert str(p) == "t1^2 - 2*t1"
    assert p((2, 0, 0)) == 0 and p((1, 5, 5)) == -1
    assert from_json(p.to_json(), ["t1", "t2", "t3"]) == p
    assert monomial_str((1, 0, 2)) == "t1*t3^2"
    q = p.substitute([MPoly.const(3, 2), t[1], t[2]])
    assert q.is_zero()


def test_split_quadratic_cases():
    f = split_quadratic(t[0] * t[1])
    assert sorted(map(str, f)) == ["t1", "t2"]
    f = split_quadratic(t[0] * t[0] - t[0] * 2)
    assert sorted(map(str, f)) == ["t1", "t1 - 2"]
    f = split_quadratic((t[0] + t[1] - 1) ** 2)
    assert list(map(str, f)) == ["t1 + t2 - 1"]
    assert split_quadratic(t[0] * t[0] + t[1] * t[1]) is None
    assert split_quadratic(t[0] * t[0] - 2) is None
    assert split_quadratic(t[0] * t[1] - t[2] * t[2]) is None


@st.composite
def linear_forms(draw):
    c = [draw(ints) for _ in range(3)]
    assume(any(c))
    return MPoly.linear(c, draw(ints))


@settings(max_examples=80, deadline=None)
@given(linear_forms(), linear_forms())
def test_split_recovers_product_of_linear_forms(a, b):
    p = a * b
    f = split_quadratic(p)
    assert f is not None
    prod = f[0] * f[0] if len(f) == 1 else f[0] * f[1]
    # equal up to a nonzero scalar
    lead = max(p.terms, key=lambda e: (sum(e), e))
    assert prod * p.terms[lead] == p * prod.terms[lead]


@settings(max_examples=60, deadline=None)
@given(linear_forms(), linear_forms(), st.lists(ints, min_size=3, max_size=3))
def test_resolve_product_system(a, b, point):
    res = resolve([a * b], 3)
    assert res.resolved
    # every component point is a zero
    for comp in res.components:
        for pt in comp.sample_points():
            assert (a * b)(pt) == 0
    # rational zeros of a lie in some component
    pt = [Fraction(x) for x in point]
    if a(pt) == 0 or b(pt) == 0:
        assert any(c.contains_point(pt) for c in res.components)


def test_resolve_basic_systems():
    res = resolve([t[0] * t[0] - t[0] * 2], 3)
    assert sorted(c.point[0] for c in res.components) == [0, 2]
    assert all(c.dim == 2 for c in res.components)
    res = resolve([t[0] - 1, t[0] - 2], 3)
    assert res.components == [] and res.resolved
    res = resolve([t[0] * t[0] + t[1] * t[1]], 3)
    assert not res.resolved and res.components == []
    res = resolve([t[0] * t[1], t[1] * t[2], t[0] * t[2]], 3)
    assert res.resolved and sorted(c.dim for c in res.components) == [1, 1, 1]


def test_linear_reduce_exposes_linear_consequences():
    polys = [t[0] * t[0] + t[1], t[0] * t[0] - t[2]]
    red = linear_reduce(polys)
    assert any(p.degree == 1 and str(p) == "t2 + t3" for p in red)


def test_affine_component_json():
    comp = affine_component([t[0] - 2, t[1] + t[2]], 3)
    js = comp.to_json()
    assert js["equations"] == ["t1 - 2 = 0", "t2 + t3 = 0"]
    assert js["dim"] == 1 and js["point"] == ["2", "0", "0"]
    assert affine_component([t[0] - 1, t[0] - 2], 3) is None

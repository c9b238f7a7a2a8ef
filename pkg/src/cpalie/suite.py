"""Named checks that replay the classification results on concrete algebras.

Each case returns a :class:`SuiteCase` whose ``details`` carry every checked
fact, keyed by a short description, plus the data that was compared.  A case
passes only if every check held exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import catalog, cpa, lie
from .io import classification_to_json, matrix_to_json, product_to_json, vector_to_json
from .linalg import Matrix, Subspace, format_fraction, scale

PASS, FAIL, UNSUPPORTED = "pass", "fail", "unsupported"


@dataclass
class SuiteCase:
    id: str
    status: str
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"id": self.id, "status": self.status, "details": self.details}


class _Recorder:
    def __init__(self, claim: str):
        self.checks = {}
        self.data = {"claim": claim}

    def check(self, name: str, ok: bool) -> bool:
        if name in self.checks:
            raise KeyError(f"duplicate check name {name!r}")
        self.checks[name] = bool(ok)
        return bool(ok)

    def case(self, cid: str) -> SuiteCase:
        status = PASS if self.checks and all(self.checks.values()) else FAIL
        return SuiteCase(cid, status, {**self.data, "checks": self.checks})


def heisenberg_a(mu) -> cpa.CPAProduct:
    """``e1.e1 = e2``, ``e1.e2 = mu e3``."""
    return cpa.CPAProduct.from_products(3, {(0, 0): {1: 1}, (0, 1): {2: mu}})


def borel2_product(alpha, beta) -> cpa.CPAProduct:
    """``e1.e2 = alpha e1``, ``e2.e2 = beta e1`` on ``borel_sl(2)`` with basis ``(E12, h1)``."""
    return cpa.CPAProduct.from_products(2, {(0, 1): {0: alpha}, (1, 1): {0: beta}})


def borel2_phi(alpha, beta) -> Matrix:
    a, b = Fraction(alpha), Fraction(beta)
    return Matrix.from_rows([[-a / 2, -b / 2], [0, a / 2]], 2)


# ---------------------------------------------------------------------------


def case_chain_heisenberg() -> SuiteCase:
    r = _Recorder("ideal chain of the A(1) product on the Heisenberg algebra reaches the whole algebra; quotient is nondegenerate")
    H = catalog.heisenberg()
    P = heisenberg_a(1)
    ch = cpa.ideal_chain(H, P)
    want = [
        Subspace.zero(3),
        Subspace.span([(0, 0, 1)], 3),
        Subspace.span([(0, 1, 0), (0, 0, 1)], 3),
        Subspace.full(3),
    ]
    r.check("chain 0 < <e3> < <e2,e3> < h", list(ch.chain) == want)
    r.check("I_inf is the whole algebra", ch.i_infinity.is_full())
    r.check("annihilator is <e3>", ch.annihilator == want[1])
    r.check("annihilator inside I_inf", ch.annihilator <= ch.i_infinity)
    third = lie.lie_power(H, ch.i_infinity, 3)
    r.check("I_inf^[3] . h = 0", all(not any(P.multiply(x, H.basis_vector(j))) for x in third.vectors for j in range(3)))
    r.check("I_inf^[k] inside Ann for the reported index", ch.nilpotency_index is not None
            and lie.lie_power(H, ch.i_infinity, ch.nilpotency_index) <= ch.annihilator)
    r.check("quotient by I_inf nondegenerate", ch.nondegenerate)
    r.data.update({"chain_dims": [s.dim for s in ch.chain], "nilpotency_index": ch.nilpotency_index})
    return r.case("T2_6_chain_heisenberg")


def case_chain_borel_nondegenerate() -> SuiteCase:
    r = _Recorder("the alpha = 2 structure on borel_sl(2) has zero annihilator")
    B = catalog.borel_sl(2)
    ch = cpa.ideal_chain(B, borel2_product(2, 0))
    r.check("annihilator is zero", ch.annihilator.is_zero())
    r.check("I_inf is zero", ch.i_infinity.is_zero())
    r.check("nondegenerate", ch.nondegenerate)
    return r.case("T2_6_chain_borel_nondegenerate")


def case_heisenberg_not_weakly_inner() -> SuiteCase:
    r = _Recorder("A(mu) on the Heisenberg algebra is a CPA structure but not weakly inner")
    H = catalog.heisenberg()
    for mu in (0, 1, -2):
        P = heisenberg_a(mu)
        r.check(f"A({mu}) satisfies the axioms", cpa.verify_cpa(H, P).ok)
        r.check(f"A({mu}) not weakly inner", not cpa.detect_inner(H, P).weakly_inner)
    return r.case("E2_10_heisenberg_not_weakly_inner")


def case_borel_classification() -> SuiteCase:
    r = _Recorder("every CPA structure on borel_sl(2) is inner: e1.e2 = alpha e1, e2.e2 = beta e1 with alpha(alpha - 2) = 0")
    B = catalog.borel_sl(2)
    general = cpa.classify(B, "general")
    inner = cpa.classify(B, "inner")
    # the parameters are t1 (e1.e1), t2 = alpha (e1.e2), t3 = beta (e2.e2)
    r.check("linear basis is e1.e1, e1.e2, e2.e2 (coefficient e1)", [P for P in inner.linear_basis] == [
        cpa.CPAProduct.from_products(2, {(0, 0): {0: 1}}), borel2_product(1, 0), borel2_product(0, 1)])
    r.check("kind is ComponentUnion", inner.kind == cpa.COMPONENT_UNION)
    r.check("two components", len(inner.components) == 2)
    fixed = sorted(c.point[1] for c in inner.components)
    r.check("alpha = 0 and alpha = 2", fixed == [0, 2])
    r.check("beta free and e1.e1 = 0 on each component", all(
        c.dim == 1 and c.directions.vectors == ((0, 0, 1),) and c.point[0] == 0 for c in inner.components))
    nf = [str(p) for p in inner.normal_form]
    r.check("residual normal form t1, alpha^2 - 2 alpha", nf == ["t1", "t2^2 - 2*t2"])
    phi_ok = True
    for c in inner.components:
        for t in c.sample_points():
            phi_ok &= inner.phi_at(t) == borel2_phi(t[1], t[2])
    r.check("phi = 1/2 [[-alpha, -beta], [0, alpha]] on sampled points", phi_ok)
    r.check("general and inner agree", general.components == inner.components and general.kind == inner.kind)
    r.data["classification"] = classification_to_json(inner)
    return r.case("E2_16_borel_classification")


def _decompose_case(cid, alpha, beta, claim, expect_n_full):
    r = _Recorder(claim)
    B = catalog.borel_sl(2)
    phi = borel2_phi(alpha, beta)
    try:
        d = cpa.phi_decompose(B, phi)
    except cpa.UnsupportedSpectrum:
        return SuiteCase(cid, UNSUPPORTED, {"claim": claim})
    for name, ok in sorted(d.checks.items()):
        r.check(name, ok)
    if expect_n_full:
        r.check("n_part is the whole algebra", d.n_part.is_full())
        r.check("h_part is zero", d.h_part.is_zero())
        r.check("phi^2 = 0", (phi @ phi).is_zero())
    else:
        r.check("n_part is zero", d.n_part.is_zero())
        r.check("h_part is the whole algebra", d.h_part.is_full())
        r.check("phi^2 = 1", phi @ phi == Matrix.identity(2))
        r.check("algebra is metabelian", lie.structure_report(B).metabelian)
    r.data["eigenvalues"] = [format_fraction(x) for x in d.eigenvalues]
    r.data["phi"] = matrix_to_json(phi)["matrix"]
    return r.case(cid)


def case_decompose_alpha0() -> SuiteCase:
    return _decompose_case("T2_14_decompose_alpha0", 0, 2, "alpha = 0: phi nilpotent, n = whole algebra", True)


def case_decompose_alpha2() -> SuiteCase:
    return _decompose_case("T2_14_decompose_alpha2", 2, 0, "alpha = 2: phi invertible, h = whole algebra and metabelian", False)


def _inner_structures():
    """(label, L, P, phi) for every inner structure the suite touches."""
    B2 = catalog.borel_sl(2)
    out = [
        ("borel_sl(2) alpha=2", B2, borel2_product(2, 0), borel2_phi(2, 0)),
        ("borel_sl(2) alpha=0 beta=2", B2, borel2_product(0, 2), borel2_phi(0, 2)),
        ("borel_sl(2) alpha=2 beta=3", B2, borel2_product(2, 3), borel2_phi(2, 3)),
    ]
    for k in (2, 3):
        b, z, _ = catalog.borel_center_element(k)
        P = cpa.central_z_product(b, None, z)
        w = cpa.detect_inner(b, P)
        out.append((f"{b.name} central z", b, P, w.phi))
    return out


def case_inner_ideal_checks() -> SuiteCase:
    r = _Recorder("for inner structures, Lie ideals are product ideals and the chain ideals are phi-invariant")
    for label, L, P, phi in _inner_structures():
        r.check(f"{label}: phi gives the product", phi is not None and cpa.inner_product(L, phi) == P)
        res = cpa.inner_ideal_checks(L, P, phi)
        for name, ok in sorted(res.items()):
            r.check(f"{label}: {name}", ok)
    return r.case("L2_11_ideal_checks")


def case_nondegenerate_metabelian() -> SuiteCase:
    r = _Recorder("nondegenerate inner structures only occur on metabelian algebras")
    seen = 0
    for label, L, P, phi in _inner_structures():
        if cpa.ideal_chain(L, P).annihilator.is_zero():
            seen += 1
            r.check(f"{label}: metabelian", lie.structure_report(L).metabelian)
    r.check("at least one nondegenerate instance", seen > 0)
    return r.case("C2_15_nondegenerate_metabelian")


def case_semisimple_trivial() -> SuiteCase:
    r = _Recorder("semisimple and perfect algebras carry only the zero product")
    for key in ("sl(2)", "sl(3)"):
        L = catalog.make(key)
        c = cpa.classify(L, "inner")
        r.check(f"{key} inner: Trivial", c.kind == cpa.TRIVIAL)
        r.data[f"{key} inner linear dim"] = c.nparams
    c = cpa.classify(catalog.sl(2), "general")
    r.check("sl(2) general: Trivial", c.kind == cpa.TRIVIAL)
    c = cpa.classify(catalog.sl2_semidirect_V(2), "general")
    r.check("sl2_semidirect_V(2) general: Trivial", c.kind == cpa.TRIVIAL)
    return r.case("P3_1_semisimple_trivial")


def case_example_3_6() -> SuiteCase:
    r = _Recorder("the 6-dimensional parabolic of sl(3) is not perfect yet has only the zero product")
    L = catalog.example_3_6()
    D = lie.derived_algebra(L)
    r.check("[g,g] has dimension 5", D.dim == 5)
    r.check("Z([g,g]) = 0", cpa.center_of_ideal(L, D).is_zero())
    r.check("cocycle space is zero", cpa.cocycle_space(L, D) == [])
    c = cpa.classify(L, "general")
    r.check("general: Trivial", c.kind == cpa.TRIVIAL)
    r.check("inner: Trivial", cpa.classify(L, "inner").kind == cpa.TRIVIAL)
    p = Subspace.span([L.basis_vector(i) for i in range(5)], 6)
    r.check("p = <e1..e5> is a perfect subalgebra", lie.is_subalgebra(L, p) and lie.bracket_spaces(L, p, p) == p)
    r.check("p . g = 0 for every classified product", all(
        cpa.product_of_spaces(P, p, Subspace.full(6)).is_zero() for P in c.sample_products()))
    return r.case("T3_4_example_3_6")


def case_constructive() -> SuiteCase:
    r = _Recorder("solvable and non-perfect algebras with center admit nonzero products")
    B = catalog.borel_sl(2)
    P, lam = cpa.lie_eigenfunctional_product(B, (1, 0))
    r.check("borel_sl(2), v = e1: lambda = (0, 2)", lam == (0, 2))
    r.check("borel_sl(2), v = e1: e2.e2 = 4 e1 only", P == cpa.CPAProduct.from_products(2, {(1, 1): {0: 4}}))
    r.check("eigenfunctional product verifies", cpa.verify_cpa(B, P).ok)
    r.check("eigenfunctional product nil-inner", cpa.detect_inner(B, P).nil_inner)
    H = catalog.heisenberg()
    cc = cpa.center_construction(H)
    r.check("heisenberg: first case, e1.e1 = e3", cc.case == 1 and cc.product == cpa.CPAProduct.from_products(3, {(0, 0): {2: 1}}))
    A2 = catalog.abelian(2)
    ca = cpa.center_construction(A2)
    r.check("abelian(2): second case, e1.e1 = e1", ca.case == 2 and ca.product == cpa.CPAProduct.from_products(2, {(0, 0): {0: 1}}))
    for label, L, c in (("heisenberg", H, cc), ("abelian(2)", A2, ca)):
        r.check(f"{label}: nonzero", not c.product.is_zero())
        r.check(f"{label}: verifies", cpa.verify_cpa(L, c.product).ok)
        r.check(f"{label}: associative", cpa.is_associative(c.product))
    return r.case("C3_constructive_existence")


def case_cocycles() -> SuiteCase:
    r = _Recorder("cocycles into the center of an ideal with abelian quotient give associative nil-inner products")
    for n in (3, 4):
        L = catalog.borel_sl(n)
        I = lie.derived_algebra(L)
        basis = cpa.cocycle_space(L, I)
        r.check(f"borel_sl({n}): cocycle space has dimension 1", len(basis) == 1)
        for f in basis:
            P = cpa.cocycle_product(L, I, f)
            r.check(f"borel_sl({n}): verifies", cpa.verify_cpa(L, P).ok)
            r.check(f"borel_sl({n}): triple products vanish", cpa.triple_products_vanish(P))
            r.check(f"borel_sl({n}): associative", cpa.is_associative(P))
            r.check(f"borel_sl({n}): nil-inner", cpa.detect_inner(L, P).nil_inner)
    return r.case("P4_1_cocycle_products")


def case_fix_ideals() -> SuiteCase:
    r = _Recorder("the fix ideal is everything exactly for perfect algebras, zero for nilpotent ones, and [p,p] for parabolics")
    for key in ("sl(2)", "sl(3)", "sl2_semidirect_V(2)"):
        L = catalog.make(key)
        r.check(f"{key}: witness ideal is everything", lie.fix_witness_ideal(L)[0].is_full())
    for key in ("heisenberg", "abelian(3)"):
        L = catalog.make(key)
        r.check(f"{key}: no fixed vectors", lie.fix_witness_ideal(L)[0].is_zero())
    for key in ("borel_sl(2)", "borel_sl(3)", "borel_sl(4)", "example_3_6", "parabolic_sl(4,1,3)"):
        L = catalog.make(key)
        ideal, wit = lie.fix_witness_ideal(L)
        D = lie.derived_algebra(L)
        r.check(f"{key}: witnesses satisfy [y,x] = x", all(lie.bracket(L, w.y, w.x) == w.x for w in wit))
        r.check(f"{key}: witness ideal equals [p,p]", ideal == D)
        r.check(f"{key}: not everything", not ideal.is_full())
    return r.case("L4_4_L4_5_fix_ideals")


def case_borel_family() -> SuiteCase:
    r = _Recorder("on borel_sl(n) every CPA product is [[z,x],y] for z in the center of the nilradical")
    for n in (3, 4):
        k = n - 1
        L, z, hs = catalog.borel_center_element(k)
        I = lie.derived_algebra(L)
        Zi = cpa.center_of_ideal(L, I)
        r.check(f"borel_sl({n}): dim Z([b,b]) = 1", Zi.dim == 1 and Zi.contains(z))
        c = cpa.classify(L, "inner")
        r.check(f"borel_sl({n}): variety dimension 1", c.dimension == 1 and c.kind in (cpa.FULL_LINEAR_SPACE, cpa.COMPONENT_UNION))
        Pz = cpa.central_z_product(L, None, z)
        r.check(f"borel_sl({n}): every solution is central_z_product(s z)", all(
            P == cpa.central_z_product(L, None, scale(_coefficient(P, Pz), z)) for P in c.sample_products()))
        h1, hk = hs[0], hs[-1]
        want = {(h1, h1): z, (hk, hk): z, (h1, hk): z}
        table = cpa.CPAProduct.from_products(L.dim, want)
        r.check(f"borel_sl({n}): h1.h1 = hk.hk = h1.hk = z, all else 0", Pz == table)
        r.check(f"borel_sl({n}): general method agrees", cpa.classify(L, "general").components == c.components)
        r.data[f"borel_sl({n}) table"] = product_to_json(Pz)
        r.data[f"borel_sl({n}) z"] = vector_to_json(z)
    return r.case("T4_7_borel_family")


def _coefficient(P: cpa.CPAProduct, base: cpa.CPAProduct) -> Fraction:
    """``s`` with ``P = s * base`` (``base`` nonzero); returns 0 if no such ``s`` exists."""
    v, w = P.to_vector(), base.to_vector()
    k = next(i for i, a in enumerate(w) if a)
    s = v[k] / w[k]
    return s if P == base.scaled(s) else Fraction(0)


def case_componentwise() -> SuiteCase:
    r = _Recorder("componentwise products on direct sums are CPA structures with q_i . q_j inside q_i and q_j")
    B = catalog.borel_sl(2)
    H = catalog.heisenberg()
    pairs = [
        ("borel(alpha=2) + borel(alpha=2)", B, borel2_product(2, 0), B, borel2_product(2, 0)),
        ("borel(alpha=2) + heisenberg A(1)", B, borel2_product(2, 0), H, heisenberg_a(1)),
        ("zero + zero", B, cpa.CPAProduct.zero(2), H, cpa.CPAProduct.zero(3)),
    ]
    for label, L1, P1, L2, P2 in pairs:
        L, P = cpa.componentwise_product(L1, P1, L2, P2)
        r.check(f"{label}: verifies", cpa.verify_cpa(L, P).ok)
        r.check(f"{label}: containment", cpa.componentwise_containment(P, L1.dim, L2.dim))
        if P1.is_zero() and P2.is_zero():
            r.check(f"{label}: zero product", P.is_zero())
    return r.case("P_componentwise")


def case_solver_consistency() -> SuiteCase:
    r = _Recorder("general and inner classification agree on complete catalog algebras of dimension <= 4")
    for key in ("sl(2)", "borel_sl(2)"):
        L = catalog.make(key)
        if not lie.is_complete(L) or L.dim > 4:
            continue
        g, i = cpa.classify(L, "general"), cpa.classify(L, "inner")
        r.check(f"{key}: same kind", g.kind == i.kind)
        r.check(f"{key}: same dimension", g.dimension == i.dimension)
    return r.case("S_solver_consistency")


def case_round_trip() -> SuiteCase:
    r = _Recorder("every product emitted by a solver or construction satisfies the axioms")
    keys = ("abelian(1)", "sl(2)", "borel_sl(2)", "borel_sl(3)", "example_3_6", "sl2_semidirect_V(2)")
    for key in keys:
        L = catalog.make(key)
        c = cpa.classify(L, "general")
        r.check(f"{key}: classified samples verify", all(cpa.verify_cpa(L, P).ok for P in c.sample_products()))
        r.check(f"{key}: linear basis satisfies the linear axioms", all(
            cpa.verify_cpa(L, P).eq4_ok and cpa.verify_cpa(L, P).eq6_ok for P in c.linear_basis))
    for label, L, P, _ in _inner_structures():
        r.check(f"{label}: verifies", cpa.verify_cpa(L, P).ok)
    return r.case("R_round_trip")


CASES = dict(
    [
        ("C2_15_nondegenerate_metabelian", case_nondegenerate_metabelian),
        ("C3_constructive_existence", case_constructive),
        ("E2_10_heisenberg_not_weakly_inner", case_heisenberg_not_weakly_inner),
        ("E2_16_borel_classification", case_borel_classification),
        ("L2_11_ideal_checks", case_inner_ideal_checks),
        ("L4_4_L4_5_fix_ideals", case_fix_ideals),
        ("P3_1_semisimple_trivial", case_semisimple_trivial),
        ("P4_1_cocycle_products", case_cocycles),
        ("P_componentwise", case_componentwise),
        ("R_round_trip", case_round_trip),
        ("S_solver_consistency", case_solver_consistency),
        ("T2_14_decompose_alpha0", case_decompose_alpha0),
        ("T2_14_decompose_alpha2", case_decompose_alpha2),
        ("T2_6_chain_borel_nondegenerate", case_chain_borel_nondegenerate),
        ("T2_6_chain_heisenberg", case_chain_heisenberg),
        ("T3_4_example_3_6", case_example_3_6),
        ("T4_7_borel_family", case_borel_family),
    ]
)


def run(case_id: str = None) -> list:
    """Run all cases (or one) in id order; an exception inside a case is a failure."""
    ids = sorted(CASES) if case_id is None else [case_id]
    out = []
    for cid in ids:
        if cid not in CASES:
            raise KeyError(cid)
        try:
            res = CASES[cid]()
        except cpa.UnsupportedSpectrum as exc:
            res = SuiteCase(cid, UNSUPPORTED, {"reason": str(exc)})
        except Exception as exc:  # noqa: BLE001 - a crash is reported, not raised
            res = SuiteCase(cid, FAIL, {"error": f"{type(exc).__name__}: {exc}"})
        if res.id != cid:
            raise AssertionError(f"case {cid} reported id {res.id}")
        out.append(res)
    return out

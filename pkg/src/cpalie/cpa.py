"""Commutative post-Lie algebra (CPA) structures on a Lie algebra.

A CPA product ``x.y`` is commutative and satisfies, for all ``x, y, z``,

    [x, y].z = x.(y.z) - y.(x.z)            (left multiplications form a representation)
    x.[y, z] = [x.y, z] + [y, x.z]          (left multiplications are derivations)

The second identity is linear in the product and the first quadratic, so the
general solver first computes the linear solution space and then resolves the
quadratic residuals on it.  On a complete Lie algebra every CPA product has the
form ``x.y = [phi(x), y]`` and the inner solver works with ``phi`` instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import lie
from .lie import LieAlgebra, bracket, bracket_spaces, center, centralizer, derived_algebra
from .linalg import (
    ZERO,
    DimensionMismatch,
    Matrix,
    Subspace,
    Vector,
    _rref_rows,
    add,
    annihilator as functionals_vanishing_on,
    combination,
    determinant,
    dot,
    generalized_eigenspace,
    is_nilpotent,
    is_zero_vector,
    nullspace_rows,
    rational_eigen,
    restrict,
    scale,
    solve_affine,
    sub,
    to_fraction,
    vector,
    zero_vector,
)
from .poly import MPoly
from .resolve import _substitution, affine_component, linear_reduce, resolve


class NotACPA(ValueError):
    pass


class NotATwoSidedIdeal(ValueError):
    pass


class NotComplete(ValueError):
    pass


class UnsupportedSpectrum(ValueError):
    pass


class QuotientNotAbelian(ValueError):
    pass


class NotACocycle(ValueError):
    pass


class NotCentralInI(ValueError):
    pass


class NotCommonEigenvector(ValueError):
    pass


class NotSolvable(ValueError):
    pass


class IsPerfect(ValueError):
    pass


class TrivialCenter(ValueError):
    pass


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CPAProduct:
    """``d[i][j]`` is the coordinate vector of ``e_i . e_j``; always symmetric."""

    d: tuple

    def __post_init__(self):
        n = len(self.d)
        for i in range(n):
            if len(self.d[i]) != n or any(len(v) != n for v in self.d[i]):
                raise DimensionMismatch("product table is not n x n x n")
            for j in range(i + 1, n):
                if self.d[i][j] != self.d[j][i]:
                    raise ValueError(f"product table is not symmetric at ({i}, {j})")

    @property
    def dim(self) -> int:
        return len(self.d)

    @classmethod
    def zero(cls, n: int) -> "CPAProduct":
        z = zero_vector(n)
        return cls(tuple(tuple(z for _ in range(n)) for _ in range(n)))

    @classmethod
    def from_products(cls, n: int, products) -> "CPAProduct":
        """From ``{(i, j): vector-or-{k: coeff}}``; the symmetric entry is implied."""
        table = [[zero_vector(n) for _ in range(n)] for _ in range(n)]
        seen = {}
        for (i, j), val in products.items():
            if not (0 <= i < n and 0 <= j < n):
                raise DimensionMismatch(f"product index ({i}, {j}) out of range")
            if isinstance(val, dict):
                v = [ZERO] * n
                for k, a in val.items():
                    v[int(k)] = to_fraction(a)
                v = tuple(v)
            else:
                v = vector(val)
            if len(v) != n:
                raise DimensionMismatch("product value has the wrong length")
            key = (min(i, j), max(i, j))
            if key in seen and seen[key] != v:
                raise ValueError(f"conflicting values for product {key}")
            seen[key] = v
            table[i][j] = table[j][i] = v
        return cls(tuple(tuple(r) for r in table))

    @classmethod
    def from_function(cls, n: int, f) -> "CPAProduct":
        """``f(i, j)`` gives ``e_i . e_j``; evaluated for ``i <= j`` only."""
        return cls.from_products(n, {(i, j): f(i, j) for i in range(n) for j in range(i, n)})

    @classmethod
    def from_vector(cls, n: int, v: Sequence) -> "CPAProduct":
        it = iter(v)
        prods = {}
        for i in range(n):
            for j in range(i, n):
                prods[(i, j)] = tuple(next(it) for _ in range(n))
        return cls.from_products(n, prods)

    def to_vector(self) -> Vector:
        """Coordinates ``(i, j, k)`` for ``i <= j`` in lexicographic order."""
        n = self.dim
        return tuple(a for i in range(n) for j in range(i, n) for a in self.d[i][j])

    def multiply(self, x: Sequence, y: Sequence) -> Vector:
        n = self.dim
        out = [ZERO] * n
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        ab = a * b
                        for k, c in enumerate(self.d[i][j]):
                            if c:
                                out[k] += ab * c
        return tuple(out)

    def left(self, x: Sequence) -> Matrix:
        """Matrix of ``L(x): y -> x . y``."""
        n = self.dim
        return Matrix.from_columns([self.multiply(x, _unit(n, j)) for j in range(n)], n)

    def left_basis(self) -> list:
        n = self.dim
        return [Matrix.from_columns([self.d[i][j] for j in range(n)], n) for i in range(n)]

    def is_zero(self) -> bool:
        return not any(any(v) for row in self.d for v in row)

    def __add__(self, other: "CPAProduct") -> "CPAProduct":
        return CPAProduct(tuple(tuple(add(a, b) for a, b in zip(r1, r2)) for r1, r2 in zip(self.d, other.d)))

    def scaled(self, c) -> "CPAProduct":
        c = to_fraction(c)
        return CPAProduct(tuple(tuple(scale(c, v) for v in row) for row in self.d))

    def nonzero_products(self):
        n = self.dim
        return [(i, j, self.d[i][j]) for i in range(n) for j in range(i, n) if any(self.d[i][j])]


def _unit(n, i):
    return tuple(Fraction(1) if k == i else ZERO for k in range(n))


def combine(coeffs: Sequence, products: Sequence[CPAProduct], n: int) -> CPAProduct:
    if not products:
        return CPAProduct.zero(n)
    vec = combination([to_fraction(c) for c in coeffs], [p.to_vector() for p in products], len(products[0].to_vector()))
    return CPAProduct.from_vector(n, vec)


def inner_product(L: LieAlgebra, phi: Matrix) -> CPAProduct:
    """``x . y = [phi(x), y]`` (no symmetry check beyond the constructor)."""
    n = L.dim
    table = [[bracket(L, phi.column(i), L.basis_vector(j)) for j in range(n)] for i in range(n)]
    return CPAProduct(tuple(tuple(r) for r in table))


def try_inner_product(L: LieAlgebra, phi: Matrix) -> Optional[CPAProduct]:
    try:
        return inner_product(L, phi)
    except ValueError:
        return None


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AxiomViolation:
    equation: int
    triple: tuple
    residual: Vector


@dataclass(frozen=True)
class AxiomReport:
    eq4_ok: bool
    eq5_ok: bool
    eq6_ok: bool
    first_violation: Optional[AxiomViolation] = None

    @property
    def ok(self) -> bool:
        return self.eq4_ok and self.eq5_ok and self.eq6_ok


def _check_dims(L: LieAlgebra, P: CPAProduct) -> None:
    if L.dim != P.dim:
        raise DimensionMismatch(f"algebra has dimension {L.dim}, product {P.dim}")


def verify_cpa(L: LieAlgebra, P: CPAProduct) -> AxiomReport:
    """Exhaustive check of commutativity and both CPA identities over basis triples."""
    _check_dims(L, P)
    n = L.dim
    d = P.d
    left = P.left_basis()
    found = {}

    def note(eq, triple, res):
        found.setdefault(eq, AxiomViolation(eq, triple, res))

    for i in range(n):
        for j in range(n):
            if d[i][j] != d[j][i]:
                note(4, (i, j, None), sub(d[i][j], d[j][i]))
                break
        if 4 in found:
            break
    # [e_i, e_j].e_k - e_i.(e_j.e_k) + e_j.(e_i.e_k)
    for i in range(n):
        for j in range(n):
            cij = L.c[i][j]
            for k in range(n):
                lhs = combination(cij, [d[m][k] for m in range(n)], n)
                res = sub(sub(lhs, left[i].apply(d[j][k])), scale(-1, left[j].apply(d[i][k])))
                if any(res):
                    note(5, (i, j, k), res)
                    break
            if 5 in found:
                break
        if 5 in found:
            break
    # e_i.[e_j, e_k] - [e_i.e_j, e_k] - [e_j, e_i.e_k]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                res = sub(
                    sub(left[i].apply(L.c[j][k]), bracket(L, d[i][j], L.basis_vector(k))),
                    bracket(L, L.basis_vector(j), d[i][k]),
                )
                if any(res):
                    note(6, (i, j, k), res)
                    break
            if 6 in found:
                break
        if 6 in found:
            break
    first = found[min(found)] if found else None
    return AxiomReport(4 not in found, 5 not in found, 6 not in found, first)


def require_cpa(L: LieAlgebra, P: CPAProduct) -> None:
    rep = verify_cpa(L, P)
    if not rep.ok:
        raise NotACPA(f"axiom ({rep.first_violation.equation}) fails at basis triple {rep.first_violation.triple}")


def is_associative(P: CPAProduct) -> bool:
    n = P.dim
    left = P.left_basis()
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if P.multiply(P.d[i][j], _unit(n, k)) != left[i].apply(P.d[j][k]):
                    return False
    return True


def triple_products_vanish(P: CPAProduct) -> bool:
    """``x.(y.z) = 0`` for all basis triples."""
    left = P.left_basis()
    n = P.dim
    return all(not any(left[i].apply(P.d[j][k])) for i in range(n) for j in range(n) for k in range(n))


def is_product_ideal(P: CPAProduct, S: Subspace) -> bool:
    return all(S.contains(P.multiply(_unit(P.dim, i), s)) for i in range(P.dim) for s in S.vectors)


def product_of_spaces(P: CPAProduct, A: Subspace, B: Subspace) -> Subspace:
    return Subspace.span([P.multiply(a, b) for a in A.vectors for b in B.vectors], P.dim)


# ---------------------------------------------------------------------------
# annihilator and the ideal chain
# ---------------------------------------------------------------------------


def annihilator(L: LieAlgebra, P: CPAProduct) -> Subspace:
    """``{x : x . A = 0}``, the kernel of ``x -> L(x)``."""
    _check_dims(L, P)
    return _preimage_chain_step(P, Subspace.zero(P.dim))


def _preimage_chain_step(P: CPAProduct, prev: Subspace) -> Subspace:
    """``{x : x . e_j in prev for all j}``."""
    n = P.dim
    eqs = functionals_vanishing_on(prev).vectors
    rows = []
    for j in range(n):
        for w in eqs:
            row = [dot(w, P.d[i][j]) for i in range(n)]
            if any(row):
                rows.append(row)
    return nullspace_rows(rows, n)


@dataclass(frozen=True)
class ChainResult:
    chain: tuple
    i_infinity: Subspace
    k_stable: int
    annihilator: Subspace
    nondegenerate: bool  # the induced structure on L / I_infinity has zero annihilator
    nilpotency_index: Optional[int]


def ideal_chain(L: LieAlgebra, P: CPAProduct) -> ChainResult:
    """``I_0 = 0``, ``I_n = {x : x . A in I_{n-1}}`` until it stabilizes."""
    require_cpa(L, P)
    n = L.dim
    chain = [Subspace.zero(n)]
    while True:
        nxt = _preimage_chain_step(P, chain[-1])
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    i_inf = chain[-1]
    ann = chain[1] if len(chain) > 1 else chain[0]
    _, qP = quotient_cpa(L, P, i_inf)
    nondeg = _preimage_chain_step(qP, Subspace.zero(qP.dim)).is_zero()
    index = None
    power = i_inf
    for k in range(1, n + 2):
        if power <= ann:
            index = k
            break
        nxt = bracket_spaces(L, i_inf, power)
        if nxt == power:
            break
        power = nxt
    return ChainResult(tuple(chain), i_inf, len(chain) - 1, ann, nondeg, index)


def quotient_cpa(L: LieAlgebra, P: CPAProduct, I: Subspace):
    """Induced ``(L/I, product)``; the quotient basis matches :func:`lie.quotient`."""
    _check_dims(L, P)
    if not lie.is_ideal(L, I) or not is_product_ideal(P, I):
        raise NotATwoSidedIdeal("subspace is not an ideal for both the bracket and the product")
    Q, proj = lie.quotient(L, I)
    keep = I.complement_indices()
    prods = {}
    for a in range(len(keep)):
        for b in range(a, len(keep)):
            prods[(a, b)] = proj.apply(P.d[keep[a]][keep[b]])
    return Q, CPAProduct.from_products(len(keep), prods)


# ---------------------------------------------------------------------------
# linear part and quadratic residuals
# ---------------------------------------------------------------------------


def _canonical_products(n: int, vectors: list, extra: Optional[list] = None):
    """Canonical (RREF) basis of a product space, optionally carrying attached data.

    ``extra[k]`` rides along with ``vectors[k]``; the product part is assumed injective.
    """
    width = len(vectors[0]) if vectors else n * n * (n + 1) // 2
    if extra is None:
        return [CPAProduct.from_vector(n, v) for v in Subspace.span(vectors, width).vectors], None
    rows = [list(v) + list(x) for v, x in zip(vectors, extra)]
    red, pivots = _rref_rows(rows, len(rows[0]) if rows else 0)
    if any(p >= width for p in pivots):
        raise ValueError("attached data is not determined by the products")
    return (
        [CPAProduct.from_vector(n, r[:width]) for r in red],
        [tuple(r[width:]) for r in red],
    )


def solve_linear_part(L: LieAlgebra) -> list:
    """Basis of symmetric products whose left multiplications are all derivations.

    Every such ``L(e_i)`` is a combination of a basis of ``Der(L)``, so the
    unknowns are those coefficients and the remaining constraint is symmetry.
    """
    bad = lie.validate(L)
    if bad:
        raise lie.InvalidAlgebra(str(bad[0]))
    n = L.dim
    ders = lie.derivation_matrices(L)
    m = len(ders)
    cols = [[D.column(j) for j in range(n)] for D in ders]  # cols[a][j] = D_a e_j
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                row = [ZERO] * (n * m)
                for a in range(m):
                    row[i * m + a] += cols[a][j][k]
                    row[j * m + a] -= cols[a][i][k]
                if any(row):
                    rows.append(row)
    sols = nullspace_rows(rows, n * m).vectors
    vecs = []
    for s in sols:
        def prod(i, j, s=s):
            return combination([s[i * m + a] for a in range(m)], [cols[a][j] for a in range(m)], n)
        vecs.append(CPAProduct.from_function(n, prod).to_vector())
    return _canonical_products(n, vecs)[0]


def quadratic_residuals(L: LieAlgebra, basis: Sequence[CPAProduct]) -> list:
    """``[e_i, e_j].e_k - e_i.(e_j.e_k) + e_j.(e_i.e_k)`` for ``i < j``, each ``k`` and coordinate,
    as polynomials in the coefficients ``t_a`` of ``sum t_a basis[a]``; zero polynomials dropped.
    """
    n, dpar = L.dim, len(basis)
    lefts = [P.left_basis() for P in basis]
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            cij = L.c[i][j]
            for k in range(n):
                lin = [combination(cij, [P.d[m][k] for m in range(n)], n) for P in basis]
                quad = {}
                for a in range(dpar):
                    for b in range(dpar):
                        v = sub(lefts[a][i].apply(basis[b].d[j][k]), lefts[a][j].apply(basis[b].d[i][k]))
                        if any(v):
                            quad[(a, b)] = v
                for r in range(n):
                    terms = {}
                    for a in range(dpar):
                        if lin[a][r]:
                            e = [0] * dpar
                            e[a] = 1
                            terms[tuple(e)] = terms.get(tuple(e), ZERO) + lin[a][r]
                    for (a, b), v in quad.items():
                        if v[r]:
                            e = [0] * dpar
                            e[a] += 1
                            e[b] += 1
                            terms[tuple(e)] = terms.get(tuple(e), ZERO) - v[r]
                    p = MPoly(dpar, terms)
                    if not p.is_zero():
                        out.append(p)
    return out


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

TRIVIAL = "Trivial"
FULL_LINEAR_SPACE = "FullLinearSpace"
COMPONENT_UNION = "ComponentUnion"
UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class Classification:
    algebra: str
    dim: int
    method: str
    kind: str
    linear_basis: tuple
    residuals: tuple
    components: tuple
    phi_basis: Optional[tuple] = None
    unresolved: tuple = ()
    normal_form: tuple = ()

    @property
    def nparams(self) -> int:
        return len(self.linear_basis)

    @property
    def dimension(self) -> int:
        """Largest component dimension (``-1`` if nothing was resolved)."""
        return max((c.dim for c in self.components), default=-1)

    def product_at(self, t: Sequence) -> CPAProduct:
        return combine(t, self.linear_basis, self.dim)

    def phi_at(self, t: Sequence) -> Optional[Matrix]:
        if self.phi_basis is None:
            return None
        n = self.dim
        flat = combination([to_fraction(x) for x in t], [m.flatten() for m in self.phi_basis], n * n)
        return lie.matrix_from_flat(flat, n)

    def sample_products(self) -> list:
        return [self.product_at(t) for c in self.components for t in c.sample_points()]


def residual_normal_form(polys: Sequence[MPoly], nvars: int) -> tuple:
    """Linear consequences, then the remaining residuals with those substituted (all monic)."""
    reduced = linear_reduce(polys)
    comp = affine_component([], nvars)
    while True:
        linear = [p for p in reduced if p.degree == 1]
        if not linear:
            break
        comp = affine_component(comp.equation_polys() + linear, nvars)
        if comp is None:
            return (MPoly.const(nvars, 1),)
        images = _substitution(comp)
        reduced = linear_reduce([p.substitute(images) for p in reduced])
    rest = [p.monic() for p in reduced if not p.is_zero()]
    return tuple(comp.equation_polys()) + tuple(rest)


def _classify_from(L, method, basis, residuals, phi_basis=None) -> Classification:
    d = len(basis)
    reduced = tuple(linear_reduce(residuals))
    phis = tuple(phi_basis) if phi_basis is not None else None
    if d == 0:
        comp = affine_component([], 0)
        return Classification(L.name, L.dim, method, TRIVIAL, (), reduced, (comp,), phis)
    if not reduced:
        comp = affine_component([], d)
        return Classification(L.name, L.dim, method, FULL_LINEAR_SPACE, tuple(basis), (), (comp,), phis)
    res = resolve(reduced, d)
    comps = tuple(res.components)
    if res.unresolved:
        kind = UNRESOLVED
    elif len(comps) == 1 and comps[0].dim == 0 and not any(comps[0].point):
        kind = TRIVIAL
    else:
        kind = COMPONENT_UNION
    unresolved = tuple((c, tuple(ps)) for c, ps in res.unresolved)
    normal = residual_normal_form(reduced, d)
    out = Classification(L.name, L.dim, method, kind, tuple(basis), reduced, comps, phis, unresolved, normal)
    for P in out.sample_products():
        if not verify_cpa(L, P).ok:
            raise AssertionError("resolver emitted a component that fails the CPA axioms")
    return out


def classify(L: LieAlgebra, method: str = "general") -> Classification:
    if method == "general":
        basis = solve_linear_part(L)
        return _classify_from(L, "general", basis, quadratic_residuals(L, basis))
    if method == "inner":
        return inner_solve(L).classification
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# inner structures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InnerSolution:
    phi_basis: tuple
    products: tuple
    hom_residuals: tuple
    classification: Classification


def _phi_linear_space(L: LieAlgebra) -> Subspace:
    """``phi`` (row-major flattened) with ``[phi(x), y] = [phi(y), x]``."""
    n = L.dim
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                row = [ZERO] * (n * n)
                for r in range(n):
                    a = L.c[r][j][k]
                    if a:
                        row[r * n + i] += a
                    b = L.c[r][i][k]
                    if b:
                        row[r * n + j] -= b
                if any(row):
                    rows.append(row)
    return nullspace_rows(rows, n * n)


def hom_residuals(L: LieAlgebra, phi_basis: Sequence[Matrix]) -> list:
    """``[[phi x, phi y], z] - [phi [x, y], z]`` over basis ``x < y``, ``z`` and coordinates."""
    n, d = L.dim, len(phi_basis)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            # H = [phi e_i, phi e_j] - phi [e_i, e_j], coordinate-wise polynomials
            H = [dict() for _ in range(n)]
            for a in range(d):
                v = phi_basis[a].apply(L.c[i][j])
                for m in range(n):
                    if v[m]:
                        e = tuple(1 if q == a else 0 for q in range(d))
                        H[m][e] = H[m].get(e, ZERO) - v[m]
                for b in range(d):
                    w = bracket(L, phi_basis[a].column(i), phi_basis[b].column(j))
                    for m in range(n):
                        if w[m]:
                            e = [0] * d
                            e[a] += 1
                            e[b] += 1
                            H[m][tuple(e)] = H[m].get(tuple(e), ZERO) + w[m]
            Hp = [MPoly(d, h) for h in H]
            for k in range(n):
                for r in range(n):
                    p = MPoly.zero(d)
                    for m in range(n):
                        c = L.c[m][k][r]
                        if c and not Hp[m].is_zero():
                            p = p + Hp[m] * c
                    if not p.is_zero():
                        out.append(p)
    return out


def inner_solve(L: LieAlgebra) -> InnerSolution:
    """Solve for ``phi`` on a complete Lie algebra; parameters match :func:`solve_linear_part`."""
    if not lie.is_complete(L):
        raise NotComplete(f"{L.name} is not complete")
    n = L.dim
    space = _phi_linear_space(L)
    phis = [lie.matrix_from_flat(v, n) for v in space.vectors]
    prods = [inner_product(L, ph).to_vector() for ph in phis]
    if phis:
        products, phi_flat = _canonical_products(n, prods, [ph.flatten() for ph in phis])
        phis = [lie.matrix_from_flat(f, n) for f in phi_flat]
    else:
        products = []
    residuals = hom_residuals(L, phis)
    cls = _classify_from(L, "inner", products, residuals, phis)
    return InnerSolution(tuple(phis), tuple(products), tuple(residuals), cls)


@dataclass(frozen=True)
class InnerWitness:
    phi: Optional[Matrix]
    weakly_inner: bool
    inner: bool
    nil_inner: bool
    hom_family_dim: int = 0  # nil_inner is exact when this is 0


NOT_WEAKLY_INNER = InnerWitness(None, False, False, False, -1)


def detect_inner(L: LieAlgebra, P: CPAProduct) -> InnerWitness:
    """Look for ``phi`` with ``L(x) = ad(phi(x))``; then for a homomorphism among them."""
    require_cpa(L, P)
    n = L.dim
    # unknown phi[r][c] at r*n + c; equation (i, j, k): sum_r phi[r][i] c[r][j][k] = d[i][j][k]
    rows, rhs = [], []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = [ZERO] * (n * n)
                for r in range(n):
                    if L.c[r][j][k]:
                        row[r * n + i] = L.c[r][j][k]
                rows.append(row)
                rhs.append(P.d[i][j][k])
    if not rows:
        return InnerWitness(Matrix(0, 0, ()), True, True, True, 0)
    sol = solve_affine(Matrix(len(rows), n * n, tuple(tuple(r) for r in rows)), rhs)
    if sol is None:
        return NOT_WEAKLY_INNER
    free = sol[1]
    phi0 = free.reduce(sol[0])
    # phi0 + psi with psi(L) central: homomorphism iff psi([x,y]) = [phi0 x, phi0 y] - phi0 [x,y]
    P0 = lie.matrix_from_flat(phi0, n)
    dirs = [lie.matrix_from_flat(v, n) for v in free.vectors]
    hrows, hrhs = [], []
    for i in range(n):
        for j in range(i + 1, n):
            target = sub(bracket(L, P0.column(i), P0.column(j)), P0.apply(L.c[i][j]))
            imgs = [D.apply(L.c[i][j]) for D in dirs]
            for k in range(n):
                hrows.append([v[k] for v in imgs])
                hrhs.append(target[k])
    if dirs and hrows:
        hs = solve_affine(Matrix(len(hrows), len(dirs), tuple(tuple(r) for r in hrows)), hrhs)
    elif hrows:
        hs = ((), Subspace.zero(0)) if not any(hrhs) else None
    else:
        hs = (tuple(ZERO for _ in dirs), Subspace.full(len(dirs)))
    if hs is None:
        return InnerWitness(P0, True, False, False, -1)
    coeffs, fam = hs
    phi = P0
    if dirs:
        phi = lie.matrix_from_flat(add(phi0, combination(coeffs, [D.flatten() for D in dirs], n * n)), n)
    if is_nilpotent(phi):
        return InnerWitness(phi, True, True, True, fam.dim)
    for v in fam.vectors:
        cand = phi + lie.matrix_from_flat(combination(v, [D.flatten() for D in dirs], n * n), n)
        if is_nilpotent(cand):
            return InnerWitness(cand, True, True, True, fam.dim)
    return InnerWitness(phi, True, True, False, fam.dim)


def inner_ideal_checks(L: LieAlgebra, P: CPAProduct, phi: Matrix) -> dict:
    """Every Lie ideal we can name is a product ideal, and every chain ideal is ``phi``-invariant."""
    rep = lie.structure_report(L)
    ideals = list(rep.derived_series) + list(rep.lower_central_series) + [rep.center, rep.radical]
    ideals.append(lie.fix_witness_ideal(L)[0])
    chain = ideal_chain(L, P)
    lie_ideals_ok = all(is_product_ideal(P, I) for I in ideals if lie.is_ideal(L, I))
    invariant = all(Subspace.span([phi.apply(v) for v in I.vectors], L.dim) <= I for I in chain.chain)
    return {"lie_ideals_are_product_ideals": lie_ideals_ok, "chain_phi_invariant": invariant}


# ---------------------------------------------------------------------------
# decomposition of inner structures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    n_part: Subspace
    h_part: Subspace
    eigenvalues: tuple
    multiplicities: tuple
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def phi_decompose(L: LieAlgebra, phi: Matrix) -> Decomposition:
    """Split ``L`` into the generalized 0-eigenspace of ``phi`` and the sum of the others."""
    n = L.dim
    if (phi.rows, phi.cols) != (n, n):
        raise DimensionMismatch("phi must be n x n")
    P = try_inner_product(L, phi)
    if P is None or not verify_cpa(L, P).ok:
        raise NotACPA("x.y = [phi(x), y] is not a CPA structure")
    spectrum = rational_eigen(phi)
    if spectrum is None:
        raise UnsupportedSpectrum("phi has eigenvalues outside the rationals")
    spaces = {lam: generalized_eigenspace(phi, lam) for lam, _ in spectrum}
    n_part = spaces.get(ZERO, Subspace.zero(n))
    h_part = Subspace.zero(n)
    for lam, S in spaces.items():
        if lam:
            h_part = h_part + S
    rn = restrict(phi, n_part)
    rh = restrict(phi, h_part)
    law = True
    for a, Sa in spaces.items():
        for b, Sb in spaces.items():
            br = bracket_spaces(L, Sa, Sb)
            if br.is_zero():
                continue
            if a + b != 0 or not br <= spaces.get(a * b, Subspace.zero(n)):
                law = False
    checks = {
        "n_nilpotent_phi": rn is not None and (rn.rows == 0 or is_nilpotent(rn)),
        "h_automorphism_phi": rh is not None and (rh.rows == 0 or determinant(rh) != 0),
        "h_metabelian": lie.is_metabelian(L, h_part),
        "both_ideals": all(lie.is_ideal(L, S) and is_product_ideal(P, S) for S in (n_part, h_part)),
        "direct_sum": n_part.intersect(h_part).is_zero() and n_part.dim + h_part.dim == n,
        "eigenspace_bracket_law": law,
    }
    return Decomposition(
        n_part, h_part, tuple(lam for lam, _ in spectrum), tuple(m for _, m in spectrum), checks
    )


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def _abelian_quotient_data(L: LieAlgebra, I: Subspace):
    if I.ambient_dim != L.dim:
        raise DimensionMismatch("ideal lives in a different ambient space")
    if not lie.is_ideal(L, I):
        raise lie.NotAnIdeal("subspace is not a Lie ideal")
    if not derived_algebra(L) <= I:
        raise QuotientNotAbelian("L / I is not abelian")
    keep = I.complement_indices()

    def project(v):
        r = I.reduce(v)
        return tuple(r[k] for k in keep)

    return keep, project


def center_of_ideal(L: LieAlgebra, I: Subspace) -> Subspace:
    return centralizer(L, I, within=I)


def cocycle_space(L: LieAlgebra, I: Subspace) -> list:
    """Basis of maps ``f: L/I -> Z(I)`` with ``[f(x), y] = [f(y), x]``.

    Each map is an ``n x q`` matrix from quotient coordinates (the non-pivot
    basis vectors of ``I``) into ambient coordinates.
    """
    keep, project = _abelian_quotient_data(L, I)
    n, q = L.dim, len(keep)
    Z = center_of_ideal(L, I)
    if any(any(bracket(L, x, z)) for x in I.vectors for z in Z.vectors):
        raise AssertionError("I must act trivially on its own center")
    zs = Z.vectors
    m = len(zs)
    if m == 0 or q == 0:
        return []
    pis = [project(L.basis_vector(i)) for i in range(n)]
    zb = [[bracket(L, z, L.basis_vector(j)) for j in range(n)] for z in zs]
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                row = [ZERO] * (m * q)
                for b in range(m):
                    for a in range(q):
                        row[b * q + a] = pis[i][a] * zb[b][j][k] - pis[j][a] * zb[b][i][k]
                if any(row):
                    rows.append(row)
    out = []
    for F in nullspace_rows(rows, m * q).vectors:
        cols = [combination([F[b * q + a] for b in range(m)], zs, n) for a in range(q)]
        out.append(Matrix.from_columns(cols, n))
    return out


def cocycle_product(L: LieAlgebra, I: Subspace, f: Matrix) -> CPAProduct:
    """``x . y = [f(x mod I), y]``."""
    keep, project = _abelian_quotient_data(L, I)
    n = L.dim
    if (f.rows, f.cols) != (n, len(keep)):
        raise DimensionMismatch(f"cocycle must be {n} x {len(keep)}")
    Z = center_of_ideal(L, I)
    if not all(Z.contains(c) for c in f.columns()):
        raise NotACocycle("cocycle does not take values in Z(I)")
    vals = [f.apply(project(L.basis_vector(i))) for i in range(n)]
    table = [[bracket(L, vals[i], L.basis_vector(j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if table[i][j] != table[j][i]:
                raise NotACocycle(f"[f(x), y] != [f(y), x] at basis pair ({i}, {j})")
    return CPAProduct(tuple(tuple(r) for r in table))


def central_z_product(L: LieAlgebra, I: Optional[Subspace], z: Sequence) -> CPAProduct:
    """``x . y = [[z, x], y]`` for ``z`` central in ``I`` (default ``I = [L, L]``)."""
    I = I if I is not None else derived_algebra(L)
    _abelian_quotient_data(L, I)
    z = vector(z)
    if not center_of_ideal(L, I).contains(z):
        raise NotCentralInI("z is not in the center of I")
    n = L.dim
    zx = [bracket(L, z, L.basis_vector(i)) for i in range(n)]
    return CPAProduct.from_function(n, lambda i, j: bracket(L, zx[i], L.basis_vector(j)))


def common_eigenvector(L: LieAlgebra) -> Optional[Vector]:
    """A rational common eigenvector of all ``ad(e_i)``, found by intersecting eigenspaces."""
    n = L.dim
    from .linalg import char_poly, kernel, rational_roots

    cands = [Subspace.full(n)]
    for i in range(n):
        ad = lie.adjoint(L, L.basis_vector(i))
        nxt = []
        for lam in rational_roots(char_poly(ad)):
            E = kernel(ad - Matrix.identity(n).scaled(lam))
            for W in cands:
                X = W.intersect(E)
                if not X.is_zero():
                    nxt.append(X)
        cands = nxt
        if not cands:
            return None
    return cands[0].vectors[0]


def lie_eigenfunctional_product(L: LieAlgebra, v: Optional[Sequence] = None):
    """``x . y = [x, [y, v]] = lambda(x) lambda(y) v`` for a common eigenvector ``v``."""
    n = L.dim
    if not lie.is_solvable(L):
        raise NotSolvable(f"{L.name} is not solvable")
    if v is None:
        v = common_eigenvector(L)
        if v is None:
            raise NotCommonEigenvector("no rational common eigenvector found; pass v explicitly")
    v = vector(v)
    if is_zero_vector(v):
        raise NotCommonEigenvector("v must be nonzero")
    line = Subspace.span([v], n)
    lam = []
    for i in range(n):
        w = bracket(L, L.basis_vector(i), v)
        if not line.contains(w):
            raise NotCommonEigenvector(f"[{L.basis_labels[i]}, v] is not a multiple of v")
        piv = line.pivots[0]
        lam.append(w[piv] / v[piv])
    for i in range(n):
        for j in range(i + 1, n):
            if dot(lam, L.c[i][j]):
                raise AssertionError("eigenfunctional does not vanish on [L, L]")
    P = CPAProduct.from_function(n, lambda i, j: scale(lam[i] * lam[j], v))
    return P, tuple(lam)


@dataclass(frozen=True)
class CenterConstruction:
    case: int  # 1: Z(L) meets [L, L]; 2: abelian direct factor
    target: Vector
    functional: Vector
    product: CPAProduct


def center_construction(L: LieAlgebra) -> CenterConstruction:
    """``x . y = l(x) l(y) t`` with ``l`` vanishing on ``[L, L]``.

    Case 1 takes ``t`` central inside ``[L, L]``; case 2 takes ``t`` central
    outside it with ``l(t) = 1``.
    """
    n = L.dim
    D = derived_algebra(L)
    if D.is_full():
        raise IsPerfect(f"{L.name} is perfect")
    Z = center(L)
    if Z.is_zero():
        raise TrivialCenter(f"{L.name} has trivial center")
    functionals = functionals_vanishing_on(D).vectors
    ZD = Z.intersect(D)
    if not ZD.is_zero():
        case, t = 1, ZD.vectors[0]
        ell = functionals[0]
    else:
        case, t = 2, Z.vectors[0]
        ell = next(w for w in functionals if dot(w, t))
        ell = scale(1 / dot(ell, t), ell)
    P = CPAProduct.from_function(n, lambda i, j: scale(ell[i] * ell[j], t))
    return CenterConstruction(case, t, ell, P)


def center_construction_product(L: LieAlgebra) -> CPAProduct:
    return center_construction(L).product


def componentwise_product(L1: LieAlgebra, P1: CPAProduct, L2: LieAlgebra, P2: CPAProduct):
    require_cpa(L1, P1)
    require_cpa(L2, P2)
    L = lie.direct_sum(L1, L2)
    n1, n2 = L1.dim, L2.dim
    prods = {}
    for i, j, v in P1.nonzero_products():
        prods[(i, j)] = tuple(v) + zero_vector(n2)
    for i, j, v in P2.nonzero_products():
        prods[(n1 + i, n1 + j)] = zero_vector(n1) + tuple(v)
    return L, CPAProduct.from_products(n1 + n2, prods)


def factor_spaces(n1: int, n2: int):
    n = n1 + n2
    return (
        Subspace.span([_unit(n, i) for i in range(n1)], n),
        Subspace.span([_unit(n, n1 + i) for i in range(n2)], n),
    )


def componentwise_containment(P: CPAProduct, n1: int, n2: int) -> bool:
    """``q_a . q_b`` lies in ``q_a ∩ q_b`` for the two summands."""
    qs = factor_spaces(n1, n2)
    for a in qs:
        for b in qs:
            if not product_of_spaces(P, a, b) <= a.intersect(b):
                return False
    return True

"""Exact resolution of small systems of quadratic equations into affine components.

The resolver only ever reports what it can prove: linear consequences are
extracted by row reduction over monomials, quadratics that factor over the
rationals into linear forms are split into branches, and every leaf is an
affine subspace on which all residuals vanish identically.  Anything else is
handed back as an unresolved residual system.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Optional, Sequence

from .linalg import (
    ZERO,
    Matrix,
    Subspace,
    _rref_rows,
    add,
    format_fraction,
    kernel,
    rref,
)
from .poly import MPoly, _grade_key, param_names

MAX_NODES = 20000


@dataclass(frozen=True)
class AffineComponent:
    """``{t : A t = b}`` with ``(A | b)`` in reduced row-echelon form."""

    nvars: int
    equations: tuple  # ((coeffs, rhs), ...)
    point: tuple
    directions: Subspace

    @property
    def dim(self) -> int:
        return self.directions.dim

    def contains_point(self, t: Sequence) -> bool:
        return all(sum((a * x for a, x in zip(coeffs, t)), ZERO) == rhs for coeffs, rhs in self.equations)

    def __le__(self, other: "AffineComponent") -> bool:
        return other.contains_point(self.point) and self.directions <= other.directions

    def sample_points(self) -> list:
        """The base point and base point plus each direction, plus their sum."""
        pts = [self.point] + [add(self.point, d) for d in self.directions.vectors]
        if self.dim > 1:
            total = self.point
            for k, d in enumerate(self.directions.vectors):
                total = add(total, tuple(Fraction(k + 2) * a for a in d))
            pts.append(total)
        return pts

    def equation_polys(self) -> list:
        return [MPoly.linear(coeffs, -rhs) for coeffs, rhs in self.equations]

    def to_json(self, names=None) -> dict:
        names = names or param_names(self.nvars)
        return {
            "dim": self.dim,
            "equations": [p.to_str(names) + " = 0" for p in self.equation_polys()],
            "equation_coeffs": [
                {"coeffs": {names[i]: format_fraction(a) for i, a in enumerate(c) if a}, "rhs": format_fraction(r)}
                for c, r in self.equations
            ],
            "point": [format_fraction(a) for a in self.point],
            "directions": [[format_fraction(a) for a in v] for v in self.directions.vectors],
        }

    def __str__(self) -> str:
        eqs = ", ".join(p.to_str() + " = 0" for p in self.equation_polys()) or "no equations"
        return f"{{{eqs}}} (dim {self.dim})"


def affine_component(rows: Sequence, nvars: int) -> Optional[AffineComponent]:
    """Component for linear polynomials ``rows`` (each ``MPoly`` of degree <= 1); ``None`` if empty."""
    aug = [list(p.linear_part()) + [-p.constant_term()] for p in rows]
    red, pivots = _rref_rows(aug, nvars + 1)
    if pivots and pivots[-1] == nvars:
        return None
    eqs = tuple((tuple(r[:nvars]), r[nvars]) for r in red)
    point = [ZERO] * nvars
    for (coeffs, rhs), p in zip(eqs, pivots):
        point[p] = rhs
    A = Matrix(len(eqs), nvars, tuple(c for c, _ in eqs)) if eqs else Matrix(0, nvars, ())
    return AffineComponent(nvars, eqs, tuple(point), kernel(A))


def _substitution(comp: AffineComponent) -> list:
    n = comp.nvars
    images = [MPoly.var(n, i) for i in range(n)]
    for coeffs, rhs in comp.equations:
        p = next(k for k, a in enumerate(coeffs) if a)
        rest = [ZERO if k == p else -a for k, a in enumerate(coeffs)]
        images[p] = MPoly.linear(rest, rhs)
    return images


def linear_reduce(polys: Sequence[MPoly]) -> list:
    """Echelon basis of the span of ``polys`` with monomials in graded order.

    Rows whose leading monomial has degree one are the linear consequences.
    """
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return []
    n = polys[0].nvars
    monos = sorted({e for p in polys for e in p.terms}, key=_grade_key, reverse=True)
    index = {e: k for k, e in enumerate(monos)}
    rows = []
    for p in polys:
        r = [ZERO] * len(monos)
        for e, c in p.terms.items():
            r[index[e]] = c
        rows.append(r)
    red, _ = _rref_rows(rows, len(monos))
    return [MPoly(n, {monos[k]: c for k, c in enumerate(r) if c}) for r in red]


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    a, b = isqrt(x.numerator), isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def split_quadratic(p: MPoly) -> Optional[list]:
    """Rational linear factors of a degree-two polynomial, or ``None`` if it does not split.

    Works on the symmetric matrix of the homogenized quadratic form: rank one
    means a square of a linear form, rank two a product of two linear forms
    (rational iff a binary discriminant is a rational square).
    """
    if p.degree != 2:
        return None
    d = p.nvars
    M = [[ZERO] * (d + 1) for _ in range(d + 1)]
    for e, c in p.terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        if len(idx) == 2:
            i, j = idx
        elif len(idx) == 1:
            i, j = idx[0], d
        else:
            i = j = d
        if i == j:
            M[i][i] += c
        else:
            M[i][j] += c / 2
            M[j][i] += c / 2
    Mm = Matrix(d + 1, d + 1, tuple(tuple(r) for r in M))
    red, _, rk = rref(Mm)

    def form(w):
        return MPoly.linear(w[:d], w[d])

    if rk == 1:
        i = next(k for k in range(d + 1) if M[k][k])
        return [form(M[i]).monic()]
    if rk != 2:
        return None
    u, w = red.row(0), red.row(1)
    # M = a uu^T + b (uw^T + wu^T) + c ww^T
    rows = []
    for i in range(d + 1):
        for j in range(d + 1):
            rows.append([u[i] * u[j], u[i] * w[j] + w[i] * u[j], w[i] * w[j], M[i][j]])
    red_abc, piv = _rref_rows(rows, 4)
    if piv and piv[-1] == 3:
        return None
    sol = {p_: r[3] for r, p_ in zip(red_abc, piv)}
    a, b, c = sol.get(0, ZERO), sol.get(1, ZERO), sol.get(2, ZERO)
    U, W = form(u), form(w)
    if a == 0:
        factors = [W, U * (2 * b) + W * c]
    else:
        s = _rational_sqrt(b * b - a * c)
        if s is None:
            return None
        r1, r2 = (-b + s) / a, (-b - s) / a
        factors = [U - W * r1, U - W * r2]
    out = []
    for f in factors:
        f = f.monic()
        if f.degree >= 1 and f not in out:
            out.append(f)
    return out


@dataclass
class Resolution:
    components: list = field(default_factory=list)
    unresolved: list = field(default_factory=list)  # (component, residual polys) pairs

    @property
    def resolved(self) -> bool:
        return not self.unresolved


def resolve(polys: Sequence[MPoly], nvars: int, max_nodes: int = MAX_NODES) -> Resolution:
    """Decompose the common zero set of ``polys`` (degree <= 2) over the rationals."""
    out = Resolution()
    budget = [max_nodes]
    start = affine_component([], nvars)
    _branch(start, [p for p in polys if not p.is_zero()], out, budget)
    # drop components contained in another one
    kept = []
    for comp in sorted(out.components, key=lambda c: -c.dim):
        if not any(comp <= k for k in kept):
            kept.append(comp)
    out.components = sorted(kept, key=lambda c: (-c.dim, c.equations))
    return out


def _branch(comp: AffineComponent, polys: list, out: Resolution, budget: list) -> None:
    budget[0] -= 1
    if budget[0] < 0:
        out.unresolved.append((comp, polys))
        return
    images = _substitution(comp)
    reduced = linear_reduce([p.substitute(images) for p in polys])
    if any(p.is_constant() for p in reduced):
        return
    linear = [p for p in reduced if p.degree == 1]
    if linear:
        nxt = affine_component(comp.equation_polys() + linear, comp.nvars)
        if nxt is not None:
            _branch(nxt, reduced, out, budget)
        return
    if not reduced:
        out.components.append(comp)
        return
    best = None
    for p in reduced:
        factors = split_quadratic(p)
        if factors is not None:
            key = (len(factors), len(p.variables()), len(p.terms))
            if best is None or key < best[0]:
                best = (key, factors)
    if best is None:
        out.unresolved.append((comp, reduced))
        return
    for f in best[1]:
        nxt = affine_component(comp.equation_polys() + [f], comp.nvars)
        if nxt is not None:
            _branch(nxt, reduced, out, budget)

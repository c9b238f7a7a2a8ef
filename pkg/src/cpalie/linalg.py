"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`; vectors are plain tuples of
fractions.  Everything here is immutable and deterministic: pivots are chosen
leftmost-column, topmost-row, so reduced forms (and therefore subspace
equality) are pure data comparisons.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Optional, Sequence

Vector = tuple

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


class NotSquare(ValueError):
    pass


class NotAnEigenvalue(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


def to_fraction(x) -> Fraction:
    """Coerce ints, fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        if not _RATIONAL_RE.match(x):
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(x.replace(" ", ""))
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vector(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> Vector:
    return tuple(c * a for a in v)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


def combination(coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


@dataclass(frozen=True)
class Matrix:
    """Dense rational matrix, row-major; acts on column vectors."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch("entry count does not match rows x cols")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: Optional[int] = None) -> "Matrix":
        data = tuple(vector(r) for r in rows)
        if cols is None:
            if not data:
                raise ValueError("cols is required for an empty matrix")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        cols = [vector(c) for c in columns]
        return cls(rows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        n = len(values)
        vals = vector(values)
        return cls(n, n, tuple(tuple(vals[i] if i == j else ZERO for j in range(n)) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(self.column(j) for j in range(self.cols)))

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        return tuple(dot(r, v) for r in self.entries)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
            ocols = other.columns()
            return Matrix(self.rows, other.cols, tuple(tuple(dot(r, c) for c in ocols) for r in self.entries))
        return self.apply(other)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(add(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(sub(a, b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return self.scaled(-1)

    def __mul__(self, c) -> "Matrix":
        return self.scaled(c)

    __rmul__ = __mul__

    def scaled(self, c) -> "Matrix":
        c = to_fraction(c)
        return Matrix(self.rows, self.cols, tuple(scale(c, r) for r in self.entries))

    def power(self, k: int) -> "Matrix":
        if not self.is_square:
            raise NotSquare("power of a non-square matrix")
        out = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def trace(self) -> Fraction:
        if not self.is_square:
            raise NotSquare("trace of a non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), ZERO)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def flatten(self) -> Vector:
        return tuple(a for r in self.entries for a in r)

    def stack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise DimensionMismatch("stacking matrices with different column counts")
        return Matrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def _same_shape(self, other: "Matrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix shapes differ")

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_fraction(a) for a in r) for r in self.entries)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def _rref_rows(rows: list, ncols: int):
    """In-place reduced row-echelon form of a list of mutable rows."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            for k in range(c, ncols):
                if prow[k]:
                    prow[k] *= inv
        nz = [k for k in range(c, ncols) if prow[k]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for k in nz:
                        row[k] -= f * prow[k]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m: Matrix):
    """Return ``(R, pivot_columns, rank)`` with ``R`` the reduced row-echelon form of ``m``.

    ``R`` keeps the shape of ``m`` (zero rows at the bottom).
    """
    rows = [list(r) for r in m.entries]
    nonzero, pivots = _rref_rows(rows, m.cols)
    rank = len(pivots)
    full = [tuple(r) for r in nonzero] + [(ZERO,) * m.cols] * (m.rows - rank)
    return Matrix(m.rows, m.cols, tuple(full)), tuple(pivots), rank


def rank(m: Matrix) -> int:
    return rref(m)[2]


def _kernel_vectors(rows: list, ncols: int) -> list:
    red, pivots = _rref_rows([list(r) for r in rows], ncols)
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for r, p in enumerate(pivots):
            if red[r][f]:
                v[p] = -red[r][f]
        out.append(tuple(v))
    return out


def kernel(m: Matrix) -> "Subspace":
    """The subspace ``{v : m v = 0}`` in canonical form."""
    return Subspace.span(_kernel_vectors(m.entries, m.cols), m.cols)


def nullspace_rows(rows: Sequence[Sequence], ncols: int) -> "Subspace":
    """Kernel of a system given as a raw list of coefficient rows."""
    return Subspace.span(_kernel_vectors(rows, ncols), ncols)


def solve_affine(m: Matrix, b: Sequence):
    """Solve ``m x = b``.

    Returns ``(particular, kernel)`` or ``None`` if the system is inconsistent.
    The particular solution has every free variable set to zero.
    """
    b = vector(b)
    if len(b) != m.rows:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {m.rows} rows")
    aug = [list(r) + [bi] for r, bi in zip(m.entries, b)]
    red, pivots = _rref_rows(aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [ZERO] * m.cols
    for r, p in enumerate(pivots):
        x[p] = red[r][m.cols]
    return tuple(x), kernel(m)


def determinant(m: Matrix) -> Fraction:
    if not m.is_square:
        raise NotSquare("determinant of a non-square matrix")
    rows = [list(r) for r in m.entries]
    n = m.rows
    det = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                for k in range(c, n):
                    rows[i][k] -= f * rows[c][k]
    return det


@dataclass(frozen=True)
class Subspace:
    """Subspace of ``K^ambient_dim`` held by its RREF basis (rows of ``basis``)."""

    ambient_dim: int
    basis: Matrix

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = [list(vector(v)) for v in vectors]
        if any(len(r) != ambient_dim for r in rows):
            raise DimensionMismatch("spanning vector has the wrong length")
        red, _ = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, Matrix(len(red), ambient_dim, tuple(tuple(r) for r in red)))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, Matrix(0, n, ()))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, Matrix.identity(n))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def vectors(self) -> tuple:
        return self.basis.entries

    @property
    def pivots(self) -> tuple:
        return tuple(next(k for k, a in enumerate(r) if a) for r in self.basis.entries)

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def reduce(self, v: Sequence) -> Vector:
        """Remainder of ``v`` after clearing the pivot coordinates."""
        out = list(v)
        for row, p in zip(self.basis.entries, self.pivots):
            c = out[p]
            if c:
                for k, a in enumerate(row):
                    if a:
                        out[k] -= c * a
        return tuple(out)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length differs from ambient dimension")
        return is_zero_vector(self.reduce(v))

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in the canonical basis; ``ValueError`` if outside."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.vectors)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.vectors + other.vectors, self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        eqs = annihilator(other).vectors
        # x = sum c_i u_i must satisfy every equation of `other`
        rows = [[dot(f, u) for u in self.vectors] for f in eqs]
        coeffs = nullspace_rows(rows, self.dim).vectors
        return Subspace.span(
            [combination(c, self.vectors, self.ambient_dim) for c in coeffs], self.ambient_dim
        )

    __and__ = intersect

    def complement_indices(self) -> tuple:
        """Standard basis indices spanning a complement (the non-pivot columns)."""
        piv = set(self.pivots)
        return tuple(k for k in range(self.ambient_dim) if k not in piv)

    def __repr__(self) -> str:
        vecs = ", ".join("(" + ", ".join(format_fraction(a) for a in v) + ")" for v in self.vectors)
        return f"Subspace(dim={self.dim}/{self.ambient_dim}: [{vecs}])"


def annihilator(s: Subspace) -> Subspace:
    """Functionals (as vectors, via the dot product) vanishing on ``s``."""
    if s.dim == 0:
        return Subspace.full(s.ambient_dim)
    return kernel(s.basis)


def image(m: Matrix) -> Subspace:
    return Subspace.span(m.columns(), m.rows)


# ---------------------------------------------------------------------------
# univariate polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Polynomial:
    """Univariate rational polynomial, coefficients in ascending degree."""

    coefficients: tuple

    def __post_init__(self):
        c = list(vector(self.coefficients))
        while c and not c[-1]:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c))

    @classmethod
    def of(cls, *coeffs) -> "Polynomial":
        return cls(tuple(coeffs))

    @classmethod
    def monomial(cls, c, k: int) -> "Polynomial":
        return cls((ZERO,) * k + (to_fraction(c),))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else ZERO

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def eval_matrix(self, m: Matrix) -> Matrix:
        if not m.is_square:
            raise NotSquare("polynomial of a non-square matrix")
        acc = Matrix.zeros(m.rows, m.cols)
        eye = Matrix.identity(m.rows)
        for c in reversed(self.coefficients):
            acc = acc @ m + eye.scaled(c)
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return Polynomial(tuple((a[i] if i < len(a) else ZERO) + (b[i] if i < len(b) else ZERO) for i in range(n)))

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return Polynomial(scale(to_fraction(other), self.coefficients))
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return Polynomial(())
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def __divmod__(self, other: "Polynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        dq = other.degree
        q = [ZERO] * max(len(rem) - dq, 0)
        lead = other.leading
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            if c:
                q[k - dq] = c
                for j, b in enumerate(other.coefficients):
                    rem[k - dq + j] -= c * b
        return Polynomial(tuple(q)), Polynomial(tuple(rem[:dq]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(k * c for k, c in enumerate(self.coefficients))[1:])

    def monic(self) -> "Polynomial":
        return self * (1 / self.leading) if self.coefficients else self

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            mag = abs(c)
            coef = format_fraction(mag) if (mag != 1 or k == 0) else ""
            term = coef + ("*" if coef and mono else "") + mono
            parts.append(("-" if c < 0 else "+", term))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {t}" for s, t in parts[1:])


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(p: Polynomial) -> list:
    """Yun's algorithm: ``[(a_1, 1), (a_2, 2), ...]`` with ``p ~ prod a_i^i``."""
    if p.degree < 1:
        return []
    out = []
    a = p.monic()
    b = a.derivative()
    c = poly_gcd(a, b)
    w = a // c
    y = b // c
    i = 1
    while w.degree > 0:
        z = y - w.derivative()
        g = poly_gcd(w, z)
        if g.degree > 0:
            out.append((g, i))
        w = w // g
        y = z // g
        i += 1
    return out


def _divisors(n: int) -> list:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(p: Polynomial) -> list:
    """Distinct rational roots of ``p`` in increasing order (rational root theorem)."""
    if p.degree < 1:
        return []
    coeffs = list(p.coefficients)
    roots = set()
    if not coeffs[0]:
        roots.add(ZERO)
        while not coeffs[0]:
            coeffs.pop(0)
    if len(coeffs) == 1:
        return sorted(roots)
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    q = Polynomial(tuple(Fraction(x) for x in ints))
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and q(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def char_poly(m: Matrix) -> Polynomial:
    """``det(t I - m)`` by the Faddeev-LeVerrier recurrence (exact in characteristic zero)."""
    if not m.is_square:
        raise NotSquare(f"characteristic polynomial of a {m.rows}x{m.cols} matrix")
    n = m.rows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    mk = Matrix.zeros(n, n)
    eye = Matrix.identity(n)
    for k in range(1, n + 1):
        mk = m @ mk + eye.scaled(coeffs[n - k + 1])
        coeffs[n - k] = -(m @ mk).trace() / k
    return Polynomial(tuple(coeffs))


def rational_eigen(m: Matrix):
    """``[(eigenvalue, algebraic multiplicity), ...]`` sorted by eigenvalue.

    Returns ``None`` when the characteristic polynomial does not split into
    rational linear factors.
    """
    p = char_poly(m)
    found = {}
    for factor, mult in squarefree_decomposition(p):
        for r in rational_roots(factor):
            found[r] = found.get(r, 0) + mult
    if sum(found.values()) != m.rows:
        return None
    return sorted(found.items())


def generalized_eigenspace(m: Matrix, eigenvalue) -> Subspace:
    """``ker((m - eigenvalue)^n)``."""
    if not m.is_square:
        raise NotSquare("generalized eigenspace of a non-square matrix")
    lam = to_fraction(eigenvalue)
    if char_poly(m)(lam) != 0:
        raise NotAnEigenvalue(f"{format_fraction(lam)} is not an eigenvalue")
    shifted = m - Matrix.identity(m.rows).scaled(lam)
    return kernel(shifted.power(m.rows))


def is_nilpotent(m: Matrix) -> bool:
    return m.power(m.rows).is_zero()


def restrict(m: Matrix, s: Subspace) -> Optional[Matrix]:
    """Matrix of ``m`` on an invariant subspace in its canonical basis, or ``None``."""
    cols = []
    for v in s.vectors:
        w = m.apply(v)
        if not s.contains(w):
            return None
        cols.append(s.coordinates(w))
    return Matrix.from_columns(cols, s.dim) if cols else Matrix(0, 0, ())

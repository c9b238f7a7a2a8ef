"""Lie algebras given by structure constants, and the structural toolkit on them."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .linalg import (
    ZERO,
    DimensionMismatch,
    Matrix,
    Subspace,
    Vector,
    add,
    combination,
    dot,
    is_zero_vector,
    nullspace_rows,
    scale,
    solve_affine,
    unit_vector,
    vector,
    zero_vector,
)

FIX_SEED = 0x5EED
FIX_RANDOM_CANDIDATES = 64


class InvalidAlgebra(ValueError):
    pass


class NotAnIdeal(ValueError):
    pass


class NotARepresentation(ValueError):
    pass


@dataclass(frozen=True)
class LieAlgebra:
    """``c[i][j]`` is the coordinate vector of ``[e_i, e_j]``."""

    name: str
    basis_labels: tuple
    c: tuple

    @property
    def dim(self) -> int:
        return len(self.basis_labels)

    @classmethod
    def from_brackets(
        cls, name: str, labels: Sequence[str], brackets: Mapping, check: bool = True
    ) -> "LieAlgebra":
        """Build from ``{(i, j): vector-or-{k: coeff}}`` for ``i < j``; antisymmetry is implied.

        A pair given in both orders must agree up to sign.
        """
        n = len(labels)
        table = [[zero_vector(n) for _ in range(n)] for _ in range(n)]
        seen = {}
        for (i, j), val in brackets.items():
            if not (0 <= i < n and 0 <= j < n):
                raise DimensionMismatch(f"bracket index ({i}, {j}) out of range for dim {n}")
            if isinstance(val, Mapping):
                v = [ZERO] * n
                for k, a in val.items():
                    v[int(k)] = Fraction(a)
                v = tuple(v)
            else:
                v = vector(val)
            if len(v) != n:
                raise DimensionMismatch("bracket value has the wrong length")
            if i == j:
                if any(v):
                    raise InvalidAlgebra(f"[e{i}, e{i}] must vanish")
                continue
            key = (min(i, j), max(i, j))
            signed = v if i < j else scale(-1, v)
            if key in seen and seen[key] != signed:
                raise InvalidAlgebra(f"conflicting values for bracket {key}")
            seen[key] = signed
            table[key[0]][key[1]] = signed
            table[key[1]][key[0]] = scale(-1, signed)
        alg = cls(name, tuple(labels), tuple(tuple(r) for r in table))
        if check:
            bad = validate(alg)
            if bad:
                raise InvalidAlgebra(f"{name}: {bad[0]}")
        return alg

    @classmethod
    def from_table(cls, name: str, labels: Sequence[str], table) -> "LieAlgebra":
        """Raw constructor: ``table[i][j]`` vectors, no completion and no checks."""
        return cls(name, tuple(labels), tuple(tuple(vector(v) for v in row) for row in table))

    def basis_vector(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def nonzero_brackets(self):
        """``(i, j, vector)`` for ``i < j`` with a nonzero bracket."""
        n = self.dim
        return [(i, j, self.c[i][j]) for i in range(n) for j in range(i + 1, n) if any(self.c[i][j])]


@dataclass(frozen=True)
class Violation:
    kind: str  # "antisymmetry" or "jacobi"
    indices: tuple
    residual: Vector

    def __str__(self) -> str:
        return f"{self.kind} violation at {self.indices}"


def validate(L: LieAlgebra) -> list:
    """All antisymmetry and Jacobi violations over basis triples; empty means ok."""
    n = L.dim
    out = []
    if len(L.c) != n or any(len(row) != n or any(len(v) != n for v in row) for row in L.c):
        raise DimensionMismatch("structure constant table does not match the basis")
    for i in range(n):
        for j in range(i, n):
            s = add(L.c[i][j], L.c[j][i])
            if any(s):
                for k in range(n):
                    if s[k]:
                        out.append(Violation("antisymmetry", (i, j, k), s))
                        break
    for i in range(n):
        for j in range(n):
            for k in range(n):
                r = add(
                    add(bracket(L, L.basis_vector(i), L.c[j][k]), bracket(L, L.basis_vector(j), L.c[k][i])),
                    bracket(L, L.basis_vector(k), L.c[i][j]),
                )
                if any(r):
                    out.append(Violation("jacobi", (i, j, k), r))
    return out


def _check_vec(L: LieAlgebra, *vs) -> None:
    for v in vs:
        if len(v) != L.dim:
            raise DimensionMismatch(f"vector of length {len(v)} in a {L.dim}-dimensional algebra")


def bracket(L: LieAlgebra, x: Sequence, y: Sequence) -> Vector:
    _check_vec(L, x, y)
    n = L.dim
    out = [ZERO] * n
    for i, a in enumerate(x):
        if not a:
            continue
        row = L.c[i]
        for j, b in enumerate(y):
            if b:
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += ab * c
    return tuple(out)


def adjoint(L: LieAlgebra, x: Sequence) -> Matrix:
    """Matrix of ``ad(x)``: column ``j`` is ``[x, e_j]``."""
    _check_vec(L, x)
    return Matrix.from_columns([bracket(L, x, L.basis_vector(j)) for j in range(L.dim)], L.dim)


def bracket_spaces(L: LieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    """``[A, B]``."""
    return Subspace.span([bracket(L, a, b) for a in A.vectors for b in B.vectors], L.dim)


def is_ideal(L: LieAlgebra, S: Subspace) -> bool:
    return all(S.contains(bracket(L, L.basis_vector(i), s)) for i in range(L.dim) for s in S.vectors)


def is_subalgebra(L: LieAlgebra, S: Subspace) -> bool:
    return bracket_spaces(L, S, S) <= S


def ideal_generated(L: LieAlgebra, S: Subspace) -> Subspace:
    """Smallest ideal containing ``S``: close under ``ad`` of the basis until stable."""
    cur = S
    while True:
        nxt = cur + bracket_spaces(L, Subspace.full(L.dim), cur)
        if nxt == cur:
            return cur
        cur = nxt


def derived_algebra(L: LieAlgebra) -> Subspace:
    return Subspace.span([v for _, _, v in L.nonzero_brackets()], L.dim)


def derived_series(L: LieAlgebra) -> list:
    """``[L, L^(1), L^(2), ...]`` up to the first repeated term (not repeated)."""
    out = [Subspace.full(L.dim)]
    while True:
        nxt = bracket_spaces(L, out[-1], out[-1])
        if nxt == out[-1]:
            return out
        out.append(nxt)


def lower_central_series(L: LieAlgebra) -> list:
    full = Subspace.full(L.dim)
    out = [full]
    while True:
        nxt = bracket_spaces(L, full, out[-1])
        if nxt == out[-1]:
            return out
        out.append(nxt)


def lie_power(L: LieAlgebra, I: Subspace, k: int) -> Subspace:
    """``I^[k] = [I, [I, ... I]]`` with ``I^[1] = I``."""
    cur = I
    for _ in range(k - 1):
        cur = bracket_spaces(L, I, cur)
    return cur


def centralizer(L: LieAlgebra, S: Subspace, within: Optional[Subspace] = None) -> Subspace:
    """``{x in within : [x, S] = 0}`` (``within`` defaults to all of ``L``)."""
    n = L.dim
    within = within if within is not None else Subspace.full(n)
    if within.dim == 0:
        return within
    rows = []
    for s in S.vectors:
        ad_s = adjoint(L, s)
        # [w, s] = -ad(s) w
        for r in ad_s.entries:
            rows.append([dot(r, w) for w in within.vectors])
    coeffs = nullspace_rows(rows, within.dim).vectors
    return Subspace.span([combination(c, within.vectors, n) for c in coeffs], n)


def center(L: LieAlgebra) -> Subspace:
    return centralizer(L, Subspace.full(L.dim))


def killing_form(L: LieAlgebra) -> Matrix:
    ads = [adjoint(L, L.basis_vector(i)) for i in range(L.dim)]
    return Matrix.from_rows(
        [[(ads[i] @ ads[j]).trace() for j in range(L.dim)] for i in range(L.dim)], L.dim
    )


def radical(L: LieAlgebra) -> Subspace:
    """Solvable radical as the Killing-orthogonal complement of ``[L, L]`` (characteristic zero)."""
    K = killing_form(L)
    rows = [K.apply(y) for y in derived_algebra(L).vectors]
    return nullspace_rows(rows, L.dim)


@dataclass(frozen=True)
class StructReport:
    solvable: bool
    nilpotent: bool
    perfect: bool
    abelian: bool
    metabelian: bool
    derived_series: tuple
    lower_central_series: tuple
    center: Subspace
    radical: Subspace


def structure_report(L: LieAlgebra) -> StructReport:
    bad = validate(L)
    if bad:
        raise InvalidAlgebra(str(bad[0]))
    ds = derived_series(L)
    lcs = lower_central_series(L)
    d1 = ds[1] if len(ds) > 1 else ds[0]
    d2 = ds[2] if len(ds) > 2 else ds[-1]
    return StructReport(
        solvable=ds[-1].is_zero(),
        nilpotent=lcs[-1].is_zero(),
        perfect=d1 == ds[0],
        abelian=d1.is_zero(),
        metabelian=d2.is_zero(),
        derived_series=tuple(ds),
        lower_central_series=tuple(lcs),
        center=center(L),
        radical=radical(L),
    )


def is_solvable(L: LieAlgebra) -> bool:
    return derived_series(L)[-1].is_zero()


def is_metabelian(L: LieAlgebra, S: Optional[Subspace] = None) -> bool:
    """``[[S, S], [S, S]] = 0`` for ``S`` (default: all of ``L``)."""
    S = S if S is not None else Subspace.full(L.dim)
    d1 = bracket_spaces(L, S, S)
    return bracket_spaces(L, d1, d1).is_zero()


# ---------------------------------------------------------------------------
# derivations
# ---------------------------------------------------------------------------


def matrix_from_flat(v: Sequence, n: int) -> Matrix:
    return Matrix(n, n, tuple(tuple(v[r * n:(r + 1) * n]) for r in range(n)))


def derivations(L: LieAlgebra) -> Subspace:
    """``Der(L)`` as a subspace of row-major flattened ``n x n`` matrices."""
    n = L.dim
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            cij = L.c[i][j]
            for k in range(n):
                row = [ZERO] * (n * n)
                # (D [e_i, e_j])_k
                for m, a in enumerate(cij):
                    if a:
                        row[k * n + m] += a
                # -([D e_i, e_j])_k - ([e_i, D e_j])_k
                for r in range(n):
                    a = L.c[r][j][k]
                    if a:
                        row[r * n + i] -= a
                    b = L.c[i][r][k]
                    if b:
                        row[r * n + j] -= b
                if any(row):
                    rows.append(row)
    return nullspace_rows(rows, n * n)


def derivation_matrices(L: LieAlgebra) -> list:
    return [matrix_from_flat(v, L.dim) for v in derivations(L).vectors]


def is_derivation(L: LieAlgebra, D: Matrix) -> bool:
    n = L.dim
    for i in range(n):
        for j in range(i + 1, n):
            lhs = D.apply(L.c[i][j])
            rhs = add(bracket(L, D.column(i), L.basis_vector(j)), bracket(L, L.basis_vector(i), D.column(j)))
            if lhs != rhs:
                return False
    return True


def is_complete(L: LieAlgebra) -> bool:
    """Trivial center and every derivation inner."""
    if not center(L).is_zero():
        return False
    return derivations(L).dim == L.dim


def is_homomorphism(src: LieAlgebra, dst: LieAlgebra, M: Matrix) -> bool:
    """``M [x, y] = [M x, M y]`` on basis pairs of ``src``."""
    if (M.rows, M.cols) != (dst.dim, src.dim):
        raise DimensionMismatch("map shape does not match the algebras")
    for i in range(src.dim):
        for j in range(i + 1, src.dim):
            if M.apply(src.c[i][j]) != bracket(dst, M.column(i), M.column(j)):
                return False
    return True


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def quotient(L: LieAlgebra, I: Subspace):
    """``(L/I, projection)``; the quotient basis is the images of the non-pivot basis vectors of ``I``."""
    if I.ambient_dim != L.dim:
        raise DimensionMismatch("ideal lives in a different ambient space")
    if not is_ideal(L, I):
        raise NotAnIdeal("subspace is not a Lie ideal")
    keep = I.complement_indices()

    def project(v):
        r = I.reduce(v)
        return tuple(r[k] for k in keep)

    P = Matrix.from_columns([project(L.basis_vector(j)) for j in range(L.dim)], len(keep))
    labels = [L.basis_labels[k] for k in keep]
    brackets = {}
    for a in range(len(keep)):
        for b in range(a + 1, len(keep)):
            v = project(L.c[keep[a]][keep[b]])
            if any(v):
                brackets[(a, b)] = v
    Q = LieAlgebra.from_brackets(f"{L.name}/I", labels, brackets)
    return Q, P


def _disjoint_labels(a: Sequence[str], b: Sequence[str]):
    if set(a) & set(b):
        return [f"{x}_1" for x in a], [f"{x}_2" for x in b]
    return list(a), list(b)


def direct_sum(L1: LieAlgebra, L2: LieAlgebra) -> LieAlgebra:
    n1, n2 = L1.dim, L2.dim
    la, lb = _disjoint_labels(L1.basis_labels, L2.basis_labels)
    brackets = {}
    for i, j, v in L1.nonzero_brackets():
        brackets[(i, j)] = tuple(v) + zero_vector(n2)
    for i, j, v in L2.nonzero_brackets():
        brackets[(n1 + i, n1 + j)] = zero_vector(n1) + tuple(v)
    return LieAlgebra.from_brackets(f"{L1.name}+{L2.name}", la + lb, brackets)


def is_representation(L: LieAlgebra, rep: Sequence[Matrix]) -> bool:
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = combination(L.c[i][j], [m.flatten() for m in rep], rep[0].rows * rep[0].cols)
            comm = rep[i] @ rep[j] - rep[j] @ rep[i]
            if lhs != comm.flatten():
                return False
    return True


def semidirect(Ls: LieAlgebra, rep: Sequence[Matrix], abelian_dim: int) -> LieAlgebra:
    """``Ls ⋉ V`` with ``V`` abelian of dimension ``abelian_dim`` and ``[x, v] = rep(x) v``."""
    n, m = Ls.dim, abelian_dim
    if len(rep) != n or any((r.rows, r.cols) != (m, m) for r in rep):
        raise NotARepresentation(f"need {n} matrices of size {m}x{m}")
    if n and not is_representation(Ls, rep):
        raise NotARepresentation("rep([x, y]) != [rep(x), rep(y)]")
    brackets = {}
    for i, j, v in Ls.nonzero_brackets():
        brackets[(i, j)] = tuple(v) + zero_vector(m)
    for i in range(n):
        for a in range(m):
            img = rep[i].column(a)
            if any(img):
                brackets[(i, n + a)] = zero_vector(n) + img
    labels = list(Ls.basis_labels) + [f"v{a + 1}" for a in range(m)]
    return LieAlgebra.from_brackets(f"{Ls.name}⋉V{m}", labels, brackets)


@dataclass(frozen=True)
class FixWitness:
    x: Vector
    y: Vector  # [y, x] = x


def fix_witness_ideal(L: LieAlgebra, seed: int = FIX_SEED, samples: int = FIX_RANDOM_CANDIDATES):
    """Lower bound for ``fix(L)``: the ideal generated by found ``x`` with ``[y, x] = x``.

    Candidates are the basis vectors followed by ``samples`` pseudo-random
    rational combinations; for each, ``[y, x] = x`` is a linear system in ``y``.
    """
    n = L.dim
    rng = random.Random(seed)
    candidates = [L.basis_vector(i) for i in range(n)]
    for _ in range(samples):
        candidates.append(tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)))
    witnesses = []
    for x in candidates:
        if is_zero_vector(x):
            continue
        # [y, x] = -ad(x) y = x
        sol = solve_affine(adjoint(L, x), scale(-1, x))
        if sol is not None:
            witnesses.append(FixWitness(x, sol[0]))
    ideal = ideal_generated(L, Subspace.span([w.x for w in witnesses], n))
    return ideal, witnesses

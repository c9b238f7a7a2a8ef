"""Named Lie algebras with exact structure constants.

The sl(n) family and its Borel and parabolic subalgebras are realized as spans
of elementary matrices; structure constants come from matrix commutators.
Off-diagonal basis elements ``E_ij`` are listed in lexicographic order, then
the Cartan generators ``h_i = E_ii - E_{i+1,i+1}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .lie import LieAlgebra, semidirect
from .linalg import Matrix, solve_affine, unit_vector


class BadParameters(ValueError):
    pass


FAMILIES = {
    "abelian": "abelian(n), n >= 1",
    "heisenberg": "heisenberg",
    "sl": "sl(n), n >= 2",
    "borel_sl": "borel_sl(n), n >= 2",
    "parabolic_sl": "parabolic_sl(n, s1, s2, ...), simple roots 1 <= s < n, nonempty proper subset",
    "example_3_6": "example_3_6",
    "sl2_semidirect_V": "sl2_semidirect_V(n), n >= 1",
}


@dataclass(frozen=True)
class CatalogKey:
    name: str
    params: tuple = ()

    def __str__(self) -> str:
        return self.name if not self.params else f"{self.name}({','.join(map(str, self.params))})"


_KEY_RE = re.compile(r"^\s*([a-zA-Z_][a-zA-Z0-9_]*?)\s*(?:\(([^)]*)\))?\s*$")


def parse_key(text: str) -> CatalogKey:
    m = _KEY_RE.match(text)
    if not m:
        raise BadParameters(f"malformed catalog key {text!r}")
    name, args = m.group(1), m.group(2)
    # allow compact spellings like sl2, borel_sl3
    if args is None:
        cm = re.match(r"^(sl|borel_sl|abelian|sl2_semidirect_V)(\d+)$", name)
        if cm:
            name, args = cm.group(1), cm.group(2)
    params = ()
    if args is not None and args.strip():
        try:
            params = tuple(int(a) for a in re.split(r"[,;\s{}]+", args.strip()) if a)
        except ValueError:
            raise BadParameters(f"non-integer parameter in {text!r}") from None
    if name not in FAMILIES:
        raise BadParameters(f"unknown catalog family {name!r}")
    return CatalogKey(name, params)


def list_keys() -> list:
    return list(FAMILIES.values())


def _elementary(n: int, i: int, j: int) -> Matrix:
    """``E_ij`` with 1-based indices."""
    return Matrix.from_rows(
        [[1 if (r, c) == (i - 1, j - 1) else 0 for c in range(n)] for r in range(n)], n
    )


def _cartan(n: int, i: int) -> Matrix:
    return _elementary(n, i, i) - _elementary(n, i + 1, i + 1)


def _label(n: int, i: int, j: int) -> str:
    return f"E{i}{j}" if n < 10 else f"E{i},{j}"


def matrix_algebra(name: str, labels, mats) -> LieAlgebra:
    """Structure constants of the span of ``mats`` under the commutator."""
    n = len(mats)
    size = mats[0].rows
    coords = Matrix.from_columns([m.flatten() for m in mats], size * size)
    brackets = {}
    for i in range(n):
        for j in range(i + 1, n):
            comm = mats[i] @ mats[j] - mats[j] @ mats[i]
            sol = solve_affine(coords, comm.flatten())
            if sol is None:
                raise BadParameters(f"{name}: span of matrices is not closed under the commutator")
            if any(sol[0]):
                brackets[(i, j)] = sol[0]
    return LieAlgebra.from_brackets(name, labels, brackets)


def _sl_family(name: str, n: int, keep) -> LieAlgebra:
    labels, mats = [], []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and keep(i, j):
                labels.append(_label(n, i, j))
                mats.append(_elementary(n, i, j))
    for i in range(1, n):
        labels.append(f"h{i}")
        mats.append(_cartan(n, i))
    return matrix_algebra(name, labels, mats)


def abelian(n: int) -> LieAlgebra:
    if n < 1:
        raise BadParameters("abelian(n) needs n >= 1")
    return LieAlgebra.from_brackets(f"abelian({n})", [f"e{i + 1}" for i in range(n)], {})


def heisenberg() -> LieAlgebra:
    return LieAlgebra.from_brackets("heisenberg", ["e1", "e2", "e3"], {(0, 1): (0, 0, 1)})


def sl(n: int) -> LieAlgebra:
    if n < 2:
        raise BadParameters("sl(n) needs n >= 2")
    return _sl_family(f"sl({n})", n, lambda i, j: True)


def borel_sl(n: int) -> LieAlgebra:
    if n < 2:
        raise BadParameters("borel_sl(n) needs n >= 2")
    return _sl_family(f"borel_sl({n})", n, lambda i, j: i < j)


def parabolic_sl(n: int, roots) -> LieAlgebra:
    roots = tuple(sorted(set(roots)))
    if n < 2 or not roots or len(roots) >= n - 1 or any(not 1 <= s < n for s in roots):
        raise BadParameters("parabolic_sl(n, S) needs S a nonempty proper subset of 1..n-1")
    block, b = {}, 0
    for i in range(1, n + 1):
        block[i] = b
        if i not in roots:
            b += 1
    name = f"parabolic_sl({n},{{{','.join(map(str, roots))}}})"
    return _sl_family(name, n, lambda i, j: i < j or block[i] == block[j])


def example_3_6() -> LieAlgebra:
    """6-dimensional parabolic of sl(3): basis (E12, E13, E21, E23, E11-E22, E22-E33)."""
    mats = [
        _elementary(3, 1, 2),
        _elementary(3, 1, 3),
        _elementary(3, 2, 1),
        _elementary(3, 2, 3),
        _cartan(3, 1),
        _cartan(3, 2),
    ]
    return matrix_algebra("example_3_6", [f"e{i}" for i in range(1, 7)], mats)


def sl2_irrep(n: int):
    """Matrices of (E12, E21, h1) on the irreducible ``n``-dimensional module.

    Weight basis ``v_0..v_{n-1}``: ``h v_k = (m - 2k) v_k``, ``f v_k = (k+1) v_{k+1}``,
    ``e v_k = (m - k + 1) v_{k-1}`` with ``m = n - 1``.
    """
    m = n - 1
    e = [[0] * n for _ in range(n)]
    f = [[0] * n for _ in range(n)]
    h = [[0] * n for _ in range(n)]
    for k in range(n):
        h[k][k] = m - 2 * k
        if k + 1 < n:
            f[k + 1][k] = k + 1
        if k >= 1:
            e[k - 1][k] = m - k + 1
    return [Matrix.from_rows(x, n) for x in (e, f, h)]


def sl2_semidirect_V(n: int) -> LieAlgebra:
    if n < 1:
        raise BadParameters("sl2_semidirect_V(n) needs n >= 1")
    alg = semidirect(sl(2), sl2_irrep(n), n)
    return LieAlgebra(f"sl2_semidirect_V({n})", alg.basis_labels, alg.c)


def make(key) -> LieAlgebra:
    if isinstance(key, str):
        key = parse_key(key)
    p = key.params

    def want(k):
        if len(p) != k:
            raise BadParameters(f"{key.name} takes {k} parameter(s), got {len(p)}")

    if key.name == "abelian":
        want(1)
        return abelian(p[0])
    if key.name == "heisenberg":
        want(0)
        return heisenberg()
    if key.name == "sl":
        want(1)
        return sl(p[0])
    if key.name == "borel_sl":
        want(1)
        return borel_sl(p[0])
    if key.name == "parabolic_sl":
        if len(p) < 2:
            raise BadParameters("parabolic_sl needs n and at least one simple root")
        return parabolic_sl(p[0], p[1:])
    if key.name == "example_3_6":
        want(0)
        return example_3_6()
    if key.name == "sl2_semidirect_V":
        want(1)
        return sl2_semidirect_V(p[0])
    raise BadParameters(f"unknown catalog family {key.name!r}")


def borel_center_element(k: int):
    """``(borel_sl(k+1), z, h_indices)`` with ``z`` the coordinates of ``E_{1,k+1}``."""
    if k < 2:
        raise BadParameters("borel_center_element needs k >= 2")
    b = borel_sl(k + 1)
    labels = list(b.basis_labels)
    z = unit_vector(b.dim, labels.index(_label(k + 1, 1, k + 1)))
    h_indices = tuple(labels.index(f"h{i}") for i in range(1, k + 1))
    return b, z, h_indices


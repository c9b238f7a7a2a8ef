"""JSON interchange for algebras, products, endomorphisms and reports.

Rationals are written as strings (``"p/q"`` or ``"p"``) so nothing is ever
rounded; integers are also accepted on input, JSON floats are refused.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from typing import Any, Mapping

from . import catalog
from .cpa import CPAProduct, Classification
from .lie import LieAlgebra
from .linalg import DimensionMismatch, Matrix, Subspace, format_fraction, zero_vector
from .poly import param_names


class FormatError(ValueError):
    pass


def parse_rational(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise FormatError(f"rationals must be strings or integers, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"not a rational: {x!r}") from None
    raise FormatError(f"not a rational: {x!r}")


def _int(x, what):
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"{what} must be an integer")
    return x


def _coeff_map(v) -> dict:
    return {str(k): format_fraction(a) for k, a in enumerate(v) if a}


def _read_coeffs(data, n: int, what: str) -> tuple:
    if not isinstance(data, Mapping):
        raise FormatError(f"{what}: coeffs must be an object")
    v = [Fraction(0)] * n
    for k, a in data.items():
        try:
            idx = int(k)
        except ValueError:
            raise FormatError(f"{what}: bad coordinate {k!r}") from None
        if not 0 <= idx < n:
            raise FormatError(f"{what}: coordinate {idx} out of range")
        v[idx] = parse_rational(a)
    return tuple(v)


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# algebras ------------------------------------------------------------------


def algebra_to_json(L: LieAlgebra) -> dict:
    return {
        "name": L.name,
        "dim": L.dim,
        "basis": list(L.basis_labels),
        "brackets": [{"i": i, "j": j, "coeffs": _coeff_map(v)} for i, j, v in L.nonzero_brackets()],
    }


def algebra_from_json(data: Mapping) -> LieAlgebra:
    """Raw table: entries given in one order are completed antisymmetrically,
    entries given in both orders are kept as written so :func:`lie.validate` can see them.
    """
    try:
        n = _int(data["dim"], "dim")
        labels = data.get("basis") or [f"e{i + 1}" for i in range(n)]
        entries = data.get("brackets", [])
        name = data.get("name", "algebra")
    except (KeyError, TypeError, AttributeError):
        raise FormatError("algebra needs 'dim' and 'brackets'") from None
    if len(labels) != n:
        raise FormatError("basis length differs from dim")
    given = {}
    for e in entries:
        try:
            i, j = _int(e["i"], "i"), _int(e["j"], "j")
            coeffs = e["coeffs"]
        except (KeyError, TypeError):
            raise FormatError("bracket entries need 'i', 'j' and 'coeffs'") from None
        if not (0 <= i < n and 0 <= j < n):
            raise FormatError(f"bracket index ({i}, {j}) out of range")
        if (i, j) in given:
            raise FormatError(f"bracket ({i}, {j}) listed twice")
        given[(i, j)] = _read_coeffs(coeffs, n, f"bracket ({i}, {j})")
    table = [[zero_vector(n) for _ in range(n)] for _ in range(n)]
    for (i, j), v in given.items():
        table[i][j] = v
        if (j, i) not in given:
            table[j][i] = tuple(-a for a in v)
    return LieAlgebra.from_table(str(name), [str(x) for x in labels], table)


# products ------------------------------------------------------------------


def product_to_json(P: CPAProduct) -> dict:
    return {
        "dim": P.dim,
        "products": [{"i": i, "j": j, "coeffs": _coeff_map(v)} for i, j, v in P.nonzero_products()],
    }


def product_from_json(data: Mapping) -> CPAProduct:
    try:
        n = _int(data["dim"], "dim")
        entries = data.get("products", [])
    except (KeyError, TypeError, AttributeError):
        raise FormatError("product needs 'dim' and 'products'") from None
    prods = {}
    for e in entries:
        try:
            i, j = _int(e["i"], "i"), _int(e["j"], "j")
            coeffs = e["coeffs"]
        except (KeyError, TypeError):
            raise FormatError("product entries need 'i', 'j' and 'coeffs'") from None
        if not (0 <= i < n and 0 <= j < n):
            raise FormatError(f"product index ({i}, {j}) out of range")
        if i > j:
            raise FormatError("list products with i <= j only")
        if (i, j) in prods:
            raise FormatError(f"product ({i}, {j}) listed twice")
        prods[(i, j)] = _read_coeffs(coeffs, n, f"product ({i}, {j})")
    return CPAProduct.from_products(n, prods)


# matrices and subspaces ----------------------------------------------------


def matrix_to_json(M: Matrix) -> dict:
    return {"dim": M.rows, "matrix": [[format_fraction(a) for a in M.row(r)] for r in range(M.rows)]}


def matrix_from_json(data: Mapping) -> Matrix:
    try:
        rows = data["matrix"]
        n = _int(data.get("dim", len(rows)), "dim")
    except (KeyError, TypeError, AttributeError):
        raise FormatError("matrix file needs 'matrix'") from None
    if len(rows) != n or any(len(r) != n for r in rows):
        raise FormatError(f"matrix must be {n} x {n}")
    return Matrix.from_rows([[parse_rational(a) for a in r] for r in rows], n)


def subspace_to_json(S: Subspace) -> dict:
    return {"dim": S.dim, "basis": [[format_fraction(a) for a in v] for v in S.vectors]}


def vector_to_json(v) -> list:
    return [format_fraction(a) for a in v]


# classification ------------------------------------------------------------


def classification_to_json(c: Classification) -> dict:
    names = param_names(c.nparams)
    out = {
        "algebra": c.algebra,
        "dim": c.dim,
        "method": c.method,
        "kind": c.kind,
        "parameters": names,
        "linear_basis": [product_to_json(P) for P in c.linear_basis],
        "residuals": [{"coeffs": p.to_json(names), "text": p.to_str(names)} for p in c.residuals],
        "components": [comp.to_json(names) for comp in c.components],
        "residual_normal_form": [p.to_str(names) for p in c.normal_form],
    }
    if c.phi_basis is not None:
        out["phi_basis"] = [matrix_to_json(M)["matrix"] for M in c.phi_basis]
    if c.unresolved:
        out["unresolved"] = [
            {"on": comp.to_json(names), "residuals": [p.to_str(names) for p in ps]} for comp, ps in c.unresolved
        ]
    return out


# files ---------------------------------------------------------------------


def read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg})") from None


def load_algebra(ref: str) -> LieAlgebra:
    """A JSON file path, or a catalog key such as ``borel_sl(3)``."""
    if os.path.exists(ref):
        return algebra_from_json(read_json(ref))
    try:
        return catalog.make(ref)
    except catalog.BadParameters as exc:
        raise FormatError(f"{ref!r} is neither a readable file nor a catalog key ({exc})") from None


def load_product(path: str) -> CPAProduct:
    try:
        return product_from_json(read_json(path))
    except (ValueError, DimensionMismatch) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"{path}: {exc}") from None


def load_matrix(path: str) -> Matrix:
    return matrix_from_json(read_json(path))

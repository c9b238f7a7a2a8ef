"""Command-line entry point: ``cpalie <verb> ...``.

Exit codes: 0 success, 1 a check failed, 2 usage or file-format error.
Algebra arguments accept a JSON file or a catalog key (``borel_sl(3)``).
"""

from __future__ import annotations

import argparse
import sys

from . import catalog, cpa, lie
from .io import (
    FormatError,
    algebra_to_json,
    classification_to_json,
    dumps,
    load_algebra,
    load_matrix,
    load_product,
    matrix_to_json,
    parse_rational,
    product_to_json,
    subspace_to_json,
    vector_to_json,
)
from .linalg import DimensionMismatch
from . import suite as suite_mod

OK, CHECK_FAILED, USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(USAGE)


def _out(obj) -> None:
    sys.stdout.write(dumps(obj))


def _valid_algebra(ref: str) -> lie.LieAlgebra:
    L = load_algebra(ref)
    bad = lie.validate(L)
    if bad:
        raise lie.InvalidAlgebra(f"{ref}: {bad[0].kind} fails at {bad[0].indices}")
    return L


def _vector(text: str, n: int):
    parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
    if len(parts) != n:
        raise FormatError(f"expected {n} comma-separated rationals, got {len(parts)}")
    return tuple(parse_rational(p) for p in parts)


def _report(rep: cpa.AxiomReport) -> dict:
    out = {"ok": rep.ok, "eq4_commutative": rep.eq4_ok, "eq5_representation": rep.eq5_ok, "eq6_derivation": rep.eq6_ok}
    if rep.first_violation is not None:
        v = rep.first_violation
        out["first_violation"] = {
            "equation": v.equation,
            "triple": [t for t in v.triple if t is not None],
            "residual": vector_to_json(v.residual),
        }
    return out


# verbs ---------------------------------------------------------------------


def cmd_catalog(args) -> int:
    if args.action == "list":
        for line in catalog.list_keys():
            print(line)
        return OK
    if not args.key:
        raise FormatError("catalog emit needs a key")
    _out(algebra_to_json(catalog.make(args.key)))
    return OK


def cmd_validate(args) -> int:
    L = load_algebra(args.algebra)
    bad = lie.validate(L)
    _out({
        "ok": not bad,
        "dim": L.dim,
        "violations": [{"kind": v.kind, "indices": list(v.indices), "residual": vector_to_json(v.residual)} for v in bad],
    })
    return OK if not bad else CHECK_FAILED


def cmd_verify(args) -> int:
    L = _valid_algebra(args.algebra)
    rep = cpa.verify_cpa(L, load_product(args.product))
    _out(_report(rep))
    return OK if rep.ok else CHECK_FAILED


def cmd_chain(args) -> int:
    L = _valid_algebra(args.algebra)
    ch = cpa.ideal_chain(L, load_product(args.product))
    _out({
        "chain": [subspace_to_json(s) for s in ch.chain],
        "k_stable": ch.k_stable,
        "i_infinity": subspace_to_json(ch.i_infinity),
        "annihilator": subspace_to_json(ch.annihilator),
        "nondegenerate_quotient": ch.nondegenerate,
        "nilpotency_index": ch.nilpotency_index,
    })
    return OK


def cmd_inner(args) -> int:
    L = _valid_algebra(args.algebra)
    w = cpa.detect_inner(L, load_product(args.product))
    _out({
        "weakly_inner": w.weakly_inner,
        "inner": w.inner,
        "nil_inner": w.nil_inner,
        "nil_inner_exact": w.hom_family_dim == 0 or w.nil_inner,
        "phi": matrix_to_json(w.phi)["matrix"] if w.phi is not None else None,
    })
    return OK


def cmd_classify(args) -> int:
    L = _valid_algebra(args.algebra)
    _out(classification_to_json(cpa.classify(L, args.method)))
    return OK


def cmd_decompose(args) -> int:
    L = _valid_algebra(args.algebra)
    phi = load_matrix(args.phi)
    try:
        d = cpa.phi_decompose(L, phi)
    except cpa.UnsupportedSpectrum as exc:
        _out({"status": "unsupported", "reason": str(exc)})
        return CHECK_FAILED
    _out({
        "status": "pass" if d.ok else "fail",
        "eigenvalues": vector_to_json(d.eigenvalues),
        "multiplicities": list(d.multiplicities),
        "n_part": subspace_to_json(d.n_part),
        "h_part": subspace_to_json(d.h_part),
        "checks": d.checks,
    })
    return OK if d.ok else CHECK_FAILED


def cmd_construct(args) -> int:
    recipe, rest = args.recipe, args.args

    def need(k, usage):
        if len(rest) != k:
            raise FormatError(f"usage: construct {recipe} {usage}")

    if recipe == "cocycle":
        if len(rest) not in (1, 2):
            raise FormatError("usage: construct cocycle <algebra> [coefficients]")
        L = _valid_algebra(rest[0])
        I = lie.derived_algebra(L)
        basis = cpa.cocycle_space(L, I)
        coeffs = _vector(rest[1], len(basis)) if len(rest) == 2 else (1,) * len(basis)
        if basis:
            f = basis[0].scaled(0)
            for c, b in zip(coeffs, basis):
                f = f + b.scaled(c)
            P = cpa.cocycle_product(L, I, f)
        else:
            P = cpa.CPAProduct.zero(L.dim)
        _out({"cocycle_space_dim": len(basis), "product": product_to_json(P)})
    elif recipe == "central-z":
        need(2, "<algebra> <z as comma-separated rationals>")
        L = _valid_algebra(rest[0])
        _out(product_to_json(cpa.central_z_product(L, None, _vector(rest[1], L.dim))))
    elif recipe == "eigenfunctional":
        if len(rest) not in (1, 2):
            raise FormatError("usage: construct eigenfunctional <algebra> [v]")
        L = _valid_algebra(rest[0])
        v = _vector(rest[1], L.dim) if len(rest) == 2 else None
        P, lam = cpa.lie_eigenfunctional_product(L, v)
        _out({"lambda": vector_to_json(lam), "product": product_to_json(P)})
    elif recipe == "center-construction":
        need(1, "<algebra>")
        c = cpa.center_construction(_valid_algebra(rest[0]))
        _out({"case": c.case, "target": vector_to_json(c.target), "functional": vector_to_json(c.functional),
              "product": product_to_json(c.product)})
    elif recipe == "componentwise":
        need(4, "<algebra1> <product1> <algebra2> <product2>")
        L, P = cpa.componentwise_product(
            _valid_algebra(rest[0]), load_product(rest[1]), _valid_algebra(rest[2]), load_product(rest[3])
        )
        _out({"algebra": algebra_to_json(L), "product": product_to_json(P)})
    else:
        raise FormatError(f"unknown recipe {recipe!r}")
    return OK


def cmd_suite(args) -> int:
    try:
        cases = suite_mod.run(args.case)
    except KeyError:
        raise FormatError(f"unknown suite case {args.case!r}") from None
    if args.json:
        _out([c.to_json() for c in cases])
    else:
        for c in cases:
            print(f"{c.status.upper():12s}{c.id}")
    return OK if all(c.status != suite_mod.FAIL for c in cases) else CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cpalie", description="Exact CPA structures on Lie algebras.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("catalog", help="list or emit catalog algebras")
    s.add_argument("action", choices=["list", "emit"])
    s.add_argument("key", nargs="?")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("validate", help="check antisymmetry and the Jacobi identity")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_validate)

    for name, func, text in (
        ("verify", cmd_verify, "check the CPA axioms"),
        ("chain", cmd_chain, "ideal chain and annihilator"),
        ("inner", cmd_inner, "look for phi with x.y = [phi(x), y]"),
    ):
        s = sub.add_parser(name, help=text)
        s.add_argument("algebra")
        s.add_argument("product")
        s.set_defaults(func=func)

    s = sub.add_parser("classify", help="classify all CPA structures")
    s.add_argument("algebra")
    s.add_argument("--method", choices=["general", "inner"], default="general")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("decompose", help="split along the spectrum of phi")
    s.add_argument("algebra")
    s.add_argument("phi")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("construct", help="build a product from a recipe")
    s.add_argument("recipe", choices=["cocycle", "central-z", "eigenfunctional", "center-construction", "componentwise"])
    s.add_argument("args", nargs="*")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("suite", help="run the named checks")
    s.add_argument("--case")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_suite)
    return p


# errors that mean "the input fails a mathematical precondition"
_CHECK_ERRORS = (
    lie.InvalidAlgebra,
    lie.NotAnIdeal,
    cpa.NotACPA,
    cpa.NotATwoSidedIdeal,
    cpa.NotComplete,
    cpa.QuotientNotAbelian,
    cpa.NotACocycle,
    cpa.NotCentralInI,
    cpa.NotCommonEigenvector,
    cpa.NotSolvable,
    cpa.IsPerfect,
    cpa.TrivialCenter,
)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _CHECK_ERRORS as exc:
        sys.stderr.write(f"cpalie: {type(exc).__name__}: {exc}\n")
        return CHECK_FAILED
    except (FormatError, catalog.BadParameters, DimensionMismatch, OSError, ValueError) as exc:
        sys.stderr.write(f"cpalie: {type(exc).__name__}: {exc}\n")
        return USAGE


if __name__ == "__main__":
    raise SystemExit(main())

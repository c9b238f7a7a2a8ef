"""Sparse multivariate rational polynomials in parameters ``t1..td``."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import ZERO, format_fraction, to_fraction


class MPoly:
    """Immutable polynomial: ``{exponent tuple: coefficient}`` over ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping = ()):
        self.nvars = nvars
        clean = {}
        for exps, c in dict(terms).items():
            c = to_fraction(c)
            if c:
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise ValueError("exponent tuple length differs from nvars")
                clean[exps] = clean.get(exps, ZERO) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean
        self._hash = None

    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c) -> "MPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "MPoly":
        return cls(nvars, {tuple(1 if k == i else 0 for k in range(nvars)): 1})

    @classmethod
    def linear(cls, coeffs: Sequence, constant=0) -> "MPoly":
        n = len(coeffs)
        terms = {tuple(1 if k == i else 0 for k in range(n)): c for i, c in enumerate(coeffs)}
        terms[(0,) * n] = constant
        return cls(n, terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return self.degree <= 0

    def variables(self) -> tuple:
        return tuple(i for i in range(self.nvars) if any(e[i] for e in self.terms))

    def coefficient(self, exps) -> Fraction:
        return self.terms.get(tuple(exps), ZERO)

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.nvars)

    def linear_part(self) -> tuple:
        """Coefficients of ``t1..td`` in the degree-one part."""
        out = [ZERO] * self.nvars
        for e, c in self.terms.items():
            if sum(e) == 1:
                out[e.index(1)] = c
        return tuple(out)

    def __add__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            other = MPoly.const(self.nvars, other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, ZERO) + c
        return MPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        return self + (-other if isinstance(other, MPoly) else -to_fraction(other))

    def __rsub__(self, other) -> "MPoly":
        return (-self) + other

    def __mul__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            c = to_fraction(other)
            return MPoly(self.nvars, {e: c * a for e, a in self.terms.items()})
        terms = {}
        for e1, a in self.terms.items():
            for e2, b in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, ZERO) + a * b
        return MPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        out = MPoly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MPoly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __call__(self, point: Sequence) -> Fraction:
        total = ZERO
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= to_fraction(x) ** k
            total += term
        return total

    def substitute(self, images: Sequence["MPoly"]) -> "MPoly":
        """Replace variable ``i`` by ``images[i]`` (all over the same variable set)."""
        nv = images[0].nvars if images else self.nvars
        out = MPoly.zero(nv)
        for e, c in self.terms.items():
            term = MPoly.const(nv, c)
            for i, k in enumerate(e):
                if k:
                    term = term * images[i] ** k
            out = out + term
        return out

    def monic(self) -> "MPoly":
        """Scaled so the leading coefficient (graded order) is 1."""
        if not self.terms:
            return self
        lead = max(self.terms, key=_grade_key)
        return self * (1 / self.terms[lead])

    def to_json(self, names=None) -> dict:
        return {monomial_str(e, names): format_fraction(c) for e, c in sorted(self.terms.items(), key=lambda t: _grade_key(t[0]), reverse=True)}

    def to_str(self, names=None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: _grade_key(t[0]), reverse=True):
            mono = monomial_str(e, names)
            mag = abs(c)
            if mono == "1":
                body = format_fraction(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_fraction(mag)}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])

    __str__ = to_str

    def __repr__(self) -> str:
        return f"MPoly({self.to_str()})"


def _grade_key(e):
    # graded order; among equal degree, earlier variables rank higher
    return (sum(e), e)


def param_names(nvars: int) -> list:
    return [f"t{i + 1}" for i in range(nvars)]


def monomial_str(e, names=None) -> str:
    names = names or param_names(len(e))
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts) or "1"


def parse_monomial(text: str, names: Sequence[str]) -> tuple:
    e = [0] * len(names)
    if text.strip() == "1":
        return tuple(e)
    for part in text.split("*"):
        name, _, k = part.strip().partition("^")
        e[list(names).index(name)] += int(k) if k else 1
    return tuple(e)


def from_json(data: Mapping, names: Sequence[str]) -> MPoly:
    return MPoly(len(names), {parse_monomial(m, names): c for m, c in data.items()})

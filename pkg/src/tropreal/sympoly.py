"""Tropical polynomials in commuting indeterminates.

A polynomial is a finite max of monomials ``u + a1*x1 + ... + an*xn``
with rational ``u`` and nonnegative integer exponents.  These serve both
as symbolic coefficients of rational expressions and as the building
blocks of half-spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

from .qmax import QMax


class ArityMismatch(ValueError):
    """Operands live over different indeterminate sets."""


@dataclass(frozen=True, slots=True)
class SymMonomial:
    """coef ⊗ x1^e1 ⊗ ... ⊗ xn^en.  Evaluation absorbs bottom inputs."""

    coef: QMax
    exponents: Tuple[int, ...]

    @property
    def arity(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def evaluate(self, point: Sequence[QMax]) -> QMax:
        if len(point) != len(self.exponents):
            raise ArityMismatch(
                f"point of length {len(point)} for arity {len(self.exponents)}"
            )
        acc = self.coef
        for e, d in zip(self.exponents, point):
            if e:
                acc = acc * d ** e
        return acc

    def scaled(self, factor: QMax) -> "SymMonomial":
        return SymMonomial(self.coef * factor, self.exponents)


@dataclass(frozen=True, slots=True)
class SymPoly:
    """Finite max of monomials, keyed by exponent vector.

    Terms are kept sorted by exponent vector, one term per vector, no
    bottom coefficients; the empty term list is the semiring zero.
    """

    arity: int
    terms: Tuple[Tuple[Tuple[int, ...], QMax], ...]

    @staticmethod
    def zero(arity: int) -> "SymPoly":
        return SymPoly(arity, ())

    @staticmethod
    def unit(arity: int) -> "SymPoly":
        return SymPoly.constant(arity, QMax.unit())

    @staticmethod
    def constant(arity: int, value: QMax) -> "SymPoly":
        if value.is_bottom:
            return SymPoly(arity, ())
        return SymPoly(arity, (((0,) * arity, value),))

    @staticmethod
    def variable(arity: int, index: int, coef: Optional[QMax] = None) -> "SymPoly":
        if not 0 <= index < arity:
            raise ArityMismatch(f"variable {index} out of range for arity {arity}")
        c = QMax.unit() if coef is None else coef
        if c.is_bottom:
            return SymPoly(arity, ())
        exps = tuple(1 if i == index else 0 for i in range(arity))
        return SymPoly(arity, ((exps, c),))

    @staticmethod
    def from_monomials(arity: int, monos: Iterable[SymMonomial]) -> "SymPoly":
        acc: dict = {}
        for m in monos:
            if m.arity != arity:
                raise ArityMismatch("monomial arity mismatch")
            if m.coef.is_bottom:
                continue
            prev = acc.get(m.exponents)
            acc[m.exponents] = m.coef if prev is None else prev + m.coef
        return SymPoly(arity, tuple(sorted(acc.items())))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def monomials(self) -> Tuple[SymMonomial, ...]:
        return tuple(SymMonomial(c, e) for e, c in self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def constant_coefficient(self) -> QMax:
        zero_key = (0,) * self.arity
        for e, c in self.terms:
            if e == zero_key:
                return c
        return QMax.bottom()

    def __add__(self, other: "SymPoly") -> "SymPoly":
        self._check(other)
        acc = dict(self.terms)
        for e, c in other.terms:
            prev = acc.get(e)
            acc[e] = c if prev is None else prev + c
        return SymPoly(self.arity, tuple(sorted(acc.items())))

    def __mul__(self, other: "SymPoly") -> "SymPoly":
        self._check(other)
        acc: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                prev = acc.get(e)
                acc[e] = c if prev is None else prev + c
        return SymPoly(self.arity, tuple(sorted(acc.items())))

    def __pow__(self, k: int) -> "SymPoly":
        if k < 0:
            raise ValueError(f"negative power {k}")
        out = SymPoly.unit(self.arity)
        for _ in range(k):
            out = out * self
        return out

    def scaled(self, factor: QMax) -> "SymPoly":
        if factor.is_bottom:
            return SymPoly.zero(self.arity)
        return SymPoly(self.arity, tuple((e, c * factor) for e, c in self.terms))

    def evaluate(self, point: Sequence[QMax]) -> QMax:
        if len(point) != self.arity:
            raise ArityMismatch(
                f"point of length {len(point)} for arity {self.arity}"
            )
        acc = QMax.bottom()
        for e, c in self.terms:
            v = c
            for exp, d in zip(e, point):
                if exp:
                    v = v * d ** exp
            acc = acc + v
        return acc

    def _check(self, other: "SymPoly") -> None:
        if self.arity != other.arity:
            raise ArityMismatch(f"arity {self.arity} vs {other.arity}")


def poly_add(p: SymPoly, q: SymPoly) -> SymPoly:
    """Monomial-wise max with key merging."""
    return p + q


def poly_mul(p: SymPoly, q: SymPoly) -> SymPoly:
    """All pairwise products, merged by exponent vector."""
    return p * q


def evaluate(p: SymPoly, point: Sequence[QMax]) -> QMax:
    """Value of p at a point of QMax^n, with bottom absorption."""
    return p.evaluate(point)


def format_poly(p: SymPoly, names: Sequence[str]) -> str:
    """Render in the expression grammar restricted to X-degree 0."""
    if p.is_zero:
        return "-inf"
    parts = []
    for e, c in p.terms:
        parts.append(format_monomial(SymMonomial(c, e), names))
    return " + ".join(parts)


def format_monomial(m: SymMonomial, names: Sequence[str]) -> str:
    if m.coef.is_bottom:
        return "-inf"
    factors = []
    for name, e in zip(names, m.exponents):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    if not factors:
        return str(m.coef)
    if m.coef == QMax.unit():
        return " ".join(factors)
    return str(m.coef) + " " + " ".join(factors)

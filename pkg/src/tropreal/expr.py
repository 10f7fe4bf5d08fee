"""Rational expressions in one letter X over max-plus coefficients.

Coefficients are either concrete (QMax) or symbolic (SymPoly); a single
tree uses one kind throughout.  The grammar (ASCII):

    expr     := term ('+' term)*
    term     := factor+
    factor   := atom ('^' uint)? ('*')*
    atom     := rational | '-inf' | 'X' | ident | '(' expr ')'
    rational := '-'? uint ('/' uint)?

Juxtaposition of factors is the Cauchy product, '+' is max, postfix '*'
is Kleene star, '^k' is the k-fold product.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple, Union

from .qmax import QMax
from .sympoly import ArityMismatch, SymPoly, format_poly

Coef = Union[QMax, SymPoly]


class ExprError(ValueError):
    pass


class ParseError(ExprError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class StarOfUnit(ExprError):
    """Kleene star applied to a series with nonzero constant coefficient."""


class MixedCoefficients(ExprError):
    """A tree mixing concrete and symbolic coefficients."""


@dataclass(frozen=True, slots=True)
class Monomial:
    coef: Coef
    degree: int


@dataclass(frozen=True, slots=True)
class Sum:
    left: "RatExpr"
    right: "RatExpr"


@dataclass(frozen=True, slots=True)
class Product:
    left: "RatExpr"
    right: "RatExpr"


@dataclass(frozen=True, slots=True)
class Star:
    child: "RatExpr"


RatExpr = Union[Monomial, Sum, Product, Star]


def expr_arity(e: RatExpr) -> Optional[int]:
    """None for concrete trees, the indeterminate count for symbolic ones.

    Raises MixedCoefficients when subtrees disagree.
    """
    if isinstance(e, Monomial):
        return e.coef.arity if isinstance(e.coef, SymPoly) else None
    if isinstance(e, (Sum, Product)):
        a, b = expr_arity(e.left), expr_arity(e.right)
        if a is None:
            return b
        if b is None or a == b:
            return a
        raise MixedCoefficients(f"subtree arities {a} and {b}")
    return expr_arity(e.child)


def mono(coef: Coef, degree: int = 0) -> Monomial:
    if degree < 0:
        raise ExprError(f"negative degree {degree}")
    return Monomial(coef, degree)


def add(left: RatExpr, right: RatExpr) -> RatExpr:
    _join_arity(left, right)
    return Sum(left, right)


def mul(left: RatExpr, right: RatExpr) -> RatExpr:
    """Product; adjacent plain monomials collapse into one."""
    _join_arity(left, right)
    if isinstance(left, Monomial) and isinstance(right, Monomial):
        return Monomial(_coef_mul(left.coef, right.coef), left.degree + right.degree)
    return Product(left, right)


def star(child: RatExpr) -> Star:
    return Star(child)


def _coef_mul(a: Coef, b: Coef) -> Coef:
    if isinstance(a, SymPoly) != isinstance(b, SymPoly):
        raise MixedCoefficients("concrete and symbolic coefficients in one product")
    return a * b


def _join_arity(left: RatExpr, right: RatExpr) -> None:
    a, b = expr_arity(left), expr_arity(right)
    if a is not None and b is not None and a != b:
        raise MixedCoefficients(f"subtree arities {a} and {b}")
    if (a is None) != (b is None):
        raise MixedCoefficients("concrete and symbolic subtrees combined")


# ---------------------------------------------------------------------------
# Parsing


_TOKEN_KINDS = ("NUM", "BOTTOM", "X", "IDENT", "PLUS", "CARET", "STAR", "LP", "RP")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "+":
            tokens.append(("PLUS", ch, i)); i += 1
        elif ch == "^":
            tokens.append(("CARET", ch, i)); i += 1
        elif ch == "*":
            tokens.append(("STAR", ch, i)); i += 1
        elif ch == "(":
            tokens.append(("LP", ch, i)); i += 1
        elif ch == ")":
            tokens.append(("RP", ch, i)); i += 1
        elif ch == "-":
            if text.startswith("-inf", i):
                tokens.append(("BOTTOM", "-inf", i)); i += 4
            elif i + 1 < n and text[i + 1].isdigit():
                j = _scan_rational(text, i + 1)
                tokens.append(("NUM", text[i:j], i)); i = j
            else:
                raise ParseError("expected '-inf' or a negative rational", i)
        elif ch.isdigit():
            j = _scan_rational(text, i)
            tokens.append(("NUM", text[i:j], i)); i = j
        elif ch == "X":
            tokens.append(("X", ch, i)); i += 1
        elif ch.isalpha():
            j = i + 1
            while j < n and text[j].isalnum():
                j += 1
            tokens.append(("IDENT", text[i:j], i)); i = j
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    return tokens


def _scan_rational(text: str, start: int) -> int:
    j = start
    while j < len(text) and text[j].isdigit():
        j += 1
    if j < len(text) and text[j] == "/":
        k = j + 1
        while k < len(text) and text[k].isdigit():
            k += 1
        if k > j + 1:
            return k
    return j


class _Parser:
    def __init__(self, tokens, indeterminates: Sequence[str]):
        self.tokens = tokens
        self.pos = 0
        self.names = list(indeterminates)
        self.symbolic = bool(self.names)

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self._end())
        self.pos += 1
        return tok

    def _end(self) -> int:
        return self.tokens[-1][2] + len(self.tokens[-1][1]) if self.tokens else 0

    def parse(self) -> RatExpr:
        e = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        return e

    def expr(self) -> RatExpr:
        e = self.term()
        while True:
            tok = self.peek()
            if tok is None or tok[0] != "PLUS":
                return e
            self.take()
            e = add(e, self.term())

    def term(self) -> RatExpr:
        e = self.factor()
        while True:
            tok = self.peek()
            if tok is None or tok[0] not in ("NUM", "BOTTOM", "X", "IDENT", "LP"):
                return e
            e = mul(e, self.factor())

    def factor(self) -> RatExpr:
        e = self.atom()
        tok = self.peek()
        if tok is not None and tok[0] == "CARET":
            self.take()
            exp_tok = self.take()
            if exp_tok[0] != "NUM" or "/" in exp_tok[1] or exp_tok[1].startswith("-"):
                raise ParseError("power must be a nonnegative integer", exp_tok[2])
            e = _power(e, int(exp_tok[1]), self._const(QMax.unit()))
        while True:
            tok = self.peek()
            if tok is None or tok[0] != "STAR":
                return e
            self.take()
            e = star(e)

    def atom(self) -> RatExpr:
        tok = self.take()
        kind, text, at = tok
        if kind == "NUM":
            return mono(self._const(QMax.of(text)))
        if kind == "BOTTOM":
            return mono(self._const(QMax.bottom()))
        if kind == "X":
            return mono(self._const(QMax.unit()), 1)
        if kind == "IDENT":
            if text not in self.names:
                raise ParseError(f"unknown identifier {text!r}", at)
            return mono(SymPoly.variable(len(self.names), self.names.index(text)))
        if kind == "LP":
            e = self.expr()
            close = self.take()
            if close[0] != "RP":
                raise ParseError("expected ')'", close[2])
            return e
        raise ParseError(f"unexpected token {text!r}", at)

    def _const(self, value: QMax) -> Coef:
        if self.symbolic:
            return SymPoly.constant(len(self.names), value)
        return value


def _power(e: RatExpr, k: int, one: Coef) -> RatExpr:
    if k == 0:
        return mono(one)
    out = e
    for _ in range(k - 1):
        out = mul(out, e)
    return out


def parse(text: str, indeterminates: Sequence[str] = ()) -> RatExpr:
    """Parse an expression; identifiers must appear in ``indeterminates``."""
    if len(set(indeterminates)) != len(indeterminates):
        raise ExprError("duplicate indeterminate names")
    return _Parser(_tokenize(text), indeterminates).parse()


# ---------------------------------------------------------------------------
# Printing


def format_expr(e: RatExpr, names: Sequence[str] = ()) -> str:
    """Pretty-print; reparses to the same tree up to whitespace/parens."""
    return _fmt(e, names)


def _fmt(e: RatExpr, names) -> str:
    if isinstance(e, Sum):
        return f"{_fmt(e.left, names)} + {_fmt(e.right, names)}"
    if isinstance(e, Product):
        return f"{_fmt_tight(e.left, names)} {_fmt_tight(e.right, names)}"
    if isinstance(e, Star):
        return _fmt_starred(e.child, names) + "*"
    return _fmt_monomial(e, names)


def _fmt_tight(e: RatExpr, names) -> str:
    if isinstance(e, Sum):
        return f"({_fmt(e, names)})"
    return _fmt(e, names)


def _fmt_starred(child: RatExpr, names) -> str:
    if isinstance(child, Star):
        return _fmt_starred(child.child, names) + "*"
    if isinstance(child, Monomial) and _is_single_atom(child):
        return _fmt_monomial(child, names)
    return f"({_fmt(child, names)})"


def _is_single_atom(m: Monomial) -> bool:
    coef_is_unit = (
        m.coef == QMax.unit()
        if isinstance(m.coef, QMax)
        else m.coef == SymPoly.unit(m.coef.arity)
    )
    if m.degree == 0:
        return _coef_atomic(m.coef)
    return coef_is_unit


def _coef_atomic(c: Coef) -> bool:
    if isinstance(c, QMax):
        return True
    if len(c.terms) != 1:
        return False
    exps, coef = c.terms[0]
    nvars = sum(1 for x in exps if x)
    return (nvars == 0) or (nvars == 1 and coef == QMax.unit() and max(exps) == 1)


def _fmt_monomial(m: Monomial, names) -> str:
    coef = m.coef
    if isinstance(coef, QMax):
        coef_str = str(coef)
        coef_is_unit = coef == QMax.unit()
        coef_is_zero = coef.is_bottom
    else:
        if not names:
            names = tuple(f"d{i+1}" for i in range(coef.arity))
        coef_str = format_poly(coef, names)
        if len(coef.terms) > 1:
            coef_str = f"({coef_str})"
        coef_is_unit = coef == SymPoly.unit(coef.arity)
        coef_is_zero = coef.is_zero
    if m.degree == 0:
        return coef_str
    xpart = "X" if m.degree == 1 else f"X^{m.degree}"
    if coef_is_unit:
        return xpart
    if coef_is_zero:
        return f"-inf {xpart}"
    return f"{coef_str} {xpart}"


# ---------------------------------------------------------------------------
# Coefficients


def _kind_zero_one(e: RatExpr) -> Tuple[Coef, Coef]:
    arity = expr_arity(e)
    if arity is None:
        return QMax.bottom(), QMax.unit()
    return SymPoly.zero(arity), SymPoly.unit(arity)


def _coef_is_zero(c: Coef) -> bool:
    return c.is_bottom if isinstance(c, QMax) else c.is_zero


def coefficients(e: RatExpr, kmax: int) -> List[Coef]:
    """Coefficients 0..kmax of the series denoted by e, computed bottom-up.

    Cauchy products are truncated at degree kmax; stars use the
    recurrence T_0 = 1, T_k = max_{1<=j<=k} S_j T_{k-j}, valid because
    admitted star children have zero constant coefficient.
    """
    zero, one = _kind_zero_one(e)
    memo: dict = {}

    def go(node: RatExpr) -> List[Coef]:
        key = id(node)
        got = memo.get(key)
        if got is not None:
            return got
        if isinstance(node, Monomial):
            out = [zero] * (kmax + 1)
            if node.degree <= kmax:
                out[node.degree] = out[node.degree] + node.coef
        elif isinstance(node, Sum):
            ls, rs = go(node.left), go(node.right)
            out = [a + b for a, b in zip(ls, rs)]
        elif isinstance(node, Product):
            ls, rs = go(node.left), go(node.right)
            out = []
            for k in range(kmax + 1):
                acc = zero
                for i in range(k + 1):
                    acc = acc + ls[i] * rs[k - i]
                out.append(acc)
        else:
            cs = go(node.child)
            if not _coef_is_zero(cs[0]):
                raise StarOfUnit(
                    "star of a series with nonzero constant coefficient"
                )
            out = [one]
            for k in range(1, kmax + 1):
                acc = zero
                for j in range(1, k + 1):
                    acc = acc + cs[j] * out[k - j]
                out.append(acc)
        memo[key] = out
        return out

    return go(e)


def coefficient(e: RatExpr, k: int) -> Coef:
    """The k-th coefficient of the series denoted by e."""
    if k < 0:
        raise ExprError(f"negative index {k}")
    return coefficients(e, k)[k]


class SeriesStream:
    """Deterministic, memoizing coefficient generator k -> <S, X^k>."""

    def __init__(self, fn: Callable[[int], Coef]):
        self._fn = fn
        self._cache: dict = {}

    @staticmethod
    def from_expr(e: RatExpr) -> "SeriesStream":
        state = {"upto": -1, "coeffs": []}

        def fn(k: int) -> Coef:
            if k > state["upto"]:
                grow = max(k, 2 * state["upto"] + 1, 8)
                state["coeffs"] = coefficients(e, grow)
                state["upto"] = grow
            return state["coeffs"][k]

        return SeriesStream(fn)

    def coefficient(self, k: int) -> Coef:
        if k < 0:
            raise ExprError(f"negative index {k}")
        got = self._cache.get(k)
        if got is None:
            got = self._fn(k)
            self._cache[k] = got
        return got

    def coefficients(self, kmax: int) -> List[Coef]:
        return [self.coefficient(k) for k in range(kmax + 1)]


def evaluate_at(e: RatExpr, point: Sequence[QMax]) -> RatExpr:
    """Apply the evaluation morphism: substitute values for indeterminates."""
    arity = expr_arity(e)
    if arity is not None and len(point) != arity:
        raise ArityMismatch(f"point of length {len(point)} for arity {arity}")

    def go(node: RatExpr) -> RatExpr:
        if isinstance(node, Monomial):
            coef = node.coef
            if isinstance(coef, SymPoly):
                coef = coef.evaluate(point)
            return Monomial(coef, node.degree)
        if isinstance(node, Sum):
            return Sum(go(node.left), go(node.right))
        if isinstance(node, Product):
            return Product(go(node.left), go(node.right))
        return Star(go(node.child))

    return go(e)

"""Normal forms for max-plus rational series.

Three stages, each denoting the same series:

  * star-height one:  max_i P_i (q_i X^c)*  with polynomial P_i;
  * transient form:   P ⊕ X^(kappa c) max_i u_i X^(mu_i) (q_i X^c)*,
    where P is a dense table of the first kappa*c coefficients;
  * canonical form (concrete only): one geometric tail per residue,
    with minimal period and minimal transient, so that two series are
    equal iff their canonical forms are structurally identical.

Merge, undersample, and shift act on coefficient streams and on forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from . import expr as ex
from .expr import Coef, RatExpr, SeriesStream, StarOfUnit
from .qmax import QMax
from .sympoly import SymPoly

# Polynomial in X over the coefficient semiring: sorted (degree, coef) pairs.
PolyX = Tuple[Tuple[int, Coef], ...]


def _zero(arity: Optional[int]) -> Coef:
    return QMax.bottom() if arity is None else SymPoly.zero(arity)


def _one(arity: Optional[int]) -> Coef:
    return QMax.unit() if arity is None else SymPoly.unit(arity)


def _is_zero(c: Coef) -> bool:
    return c.is_bottom if isinstance(c, QMax) else c.is_zero


def _sort_key(x):
    if isinstance(x, QMax):
        return ((0,) if x.is_bottom else (1, x.value),)
    return tuple((e, _sort_key(c)) for e, c in x.terms)


def _px_key(p: PolyX):
    return tuple((d, _sort_key(c)) for d, c in p)


def px_make(pairs) -> PolyX:
    acc: dict = {}
    for d, c in pairs:
        if _is_zero(c):
            continue
        prev = acc.get(d)
        acc[d] = c if prev is None else prev + c
    return tuple(sorted(acc.items()))


def px_add(p: PolyX, q: PolyX) -> PolyX:
    return px_make(list(p) + list(q))


def px_mul(p: PolyX, q: PolyX) -> PolyX:
    return px_make((d1 + d2, c1 * c2) for d1, c1 in p for d2, c2 in q)


def px_constant_coef(p: PolyX, arity: Optional[int]) -> Coef:
    for d, c in p:
        if d == 0:
            return c
    return _zero(arity)


def px_degree(p: PolyX) -> int:
    return p[-1][0] if p else -1


@dataclass(frozen=True, slots=True)
class StarHeightOne:
    cycle: int
    terms: Tuple[Tuple[PolyX, Coef], ...]
    arity: Optional[int]


@dataclass(frozen=True, slots=True)
class TransientForm:
    transient: Tuple[Coef, ...]
    kappa: int
    cycle: int
    tails: Tuple[Tuple[Coef, int, Coef], ...]
    arity: Optional[int]


@dataclass(frozen=True, slots=True)
class CanonicalUGM:
    """Merge of ultimately geometric series, one tail (u_j, q_j) per residue.

    Coefficient law: <S, X^((k+kappa)c+j)> = u_j ⊗ q_j^k for all k >= 0,
    with (bottom, bottom) tails for residues that end identically bottom.
    """

    transient: Tuple[QMax, ...]
    kappa: int
    cycle: int
    tails: Tuple[Tuple[QMax, QMax], ...]


def _sho_make(cycle: int, terms, arity: Optional[int]) -> StarHeightOne:
    merged: dict = {}
    for p, q in terms:
        if not p:
            continue
        key = _sort_key(q)
        if key in merged:
            q0, p0 = merged[key]
            merged[key] = (q0, px_add(p0, p))
        else:
            merged[key] = (q, p)
    out = tuple(
        (p, q) for _, (q, p) in sorted(merged.items(), key=lambda kv: kv[0])
    )
    return StarHeightOne(cycle, out, arity)


def _sho_with_period(s: StarHeightOne, c2: int) -> StarHeightOne:
    if c2 % s.cycle:
        raise ValueError(f"{c2} is not a multiple of period {s.cycle}")
    alpha = c2 // s.cycle
    if alpha == 1:
        return s
    terms = []
    for p, q in s.terms:
        unroll = px_make((k * s.cycle, q ** k) for k in range(alpha))
        terms.append((px_mul(p, unroll), q ** alpha))
    return _sho_make(c2, terms, s.arity)


def _sho_add(a: StarHeightOne, b: StarHeightOne) -> StarHeightOne:
    c = math.lcm(a.cycle, b.cycle)
    a2, b2 = _sho_with_period(a, c), _sho_with_period(b, c)
    return _sho_make(c, a2.terms + b2.terms, a.arity if a.arity is not None else b.arity)


def _sho_mul(a: StarHeightOne, b: StarHeightOne) -> StarHeightOne:
    c = math.lcm(a.cycle, b.cycle)
    a2, b2 = _sho_with_period(a, c), _sho_with_period(b, c)
    terms = []
    for p1, q1 in a2.terms:
        for p2, q2 in b2.terms:
            terms.append((px_mul(p1, p2), q1 + q2))
    return _sho_make(c, terms, a.arity if a.arity is not None else b.arity)


def _sho_one(arity: Optional[int]) -> StarHeightOne:
    return _sho_make(1, ((px_make([(0, _one(arity))]), _zero(arity)),), arity)


def _poly_star(w: PolyX, arity: Optional[int]) -> StarHeightOne:
    """(max of monomials a X^d)* = product of the monomial stars (a X^d)*."""
    out = _sho_one(arity)
    for d, a in w:
        factor = StarHeightOne(d, ((px_make([(0, _one(arity))]), a),), arity)
        out = _sho_mul(out, factor)
    return out


def _sho_star(s: StarHeightOne) -> StarHeightOne:
    const = _zero(s.arity)
    for p, _ in s.terms:
        const = const + px_constant_coef(p, s.arity)
    if not _is_zero(const):
        raise StarOfUnit("star of a series with nonzero constant coefficient")
    out = _sho_one(s.arity)
    for p, q in s.terms:
        if _is_zero(q):
            # P* is a plain polynomial star
            factor = _poly_star(p, s.arity)
        else:
            # (P (qX^c)*)* = 1 ⊕ P (P ⊕ qX^c)*
            w = px_add(p, px_make([(s.cycle, q)]))
            inner = _sho_mul(
                _sho_make(s.cycle, ((p, _zero(s.arity)),), s.arity),
                _poly_star(w, s.arity),
            )
            factor = _sho_add(_sho_one(s.arity), inner)
        out = _sho_mul(out, factor)
    return out


def to_star_height_one(e: RatExpr) -> StarHeightOne:
    """Rewrite an admissible expression with stars on monomials only."""
    arity = ex.expr_arity(e)

    def go(node: RatExpr) -> StarHeightOne:
        if isinstance(node, ex.Monomial):
            if _is_zero(node.coef):
                return _sho_make(1, (), arity)
            p = px_make([(node.degree, node.coef)])
            return _sho_make(1, ((p, _zero(arity)),), arity)
        if isinstance(node, ex.Sum):
            return _sho_add(go(node.left), go(node.right))
        if isinstance(node, ex.Product):
            return _sho_mul(go(node.left), go(node.right))
        return _sho_star(go(node.child))

    return go(e)


def to_transient_form(s: StarHeightOne, kappa_min: int = 0) -> TransientForm:
    """Unroll stars so every polynomial part lands in a dense table."""
    c = s.cycle
    maxdeg = max((px_degree(p) for p, _ in s.terms), default=-1)
    if maxdeg < 0:
        kappa = kappa_min
    else:
        kappa = max(kappa_min, maxdeg // c + 1)
    table: List[Coef] = [_zero(s.arity)] * (kappa * c)
    tails: List[Tuple[Coef, int, Coef]] = []
    for p, q in s.terms:
        for d, a in p:
            m0 = (kappa * c - d + c - 1) // c
            for m in range(m0):
                idx = d + m * c
                table[idx] = table[idx] + a * q ** m
            u = a * q ** m0
            if not _is_zero(u):
                tails.append((u, d + m0 * c - kappa * c, q))
    return TransientForm(tuple(table), kappa, c, _merge_tails(tails), s.arity)


def _merge_tails(tails) -> Tuple[Tuple[Coef, int, Coef], ...]:
    merged: dict = {}
    for u, m, q in tails:
        if _is_zero(u):
            continue
        key = (m, _sort_key(q))
        if key in merged:
            u0, q0 = merged[key]
            merged[key] = (u0 + u, q0)
        else:
            merged[key] = (u, q)
    return tuple(
        (u, key[0], q)
        for key, (u, q) in sorted(merged.items(), key=lambda kv: kv[0])
    )


def tf_coefficient(t: TransientForm, n: int) -> Coef:
    base = t.kappa * t.cycle
    if n < base:
        return t.transient[n]
    k, j = divmod(n - base, t.cycle)
    acc = _zero(t.arity)
    for u, m, q in t.tails:
        if m == j:
            acc = acc + u * q ** k
    return acc


def tf_with_kappa(t: TransientForm, kappa2: int) -> TransientForm:
    if kappa2 < t.kappa:
        raise ValueError("cannot shrink the transient")
    if kappa2 == t.kappa:
        return t
    base = t.kappa * t.cycle
    extra = [tf_coefficient(t, base + i) for i in range((kappa2 - t.kappa) * t.cycle)]
    delta = kappa2 - t.kappa
    tails = [(u * q ** delta, m, q) for u, m, q in t.tails]
    return TransientForm(
        t.transient + tuple(extra), kappa2, t.cycle, _merge_tails(tails), t.arity
    )


def tf_with_period(t: TransientForm, c2: int) -> TransientForm:
    if c2 % t.cycle:
        raise ValueError(f"{c2} is not a multiple of period {t.cycle}")
    alpha = c2 // t.cycle
    if alpha == 1:
        return t
    kappa2 = -(-t.kappa // alpha)
    t = tf_with_kappa(t, kappa2 * alpha)
    tails = []
    for u, m, q in t.tails:
        for s in range(alpha):
            tails.append((u * q ** s, m + s * t.cycle, q ** alpha))
    return TransientForm(t.transient, kappa2, c2, _merge_tails(tails), t.arity)


def ugm_coefficient(f: CanonicalUGM, n: int) -> QMax:
    base = f.kappa * f.cycle
    if n < base:
        return f.transient[n]
    k, j = divmod(n - base, f.cycle)
    u, q = f.tails[j]
    return u * q ** k


def ugm_to_tf(f: CanonicalUGM) -> TransientForm:
    tails = tuple(
        (u, j, q) for j, (u, q) in enumerate(f.tails) if not u.is_bottom
    )
    return TransientForm(f.transient, f.kappa, f.cycle, tails, None)


def ugm_reexpress(f: CanonicalUGM, kappa2: int, c2: int) -> CanonicalUGM:
    """Rewrite losslessly at a coarser (kappa2, c2); stays one-tail-per-residue."""
    if c2 % f.cycle:
        raise ValueError(f"{c2} is not a multiple of period {f.cycle}")
    base2 = kappa2 * c2
    if base2 < f.kappa * f.cycle:
        raise ValueError("transient cannot shrink under re-expression")
    table = tuple(ugm_coefficient(f, n) for n in range(base2))
    tails = []
    for i in range(c2):
        v = ugm_coefficient(f, base2 + i)
        if v.is_bottom:
            tails.append((QMax.bottom(), QMax.bottom()))
            continue
        w = ugm_coefficient(f, base2 + i + c2)
        if w.is_bottom:
            tails.append((v, QMax.bottom()))
        else:
            tails.append((v, QMax(w.value - v.value)))
    return CanonicalUGM(table, kappa2, c2, tuple(tails))


def _divisors(n: int) -> List[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def canonicalize(t: TransientForm) -> CanonicalUGM:
    """Reduce a concrete transient form to the minimal canonical shape.

    Per residue the dominant tail is the one with the largest rate, ties
    broken by the largest offset; the exact crossing index past which it
    majorizes every other tail is folded into the transient table.  The
    period is then lowered to the smallest valid divisor and transient
    blocks obeying the geometric law are peeled off.
    """
    if t.arity is not None:
        raise ValueError("canonical form requires concrete coefficients")
    c = t.cycle
    per_residue: List[List[Tuple[QMax, QMax]]] = [[] for _ in range(c)]
    for u, m, q in t.tails:
        if not u.is_bottom:
            per_residue[m].append((u, q))

    folds = 0
    dominants: List[Tuple[QMax, QMax]] = []
    for lines in per_residue:
        if not lines:
            dominants.append((QMax.bottom(), QMax.bottom()))
            continue
        qstar = max(q for _, q in lines)
        ustar = max(u for u, q in lines if q == qstar)
        need = 0
        for u, q in lines:
            if q == qstar:
                continue
            if q.is_bottom:
                if not u <= ustar:
                    need = max(need, 1)
            else:
                gap = Fraction(u.value - ustar.value) / (qstar.value - q.value)
                need = max(need, -(-gap.numerator // gap.denominator))
        folds = max(folds, need)
        dominants.append((ustar, qstar))

    kappa1 = t.kappa + folds
    base1 = kappa1 * c
    table = [tf_coefficient(t, n) for n in range(base1)]
    tails1 = []
    for u, q in dominants:
        u2 = u * q ** folds
        tails1.append((QMax.bottom(), QMax.bottom()) if u2.is_bottom else (u2, q))
    work = CanonicalUGM(tuple(table), kappa1, c, tuple(tails1))
    # One extra block so the tail region is free of one-shot values, which
    # would otherwise hide a valid smaller period behind a longer transient.
    work = ugm_reexpress(work, kappa1 + 1, c)

    for c2 in _divisors(c):
        cand = _try_period(work, c2)
        if cand is not None:
            work = cand
            break

    return _peel(work)


def _try_period(f: CanonicalUGM, c2: int) -> Optional[CanonicalUGM]:
    beta = f.cycle // c2
    base = f.kappa * f.cycle
    tails = []
    for i in range(c2):
        v = ugm_coefficient(f, base + i)
        if v.is_bottom:
            tails.append((QMax.bottom(), QMax.bottom()))
        else:
            w = ugm_coefficient(f, base + i + c2)
            if w.is_bottom:
                tails.append((v, QMax.bottom()))
            else:
                tails.append((v, QMax(w.value - v.value)))
    cand = CanonicalUGM(f.transient, base // c2, c2, tuple(tails))
    for i in range(c2):
        for m in range(2 * beta):
            if ugm_coefficient(cand, base + i + m * c2) != ugm_coefficient(
                f, base + i + m * c2
            ):
                return None
    return cand


def _peel(f: CanonicalUGM) -> CanonicalUGM:
    table = list(f.transient)
    tails = list(f.tails)
    kappa, c = f.kappa, f.cycle
    while kappa > 0:
        nxt = []
        for i in range(c):
            u, q = tails[i]
            prev = table[(kappa - 1) * c + i]
            if u.is_bottom:
                nxt.append((prev, QMax.bottom()))
            elif q.is_bottom:
                nxt = None
                break
            elif prev == QMax(u.value - q.value):
                nxt.append((prev, q))
            else:
                nxt = None
                break
        if nxt is None:
            break
        del table[(kappa - 1) * c:]
        tails = nxt
        kappa -= 1
    return CanonicalUGM(tuple(table), kappa, c, tuple(tails))


# ---------------------------------------------------------------------------
# Merge / undersample / shift

Serieslike = Union[SeriesStream, RatExpr, TransientForm, CanonicalUGM]


def _as_stream(t: Serieslike) -> SeriesStream:
    if isinstance(t, SeriesStream):
        return t
    if isinstance(t, TransientForm):
        return SeriesStream(lambda n: tf_coefficient(t, n))
    if isinstance(t, CanonicalUGM):
        return SeriesStream(lambda n: ugm_coefficient(t, n))
    return SeriesStream.from_expr(t)


def undersample(t: Serieslike, j: int, c: int):
    """The series k -> <T, X^(kc+j)>; forms stay forms, streams stay streams."""
    if not 0 <= j < c:
        raise ValueError(f"residue {j} out of range for period {c}")
    if isinstance(t, TransientForm):
        return _tf_undersample(t, j, c)
    if isinstance(t, CanonicalUGM):
        out = _tf_undersample(ugm_to_tf(t), j, c)
        return canonicalize(out)
    src = _as_stream(t)
    return SeriesStream(lambda k: src.coefficient(k * c + j))


def _tf_undersample(t: TransientForm, j: int, c: int) -> TransientForm:
    e = math.lcm(t.cycle, c)
    t2 = tf_with_period(t, e)
    f = e // c
    table = tuple(tf_coefficient(t2, k * c + j) for k in range(t2.kappa * f))
    tails = []
    for u, m, q in t2.tails:
        if (m - j) % c == 0:
            tails.append((u, (m - j) // c, q))
    return TransientForm(table, t2.kappa, f, _merge_tails(tails), t.arity)


def merge(parts: Sequence[Serieslike]) -> SeriesStream:
    """Interleave c series: coefficient (kc+j) of the result is part j at k."""
    if not parts:
        raise ValueError("merge of an empty list")
    streams = [_as_stream(p) for p in parts]
    c = len(streams)
    return SeriesStream(lambda n: streams[n % c].coefficient(n // c))


def shift(t: Serieslike, m: int):
    """Drop the first m coefficients: k -> <T, X^(m+k)>."""
    if m < 0:
        raise ValueError(f"negative shift {m}")
    if isinstance(t, TransientForm):
        return _tf_shift(t, m)
    if isinstance(t, CanonicalUGM):
        return canonicalize(_tf_shift(ugm_to_tf(t), m))
    src = _as_stream(t)
    return SeriesStream(lambda k: src.coefficient(k + m))


def _tf_shift(t: TransientForm, m: int) -> TransientForm:
    if m == 0:
        return t
    c = t.cycle
    base = t.kappa * c
    table = tuple(tf_coefficient(t, i + m) for i in range(base))
    tails = []
    for u, mu, q in t.tails:
        k0 = max(0, -(-(m - mu) // c))
        tails.append((u * q ** k0, mu + k0 * c - m, q))
    return TransientForm(table, t.kappa, c, _merge_tails(tails), t.arity)


# ---------------------------------------------------------------------------
# Equality and re-expansion


def series_equal(a: RatExpr, b: RatExpr) -> bool:
    """Exact equality of two concrete rational series."""
    fa = canonicalize(to_transient_form(to_star_height_one(a)))
    fb = canonicalize(to_transient_form(to_star_height_one(b)))
    c = math.lcm(fa.cycle, fb.cycle)
    kappa = max(-(-(fa.kappa * fa.cycle) // c), -(-(fb.kappa * fb.cycle) // c))
    return ugm_reexpress(fa, kappa, c) == ugm_reexpress(fb, kappa, c)


def _coef_mono(coef: Coef, degree: int) -> RatExpr:
    return ex.mono(coef, degree)


def _px_to_expr(p: PolyX, arity: Optional[int]) -> RatExpr:
    if not p:
        return ex.mono(_zero(arity))
    out = None
    for d, c in p:
        node = _coef_mono(c, d)
        out = node if out is None else ex.add(out, node)
    return out


def sho_to_expr(s: StarHeightOne) -> RatExpr:
    if not s.terms:
        return ex.mono(_zero(s.arity))
    out = None
    for p, q in s.terms:
        node = ex.mul(_px_to_expr(p, s.arity), ex.star(ex.mono(q, s.cycle)))
        out = node if out is None else ex.add(out, node)
    return out


def tf_to_expr(t: TransientForm) -> RatExpr:
    base = t.kappa * t.cycle
    parts = [
        ex.mono(c, i) for i, c in enumerate(t.transient) if not _is_zero(c)
    ]
    tail_sum = None
    for u, m, q in t.tails:
        node = ex.mul(ex.mono(u, m), ex.star(ex.mono(q, t.cycle)))
        tail_sum = node if tail_sum is None else ex.add(tail_sum, node)
    if tail_sum is not None:
        parts.append(ex.mul(ex.mono(_one(t.arity), base), tail_sum))
    if not parts:
        return ex.mono(_zero(t.arity))
    out = parts[0]
    for p in parts[1:]:
        out = ex.add(out, p)
    return out


def ugm_to_expr(f: CanonicalUGM) -> RatExpr:
    return tf_to_expr(ugm_to_tf(f))


def format_sho(s: StarHeightOne, names: Sequence[str] = ()) -> str:
    return ex.format_expr(sho_to_expr(s), names)


def format_tf(t: TransientForm, names: Sequence[str] = ()) -> str:
    return ex.format_expr(tf_to_expr(t), names)


def format_ugm(f: CanonicalUGM) -> str:
    return ex.format_expr(ugm_to_expr(f))

"""The set {S = S0} of coefficient values making a symbolic series equal
a concrete one, computed as a finite union of polyhedra.

Pipeline: normalize both sides, align them to a common transient length
and period, split by residues, compare the dense transient tables
pointwise, and compare the geometric tails through the line-comparison
case split.  Every step stays exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from . import expr as ex
from .expr import RatExpr
from .normalform import (
    CanonicalUGM,
    TransientForm,
    canonicalize,
    series_equal,
    tf_with_kappa,
    tf_with_period,
    to_star_height_one,
    to_transient_form,
    ugm_reexpress,
)
from .qmax import QMax
from .semipoly import (
    SemiPolySet,
    empty_set,
    make_sps,
    set_poly_eq,
    set_poly_is_zero,
    set_poly_le,
    sps_intersect,
    whole_space,
)
from .sympoly import SymPoly


@dataclass(frozen=True, slots=True)
class AlignedPair:
    """Symbolic transient form and concrete tail form at the same (kappa, c)."""

    sym: TransientForm
    conc: CanonicalUGM


def align(sym: TransientForm, conc: CanonicalUGM) -> AlignedPair:
    """Rewrite both forms losslessly at c = lcm of periods, kappa = max."""
    c = math.lcm(sym.cycle, conc.cycle)
    kappa = max(
        -(-(sym.kappa * sym.cycle) // c),
        -(-(conc.kappa * conc.cycle) // c),
    )
    sym2 = tf_with_kappa(tf_with_period(sym, c), kappa)
    conc2 = ugm_reexpress(conc, kappa, c)
    return AlignedPair(sym2, conc2)


def line_le_set(u: SymPoly, q: SymPoly, u0: QMax, q0: QMax) -> SemiPolySet:
    """{u (q X)* <= u0 (q0 X)*} = {u = 0} ∪ ({u <= u0} ∩ {q <= q0})."""
    arity = u.arity
    zero_branch = set_poly_is_zero(u)
    both = sps_intersect(
        set_poly_le(u, SymPoly.constant(arity, u0)),
        set_poly_le(q, SymPoly.constant(arity, q0)),
    )
    return _union(zero_branch, both)


def line_eq_set(u: SymPoly, q: SymPoly, u0: QMax, q0: QMax) -> SemiPolySet:
    """{u (q X)* = u0 (q0 X)*}: offset and rate must match, unless u0 is 0."""
    arity = u.arity
    if u0.is_bottom:
        return set_poly_is_zero(u)
    return sps_intersect(
        set_poly_eq(u, SymPoly.constant(arity, u0)),
        set_poly_eq(q, SymPoly.constant(arity, q0)),
    )


def convex_eq_set(
    lines: Sequence[Tuple[SymPoly, SymPoly]], u0: QMax, q0: QMax, arity: int
) -> SemiPolySet:
    """{max_i u_i (q_i X)* = u0 (q0 X)*} via the dominant-line case split."""
    if not lines:
        return whole_space(arity) if u0.is_bottom else empty_set(arity)
    if u0.is_bottom:
        total = SymPoly.zero(arity)
        for u, _ in lines:
            total = total + u
        return set_poly_is_zero(total)
    if q0.is_bottom:
        # Equality with u0 X^0: coefficient 0 matches and the rest vanishes.
        head = SymPoly.zero(arity)
        rest = SymPoly.zero(arity)
        for u, q in lines:
            head = head + u
            rest = rest + u * q
        return sps_intersect(
            set_poly_eq(head, SymPoly.constant(arity, u0)),
            set_poly_is_zero(rest),
        )
    out = empty_set(arity)
    for j, (uj, qj) in enumerate(lines):
        branch = line_eq_set(uj, qj, u0, q0)
        for i, (ui, qi) in enumerate(lines):
            if i == j:
                continue
            if not branch.parts:
                break
            branch = sps_intersect(branch, line_le_set(ui, qi, u0, q0))
        out = _union(out, branch)
    return out


def _union(a: SemiPolySet, b: SemiPolySet) -> SemiPolySet:
    return make_sps(a.arity, a.parts + b.parts)


def _as_sympoly(coef, arity: int) -> SymPoly:
    if isinstance(coef, SymPoly):
        return coef
    return SymPoly.constant(arity, coef)


def equality_set(sym: RatExpr, conc: RatExpr) -> SemiPolySet:
    """The semi-polyhedral set of points d with [d]sym equal to conc.

    ``sym`` may be concrete, in which case the answer is the whole
    0-dimensional space or the empty one.
    """
    arity = ex.expr_arity(sym)
    if ex.expr_arity(conc) is not None:
        raise ex.ExprError("the target series must be concrete")
    if arity is None:
        return whole_space(0) if series_equal(sym, conc) else empty_set(0)

    sym_tf = to_transient_form(to_star_height_one(sym))
    conc_ugm = canonicalize(to_transient_form(to_star_height_one(conc)))
    pair = align(sym_tf, conc_ugm)
    c = pair.sym.cycle

    sets: List[SemiPolySet] = []
    for n, entry in enumerate(pair.sym.transient):
        target = SymPoly.constant(arity, pair.conc.transient[n])
        sets.append(set_poly_eq(_as_sympoly(entry, arity), target))
    for j in range(c):
        lines = [
            (_as_sympoly(u, arity), _as_sympoly(q, arity))
            for u, m, q in pair.sym.tails
            if m == j
        ]
        u0, q0 = pair.conc.tails[j]
        sets.append(convex_eq_set(lines, u0, q0, arity))

    return intersect_all(sets, arity)


def intersect_all(sets: Sequence[SemiPolySet], arity: int) -> SemiPolySet:
    """Fold intersections smallest-first so empty branches die early."""
    pending = sorted(sets, key=lambda s: len(s.parts))
    out = whole_space(arity)
    for s in pending:
        if len(s.parts) == 1 and not s.parts[0].constraints:
            continue
        out = sps_intersect(out, s)
        if not out.parts:
            return out
    return out

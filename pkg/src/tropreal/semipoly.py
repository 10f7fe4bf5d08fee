"""Semi-polyhedral subsets of QMax^n: representation and exact decisions.

A half-space is {x : m(x) >= m'(x)} for tropical monomials m, m'; a
polyhedron is a finite intersection of half-spaces, a semi-polyhedral
set a finite union of polyhedra.  Points live in (Q ∪ {-inf})^n, so
emptiness and witness extraction enumerate bottom-strata (which
coordinates are -inf) and run exact Fourier-Motzkin elimination on the
finite part.  Bottom >= bottom counts as satisfied, consistent with the
order in which -inf is least.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .qmax import QMax, format_scalar, parse_scalar
from .sympoly import ArityMismatch, SymMonomial, SymPoly, format_monomial


@dataclass(frozen=True, slots=True)
class HalfSpace:
    lhs: SymMonomial
    rhs: SymMonomial

    def __post_init__(self):
        if self.lhs.arity != self.rhs.arity:
            raise ArityMismatch("half-space sides over different arities")

    @property
    def arity(self) -> int:
        return self.lhs.arity

    def holds(self, point: Sequence[QMax]) -> bool:
        return self.rhs.evaluate(point) <= self.lhs.evaluate(point)


@dataclass(frozen=True, slots=True)
class Stratum:
    """Which coordinates are pinned to bottom; the rest are finite rationals."""

    arity: int
    bottoms: FrozenSet[int]


@dataclass(frozen=True, slots=True)
class Polyhedron:
    arity: int
    constraints: Tuple[HalfSpace, ...]

    def contains(self, point: Sequence[QMax]) -> bool:
        return all(h.holds(point) for h in self.constraints)


@dataclass(frozen=True, slots=True)
class SemiPolySet:
    arity: int
    parts: Tuple[Polyhedron, ...]


def _mono_key(m: SymMonomial):
    return (m.exponents, (0,) if m.coef.is_bottom else (1, m.coef.value))


def _constraint_key(h: HalfSpace):
    return (_mono_key(h.lhs), _mono_key(h.rhs))


def make_polyhedron(arity: int, constraints: Sequence[HalfSpace]) -> Polyhedron:
    """Sort and deduplicate constraints; drop trivially-true ones."""
    seen = {}
    for h in constraints:
        if h.arity != arity:
            raise ArityMismatch("constraint arity mismatch")
        if h.rhs.coef.is_bottom:
            continue  # anything >= bottom
        seen[_constraint_key(h)] = h
    return Polyhedron(arity, tuple(seen[k] for k in sorted(seen)))


def make_sps(arity: int, parts: Sequence[Polyhedron]) -> SemiPolySet:
    seen = {}
    for p in parts:
        if p.arity != arity:
            raise ArityMismatch("part arity mismatch")
        seen[tuple(_constraint_key(h) for h in p.constraints)] = p
    return SemiPolySet(arity, tuple(seen[k] for k in sorted(seen)))


def whole_space(arity: int) -> SemiPolySet:
    return SemiPolySet(arity, (Polyhedron(arity, ()),))


def empty_set(arity: int) -> SemiPolySet:
    return SemiPolySet(arity, ())


def bottom_pin(arity: int, index: int) -> HalfSpace:
    """The constraint forcing coordinate ``index`` to bottom."""
    lhs = SymMonomial(QMax.bottom(), (0,) * arity)
    rhs = SymMonomial(QMax.unit(), tuple(1 if i == index else 0 for i in range(arity)))
    return HalfSpace(lhs, rhs)


# ---------------------------------------------------------------------------
# Membership and set algebra


def sps_contains(s: SemiPolySet, point: Sequence[QMax]) -> bool:
    if len(point) != s.arity:
        raise ArityMismatch(f"point of length {len(point)} for arity {s.arity}")
    return any(p.contains(point) for p in s.parts)


def sps_union(a: SemiPolySet, b: SemiPolySet) -> SemiPolySet:
    if a.arity != b.arity:
        raise ArityMismatch(f"arity {a.arity} vs {b.arity}")
    parts = [p for p in a.parts + b.parts if not poly_is_empty(p)]
    return make_sps(a.arity, parts)


def sps_intersect(a: SemiPolySet, b: SemiPolySet) -> SemiPolySet:
    if a.arity != b.arity:
        raise ArityMismatch(f"arity {a.arity} vs {b.arity}")
    parts = []
    for p in a.parts:
        wp = _feasible_point(p)
        if wp is None:
            continue
        for q in b.parts:
            wq = _feasible_point(q)
            if wq is None:
                continue
            cand = make_polyhedron(a.arity, p.constraints + q.constraints)
            key = _poly_cache_key(cand)
            if key not in _FEASIBLE_CACHE:
                # Parents' witnesses often survive; skip elimination if so.
                if all(h.holds(wp) for h in cand.constraints):
                    _FEASIBLE_CACHE[key] = wp
                elif all(h.holds(wq) for h in cand.constraints):
                    _FEASIBLE_CACHE[key] = wq
            if not poly_is_empty(cand):
                parts.append(cand)
    return make_sps(a.arity, parts)


def sps_is_empty(s: SemiPolySet) -> bool:
    return all(poly_is_empty(p) for p in s.parts)


def sps_prune(s: SemiPolySet, containment: bool = False) -> SemiPolySet:
    """Drop empty parts; optionally drop parts contained in another part."""
    parts = [p for p in s.parts if not poly_is_empty(p)]
    if containment:
        kept: List[Polyhedron] = []
        for i, p in enumerate(parts):
            absorbed = False
            for j, q in enumerate(parts):
                if i == j:
                    continue
                if poly_subset(p, q) and not (j > i and poly_subset(q, p)):
                    absorbed = True
                    break
            if not absorbed:
                kept.append(p)
        parts = kept
    return make_sps(s.arity, parts)


# ---------------------------------------------------------------------------
# Emptiness: strata + exact Fourier-Motzkin

# An affine row is (coeffs, const, strict): sum(coeffs[i] * x_i) >= const,
# with > instead of >= when strict.
Row = Tuple[Tuple[Fraction, ...], Fraction, bool]


def _mono_on_stratum(
    m: SymMonomial, bottoms: FrozenSet[int], finite_vars: Sequence[int]
) -> Optional[Tuple[Tuple[Fraction, ...], Fraction]]:
    """None when the monomial is bottom-valued on the stratum."""
    if m.coef.is_bottom:
        return None
    if any(e and (i in bottoms) for i, e in enumerate(m.exponents)):
        return None
    coeffs = tuple(Fraction(m.exponents[v]) for v in finite_vars)
    return coeffs, Fraction(m.coef.value)


def _rows_on_stratum(
    p: Polyhedron, bottoms: FrozenSet[int], finite_vars: Sequence[int]
) -> Optional[List[Row]]:
    """Reduce constraints to affine rows; None when the stratum is dead."""
    rows: List[Row] = []
    for h in p.constraints:
        lhs = _mono_on_stratum(h.lhs, bottoms, finite_vars)
        rhs = _mono_on_stratum(h.rhs, bottoms, finite_vars)
        if rhs is None:
            continue
        if lhs is None:
            return None
        lc, lk = lhs
        rc, rk = rhs
        rows.append((tuple(a - b for a, b in zip(lc, rc)), rk - lk, False))
    return rows


def _row_normal(row: Row) -> Row:
    coeffs, const, strict = row
    scale = next((abs(c) for c in coeffs if c), None)
    if scale is None or scale == 1:
        return row
    return (tuple(c / scale for c in coeffs), const / scale, strict)


def fm_eliminate(rows: List[Row], var: int) -> Optional[List[Row]]:
    """Eliminate one variable; None when a constant row is infeasible."""
    lowers, uppers, rest = [], [], {}
    for row in rows:
        coeffs, const, strict = row
        c = coeffs[var]
        if c > 0:
            lowers.append(row)
        elif c < 0:
            uppers.append(row)
        else:
            if not any(coeffs):
                if const > 0 or (strict and const == 0):
                    return None
                continue
            key = _row_normal(row)
            rest[key] = None
    for lcoeffs, lconst, lstrict in lowers:
        a = lcoeffs[var]
        for ucoeffs, uconst, ustrict in uppers:
            b, strict = -ucoeffs[var], lstrict or ustrict
            coeffs = tuple(
                b * lc + a * uc if i != var else Fraction(0)
                for i, (lc, uc) in enumerate(zip(lcoeffs, ucoeffs))
            )
            const = b * lconst + a * uconst
            if not any(coeffs):
                if const > 0 or (strict and const == 0):
                    return None
                continue
            rest[_row_normal((coeffs, const, strict))] = None
    return list(rest)


def fm_feasible(rows: List[Row], nvars: int, order: Optional[Sequence[int]] = None) -> bool:
    current = rows
    if order is not None:
        for v in order:
            current = fm_eliminate(current, v)
            if current is None:
                return False
    else:
        remaining = set(range(nvars))
        while remaining:
            v = _cheapest_variable(current, remaining)
            remaining.discard(v)
            current = fm_eliminate(current, v)
            if current is None:
                return False
    for coeffs, const, strict in current:
        if const > 0 or (strict and const == 0):
            return False
    return True


def _cheapest_variable(rows: List[Row], remaining) -> int:
    best, best_cost = None, None
    for v in sorted(remaining):
        lo = sum(1 for coeffs, _, _ in rows if coeffs[v] > 0)
        hi = sum(1 for coeffs, _, _ in rows if coeffs[v] < 0)
        cost = lo * hi - lo - hi
        if best_cost is None or cost < best_cost:
            best, best_cost = v, cost
    return best


def fm_witness(rows: List[Row], nvars: int) -> Optional[List[Fraction]]:
    """A feasible point via back-substitution, midpoints for two-sided bounds."""
    systems = [rows]
    current = rows
    for v in range(nvars - 1, -1, -1):
        current = fm_eliminate(current, v)
        if current is None:
            return None
        systems.append(current)
    systems.reverse()  # systems[v] constrains variables 0..v-1 plus x_v
    for coeffs, const, strict in systems[0]:
        if const > 0 or (strict and const == 0):
            return None
    values: List[Fraction] = []
    for v in range(nvars):
        lo: Optional[Fraction] = None
        hi: Optional[Fraction] = None
        for coeffs, const, _ in systems[v + 1]:
            c = coeffs[v]
            if not c:
                continue
            residual = const - sum(coeffs[i] * values[i] for i in range(v))
            bound = residual / c
            if c > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None:
            values.append((lo + hi) / 2)
        elif lo is not None:
            values.append(lo)
        elif hi is not None:
            values.append(hi)
        else:
            values.append(Fraction(0))
    return values


def _forced_sets(p: Polyhedron) -> Optional[Tuple[FrozenSet[int], FrozenSet[int]]]:
    """Propagate constraints to (forced-bottom, forced-finite) variable sets.

    Returns None when the constraints are contradictory on every stratum.
    """
    n = p.arity
    bottom: set = set()
    finite: set = set()
    changed = True
    while changed:
        changed = False
        for h in p.constraints:
            lhs, rhs = h.lhs, h.rhs
            rhs_dead = rhs.coef.is_bottom or any(
                e and i in bottom for i, e in enumerate(rhs.exponents)
            )
            if rhs_dead:
                continue
            lhs_dead = lhs.coef.is_bottom or any(
                e and i in bottom for i, e in enumerate(lhs.exponents)
            )
            rhs_alive = all(
                not e or i in finite for i, e in enumerate(rhs.exponents)
            )
            if lhs_dead:
                # rhs must be bottom too
                candidates = [
                    i
                    for i, e in enumerate(rhs.exponents)
                    if e and i not in finite
                ]
                if not candidates:
                    return None
                if len(candidates) == 1 and candidates[0] not in bottom:
                    bottom.add(candidates[0])
                    changed = True
            elif rhs_alive:
                # lhs must be finite: every lhs variable is finite
                for i, e in enumerate(lhs.exponents):
                    if e and i not in finite:
                        if i in bottom:
                            return None
                        finite.add(i)
                        changed = True
    if bottom & finite:
        return None
    return frozenset(bottom), frozenset(finite)


def _strata(p: Polyhedron) -> Iterator[Stratum]:
    """Feasible-candidate strata, fewest bottoms first, deterministic."""
    forced = _forced_sets(p)
    if forced is None:
        return
    bottom, finite = forced
    free = [i for i in range(p.arity) if i not in bottom and i not in finite]
    for size in range(len(free) + 1):
        for extra in itertools.combinations(free, size):
            yield Stratum(p.arity, bottom | frozenset(extra))


# A feasibility check always extracts a witness, cached per polyhedron,
# so later intersections can often confirm nonemptiness by evaluation.
_FEASIBLE_CACHE: Dict[Tuple, Optional[Tuple[QMax, ...]]] = {}


def _poly_cache_key(p: Polyhedron):
    return (p.arity, tuple(_constraint_key(h) for h in p.constraints))


def _feasible_point(p: Polyhedron) -> Optional[Tuple[QMax, ...]]:
    key = _poly_cache_key(p)
    if key in _FEASIBLE_CACHE:
        return _FEASIBLE_CACHE[key]
    point: Optional[Tuple[QMax, ...]] = None
    for st in _strata(p):
        finite_vars = [i for i in range(p.arity) if i not in st.bottoms]
        rows = _rows_on_stratum(p, st.bottoms, finite_vars)
        if rows is None:
            continue
        frac = fm_witness(rows, len(finite_vars))
        if frac is None:
            continue
        values = [QMax.bottom()] * p.arity
        for v, val in zip(finite_vars, frac):
            values[v] = QMax(val)
        point = tuple(values)
        break
    _FEASIBLE_CACHE[key] = point
    return point


def poly_is_empty(p: Polyhedron) -> bool:
    return _feasible_point(p) is None


def poly_witness(p: Polyhedron) -> Optional[List[QMax]]:
    point = _feasible_point(p)
    return None if point is None else list(point)


def sps_witness(s: SemiPolySet) -> Optional[List[QMax]]:
    for p in s.parts:
        w = poly_witness(p)
        if w is not None:
            return w
    return None


def poly_subset(p: Polyhedron, q: Polyhedron) -> bool:
    """Exact containment: p minus any constraint of q must be empty."""
    for h in q.constraints:
        if not _poly_avoids(p, h):
            return False
    return True


def poly_reduce(p: Polyhedron) -> Polyhedron:
    """Drop constraints implied by the remaining ones (greedy, one pass)."""
    cons = list(p.constraints)
    kept: List[HalfSpace] = []
    for i, h in enumerate(cons):
        rest = Polyhedron(p.arity, tuple(kept + cons[i + 1 :]))
        if not _poly_avoids(rest, h):
            kept.append(h)
    return Polyhedron(p.arity, tuple(kept))


def _poly_avoids(p: Polyhedron, h: HalfSpace) -> bool:
    """True when p ∩ {rhs > lhs} is empty, i.e. h holds throughout p."""
    for st in _strata(p):
        finite_vars = [i for i in range(p.arity) if i not in st.bottoms]
        rows = _rows_on_stratum(p, st.bottoms, finite_vars)
        if rows is None:
            continue
        lhs = _mono_on_stratum(h.lhs, st.bottoms, finite_vars)
        rhs = _mono_on_stratum(h.rhs, st.bottoms, finite_vars)
        if rhs is None:
            continue  # rhs bottom: negation unsatisfiable here
        if lhs is not None:
            lc, lk = lhs
            rc, rk = rhs
            rows = rows + [
                (tuple(b - a for a, b in zip(lc, rc)), lk - rk, True)
            ]
        if fm_feasible(rows, len(finite_vars)):
            return False
    return True


# ---------------------------------------------------------------------------
# Sets from tropical polynomial comparisons


def set_poly_le(p: SymPoly, q: SymPoly) -> SemiPolySet:
    """{d : p(d) <= q(d)} as a union over the dominant monomial of q."""
    _check_arity(p, q)
    n = p.arity
    if p.is_zero:
        return whole_space(n)
    if q.is_zero:
        return set_poly_is_zero(p)
    parts = []
    pm = p.monomials
    for qj in q.monomials:
        cons = [HalfSpace(qj, pi) for pi in pm]
        cand = make_polyhedron(n, cons)
        if not poly_is_empty(cand):
            parts.append(cand)
    return make_sps(n, parts)


def set_poly_eq(p: SymPoly, q: SymPoly) -> SemiPolySet:
    """{d : p(d) = q(d)}: dominant-pair case split over monomials."""
    _check_arity(p, q)
    n = p.arity
    if p.is_zero and q.is_zero:
        return whole_space(n)
    if p.is_zero:
        return set_poly_is_zero(q)
    if q.is_zero:
        return set_poly_is_zero(p)
    parts = []
    pm, qm = p.monomials, q.monomials
    for pi in pm:
        for qj in qm:
            cons = [HalfSpace(pi, pk) for pk in pm if pk is not pi]
            cons += [HalfSpace(qj, ql) for ql in qm if ql is not qj]
            cons += [HalfSpace(pi, qj), HalfSpace(qj, pi)]
            cand = make_polyhedron(n, cons)
            if not poly_is_empty(cand):
                parts.append(cand)
    return make_sps(n, parts)


def set_poly_is_zero(p: SymPoly) -> SemiPolySet:
    """{d : p(d) = bottom}: per monomial, some variable must be bottom."""
    n = p.arity
    if p.is_zero:
        return whole_space(n)
    supports = []
    for m in p.monomials:
        vars_ = frozenset(i for i, e in enumerate(m.exponents) if e)
        if not vars_:
            return empty_set(n)
        supports.append(vars_)
    parts = []
    for hs in _minimal_hitting_sets(supports, n):
        cons = [bottom_pin(n, i) for i in sorted(hs)]
        parts.append(make_polyhedron(n, cons))
    return make_sps(n, parts)


def _minimal_hitting_sets(
    supports: List[FrozenSet[int]], nvars: int
) -> List[FrozenSet[int]]:
    universe = sorted(set().union(*supports))
    found: List[FrozenSet[int]] = []
    for size in range(1, len(universe) + 1):
        for combo in itertools.combinations(universe, size):
            cand = frozenset(combo)
            if any(prev <= cand for prev in found):
                continue
            if all(cand & s for s in supports):
                found.append(cand)
    return found


def _check_arity(p: SymPoly, q: SymPoly) -> None:
    if p.arity != q.arity:
        raise ArityMismatch(f"arity {p.arity} vs {q.arity}")


# ---------------------------------------------------------------------------
# Serialization and rendering


def _mono_to_json(m: SymMonomial, names: Sequence[str]) -> dict:
    exps = {names[i]: e for i, e in enumerate(m.exponents) if e}
    return {"coef": format_scalar(m.coef), "exps": exps}


def _mono_from_json(d: dict, names: Sequence[str]) -> SymMonomial:
    coef = parse_scalar(d["coef"])
    exps = [0] * len(names)
    for name, e in d["exps"].items():
        exps[list(names).index(name)] = int(e)
    return SymMonomial(coef, tuple(exps))


def sps_to_json(s: SemiPolySet, names: Sequence[str]) -> dict:
    if len(names) != s.arity:
        raise ArityMismatch("name list does not match arity")
    return {
        "vars": list(names),
        "parts": [
            [
                {
                    "lhs": _mono_to_json(h.lhs, names),
                    "rhs": _mono_to_json(h.rhs, names),
                }
                for h in part.constraints
            ]
            for part in s.parts
        ],
    }


def sps_from_json(data: dict) -> Tuple[SemiPolySet, List[str]]:
    names = list(data["vars"])
    n = len(names)
    parts = []
    for raw in data["parts"]:
        cons = [
            HalfSpace(
                _mono_from_json(c["lhs"], names), _mono_from_json(c["rhs"], names)
            )
            for c in raw
        ]
        parts.append(Polyhedron(n, tuple(cons)))
    return SemiPolySet(n, tuple(parts)), names


def _var_interval(
    p: Polyhedron, var: int
) -> Tuple[bool, Optional[Fraction], Optional[Fraction]]:
    """(can_be_bottom, lo, hi) for one coordinate over all feasible strata."""
    can_bottom = False
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    lo_unbounded = False
    hi_unbounded = False
    for st in _strata(p):
        finite_vars = [i for i in range(p.arity) if i not in st.bottoms]
        rows = _rows_on_stratum(p, st.bottoms, finite_vars)
        if rows is None or not fm_feasible(rows, len(finite_vars)):
            continue
        if var in st.bottoms:
            can_bottom = True
            continue
        pos = finite_vars.index(var)
        others = [i for i in range(len(finite_vars)) if i != pos]
        current = rows
        dead = False
        for v in sorted(others, reverse=True):
            current = fm_eliminate(current, v)
            if current is None:
                dead = True
                break
        if dead:
            continue
        slo: Optional[Fraction] = None
        shi: Optional[Fraction] = None
        slo_unb = True
        shi_unb = True
        for coeffs, const, _ in current:
            c = coeffs[pos]
            if c > 0:
                slo_unb = False
                slo = const / c if slo is None else max(slo, const / c)
            elif c < 0:
                shi_unb = False
                shi = const / c if shi is None else min(shi, const / c)
        if slo_unb:
            lo_unbounded = True
        elif lo is None or slo < lo:
            lo = slo
        if shi_unb:
            hi_unbounded = True
        elif hi is None or shi > hi:
            hi = shi
    return can_bottom, (None if lo_unbounded else lo), (None if hi_unbounded else hi)


def render_polyhedron(p: Polyhedron, names: Sequence[str]) -> str:
    """Human-readable conjunction like ``u1 = -1, v1 = 1, v2 <= 1``."""
    if poly_is_empty(p):
        return "false"
    p = poly_reduce(p)
    n = p.arity
    pinned: Dict[int, Fraction] = {}
    bottom_only: List[int] = []
    bounds: Dict[int, Tuple[Optional[Fraction], Optional[Fraction]]] = {}
    any_finite = {v: False for v in range(n)}
    for st in _strata(p):
        finite_vars = [i for i in range(n) if i not in st.bottoms]
        rows = _rows_on_stratum(p, st.bottoms, finite_vars)
        if rows is None or not fm_feasible(rows, len(finite_vars)):
            continue
        for v in finite_vars:
            any_finite[v] = True
    for v in range(n):
        can_bottom, lo, hi = _var_interval(p, v)
        if not any_finite[v]:
            bottom_only.append(v)
        elif not can_bottom and lo is not None and hi is not None and lo == hi:
            pinned[v] = lo
        else:
            bounds[v] = (lo, hi)

    leftovers = []
    for h in p.constraints:
        lhs = _substitute(h.lhs, pinned, bottom_only)
        rhs = _substitute(h.rhs, pinned, bottom_only)
        if rhs is None:
            continue
        if lhs is not None and not any(lhs.exponents) and not any(rhs.exponents):
            continue  # constant comparison, already accounted for
        single = _single_var_bound(lhs, rhs)
        if single is not None:
            continue  # folded into the interval summary
        lhs_m = lhs if lhs is not None else SymMonomial(QMax.bottom(), (0,) * n)
        leftovers.append((lhs_m, rhs))

    chunks = []
    for v in range(n):
        name = names[v]
        if v in bottom_only:
            chunks.append(f"{name} = -inf")
        elif v in pinned:
            chunks.append(f"{name} = {_frac_str(pinned[v])}")
        else:
            lo, hi = bounds.get(v, (None, None))
            if lo is not None and hi is not None and lo == hi:
                chunks.append(f"{name} <= {_frac_str(hi)}")
            else:
                if lo is not None:
                    chunks.append(f"{name} >= {_frac_str(lo)}")
                if hi is not None:
                    chunks.append(f"{name} <= {_frac_str(hi)}")
    keyed = {}
    for lhs, rhs in leftovers:
        keyed.setdefault((_mono_key(lhs), _mono_key(rhs)), (lhs, rhs))
    done = set()
    for key, (lhs, rhs) in keyed.items():
        if key in done:
            continue
        swapped = (key[1], key[0])
        if swapped in keyed and swapped != key:
            done.add(swapped)
            op = "="
            if sum(1 for e in lhs.exponents if e) < sum(1 for e in rhs.exponents if e):
                lhs, rhs = rhs, lhs
        else:
            op = ">="
        done.add(key)
        chunks.append(f"{format_monomial(lhs, names)} {op} {format_monomial(rhs, names)}")
    return ", ".join(chunks) if chunks else "true"


def _substitute(
    m: SymMonomial, pinned: Dict[int, Fraction], bottom_only: List[int]
) -> Optional[SymMonomial]:
    """Fold pinned values into the coefficient; None when bottom-valued."""
    if m.coef.is_bottom:
        return None
    coef = m.coef.value
    exps = list(m.exponents)
    for v, e in enumerate(m.exponents):
        if not e:
            continue
        if v in bottom_only:
            return None
        if v in pinned:
            coef += e * pinned[v]
            exps[v] = 0
    return SymMonomial(QMax(coef), tuple(exps))


def _single_var_bound(lhs: Optional[SymMonomial], rhs: SymMonomial) -> Optional[int]:
    if lhs is None:
        return None
    lv = [i for i, e in enumerate(lhs.exponents) if e]
    rv = [i for i, e in enumerate(rhs.exponents) if e]
    if len(lv) + len(rv) == 1:
        return (lv + rv)[0]
    return None


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def render_sps(s: SemiPolySet, names: Sequence[str]) -> str:
    live = [p for p in s.parts if not poly_is_empty(p)]
    if not live:
        return "empty"
    if len(live) == 1:
        return render_polyhedron(live[0], names)
    lines = [
        f"part {i}: {render_polyhedron(p, names)}" for i, p in enumerate(live, 1)
    ]
    return "\n".join(lines)

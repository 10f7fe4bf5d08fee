"""Realizations (c, A, b) of max-plus linear sequences and their sets.

A realization of dimension N recognizes the sequence k -> c ⊗ A^k ⊗ b.
The universal series in 2N+N^2 indeterminates is assembled from the
elementary in->out paths of the associated digraph together with the
accessible subsets of elementary circuit classes; the set of dimension-N
realizations of a target series is then the equality set of the
universal series against the target.

Flattening order everywhere: c row-major, then A row-major, then b.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from . import expr as ex
from .equality import equality_set
from .expr import RatExpr, evaluate_at
from .normalform import series_equal
from .qmax import QMax, format_scalar, parse_scalar
from .semipoly import SemiPolySet, sps_witness
from .sympoly import SymPoly

DEFAULT_DIM_CAP = 3


class DimensionCapError(ValueError):
    """Requested dimension exceeds the configured enumeration cap."""


@dataclass(frozen=True, slots=True)
class Realization:
    c: Tuple[QMax, ...]
    A: Tuple[Tuple[QMax, ...], ...]
    b: Tuple[QMax, ...]

    def __post_init__(self):
        n = len(self.c)
        if len(self.b) != n or len(self.A) != n or any(len(row) != n for row in self.A):
            raise ValueError("inconsistent realization shape")

    @property
    def dim(self) -> int:
        return len(self.c)

    def flatten(self) -> Tuple[QMax, ...]:
        flat = list(self.c)
        for row in self.A:
            flat.extend(row)
        flat.extend(self.b)
        return tuple(flat)

    @staticmethod
    def unflatten(n: int, point: Sequence[QMax]) -> "Realization":
        if len(point) != 2 * n + n * n:
            raise ValueError(f"point of length {len(point)} for dimension {n}")
        c = tuple(point[:n])
        a = tuple(
            tuple(point[n + i * n : n + (i + 1) * n]) for i in range(n)
        )
        b = tuple(point[n + n * n :])
        return Realization(c, a, b)


def sequence_value(r: Realization, k: int) -> QMax:
    """c ⊗ A^k ⊗ b by exact max-plus matrix-vector products."""
    v = list(r.c)
    for _ in range(k):
        v = [
            _vec_dot([v[i] for i in range(r.dim)], [r.A[i][j] for i in range(r.dim)])
            for j in range(r.dim)
        ]
    return _vec_dot(v, list(r.b))


def _vec_dot(xs: List[QMax], ys: List[QMax]) -> QMax:
    acc = QMax.bottom()
    for x, y in zip(xs, ys):
        acc = acc + x * y
    return acc


def realization_names(n: int) -> List[str]:
    names = [f"c{i}" for i in range(1, n + 1)]
    names += [f"A{i}{j}" for i in range(1, n + 1) for j in range(1, n + 1)]
    names += [f"b{j}" for j in range(1, n + 1)]
    return names


def _var_index(n: int, kind: str, i: int, j: int = 0) -> int:
    if kind == "c":
        return i - 1
    if kind == "A":
        return n + (i - 1) * n + (j - 1)
    return n + n * n + (i - 1)


@dataclass(frozen=True, slots=True)
class PathTerm:
    """An elementary in->out path: visited nodes, weight, X-degree."""

    nodes: Tuple[int, ...]
    weight: SymPoly
    degree: int


@dataclass(frozen=True, slots=True)
class CircuitTerm:
    """An elementary circuit class: canonical rotation, weight, X-degree."""

    nodes: Tuple[int, ...]
    weight: SymPoly
    degree: int


def _check_cap(n: int, cap: int) -> None:
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    if n > cap:
        raise DimensionCapError(f"dimension {n} exceeds the cap {cap}")


def enumerate_paths(n: int, cap: int = DEFAULT_DIM_CAP) -> List[PathTerm]:
    """All simple in->out paths through distinct internal nodes."""
    _check_cap(n, cap)
    arity = 2 * n + n * n
    out = []
    for length in range(1, n + 1):
        for nodes in itertools.permutations(range(1, n + 1), length):
            exps = [0] * arity
            exps[_var_index(n, "b", nodes[0])] += 1
            for t in range(length - 1):
                exps[_var_index(n, "A", nodes[t + 1], nodes[t])] += 1
            exps[_var_index(n, "c", nodes[-1])] += 1
            weight = SymPoly(arity, ((tuple(exps), QMax.unit()),))
            out.append(PathTerm(nodes, weight, length - 1))
    return out


def enumerate_circuits(n: int, cap: int = DEFAULT_DIM_CAP) -> List[CircuitTerm]:
    """One representative per cyclic-conjugacy class of elementary circuits."""
    _check_cap(n, cap)
    arity = 2 * n + n * n
    out = []
    for size in range(1, n + 1):
        for support in itertools.combinations(range(1, n + 1), size):
            head, rest = support[0], support[1:]
            for tail in itertools.permutations(rest):
                nodes = (head,) + tail
                exps = [0] * arity
                for t in range(size):
                    exps[_var_index(n, "A", nodes[(t + 1) % size], nodes[t])] += 1
                weight = SymPoly(arity, ((tuple(exps), QMax.unit()),))
                out.append(CircuitTerm(nodes, weight, size))
    return out


def accessible_subsets(
    path: PathTerm, circuits: Sequence[CircuitTerm]
) -> List[Tuple[int, ...]]:
    """Circuit subsets whose union with the path is connected (undirected).

    The empty subset is accessible by convention.
    """
    supports = [frozenset(c.nodes) for c in circuits]
    base = frozenset(path.nodes)
    out = []
    for mask in range(1 << len(circuits)):
        chosen = [i for i in range(len(circuits)) if mask >> i & 1]
        reached = set(base)
        pool = set(chosen)
        grown = True
        while grown and pool:
            grown = False
            for i in sorted(pool):
                if supports[i] & reached:
                    reached |= supports[i]
                    pool.discard(i)
                    grown = True
        if not pool:
            out.append(tuple(chosen))
    return out


@dataclass(frozen=True, slots=True)
class UniversalExpr:
    """Symbolic series of all dimension-N realizations at once."""

    dim: int
    expr: RatExpr
    names: Tuple[str, ...]


@lru_cache(maxsize=None)
def _universal_series_cached(n: int, cap: int) -> UniversalExpr:
    paths = enumerate_paths(n, cap)
    circuits = enumerate_circuits(n, cap)
    arity = 2 * n + n * n
    total: Optional[RatExpr] = None
    for path in paths:
        inner: Optional[RatExpr] = None
        for subset in accessible_subsets(path, circuits):
            prod: Optional[RatExpr] = None
            for i in subset:
                gamma = circuits[i]
                w = ex.mono(gamma.weight, gamma.degree)
                plus = ex.mul(w, ex.star(w))
                prod = plus if prod is None else ex.mul(prod, plus)
            if prod is None:
                prod = ex.mono(SymPoly.unit(arity), 0)
            inner = prod if inner is None else ex.add(inner, prod)
        term = ex.mul(ex.mono(path.weight, path.degree), inner)
        total = term if total is None else ex.add(total, term)
    return UniversalExpr(n, total, tuple(realization_names(n)))


def universal_series(n: int, cap: int = DEFAULT_DIM_CAP) -> UniversalExpr:
    _check_cap(n, cap)
    return _universal_series_cached(n, cap)


def recognized_series(r: Realization, cap: int = DEFAULT_DIM_CAP) -> RatExpr:
    """A concrete expression for k -> c ⊗ A^k ⊗ b."""
    uni = universal_series(r.dim, cap)
    return evaluate_at(uni.expr, r.flatten())


def realization_set(
    target: RatExpr,
    n: int,
    template: Optional[RatExpr] = None,
    cap: int = DEFAULT_DIM_CAP,
) -> SemiPolySet:
    """All dimension-n realizations of the target, as a union of polyhedra.

    A template bypasses the universal construction: its indeterminates
    become the coordinates of the answer (structured realization).
    """
    if template is not None:
        return equality_set(template, target)
    uni = universal_series(n, cap)
    return equality_set(uni.expr, target)


def verify(r: Realization, target: RatExpr, cap: int = DEFAULT_DIM_CAP) -> bool:
    """Exact check that r recognizes the target series."""
    return series_equal(recognized_series(r, cap), target)


def minimal_realization(
    target: RatExpr, max_dim: int, cap: int = DEFAULT_DIM_CAP
) -> Optional[Tuple[int, Realization]]:
    """Smallest dimension <= max_dim with a realization, plus a verified witness."""
    _check_cap(max_dim, cap)
    for n in range(1, max_dim + 1):
        s = realization_set(target, n, cap=cap)
        point = sps_witness(s)
        if point is None:
            continue
        r = Realization.unflatten(n, point)
        if not verify(r, target, cap):
            raise AssertionError("witness failed exact verification")
        return n, r
    return None


# ---------------------------------------------------------------------------
# Text serialization


def format_realization(r: Realization) -> str:
    lines = [f"dim: {r.dim}"]
    lines.append("c: " + " ".join(format_scalar(x) for x in r.c))
    rows = " ; ".join(" ".join(format_scalar(x) for x in row) for row in r.A)
    lines.append(f"A: {rows}")
    lines.append("b: " + " ".join(format_scalar(x) for x in r.b))
    return "\n".join(lines)


def parse_realization(text: str) -> Realization:
    fields = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        fields[key.strip()] = rest.strip()
    try:
        n = int(fields["dim"])
        c = tuple(parse_scalar(t) for t in fields["c"].split())
        b = tuple(parse_scalar(t) for t in fields["b"].split())
        a = tuple(
            tuple(parse_scalar(t) for t in row.split())
            for row in fields["A"].split(";")
        )
    except KeyError as exc:
        raise ValueError(f"missing realization field {exc}") from exc
    r = Realization(c, a, b)
    if r.dim != n:
        raise ValueError("declared dimension does not match the data")
    return r

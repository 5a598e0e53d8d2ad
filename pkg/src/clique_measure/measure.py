"""Biased characters and the pseudo-measure, in exact rational arithmetic.

For a tuple ``t`` the pattern pairs of ``t`` that are edges of ``G`` form a
slot mask ``P_t`` over ``C(k, 2)``. The character of ``H(t)`` depends
only on ``|H ∩ P_t|`` and ``|H \\ P_t|``, so every sum below is evaluated
once per distinct ``P_t`` and then weighted by how many tuples share it.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import budget
from .errors import ContractError
from .graphs import KPartiteGraph, Pair, Tuple, all_tuples, canonical_pair, check_tuple, pair_index
from .patterns import (
    AUTO_VERIFY_MAX_K,
    CoreRecord,
    _vc,
    core_table,
    enumerate_vc_bounded,
    pair_slots,
    slot_of,
)

TupleSet = frozenset


@dataclass(frozen=True)
class MeasureContext:
    graph: KPartiteGraph
    p: Fraction
    d: int
    D: Fraction | None = None
    delta: Fraction | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", Fraction(self.p))
        if not (0 < self.p < 1):
            raise ContractError(f"p must lie in (0, 1), got {self.p}")
        if self.d < 0:
            raise ContractError("d must be non-negative")
        for name in ("D", "delta"):
            v = getattr(self, name)
            if v is not None:
                v = Fraction(v)
                if v <= 0:
                    raise ContractError(f"{name} must be positive")
                object.__setattr__(self, name, v)

    @property
    def ratio(self) -> Fraction:
        """Character value of a present edge, ``(1 - p) / p``."""
        return (1 - self.p) / self.p

    @property
    def norm(self) -> int:
        return self.graph.n**self.graph.k


def _tuple_array(ctx: MeasureContext, q: Iterable[Sequence[int]]) -> np.ndarray:
    rows = [check_tuple(ctx.graph, t) for t in q]
    if not rows:
        return np.zeros((0, ctx.graph.k), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def presence_masks(ctx: MeasureContext, q: Iterable[Sequence[int]]) -> np.ndarray:
    """``P_t`` for every tuple, as an int64 array."""
    t = _tuple_array(ctx, q)
    a = ctx.graph.adjacency
    out = np.zeros(t.shape[0], dtype=np.int64)
    for s, (i, j) in enumerate(pair_slots(ctx.graph.k)):
        out |= a[i, t[:, i], j, t[:, j]].astype(np.int64) << s
    return out


def presence_mask(ctx: MeasureContext, t: Sequence[int]) -> int:
    return int(presence_masks(ctx, [t])[0])


def chi(ctx: MeasureContext, edge_set: Iterable[Pair]) -> Fraction:
    r = ctx.ratio
    out = Fraction(1)
    for u, v in edge_set:
        pair = canonical_pair(tuple(u), tuple(v))
        out *= r if pair in ctx.graph.edges else -1
    return out


def _grouped_sum(masks: np.ndarray, presence: int, r: Fraction) -> Fraction:
    """``Σ_H r^{|H ∩ P|} (-1)^{|H \\ P|}`` over the pattern masks given."""
    if masks.size == 0:
        return Fraction(0)
    inside = np.bitwise_count((masks & presence).astype(np.uint64)).astype(np.int64)
    outside = np.bitwise_count((masks & ~presence).astype(np.uint64)).astype(np.int64)
    total = Fraction(0)
    for (a, b), c in Counter(zip(inside.tolist(), outside.tolist())).items():
        total += c * r**a * (-1) ** b
    return total


@lru_cache(maxsize=None)
def _vc_masks(k: int, d: int) -> np.ndarray:
    return np.array([h.mask for h in enumerate_vc_bounded(k, d)], dtype=np.int64)


@lru_cache(maxsize=None)
def _boundary_masks(k: int, d: int, slot: int) -> np.ndarray:
    hs = [h.mask for h in enumerate_vc_bounded(k, d)]
    return np.array([h for h in hs if _vc(k, h) == d and _vc(k, h | 1 << slot) > d], dtype=np.int64)


def _naive_sum(ctx: MeasureContext, presence: int) -> Fraction:
    key = ("naive", presence)
    if key not in ctx._cache:
        ctx._cache[key] = _grouped_sum(_vc_masks(ctx.graph.k, ctx.d), presence, ctx.ratio)
    return ctx._cache[key]


def _core_sum(ctx: MeasureContext, presence: int) -> Fraction:
    key = ("core", presence)
    if key not in ctx._cache:
        r, p = ctx.ratio, ctx.p
        total = Fraction(0)
        for rec in core_table(ctx.graph.k, ctx.d).records:
            star = rec.star_edges.mask
            if star & ~presence:
                continue
            f = rec.core.mask
            a = (f & presence).bit_count()
            b = (f & ~presence).bit_count()
            total += r**a * (-1) ** b / p ** star.bit_count()
        ctx._cache[key] = total
    return ctx._cache[key]


def _check_pattern_budget(ctx: MeasureContext) -> None:
    budget.check(1 << math.comb(ctx.graph.k, 2), f"pattern graphs for k={ctx.graph.k}")


def mu_tuple_naive(ctx: MeasureContext, t: Sequence[int]) -> Fraction:
    """``n^{-k} Σ_{vc(H) <= d} χ_{H(t)}`` straight from the definition."""
    _check_pattern_budget(ctx)
    return _naive_sum(ctx, presence_mask(ctx, t)) / ctx.norm


def mu_tuple_core_factored(ctx: MeasureContext, t: Sequence[int]) -> Fraction:
    """Sum over cores ``F`` of ``χ_{F(t)} p^{-|E*_F|} 1{E*_F(t) ⊆ E(G)}``, normalized."""
    return _core_sum(ctx, presence_mask(ctx, t)) / ctx.norm


def _mu_grouped(ctx: MeasureContext, q, method: str) -> Fraction:
    pres = presence_masks(ctx, q)
    if pres.size == 0:
        return Fraction(0)
    fn = _core_sum if method == "core" else _naive_sum
    total = Fraction(0)
    for pm, c in Counter(pres.tolist()).items():
        total += c * fn(ctx, pm)
    return total / ctx.norm


def mu_set(ctx: MeasureContext, q: Iterable[Sequence[int]], method: str = "auto") -> Fraction:
    """``μ(q)``. ``auto`` takes the core-factored path when its table is verified cheaply (k <= 6)."""
    if method not in ("auto", "naive", "core"):
        raise ContractError(f"unknown method {method!r}")
    if method == "auto":
        method = "core" if ctx.graph.k <= AUTO_VERIFY_MAX_K else "naive"
    _check_pattern_budget(ctx)
    q = list(dict.fromkeys(tuple(t) for t in q))
    return _mu_grouped(ctx, q, method)


def mu_total(ctx: MeasureContext, method: str = "auto") -> Fraction:
    budget.check(ctx.norm, "tuple space n^k")
    return mu_set(ctx, all_tuples(ctx.graph.n, ctx.graph.k), method)


def tuples_through(g: KPartiteGraph, e: Pair) -> list[Tuple]:
    """All tuples containing both endpoints of ``e``."""
    (i, a), (j, b) = canonical_pair(*e)
    return [t for t in all_tuples(g.n, g.k) if t[i] == a and t[j] == b]


def _missing_pair_check(ctx: MeasureContext, q, e: Pair, blocks: tuple[int, int] | None) -> tuple[int, int, list[Tuple]]:
    e = canonical_pair(tuple(e[0]), tuple(e[1]))
    (i, a), (j, b) = e
    if blocks is not None and tuple(sorted(blocks)) != (i, j):
        raise ContractError(f"blocks {blocks} do not match pair {e}")
    if e in ctx.graph.edges:
        raise ContractError(f"{e} is an edge of G")
    q = list(dict.fromkeys(check_tuple(ctx.graph, t) for t in q))
    for t in q:
        if t[i] != a or t[j] != b:
            raise ContractError(f"tuple {t} is not ruled out by {e}")
    return i, j, q


def mu_ruled_out_boundary(
    ctx: MeasureContext, q: Iterable[Sequence[int]], e: Pair, blocks: tuple[int, int] | None = None
) -> Fraction:
    """``n^{-k} Σ_{t∈q} Σ_H χ_{H(t)}`` over ``H`` with ``vc(H) = d < vc(H + {i,j})``."""
    i, j, q = _missing_pair_check(ctx, q, e, blocks)
    _check_pattern_budget(ctx)
    hs = _boundary_masks(ctx.graph.k, ctx.d, slot_of(ctx.graph.k, i, j))
    total = Fraction(0)
    for pm, c in Counter(presence_masks(ctx, q).tolist()).items():
        total += c * _grouped_sum(hs, pm, ctx.ratio)
    return total / ctx.norm


def pattern_edges(t: Sequence[int], mask: int, k: int) -> list[Pair]:
    """``H(t)``: the pattern edges of ``mask`` placed on the vertices of ``t``."""
    slots = pair_slots(k)
    out = []
    s = 0
    while mask:
        if mask & 1:
            i, j = slots[s]
            out.append(((i, t[i]), (j, t[j])))
        mask >>= 1
        s += 1
    return out


def pairing_identity_check(ctx: MeasureContext, e: Pair, q: Iterable[Sequence[int]] | None = None) -> tuple[int, int]:
    """Check ``χ_{H(t)+e} + χ_{H(t)} = 0`` for every bounded-vc ``H`` and ``t ⊇ e`` with ``e ∉ H(t)``.

    Returns ``(checked, failures)``.
    """
    if q is None:
        q = tuples_through(ctx.graph, e)
    i, j, q = _missing_pair_check(ctx, q, e, None)
    k = ctx.graph.k
    slot = slot_of(k, i, j)
    e = canonical_pair(tuple(e[0]), tuple(e[1]))
    checked = failures = 0
    for h in _vc_masks(k, ctx.d).tolist():
        if h >> slot & 1:
            continue
        for t in q:
            edges = pattern_edges(t, h, k)
            checked += 1
            if chi(ctx, edges + [e]) + chi(ctx, edges) != 0:
                failures += 1
    return checked, failures


def _merge(k: int, support: Sequence[int], t_a: Sequence[int], rest: Sequence[int], t_b: Sequence[int]) -> Tuple:
    t = [0] * k
    for b, x in zip(support, t_a):
        t[b] = x
    for b, x in zip(rest, t_b):
        t[b] = x
    return tuple(t)


def _partial(support: Sequence[int], t_a) -> tuple[int, ...]:
    if isinstance(t_a, Mapping):
        if sorted(t_a) != list(support):
            raise ContractError("t_A must be indexed by A = V(E(F))")
        return tuple(t_a[b] for b in support)
    t_a = tuple(t_a)
    if len(t_a) != len(support):
        raise ContractError("t_A must have one entry per vertex of A")
    return t_a


def xi_weight(ctx: MeasureContext, core: CoreRecord, q: Iterable[Sequence[int]], t_a) -> Fraction:
    """``p^{-|E*_F|} Σ_{t_B} 1{(t_A, t_B) ∈ q} 1{E*_F(t_A, t_B) ⊆ E(G)}``.

    ``t_a`` maps each block of ``A`` (sorted) to a local index, either as
    a dict or as a sequence aligned with ``sorted(A)``.
    """
    g = ctx.graph
    support = sorted(core.support)
    rest = [b for b in range(g.k) if b not in core.support]
    t_a = _partial(support, t_a)
    qs = set(tuple(t) for t in q)
    budget.check(g.n ** len(rest), "xi enumeration")
    star = core.star_edges.mask
    hits = 0
    for t_b in all_tuples(g.n, len(rest)):
        t = _merge(g.k, support, t_a, rest, t_b)
        if t in qs and all(canonical_pair(u, v) in g.edges for u, v in pattern_edges(t, star, g.k)):
            hits += 1
    return Fraction(hits) / ctx.p ** core.star_edges.num_edges


def weighted_core_sum(ctx: MeasureContext, core: CoreRecord, q: Iterable[Sequence[int]]) -> Fraction:
    """``Σ_{t_A} χ_{F(t_A)} ξ(t_A)`` (not normalized)."""
    g = ctx.graph
    q = list(q)
    support = sorted(core.support)
    total = Fraction(0)
    for t_a in all_tuples(g.n, len(support)):
        w = xi_weight(ctx, core, q, t_a)
        if w:
            f_edges = [((i, t_a[support.index(i)]), (j, t_a[support.index(j)])) for i, j in core.core.edges]
            total += chi(ctx, f_edges) * w
    return total


def direct_core_sum(ctx: MeasureContext, core: CoreRecord, q: Iterable[Sequence[int]]) -> Fraction:
    """``Σ_{t∈q} Σ_{H∈H_F} χ_{H(t)}`` by explicit enumeration of the fiber (not normalized)."""
    from .patterns import fiber_of_core

    fiber = fiber_of_core(core)
    total = Fraction(0)
    for t in dict.fromkeys(tuple(t) for t in q):
        for h in fiber:
            total += chi(ctx, pattern_edges(t, h.mask, ctx.graph.k))
    return total


def fiber_character_sum(ctx: MeasureContext, core: CoreRecord, q: Iterable[Sequence[int]]) -> Fraction:
    """Same value as :func:`direct_core_sum`, grouped by presence mask."""
    from .patterns import fiber_of_core

    masks = np.array([h.mask for h in fiber_of_core(core)], dtype=np.int64)
    total = Fraction(0)
    q = list(dict.fromkeys(tuple(t) for t in q))
    for pm, c in Counter(presence_masks(ctx, q).tolist()).items():
        total += c * _grouped_sum(masks, pm, ctx.ratio)
    return total


@dataclass(frozen=True)
class GoodnessRow:
    q_index: int
    core_mask: int
    num_edges: int
    vc: int
    abs_sum: Fraction  # n^{-k} |Σ_{t∈Q} Σ_{H∈H_F} χ_{H(t)}|
    s: float
    s_alt: float
    passed: bool


@dataclass(frozen=True)
class GoodnessReport:
    rows: list[GoodnessRow]
    good: bool
    tolerance: float
    core_budget: int

    @property
    def fraction_bounded(self) -> float:
        return sum(r.passed for r in self.rows) / len(self.rows) if self.rows else 1.0

    def rows_csv(self) -> str:
        lines = ["q_index,core_bitmask,num_edges,vc,abs_sum,s_float,s_alt_float,pass"]
        for r in self.rows:
            lines.append(
                f"{r.q_index},{r.core_mask},{r.num_edges},{r.vc},"
                f"{r.abs_sum.numerator}/{r.abs_sum.denominator},{r.s!r},{r.s_alt!r},{int(r.passed)}"
            )
        return "\n".join(lines) + "\n"


LOG_TOLERANCE = 1e-9


def _log_le(value: Fraction, log_bound: float) -> bool:
    if value == 0:
        return True
    return math.log(value.numerator) - math.log(value.denominator) <= log_bound + LOG_TOLERANCE


def goodness_check(ctx: MeasureContext, q_family: Sequence[Iterable[Sequence[int]]]) -> GoodnessReport:
    """Compare every ``(Q, F)`` sum against ``s = n^{2|E(F)|/D - δ vc(F)/10}``.

    ``F`` ranges over the nonempty cores for vc budget ``⌊D/4⌋``. The
    comparison is made on logarithms with tolerance ``1e-9``. ``s_alt`` is
    ``6 p^{-|E(F)|} (4 n^{δ/2})^{-vc(F)/4}``, reported for comparison only.
    """
    if ctx.D is None or ctx.delta is None:
        raise ContractError("goodness needs D and delta in the context")
    g = ctx.graph
    d4 = math.floor(ctx.D / 4)
    cores = [r for r in core_table(g.k, d4).records if r.core.mask]
    log_n = math.log(g.n)
    rows = []
    for qi, q in enumerate(q_family):
        q = list(q)
        for rec in cores:
            value = abs(fiber_character_sum(ctx, rec, q)) / ctx.norm if q else Fraction(0)
            e, v = rec.core.num_edges, rec.vc
            log_s = (2 * e / float(ctx.D) - float(ctx.delta) * v / 10) * log_n
            s_alt = 6 * float(ctx.p) ** (-e) * (4 * g.n ** (float(ctx.delta) / 2)) ** (-v / 4)
            rows.append(GoodnessRow(qi, rec.core.mask, e, v, value, math.exp(log_s), s_alt, _log_le(value, log_s)))
    return GoodnessReport(rows, all(r.passed for r in rows), LOG_TOLERANCE, d4)


def ruled_out_family(g: KPartiteGraph) -> list[list[Tuple]]:
    """For every missing cross pair, the set of tuples through it."""
    from .graphs import cross_pairs

    return [tuples_through(g, e) for e in cross_pairs(g.n, g.k) if e not in g.edges]


def exhaustive_expectation_check(
    n: int, k: int, p: Fraction, d: int, q: Iterable[Sequence[int]]
) -> tuple[Fraction, Fraction, bool]:
    """Average ``μ(q)`` over every graph, weighted by its probability under G(n, k, p)."""
    p = Fraction(p)
    if not (0 < p < 1):
        raise ContractError("p must lie in (0, 1)")
    num_pairs = math.comb(k, 2) * n * n
    if num_pairs > 20:
        raise ContractError("exhaustive expectation needs C(k,2) n^2 <= 20")
    budget.check(1 << num_pairs, "exhaustive graph enumeration")
    q = list(dict.fromkeys(tuple(t) for t in q))
    expected = Fraction(len(q), n**k)
    if not q:
        return Fraction(0), expected, True
    gs = np.arange(1 << num_pairs, dtype=np.int64)
    pops = np.bitwise_count(gs.astype(np.uint64)).astype(np.int64)
    weights = [p**j * (1 - p) ** (num_pairs - j) for j in range(num_pairs + 1)]
    masks = _vc_masks(k, d)
    r = (1 - p) / p
    sums: dict[int, Fraction] = {}
    total = Fraction(0)
    for t in q:
        pres = np.zeros_like(gs)
        for s, (i, j) in enumerate(pair_slots(k)):
            idx = pair_index(n, k, ((i, t[i]), (j, t[j])))
            pres |= ((gs >> idx) & 1) << s
        key = pres * (num_pairs + 1) + pops
        vals, counts = np.unique(key, return_counts=True)
        for v, c in zip(vals.tolist(), counts.tolist()):
            pm, pc = divmod(v, num_pairs + 1)
            if pm not in sums:
                sums[pm] = _grouped_sum(masks, pm, r)
            total += c * weights[pc] * sums[pm]
    mean = total / n**k
    return mean, expected, mean == expected

"""k-partite graphs, seeded sampling, tuples and cliques.

A vertex is a pair ``(block, index)`` with ``0 <= block < k`` and
``0 <= index < n``. A pair is stored canonically with the lower block
first. A tuple is a length-``k`` sequence of local indices, one per block.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import mpmath
import numpy as np

from . import budget
from .errors import ContractError

Vertex = tuple[int, int]
Pair = tuple[Vertex, Vertex]
Tuple = tuple[int, ...]

_TWO64 = 1 << 64


def canonical_pair(u: Vertex, v: Vertex) -> Pair:
    if u[0] == v[0]:
        raise ContractError(f"intra-block pair {u}, {v}")
    return (u, v) if u[0] < v[0] else (v, u)


def cross_pairs(n: int, k: int) -> list[Pair]:
    """All cross-block pairs in canonical order; the list position is the pair index."""
    out = []
    for b, c in itertools.combinations(range(k), 2):
        for i in range(n):
            for j in range(n):
                out.append(((b, i), (c, j)))
    return out


def pair_index(n: int, k: int, pair: Pair) -> int:
    (b, i), (c, j) = pair
    # rank of (b, c) among block pairs in lexicographic order
    slot = b * k - b * (b + 1) // 2 + (c - b - 1)
    return (slot * n + i) * n + j


@dataclass(frozen=True)
class KPartiteGraph:
    n: int
    k: int
    edges: frozenset[Pair] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 1 or self.k < 1:
            raise ContractError("n and k must be positive")
        canon = set()
        for u, v in self.edges:
            for b, i in (u, v):
                if not (0 <= b < self.k and 0 <= i < self.n):
                    raise ContractError(f"vertex {(b, i)} out of range")
            canon.add(canonical_pair(tuple(u), tuple(v)))
        object.__setattr__(self, "edges", frozenset(canon))

    @classmethod
    def complete(cls, n: int, k: int) -> "KPartiteGraph":
        return cls(n, k, frozenset(cross_pairs(n, k)))

    @classmethod
    def empty(cls, n: int, k: int) -> "KPartiteGraph":
        return cls(n, k, frozenset())

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Boolean array ``A[b, i, c, j]``, symmetric, false inside blocks."""
        a = np.zeros((self.k, self.n, self.k, self.n), dtype=bool)
        for (b, i), (c, j) in self.edges:
            a[b, i, c, j] = a[c, j, b, i] = True
        return a

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return canonical_pair(u, v) in self.edges

    def neighbors(self, u: Vertex) -> set[Vertex]:
        b, i = u
        cs, js = np.nonzero(self.adjacency[b, i])
        return {(int(c), int(j)) for c, j in zip(cs, js)}

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def with_edge(self, pair: Pair, present: bool) -> "KPartiteGraph":
        pair = canonical_pair(*pair)
        edges = set(self.edges)
        if present:
            edges.add(pair)
        else:
            edges.discard(pair)
        return KPartiteGraph(self.n, self.k, frozenset(edges))

    def edge_bits(self) -> np.ndarray:
        """Presence vector indexed by :func:`pair_index`."""
        bits = np.zeros(math.comb(self.k, 2) * self.n * self.n, dtype=bool)
        for p in self.edges:
            bits[pair_index(self.n, self.k, p)] = True
        return bits

    def to_json(self, p: Fraction | None = None, seed: int | None = None) -> dict:
        out: dict = {
            "n": self.n,
            "k": self.k,
            "edges": [[b, i, c, j] for (b, i), (c, j) in sorted(self.edges)],
        }
        if p is not None:
            out["p"] = f"{p.numerator}/{p.denominator}"
        if seed is not None:
            out["seed"] = seed
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "KPartiteGraph":
        edges = frozenset(((b, i), (c, j)) for b, i, c, j in obj["edges"])
        return cls(int(obj["n"]), int(obj["k"]), edges)

    def to_edgelist(self) -> str:
        lines = [f"# n={self.n} k={self.k}"]
        lines += [f"{b} {i} {c} {j}" for (b, i), (c, j) in sorted(self.edges)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edgelist(cls, text: str) -> "KPartiteGraph":
        n = k = None
        edges = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for tok in line[1:].split():
                    key, _, val = tok.partition("=")
                    if key == "n":
                        n = int(val)
                    elif key == "k":
                        k = int(val)
                continue
            parts = line.split()
            if len(parts) != 4:
                raise ContractError(f"line {lineno}: expected 4 integers")
            b, i, c, j = map(int, parts)
            edges.append(((b, i), (c, j)))
        if n is None or k is None:
            raise ContractError("edge list lacks the '# n=.. k=..' header")
        return cls(n, k, frozenset(edges))


@dataclass(frozen=True)
class SampleParams:
    n: int
    k: int
    p: Fraction
    seed: int

    def __post_init__(self) -> None:
        p = Fraction(self.p)
        object.__setattr__(self, "p", p)
        if self.n < 1 or self.k < 1:
            raise ContractError("n and k must be positive")
        # p = 1 is accepted so the complete graph is reachable through the sampler
        if not (0 < p <= 1):
            raise ContractError(f"edge probability must lie in (0, 1], got {p}")
        if not (0 <= self.seed < _TWO64):
            raise ContractError("seed must be a 64-bit unsigned integer")


def _threshold(p: Fraction) -> int:
    # include iff raw * den < num * 2^64, i.e. raw < ceil(num * 2^64 / den)
    return -((-p.numerator * _TWO64) // p.denominator)


def pair_draws(seed: int, count: int) -> np.ndarray:
    """Uniform 64-bit draws; draw ``i`` depends only on ``(seed, i)``.

    Philox is counter based, so draw ``i`` is output word ``i % 4`` of
    block ``i // 4`` under the key ``seed``.
    """
    return np.random.Philox(key=seed).random_raw(count).astype(np.uint64)


def sample_kpartite(params: SampleParams) -> KPartiteGraph:
    """Sample G(n, k, p).

    Pair ``i`` (see :func:`cross_pairs`) is present iff its draw ``r``
    satisfies ``r * den < num * 2**64``. The inclusion probability is
    ``ceil(num * 2**64 / den) / 2**64``, which is exactly ``p`` when
    ``den`` is a power of two and exceeds it by less than ``2**-64``
    otherwise.
    """
    pairs = cross_pairs(params.n, params.k)
    t = _threshold(params.p)
    raw = pair_draws(params.seed, len(pairs))
    if t >= _TWO64:
        keep = np.ones(len(pairs), dtype=bool)
    else:
        keep = raw < np.uint64(t)
    return KPartiteGraph(params.n, params.k, frozenset(p for p, b in zip(pairs, keep) if b))


def rational_edge_probability(n: int, D: Fraction | int) -> Fraction:
    """Rational approximation of ``n ** (-2 / D)`` within ``1e-9``, denominator at most ``1e9``."""
    D = Fraction(D)
    if n < 2 or D <= 0:
        raise ContractError("need n >= 2 and D > 0")
    with mpmath.workdps(60):
        exact = mpmath.mpf(n) ** (-2 * mpmath.mpf(D.denominator) / D.numerator)
        man, exp = int(exact.man), int(exact.exp)
        val = Fraction(man) * Fraction(2) ** exp
        q = val.limit_denominator(10**9)
        err = abs(mpmath.mpf(q.numerator) / q.denominator - exact)
    if err > mpmath.mpf("1e-9"):
        raise AssertionError(f"rational approximation error {err} too large")
    return q


def all_tuples(n: int, k: int) -> Iterator[Tuple]:
    return itertools.product(range(n), repeat=k)


def check_tuple(g: KPartiteGraph, t: Sequence[int]) -> Tuple:
    t = tuple(int(x) for x in t)
    if len(t) != g.k or any(not (0 <= x < g.n) for x in t):
        raise ContractError(f"malformed tuple {t} for n={g.n}, k={g.k}")
    return t


def tuple_pairs(t: Sequence[int]) -> list[Pair]:
    return [((b, t[b]), (c, t[c])) for b, c in itertools.combinations(range(len(t)), 2)]


def is_clique(g: KPartiteGraph, t: Sequence[int]) -> bool:
    t = check_tuple(g, t)
    a = g.adjacency
    return all(a[b, t[b], c, t[c]] for b, c in itertools.combinations(range(g.k), 2))


def _extend_cliques(g: KPartiteGraph) -> np.ndarray:
    budget.check(g.n**g.k, "clique enumeration n^k")
    a = g.adjacency
    partial = np.arange(g.n).reshape(-1, 1)
    for j in range(1, g.k):
        ok = np.ones((partial.shape[0], g.n), dtype=bool)
        for i in range(j):
            ok &= a[i, partial[:, i], j, :]
        rows, cols = np.nonzero(ok)
        partial = np.column_stack([partial[rows], cols])
    return partial


def count_k_cliques(g: KPartiteGraph) -> int:
    """Exact number of tuples that are cliques."""
    return int(_extend_cliques(g).shape[0])


def iter_cliques(g: KPartiteGraph) -> list[Tuple]:
    return [tuple(int(x) for x in row) for row in _extend_cliques(g)]


def common_neighborhood_size(g: KPartiteGraph, partial: Iterable[Vertex], i: int) -> int:
    """``|V_i ∩ N(u_1) ∩ ... ∩ N(u_a)|`` for a partial tuple of vertices."""
    partial = [tuple(u) for u in partial]
    blocks = [b for b, _ in partial]
    if len(set(blocks)) != len(blocks) or i in blocks:
        raise ContractError("partial must hold at most one vertex per block and avoid block i")
    mask = np.ones(g.n, dtype=bool)
    for b, x in partial:
        mask &= g.adjacency[b, x, i, :]
    return int(mask.sum())


@dataclass(frozen=True)
class NeighborhoodReport:
    checked: int
    violations: list[tuple[tuple[Vertex, ...], int, int]]  # (partial, block, size)
    max_a: int

    @property
    def ok(self) -> bool:
        return not self.violations


def neighborhood_report(g: KPartiteGraph, D: Fraction | int, p: Fraction) -> NeighborhoodReport:
    """Sweep all a-tuples with ``a <= D/4`` against the ``(1 ± 1/k) p^a n`` window."""
    max_a = min(math.floor(Fraction(D) / 4), g.k - 1)
    cost = sum(math.comb(g.k, a) * g.n**a * (g.k - a) for a in range(max_a + 1))
    budget.check(cost, "neighborhood sweep")
    checked = 0
    bad = []
    for a in range(max_a + 1):
        expect = float(p) ** a * g.n
        lo, hi = (1 - 1 / g.k) * expect, (1 + 1 / g.k) * expect
        for blocks in itertools.combinations(range(g.k), a):
            for idx in itertools.product(range(g.n), repeat=a):
                part = tuple(zip(blocks, idx))
                for i in range(g.k):
                    if i in blocks:
                        continue
                    size = common_neighborhood_size(g, part, i)
                    checked += 1
                    if not (lo <= size <= hi):
                        bad.append((part, i, size))
    return NeighborhoodReport(checked, bad, max_a)


@dataclass(frozen=True)
class SimpleGraph:
    """An ordinary graph on ``range(num_vertices)``."""

    num_vertices: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        canon = set()
        for u, v in self.edges:
            if u == v or not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ContractError(f"bad edge {(u, v)}")
            canon.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(canon))

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def incident(self, v: int) -> list[tuple[int, int]]:
        return sorted(e for e in self.edges if v in e)

    @classmethod
    def complete(cls, m: int) -> "SimpleGraph":
        return cls(m, frozenset(itertools.combinations(range(m), 2)))

    @classmethod
    def cycle(cls, m: int) -> "SimpleGraph":
        return cls(m, frozenset((i, (i + 1) % m) for i in range(m)))

    @classmethod
    def path(cls, m: int) -> "SimpleGraph":
        return cls(m, frozenset((i, i + 1) for i in range(m - 1)))

    @classmethod
    def named(cls, name: str) -> "SimpleGraph":
        """``triangle``, ``K<m>``, ``C<m>``, ``P<m>`` or ``single``."""
        if name == "triangle":
            return cls.complete(3)
        if name == "single":
            return cls(1)
        kind, num = name[:1], name[1:]
        if num.isdigit():
            m = int(num)
            if kind == "K":
                return cls.complete(m)
            if kind == "C" and m >= 3:
                return cls.cycle(m)
            if kind == "P":
                return cls.path(m)
        raise ContractError(f"unknown graph name {name!r}")

    @classmethod
    def from_kpartite(cls, g: KPartiteGraph) -> "SimpleGraph":
        edges = frozenset((b * g.n + i, c * g.n + j) for (b, i), (c, j) in g.edges)
        return cls(g.n * g.k, edges)

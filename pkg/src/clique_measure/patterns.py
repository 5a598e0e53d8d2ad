"""Pattern graphs over the block set ``[k]``: vertex covers, cores and fibers.

Edges of a pattern graph are stored as a bitmask over the ``C(k, 2)``
pair slots, ordered lexicographically.

Core construction
-----------------
For ``H`` let ``U`` be the union and ``X`` the intersection of all
minimum vertex covers, and call a vertex of ``V(E(H))`` outside ``U``
*outer*. Start from ``H`` with every edge at an outer vertex removed.
Then sweep the outer vertices in increasing order, repeating sweeps until
one adds nothing: an outer vertex ``o`` is restored (with all its ``H``
edges) when some neighbour of ``o`` lies outside the intersection of the
minimum covers of the current graph. The result is ``core(H)``.

``E*_F`` is the set of pairs ``e`` with one endpoint in ``V(E(F))`` such
that ``core(F + e) = F``. Fibers, boundary transfer, the size bound and
vc preservation are verified at runtime (:class:`CoreTable`); a failure
raises :class:`CoreVerificationError`.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import budget
from .errors import ContractError, CoreVerificationError

MAX_K = 16
VECTOR_MAX_K = 7  # all 2^C(k,2) graphs fit in memory
AUTO_VERIFY_MAX_K = 6  # core_map builds and verifies the table on demand


@lru_cache(maxsize=None)
def pair_slots(k: int) -> tuple[tuple[int, int], ...]:
    return tuple(itertools.combinations(range(k), 2))


@lru_cache(maxsize=None)
def _slot_lookup(k: int) -> dict[tuple[int, int], int]:
    out = {}
    for s, (a, b) in enumerate(pair_slots(k)):
        out[(a, b)] = out[(b, a)] = s
    return out


def slot_of(k: int, a: int, b: int) -> int:
    try:
        return _slot_lookup(k)[(a, b)]
    except KeyError:
        raise ContractError(f"invalid pair {(a, b)} for k={k}") from None


@lru_cache(maxsize=None)
def _incident(k: int) -> tuple[int, ...]:
    """Slot mask of edges at each vertex."""
    return tuple(sum(1 << slot_of(k, b, x) for x in range(k) if x != b) for b in range(k))


@lru_cache(maxsize=None)
def _cover_masks(k: int) -> tuple[int, ...]:
    """For each vertex set ``C`` (bitmask) the slots it covers."""
    inc = _incident(k)
    out = []
    for c in range(1 << k):
        m = 0
        for b in range(k):
            if c >> b & 1:
                m |= inc[b]
        out.append(m)
    return tuple(out)


def _vertex_set(k: int, mask: int) -> int:
    v = 0
    for s, (a, b) in enumerate(pair_slots(k)):
        if mask >> s & 1:
            v |= (1 << a) | (1 << b)
    return v


def _induced(k: int, vset: int) -> int:
    m = 0
    for s, (a, b) in enumerate(pair_slots(k)):
        if vset >> a & 1 and vset >> b & 1:
            m |= 1 << s
    return m


def _bits(x: int) -> list[int]:
    out = []
    i = 0
    while x:
        if x & 1:
            out.append(i)
        x >>= 1
        i += 1
    return out


@dataclass(frozen=True, order=True)
class PatternGraph:
    k: int
    mask: int

    def __post_init__(self) -> None:
        if not (1 <= self.k <= MAX_K):
            raise ContractError(f"k must be in [1, {MAX_K}]")
        if self.mask < 0 or self.mask >> math.comb(self.k, 2):
            raise ContractError("mask has bits beyond the pair slots")

    @classmethod
    def from_edges(cls, k: int, edges) -> "PatternGraph":
        m = 0
        for a, b in edges:
            m |= 1 << slot_of(k, a, b)
        return cls(k, m)

    @property
    def edges(self) -> list[tuple[int, int]]:
        slots = pair_slots(self.k)
        return [slots[s] for s in _bits(self.mask)]

    @property
    def num_edges(self) -> int:
        return self.mask.bit_count()

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(_bits(_vertex_set(self.k, self.mask)))

    def with_pair(self, a: int, b: int) -> "PatternGraph":
        return PatternGraph(self.k, self.mask | 1 << slot_of(self.k, a, b))

    def has_pair(self, a: int, b: int) -> bool:
        return bool(self.mask >> slot_of(self.k, a, b) & 1)

    def to_json(self) -> dict:
        return {"k": self.k, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj: dict) -> "PatternGraph":
        return cls.from_edges(int(obj["k"]), [tuple(e) for e in obj["edges"]])


@lru_cache(maxsize=1 << 18)
def _mvc(k: int, mask: int) -> tuple[int, tuple[int, ...]]:
    """Minimum cover size and all minimum covers as vertex bitmasks, sorted lexicographically."""
    cov = _cover_masks(k) if k <= 12 else None
    inc = _incident(k)
    verts = _bits(_vertex_set(k, mask))
    for size in range(len(verts) + 1):
        found = []
        for combo in itertools.combinations(verts, size):
            c = sum(1 << v for v in combo)
            cm = cov[c] if cov is not None else _or_inc(inc, combo)
            if mask & ~cm == 0:
                found.append(combo)
        if found:
            # combinations come out in lexicographic order already
            return size, tuple(sum(1 << v for v in combo) for combo in found)
    raise AssertionError("unreachable: V(E) always covers")


def _or_inc(inc, combo) -> int:
    m = 0
    for v in combo:
        m |= inc[v]
    return m


def min_vertex_covers(h: PatternGraph) -> tuple[int, list[frozenset[int]]]:
    size, covers = _mvc(h.k, h.mask)
    return size, [frozenset(_bits(c)) for c in covers]


def vc(h: PatternGraph) -> int:
    return _mvc(h.k, h.mask)[0]


def _vc(k: int, mask: int) -> int:
    return _mvc(k, mask)[0]


def is_core_of(f: PatternGraph, h: PatternGraph) -> bool:
    if f.k != h.k:
        raise ContractError("graphs over different k")
    if f.mask & ~h.mask or h.mask & _induced(h.k, _vertex_set(f.k, f.mask)) != f.mask:
        raise ContractError("f is not a vertex-induced subgraph of h")
    cov = _cover_masks(f.k) if f.k <= 12 else None
    for c in _mvc(f.k, f.mask)[1]:
        cm = cov[c] if cov is not None else _or_inc(_incident(f.k), _bits(c))
        if h.mask & ~cm:
            return False
    return True


def in_e_boundary(h: PatternGraph, e: tuple[int, int]) -> bool:
    return _vc(h.k, h.mask | 1 << slot_of(h.k, *e)) > _vc(h.k, h.mask)


@lru_cache(maxsize=1 << 18)
def _core_mask(k: int, mask: int) -> int:
    _, covers = _mvc(k, mask)
    union = 0
    for c in covers:
        union |= c
    outer = _vertex_set(k, mask) & ~union
    inc = _incident(k)
    cur = mask
    for o in _bits(outer):
        cur &= ~inc[o]
    kept = 0
    while True:
        added = False
        for o in _bits(outer):
            if kept >> o & 1:
                continue
            nbrs = _vertex_set(k, mask & inc[o]) & ~(1 << o)
            if nbrs & ~_essential(k, cur):
                cur |= mask & inc[o]
                kept |= 1 << o
                added = True
        if not added:
            return cur


def _essential(k: int, mask: int) -> int:
    ess = (1 << k) - 1
    for c in _mvc(k, mask)[1]:
        ess &= c
    return ess


@lru_cache(maxsize=1 << 16)
def _star_mask(k: int, core: int) -> int:
    a = _vertex_set(k, core)
    star = 0
    for s, (x, y) in enumerate(pair_slots(k)):
        if (a >> x & 1) != (a >> y & 1) and _core_mask(k, core | 1 << s) == core:
            star |= 1 << s
    return star


@dataclass(frozen=True)
class CoreRecord:
    core: PatternGraph
    star_edges: PatternGraph  # E*_F as a pattern graph over the same slots
    vc: int

    @property
    def support(self) -> frozenset[int]:
        """``A = V(E(F))``."""
        return self.core.vertices

    def to_row(self) -> dict:
        return {
            "core_bitmask": self.core.mask,
            "vc": self.vc,
            "star_size": self.star_edges.num_edges,
            "fiber_size": 1 << self.star_edges.num_edges,
        }


def _record(k: int, core: int) -> CoreRecord:
    return CoreRecord(PatternGraph(k, core), PatternGraph(k, _star_mask(k, core)), _vc(k, core))


def _check_local(k: int, h: int, rec: CoreRecord) -> None:
    f = rec.core.mask
    if not is_core_of(rec.core, PatternGraph(k, h)):
        raise CoreVerificationError(f"core {f:#x} is not a core of {h:#x}")
    if _vertex_set(k, f).bit_count() > 3 * rec.vc:
        raise CoreVerificationError(f"|V(E(F))| > 3 vc for h={h:#x}")
    if rec.vc != _vc(k, h):
        raise CoreVerificationError(f"vc not preserved for h={h:#x}")
    if (h & ~f) & ~rec.star_edges.mask:
        raise CoreVerificationError(f"h={h:#x} leaves the fiber of its core")


def core_map(h: PatternGraph, *, verify_table: bool | None = None) -> CoreRecord:
    """Canonical core of ``h`` with its fiber edge set.

    Local properties are always checked. The global fiber partition for
    ``(k, vc(h))`` is verified through :func:`core_table` when
    ``verify_table`` is true, which is the default for ``k <= 6``.
    """
    if h.k > 12:
        raise ContractError("core_map supports k <= 12")
    if verify_table is None:
        verify_table = h.k <= AUTO_VERIFY_MAX_K
    d = _vc(h.k, h.mask)
    if verify_table:
        core_table(h.k, d)
    rec = _record(h.k, _core_mask(h.k, h.mask))
    _check_local(h.k, h.mask, rec)
    return rec


def fiber_of_core(c: CoreRecord) -> list[PatternGraph]:
    budget.check(1 << c.star_edges.num_edges, "fiber size")
    star = _bits(c.star_edges.mask)
    out = []
    for r in range(len(star) + 1):
        for sub in itertools.combinations(star, r):
            out.append(PatternGraph(c.core.k, c.core.mask | sum(1 << s for s in sub)))
    return sorted(out)


# ---------------------------------------------------------------- vectorized tables


def _popcount(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a.astype(np.uint64)).astype(np.int64)


@dataclass(frozen=True)
class _AllGraphs:
    k: int
    vc: np.ndarray  # vc of every graph, indexed by mask
    fam: np.ndarray  # (words, N) bit family of minimum covers
    vset: np.ndarray
    core: np.ndarray


@lru_cache(maxsize=None)
def _all_graphs(k: int) -> _AllGraphs:
    """Vectorized covers and cores of every graph over [k] (k <= 7)."""
    P = math.comb(k, 2)
    N = 1 << P
    budget.check(N, f"exhaustive pattern tables for k={k}")
    g = np.arange(N, dtype=np.int64)
    full = N - 1
    cov = _cover_masks(k)
    pc = np.array([c.bit_count() for c in range(1 << k)])
    vcs = np.full(N, k + 1, dtype=np.int64)
    for c in range(1 << k):
        ok = (g & (full ^ cov[c])) == 0
        np.minimum(vcs, np.where(ok, pc[c], k + 1), out=vcs)
    words = ((1 << k) + 63) // 64
    fam = np.zeros((words, N), dtype=np.uint64)
    union = np.zeros(N, dtype=np.int64)
    ess = np.full(N, (1 << k) - 1, dtype=np.int64)
    for c in range(1 << k):
        ok = ((g & (full ^ cov[c])) == 0) & (pc[c] == vcs)
        fam[c // 64][ok] |= np.uint64(1 << (c % 64))
        union[ok] |= c
        ess[ok] &= c
    slots = pair_slots(k)
    vset = np.zeros(N, dtype=np.int64)
    for s, (a, b) in enumerate(slots):
        vset |= ((g >> s) & 1) * ((1 << a) | (1 << b))
    inc = _incident(k)

    def nbr(b: int) -> np.ndarray:
        r = np.zeros(N, dtype=np.int64)
        for x in range(k):
            if x != b:
                r |= ((g >> slot_of(k, b, x)) & 1) << x
        return r

    outer = vset & ~union
    cur = g.copy()
    for o in range(k):
        cur = np.where((outer >> o) & 1 == 1, cur & ~inc[o], cur)
    kept = np.zeros(N, dtype=np.int64)
    nbrs = [nbr(o) for o in range(k)]
    while True:
        added = np.zeros(N, dtype=bool)
        for o in range(k):
            cand = ((outer >> o) & 1 == 1) & ((kept >> o) & 1 == 0)
            keep = cand & ((nbrs[o] & ~ess[cur]) != 0)
            cur = np.where(keep, cur | (g & inc[o]), cur)
            kept |= np.where(keep, 1 << o, 0)
            added |= keep
        if not added.any():
            break
    return _AllGraphs(k, vcs, fam, vset, cur)


@dataclass(frozen=True)
class CoreTable:
    """All cores of graphs over ``[k]`` with vc at most ``d``, verified."""

    k: int
    d: int
    records: tuple[CoreRecord, ...]
    members: tuple[PatternGraph, ...]  # the bounded-vc graphs, sorted by mask

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, ["core_bitmask", "vc", "star_size", "fiber_size"], lineterminator="\n")
        w.writeheader()
        for r in self.records:
            w.writerow(r.to_row())
        return buf.getvalue()


def _verify_vectorized(t: _AllGraphs, d: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    k = t.k
    P = math.comb(k, 2)
    g = np.arange(1 << P, dtype=np.int64)
    sel = t.vc <= d
    hs = g[sel]
    cores = t.core[sel]
    # (a) every minimum cover of F covers h: with equal vc this is fam(F) ⊆ fam(h)
    if not (t.vc[cores] == t.vc[hs]).all():
        raise CoreVerificationError(f"vc not preserved (k={k}, d={d})")
    for w in range(t.fam.shape[0]):
        if (t.fam[w][cores] & ~t.fam[w][hs]).any():
            raise CoreVerificationError(f"core property fails (k={k}, d={d})")
    # vertex-induced
    ind = np.array([_induced(k, s) for s in range(1 << k)], dtype=np.int64)
    if not ((hs & ind[t.vset[cores]]) == cores).all():
        raise CoreVerificationError(f"core not vertex-induced (k={k}, d={d})")
    # (b) size bound
    if (_popcount(t.vset[cores]) > 3 * t.vc[hs]).any():
        raise CoreVerificationError(f"|V(E(F))| > 3 vc (k={k}, d={d})")
    img = np.unique(cores)
    if not (t.core[img] == img).all():
        raise CoreVerificationError(f"core map not idempotent (k={k}, d={d})")
    star = np.zeros(len(img), dtype=np.int64)
    vimg = t.vset[img]
    for s, (a, b) in enumerate(pair_slots(k)):
        crossing = ((vimg >> a) & 1) != ((vimg >> b) & 1)
        probe = img | (1 << s)
        ok = crossing & ((img >> s) & 1 == 0) & (t.core[probe] == img)
        star |= np.where(ok, 1 << s, 0)
    # (d)/(e) fibers are exactly the intervals [F, F + E*_F]
    idx = np.searchsorted(img, cores)
    if (((hs ^ cores) & ~star[idx]) != 0).any():
        raise CoreVerificationError(f"graph outside its core's fiber (k={k}, d={d})")
    counts = np.bincount(idx, minlength=len(img))
    if not (counts == (1 << _popcount(star))).all():
        raise CoreVerificationError(f"fibers do not partition the vc<={d} graphs (k={k})")
    # boundary transfer for every pair outside h
    for s in range(P):
        out = (hs >> s) & 1 == 0
        bh = t.vc[hs | (1 << s)] > t.vc[hs]
        bf = t.vc[cores | (1 << s)] > t.vc[cores]
        if (out & (bh != bf)).any():
            raise CoreVerificationError(f"boundary transfer fails on slot {s} (k={k}, d={d})")
    return img, star, hs


def _verify_generic(k: int, d: int, graphs: list[int]) -> tuple[list[int], dict[int, int]]:
    cores: dict[int, int] = {}
    for h in graphs:
        f = _core_mask(k, h)
        rec = _record(k, f)
        _check_local(k, h, rec)
        cores.setdefault(f, rec.star_edges.mask)
        for s in range(math.comb(k, 2)):
            if not h >> s & 1:
                bh = _vc(k, h | 1 << s) > _vc(k, h)
                bf = _vc(k, f | 1 << s) > _vc(k, f)
                if bh != bf:
                    raise CoreVerificationError(f"boundary transfer fails for h={h:#x}, slot {s}")
    seen = set(graphs)
    total = 0
    for f, star in cores.items():
        for sub in _subsets(star):
            m = f | sub
            if m not in seen or _core_mask(k, m) != f:
                raise CoreVerificationError(f"fiber of {f:#x} leaves the bounded set or maps elsewhere")
            total += 1
    if total != len(seen):
        raise CoreVerificationError(f"fibers do not partition the vc<={d} graphs (k={k})")
    return sorted(cores), cores


def _subsets(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@lru_cache(maxsize=None)
def core_table(k: int, d: int) -> CoreTable:
    """Build and verify all cores for ``(k, d)``; aborts on any failed property."""
    if d < 0:
        raise ContractError("d must be non-negative")
    if k <= VECTOR_MAX_K:
        t = _all_graphs(k)
        img, star, hs = _verify_vectorized(t, d)
        records = tuple(
            CoreRecord(PatternGraph(k, int(f)), PatternGraph(k, int(s)), int(t.vc[f]))
            for f, s in zip(img, star)
        )
        # the per-graph construction must agree with the vectorized one
        for rec in records[:: max(1, len(records) // 64)]:
            if _core_mask(k, rec.core.mask) != rec.core.mask or _star_mask(k, rec.core.mask) != rec.star_edges.mask:
                raise CoreVerificationError(f"vectorized and per-graph cores disagree at {rec.core.mask:#x}")
        members = tuple(PatternGraph(k, int(h)) for h in hs)
    else:
        graphs = [h.mask for h in enumerate_vc_bounded(k, d)]
        order, stars = _verify_generic(k, d, graphs)
        records = tuple(CoreRecord(PatternGraph(k, f), PatternGraph(k, stars[f]), _vc(k, f)) for f in order)
        members = tuple(PatternGraph(k, h) for h in graphs)
    return CoreTable(k, d, records, members)


def enumerate_vc_bounded(k: int, d: int) -> list[PatternGraph]:
    """All graphs over ``[k]`` with vc at most ``d``, sorted by mask."""
    if k <= VECTOR_MAX_K:
        t = _all_graphs(k)
        return [PatternGraph(k, int(h)) for h in np.nonzero(t.vc <= d)[0]]
    if k > 12:
        raise ContractError("enumeration supports k <= 12")
    # every such graph sits inside the star of some d-set of vertices
    size = min(d, k)
    cov = _cover_masks(k)
    covers = [sum(1 << v for v in c) for c in itertools.combinations(range(k), size)]
    budget.check(sum(1 << cov[c].bit_count() for c in covers), f"vc-bounded enumeration k={k}, d={d}")
    found: set[int] = set()
    for c in covers:
        found.update(_subsets(cov[c]))
    return [PatternGraph(k, h) for h in sorted(found)]


def enumerate_cores(k: int, d: int) -> list[CoreRecord]:
    return list(core_table(k, d).records)


def core_count_bound_check(k: int, a: int, b: int) -> tuple[int, int, bool]:
    """Count graphs with a vertex cover of size ``a`` and ``|V(E)| <= b``.

    The bound ``2^{b(a + log2 k)}`` equals the integer ``2^{ab} k^b``.
    """
    if k <= VECTOR_MAX_K:
        t = _all_graphs(k)
        count = int(((t.vc <= a) & (_popcount(t.vset) <= b)).sum())
    else:
        count = sum(1 for h in enumerate_vc_bounded(k, a) if len(h.vertices) <= b)
    bound = 2 ** (a * b) * k**b
    return count, bound, count <= bound

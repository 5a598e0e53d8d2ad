"""Clique formulas: the plain encoding and the block encodings with witness maps.

Variable layouts (1-based DIMACS indices, blocks and vertices 0-based):

* plain   ``x[v,i]``   -> ``v*k + i + 1``
* unary   ``x[i,v]``   -> ``i*n + v + 1``
* binary  ``x[i,b]``   -> ``i*L + b + 1`` with ``L = ceil(log2 n)``, bit 0 most significant
* c-ary   ``x[i,j,a]`` -> ``(i*c + j)*m + a + 1`` with ``m`` least such that ``m**c >= n``,
  coordinate 0 most significant

Extension variables of the width-3 ladders follow the X variables in
clause order. Template ``y`` variables come last, one per cross pair in
canonical order.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Sequence

from ..errors import ContractError
from ..graphs import KPartiteGraph, SimpleGraph, Tuple, all_tuples, check_tuple, cross_pairs
from .cnf import Clause, CnfFormula

ENCODINGS = ("unary", "binary", "cary")


def gen_clique_plain(g: SimpleGraph, k: int) -> CnfFormula:
    """``x[v,i]`` says vertex ``v`` is the ``i``-th clique member.

    Besides edge and block axioms, one vertex may not fill two positions
    (``¬x[v,i] ∨ ¬x[v,j]``); without this a single vertex would satisfy
    the formula for every ``k``.
    """
    N = g.num_vertices
    if k < 1:
        raise ContractError("k must be positive")

    def x(v: int, i: int) -> int:
        return v * k + i + 1

    names = {x(v, i): f"x[{v},{i}]" for v in range(N) for i in range(k)}
    clauses: list[Clause] = []
    for u, v in itertools.combinations(range(N), 2):
        if (u, v) in g.edges:
            continue
        for i, j in itertools.permutations(range(k), 2):
            clauses.append((-x(u, i), -x(v, j)))
    for v in range(N):
        for i, j in itertools.combinations(range(k), 2):
            clauses.append((-x(v, i), -x(v, j)))
    for i in range(k):
        clauses.append(tuple(x(v, i) for v in range(N)))
    return CnfFormula(N * k, tuple(clauses), names)


@dataclass(frozen=True)
class WitnessMap:
    """The correspondence ``t -> ρ_t`` for one encoding.

    ``num_vars`` counts X plus extension variables; template ``y``
    variables are never part of a witness.
    """

    encoding: str
    n: int
    k: int
    c: int
    m: int
    num_x: int
    num_vars: int
    ladders: tuple[tuple[Clause, tuple[int, ...]], ...] = ()

    def x_assignment(self, t: Sequence[int]) -> int:
        n, k = self.n, self.k
        if len(t) != k or any(not (0 <= a < n) for a in t):
            raise ContractError(f"malformed tuple {tuple(t)}")
        out = 0
        if self.encoding in ("unary", "embed"):
            for i, a in enumerate(t):
                out |= 1 << (i * n + a)
        elif self.encoding == "binary":
            L = self.c
            for i, a in enumerate(t):
                for b in range(L):
                    if a >> (L - 1 - b) & 1:
                        out |= 1 << (i * L + b)
        elif self.encoding == "cary":
            for i, a in enumerate(t):
                for j, digit in enumerate(_digits(a, self.m, self.c)):
                    out |= 1 << ((i * self.c + j) * self.m + digit)
        else:
            raise ContractError(f"unknown encoding {self.encoding!r}")
        return out

    def assignment(self, t: Sequence[int]) -> int:
        out = self.x_assignment(t)
        for lits, ext in self.ladders:
            for j, e in enumerate(ext):
                # t_j holds iff none of the first j + 2 literals does
                if not any(_lit_true(l, out) for l in lits[: j + 2]):
                    out |= 1 << (e - 1)
        return out

    def all_assignments(self) -> dict[Tuple, int]:
        return {t: self.assignment(t) for t in all_tuples(self.n, self.k)}


def witness_assignment(wm: WitnessMap, t: Sequence[int]) -> int:
    return wm.assignment(t)


def embedding_witness(n: int, k: int, num_vars: int) -> WitnessMap:
    """Unary-style embedding of tuples into the first ``n*k`` variables of any formula."""
    if n * k > num_vars:
        raise ContractError("formula has fewer than n*k variables")
    return WitnessMap("embed", n, k, 1, n, n * k, num_vars)


def _lit_true(l: int, a: int) -> bool:
    return bool(a >> (abs(l) - 1) & 1) == (l > 0)


def _digits(a: int, m: int, c: int) -> list[int]:
    out = []
    for _ in range(c):
        out.append(a % m)
        a //= m
    return out[::-1]


def _cary_base(n: int, c: int) -> int:
    m = 1
    while m**c < n:
        m += 1
    return m


def _bits_needed(n: int) -> int:
    return max(0, math.ceil(math.log2(n))) if n > 1 else 0


def gen_bclique(
    g: KPartiteGraph,
    encoding: str = "unary",
    c: int | None = None,
    *,
    width3: bool = False,
    template: bool = False,
) -> tuple[CnfFormula, WitnessMap]:
    """Block encoding of "``g`` has a k-clique".

    With ``template=True`` the formula has edge axioms for every cross
    pair, each carrying a positive ``y`` literal; :func:`restrict_template`
    substitutes a graph. ``width3`` rewrites block and range axioms longer
    than three literals as ladders.
    """
    n, k = g.n, g.k
    if encoding not in ENCODINGS:
        raise ContractError(f"encoding must be one of {ENCODINGS}")
    names: dict[int, str] = {}
    # per block: vertex -> clause that is false exactly when the vertex is chosen
    if encoding == "unary":
        if c not in (None, 1):
            raise ContractError("unary takes no c")
        width, m, span = 1, n, n
        num_x = n * k
        for i in range(k):
            for v in range(n):
                names[i * n + v + 1] = f"x[{i},{v}]"

        def not_chosen(i: int, v: int) -> Clause:
            return (-(i * n + v + 1),)

        group_axioms = [tuple(i * n + v + 1 for v in range(n)) for i in range(k)]
        group_names = [(i,) for i in range(k)]
        extra: list[Clause] = []
    elif encoding == "binary":
        L = _bits_needed(n)
        width, m, span = L, 2, 1 << L
        num_x = L * k
        for i in range(k):
            for b in range(L):
                names[i * L + b + 1] = f"x[{i},{b}]"

        def not_chosen(i: int, v: int) -> Clause:
            return tuple(
                -(i * L + b + 1) if v >> (L - 1 - b) & 1 else i * L + b + 1 for b in range(L)
            )

        group_axioms, group_names = [], []
        extra = [not_chosen(i, a) for i in range(k) for a in range(n, span)]
    else:
        hi = max(1, _bits_needed(n))
        if c is None or not (1 <= c <= hi):
            raise ContractError(f"c must lie in [1, {hi}] for n={n}")
        m = _cary_base(n, c)
        width, span = c, m**c
        num_x = k * c * m
        for i in range(k):
            for j in range(c):
                for a in range(m):
                    names[(i * c + j) * m + a + 1] = f"x[{i},{j},{a}]"

        def not_chosen(i: int, v: int) -> Clause:
            return tuple(-((i * c + j) * m + a + 1) for j, a in enumerate(_digits(v, m, c)))

        group_axioms = [tuple((i * c + j) * m + a + 1 for a in range(m)) for i in range(k) for j in range(c)]
        group_names = [(i, j) for i in range(k) for j in range(c)]
        extra = []

    # edge axioms: real cross pairs in canonical order, then pairs touching padding
    clauses: list[Clause] = []
    y_slots: list[int] = []  # index into clauses of each templated edge axiom
    real = cross_pairs(n, k)
    for (i, a), (j, b) in real:
        if template or ((i, a), (j, b)) not in g.edges:
            if template:
                y_slots.append(len(clauses))
            clauses.append(not_chosen(i, a) + not_chosen(j, b))
    if span > n and encoding == "cary":
        for i, j in itertools.combinations(range(k), 2):
            for a in range(span):
                for b in range(span):
                    if a >= n or b >= n:
                        clauses.append(not_chosen(i, a) + not_chosen(j, b))
    clauses += extra

    nv = num_x
    ladders = []
    for lits, gname in zip(group_axioms, group_names):
        if width3 and len(lits) > 3:
            ext = list(range(nv + 1, nv + len(lits) - 2))
            for s, e in enumerate(ext):
                names[e] = "t[" + ",".join(map(str, gname + (s,))) + "]"
            nv += len(ext)
            clauses.append((lits[0], lits[1], ext[0]))
            for s in range(1, len(ext)):
                clauses.append((-ext[s - 1], lits[s + 1], ext[s]))
            clauses.append((-ext[-1], lits[-2], lits[-1]))
            ladders.append((lits, tuple(ext)))
        else:
            clauses.append(lits)

    wm = WitnessMap(encoding, n, k, width, m, num_x, nv, tuple(ladders))

    if template:
        for s, ((i, a), (j, b)) in zip(y_slots, real):
            nv += 1
            names[nv] = f"y[{i},{a},{j},{b}]"
            clauses[s] = clauses[s] + (nv,)
    return CnfFormula(nv, tuple(clauses), names), wm


_Y_NAME = re.compile(r"^y\[(\d+),(\d+),(\d+),(\d+)\]$")


def restrict_template(f: CnfFormula, g: KPartiteGraph) -> CnfFormula:
    """Set every ``y`` to the edge indicator of ``g`` and simplify."""
    ys: dict[int, tuple] = {}
    for v, name in f.var_names.items():
        mt = _Y_NAME.match(name)
        if mt:
            i, a, j, b = map(int, mt.groups())
            ys[v] = ((i, a), (j, b))
    if not ys:
        raise ContractError("formula has no y variables")
    if min(ys) != f.num_vars - len(ys) + 1 or max(ys) != f.num_vars:
        raise ContractError("y variables must be the last block of variables")
    out = []
    for cl in f.clauses:
        kept = []
        satisfied = False
        for l in cl:
            if abs(l) in ys:
                present = ys[abs(l)] in g.edges
                if present == (l > 0):
                    satisfied = True
            else:
                kept.append(l)
        if not satisfied:
            out.append(tuple(kept))
    base = f.num_vars - len(ys)
    names = {v: nm for v, nm in f.var_names.items() if v <= base}
    return CnfFormula(base, tuple(out), names)


def bclique_value(f: CnfFormula, wm: WitnessMap, t: Sequence[int]) -> bool:
    """Evaluate the formula at ``ρ_t``."""
    return f.evaluate(wm.assignment(t))


def check_witness_property(f: CnfFormula, wm: WitnessMap, g: KPartiteGraph) -> bool:
    from ..graphs import is_clique

    seen = set()
    for t in all_tuples(g.n, g.k):
        a = wm.assignment(check_tuple(g, t))
        if a in seen or f.evaluate(a) != is_clique(g, t):
            return False
        seen.add(a)
    return True

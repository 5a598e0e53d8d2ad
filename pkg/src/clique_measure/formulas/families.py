"""Pigeonhole, Tseitin, gadget lifting and random k-CNF generators."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .. import budget
from ..errors import ContractError
from ..graphs import SimpleGraph
from .cnf import Clause, CnfFormula

MAX_TSEITIN_DEGREE = 12
MAX_GADGET_ARITY = 4
MAX_LIFT_WIDTH = 6


def complete_bipartite(num_pigeons: int, num_holes: int) -> list[tuple[int, int]]:
    return [(p, h) for p in range(num_pigeons) for h in range(num_holes)]


def gen_php(edges: Iterable[tuple[int, int]], num_pigeons: int, num_holes: int) -> CnfFormula:
    """Pigeonhole formula over a bipartite graph of allowed (pigeon, hole) pairs."""
    edges = sorted(set((int(p), int(h)) for p, h in edges))
    for p, h in edges:
        if not (0 <= p < num_pigeons and 0 <= h < num_holes):
            raise ContractError(f"edge {(p, h)} out of range")
    var = {e: i + 1 for i, e in enumerate(edges)}
    names = {v: f"x[{p},{h}]" for (p, h), v in var.items()}
    clauses: list[Clause] = []
    for p in range(num_pigeons):
        clauses.append(tuple(var[(p, h)] for h in range(num_holes) if (p, h) in var))
    for h in range(num_holes):
        ps = [p for p in range(num_pigeons) if (p, h) in var]
        for p, q in itertools.combinations(ps, 2):
            clauses.append((-var[(p, h)], -var[(q, h)]))
    return CnfFormula(len(edges), tuple(clauses), names)


def parse_charge(charge: str | Sequence[int], num_vertices: int) -> list[int]:
    if isinstance(charge, str):
        if set(charge) - {"0", "1"}:
            raise ContractError("charge string must be over 0/1")
        vals = [int(ch) for ch in charge]
    else:
        vals = [int(x) & 1 for x in charge]
    if len(vals) != num_vertices:
        raise ContractError(f"charge needs {num_vertices} entries")
    return vals


def gen_tseitin(g: SimpleGraph, charge: str | Sequence[int]) -> CnfFormula:
    """Parity constraints ``Σ_{e∋v} x_e = α_v (mod 2)``, each as ``2^{deg-1}`` clauses."""
    alpha = parse_charge(charge, g.num_vertices)
    edges = sorted(g.edges)
    var = {e: i + 1 for i, e in enumerate(edges)}
    names = {v: f"x[{a},{b}]" for (a, b), v in var.items()}
    clauses: list[Clause] = []
    for v in range(g.num_vertices):
        inc = g.incident(v)
        if len(inc) > MAX_TSEITIN_DEGREE:
            raise ContractError(f"vertex {v} has degree {len(inc)} > {MAX_TSEITIN_DEGREE}")
        for bits in itertools.product((0, 1), repeat=len(inc)):
            if sum(bits) % 2 != alpha[v]:
                # exclude this local assignment
                clauses.append(tuple(-var[e] if b else var[e] for e, b in zip(inc, bits)))
    return CnfFormula(len(edges), tuple(clauses), names)


@dataclass(frozen=True)
class Gadget:
    """A Boolean function on ``arity`` bits; ``table[z]`` with ``z = Σ y_j << j``."""

    arity: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if not (1 <= self.arity <= MAX_GADGET_ARITY):
            raise ContractError(f"gadget arity must be in [1, {MAX_GADGET_ARITY}]")
        if len(self.table) != 1 << self.arity or set(self.table) - {0, 1}:
            raise ContractError("truth table must hold 2^arity bits")

    @classmethod
    def from_function(cls, arity: int, fn: Callable[[tuple[int, ...]], int]) -> "Gadget":
        return cls(arity, tuple(int(bool(fn(tuple(z >> j & 1 for j in range(arity))))) for z in range(1 << arity)))

    @classmethod
    def identity(cls) -> "Gadget":
        return cls(1, (0, 1))

    @classmethod
    def xor(cls, arity: int = 2) -> "Gadget":
        return cls.from_function(arity, lambda y: sum(y) % 2)

    @classmethod
    def and_(cls, arity: int = 2) -> "Gadget":
        return cls.from_function(arity, all)

    @classmethod
    def or_(cls, arity: int = 2) -> "Gadget":
        return cls.from_function(arity, any)

    @classmethod
    def named(cls, name: str) -> "Gadget":
        base, _, num = name.partition(":")
        arity = int(num) if num else 2
        table = {"id": lambda: cls.identity(), "xor": lambda: cls.xor(arity), "and": lambda: cls.and_(arity), "or": lambda: cls.or_(arity)}
        if base not in table:
            raise ContractError(f"unknown gadget {name!r}")
        return table[base]()


def _maxterms(g: Gadget, value: int, var: Sequence[int]) -> list[Clause]:
    """CNF of ``g(y) = value``: one clause excluding each input with the other value."""
    out = []
    for z in range(1 << g.arity):
        if g.table[z] != value:
            out.append(tuple(-var[j] if z >> j & 1 else var[j] for j in range(g.arity)))
    return out


def lift_formula(a: CnfFormula, g: Gadget) -> CnfFormula:
    """Compose ``a`` with ``g`` on fresh variables and expand by distribution.

    Variable ``x_v`` becomes ``y[v,0..m-1]`` at indices ``(v-1)*m + j + 1``.
    A lifted clause is the disjunction of the CNFs of ``g = 1`` (positive
    literal) or ``g = 0`` (negative literal); distribution picks one clause
    from each disjunct and drops tautologies and repeats.
    """
    if a.max_width > MAX_LIFT_WIDTH:
        raise ContractError(f"clause width {a.max_width} exceeds {MAX_LIFT_WIDTH}")
    m = g.arity
    pos = [j + 1 for j in range(m)]
    cnf = {1: _maxterms(g, 1, pos), 0: _maxterms(g, 0, pos)}
    cost = sum(max(1, max(len(cnf[1]), len(cnf[0]))) ** len(c) for c in a.clauses)
    budget.check(cost, "lift expansion")
    names = {(v - 1) * m + j + 1: f"y[{v},{j}]" for v in range(1, a.num_vars + 1) for j in range(m)}
    out: list[Clause] = []
    seen: set[frozenset[int]] = set()
    for clause in a.clauses:
        parts = []
        trivially_true = False
        for lit in clause:
            v = abs(lit)
            local = cnf[1 if lit > 0 else 0]
            shift = (v - 1) * m
            shifted = [tuple((abs(x) + shift) * (1 if x > 0 else -1) for x in cl) for cl in local]
            if not shifted:
                trivially_true = True
                break
            if any(len(cl) == 0 for cl in shifted):
                continue  # constant-false disjunct
            parts.append(shifted)
        if trivially_true:
            continue
        for combo in itertools.product(*parts):
            lits: set[int] = set()
            for cl in combo:
                lits.update(cl)
            if any(-x in lits for x in lits):
                continue
            key = frozenset(lits)
            if key not in seen:
                seen.add(key)
                out.append(tuple(sorted(lits, key=abs)))
    return CnfFormula(a.num_vars * m, tuple(out), names)


def random_kcnf(num_vars: int, num_clauses: int, width: int, seed: int) -> CnfFormula:
    """Uniform random ``width``-CNF; deterministic in ``seed``."""
    if width > num_vars:
        raise ContractError("width exceeds num_vars")
    rng = np.random.Generator(np.random.Philox(key=seed))
    clauses = []
    for _ in range(num_clauses):
        vs = rng.choice(num_vars, size=width, replace=False) + 1
        signs = rng.integers(0, 2, size=width)
        clauses.append(tuple(int(v) if s else -int(v) for v, s in zip(vs, signs)))
    return CnfFormula(num_vars, tuple(clauses), {v: f"x[{v}]" for v in range(1, num_vars + 1)})


def evaluate_lifted(a: CnfFormula, g: Gadget, y: int) -> bool:
    """Semantic value of ``a ∘ g^n`` at the assignment ``y`` to the lifted variables."""
    m = g.arity
    x = 0
    for v in range(a.num_vars):
        z = y >> (v * m) & ((1 << m) - 1)
        if g.table[z]:
            x |= 1 << v
    return a.evaluate(x)

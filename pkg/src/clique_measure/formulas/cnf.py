"""CNF formulas, DIMACS I/O and a brute-force satisfiability oracle.

An assignment is an integer whose bit ``v - 1`` holds the value of
variable ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .. import budget
from ..errors import ContractError

Clause = tuple[int, ...]

MAX_BRUTE_VARS = 26


def normalize_clause(lits: Iterable[int]) -> Clause:
    lits = list(lits)
    if any(l == 0 for l in lits):
        raise ContractError("literal 0 is not allowed")
    vars_ = [abs(l) for l in lits]
    if len(set(vars_)) != len(vars_):
        raise ContractError(f"clause {lits} repeats a variable")
    return tuple(sorted(lits, key=abs))


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[Clause, ...]
    var_names: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clauses = tuple(normalize_clause(c) for c in self.clauses)
        for c in clauses:
            for l in c:
                if abs(l) > self.num_vars:
                    raise ContractError(f"literal {l} exceeds num_vars={self.num_vars}")
        object.__setattr__(self, "clauses", clauses)
        object.__setattr__(self, "var_names", dict(sorted(self.var_names.items())))

    def __hash__(self) -> int:
        return hash((self.num_vars, self.clauses))

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    @property
    def max_width(self) -> int:
        return max((len(c) for c in self.clauses), default=0)

    @cached_property
    def _masks(self) -> list[tuple[int, int]]:
        out = []
        for c in self.clauses:
            pos = neg = 0
            for l in c:
                if l > 0:
                    pos |= 1 << (l - 1)
                else:
                    neg |= 1 << (-l - 1)
            out.append((pos, neg))
        return out

    def clause_satisfied(self, index: int, assignment: int) -> bool:
        pos, neg = self._masks[index]
        return bool(assignment & pos) or bool(~assignment & neg)

    def evaluate(self, assignment: int) -> bool:
        return all(self.clause_satisfied(i, assignment) for i in range(len(self.clauses)))

    def falsified(self, assignment: int) -> list[int]:
        return [i for i in range(len(self.clauses)) if not self.clause_satisfied(i, assignment)]

    def var_index(self, name: str) -> int:
        for v, nm in self.var_names.items():
            if nm == name:
                return v
        raise KeyError(name)


def to_dimacs(f: CnfFormula) -> str:
    lines = [f"c var {v} {name}" for v, name in f.var_names.items()]
    lines.append(f"p cnf {f.num_vars} {f.num_clauses}")
    lines += [" ".join(map(str, c + (0,))) for c in f.clauses]
    return "\n".join(lines) + "\n"


def from_dimacs(text: str) -> CnfFormula:
    names: dict[int, str] = {}
    header = None
    clauses: list[Clause] = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if line.startswith("c"):
            parts = line.split(maxsplit=3)
            if len(parts) == 4 and parts[1] == "var":
                try:
                    names[int(parts[2])] = parts[3]
                except ValueError:
                    raise ContractError(f"line {lineno}: bad variable comment") from None
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise ContractError(f"line {lineno}: malformed header")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ContractError(f"line {lineno}: malformed header") from None
            continue
        if header is None:
            raise ContractError(f"line {lineno}: clause before header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ContractError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                try:
                    clauses.append(normalize_clause(pending))
                except ContractError as exc:
                    raise ContractError(f"line {lineno}: {exc}") from None
                pending = []
            else:
                if abs(lit) > header[0]:
                    raise ContractError(f"line {lineno}: literal {lit} exceeds {header[0]} variables")
                pending.append(lit)
    if header is None:
        raise ContractError("missing 'p cnf' header")
    if pending:
        raise ContractError("last clause is not terminated by 0")
    if len(clauses) != header[1]:
        raise ContractError(f"header promises {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses), names)


@dataclass(frozen=True)
class SatResult:
    sat: bool
    assignment: int | None = None


def brute_force_sat(f: CnfFormula) -> SatResult:
    """Exhaustive search; returns the least satisfying assignment."""
    m = f.num_vars
    if m > MAX_BRUTE_VARS:
        raise ContractError(f"brute force supports at most {MAX_BRUTE_VARS} variables")
    budget.check(1 << m, "brute-force assignments")
    if any(len(c) == 0 for c in f.clauses):
        return SatResult(False)
    masks = f._masks
    chunk = 1 << min(m, 20)
    for base in range(0, 1 << m, chunk):
        a = np.arange(base, base + chunk, dtype=np.int64)
        alive = np.ones(chunk, dtype=bool)
        for pos, neg in masks:
            alive &= ((a & pos) != 0) | ((~a & neg) != 0)
            if not alive.any():
                break
        hits = np.flatnonzero(alive)
        if hits.size:
            found = int(a[hits[0]])
            if not f.evaluate(found):
                raise AssertionError("vectorized search returned a falsifying assignment")
            return SatResult(True, found)
    return SatResult(False)


def assignment_from_values(values: Mapping[int, bool]) -> int:
    out = 0
    for v, b in values.items():
        if b:
            out |= 1 << (v - 1)
    return out

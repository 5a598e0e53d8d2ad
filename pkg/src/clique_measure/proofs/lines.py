"""Semantic lines: subsets of ``{0,1}^m`` stored as Python integers.

Bit ``α`` of a line is set when the line rules out the assignment whose
integer encoding is ``α`` (variable ``v`` is bit ``v - 1`` of ``α``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from ..errors import ContractError

MAX_LINE_VARS = 24


@lru_cache(maxsize=None)
def _full(m: int) -> int:
    return (1 << (1 << m)) - 1


@lru_cache(maxsize=256)
def var_mask(m: int, v: int) -> int:
    """Assignments over ``m`` variables in which ``x_v = 1``."""
    if not (1 <= v <= m):
        raise ContractError(f"variable {v} out of range for m={m}")
    idx = np.arange(1 << m, dtype=np.int64)
    bits = ((idx >> (v - 1)) & 1).astype(np.uint8)
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


@dataclass(frozen=True)
class SemanticLine:
    num_vars: int
    bits: int

    def __post_init__(self) -> None:
        if not (0 <= self.num_vars <= MAX_LINE_VARS):
            raise ContractError(f"lines support at most {MAX_LINE_VARS} variables")
        if self.bits < 0 or self.bits > _full(self.num_vars):
            raise ContractError("line has bits outside {0,1}^m")

    @classmethod
    def one(cls, m: int) -> "SemanticLine":
        return cls(m, _full(m))

    @classmethod
    def zero(cls, m: int) -> "SemanticLine":
        return cls(m, 0)

    @property
    def is_one(self) -> bool:
        return self.bits == _full(self.num_vars)

    def rules_out(self, assignment: int) -> bool:
        return bool(self.bits >> assignment & 1)

    def __or__(self, other: "SemanticLine") -> "SemanticLine":
        _same(self, other)
        return SemanticLine(self.num_vars, self.bits | other.bits)

    def __and__(self, other: "SemanticLine") -> "SemanticLine":
        _same(self, other)
        return SemanticLine(self.num_vars, self.bits & other.bits)

    def __le__(self, other: "SemanticLine") -> bool:
        _same(self, other)
        return self.bits & ~other.bits == 0

    def to_hex(self) -> str:
        return hex(self.bits)

    @classmethod
    def from_hex(cls, m: int, text: str) -> "SemanticLine":
        return cls(m, int(text, 16))


def _same(a: SemanticLine, b: SemanticLine) -> None:
    if a.num_vars != b.num_vars:
        raise ContractError("lines over different variable counts")


def line_from_clause(clause: Iterable[int], m: int) -> SemanticLine:
    """Indicator of the assignments falsifying ``clause``."""
    bits = _full(m)
    for lit in clause:
        vm = var_mask(m, abs(lit))
        # a positive literal is false where x_v = 0
        bits &= (_full(m) ^ vm) if lit > 0 else vm
    return SemanticLine(m, bits)


def lowest_assignment(bits: int) -> int:
    return (bits & -bits).bit_length() - 1

"""Brute-force VC dimension, Sauer–Shelah checks and bounded-coefficient line families.

Members of a :class:`SetFamily` are bitmasks over positions in the ground
list.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import budget
from .errors import ContractError

MAX_GROUND = 24


@dataclass(frozen=True)
class SetFamily:
    ground: tuple
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.ground) > MAX_GROUND:
            raise ContractError(f"ground set larger than {MAX_GROUND}")
        full = (1 << len(self.ground)) - 1
        if any(m < 0 or m & ~full for m in self.members):
            raise ContractError("member outside the ground set")
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))

    @classmethod
    def from_sets(cls, ground: Sequence, sets: Iterable[Iterable]) -> "SetFamily":
        pos = {x: i for i, x in enumerate(ground)}
        return cls(tuple(ground), tuple(sum(1 << pos[x] for x in s) for s in sets))

    @classmethod
    def power_set(cls, ground: Sequence) -> "SetFamily":
        return cls(tuple(ground), tuple(range(1 << len(ground))))

    def __len__(self) -> int:
        return len(self.members)

    def subfamily(self, members: Iterable[int]) -> "SetFamily":
        return SetFamily(self.ground, tuple(members))


def _mask_of(fam: SetFamily, x: Iterable) -> int:
    pos = {g: i for i, g in enumerate(fam.ground)}
    try:
        return sum(1 << pos[e] for e in x)
    except KeyError as exc:
        raise ContractError(f"{exc.args[0]!r} is not in the ground set") from None


def _shatters(members: np.ndarray, xmask: int, size: int) -> bool:
    if members.size == 0:
        return False
    traces = np.unique(members & xmask)
    return traces.size == 1 << size


def is_shattered(fam: SetFamily, x: Iterable) -> bool:
    xmask = _mask_of(fam, x)
    size = xmask.bit_count()
    if size > 20:
        raise ContractError("|x| must be at most 20")
    return _shatters(np.array(fam.members, dtype=np.int64), xmask, size)


def vc_dimension(fam: SetFamily) -> int:
    """Largest ``d`` such that some ``d``-subset of the ground set is shattered (-1 for an empty family)."""
    if not fam.members:
        return -1
    g = len(fam.ground)
    cap = min(g, math.floor(math.log2(len(fam.members))))
    budget.check(sum(math.comb(g, s) for s in range(cap + 1)), "VC candidate sets")
    members = np.array(fam.members, dtype=np.int64)
    # shattered sets are closed under subsets, so search downward from the cardinality cap
    for size in range(cap, 0, -1):
        for combo in itertools.combinations(range(g), size):
            if _shatters(members, sum(1 << i for i in combo), size):
                return size
    return 0


def sauer_shelah_check(fam: SetFamily) -> tuple[int, int, bool]:
    d = vc_dimension(fam)
    n = len(fam.ground)
    bound = sum(math.comb(n, i) for i in range(d + 1))
    return len(fam), bound, len(fam) <= bound


def cube(dim: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.product((0, 1), repeat=dim))


def _monomials(dim: int, degree: int) -> list[tuple[int, ...]]:
    return [s for r in range(degree + 1) for s in itertools.combinations(range(dim), r)]


def _threshold_family(dim: int, feats: np.ndarray, coeff_bound: int) -> SetFamily:
    """Traces ``{x : Σ c_j φ_j(x) >= 0}`` over all integer ``c`` in ``[-B, B]``."""
    nf = feats.shape[1]
    budget.check((2 * coeff_bound + 1) ** nf, "coefficient vectors")
    vals = np.arange(-coeff_bound, coeff_bound + 1)
    weights = 1 << np.arange(feats.shape[0], dtype=np.int64)
    found: set[int] = set()
    # enumerate coefficient vectors in chunks to bound memory
    grids = np.array(np.meshgrid(*[vals] * nf, indexing="ij")).reshape(nf, -1).T
    for start in range(0, grids.shape[0], 1 << 16):
        c = grids[start : start + (1 << 16)]
        inside = (c @ feats.T) >= 0
        found.update((inside.astype(np.int64) @ weights).tolist())
    return SetFamily(cube(dim), tuple(found))


def halfspace_family(dim: int, coeff_bound: int) -> SetFamily:
    """Affine halfspaces ``w·x + b >= 0`` with integer ``w, b`` in ``[-B, B]``."""
    pts = np.array(cube(dim), dtype=np.int64)
    feats = np.column_stack([np.ones(len(pts), dtype=np.int64), pts])
    return _threshold_family(dim, feats, coeff_bound)


def ptf_family(dim: int, degree: int, coeff_bound: int) -> SetFamily:
    """Multilinear polynomial thresholds of the given degree, integer coefficients in ``[-B, B]``."""
    pts = np.array(cube(dim), dtype=np.int64)
    cols = [np.prod(pts[:, list(s)], axis=1) if s else np.ones(len(pts), dtype=np.int64) for s in _monomials(dim, degree)]
    return _threshold_family(dim, np.column_stack(cols), coeff_bound)


def f2_solution_family(dim: int, affine: bool = False) -> SetFamily:
    """Solution sets in ``F_2^dim`` of linear systems.

    Homogeneous systems (the default) give the linear subspaces. With
    ``affine=True`` consistent inhomogeneous systems are added, which
    gives all affine subspaces.
    """
    pts = cube(dim)
    index = {p: i for i, p in enumerate(pts)}
    budget.check(1 << (dim * (dim + 1)), "linear systems")
    found: set[int] = set()
    rows = list(itertools.product((0, 1), repeat=dim))
    # every subspace is the kernel of some set of rows; every coset adds a right-hand side
    for r in range(dim + 1):
        for system in itertools.combinations(rows, r):
            rhs_choices = itertools.product((0, 1), repeat=r) if affine else [(0,) * r]
            for rhs in rhs_choices:
                sol = 0
                for p in pts:
                    if all(sum(a * x for a, x in zip(row, p)) % 2 == b for row, b in zip(system, rhs)):
                        sol |= 1 << index[p]
                if sol:
                    found.add(sol)
    return SetFamily(pts, tuple(found))


def reference_line_families(
    kind: str, dim: int, coeff_bound: int = 1, degree: int = 1, affine: bool = False
) -> SetFamily:
    """``halfspace``, ``f2_affine`` or ``ptf`` traces on ``{0,1}^dim``.

    ``f2_affine`` means homogeneous systems unless ``affine`` is set; see
    :func:`f2_solution_family`.
    """
    if dim > 4 or coeff_bound > 4 or degree > 2:
        raise ContractError("need dim <= 4, coeff_bound <= 4, degree <= 2")
    if kind == "halfspace":
        return halfspace_family(dim, coeff_bound)
    if kind == "f2_affine":
        return f2_solution_family(dim, affine)
    if kind == "ptf":
        return ptf_family(dim, degree, coeff_bound)
    raise ContractError(f"unknown family kind {kind!r}")


def vc_report_csv(rows: Iterable[tuple[str, int, SetFamily]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "dim", "family_size", "vc", "sauer_ok"])
    for kind, dim, fam in rows:
        size, _, ok = sauer_shelah_check(fam)
        w.writerow([kind, dim, size, vc_dimension(fam), int(ok)])
    return buf.getvalue()

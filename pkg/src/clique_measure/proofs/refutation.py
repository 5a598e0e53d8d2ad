"""Tree-like semantic refutations and tree resolution.

A refutation is a tree whose leaves carry axiom clauses and whose inner
nodes carry lines implied (as indicator sets) by the union of their
children's lines; the root is the constant-1 line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from ..errors import ContractError, VerificationError
from ..formulas.cnf import Clause, CnfFormula
from .lines import MAX_LINE_VARS, SemanticLine, line_from_clause, lowest_assignment


@dataclass(frozen=True)
class ProofNode:
    line: SemanticLine
    children: tuple[int, ...] = ()
    axiom: int | None = None  # clause index for leaves


@dataclass(frozen=True)
class TreeRefutation:
    num_vars: int
    nodes: tuple[ProofNode, ...]
    root: int

    @property
    def size(self) -> int:
        return len(self.nodes)

    def to_json(self) -> dict:
        out = []
        for i, nd in enumerate(self.nodes):
            row = {"id": i, "kind": "axiom" if nd.axiom is not None else "inference", "line": nd.line.to_hex()}
            if nd.axiom is not None:
                row["clause"] = nd.axiom
            else:
                row["children"] = list(nd.children)
            out.append(row)
        return {"num_vars": self.num_vars, "root": self.root, "nodes": out}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, obj: dict) -> "TreeRefutation":
        try:
            m = int(obj["num_vars"])
            rows = sorted(obj["nodes"], key=lambda r: r["id"])
            if [r["id"] for r in rows] != list(range(len(rows))):
                raise ContractError("node ids must be 0..N-1")
            nodes = []
            for r in rows:
                line = SemanticLine.from_hex(m, r["line"])
                if r["kind"] == "axiom":
                    nodes.append(ProofNode(line, (), int(r["clause"])))
                elif r["kind"] == "inference":
                    nodes.append(ProofNode(line, tuple(int(c) for c in r["children"])))
                else:
                    raise ContractError(f"node {r['id']}: unknown kind {r['kind']!r}")
            return cls(m, tuple(nodes), int(obj["root"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ContractError(f"malformed refutation: {exc}") from None


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    node: int | None = None
    assignment: int | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _structure(pi: TreeRefutation) -> VerifyResult | None:
    n = len(pi.nodes)
    if not (0 <= pi.root < n):
        return VerifyResult(False, pi.root, None, "root id out of range")
    seen = [False] * n
    stack = [pi.root]
    seen[pi.root] = True
    while stack:
        i = stack.pop()
        nd = pi.nodes[i]
        if nd.axiom is None and not (1 <= len(nd.children) <= 2):
            return VerifyResult(False, i, None, "inner node needs one or two children")
        if nd.axiom is not None and nd.children:
            return VerifyResult(False, i, None, "axiom leaf has children")
        for c in nd.children:
            if not (0 <= c < n) or seen[c]:
                return VerifyResult(False, i, None, f"child {c} missing or used twice")
            seen[c] = True
            stack.append(c)
    if not all(seen):
        return VerifyResult(False, seen.index(False), None, "node unreachable from root")
    return None


def verify_tree_refutation(pi: TreeRefutation, a: CnfFormula) -> VerifyResult:
    """Check axioms, every semantic inference and the root; report the first failure."""
    if pi.num_vars != a.num_vars:
        return VerifyResult(False, None, None, "variable count differs from the formula")
    if pi.num_vars > MAX_LINE_VARS:
        raise ContractError(f"verification supports at most {MAX_LINE_VARS} variables")
    bad = _structure(pi)
    if bad is not None:
        return bad
    for i, nd in enumerate(pi.nodes):
        if nd.line.num_vars != pi.num_vars:
            return VerifyResult(False, i, None, "line over the wrong variable count")
        if nd.axiom is not None:
            if not (0 <= nd.axiom < a.num_clauses):
                return VerifyResult(False, i, None, f"clause index {nd.axiom} out of range")
            want = line_from_clause(a.clauses[nd.axiom], a.num_vars)
            if nd.line != want:
                diff = nd.line.bits ^ want.bits
                return VerifyResult(False, i, lowest_assignment(diff), "leaf line differs from its axiom")
        else:
            union = 0
            for c in nd.children:
                union |= pi.nodes[c].line.bits
            extra = nd.line.bits & ~union
            if extra:
                return VerifyResult(False, i, lowest_assignment(extra), "line not implied by its premises")
    root = pi.nodes[pi.root].line
    if not root.is_one:
        missing = SemanticLine.one(root.num_vars).bits & ~root.bits
        return VerifyResult(False, pi.root, lowest_assignment(missing), "root is not the constant-1 line")
    return VerifyResult(True)


# ---------------------------------------------------------------- tree resolution


@dataclass(frozen=True)
class ResolutionNode:
    clause: Clause
    children: tuple[int, ...] = ()
    axiom: int | None = None
    pivot: int | None = None


@dataclass(frozen=True)
class ResolutionProof:
    nodes: tuple[ResolutionNode, ...]
    root: int

    @property
    def size(self) -> int:
        return len(self.nodes)


def _resolve(c0: Sequence[int], c1: Sequence[int], pivot: int) -> Clause | None:
    """Resolvent on ``pivot`` if ``c0`` holds ``pivot`` and ``c1`` holds ``-pivot``."""
    if pivot not in c0 or -pivot not in c1:
        return None
    lits = set(c0) - {pivot} | set(c1) - {-pivot}
    if any(-l in lits for l in lits):
        return None
    return tuple(sorted(lits, key=abs))


def tree_resolution_refutation(f: CnfFormula) -> ResolutionProof:
    """Tree resolution refutation read off a DPLL search tree.

    Raises :class:`ContractError` when the formula is satisfiable.
    """
    nodes: list[ResolutionNode] = []
    m = f.num_vars

    def falsified(assign: dict[int, bool]) -> int | None:
        for idx, cl in enumerate(f.clauses):
            if all(abs(l) in assign and assign[abs(l)] != (l > 0) for l in cl):
                return idx
        return None

    def choose(assign: dict[int, bool]) -> int:
        best = None
        for cl in f.clauses:
            if any(abs(l) in assign and assign[abs(l)] == (l > 0) for l in cl):
                continue
            free = [abs(l) for l in cl if abs(l) not in assign]
            if free and (best is None or len(free) < len(best)):
                best = free
                if len(free) == 1:
                    break
        if best is None:
            return next(v for v in range(1, m + 1) if v not in assign)
        return best[0]

    def build(assign: dict[int, bool]) -> int:
        idx = falsified(assign)
        if idx is not None:
            nodes.append(ResolutionNode(f.clauses[idx], (), idx))
            return len(nodes) - 1
        if len(assign) == m:
            raise ContractError("formula is satisfiable")
        v = choose(assign)
        assign[v] = False
        n0 = build(assign)
        c0 = nodes[n0].clause
        if v not in c0:
            del assign[v]
            return n0
        assign[v] = True
        n1 = build(assign)
        del assign[v]
        c1 = nodes[n1].clause
        if -v not in c1:
            return n1
        res = _resolve(c0, c1, v)
        assert res is not None
        nodes.append(ResolutionNode(res, (n0, n1), None, v))
        return len(nodes) - 1

    root = build({})
    if nodes[root].clause:
        raise AssertionError("search ended without the empty clause")
    # keep only the nodes used below the root and renumber in preorder
    order: list[int] = []
    stack = [root]
    while stack:
        i = stack.pop()
        order.append(i)
        stack.extend(reversed(nodes[i].children))
    new = {old: k for k, old in enumerate(order)}
    out = tuple(
        ResolutionNode(nodes[o].clause, tuple(new[c] for c in nodes[o].children), nodes[o].axiom, nodes[o].pivot)
        for o in order
    )
    return ResolutionProof(out, 0)


def resolution_to_semantic(res: ResolutionProof, a: CnfFormula) -> TreeRefutation:
    """Convert node by node, rejecting any step that is not a correct resolvent."""
    m = a.num_vars
    out = []
    for i, nd in enumerate(res.nodes):
        if nd.axiom is not None:
            if not (0 <= nd.axiom < a.num_clauses) or a.clauses[nd.axiom] != tuple(sorted(nd.clause, key=abs)):
                raise VerificationError(f"node {i}: leaf is not axiom {nd.axiom}", node=i)
        else:
            if len(nd.children) != 2 or nd.pivot is None:
                raise VerificationError(f"node {i}: inference needs two premises and a pivot", node=i)
            c0, c1 = (res.nodes[c].clause for c in nd.children)
            want = _resolve(c0, c1, nd.pivot)
            if want is None:
                want = _resolve(c1, c0, nd.pivot)
            if want is None or set(want) != set(nd.clause):
                raise VerificationError(f"node {i}: invalid resolvent", node=i)
        out.append(ProofNode(line_from_clause(nd.clause, m), nd.children, nd.axiom))
    if res.nodes[res.root].clause:
        raise VerificationError("root clause is not empty", node=res.root)
    return TreeRefutation(m, tuple(out), res.root)

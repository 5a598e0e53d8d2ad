"""Decision trees for the falsified clause search problem, and leaf certificates.

:func:`balance_extract` turns a tree-like refutation into a decision tree
that queries proof lines. At each step it picks a node ``f`` whose
subtree holds between a third and two thirds of the current tree and
queries it. If ``f`` rules out the assignment, some axiom below ``f`` is
falsified and the search continues inside ``π_f``; otherwise ``π_f`` is
cut off and the search continues in the rest of the tree, where the cut
node can never be reached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import ContractError, VerificationError
from ..formulas.clique import WitnessMap
from ..formulas.cnf import CnfFormula
from ..graphs import KPartiteGraph, Pair, Tuple, all_tuples, tuple_pairs
from ..measure import MeasureContext, mu_set, mu_total
from .lines import MAX_LINE_VARS, SemanticLine, line_from_clause, lowest_assignment
from .refutation import TreeRefutation, VerifyResult, verify_tree_refutation


@dataclass(frozen=True)
class DTNode:
    line: SemanticLine | None = None  # query for inner nodes
    children: tuple[int, int] | None = None  # (answer 0, answer 1)
    clause_index: int | None = None  # for leaves

    @property
    def is_leaf(self) -> bool:
        return self.children is None


@dataclass(frozen=True)
class FDecisionTree:
    num_vars: int
    nodes: tuple[DTNode, ...]
    root: int

    def leaves(self) -> list[int]:
        """Leaf ids in depth-first order, answer 0 before answer 1."""
        out = []
        stack = [self.root]
        while stack:
            i = stack.pop()
            nd = self.nodes[i]
            if nd.is_leaf:
                out.append(i)
            else:
                stack.append(nd.children[1])
                stack.append(nd.children[0])
        return out

    @property
    def num_leaves(self) -> int:
        return len(self.leaves())

    def depth(self) -> int:
        best = 0
        stack = [(self.root, 0)]
        while stack:
            i, d = stack.pop()
            nd = self.nodes[i]
            if nd.is_leaf:
                best = max(best, d)
            else:
                stack += [(nd.children[0], d + 1), (nd.children[1], d + 1)]
        return best

    def walk(self, assignment: int) -> int:
        i = self.root
        while not self.nodes[i].is_leaf:
            nd = self.nodes[i]
            i = nd.children[1] if nd.line.rules_out(assignment) else nd.children[0]
        return i

    def to_json(self) -> dict:
        rows = []
        for i, nd in enumerate(self.nodes):
            if nd.is_leaf:
                rows.append({"id": i, "kind": "leaf", "clause": nd.clause_index})
            else:
                rows.append({"id": i, "kind": "query", "line": nd.line.to_hex(), "children": list(nd.children)})
        return {"num_vars": self.num_vars, "root": self.root, "nodes": rows}


def depth_bound(size: int) -> int:
    """``⌈log_{3/2} |π|⌉ + 2``."""
    return math.ceil(math.log(size) / math.log(1.5) - 1e-12) + 2 if size > 1 else 2


def balance_extract(pi: TreeRefutation, a: CnfFormula) -> FDecisionTree:
    res = verify_tree_refutation(pi, a)
    if not res:
        raise VerificationError(f"refutation rejected: {res.message}", res.node, res.assignment)
    nodes = pi.nodes
    # preorder position and depth for the deepest-then-leftmost tie-break
    pre: dict[int, int] = {}
    depth: dict[int, int] = {}
    stack = [(pi.root, 0)]
    while stack:
        i, d = stack.pop()
        pre[i] = len(pre)
        depth[i] = d
        for c in reversed(nodes[i].children):
            stack.append((c, d + 1))
    fallback = next(nd.axiom for nd in nodes if nd.axiom is not None)
    out: list[DTNode] = []

    def emit(nd: DTNode) -> int:
        out.append(nd)
        return len(out) - 1

    def members(root: int, cuts: frozenset[int]) -> tuple[list[int], dict[int, int]]:
        order = []
        stack = [root]
        while stack:
            i = stack.pop()
            order.append(i)
            if i not in cuts:
                stack.extend(nodes[i].children)
        size: dict[int, int] = {}
        for i in reversed(order):
            size[i] = 1 + (0 if i in cuts else sum(size[c] for c in nodes[i].children))
        return order, size

    def chain(leaves: list[int]) -> int:
        # query the leaves one by one; the last needs no query
        if not leaves:
            return emit(DTNode(clause_index=fallback))  # unreachable branch
        last = emit(DTNode(clause_index=nodes[leaves[-1]].axiom))
        for i in reversed(leaves[:-1]):
            hit = emit(DTNode(clause_index=nodes[i].axiom))
            last = emit(DTNode(nodes[i].line, (last, hit)))
        return last

    def build(root: int, cuts: frozenset[int]) -> int:
        order, size = members(root, cuts)
        total = size[root]
        if total <= 3:
            live = sorted((i for i in order if i not in cuts and nodes[i].axiom is not None), key=pre.get)
            return chain(live)
        cands = [i for i in order if i != root and i not in cuts]
        window = [i for i in cands if total / 3 < size[i] <= 2 * total / 3]
        if window:
            v = min(window, key=lambda i: (-depth[i], pre[i]))
        else:
            v = min(cands, key=lambda i: (max(size[i], total - size[i] + 1), -depth[i], pre[i]))
        inside = build(v, cuts)
        outside = build(root, cuts | {v})
        return emit(DTNode(nodes[v].line, (outside, inside)))

    root = build(pi.root, frozenset())
    return FDecisionTree(pi.num_vars, tuple(out), root)


def verify_search_tree(t: FDecisionTree, a: CnfFormula) -> VerifyResult:
    """Every assignment must reach a leaf whose clause it falsifies.

    Sets of assignments are pushed down the tree as bitsets, so the check
    is exhaustive over ``{0,1}^m``.
    """
    if t.num_vars != a.num_vars:
        return VerifyResult(False, None, None, "variable count differs from the formula")
    if t.num_vars > MAX_LINE_VARS:
        raise ContractError(f"verification supports at most {MAX_LINE_VARS} variables")
    full = SemanticLine.one(t.num_vars).bits
    worst: tuple[int, int] | None = None  # (assignment, node)
    stack = [(t.root, full)]
    while stack:
        i, reach = stack.pop()
        if not reach:
            continue
        nd = t.nodes[i]
        if nd.is_leaf:
            if nd.clause_index is None or not (0 <= nd.clause_index < a.num_clauses):
                bad = reach
            else:
                bad = reach & ~line_from_clause(a.clauses[nd.clause_index], a.num_vars).bits
            if bad:
                alpha = lowest_assignment(bad)
                if worst is None or alpha < worst[0]:
                    worst = (alpha, i)
        else:
            q = nd.line.bits
            stack.append((nd.children[0], reach & ~q))
            stack.append((nd.children[1], reach & q))
    if worst is not None:
        return VerifyResult(False, worst[1], worst[0], "leaf clause satisfied by an assignment reaching it")
    return VerifyResult(True)


def _check_wm(line: SemanticLine, wm: WitnessMap) -> None:
    if line.num_vars != wm.num_vars:
        raise ContractError(f"line has {line.num_vars} variables, witness map {wm.num_vars}")


def q_map(line: SemanticLine, wm: WitnessMap) -> frozenset[Tuple]:
    """Tuples whose witnessing assignment the line rules out."""
    _check_wm(line, wm)
    return frozenset(t for t in all_tuples(wm.n, wm.k) if line.rules_out(wm.assignment(t)))


def leaf_tuple_sets(t: FDecisionTree, wm: WitnessMap) -> list[frozenset[Tuple]]:
    """``Q_ℓ`` for every leaf in :meth:`FDecisionTree.leaves` order; checked to partition 𝒯."""
    if t.num_vars != wm.num_vars:
        raise ContractError("tree and witness map disagree on the variable count")
    leaves = t.leaves()
    pos = {leaf: i for i, leaf in enumerate(leaves)}
    buckets: list[set[Tuple]] = [set() for _ in leaves]
    for tup in all_tuples(wm.n, wm.k):
        buckets[pos[t.walk(wm.assignment(tup))]].add(tup)
    if sum(len(b) for b in buckets) != wm.n**wm.k:
        raise VerificationError("leaf sets do not partition the tuple space")
    return [frozenset(b) for b in buckets]


def detect_missing_edge(q: Iterable[Sequence[int]], g: KPartiteGraph) -> Pair | None:
    """First pair (canonical order) common to all tuples of ``q`` that is not an edge of ``g``."""
    q = list(q)
    if not q:
        raise ContractError("q must be nonempty")
    common = set(tuple_pairs(q[0]))
    for t in q[1:]:
        common &= set(tuple_pairs(t))
        if not common:
            return None
    missing = sorted(p for p in common if p not in g.edges)
    return missing[0] if missing else None


@dataclass(frozen=True)
class LeafEntry:
    node: int
    clause_index: int | None
    tuples: frozenset[Tuple]
    mu: Fraction
    missing_edge: Pair | None


@dataclass(frozen=True)
class LeafCertificate:
    leaves: tuple[LeafEntry, ...]
    mu_total: Fraction
    bound: int | None
    num_leaves: int
    depth: int
    config: dict = field(default_factory=dict)

    def to_json(self, include_tuples: bool = True) -> dict:
        def q(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        rows = []
        for e in self.leaves:
            row = {
                "node": e.node,
                "clause": e.clause_index,
                "size": len(e.tuples),
                "mu": q(e.mu),
                "missing_edge": [list(e.missing_edge[0]), list(e.missing_edge[1])] if e.missing_edge else None,
            }
            if include_tuples:
                row["tuples"] = [list(t) for t in sorted(e.tuples)]
            rows.append(row)
        return {
            "config": self.config,
            "mu_total": q(self.mu_total),
            "bound": self.bound,
            "num_leaves": self.num_leaves,
            "depth": self.depth,
            "leaves": rows,
        }


def certify_leaf_lower_bound(t: FDecisionTree, ctx: MeasureContext, wm: WitnessMap) -> LeafCertificate:
    """Leaf-count lower bound ``⌈μ(𝒯) / max_ℓ μ(Q_ℓ)⌉`` with the sum identity checked exactly.

    The bound is emitted when ``μ(𝒯) > 0`` and the largest leaf measure is
    positive; leaves with non-positive measure only enter the table.
    """
    if (wm.n, wm.k) != (ctx.graph.n, ctx.graph.k):
        raise ContractError("witness map and graph disagree on (n, k)")
    sets = leaf_tuple_sets(t, wm)
    leaves = t.leaves()
    entries = []
    for node, q in zip(leaves, sets):
        mu = mu_set(ctx, q)
        edge = detect_missing_edge(q, ctx.graph) if q else None
        entries.append(LeafEntry(node, t.nodes[node].clause_index, q, mu, edge))
    total = mu_total(ctx)
    if sum((e.mu for e in entries), Fraction(0)) != total:
        raise VerificationError("leaf measures do not sum to the measure of the tuple space")
    top = max(e.mu for e in entries)
    bound = math.ceil(total / top) if top > 0 and total > 0 else None
    if bound is not None and bound > len(leaves):
        raise VerificationError("certified bound exceeds the leaf count")
    return LeafCertificate(tuple(entries), total, bound, len(leaves), t.depth())


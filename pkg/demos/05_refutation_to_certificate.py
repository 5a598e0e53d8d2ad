"""
From a refutation to a leaf-count certificate
=============================================

A tree resolution refutation becomes a tree of semantic lines. Balancing
it gives a shallow decision tree for finding a falsified clause. Mapping
each leaf to the tuples whose witnesses reach it splits the measure of
all tuples, and the largest piece bounds the number of leaves from below.
"""

from fractions import Fraction

from clique_measure.formulas import brute_force_sat, gen_bclique
from clique_measure.graphs import SampleParams, sample_kpartite
from clique_measure.measure import MeasureContext
from clique_measure.proofs import (
    balance_extract,
    certify_leaf_lower_bound,
    depth_bound,
    resolution_to_semantic,
    tree_resolution_refutation,
    verify_search_tree,
    verify_tree_refutation,
)

p = Fraction(1, 3)
seed = 0
while True:
    g = sample_kpartite(SampleParams(2, 3, p, seed))
    f, wm = gen_bclique(g)
    if not brute_force_sat(f).sat:
        break
    seed += 1
print("triangle-free sample at seed", seed, "with", g.num_edges, "edges")

pi = resolution_to_semantic(tree_resolution_refutation(f), f)
print("refutation size", pi.size, "valid:", bool(verify_tree_refutation(pi, f)))

dt = balance_extract(pi, f)
print("decision tree depth", dt.depth(), "bound", depth_bound(pi.size),
      "search ok:", bool(verify_search_tree(dt, f)))

cert = certify_leaf_lower_bound(dt, MeasureContext(g, p, 1), wm)
print("mu(T) =", cert.mu_total, "leaves =", cert.num_leaves, "certified bound =", cert.bound)
for leaf in cert.leaves:
    print("  leaf", leaf.node, "clause", f.clauses[leaf.clause_index], "mu", leaf.mu, "missing", leaf.missing_edge)

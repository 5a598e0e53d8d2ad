"""
CNF encodings of the clique question
====================================

The block encodings give every tuple a witnessing assignment; the formula
holds there exactly when the tuple is a clique.
"""

from fractions import Fraction

from clique_measure.formulas import (
    Gadget,
    brute_force_sat,
    check_witness_property,
    complete_bipartite,
    gen_bclique,
    gen_php,
    gen_tseitin,
    lift_formula,
    to_dimacs,
)
from clique_measure.graphs import SampleParams, SimpleGraph, count_k_cliques, sample_kpartite

g = sample_kpartite(SampleParams(4, 3, Fraction(1, 2), seed=7))
print("graph has", count_k_cliques(g), "triangles")

for enc, c in [("unary", None), ("binary", None), ("cary", 2)]:
    f, wm = gen_bclique(g, enc, c)
    print(f"{enc:7s} vars={f.num_vars:3d} clauses={f.num_clauses:4d} "
          f"sat={brute_force_sat(f).sat} witness ok={check_witness_property(f, wm, g)}")

f, _ = gen_bclique(g, "unary", width3=True)
print("unary with ladders: max width", f.max_width)
print(to_dimacs(gen_bclique(g, "binary")[0]).splitlines()[:6])

php = gen_php(complete_bipartite(4, 3), 4, 3)
print("PHP 4->3 sat:", brute_force_sat(php).sat)
print("Tseitin on K4, odd charge, sat:", brute_force_sat(gen_tseitin(SimpleGraph.named("K4"), "1000")).sat)
print("XOR-lifted PHP 2->1 clauses:", lift_formula(gen_php(complete_bipartite(2, 1), 2, 1), Gadget.xor(2)).clauses)

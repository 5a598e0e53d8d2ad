"""
The pseudo-measure on tuples
============================

For each tuple t the measure sums biased characters over the edge sets
inside t whose vertex cover is at most d. Two independent evaluation
paths are compared here, followed by the identity at full budget.
"""

import math
from fractions import Fraction

from clique_measure.graphs import SampleParams, all_tuples, count_k_cliques, cross_pairs, sample_kpartite
from clique_measure.measure import (
    MeasureContext,
    exhaustive_expectation_check,
    mu_ruled_out_boundary,
    mu_set,
    mu_total,
    mu_tuple_core_factored,
    mu_tuple_naive,
    tuples_through,
)

p = Fraction(1, 3)
g = sample_kpartite(SampleParams(3, 3, p, seed=5))
ctx = MeasureContext(g, p, d=1)

t = (0, 1, 2)
print("mu(t) naive :", mu_tuple_naive(ctx, t))
print("mu(t) cores :", mu_tuple_core_factored(ctx, t))
print("mu(T)       :", mu_total(ctx))

# with d = k-1 every edge set counts and only cliques survive
full = MeasureContext(g, p, d=2)
print("full budget :", mu_total(full), "=", Fraction(count_k_cliques(g), 27) / p ** math.comb(3, 2))

# averaged over every graph, mu(q) is exactly |q| / n^k
print(exhaustive_expectation_check(2, 3, p, 1, [(0, 0, 1), (1, 1, 0)]))

# tuples through a missing pair: only boundary patterns contribute
e = next(e for e in cross_pairs(3, 3) if e not in g.edges)
q = tuples_through(g, e)
print("boundary form", mu_ruled_out_boundary(ctx, q, e), "direct", mu_set(ctx, q))

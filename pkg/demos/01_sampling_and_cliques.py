"""
Sampling k-partite graphs and counting cliques
==============================================

A tuple picks one vertex from each block. It is a clique when every pair
it spans is an edge.
"""

from fractions import Fraction

import numpy as np

from clique_measure.graphs import (
    SampleParams,
    count_k_cliques,
    neighborhood_report,
    rational_edge_probability,
    sample_kpartite,
)

# edge probability n^(-2/D) as an exact rational close to the real value
n, k, D = 8, 3, 2
p = rational_edge_probability(n, D)
print("p =", p)

# the sampler is counter based, so a seed always gives the same graph
g = sample_kpartite(SampleParams(n, k, p, seed=1))
print("edges:", g.num_edges, "of", 3 * n * n, "cross pairs")
print("k-cliques:", count_k_cliques(g))

# expected clique count is n^k p^C(k,2); compare with a few hundred samples
counts = np.array([count_k_cliques(sample_kpartite(SampleParams(n, k, p, s))) for s in range(300)])
print("mean clique count %.3f, expected %.3f" % (counts.mean(), n**k * float(p) ** 3))

# common neighbourhoods of partial tuples against a (1 +- 1/k) p^a n window;
# at n = 8 the window around p n = 1 is narrow, so most checks fail here
rep = neighborhood_report(g, Fraction(8), p)
print("neighbourhood checks:", rep.checked, "violations:", len(rep.violations))

"""
Cores of small pattern graphs
=============================

Pattern graphs live on the block indices 0..k-1. Every graph with vertex
cover at most d has a canonical core F, and the graphs sharing a core
are exactly F plus any subset of a fixed edge set E*_F.
"""

from clique_measure.patterns import (
    PatternGraph,
    core_count_bound_check,
    core_map,
    core_table,
    fiber_of_core,
    min_vertex_covers,
)

star = PatternGraph.from_edges(4, [(0, 1), (0, 2)])
print("min vertex covers of the star:", min_vertex_covers(star))

rec = core_map(star)
print("core edges:", rec.core.edges, " free edges E*:", rec.star_edges.edges)
for h in fiber_of_core(rec):
    print("  fiber member", h.edges)

# the table for (k, d) is built once and checked property by property;
# any failure raises instead of returning a table
for k in range(2, 7):
    t = core_table(k, 2)
    print(f"k={k}: {len(t.members)} graphs with vc<=2, {len(t.records)} cores")

print(core_table(4, 1).to_csv())

# the number of graphs with small cover and support stays below 2^(ab) k^b
print("count, bound, ok =", core_count_bound_check(5, 2, 6))

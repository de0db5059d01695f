"""
Bipartite and antipodal classes
===============================

Two families need their own engines.  Bipartite classes only allow even
triangles, so completions keep a consistent parity.  Antipodal classes
pair every vertex with one at distance delta; the engine completes one
half (the pode) and mirrors it.
"""

import itertools

import numpy as np

from mhcomplete import (INF, EdgeLabelledGraph, ParameterSet, PodedGraph, antipodal_complete,
                        antipodal_complete_podefree, bipartite_complete, membership_check)

bip = ParameterSet(4, INF, 0, 12, 9)

# two disjoint edges get joined into one even structure
g = EdgeLabelledGraph(4, {(0, 1): 1, (2, 3): 1})
res = bipartite_complete(g, bip)
print(np.array(res.graph.matrix()), res.notes)
print("odd triangles:", [t for t in itertools.combinations(range(4), 3)
                         if sum(res.graph.d(*e) for e in itertools.combinations(t, 2)) % 2])

# antipodal, odd diameter: two pairs at distance delta
anti = ParameterSet(3, 1, 2, 8, 7)
pairs = EdgeLabelledGraph(4, {(0, 2): 3, (1, 3): 3})
for pode in ([0, 1], [0, 3]):
    out = antipodal_complete(PodedGraph(pairs, pode, 3), anti)
    print("pode", pode, out.graph.matrix(), membership_check(out.graph, anti))

# without a pode the engine picks a canonical one and flags the dependence
res = antipodal_complete_podefree(pairs, anti)
print("canonical pode", sorted(res.pode), "pode dependent:", res.pode_dependent)

# with even diameter the choice does not matter
anti4 = ParameterSet(4, 1, 3, 10, 9)
pairs4 = EdgeLabelledGraph(4, {(0, 2): 4, (1, 3): 4})
print("pode dependent:", antipodal_complete_podefree(pairs4, anti4).pode_dependent)

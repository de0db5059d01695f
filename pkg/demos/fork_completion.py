"""
Completing partial graphs with a magic distance
===============================================

Forks are paths of length two with a missing third side.  The engine
closes them in rounds, then fills whatever is left with the magic
distance.  Here we print the fork table, replay a completion step by
step, and watch a failing input produce its certificate.
"""

import itertools

import numpy as np

from mhcomplete import EdgeLabelledGraph, ParameterSet, enumerate_completions, fork_value
from mhcomplete import magic_complete

p = ParameterSet(5, 3, 3, 16, 13)
M = 3

# engine choice for each isolated fork, next to every value a completion could use
for a, b in itertools.combinations_with_replacement(range(1, 6), 2):
    fork = EdgeLabelledGraph(3, {(0, 1): a, (1, 2): b})
    options = [c[0] for c in enumerate_completions(fork, p).values()]
    print(f"fork {a}{b}: engine {fork_value(a, b, p, M)}, possible {options}")

# a four-cycle 1555 is completed by two forks closed at the same time
res = magic_complete(EdgeLabelledGraph.cycle([1, 5, 5, 5]), p, M)
print(res.status.value)
for step in res.trace:
    print(f"  t={step.time} {step.u}-{step.v} := {step.dist} via {step.witness}")
print(np.array(res.graph.matrix()))

# adding one more short edge makes completion impossible
res = magic_complete(EdgeLabelledGraph.cycle([1, 1, 5, 5, 5]), p, M)
cert = res.certificate
print(res.status.value, cert.reason.value, cert.vertices, cert.distances)

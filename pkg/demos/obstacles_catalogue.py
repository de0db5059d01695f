"""
Obstacles to completion
=======================

A labelled cycle is an obstacle when it has no completion while every
proper sub-path does.  For a fixed class the catalogue of obstacles is
finite; here we build it by length and compare two ways of deciding
completability.
"""

import time

from mhcomplete import Decider, LabelledCycle, ParameterSet, backward_expand, enumerate_obstacles
from mhcomplete import verify_obstacle_closure
from mhcomplete.obstacles import theoretical_bound

p = ParameterSet(5, 3, 3, 16, 13)

t = time.perf_counter()
cat = enumerate_obstacles(p, 6)
print(f"engine catalogue in {time.perf_counter() - t:.2f}s")
for k, cycles in cat.by_length.items():
    print(k, len(cycles), " ".join(str(c).replace(" ", "") for c in cycles))
print("longest possible obstacle:", theoretical_bound(p.delta))

# the oracle decider enumerates completions directly instead of running the engine
t = time.perf_counter()
slow = enumerate_obstacles(p, 5, Decider.ORACLE)
print(f"oracle catalogue in {time.perf_counter() - t:.2f}s, same: "
      f"{all(slow.by_length[k] == cat.by_length[k] for k in (3, 4, 5))}")

# four-cycles arise by opening one side of a forbidden triangle into a fork
for tri in ("124", "445"):
    print(tri, "->", sorted(str(c).replace(" ", "") for c in backward_expand(LabelledCycle.parse(tri), p)))

# random inputs avoid every catalogued cycle exactly when they complete
print(verify_obstacle_closure(p, cat, samples=300, seed=1).to_json()["violations"])

"""
Checking the engine against brute force
=======================================

Every small input is completed twice: once by the engine and once by
enumerating all completions.  The suites report how many instances were
checked and list any disagreement.
"""

import time

from mhcomplete import (INF, HensonConstraint, ParameterSet, antipodal_suite, exhaustive_suite,
                        henson_suite, sir_property_suite)

p = ParameterSet(5, 3, 3, 16, 13)

# all inputs up to three vertices, one per isomorphism class
t = time.perf_counter()
rep = exhaustive_suite(p, 3, ("equivalence", "optimality", "parity", "automorphism"))
print(f"primitive: {rep.checked} inputs, {len(rep.violations)} violations, "
      f"{time.perf_counter() - t:.1f}s")

# bipartite classes only make claims about connected inputs
rep = exhaustive_suite(ParameterSet(4, INF, 0, 12, 9), 4)
print(f"bipartite: {rep.checked} inputs, {len(rep.violations)} violations")

# antipodal inputs are symmetric, completed once per pode
rep = antipodal_suite(ParameterSet(4, 1, 3, 10, 9), 3)
print(f"antipodal: {rep.checked} completions, {len(rep.violations)} violations")

# Henson constraints are never created by the engine
q = ParameterSet(3, 1, 3, 10, 11, (HensonConstraint.clique(4),))
rep = henson_suite(q, 200, seed=1)
print(f"henson: {rep.checked} inputs, {len(rep.violations)} violations")

# the amalgam built from completion behaves like an independence relation
rep = sir_property_suite(ParameterSet(3, 1, 3, 10, 11), size_bound=3)
print(f"independence axioms: {rep.checked} checks, {len(rep.violations)} violations")

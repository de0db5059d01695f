"""
Admissible parameters and magic distances
=========================================

Lists the admissible parameter sets for a small diameter, then looks at
one of them more closely: which triangles it forbids and which distances
can serve as the magic completion parameter.
"""

from mhcomplete import (Kind, ParameterSet, admissibility_verdict, enumerate_admissible,
                        forbidden_triangles, magic_bounds, triangle_verdict)
from mhcomplete.params import magic_set

# every admissible set with diameter 3, rows with K1 = inf first
for p, v in enumerate_admissible(3):
    ms = sorted(magic_set(p)) if v.kind is Kind.PRIMITIVE else "--"
    print(f"{p.k1!s:>4} {p.k2!s:>3} {p.c0!s:>3} {p.c1!s:>3}  {v.case.value:<4} {v.kind.value:<24} M={ms}")

# a larger class with a single interesting magic distance
p = ParameterSet(5, 3, 3, 16, 13)
print()
print(p, admissibility_verdict(p).case.value, "magic range", magic_bounds(p))

# forbidden triangles, grouped by the first bound they break
by_reason = {}
for tri in forbidden_triangles(p):
    by_reason.setdefault(triangle_verdict(*tri, p).reason.value, []).append("".join(map(str, tri)))
for reason, tris in by_reason.items():
    print(f"  {reason:<12} {' '.join(tris)}")

# the count of admissible sets grows quickly with the diameter
for d in range(3, 9):
    print(d, len(enumerate_admissible(d)))

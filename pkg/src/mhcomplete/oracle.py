"""Brute-force ground truth for the completion engines.

Nothing here uses the fork rules.  Completions are found by exhaustive
backtracking over the missing pairs, automorphisms by exhaustive search over
vertex maps, and the property suites compare engine output against these.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .completion import (ANTIPODAL_KINDS, CompletionResult, antipodal_complete,
                         bipartite_complete, dispatch_complete, magic_complete,
                         pode_independent)
from .errors import EmptyBaseUnsupported, MalformedParameters, NotAdmissible, TooLarge
from .graph import (EdgeLabelledGraph, PodedGraph, _key,
                    find_henson_embedding, membership_check)
from .params import INF, Case, Kind, ParameterSet, admissibility_verdict, require_admissible

MAX_UNKNOWN = 12
MAX_AUT_VERTICES = 9
MAX_EXHAUSTIVE_VERTICES = 5


# -- reports -----------------------------------------------------------------

@dataclass
class Report:
    checked: int = 0
    violations: list[dict] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: "Report") -> "Report":
        self.checked += other.checked
        self.violations.extend(other.violations)
        self.skipped.extend(other.skipped)
        return self

    def to_json(self) -> dict:
        return {"checked": self.checked, "violations": list(self.violations),
                "skipped": list(self.skipped)}


# -- completions -------------------------------------------------------------

def _allowed_table(p: ParameterSet):
    """``ok[a][b][c]`` for all labels ``0..delta`` (0 never allowed)."""
    d = p.delta
    ok = [[[False] * (d + 1) for _ in range(d + 1)] for _ in range(d + 1)]
    for a, b, c in itertools.product(range(1, d + 1), repeat=3):
        x, y, z = sorted((a, b, c))
        per = x + y + z
        if x + y < z:
            good = False
        elif per % 2:
            good = not (per < 2 * p.k1 + 1 or y + z >= 2 * p.k2 + x or per >= p.c1)
        else:
            good = per < p.c0
        ok[a][b][c] = good
    return ok


def iter_completions(g: EdgeLabelledGraph, p: ParameterSet,
                     max_unknown: int | None = MAX_UNKNOWN) -> Iterator[EdgeLabelledGraph]:
    """Yield every completion of ``g`` in the class of ``p``.

    Missing pairs are filled in ``(u, v)`` order with distances ascending, so
    completions come out ordered by their vector of new distances.  A
    triangle is checked as soon as its last side is set.
    """
    if p.delta == INF:
        raise MalformedParameters("the oracle needs a finite diameter")
    holes = g.non_edges()
    if max_unknown is not None and len(holes) > max_unknown:
        raise TooLarge(f"{len(holes)} missing pairs exceed the bound {max_unknown}")
    d = p.delta
    n = g.n
    ok = _allowed_table(p)
    mat = g.matrix()
    for u, v, w in itertools.combinations(range(n), 3):
        a, b, c = mat[u][v], mat[u][w], mat[v][w]
        if a and b and c and not ok[a][b][c]:
            return
    for (u, v), x in g.edges.items():
        if x > d:
            return
    # for each hole, the third vertices whose other two sides are known by then
    order = {h: i for i, h in enumerate(holes)}
    checks = []
    for i, (u, v) in enumerate(holes):
        ws = []
        for w in range(n):
            if w == u or w == v:
                continue
            ku, kv = _key(u, w), _key(v, w)
            if order.get(ku, -1) <= i and order.get(kv, -1) <= i:
                ws.append(w)
        checks.append(ws)

    k = len(holes)

    def rec(i):
        if i == k:
            out = EdgeLabelledGraph.from_matrix(mat)
            if not p.henson or all(find_henson_embedding(out, h, d) is None
                                   for h in p.henson):
                yield out
            return
        u, v = holes[i]
        mu, mv = mat[u], mat[v]
        ws = checks[i]
        for x in range(1, d + 1):
            if all(ok[x][mu[w]][mv[w]] for w in ws):
                mu[v] = mv[u] = x
                yield from rec(i + 1)
        mu[v] = mv[u] = 0

    yield from rec(0)


@dataclass(frozen=True)
class CompletionEnumeration:
    input: EdgeLabelledGraph
    completions: tuple[EdgeLabelledGraph, ...]
    holes: tuple[tuple[int, int], ...]

    def __len__(self):
        return len(self.completions)

    def values(self) -> list[tuple[int, ...]]:
        """Distance vectors over the missing pairs, one per completion."""
        return [tuple(c.d(u, v) for u, v in self.holes) for c in self.completions]


def enumerate_completions(g: EdgeLabelledGraph, p: ParameterSet,
                          max_unknown: int | None = MAX_UNKNOWN) -> CompletionEnumeration:
    """All completions of ``g`` in the class of ``p``, in lexicographic order."""
    comps = tuple(iter_completions(g, p, max_unknown))
    return CompletionEnumeration(g, comps, tuple(g.non_edges()))


def has_completion(g: EdgeLabelledGraph, p: ParameterSet,
                   max_unknown: int | None = MAX_UNKNOWN) -> bool:
    return next(iter_completions(g, p, max_unknown), None) is not None


# -- automorphisms -----------------------------------------------------------

def automorphisms(g: EdgeLabelledGraph, max_vertices: int = MAX_AUT_VERTICES,
                  fixed_sets: Sequence[frozenset] = ()) -> list[tuple[int, ...]]:
    """All vertex permutations preserving the partial distance map.

    Non-edges must map to non-edges.  ``fixed_sets`` are vertex sets that
    must be mapped onto themselves (used for podes).
    """
    n = g.n
    if n > max_vertices:
        raise TooLarge(f"{n} vertices exceed the bound {max_vertices}")
    mat = g.matrix()
    colour = [tuple(u in s for s in fixed_sets) for u in range(n)]
    perm = [-1] * n
    used = [False] * n
    out = []

    def rec(i):
        if i == n:
            out.append(tuple(perm))
            return
        for img in range(n):
            if used[img] or colour[img] != colour[i]:
                continue
            if all(mat[i][j] == mat[img][perm[j]] for j in range(i)):
                perm[i] = img
                used[img] = True
                rec(i + 1)
                used[img] = False
        perm[i] = -1

    rec(0)
    return out


# -- optimality and parity ---------------------------------------------------

def _pairs(n: int):
    return list(itertools.combinations(range(n), 2))


def optimality_violations(bar: EdgeLabelledGraph, other: EdgeLabelledGraph,
                          p: ParameterSet, M: int, case: Case,
                          bipartite: bool = False) -> list[dict]:
    """Pairs where ``other`` breaks the optimality clauses against ``bar``."""
    out = []
    for u, v in _pairs(bar.n):
        db, dp = bar.d(u, v), other.d(u, v)
        if bipartite:
            good = (dp >= db >= M + 1) or (dp <= db <= M) or (M <= db <= M + 1)
        else:
            good = ((dp >= db >= M) or (dp <= db <= M)
                    or (case is Case.IIB and db == M - 1 and dp > M and (dp - db) % 2 == 0))
        if not good:
            out.append({"pair": [u, v], "engine": db, "other": dp, "clause": "optimality"})
    return out


def parity_exception(p: ParameterSet, M: int, case: Case, db: int) -> bool:
    d = p.delta
    return (case is Case.III and p.C == 2 * d + p.k1 + 1
            and p.C != 2 * p.k1 + 2 * p.k2 + 1 and M > p.k1 > 1 and db == p.k1)


def parity_violations(bar: EdgeLabelledGraph, other: EdgeLabelledGraph,
                      p: ParameterSet, M: int, case: Case,
                      bipartite: bool = False) -> list[dict]:
    """Pairs where parities must agree but do not."""
    out = []
    lo = min(p.k1, M - 1)
    hi = max(p.k2, M + 1)
    for u, v in _pairs(bar.n):
        db, dp = bar.d(u, v), other.d(u, v)
        if (db - dp) % 2 == 0:
            continue
        if bipartite:
            out.append({"pair": [u, v], "engine": db, "other": dp, "clause": "parity"})
        elif (db <= lo or db >= hi) and not parity_exception(p, M, case, db):
            out.append({"pair": [u, v], "engine": db, "other": dp, "clause": "parity"})
    return out


def _engine_for(p: ParameterSet, v) -> Callable:
    if v.kind is Kind.PRIMITIVE:
        return magic_complete
    if v.kind is Kind.BIPARTITE:
        return bipartite_complete
    raise NotAdmissible(f"no single-M engine for kind {v.kind.value}")


def _instance(g: EdgeLabelledGraph, p: ParameterSet, M: int) -> dict:
    return {"graph": g.to_json(), "params": p.to_json(), "M": M}


def verify_optimality(g: EdgeLabelledGraph, p: ParameterSet, M: int,
                      completions: Sequence[EdgeLabelledGraph] | None = None,
                      result: CompletionResult | None = None) -> Report:
    """Check the engine output against every oracle completion."""
    v = require_admissible(p)
    rep = Report()
    res = result or _engine_for(p, v)(g, p, M)
    if not res.ok:
        rep.skipped.append("engine found no completion")
        return rep
    comps = completions if completions is not None else enumerate_completions(g, p).completions
    bip = v.kind is Kind.BIPARTITE
    for c in comps:
        rep.checked += 1
        for viol in optimality_violations(res.graph, c, p, M, v.case, bip):
            rep.violations.append({**_instance(g, p, M), **viol})
    return rep


def verify_parity(g: EdgeLabelledGraph, p: ParameterSet, M: int,
                  completions: Sequence[EdgeLabelledGraph] | None = None,
                  result: CompletionResult | None = None) -> Report:
    """Check the parity statements against every oracle completion.

    Bipartite classes need parity agreement on every pair (connected
    inputs only); primitive classes only on the pairs the parity rule covers.
    """
    v = require_admissible(p)
    rep = Report()
    bip = v.kind is Kind.BIPARTITE
    if bip and not g.is_connected():
        rep.skipped.append("parity is only claimed for connected bipartite inputs")
        return rep
    res = result or _engine_for(p, v)(g, p, M)
    if not res.ok:
        rep.skipped.append("engine found no completion")
        return rep
    comps = completions if completions is not None else enumerate_completions(g, p).completions
    for c in comps:
        rep.checked += 1
        for viol in parity_violations(res.graph, c, p, M, v.case, bip):
            rep.violations.append({**_instance(g, p, M), **viol})
    return rep


def _preserves(perm: Sequence[int], h: EdgeLabelledGraph) -> bool:
    return all(h.d(perm[u], perm[v]) == x for (u, v), x in h.edges.items())


def verify_automorphism_preservation(g: EdgeLabelledGraph, p: ParameterSet,
                                     result: CompletionResult | None = None,
                                     pode: Iterable[int] | None = None) -> Report:
    """Every automorphism of the input must be one of the completed output.

    For poded antipodal inputs the automorphisms must also fix the pode.
    Disconnected bipartite inputs are skipped: the join of components is
    not canonical, so nothing is claimed there.
    """
    v = require_admissible(p)
    rep = Report()
    if v.kind is Kind.BIPARTITE and not g.is_connected():
        rep.skipped.append("disconnected bipartite input")
        return rep
    fixed: tuple[frozenset, ...] = ()
    if v.kind in ANTIPODAL_KINDS:
        if pode is None and not pode_independent(v.kind, p.delta):
            rep.skipped.append("pode-free completion in a pode-dependent kind")
            return rep
        if pode is not None:
            fixed = (frozenset(pode),)
            if result is None:
                result = antipodal_complete(PodedGraph(g, pode, p.delta), p)
    res = result or dispatch_complete(g, p)
    if not res.ok:
        rep.skipped.append("engine found no completion")
        return rep
    for perm in automorphisms(g, fixed_sets=fixed):
        rep.checked += 1
        if not _preserves(perm, res.graph):
            rep.violations.append({"graph": g.to_json(), "params": p.to_json(),
                                   "automorphism": list(perm), "clause": "automorphism"})
    return rep


# -- amalgamation ------------------------------------------------------------

@dataclass(frozen=True)
class AmalgamTriple:
    """``A`` and ``B`` over a common base ``C``.

    The base occupies vertices ``0..|C|-1`` in both ``A`` and ``B``.  In the
    amalgam, vertices of ``A`` keep their indices and the remaining vertices
    of ``B`` follow.
    """

    base: EdgeLabelledGraph
    left: EdgeLabelledGraph
    right: EdgeLabelledGraph

    def __post_init__(self):
        c = self.base.n
        for side in (self.left, self.right):
            if side.n < c or side.induced(range(c)) != self.base:
                raise MalformedParameters("base must be the initial segment of both sides")

    def right_map(self) -> list[int]:
        """Position of each vertex of ``B`` inside the amalgam."""
        c, a = self.base.n, self.left.n
        return list(range(c)) + list(range(a, a + self.right.n - c))

    def free_amalgam(self) -> EdgeLabelledGraph:
        c, a, b = self.base.n, self.left.n, self.right.n
        edges = dict(self.left.edges)
        rmap = self.right_map()
        for (u, v), x in self.right.edges.items():
            edges[_key(rmap[u], rmap[v])] = x
        return EdgeLabelledGraph(a + b - c, edges)


def _sir_support(p: ParameterSet):
    """Whether the kind has a global or only a local independence relation."""
    v = require_admissible(p)
    if p.delta == INF:
        return "local" if v.kind is Kind.BIPARTITE else "global"
    if v.kind is Kind.PRIMITIVE:
        return "global"
    if v.kind is Kind.BIPARTITE:
        return "local"
    if v.kind is Kind.ANTIPODAL_NONBIPARTITE:
        return "global" if p.delta % 2 == 0 else None
    return "local" if p.delta % 2 == 1 else None


def canonical_amalgam(t: AmalgamTriple, p: ParameterSet, M: int | None = None) -> EdgeLabelledGraph:
    """Complete the free amalgam of ``t`` with the engine of ``p``."""
    support = _sir_support(p)
    if support is None:
        raise EmptyBaseUnsupported(f"{p} has no canonical amalgamation")
    if support == "local" and t.base.n == 0:
        raise EmptyBaseUnsupported("only a local independence relation exists; base must be non-empty")
    res = dispatch_complete(t.free_amalgam(), p, M=M)
    if not res.ok:
        raise NotAdmissible(f"amalgam has no completion: {res.certificate}")
    return res.graph


def class_members(n: int, p: ParameterSet) -> list[EdgeLabelledGraph]:
    """Every complete member of the class on ``n`` labelled vertices."""
    return list(iter_completions(EdgeLabelledGraph(n), p, max_unknown=None))


def _prefix_index(members_by_n: dict[int, list]) -> dict:
    """Map ``(c, base)`` to the members whose first ``c`` vertices induce ``base``."""
    index: dict = {}
    for m, gs in members_by_n.items():
        for g in gs:
            for c in range(m + 1):
                index.setdefault((c, g.induced(range(c))), []).append(g)
    return index


def _canonical_code(g: EdgeLabelledGraph, fixed: int) -> tuple:
    """Isomorphism code that keeps the first ``fixed`` vertices in place."""
    n = g.n
    best = None
    for rest in itertools.permutations(range(fixed, n)):
        perm = list(range(fixed)) + list(rest)
        vec = tuple(g.d(perm[u], perm[v]) for u, v in itertools.combinations(range(n), 2))
        if best is None or vec < best:
            best = vec
    return best


def sir_property_suite(p: ParameterSet, M: int | None = None, size_bound: int = 4,
                       seed: int = 0, associativity_samples: int | None = None) -> Report:
    """Check the independence-relation axioms on small configurations.

    Triples ``(C, A, B)`` with ``|A ∪ B| <= size_bound`` are enumerated
    exhaustively (``A``, ``B`` up to isomorphism over ``C``).  Checked:
    symmetry, that the amalgam restricts to ``A`` and ``B``, monotonicity
    under removal of vertices of ``B``, associativity on quadruples, and
    stationarity (relabelling inside ``A`` or ``B`` relabels the amalgam).
    ``associativity_samples`` caps the quadruples with a seeded sample.
    """
    support = _sir_support(p)
    rep = Report()
    if support is None:
        rep.skipped.append("kind has no independence relation")
        return rep
    members = {m: class_members(m, p) for m in range(0, size_bound + 1)}
    min_base = 1 if support == "local" else 0
    if support == "local":
        try:
            canonical_amalgam(AmalgamTriple(EdgeLabelledGraph(0), EdgeLabelledGraph(1),
                                            EdgeLabelledGraph(1)), p, M)
            rep.violations.append({"clause": "empty-base request accepted"})
        except EmptyBaseUnsupported:
            rep.checked += 1

    cache: dict = {}

    def amal(c, a, b):
        key = (c, a, b)
        if key not in cache:
            cache[key] = canonical_amalgam(AmalgamTriple(c, a, b), p, M)
        return cache[key]

    index = _prefix_index(members)
    for c_n in range(min_base, size_bound + 1):
        for base in members[c_n]:
            exts = {}
            for g in index.get((c_n, base), []):
                code = _canonical_code(g, c_n)
                exts.setdefault(code, g)
            reps = sorted(exts.values(), key=lambda g: (g.n, g.pair_vector()))
            for a, b in itertools.product(reps, repeat=2):
                if a.n + b.n - c_n > size_bound:
                    continue
                _check_triple(base, a, b, amal, rep)
            _check_associativity(base, reps, amal, rep, size_bound, seed,
                                 associativity_samples)
    return rep


def _check_triple(base, a, b, amal, rep: Report):
    c = base.n
    t = AmalgamTriple(base, a, b)
    try:
        ab = amal(base, a, b)
        ba = amal(base, b, a)
    except NotAdmissible as exc:
        rep.violations.append({"clause": "existence", "detail": str(exc)})
        return
    rep.checked += 1
    rmap = t.right_map()
    # symmetry: swapping the sides gives the same structure
    aa, bb = a.n - c, b.n - c
    # in ba the B-part sits first; map ab's vertex to ba's
    to_ba = list(range(c)) + [c + bb + i for i in range(aa)] + [c + i for i in range(bb)]
    if not all(ba.d(to_ba[u], to_ba[v]) == x for (u, v), x in ab.edges.items()):
        rep.violations.append({"clause": "symmetry", "A": a.to_json(), "B": b.to_json(),
                               "C": base.to_json()})
    # the amalgam extends both sides
    if ab.induced(range(a.n)) != a or ab.induced(rmap) != b:
        rep.violations.append({"clause": "embedding", "A": a.to_json(), "B": b.to_json(),
                               "C": base.to_json()})
    # monotonicity: dropping a vertex of B outside C commutes with amalgamation
    for drop in range(c, b.n):
        keep = [x for x in range(b.n) if x != drop]
        b2 = b.induced(keep)
        sub = amal(base, a, b2)
        keep_ab = list(range(a.n)) + [rmap[x] for x in keep if x >= c]
        if ab.induced(keep_ab) != sub:
            rep.violations.append({"clause": "monotonicity", "A": a.to_json(),
                                   "B": b.to_json(), "C": base.to_json(), "dropped": drop})
    # stationarity: relabelling the private part of A or B relabels the amalgam
    for side in ("A", "B"):
        g = a if side == "A" else b
        k = g.n - c
        for rest in itertools.permutations(range(c, g.n)):
            perm = list(range(c)) + list(rest)
            if perm == list(range(g.n)):
                continue
            inv = [0] * g.n
            for i, x in enumerate(perm):
                inv[x] = i
            g2 = g.relabel(inv)
            if side == "A":
                other = amal(base, g2, b)
                full = [inv[x] if x < a.n else x for x in range(ab.n)]
            else:
                other = amal(base, a, g2)
                full = list(range(a.n)) + [a.n + inv[c + i] - c for i in range(k)]
            if ab.relabel(full) != other:
                rep.violations.append({"clause": "stationarity", "side": side,
                                       "A": a.to_json(), "B": b.to_json(),
                                       "C": base.to_json()})
                break


def _check_associativity(base, reps, amal, rep: Report, size_bound, seed, samples):
    """``(A ⊕_C B) ⊕_B D`` equals ``A ⊕_C D`` for every chain ``C ⊆ B ⊆ D``.

    Since ``B ⊕_B D = D``, this is the associativity law in the shape the
    independence axioms use it.
    """
    c = base.n
    quads = []
    for a, dd in itertools.product(reps, repeat=2):
        if a.n + dd.n - c > size_bound or a.n == c:
            continue
        extra = list(range(c, dd.n))
        for r in range(0, len(extra) + 1):
            for chosen in itertools.combinations(extra, r):
                order = list(range(c)) + list(chosen) + [x for x in extra if x not in chosen]
                inv = [0] * dd.n
                for i, x in enumerate(order):
                    inv[x] = i
                d2 = dd.relabel(inv)
                quads.append((a, d2.induced(range(c + r)), d2))
    if samples is not None and len(quads) > samples:
        quads = random.Random(seed).sample(quads, samples)
    for a, b, dd in quads:
        x = amal(base, b, a)
        left = amal(b, dd, x)
        right = amal(base, dd, a)
        rep.checked += 1
        if left != right:
            rep.violations.append({"clause": "associativity", "A": a.to_json(),
                                   "B": b.to_json(), "D": dd.to_json(),
                                   "C": base.to_json()})


# -- exhaustive inputs -------------------------------------------------------

def _pair_maps(n: int):
    """For each vertex permutation, where each pair position moves to."""
    import numpy as np

    pairs = list(itertools.combinations(range(n), 2))
    pos = {pr: i for i, pr in enumerate(pairs)}
    maps = []
    for perm in itertools.permutations(range(n)):
        # new vector position i holds the old pair that perm sends onto pairs[i]
        inv = [0] * n
        for i, x in enumerate(perm):
            inv[x] = i
        maps.append([pos[_key(inv[u], inv[v])] for u, v in pairs])
    return np.array(maps, dtype=np.int64)


def _canonical_codes(vecs, maps, base: int):
    """Least base-``base`` code of every row over all vertex relabellings."""
    import numpy as np

    m = vecs.shape[1]
    powers = base ** np.arange(m - 1, -1, -1, dtype=np.int64)
    best = None
    for mp in maps:
        codes = vecs[:, mp] @ powers
        best = codes if best is None else np.minimum(best, codes)
    return best


def iso_class_vectors(n: int, delta: int):
    """One pair vector per isomorphism class of partial graphs on ``n`` vertices.

    Entries are labels ``1..delta`` or 0 for a missing pair, in the pair
    order of ``itertools.combinations``.  Classes are built by adding a
    vertex to every class on ``n - 1`` vertices and keeping least codes.
    """
    import numpy as np

    base = delta + 1
    if n <= 1:
        return np.zeros((1, 0), dtype=np.int64)
    prev = _iso_vectors_cached(n - 1, delta)
    old_pairs = list(itertools.combinations(range(n - 1), 2))
    pairs = list(itertools.combinations(range(n), 2))
    pos = {pr: i for i, pr in enumerate(pairs)}
    old_pos = np.array([pos[pr] for pr in old_pairs], dtype=np.int64)
    new_pos = np.array([pos[(u, n - 1)] for u in range(n - 1)], dtype=np.int64)
    tails = np.array(list(itertools.product(range(base), repeat=n - 1)), dtype=np.int64)
    maps = _pair_maps(n)
    found = []
    chunk = max(1, 200_000 // len(tails))
    for start in range(0, len(prev), chunk):
        block = prev[start:start + chunk]
        vecs = np.zeros((len(block) * len(tails), len(pairs)), dtype=np.int64)
        vecs[:, old_pos] = np.repeat(block, len(tails), axis=0)
        vecs[:, new_pos] = np.tile(tails, (len(block), 1))
        found.append(np.unique(_canonical_codes(vecs, maps, base)))
    codes = np.unique(np.concatenate(found))
    digits = len(pairs)
    out = np.zeros((len(codes), digits), dtype=np.int64)
    rest = codes.copy()
    for i in range(digits - 1, -1, -1):
        out[:, i] = rest % base
        rest //= base
    return out


def iter_iso_classes(n: int, delta: int, connected: bool = False) -> Iterator[EdgeLabelledGraph]:
    """Representatives of all partial graphs on ``n`` vertices up to isomorphism."""
    pairs = list(itertools.combinations(range(n), 2))
    for vec in _iso_vectors_cached(n, delta).tolist():
        g = EdgeLabelledGraph(n, {pr: x for pr, x in zip(pairs, vec) if x})
        if connected and not g.is_connected():
            continue
        yield g


def iso_classes(n: int, delta: int, connected: bool = False) -> list[EdgeLabelledGraph]:
    return list(iter_iso_classes(n, delta, connected))


@functools.lru_cache(maxsize=None)
def _iso_vectors_cached(n: int, delta: int):
    vecs = iso_class_vectors(n, delta)
    vecs.setflags(write=False)
    return vecs


def engine_oracle_suite(p: ParameterSet, graphs: Iterable[EdgeLabelledGraph],
                        M: int | None = None,
                        checks: Sequence[str] = ("equivalence", "optimality", "parity"),
                        engine: Callable | None = None) -> Report:
    """Compare the engine with exhaustive enumeration on every given input.

    ``equivalence``: the engine succeeds exactly when a completion exists.
    ``optimality``/``parity``: the clauses checked against every completion.
    ``odd``: no triangle of odd perimeter in a successful output.
    ``automorphism``: input automorphisms survive completion.
    """
    v = require_admissible(p)
    if M is None:
        from .params import completion_parameter
        M = completion_parameter(p)
    run = engine or _engine_for(p, v)
    bip = v.kind is Kind.BIPARTITE
    rep = Report()
    for g in graphs:
        res = run(g, p, M)
        comps = None
        if res.ok or "equivalence" in checks:
            comps = list(iter_completions(g, p, max_unknown=None)) if res.ok else None
            exists = bool(comps) if res.ok else has_completion(g, p, max_unknown=None)
        rep.checked += 1
        if "equivalence" in checks and res.ok != exists:
            rep.violations.append({**_instance(g, p, M), "clause": "equivalence",
                                   "engine": res.status.value, "oracle_nonempty": exists})
            continue
        if not res.ok:
            continue
        bar = res.graph
        for c in comps:
            if "optimality" in checks:
                for viol in optimality_violations(bar, c, p, M, v.case, bip):
                    rep.violations.append({**_instance(g, p, M), **viol})
            if "parity" in checks:
                for viol in parity_violations(bar, c, p, M, v.case, bip):
                    rep.violations.append({**_instance(g, p, M), **viol})
        if "odd" in checks:
            for (x, y, z) in itertools.combinations(range(bar.n), 3):
                if (bar.d(x, y) + bar.d(x, z) + bar.d(y, z)) % 2:
                    rep.violations.append({**_instance(g, p, M), "clause": "odd triangle",
                                           "triangle": [x, y, z]})
                    break
        if "automorphism" in checks:
            for perm in automorphisms(g):
                if not _preserves(perm, bar):
                    rep.violations.append({**_instance(g, p, M), "clause": "automorphism",
                                           "automorphism": list(perm)})
    return rep


def symmetric_inputs(delta: int, max_pairs: int) -> Iterator[EdgeLabelledGraph]:
    """Every antipodally symmetric partial graph with up to ``max_pairs`` pairs.

    With ``k`` pairs vertex ``i`` is partnered with ``i + k``.  Each pair of
    pairs is either unconstrained or carries one label ``1..delta-1``, which
    fixes all four cross distances.
    """
    for k in range(1, max_pairs + 1):
        cross = list(itertools.combinations(range(k), 2))
        for vals in itertools.product(range(delta), repeat=len(cross)):
            edges = {(i, i + k): delta for i in range(k)}
            for (i, j), b in zip(cross, vals):
                if b:
                    edges[(i, j)] = edges[(i + k, j + k)] = b
                    edges[(i, j + k)] = edges[(j, i + k)] = delta - b
            yield EdgeLabelledGraph(2 * k, edges)


def antipodal_suite(p: ParameterSet, max_pairs: int = 3,
                    checks: Sequence[str] = ("equivalence", "podes", "membership")) -> Report:
    """Complete every small symmetric input with every pode.

    ``equivalence``: success for one pode exactly when a completion exists.
    ``podes``: in pode-independent kinds all podes give the same graph.
    ``membership``: every output lies in the class.
    ``automorphism``: automorphisms fixing the pode survive completion.

    In the bipartite kind the last two are only claimed for connected
    inputs, so disconnected ones are skipped there.
    """
    v = require_admissible(p)
    if v.kind not in ANTIPODAL_KINDS:
        raise NotAdmissible(f"{p} is not antipodal")
    rep = Report()
    skipped = 0
    for g in symmetric_inputs(p.delta, max_pairs):
        k = g.n // 2
        claimed = v.kind is Kind.ANTIPODAL_NONBIPARTITE or g.is_connected()
        skipped += not claimed
        same = claimed and pode_independent(v.kind, p.delta)
        exists = has_completion(g, p, max_unknown=None) if "equivalence" in checks else None
        outputs = set()
        for choice in itertools.product((0, 1), repeat=k):
            pode = [i + k * c for i, c in enumerate(choice)]
            res = antipodal_complete(PodedGraph(g, pode, p.delta), p)
            rep.checked += 1
            inst = {"graph": g.to_json(), "params": p.to_json(), "pode": pode}
            if exists is not None and res.ok != exists:
                rep.violations.append({**inst, "clause": "equivalence",
                                       "engine": res.status.value, "oracle_nonempty": exists})
            if not res.ok:
                continue
            outputs.add(res.graph)
            if "membership" in checks:
                bad = membership_check(res.graph, p)
                if bad is not None:
                    rep.violations.append({**inst, "clause": "membership",
                                           "violation": bad.to_json()})
            if "automorphism" in checks and claimed:
                for perm in automorphisms(g, fixed_sets=(frozenset(pode),)):
                    if not _preserves(perm, res.graph):
                        rep.violations.append({**inst, "clause": "automorphism",
                                               "automorphism": list(perm)})
        if "podes" in checks and same and len(outputs) > 1:
            rep.violations.append({"graph": g.to_json(), "params": p.to_json(),
                                   "clause": "pode independence", "outputs": len(outputs)})
    if skipped:
        rep.skipped.append(f"{skipped} disconnected inputs: pode and automorphism checks skipped")
    return rep


# -- random inputs and Henson constraints ------------------------------------

def random_partial_graph(rng: random.Random, delta: int, max_vertices: int) -> EdgeLabelledGraph:
    """Random partial graph on ``2..max_vertices`` vertices with labels ``1..delta``."""
    n = rng.randint(2, max_vertices)
    density = rng.uniform(0.3, 1.0)
    edges = {}
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < density:
            edges[(u, v)] = rng.randint(1, delta)
    return EdgeLabelledGraph(n, edges)


def henson_suite(p: ParameterSet, samples: int, seed: int, max_vertices: int = 5,
                 max_draws: int | None = None) -> Report:
    """Henson constraints survive completion.

    Draws random inputs until ``samples`` of them have a completion in the
    class (by the oracle), then requires the engine to complete each one
    without adding a distance 1 or ``delta`` and without creating a
    forbidden Henson structure.
    """
    require_admissible(p)
    if not p.henson:
        raise MalformedParameters("the Henson suite needs Henson constraints")
    rng = random.Random(seed)
    rep = Report()
    draws = 0
    limit = max_draws if max_draws is not None else 200 * samples
    while rep.checked < samples and draws < limit:
        draws += 1
        g = random_partial_graph(rng, p.delta, max_vertices)
        if not has_completion(g, p, max_unknown=None):
            continue
        rep.checked += 1
        res = dispatch_complete(g, p)
        inst = {"graph": g.to_json(), "params": p.to_json()}
        if not res.ok:
            rep.violations.append({**inst, "clause": "not completed"})
            continue
        for s in res.trace:
            if s.dist in (1, p.delta):
                rep.violations.append({**inst, "clause": "new extreme distance",
                                       "step": s.to_json()})
        bad = membership_check(res.graph, p)
        if bad is not None:
            rep.violations.append({**inst, "clause": "membership", "violation": bad.to_json()})
    if rep.checked < samples:
        rep.skipped.append(f"only {rep.checked} completable inputs in {draws} draws")
    rep.skipped.append(f"{draws - rep.checked} drawn inputs had no completion")
    return rep


def exhaustive_inputs(p: ParameterSet, max_vertices: int) -> Iterator[EdgeLabelledGraph]:
    """Every input of the exhaustive suites, one per isomorphism class.

    Bipartite classes only make claims about connected inputs, so only
    those are produced for them.
    """
    if max_vertices > MAX_EXHAUSTIVE_VERTICES:
        raise TooLarge(f"exhaustive inputs are limited to {MAX_EXHAUSTIVE_VERTICES} vertices")
    connected = admissibility_verdict(p).kind is Kind.BIPARTITE
    for n in range(1, max_vertices + 1):
        yield from iter_iso_classes(n, int(p.delta), connected)


def exhaustive_suite(p: ParameterSet, max_vertices: int = 4,
                     checks: Sequence[str] | None = None) -> Report:
    """Engine against oracle on every small input of the class of ``p``.

    Antipodal classes use symmetric inputs with ``max_vertices // 2``
    antipodal pairs instead.
    """
    v = require_admissible(p)
    if p.delta == INF:
        raise NotAdmissible("the exhaustive suite needs a finite diameter")
    if v.kind in ANTIPODAL_KINDS:
        return antipodal_suite(p, max(1, max_vertices // 2),
                               checks or ("equivalence", "podes", "membership"))
    if checks is None:
        checks = ("equivalence", "optimality", "parity")
        if v.kind is Kind.BIPARTITE:
            checks += ("odd",)
    return engine_oracle_suite(p, exhaustive_inputs(p, max_vertices), checks=checks)

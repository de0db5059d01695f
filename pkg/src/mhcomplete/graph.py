"""Edge-labelled graphs and membership in a 3-constrained class.

Vertices are the integers ``0..n-1``.  A graph stores a partial distance
function on unordered pairs; a pair without a label is a non-edge.
"""

from __future__ import annotations

import enum
import heapq
import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import IncompleteGraph, MalformedParameters, NoCompletion, OutOfRange
from .params import HensonConstraint, ParameterSet

UNREACHABLE = None


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class EdgeLabelledGraph:
    """Immutable graph with positive integer edge labels.

    Equality and hashing are by value.  ``d(u, v)`` returns the label or
    ``None`` for a non-edge; ``d(u, u)`` is 0.
    """

    __slots__ = ("_n", "_edges", "_hash")

    def __init__(self, n: int, edges: Mapping[tuple[int, int], int] | Iterable = ()):
        if not isinstance(n, int) or n < 0:
            raise MalformedParameters(f"vertex count must be a non-negative int, got {n!r}")
        items = edges.items() if isinstance(edges, Mapping) else (
            ((e[0], e[1]), e[2]) for e in edges)
        store: dict[tuple[int, int], int] = {}
        for (u, v), dist in items:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise MalformedParameters(f"bad edge ({u}, {v}) for {n} vertices")
            if not isinstance(dist, int) or isinstance(dist, bool) or dist < 1:
                raise MalformedParameters(f"edge ({u}, {v}) has bad label {dist!r}")
            k = _key(u, v)
            if k in store and store[k] != dist:
                raise MalformedParameters(f"conflicting labels for pair {k}")
            store[k] = dist
        self._n = n
        self._edges = dict(sorted(store.items()))
        self._hash = None

    # -- construction helpers ------------------------------------------------
    @classmethod
    def from_matrix(cls, mat: Sequence[Sequence[int]]) -> "EdgeLabelledGraph":
        """Build from a square matrix where 0 off the diagonal means no edge."""
        n = len(mat)
        return cls(n, {(u, v): int(mat[u][v]) for u in range(n)
                       for v in range(u + 1, n) if mat[u][v]})

    @classmethod
    def cycle(cls, labels: Sequence[int]) -> "EdgeLabelledGraph":
        """Cycle ``0-1-...-(k-1)-0`` whose i-th edge joins ``i`` and ``i+1``."""
        k = len(labels)
        return cls(k, {_key(i, (i + 1) % k): lab for i, lab in enumerate(labels)})

    @classmethod
    def path(cls, labels: Sequence[int]) -> "EdgeLabelledGraph":
        return cls(len(labels) + 1, {(i, i + 1): lab for i, lab in enumerate(labels)})

    @classmethod
    def complete(cls, n: int, dist: int) -> "EdgeLabelledGraph":
        return cls(n, {(u, v): dist for u, v in itertools.combinations(range(n), 2)})

    # -- accessors -----------------------------------------------------------
    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> dict[tuple[int, int], int]:
        return dict(self._edges)

    def d(self, u: int, v: int):
        if u == v:
            return 0
        return self._edges.get(_key(u, v))

    def has_edge(self, u: int, v: int) -> bool:
        return _key(u, v) in self._edges

    def num_edges(self) -> int:
        return len(self._edges)

    def non_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in itertools.combinations(range(self._n), 2)
                if (u, v) not in self._edges]

    def is_complete(self) -> bool:
        return len(self._edges) == self._n * (self._n - 1) // 2

    def max_label(self) -> int:
        return max(self._edges.values(), default=0)

    def neighbours(self, u: int) -> Iterator[tuple[int, int]]:
        for v in range(self._n):
            if v != u:
                w = self._edges.get(_key(u, v))
                if w is not None:
                    yield v, w

    def matrix(self) -> list[list[int]]:
        """Dense copy with 0 for the diagonal and for non-edges."""
        m = [[0] * self._n for _ in range(self._n)]
        for (u, v), dist in self._edges.items():
            m[u][v] = m[v][u] = dist
        return m

    def pair_vector(self) -> tuple[int, ...]:
        """Labels of all pairs in ``(u, v)`` lexicographic order, 0 = no edge."""
        return tuple(self._edges.get(k, 0)
                     for k in itertools.combinations(range(self._n), 2))

    # -- derived graphs ------------------------------------------------------
    def with_edges(self, extra: Mapping[tuple[int, int], int]) -> "EdgeLabelledGraph":
        merged = dict(self._edges)
        for (u, v), dist in extra.items():
            merged[_key(u, v)] = dist
        return EdgeLabelledGraph(self._n, merged)

    def induced(self, vertices: Sequence[int]) -> "EdgeLabelledGraph":
        """Subgraph on ``vertices``, renumbered in the given order."""
        pos = {v: i for i, v in enumerate(vertices)}
        out = {}
        for (u, v), dist in self._edges.items():
            if u in pos and v in pos:
                out[_key(pos[u], pos[v])] = dist
        return EdgeLabelledGraph(len(vertices), out)

    def relabel(self, perm: Sequence[int]) -> "EdgeLabelledGraph":
        """Image under the vertex map ``u -> perm[u]``."""
        return EdgeLabelledGraph(self._n, {_key(perm[u], perm[v]): dist
                                           for (u, v), dist in self._edges.items()})

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by minimum vertex."""
        seen = [False] * self._n
        adj = [[] for _ in range(self._n)]
        for u, v in self._edges:
            adj[u].append(v)
            adj[v].append(u)
        out = []
        for s in range(self._n):
            if seen[s]:
                continue
            comp, stack = [], [s]
            seen[s] = True
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self._n <= 1 or len(self.components()) == 1

    # -- value semantics -----------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, EdgeLabelledGraph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, tuple(self._edges.items())))
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{u}-{v}:{d}" for (u, v), d in self._edges.items())
        return f"EdgeLabelledGraph(n={self._n}, {{{body}}})"

    # -- serialisation -------------------------------------------------------
    def to_json(self) -> dict:
        return {"vertices": self._n,
                "edges": [[u, v, dist] for (u, v), dist in self._edges.items()]}

    @classmethod
    def from_json(cls, obj) -> "EdgeLabelledGraph":
        try:
            n = obj["vertices"]
            raw = obj.get("edges", [])
            seen = set()
            edges = {}
            for e in raw:
                u, v, dist = e
                if not u < v:
                    raise MalformedParameters(f"edge {e} must satisfy u < v")
                if (u, v) in seen:
                    raise MalformedParameters(f"duplicate pair ({u}, {v})")
                seen.add((u, v))
                edges[(u, v)] = dist
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedParameters(f"bad graph object: {exc}") from exc
        return cls(n, edges)

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def loads(cls, text: str) -> "EdgeLabelledGraph":
        return cls.from_json(json.loads(text))


# -- triangles ---------------------------------------------------------------

class Status(str, enum.Enum):
    ALLOWED = "ALLOWED"
    FORBIDDEN = "FORBIDDEN"


class Reason(str, enum.Enum):
    NONE = "NONE"
    NON_METRIC = "NON_METRIC"
    K1_BOUND = "K1_BOUND"
    K2_BOUND = "K2_BOUND"
    C0_BOUND = "C0_BOUND"
    C1_BOUND = "C1_BOUND"
    HENSON = "HENSON"
    ANTIPODAL = "ANTIPODAL"


@dataclass(frozen=True)
class TriangleVerdict:
    status: Status
    reason: Reason = Reason.NONE

    @property
    def allowed(self) -> bool:
        return self.status is Status.ALLOWED


ALLOWED = TriangleVerdict(Status.ALLOWED)


def triangle_verdict(a: int, b: int, c: int, p: ParameterSet) -> TriangleVerdict:
    """Classify the triangle with side lengths ``a, b, c``.

    Reasons are tried in the order non-metric, K1, K2, C1, C0 and the first
    match is reported.
    """
    for x in (a, b, c):
        if not (1 <= x <= p.delta) or (x != int(x)):
            raise OutOfRange(f"distance {x} outside 1..{p.delta}")
    a, b, c = sorted((a, b, c))
    per = a + b + c
    odd = per % 2 == 1
    if a + b < c:
        reason = Reason.NON_METRIC
    elif odd and per < 2 * p.k1 + 1:
        reason = Reason.K1_BOUND
    elif odd and b + c >= 2 * p.k2 + a:
        reason = Reason.K2_BOUND
    elif odd and per >= p.c1:
        reason = Reason.C1_BOUND
    elif not odd and per >= p.c0:
        reason = Reason.C0_BOUND
    else:
        return ALLOWED
    return TriangleVerdict(Status.FORBIDDEN, reason)


def forbidden_triangles(p: ParameterSet) -> list[tuple[int, int, int]]:
    """All sorted triples over ``1..delta`` that the numerical bounds forbid."""
    d = p.delta
    return [t for t in itertools.combinations_with_replacement(range(1, d + 1), 3)
            if not triangle_verdict(*t, p).allowed]


@dataclass(frozen=True)
class Violation:
    """First reason a complete graph fails to belong to a class."""

    reason: Reason
    vertices: tuple[int, ...]
    distances: tuple[int, ...] = ()
    constraint: HensonConstraint | None = None

    def to_json(self) -> dict:
        out = {"reason": self.reason.value, "vertices": list(self.vertices)}
        if self.distances:
            out["distances"] = list(self.distances)
        if self.constraint is not None:
            out["constraint"] = self.constraint.to_json()
        return out


def first_forbidden_triangle(g: EdgeLabelledGraph, p: ParameterSet) -> Violation | None:
    """Lexicographically first fully labelled triangle that is forbidden."""
    m = g.matrix()
    n = g.n
    for u in range(n):
        mu = m[u]
        for v in range(u + 1, n):
            a = mu[v]
            if not a:
                continue
            mv = m[v]
            for w in range(v + 1, n):
                b, c = mu[w], mv[w]
                if b and c:
                    verdict = triangle_verdict(a, b, c, p)
                    if not verdict.allowed:
                        return Violation(verdict.reason, (u, v, w), (a, b, c))
    return None


def _one_delta_signature(g: EdgeLabelledGraph, vs: Sequence[int], delta: int):
    """Sorted clique sizes if ``vs`` induces a (1, delta)-space, else None."""
    parent = {v: v for v in vs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in itertools.combinations(vs, 2):
        dist = g.d(u, v)
        if dist == 1:
            parent[find(u)] = find(v)
        elif dist != delta:
            return None
    groups: dict[int, list[int]] = {}
    for v in vs:
        groups.setdefault(find(v), []).append(v)
    for u, v in itertools.combinations(vs, 2):
        if (find(u) == find(v)) != (g.d(u, v) == 1):
            return None
    return tuple(sorted((len(c) for c in groups.values()), reverse=True))


def _antipodal_clique_embeds(g: EdgeLabelledGraph, vs: Sequence[int], delta: int) -> bool:
    """Whether ``vs`` induces a clique or one of its antipodal companions."""
    far = delta - 1
    side = {vs[0]: 0}
    for v in vs[1:]:
        dist = g.d(vs[0], v)
        if dist == 1:
            side[v] = 0
        elif dist == far:
            side[v] = 1
        else:
            return False
    for u, v in itertools.combinations(vs, 2):
        want = 1 if side[u] == side[v] else far
        if g.d(u, v) != want:
            return False
    return True


def find_henson_embedding(g: EdgeLabelledGraph, h: HensonConstraint,
                          delta: int) -> tuple[int, ...] | None:
    """Vertices of a copy of ``h`` in the complete graph ``g``, if any."""
    k = h.order
    if k > g.n:
        return None
    for vs in itertools.combinations(range(g.n), k):
        if h.antipodal:
            if _antipodal_clique_embeds(g, vs, delta):
                return vs
        elif _one_delta_signature(g, vs, delta) == h.clique_sizes:
            return vs
    return None


def membership_check(g: EdgeLabelledGraph, p: ParameterSet) -> Violation | None:
    """``None`` if the complete graph ``g`` belongs to the class, else why not."""
    if not g.is_complete():
        raise IncompleteGraph(f"graph has {len(g.non_edges())} unlabelled pairs")
    bad = first_forbidden_triangle(g, p)
    if bad is not None:
        return bad
    for h in p.henson:
        vs = find_henson_embedding(g, h, p.delta)
        if vs is not None:
            return Violation(Reason.HENSON, vs, constraint=h)
    return None


# -- paths -------------------------------------------------------------------

def path_distances(g: EdgeLabelledGraph, source: int) -> list:
    """Dijkstra from ``source``; unreachable vertices get ``None``."""
    dist: list = [None] * g.n
    dist[source] = 0
    heap = [(0, source)]
    adj = [[] for _ in range(g.n)]
    for (u, v), w in g.edges.items():
        adj[u].append((v, w))
        adj[v].append((u, w))
    done = [False] * g.n
    while heap:
        du, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w in adj[u]:
            nd = du + w
            if dist[v] is None or nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def path_distance(g: EdgeLabelledGraph, u: int, v: int):
    """Least total label over paths from ``u`` to ``v`` or ``UNREACHABLE``."""
    return path_distances(g, u)[v]


# -- antipodal structure -----------------------------------------------------

def _check_antipodal_input(g: EdgeLabelledGraph, delta: int):
    if not g.is_complete():
        raise IncompleteGraph("antipodal constructions need a complete graph")
    for (u, v), dist in g.edges.items():
        if not 1 <= dist <= delta - 1:
            raise OutOfRange(f"distance {dist} on ({u}, {v}) outside 1..{delta - 1}")


def antipodal_companion(g: EdgeLabelledGraph, flip: Iterable[int], delta: int) -> EdgeLabelledGraph:
    """Replace ``d`` by ``delta - d`` on every pair separated by ``flip``."""
    _check_antipodal_input(g, delta)
    fs = set(flip)
    out = {}
    for (u, v), dist in g.edges.items():
        out[(u, v)] = delta - dist if (u in fs) != (v in fs) else dist
    return EdgeLabelledGraph(g.n, out)


def antipodal_extension(g: EdgeLabelledGraph, delta: int) -> EdgeLabelledGraph:
    """Double ``g``: vertex ``u`` keeps index ``u`` and its copy is ``u + n``."""
    _check_antipodal_input(g, delta)
    n = g.n
    out = {}
    for (u, v), dist in g.edges.items():
        out[(u, v)] = dist
        out[(u + n, v + n)] = dist
        out[(u, v + n)] = delta - dist
        out[(v, u + n)] = delta - dist
    for u in range(n):
        out[(u, u + n)] = delta
    return EdgeLabelledGraph(2 * n, out)


def delta_partners(g: EdgeLabelledGraph, delta: int) -> dict[int, int]:
    """Map each vertex to its unique ``delta``-neighbour.

    Raises ``NoCompletion`` on a ``(delta, delta)``-fork.
    """
    partner: dict[int, int] = {}
    for (u, v), dist in g.edges.items():
        if dist != delta:
            continue
        for x, y in ((u, v), (v, u)):
            if x in partner:
                raise NoCompletion(f"vertex {x} has two delta-neighbours",
                                   certificate=(partner[x], x, y))
            partner[x] = y
    return partner


def is_antipodally_symmetric(g: EdgeLabelledGraph, delta: int) -> bool:
    """Whether every vertex has a partner and every quadruple is closed."""
    try:
        partner = delta_partners(g, delta)
    except NoCompletion:
        return False
    if len(partner) != g.n:
        return False
    for (u, v), dist in g.edges.items():
        if dist == delta:
            continue
        pu, pv = partner[u], partner[v]
        if g.d(pu, pv) != dist or g.d(u, pv) != delta - dist or g.d(pu, v) != delta - dist:
            return False
    return True


def antipodal_symmetrize(g: EdgeLabelledGraph, p: ParameterSet) -> EdgeLabelledGraph:
    """Add missing partners and close every antipodal quadruple.

    New partners are appended in order of the vertex they belong to.  Every
    completion of ``g`` inside an antipodal class extends to a completion of
    the result, so nothing is lost.
    """
    delta = p.delta
    partner = delta_partners(g, delta)
    n = g.n
    edges = g.edges
    for (u, v), dist in edges.items():
        if dist > delta:
            raise OutOfRange(f"distance {dist} exceeds delta")
    nxt = n
    for u in range(n):
        if u not in partner:
            partner[u] = nxt
            partner[nxt] = u
            edges[(u, nxt)] = delta
            nxt += 1
    out = dict(edges)
    pairs = sorted({_key(u, partner[u]) for u in range(nxt)})
    for (x, xs), (y, ys) in itertools.combinations(pairs, 2):
        # the four cross pairs and the sign with which each relates to d(x, y)
        cross = (((x, y), False), ((xs, ys), False), ((x, ys), True), ((xs, y), True))
        base = None
        for (a, b), flipped in cross:
            dist = out.get(_key(a, b))
            if dist is None:
                continue
            val = delta - dist if flipped else dist
            if base is None:
                base = val
            elif base != val:
                raise NoCompletion("antipodal quadruple closure conflicts",
                                   certificate=(x, xs, y, ys))
        if base is None:
            continue
        if not 1 <= base <= delta - 1:
            raise NoCompletion("delta-edge across two antipodal pairs",
                               certificate=(x, xs, y, ys))
        for (a, b), flipped in cross:
            out[_key(a, b)] = delta - base if flipped else base
    return EdgeLabelledGraph(nxt, out)


@dataclass(frozen=True)
class PodedGraph:
    """A graph with a distinguished vertex set ``pode``.

    Every ``delta``-edge must have exactly one endpoint in the pode.
    """

    graph: EdgeLabelledGraph
    pode: frozenset[int]

    def __init__(self, graph: EdgeLabelledGraph, pode: Iterable[int], delta: int | None = None):
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "pode", frozenset(pode))
        if any(not 0 <= v < graph.n for v in self.pode):
            raise MalformedParameters("pode vertex out of range")
        if delta is not None:
            for (u, v), dist in graph.edges.items():
                if dist == delta and (u in self.pode) == (v in self.pode):
                    raise MalformedParameters(
                        f"delta-edge ({u}, {v}) needs exactly one end in the pode")

    def to_json(self) -> dict:
        out = self.graph.to_json()
        out["pode"] = sorted(self.pode)
        return out

"""Completion engines for partial metric spaces.

Each engine takes an edge-labelled graph and returns a :class:`CompletionResult`
with a complete graph, a trace of every added pair, and a status.  The
primitive and bipartite engines add distances in rounds.  A non-edge gets
distance ``x`` once some vertex ``w`` sees its ends at a pair of distances
that the round's fork rule maps to ``x``.  Pairs left at the end receive the
magic distance.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (MalformedParameters, NoCompletion, NotAdmissible,
                     NotSymmetric, OutOfRange)
from .graph import (EdgeLabelledGraph, PodedGraph, Reason, Violation,
                    antipodal_symmetrize, delta_partners, first_forbidden_triangle,
                    is_antipodally_symmetric, membership_check, path_distances)
from .params import (INF, HensonConstraint, Kind, ParameterSet, completion_parameter,
                     henson_completion_parameter, require_admissible,
                     valid_completion_parameters)


class Family(str, enum.Enum):
    F_PLUS = "F_PLUS"
    F_MINUS = "F_MINUS"
    F_C = "F_C"
    F_C0 = "F_C0"


class Outcome(str, enum.Enum):
    SUCCESS = "SUCCESS"
    NO_COMPLETION = "NO_COMPLETION"


@dataclass(frozen=True)
class ForkRule:
    """Forks ``(a, b)`` with ``a <= b`` that a round closes to ``target``."""

    target: int
    family: Family
    time: int
    pairs: frozenset[tuple[int, int]]

    def matches(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.pairs


@dataclass(frozen=True)
class TraceStep:
    time: int
    u: int
    v: int
    dist: int
    witness: int | None

    def to_json(self) -> dict:
        return {"time": self.time, "edge": [self.u, self.v], "dist": self.dist,
                "witness": self.witness}

    @classmethod
    def from_json(cls, obj) -> "TraceStep":
        u, v = obj["edge"]
        return cls(obj["time"], u, v, obj["dist"], obj["witness"])


@dataclass(frozen=True)
class CompletionResult:
    status: Outcome
    graph: EdgeLabelledGraph
    trace: tuple[TraceStep, ...]
    certificate: Violation | None = None
    magic: int | None = None
    pode: frozenset[int] | None = None
    pode_dependent: bool | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return self.status is Outcome.SUCCESS

    def trace_json(self) -> list[dict]:
        return [s.to_json() for s in self.trace]

    def to_json(self, with_trace: bool = True) -> dict:
        out = {"status": self.status.value, "graph": self.graph.to_json()}
        if self.magic is not None:
            out["magic"] = self.magic
        if self.pode is not None:
            out["pode"] = sorted(self.pode)
        if self.pode_dependent is not None:
            out["pode_dependent"] = self.pode_dependent
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.notes:
            out["notes"] = list(self.notes)
        if with_trace:
            out["trace"] = self.trace_json()
        return out


def final_time(delta: int) -> int:
    """Time stamp used for the final fill of the magic distance."""
    return 2 * delta + 1


def _pairs(delta: int, pred) -> frozenset[tuple[int, int]]:
    return frozenset((a, b) for a in range(1, delta + 1)
                     for b in range(a, delta + 1) if pred(a, b))


def fork_rules(p: ParameterSet, M: int, bipartite: bool = False) -> list[ForkRule]:
    """All non-empty fork rules of the engine, ordered by time.

    Primitive engine: below ``M`` sums ``a+b`` and ``C-1-a-b`` at time
    ``2x-1``; above ``M`` differences ``|a-b|`` at time ``2(delta-x)``.
    Bipartite engine: ``C0-2-a-b`` replaces the ``C`` family and both ``M``
    and ``M+1`` are left for the fill.
    """
    d = p.delta
    C = p.C
    out = []
    top = M + 1 if bipartite else M
    for x in range(1, d + 1):
        if x < M:
            t = 2 * x - 1
            out.append(ForkRule(x, Family.F_PLUS, t, _pairs(d, lambda a, b: a + b == x)))
            if bipartite:
                out.append(ForkRule(x, Family.F_C0, t,
                                    _pairs(d, lambda a, b: p.c0 - 2 - a - b == x)))
            else:
                out.append(ForkRule(x, Family.F_C, t,
                                    _pairs(d, lambda a, b: C - 1 - a - b == x)))
        elif x > top:
            t = 2 * (d - x)
            out.append(ForkRule(x, Family.F_MINUS, t, _pairs(d, lambda a, b: b - a == x)))
    out = [r for r in out if r.pairs]
    out.sort(key=lambda r: (r.time, r.family.value))
    return out


def time_function(p: ParameterSet, M: int, bipartite: bool = False) -> dict[int, int]:
    """``x -> t_M(x)`` over every distance that has a round."""
    top = M + 1 if bipartite else M
    d = p.delta
    return {x: (2 * x - 1 if x < M else 2 * (d - x))
            for x in range(1, d + 1) if x < M or x > top}


def fork_value(a: int, b: int, p: ParameterSet, M: int) -> int:
    """Distance the primitive engine gives the third side of an isolated fork."""
    for rule in fork_rules(p, M):
        if rule.matches(a, b):
            return rule.target
    return M


# -- shared machinery --------------------------------------------------------

def _check_labels(g: EdgeLabelledGraph, delta) -> None:
    for (u, v), dist in g.edges.items():
        if dist > delta:
            raise OutOfRange(f"distance {dist} on ({u}, {v}) exceeds delta={delta}")


def _grouped(rules: Sequence[ForkRule]):
    """Rounds as ``(time, target, pairs)`` with families merged."""
    by_time: dict[int, tuple[int, set]] = {}
    for r in rules:
        x, acc = by_time.setdefault(r.time, (r.target, set()))
        if x != r.target:
            raise AssertionError("time function is not injective")
        acc.update(r.pairs)
        acc.update((b, a) for a, b in r.pairs)
    return [(t, x, frozenset(acc)) for t, (x, acc) in sorted(by_time.items())]


def _run_rounds(mat: list[list[int]], rules: Sequence[ForkRule],
                vertices: Sequence[int] | None = None) -> list[TraceStep]:
    """Apply the fork rounds to ``mat`` in place and return the trace.

    Qualifying pairs are collected against the state at the start of a
    round and then added together; the smallest witness is recorded.
    """
    n = len(mat)
    vs = list(range(n)) if vertices is None else list(vertices)
    trace = []
    for t, x, forks in _grouped(rules):
        found = []
        for i, u in enumerate(vs):
            mu = mat[u]
            for v in vs[i + 1:]:
                if mu[v]:
                    continue
                mv = mat[v]
                for w in vs:
                    a, b = mu[w], mv[w]
                    if a and b and w != u and w != v and (a, b) in forks:
                        found.append(TraceStep(t, u, v, x, w))
                        break
        for s in found:
            mat[s.u][s.v] = mat[s.v][s.u] = s.dist
        trace.extend(found)
    return trace


def _graph_of(mat: list[list[int]]) -> EdgeLabelledGraph:
    return EdgeLabelledGraph.from_matrix(mat)


def _finish(mat, trace, p: ParameterSet, M, **extra) -> CompletionResult:
    out = _graph_of(mat)
    bad = membership_check(out, p)
    status = Outcome.SUCCESS if bad is None else Outcome.NO_COMPLETION
    return CompletionResult(status, out, tuple(trace), bad, M, **extra)


# -- primitive ---------------------------------------------------------------

def _require_kind(p: ParameterSet, kinds: Iterable[Kind]):
    v = require_admissible(p)
    if v.kind not in tuple(kinds):
        raise NotAdmissible(f"{p} has kind {v.kind.value}")
    return v


def _magic_engine(g: EdgeLabelledGraph, p: ParameterSet, M: int):
    """Primitive rounds plus final fill; no validation and no final check."""
    mat = g.matrix()
    trace = _run_rounds(mat, fork_rules(p, M))
    t_fill = final_time(p.delta)
    n = g.n
    for u in range(n):
        for v in range(u + 1, n):
            if not mat[u][v]:
                mat[u][v] = mat[v][u] = M
                trace.append(TraceStep(t_fill, u, v, M, None))
    return mat, trace


def magic_complete(g: EdgeLabelledGraph, p: ParameterSet, M: int | None = None) -> CompletionResult:
    """Complete ``g`` in a primitive class with magic parameter ``M``.

    On failure the certificate is the first forbidden triangle (or embedded
    Henson constraint) of the output; for a valid ``M`` this proves that no
    completion of ``g`` exists.
    """
    _require_kind(p, [Kind.PRIMITIVE])
    if p.delta == INF:
        raise NotAdmissible("use shortest_path_complete for infinite diameter")
    if M is None:
        M = completion_parameter(p)
    elif M not in valid_completion_parameters(p):
        raise NotAdmissible(f"M={M} is not a usable magic distance for {p}")
    _check_labels(g, p.delta)
    mat, trace = _magic_engine(g, p, M)
    return _finish(mat, trace, p, M)


# -- bipartite ---------------------------------------------------------------

def _bipartite_engine(g: EdgeLabelledGraph, p: ParameterSet, M: int):
    mat = g.matrix()
    n = g.n
    comps = g.components()
    rules = fork_rules(p, M, bipartite=True)
    trace = []
    for comp in comps:
        trace.extend(_run_rounds(mat, rules, comp))
    t_fill = final_time(p.delta)
    # parity side of every vertex relative to the anchor of its component
    side = [0] * n
    which = [0] * n
    for ci, comp in enumerate(comps):
        dist = path_distances(_graph_of(mat), comp[0])
        for u in comp:
            which[u] = ci
            side[u] = dist[u] % 2
    # components after the first are shifted so their anchor sits at
    # distance M from the first anchor
    glob = [side[u] if which[u] == 0 else side[u] + M for u in range(n)]
    fill = []
    for u in range(n):
        for v in range(u + 1, n):
            if mat[u][v]:
                continue
            if which[u] == which[v]:
                par = (side[u] + side[v]) % 2
            else:
                par = (glob[u] + glob[v]) % 2
            x = M if par == M % 2 else M + 1
            fill.append(TraceStep(t_fill, u, v, x, None))
    for s in fill:
        mat[s.u][s.v] = mat[s.v][s.u] = s.dist
    trace.extend(fill)
    return mat, trace, len(comps)


def bipartite_complete(g: EdgeLabelledGraph, p: ParameterSet, M: int | None = None) -> CompletionResult:
    """Complete ``g`` in a bipartite class (``K1 = inf``, ``C0 > 2*delta + 2``).

    Components are completed separately and then joined at distance ``M``
    or ``M + 1`` according to parity.  Components are ordered by their
    least vertex, which also serves as the anchor.
    """
    _require_kind(p, [Kind.BIPARTITE])
    if p.delta == INF:
        raise NotAdmissible("use shortest_path_complete for infinite diameter")
    if M is None:
        M = completion_parameter(p)
    elif M not in valid_completion_parameters(p):
        raise NotAdmissible(f"M={M} is not a bipartite magic distance for {p}")
    _check_labels(g, p.delta)
    mat, trace, ncomp = _bipartite_engine(g, p, M)
    notes = ("components joined by anchor rule",) if ncomp > 1 else ()
    return _finish(mat, trace, p, M, notes=notes)


# -- antipodal ---------------------------------------------------------------

ANTIPODAL_KINDS = (Kind.ANTIPODAL_NONBIPARTITE, Kind.ANTIPODAL_BIPARTITE)


def pode_class(p: ParameterSet) -> ParameterSet:
    """Numerical parameters of the diameter ``delta - 1`` class of a pode."""
    if p.k1 == INF:
        return ParameterSet(p.delta - 1, INF, 0, 2 * p.delta + 2, 2 * p.delta - 1)
    return ParameterSet(p.delta - 1, p.k1, p.k2, p.c0, p.c1)


def pode_independent(kind: Kind, delta: int) -> bool:
    """Whether the antipodal completion is the same for every pode."""
    if kind is Kind.ANTIPODAL_NONBIPARTITE:
        return delta % 2 == 0
    if kind is Kind.ANTIPODAL_BIPARTITE:
        return delta % 2 == 1
    raise ValueError(f"{kind} is not antipodal")


def canonical_pode(g: EdgeLabelledGraph, delta: int) -> frozenset[int]:
    """Lower-index vertex of every ``delta``-pair."""
    partner = delta_partners(g, delta)
    return frozenset(u for u, v in partner.items() if u < v)


def antipodal_complete(pg: PodedGraph, p: ParameterSet) -> CompletionResult:
    """Complete an antipodally symmetric graph with a chosen pode.

    The pode is completed in the diameter ``delta - 1`` class with
    ``M = delta // 2`` and the rest follows by antipodal expansion.
    """
    v = _require_kind(p, ANTIPODAL_KINDS)
    g, pode = pg.graph, pg.pode
    d = p.delta
    _check_labels(g, d)
    if not is_antipodally_symmetric(g, d):
        raise NotSymmetric("input must be antipodally symmetric; symmetrize it first")
    partner = delta_partners(g, d)
    for u in range(g.n):
        if (u in pode) == (partner[u] in pode):
            raise MalformedParameters(f"delta-pair ({u}, {partner[u]}) needs exactly one pode vertex")
    M = d // 2
    pp = pode_class(p)
    ps = sorted(pode)
    sub = g.induced(ps)
    if v.kind is Kind.ANTIPODAL_NONBIPARTITE:
        pmat, ptrace = _magic_engine(sub, pp, M)
    else:
        pmat, ptrace, _ = _bipartite_engine(sub, pp, M)
    n = g.n
    mat = g.matrix()
    trace = []
    for s in ptrace:
        a, b = ps[s.u], ps[s.v]
        w = None if s.witness is None else ps[s.witness]
        trace.append(TraceStep(s.time, min(a, b), max(a, b), s.dist, w))
        mat[a][b] = mat[b][a] = s.dist
    # expansion: everything else is forced by the pode distances
    t_exp = final_time(d - 1) + 1
    anti = {u: (u if u in pode else partner[u]) for u in range(n)}
    expansion = []
    for a in range(n):
        for b in range(a + 1, n):
            if mat[a][b]:
                continue
            pa, pb = anti[a], anti[b]
            if pa == pb:
                x = d
            else:
                x = pmat[ps.index(pa)][ps.index(pb)]
                if (a in pode) != (b in pode):
                    x = d - x
            expansion.append(TraceStep(t_exp, a, b, x, None))
    for s in expansion:
        mat[s.u][s.v] = mat[s.v][s.u] = s.dist
    trace.extend(expansion)
    return _finish(mat, trace, p, M, pode=frozenset(pode))


def antipodal_complete_podefree(g: EdgeLabelledGraph, p: ParameterSet) -> CompletionResult:
    """Antipodal completion with the canonical pode.

    ``pode_dependent`` is ``False`` exactly for the kinds where every pode
    gives the same completion.
    """
    v = _require_kind(p, ANTIPODAL_KINDS)
    if not is_antipodally_symmetric(g, p.delta):
        raise NotSymmetric("input must be antipodally symmetric; symmetrize it first")
    pode = canonical_pode(g, p.delta)
    res = antipodal_complete(PodedGraph(g, pode), p)
    dep = not pode_independent(v.kind, p.delta)
    return _replace(res, pode_dependent=dep)


def _replace(res: CompletionResult, **kw) -> CompletionResult:
    fields = dict(res.__dict__)
    fields.update(kw)
    return CompletionResult(**fields)


# -- infinite diameter -------------------------------------------------------

def shortest_path_complete(g: EdgeLabelledGraph, p: ParameterSet) -> CompletionResult:
    """Give every non-edge its path distance.

    Unreachable pairs are joined at a distance large enough to create no
    forbidden triangle (with a parity shift in the bipartite class).
    """
    v = require_admissible(p)
    if p.delta != INF:
        raise NotAdmissible("shortest_path_complete needs infinite diameter")
    n = g.n
    rows = [path_distances(g, u) for u in range(n)]
    comps = g.components()
    big = max([x for r in rows for x in r if x] + [1, p.k1 if p.k1 != INF else 1])
    which = [0] * n
    side = [0] * n
    for ci, comp in enumerate(comps):
        for u in comp:
            which[u] = ci
            side[u] = rows[comp[0]][u] % 2
    mat = g.matrix()
    trace = []
    for u in range(n):
        for w in range(u + 1, n):
            if mat[u][w]:
                continue
            x = rows[u][w]
            if x is None:
                x = big
                if v.kind is Kind.BIPARTITE:
                    gu = side[u] + (big if which[u] else 0)
                    gw = side[w] + (big if which[w] else 0)
                    x = big if (gu + gw) % 2 == big % 2 else big + 1
            trace.append(TraceStep(1, u, w, x, None))
    for s in trace:
        mat[s.u][s.v] = mat[s.v][s.u] = s.dist
    out = _graph_of(mat)
    bad = first_forbidden_triangle(out, p)
    status = Outcome.SUCCESS if bad is None else Outcome.NO_COMPLETION
    return CompletionResult(status, out, tuple(trace), bad)


# -- dispatcher --------------------------------------------------------------

def _restrict(res: CompletionResult, n: int, added: EdgeLabelledGraph,
              original: EdgeLabelledGraph) -> CompletionResult:
    """Cut a result on a symmetrized graph back to the first ``n`` vertices."""
    if res.graph.n == n:
        closure = [TraceStep(0, u, v, x, None) for (u, v), x in added.edges.items()
                   if u < n and v < n and not original.has_edge(u, v)]
        return _replace(res, trace=tuple(closure) + res.trace)
    closure = [TraceStep(0, u, v, x, None) for (u, v), x in added.edges.items()
               if v < n and not original.has_edge(u, v)]
    trace = tuple(closure) + tuple(s for s in res.trace if s.v < n)
    cert = res.certificate
    pode = None if res.pode is None else frozenset(u for u in res.pode if u < n)
    return _replace(res, graph=res.graph.induced(range(n)), trace=trace,
                    certificate=cert, pode=pode)


def _henson_is_single_anticlique(hs: Sequence[HensonConstraint]) -> bool:
    return len(hs) == 1 and not hs[0].antipodal and set(hs[0].clique_sizes) == {1}


def dispatch_complete(g: EdgeLabelledGraph, p: ParameterSet, *, M: int | None = None,
                      pode: Iterable[int] | None = None) -> CompletionResult:
    """Complete ``g`` with the engine matching the kind of ``p``.

    Antipodal inputs are symmetrized first; the result is cut back to the
    original vertices and pairs fixed by the symmetrization appear in the
    trace at time 0.  With Henson constraints the magic distance is chosen
    so that no new distance 1 or ``delta`` is introduced.
    """
    v = require_admissible(p)
    if p.delta == INF:
        return shortest_path_complete(g, p)
    if v.kind is Kind.PRIMITIVE:
        if M is None:
            M = henson_completion_parameter(p)
        return magic_complete(g, p, M)
    if v.kind is Kind.BIPARTITE:
        if p.henson and not _henson_is_single_anticlique(p.henson):
            raise NotAdmissible("bipartite classes only support a single anticlique constraint")
        if M is None:
            M = henson_completion_parameter(p)
        return bipartite_complete(g, p, M)
    n = g.n
    try:
        sym = antipodal_symmetrize(g, p)
    except NoCompletion as exc:
        cert = Violation(Reason.ANTIPODAL, tuple(exc.certificate or ()))
        filled = g.with_edges({k: p.delta for k in g.non_edges()})
        return CompletionResult(Outcome.NO_COMPLETION, filled, (), cert,
                                notes=(str(exc),))
    if pode is None:
        res = antipodal_complete_podefree(sym, p)
    else:
        chosen = set(pode)
        partner = delta_partners(sym, p.delta)
        full = set()
        for u in range(sym.n):
            mate = partner[u]
            if u < n and mate < n:
                if (u in chosen) == (mate in chosen):
                    raise MalformedParameters(
                        f"pode must contain exactly one of {u} and {mate}")
                if u in chosen:
                    full.add(u)
            elif u < n:
                if u in chosen:
                    full.add(u)
                else:
                    full.add(mate)
        res = antipodal_complete(PodedGraph(sym, full), p)
        res = _replace(res, pode_dependent=not pode_independent(v.kind, p.delta))
    return _restrict(res, n, sym, g)

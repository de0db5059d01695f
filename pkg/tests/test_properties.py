import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from mhcomplete.completion import (bipartite_complete, fork_rules, magic_complete, time_function)
from mhcomplete.graph import (EdgeLabelledGraph, antipodal_companion, antipodal_symmetrize,
                              is_antipodally_symmetric, triangle_verdict)
from mhcomplete.obstacles import LabelledCycle, canonical
from mhcomplete.oracle import has_completion
from mhcomplete.params import (INF, Kind, ParameterSet, enumerate_admissible, magic_set,
                               triangle_allowed)

PRIMITIVE = [p for d in (3, 4, 5) for p, v in enumerate_admissible(d) if v.kind is Kind.PRIMITIVE]
ANTIPODAL = [ParameterSet(4, 1, 3, 10, 9), ParameterSet(4, 2, 2, 10, 9), ParameterSet(3, 1, 2, 8, 7)]

params = st.sampled_from(PRIMITIVE)


@st.composite
def graphs(draw, delta=5, max_n=5):
    n = draw(st.integers(0, max_n))
    edges = {}
    for u, v in itertools.combinations(range(n), 2):
        x = draw(st.integers(0, delta))
        if x:
            edges[(u, v)] = x
    return EdgeLabelledGraph(n, edges)


@st.composite
def primitive_instance(draw):
    p = draw(params)
    return p, draw(graphs(delta=p.delta))


@given(params, st.data())
def test_triangle_verdict_is_symmetric(p, data):
    a, b, c = (data.draw(st.integers(1, p.delta)) for _ in range(3))
    verdicts = {triangle_verdict(*perm, p) for perm in itertools.permutations((a, b, c))}
    assert len(verdicts) == 1
    assert verdicts.pop().allowed == triangle_allowed(a, b, c, p)


@given(primitive_instance(), st.randoms(use_true_random=False))
def test_engine_commutes_with_relabelling(inst, rnd):
    p, g = inst
    perm = list(range(g.n))
    rnd.shuffle(perm)
    a = magic_complete(g, p)
    b = magic_complete(g.relabel(perm), p)
    assert a.status == b.status
    assert a.graph.relabel(perm) == b.graph


@settings(max_examples=60)
@given(primitive_instance())
def test_engine_success_matches_oracle(inst):
    p, g = inst
    assert magic_complete(g, p).ok == has_completion(g, p, max_unknown=None)


@given(primitive_instance())
def test_trace_times_and_input_preserved(inst):
    p, g = inst
    res = magic_complete(g, p)
    times = [s.time for s in res.trace]
    assert times == sorted(times)
    for (u, v), x in g.edges.items():
        assert res.graph.d(u, v) == x
    assert {(s.u, s.v) for s in res.trace} == set(g.non_edges())
    tf = time_function(p, res.magic)
    for s in res.trace:
        assert s.time == tf.get(s.dist, 2 * p.delta + 1)


@given(params)
def test_time_function_injective(p):
    for M in magic_set(p):
        tf = time_function(p, M)
        assert len(set(tf.values())) == len(tf)
        rules = fork_rules(p, M)
        assert len({r.time for r in rules}) == len({(r.time, r.target) for r in rules})


@given(params)
def test_magic_distances_allow_aab(p):
    # past delta/2, M is magic exactly when every triangle (M, M, b) is allowed
    for m in range(1, p.delta + 1):
        aab = all(triangle_allowed(m, m, b, p) for b in range(1, p.delta + 1))
        assert (aab and 2 * m >= p.delta) == (m in magic_set(p))


@given(st.sampled_from([ParameterSet(4, INF, 0, 12, 9), ParameterSet(5, INF, 0, 14, 11)]),
       st.data())
def test_bipartite_outputs_even(p, data):
    g = data.draw(graphs(delta=p.delta))
    res = bipartite_complete(g, p)
    if res.ok:
        for x, y, z in itertools.combinations(range(g.n), 3):
            assert (res.graph.d(x, y) + res.graph.d(x, z) + res.graph.d(y, z)) % 2 == 0


@st.composite
def complete_graphs(draw, delta):
    n = draw(st.integers(1, 5))
    return EdgeLabelledGraph(n, {(u, v): draw(st.integers(1, delta - 1))
                                 for u, v in itertools.combinations(range(n), 2)})


@given(complete_graphs(4), st.sets(st.integers(0, 4)))
def test_companion_is_involution(g, flip):
    flip = {v for v in flip if v < g.n}
    assert antipodal_companion(antipodal_companion(g, flip, 4), flip, 4) == g


@given(st.sampled_from(ANTIPODAL), st.data())
def test_symmetrize_idempotent(p, data):
    g = data.draw(complete_graphs(p.delta))
    s = antipodal_symmetrize(g, p)
    assert is_antipodally_symmetric(s, p.delta)
    assert antipodal_symmetrize(s, p) == s
    assert s.induced(range(g.n)) == g


@given(st.lists(st.integers(1, 5), min_size=3, max_size=8))
def test_canonical_idempotent_and_invariant(labels):
    c = canonical(labels)
    assert canonical(c) == c
    assert canonical(labels[::-1]) == c
    assert canonical(labels[1:] + labels[:1]) == c
    assert LabelledCycle(tuple(labels)).labels == c

import pytest

from mhcomplete.errors import MalformedParameters, NotAdmissible, TooLarge
from mhcomplete.graph import EdgeLabelledGraph
from mhcomplete.obstacles import (Decider, LabelledCycle, ObstacleCatalogue, backward_expand,
                                  canonical, canonical_cycles, enumerate_obstacles,
                                  has_closed_walk, theoretical_bound, verify_obstacle_closure)
from mhcomplete.params import INF, ParameterSet

P5 = ParameterSet(5, 3, 3, 16, 13)

LEN3 = ["111", "113", "114", "115", "122", "124", "125", "135", "144", "155", "225", "245",
        "355", "445", "555"]
LEN4 = ["1112", "1114", "1115", "1125", "1145", "1215", "1255", "1415", "1455", "1525",
        "1545", "2555", "4555"]
LEN5 = ["11111", "11115", "11155", "11515", "11555", "15155", "15555", "55555"]

# four-cycles obtained by opening one side of a forbidden triangle into a fork
EXPANSIONS = ["1114", "1554", "1215", "1251", "1115", "1115", "1125", "5525", "1112", "1552",
              "1154", "1514", "1415", "1145", "5545", "2155", "2515", "1545", "5145", "4155"]


def cyc(s):
    return LabelledCycle.parse(s)


def test_canonical_form():
    assert canonical((5, 1, 4, 5)) == (1, 4, 5, 5)
    assert canonical((4, 1, 5, 5)) == (1, 4, 5, 5)
    assert cyc("5 5 1 2") == cyc("1255")
    assert str(cyc("5512")) == "1 2 5 5"
    with pytest.raises(MalformedParameters):
        LabelledCycle((1, 2))


def test_canonical_cycle_counts():
    # necklaces with reflection (bracelets) over 2 colours
    assert sum(1 for _ in canonical_cycles(4, 2)) == 6
    assert sum(1 for _ in canonical_cycles(6, 2)) == 13


def test_catalogue_buckets():
    cat = enumerate_obstacles(P5, 6)
    got = {k: [str(c).replace(" ", "") for c in cs] for k, cs in cat.by_length.items()}
    assert got == {3: LEN3, 4: LEN4, 5: LEN5, 6: []}
    assert cyc("1114") in cat.by_length[4]
    assert cyc("1555") not in cat.by_length[4]


def test_deciders_agree():
    eng = enumerate_obstacles(P5, 5, Decider.ENGINE)
    ora = enumerate_obstacles(P5, 5, Decider.ORACLE)
    assert eng.by_length == ora.by_length


def test_four_cycles_come_from_expansions():
    expanded = {cyc(s) for s in EXPANSIONS} - {cyc("1555")}
    assert expanded == {cyc(s) for s in LEN4}


def test_backward_expand():
    assert backward_expand(cyc("124"), P5) == {cyc(s) for s in ("1114", "1125", "1215", "1455")}
    assert backward_expand(cyc("122"), P5) == {cyc("1112"), cyc("1255")}
    assert backward_expand((4, 4, 5), P5) == {cyc("1455"), cyc("1545")}
    with pytest.raises(MalformedParameters):
        backward_expand((3, 3, 3), P5)


def test_catalogue_json_round_trip():
    cat = enumerate_obstacles(P5, 4)
    obj = cat.to_json()
    assert obj["bound_theoretical"] == theoretical_bound(5) == 96
    back = ObstacleCatalogue.from_json(obj)
    assert back.by_length == cat.by_length and back.params == P5


def test_catalogue_limits():
    with pytest.raises(TooLarge):
        enumerate_obstacles(P5, 9)
    with pytest.raises(NotAdmissible):
        enumerate_obstacles(ParameterSet(4, INF, 0, 12, 9), 4)


def test_closed_walks():
    g = EdgeLabelledGraph.cycle([1, 1, 1])
    assert has_closed_walk(g, (1, 1, 1))
    # a single edge walked back and forth
    assert has_closed_walk(EdgeLabelledGraph.path([1]), (1, 1, 1, 1))
    assert not has_closed_walk(EdgeLabelledGraph.path([1, 2]), (1, 2, 1))
    assert has_closed_walk(EdgeLabelledGraph.cycle([2, 1, 1, 4]), (1, 1, 1, 4)) is False
    assert has_closed_walk(EdgeLabelledGraph.cycle([4, 1, 1, 1]), (1, 1, 1, 4))


def test_closure_small():
    cat = enumerate_obstacles(P5, 5)
    rep = verify_obstacle_closure(P5, cat, samples=150, seed=5)
    assert rep.ok and rep.checked == 150


def test_closure_catches_missing_obstacle():
    cat = enumerate_obstacles(P5, 5)
    cat.by_length[3] = [c for c in cat.by_length[3] if str(c) != "1 1 1"]
    cat.by_length[4] = []
    cat.by_length[5] = []
    rep = verify_obstacle_closure(P5, cat, samples=300, seed=5)
    assert not rep.ok

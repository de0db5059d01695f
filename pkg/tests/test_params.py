import json

import pytest

from mhcomplete.errors import MalformedParameters, NotAdmissible
from mhcomplete.params import (INF, Case, HensonConstraint, Kind, ParameterSet,
                               admissibility_verdict, completion_parameter, enumerate_admissible,
                               henson_completion_parameter, is_acceptable, magic_bounds,
                               magic_set, parse_henson, require_admissible, triangle_allowed,
                               valid_completion_parameters)

# (K1, K2, C0, C1, magic distances or None, case) for diameter 3
DELTA3 = [
    (INF, 0, 8, 7, None, "I"),
    (INF, 0, 10, 7, None, "I"),
    (1, 2, 8, 7, None, "IIA"),
    (1, 2, 10, 9, [2], "III"),
    (1, 2, 10, 11, [2], "III"),
    (1, 3, 8, 9, [2], "III"),
    (1, 3, 10, 9, [2], "III"),
    (1, 3, 10, 11, [2, 3], "III"),
    (2, 2, 10, 9, [2], "III"),
    (2, 2, 10, 11, [2], "III"),
    (2, 3, 10, 9, [2], "III"),
    (2, 3, 10, 11, [2, 3], "III"),
    (3, 3, 10, 11, [3], "III"),
]

# (C, C', K1, K2, M_min, M_max, case) for the finite-K1 classes
DELTA4 = [
    (9, 10, 1, 3, 2, 2, "IIA"), (9, 10, 2, 2, 2, 2, "IIA"), (11, 12, 1, 3, 2, 3, "III"),
    (11, 14, 1, 3, 2, 3, "III"), (12, 13, 1, 3, 2, 3, "III"), (13, 14, 1, 3, 2, 3, "III"),
    (10, 11, 1, 4, 2, 2, "III"), (11, 12, 1, 4, 2, 3, "III"), (12, 13, 1, 4, 2, 3, "III"),
    (13, 14, 1, 4, 2, 4, "III"), (11, 12, 2, 3, 2, 3, "III"), (11, 14, 2, 3, 2, 3, "III"),
    (12, 13, 2, 3, 2, 3, "III"), (13, 14, 2, 3, 2, 3, "III"), (11, 12, 2, 4, 2, 3, "III"),
    (12, 13, 2, 4, 2, 3, "III"), (13, 14, 2, 4, 2, 4, "III"), (12, 13, 3, 3, 3, 3, "III"),
    (13, 14, 3, 3, 3, 3, "III"), (12, 13, 3, 4, 3, 3, "III"), (13, 14, 3, 4, 3, 4, "III"),
    (13, 14, 4, 4, 4, 4, "III"),
]

DELTA5 = [
    (11, 12, 1, 4, 3, 2, "IIA"), (11, 12, 2, 3, 3, 2, "IIA"), (13, 14, 3, 3, 3, 3, "IIA"),
    (13, 16, 3, 3, 3, 3, "IIB"), (13, 14, 1, 4, 3, 3, "III"), (14, 15, 1, 4, 3, 4, "III"),
    (14, 17, 1, 4, 3, 4, "III"), (15, 16, 1, 4, 3, 4, "III"), (16, 17, 1, 4, 3, 4, "III"),
    (12, 13, 1, 5, 3, 3, "III"), (13, 14, 1, 5, 3, 3, "III"), (14, 15, 1, 5, 3, 4, "III"),
    (15, 16, 1, 5, 3, 4, "III"), (16, 17, 1, 5, 3, 5, "III"), (13, 14, 2, 4, 3, 3, "III"),
    (14, 15, 2, 4, 3, 4, "III"), (14, 17, 2, 4, 3, 4, "III"), (15, 16, 2, 4, 3, 4, "III"),
    (16, 17, 2, 4, 3, 4, "III"), (13, 14, 2, 5, 3, 3, "III"), (14, 15, 2, 5, 3, 4, "III"),
    (15, 16, 2, 5, 3, 4, "III"), (16, 17, 2, 5, 3, 5, "III"), (14, 15, 3, 4, 3, 4, "III"),
    (14, 17, 3, 4, 3, 4, "III"), (15, 16, 3, 4, 3, 4, "III"), (16, 17, 3, 4, 3, 4, "III"),
    (14, 15, 3, 5, 3, 4, "III"), (15, 16, 3, 5, 3, 4, "III"), (16, 17, 3, 5, 3, 5, "III"),
    (15, 16, 4, 4, 4, 4, "III"), (16, 17, 4, 4, 4, 4, "III"), (15, 16, 4, 5, 4, 4, "III"),
    (16, 17, 4, 5, 4, 5, "III"), (16, 17, 5, 5, 5, 5, "III"),
]


def delta3_rows():
    out = []
    for p, v in enumerate_admissible(3):
        ms = valid_completion_parameters(p) if v.kind is Kind.PRIMITIVE else None
        out.append((p.k1, p.k2, p.c0, p.c1, ms, v.case.value))
    return out


def finite_rows(delta):
    out = []
    for p, v in enumerate_admissible(delta, include_bipartite=False):
        lo, hi = magic_bounds(p)
        out.append((p.C, p.Cp, p.k1, p.k2, lo, hi, v.case.value))
    return out


def test_delta3_table():
    assert delta3_rows() == DELTA3


@pytest.mark.parametrize("delta,expected", [(4, DELTA4), (5, DELTA5)])
def test_finite_tables(delta, expected):
    rows = finite_rows(delta)
    assert len(rows) == len(expected)
    assert sorted(rows) == sorted(expected)


def test_enumeration_order_and_bipartite_flag():
    rows = enumerate_admissible(4)
    assert [p.k1 for p, _ in rows[:2]] == [INF, INF]
    keys = [(p.k1, p.k2, p.c0, p.c1) for p, _ in rows if p.k1 != INF]
    assert keys == sorted(keys)
    assert len(enumerate_admissible(4, include_bipartite=False)) == 22


def test_enumerate_rejects_small_delta():
    with pytest.raises(MalformedParameters):
        enumerate_admissible(2)


def test_kinds():
    assert admissibility_verdict(ParameterSet(3, INF, 0, 8, 7)).kind is Kind.ANTIPODAL_BIPARTITE
    assert admissibility_verdict(ParameterSet(3, INF, 0, 10, 7)).kind is Kind.BIPARTITE
    assert admissibility_verdict(ParameterSet(3, 1, 2, 8, 7)).kind is Kind.ANTIPODAL_NONBIPARTITE
    assert admissibility_verdict(ParameterSet(5, 3, 3, 16, 13)).kind is Kind.PRIMITIVE
    assert admissibility_verdict(ParameterSet(INF, INF, 0, INF, INF)).kind is Kind.BIPARTITE
    assert admissibility_verdict(ParameterSet(INF, 1, INF, INF, INF)).kind is Kind.PRIMITIVE


def test_case_iib_needs_equal_k():
    v = admissibility_verdict(ParameterSet(5, 3, 3, 16, 13))
    assert v.admissible and v.case is Case.IIB
    v = admissibility_verdict(ParameterSet(4, 2, 2, 12, 9))
    assert not v.admissible and v.case is Case.NONE
    assert v.failed_conditions == ("IIB:3K2=2delta-1",)


def test_parity_checked_on_construction():
    with pytest.raises(MalformedParameters):
        ParameterSet(3, 1, 3, 9, 11)
    with pytest.raises(MalformedParameters):
        ParameterSet(3, 1, 3, 10, 12)


def test_acceptability():
    assert is_acceptable(ParameterSet(3, 1, 3, 10, 11))
    assert not is_acceptable(ParameterSet(3, 1, 3, 6, 11))
    assert not is_acceptable(ParameterSet(3, 3, 2, 10, 11))
    assert not is_acceptable(ParameterSet(2, 1, 1, 6, 5))


def test_require_admissible_raises():
    with pytest.raises(NotAdmissible):
        require_admissible(ParameterSet(3, 3, 3, 8, 7))


def test_magic_values():
    p = ParameterSet(5, 3, 3, 16, 13)
    assert magic_bounds(p) == (3, 3)
    assert completion_parameter(p) == 3
    assert magic_set(ParameterSet(4, INF, 0, 12, 9)) == {2}
    assert magic_set(ParameterSet(5, INF, 0, 14, 11)) == {2, 3}
    assert magic_set(ParameterSet(4, 1, 3, 10, 9)) == {2}
    assert valid_completion_parameters(ParameterSet(3, 1, 3, 10, 11)) == [2, 3]


def test_henson_parameter_caps_magic():
    p = ParameterSet(3, 1, 3, 10, 11, (HensonConstraint.clique(4),))
    assert henson_completion_parameter(p) <= p.delta - 1
    q = ParameterSet(3, 2, 3, 10, 11, (HensonConstraint.anticlique(3),))
    assert henson_completion_parameter(q) == 2


def test_henson_constraints():
    h = HensonConstraint((1, 3, 1))
    assert h.clique_sizes == (3, 1, 1) and h.order == 5
    assert HensonConstraint.from_json(h.to_json()) == h
    a = HensonConstraint((4,), antipodal=True)
    assert HensonConstraint.from_json(a.to_json()) == a
    with pytest.raises(MalformedParameters):
        HensonConstraint((2, 2), antipodal=True)
    assert parse_henson("1,1,1;3*") == (HensonConstraint((1, 1, 1)),
                                        HensonConstraint((3,), antipodal=True))


def test_henson_redundant_constraint_rejected():
    # a clique of three needs the triangle 111, which K1 = 2 already forbids
    p = ParameterSet(3, 2, 3, 10, 11, (HensonConstraint.clique(3),))
    v = admissibility_verdict(p)
    assert not v.acceptable and "henson_irredundant" in v.failed_conditions


def test_json_round_trip():
    p = ParameterSet(4, INF, 0, 12, 9)
    assert json.loads(p.dumps())["k1"] == "inf"
    assert ParameterSet.loads(p.dumps()) == p
    q = ParameterSet(3, 1, 3, 10, 11, (HensonConstraint.clique(4),))
    assert ParameterSet.from_json(q.to_json()) == q
    assert str(q) == "(3,1,3,10,11,[4])"


def test_triangle_allowed_matches_bounds():
    p = ParameterSet(5, 3, 3, 16, 13)
    assert triangle_allowed(1, 1, 1, p) is False
    assert triangle_allowed(3, 3, 3, p) is True
    assert triangle_allowed(5, 5, 5, p) is False
    assert triangle_allowed(5, 5, 4, p) is True

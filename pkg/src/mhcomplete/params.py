"""Numerical parameters of 3-constrained metric classes.

A class is described by ``(delta, K1, K2, C0, C1, S)``.  Triangles are
forbidden by the numerical bounds and the optional set ``S`` forbids
``(1, delta)``-spaces (Henson constraints).  This module decides which tuples
describe amalgamation classes, computes magic distances, and enumerates all
admissible tuples for a fixed diameter.

Infinity is ``math.inf``; it compares above every integer and saturates
under addition, which is all the arithmetic below needs.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import MalformedParameters, NotAdmissible

INF = math.inf

#: Largest diameter accepted by :func:`enumerate_admissible`.
DELTA_BOUND = 16


class Case(str, enum.Enum):
    I = "I"
    II = "II"  # only used for infinite diameter
    IIA = "IIA"
    IIB = "IIB"
    III = "III"
    NONE = "NONE"


class Kind(str, enum.Enum):
    PRIMITIVE = "PRIMITIVE"
    BIPARTITE = "BIPARTITE"
    ANTIPODAL_NONBIPARTITE = "ANTIPODAL_NONBIPARTITE"
    ANTIPODAL_BIPARTITE = "ANTIPODAL_BIPARTITE"
    NONE = "NONE"


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _check_value(name: str, x, allow_inf: bool = True):
    if x == INF and allow_inf:
        return INF
    if not _is_int(x):
        raise MalformedParameters(f"{name} must be an integer or inf, got {x!r}")
    return x


@dataclass(frozen=True, order=True)
class HensonConstraint:
    """A forbidden ``(1, delta)``-space given by its clique sizes.

    Cliques are the classes of the relation ``d <= 1``; distinct cliques sit
    at mutual distance ``delta``.  With ``antipodal`` set, the constraint is a
    single clique together with all of its antipodal companions, which is the
    only shape allowed when ``C = 2*delta + 1``.
    """

    clique_sizes: tuple[int, ...]
    antipodal: bool = False

    def __post_init__(self):
        sizes = tuple(sorted((int(s) for s in self.clique_sizes), reverse=True))
        if not sizes or any(s < 1 for s in sizes):
            raise MalformedParameters("clique sizes must be positive integers")
        if self.antipodal and len(sizes) != 1:
            raise MalformedParameters("an antipodal constraint is a single clique")
        object.__setattr__(self, "clique_sizes", sizes)

    @property
    def order(self) -> int:
        return sum(self.clique_sizes)

    def distance_triples(self, delta: int) -> set[tuple[int, int, int]]:
        """Sorted distance triples of all triangles inside the constraint."""
        if self.antipodal:
            # companions split the clique into two blocks at distance delta-1
            far = delta - 1
            n = self.clique_sizes[0]
            return {(1, 1, 1), (1, far, far)} if n >= 3 else set()
        out = set()
        sizes = self.clique_sizes
        if sizes[0] >= 3:
            out.add((1, 1, 1))
        if sizes[0] >= 2 and len(sizes) >= 2:
            out.add((1, delta, delta))
        if len(sizes) >= 3:
            out.add((delta, delta, delta))
        return out

    def to_json(self):
        if self.antipodal:
            return {"cliques": list(self.clique_sizes), "antipodal": True}
        return list(self.clique_sizes)

    @classmethod
    def from_json(cls, obj) -> "HensonConstraint":
        if isinstance(obj, dict):
            return cls(tuple(obj["cliques"]), bool(obj.get("antipodal", False)))
        return cls(tuple(obj))

    @classmethod
    def clique(cls, n: int) -> "HensonConstraint":
        return cls((n,))

    @classmethod
    def anticlique(cls, n: int) -> "HensonConstraint":
        return cls((1,) * n)


@dataclass(frozen=True)
class ParameterSet:
    """The tuple ``(delta, K1, K2, C0, C1, S)``.

    Only field types and the parities of ``C0``/``C1`` are checked on
    construction; acceptability is a separate question.  Engines routinely
    build non-acceptable tuples (for instance the diameter ``delta - 1``
    class used to complete the pode of an antipodal space).
    """

    delta: int | float
    k1: int | float
    k2: int | float
    c0: int | float
    c1: int | float
    henson: tuple[HensonConstraint, ...] = field(default=())

    def __post_init__(self):
        for name in ("delta", "k1", "k2", "c0", "c1"):
            object.__setattr__(self, name, _check_value(name, getattr(self, name)))
        if self.c0 != INF and self.c0 % 2 != 0:
            raise MalformedParameters(f"C0 must be even, got {self.c0}")
        if self.c1 != INF and self.c1 % 2 != 1:
            raise MalformedParameters(f"C1 must be odd, got {self.c1}")
        hs = tuple(sorted(
            h if isinstance(h, HensonConstraint) else HensonConstraint.from_json(h)
            for h in self.henson))
        object.__setattr__(self, "henson", hs)

    @property
    def C(self):
        return min(self.c0, self.c1)

    @property
    def Cp(self):
        return max(self.c0, self.c1)

    @property
    def numeric(self) -> tuple:
        return (self.delta, self.k1, self.k2, self.c0, self.c1)

    def with_henson(self, henson: Iterable[HensonConstraint]) -> "ParameterSet":
        return ParameterSet(*self.numeric, henson=tuple(henson))

    def label(self) -> str:
        parts = ",".join(_fmt(x) for x in self.numeric)
        if self.henson:
            hs = ";".join("+".join(map(str, h.clique_sizes)) + ("*" if h.antipodal else "")
                          for h in self.henson)
            return f"({parts},[{hs}])"
        return f"({parts})"

    def __str__(self):
        return self.label()

    def to_json(self) -> dict:
        return {
            "delta": _enc(self.delta),
            "k1": _enc(self.k1),
            "k2": _enc(self.k2),
            "c0": _enc(self.c0),
            "c1": _enc(self.c1),
            "henson": [h.to_json() for h in self.henson],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ParameterSet":
        try:
            return cls(
                _dec(obj["delta"]), _dec(obj["k1"]), _dec(obj["k2"]),
                _dec(obj["c0"]), _dec(obj["c1"]),
                tuple(HensonConstraint.from_json(h) for h in obj.get("henson", [])),
            )
        except (KeyError, TypeError) as exc:
            raise MalformedParameters(f"bad parameter object: {exc}") from exc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "ParameterSet":
        return cls.from_json(json.loads(text))


def _fmt(x) -> str:
    return "inf" if x == INF else str(x)


def _enc(x):
    return "inf" if x == INF else x


def _dec(x):
    if isinstance(x, str):
        if x.lower() in ("inf", "infinity", "∞"):
            return INF
        raise MalformedParameters(f"unknown value {x!r}")
    return x


@dataclass(frozen=True)
class AdmissibilityVerdict:
    acceptable: bool
    admissible: bool
    case: Case
    kind: Kind
    failed_conditions: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "acceptable": self.acceptable,
            "admissible": self.admissible,
            "case": self.case.value,
            "kind": self.kind.value,
            "failed_conditions": list(self.failed_conditions),
        }


# -- acceptability -----------------------------------------------------------

def _infinite_failures(p: ParameterSet) -> list[str]:
    if p.k1 == INF:
        ok = p.k2 == 0 and p.c0 == INF and p.c1 == INF
    else:
        ok = p.k1 >= 1 and p.k2 == INF and p.c0 == INF and p.c1 == INF
    out = [] if ok else ["infinite_diameter_shape"]
    if p.henson:
        out.append("henson_infinite_diameter")
    return out


def _numeric_failures(p: ParameterSet) -> list[str]:
    if p.delta == INF:
        return _infinite_failures(p)
    d = p.delta
    out = []
    if d < 3:
        out.append("delta>=3")
    if p.k1 == INF:
        if p.k2 != 0:
            out.append("K1=inf=>K2=0")
        if p.c1 != 2 * d + 1:
            out.append("K1=inf=>C1=2delta+1")
    elif not (1 <= p.k1 <= p.k2 <= 2 * d):
        out.append("1<=K1<=K2<=2delta")
    for name, c in (("C0", p.c0), ("C1", p.c1)):
        if not (2 * d < c <= 3 * d + 2):
            out.append(f"2delta<{name}<=3delta+2")
    return out


def _is_one_delta_metric(h: HensonConstraint, p: ParameterSet) -> bool:
    return all(triangle_allowed(*t, p) for t in h.distance_triples(p.delta))


def _henson_acceptability_failures(p: ParameterSet) -> list[str]:
    if not p.henson or p.delta == INF:
        return []
    d = p.delta
    out = []
    antipodal_shape = p.c1 == 2 * d + 1 and p.c0 == 2 * d + 2
    for h in p.henson:
        if h.antipodal and not antipodal_shape:
            out.append("henson_shape")
        if not h.antipodal and antipodal_shape:
            out.append("henson_shape")
        if not h.antipodal and d < 3:
            out.append("henson_shape")
        if h.order < 3:
            out.append("henson_order")
        if not _is_one_delta_metric(h, p):
            out.append("henson_irredundant")
    return sorted(set(out))


def is_acceptable(p: ParameterSet) -> bool:
    """Whether ``p`` satisfies the basic range and parity requirements."""
    if p.c0 != INF and p.c0 % 2:
        raise MalformedParameters("C0 must be even")
    if p.c1 != INF and p.c1 % 2 == 0:
        raise MalformedParameters("C1 must be odd")
    return not _numeric_failures(p) and not _henson_acceptability_failures(p)


# -- admissibility -----------------------------------------------------------

def _numeric_case(p: ParameterSet) -> tuple[Case, list[str]]:
    d, k1, k2 = p.delta, p.k1, p.k2
    C, Cp = p.C, p.Cp
    if k1 == INF:
        return Case.I, []
    if C <= 2 * d + k1:
        failed = []
        if C != 2 * k1 + 2 * k2 + 1:
            failed.append("II:C=2K1+2K2+1")
        if k1 + k2 < d:
            failed.append("II:K1+K2>=delta")
        if k1 + 2 * k2 > 2 * d - 1:
            failed.append("II:K1+2K2<=2delta-1")
        if Cp == C + 1:
            return (Case.IIA, []) if not failed else (Case.NONE, failed)
        if k1 != k2:
            failed.append("IIB:K1=K2")
        if 3 * k2 != 2 * d - 1:
            failed.append("IIB:3K2=2delta-1")
        return (Case.IIB, []) if not failed else (Case.NONE, failed)
    failed = []
    if k1 + 2 * k2 < 2 * d - 1:
        failed.append("III:K1+2K2>=2delta-1")
    if 3 * k2 < 2 * d:
        failed.append("III:3K2>=2delta")
    if k1 + 2 * k2 == 2 * d - 1 and C < 2 * d + k1 + 2:
        failed.append("III:C>=2delta+K1+2")
    if Cp > C + 1 and C < 2 * d + k2:
        failed.append("III:C>=2delta+K2")
    return (Case.III, []) if not failed else (Case.NONE, failed)


def _kind(p: ParameterSet) -> Kind:
    if p.delta == INF:
        return Kind.BIPARTITE if p.k1 == INF else Kind.PRIMITIVE
    d = p.delta
    if p.k1 == INF:
        return Kind.ANTIPODAL_BIPARTITE if p.c0 == 2 * d + 2 else Kind.BIPARTITE
    if p.C == 2 * d + 1:
        return Kind.ANTIPODAL_NONBIPARTITE
    return Kind.PRIMITIVE


def _henson_admissibility_failures(p: ParameterSet, case: Case) -> list[str]:
    if not p.henson:
        return []
    d = p.delta
    out = []
    if p.C == 2 * d + 1 and p.k1 != INF:
        if d < 4:
            out.append("henson:delta>=4")
        if not all(h.antipodal for h in p.henson):
            out.append("henson:antipodal_clique")
    if case is Case.III:
        if p.k1 == d:
            out.append("henson:K1=delta=>S=empty")
        if p.C == 2 * d + 2:
            out.append("henson:C=2delta+2=>S=empty")
    return out


def admissibility_verdict(p: ParameterSet) -> AdmissibilityVerdict:
    """Classify ``p`` into the amalgamation cases I, IIA, IIB, III or NONE."""
    failed = _numeric_failures(p) + _henson_acceptability_failures(p)
    if failed:
        return AdmissibilityVerdict(False, False, Case.NONE, Kind.NONE, tuple(failed))
    if p.delta == INF:
        case = Case.I if p.k1 == INF else Case.II
        return AdmissibilityVerdict(True, True, case, _kind(p))
    case, failed = _numeric_case(p)
    if case is Case.NONE:
        return AdmissibilityVerdict(True, False, Case.NONE, Kind.NONE, tuple(failed))
    failed = _henson_admissibility_failures(p, case)
    if failed:
        return AdmissibilityVerdict(True, False, Case.NONE, Kind.NONE, tuple(failed))
    return AdmissibilityVerdict(True, True, case, _kind(p))


def require_admissible(p: ParameterSet) -> AdmissibilityVerdict:
    v = admissibility_verdict(p)
    if not v.admissible:
        raise NotAdmissible(f"{p} is not admissible: {', '.join(v.failed_conditions)}")
    return v


# -- triangles ---------------------------------------------------------------

def triangle_allowed(a, b, c, p: ParameterSet) -> bool:
    """Fast boolean form of the triangle test (see ``graph.triangle_verdict``)."""
    a, b, c = sorted((a, b, c))
    if a + b < c:
        return False
    per = a + b + c
    if per % 2:
        return not (per < 2 * p.k1 + 1 or b + c >= 2 * p.k2 + a or per >= p.c1)
    return per < p.c0


# -- magic distances ---------------------------------------------------------

def magic_bounds(p: ParameterSet) -> tuple[int, int]:
    """Raw interval bounds ``(M_min, M_max)`` of the primitive magic range.

    These are the values printed in the appendix tables; for antipodal
    classes the interval is empty (``M_min > M_max``).
    """
    d = p.delta
    return max(p.k1, math.ceil(d / 2)), min(p.k2, (p.C - d - 1) // 2)


def magic_set(p: ParameterSet) -> set[int]:
    """All magic distances of an admissible class of finite diameter."""
    v = require_admissible(p)
    if p.delta == INF:
        raise NotAdmissible("magic distances need a finite diameter")
    d = p.delta
    if v.kind is Kind.PRIMITIVE:
        lo, hi = magic_bounds(p)
        return set(range(lo, hi + 1))
    if v.kind is Kind.BIPARTITE:
        hi = (p.c0 - d - 1) // 2 - 1
        return set(range(d // 2, hi + 1))
    return {d // 2}


def _extra_conditions(p: ParameterSet, case: Case, m: int) -> bool:
    if case is not Case.III:
        return True
    d = p.delta
    if p.k1 + 2 * p.k2 == 2 * d - 1 and not m > p.k1:
        return False
    if p.Cp > p.C + 1 and p.C == 2 * d + p.k2 and not m < p.k2:
        return False
    return True


def valid_completion_parameters(p: ParameterSet) -> list[int]:
    """Magic distances usable by the completion algorithm, ascending."""
    v = require_admissible(p)
    ms = sorted(magic_set(p))
    if v.kind is not Kind.PRIMITIVE:
        return ms
    return [m for m in ms if _extra_conditions(p, v.case, m)]


def completion_parameter(p: ParameterSet) -> int:
    """The smallest magic distance usable by the completion algorithm."""
    ms = valid_completion_parameters(p)
    if not ms:
        raise NotAdmissible(f"{p} has no usable magic distance")
    return ms[0]


def henson_completion_parameter(p: ParameterSet) -> int:
    """Completion parameter that never introduces distances 1 or delta.

    Without Henson constraints this is :func:`completion_parameter`.
    """
    v = require_admissible(p)
    if not p.henson:
        return completion_parameter(p)
    d = p.delta
    cap = d - 2 if v.kind is Kind.BIPARTITE else d - 1
    ms = [m for m in valid_completion_parameters(p) if m <= cap]
    if not ms:
        raise NotAdmissible(f"{p} has no magic distance avoiding 1 and delta")
    return ms[0]


# -- enumeration -------------------------------------------------------------

def enumerate_admissible(
    delta: int, include_bipartite: bool = True, bound: int = DELTA_BOUND
) -> list[tuple[ParameterSet, AdmissibilityVerdict]]:
    """All admissible numerical tuples of diameter ``delta``.

    ``K2`` ranges only up to ``delta``: every larger value forbids the same
    triangles as ``K2 = delta`` (the K2-bound needs ``b + c >= 2*K2 + a``,
    impossible once ``K2 >= delta``), so scanning further would only repeat
    classes.  Rows with ``K1 = inf`` come first, the rest are ordered by
    ``(K1, K2, C0, C1)``.
    """
    if not _is_int(delta) or not 3 <= delta <= bound:
        raise MalformedParameters(f"delta must be an integer in [3, {bound}]")
    d = delta
    c0s = [c for c in range(2 * d + 1, 3 * d + 3) if c % 2 == 0]
    c1s = [c for c in range(2 * d + 1, 3 * d + 3) if c % 2 == 1]
    rows = []
    if include_bipartite:
        for c0 in c0s:
            p = ParameterSet(d, INF, 0, c0, 2 * d + 1)
            v = admissibility_verdict(p)
            if v.admissible:
                rows.append((p, v))
    for k1 in range(1, d + 1):
        for k2 in range(k1, d + 1):
            for c0 in c0s:
                for c1 in c1s:
                    p = ParameterSet(d, k1, k2, c0, c1)
                    v = admissibility_verdict(p)
                    if v.admissible:
                        rows.append((p, v))
    return rows


def parse_henson(spec: str | Sequence) -> tuple[HensonConstraint, ...]:
    """Parse a compact constraint list such as ``"4"`` or ``"1,1,1;3*"``.

    Constraints are separated by ``;``; each lists clique sizes separated by
    commas.  A trailing ``*`` marks the antipodal-clique form.
    """
    if not isinstance(spec, str):
        return tuple(HensonConstraint.from_json(h) for h in spec)
    out = []
    for chunk in filter(None, (c.strip() for c in spec.split(";"))):
        anti = chunk.endswith("*")
        chunk = chunk.rstrip("*")
        try:
            sizes = tuple(int(s) for s in chunk.split(","))
        except ValueError as exc:
            raise MalformedParameters(f"bad Henson constraint {chunk!r}") from exc
        out.append(HensonConstraint(sizes, anti))
    return tuple(out)

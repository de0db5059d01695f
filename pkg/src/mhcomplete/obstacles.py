"""Non-completable labelled cycles.

A primitive class with a magic completion has a finite set of obstacles,
all of them cycles: a partial graph has a completion exactly when no
obstacle maps into it homomorphically.  This module lists those cycles up to
a length bound and checks the characterisation on random graphs.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .completion import fork_rules, magic_complete
from .errors import MalformedParameters, NotAdmissible, TooLarge
from .graph import EdgeLabelledGraph, triangle_verdict
from .oracle import Report, has_completion, random_partial_graph
from .params import INF, Kind, ParameterSet, completion_parameter, require_admissible

DEFAULT_MAX_LENGTH = 8


def _variants(labels: Sequence[int]):
    k = len(labels)
    fwd = tuple(labels)
    rev = fwd[::-1]
    for i in range(k):
        yield fwd[i:] + fwd[:i]
        yield rev[i:] + rev[:i]


def canonical(labels: Sequence[int]) -> tuple[int, ...]:
    """Least label sequence over all rotations and reflections."""
    return min(_variants(labels))


@dataclass(frozen=True, order=True)
class LabelledCycle:
    """A cycle of distances, always stored in canonical form."""

    labels: tuple[int, ...]

    def __post_init__(self):
        labels = tuple(int(x) for x in self.labels)
        if len(labels) < 3:
            raise MalformedParameters("a cycle needs at least three edges")
        object.__setattr__(self, "labels", canonical(labels))

    def __len__(self):
        return len(self.labels)

    def __str__(self):
        return " ".join(map(str, self.labels))

    @classmethod
    def parse(cls, text: str) -> "LabelledCycle":
        """Accept ``"1 2 4"`` or, for single-digit labels, ``"124"``."""
        parts = text.split() if " " in text.strip() else list(text.strip())
        return cls(tuple(int(x) for x in parts))

    def graph(self) -> EdgeLabelledGraph:
        return EdgeLabelledGraph.cycle(self.labels)


def canonical_cycles(k: int, delta: int):
    """All canonical label sequences of length ``k`` over ``1..delta``."""
    for seq in itertools.product(range(1, delta + 1), repeat=k):
        # the minimum label must come first in a canonical sequence
        if seq[0] != min(seq):
            continue
        if all(seq <= v for v in _variants(seq)):
            yield seq


class Decider(str, enum.Enum):
    ENGINE = "ENGINE"
    ORACLE = "ORACLE"


def theoretical_bound(delta: int) -> int:
    return 2 ** delta * 3


@dataclass
class ObstacleCatalogue:
    params: ParameterSet
    max_length: int
    decider: Decider
    by_length: dict[int, list[LabelledCycle]] = field(default_factory=dict)

    def cycles(self) -> list[LabelledCycle]:
        return [c for k in sorted(self.by_length) for c in self.by_length[k]]

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "bound_theoretical": theoretical_bound(self.params.delta),
            "max_length": self.max_length,
            "decider": self.decider.value,
            "cycles": {str(k): [str(c) for c in cs] for k, cs in sorted(self.by_length.items())},
        }

    @classmethod
    def from_json(cls, obj) -> "ObstacleCatalogue":
        p = ParameterSet.from_json(obj["params"])
        by = {int(k): [LabelledCycle.parse(s) for s in cs] for k, cs in obj["cycles"].items()}
        return cls(p, obj["max_length"], Decider(obj["decider"]), by)


def _completable(labels, p: ParameterSet, M: int, decider: Decider) -> bool:
    g = EdgeLabelledGraph.cycle(labels)
    if decider is Decider.ENGINE:
        return magic_complete(g, p, M).ok
    return has_completion(g, p, max_unknown=None)


def enumerate_obstacles(p: ParameterSet, max_len: int, decider: Decider | str = Decider.ENGINE,
                        cap: int = DEFAULT_MAX_LENGTH, M: int | None = None) -> ObstacleCatalogue:
    """Every canonical non-completable cycle with ``3..max_len`` edges."""
    v = require_admissible(p)
    if v.kind is not Kind.PRIMITIVE or p.delta == INF:
        raise NotAdmissible("obstacle catalogues are built for primitive classes")
    decider = Decider(decider)
    if max_len > min(theoretical_bound(p.delta), cap):
        raise TooLarge(f"max_len {max_len} exceeds the cap {min(theoretical_bound(p.delta), cap)}")
    if M is None:
        M = completion_parameter(p)
    cat = ObstacleCatalogue(p, max_len, decider)
    for k in range(3, max_len + 1):
        cat.by_length[k] = [LabelledCycle(seq) for seq in canonical_cycles(k, p.delta)
                            if not _completable(seq, p, M, decider)]
    return cat


def backward_expand(triangle: LabelledCycle | Sequence[int], p: ParameterSet,
                    M: int | None = None) -> set[LabelledCycle]:
    """Four-cycles obtained by opening one side of a forbidden triangle.

    A side ``x`` is replaced by each fork ``(a, b)`` that a fork rule closes
    to ``x``.  The results are only candidates: the engine may still
    complete some of them along a different route.
    """
    labels = triangle.labels if isinstance(triangle, LabelledCycle) else tuple(triangle)
    if len(labels) != 3:
        raise MalformedParameters("backward expansion starts from a triangle")
    if triangle_verdict(*labels, p).allowed:
        raise MalformedParameters(f"triangle {labels} is not forbidden")
    if M is None:
        M = completion_parameter(p)
    rules = fork_rules(p, M)
    out = set()
    for i, x in enumerate(labels):
        for rule in rules:
            if rule.target != x:
                continue
            for a, b in rule.pairs:
                for fork in {(a, b), (b, a)}:
                    out.add(LabelledCycle(labels[:i] + fork + labels[i + 1:]))
    return out


def has_closed_walk(g: EdgeLabelledGraph, labels: Sequence[int]) -> bool:
    """Whether some closed walk in ``g`` reads ``labels`` (either direction)."""
    adj: dict[tuple[int, int], list[int]] = {}
    for (u, v), x in g.edges.items():
        adj.setdefault((u, x), []).append(v)
        adj.setdefault((v, x), []).append(u)
    for seq in (tuple(labels), tuple(labels)[::-1]):
        for start in range(g.n):
            reach = {start}
            for x in seq:
                reach = {y for r in reach for y in adj.get((r, x), ())}
                if not reach:
                    break
            if start in reach:
                return True
    return False


def verify_obstacle_closure(p: ParameterSet, catalogue: ObstacleCatalogue, samples: int,
                            seed: int, max_vertices: int = 6) -> Report:
    """Graphs with no obstacle image must be completed by the engine."""
    M = completion_parameter(p)
    rng = random.Random(seed)
    cycles = catalogue.cycles()
    rep = Report()
    free = 0
    for _ in range(samples):
        g = random_partial_graph(rng, p.delta, max_vertices)
        blocked = any(has_closed_walk(g, c.labels) for c in cycles)
        rep.checked += 1
        if blocked:
            continue
        free += 1
        if not magic_complete(g, p, M).ok:
            rep.violations.append({"graph": g.to_json(), "clause": "obstacle-free but not completed"})
    rep.skipped.append(f"{rep.checked - free} samples contained an obstacle image")
    return rep

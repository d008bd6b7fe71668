"""
Union-overlap event framework, used as a comparison baseline.

Five events between consecutive timeframes: continue (identical member sets),
dissolve / new-born (no member present in the next / previous snapshot), and
pairwise merge / split, where the union of two groups on one side covers more
than `overlap_threshold` of a single group on the other side.  Labels use the
same names as GED (continuing, dissolving, forming, merging, splitting).

On overlapping groups the rules can fire together on one pair;
`find_anomalies` reports those conflicts.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .community import Group
from .ged import EventRecord, EventType


@dataclass(frozen=True)
class AsurConfig:
    overlap_threshold: float = 0.5

    def __post_init__(self):
        if not 0 < self.overlap_threshold <= 1:
            raise ValueError("overlap_threshold must lie in (0, 1]")


def _pair_union_events(sources: Sequence[Group], targets: Sequence[Group], threshold: float):
    """Yield (source, target, coverage) for every unordered source pair covering a target.

    Both sources of a pair must share at least one member with the target;
    coverage is measured against the target's size and must exceed the threshold.
    """
    for t in targets:
        touching = [s for s in sources if not s.members.isdisjoint(t.members)]
        for s1, s2 in combinations(touching, 2):
            cover = len((s1.members | s2.members) & t.members) / len(t.members)
            if cover > threshold:
                yield s1, s2, t, cover


def asur_events(groups_i: Sequence[Group], groups_i1: Sequence[Group],
                nodes_i: Iterable, nodes_i1: Iterable,
                config: AsurConfig = AsurConfig()) -> list[EventRecord]:
    nodes_i, nodes_i1 = set(nodes_i), set(nodes_i1)
    frames = {g.timeframe for g in groups_i} | {g.timeframe - 1 for g in groups_i1}
    if len(frames) > 1:
        raise ValueError("groups must come from two consecutive timeframes")
    t = frames.pop() if frames else 0
    found: dict = {}

    def add(src, dst, label, fwd=0.0, bwd=0.0):
        e = EventRecord(t, src.id if src else None, t + 1, dst.id if dst else None, label, fwd, bwd)
        found.setdefault(e.key(), e)

    for g in groups_i:
        if g.members.isdisjoint(nodes_i1):
            add(g, None, EventType.DISSOLVING)
    for h in groups_i1:
        if h.members.isdisjoint(nodes_i):
            add(None, h, EventType.FORMING)

    by_members = defaultdict(list)
    for h in groups_i1:
        by_members[h.members].append(h)
    for g in groups_i:
        for h in by_members.get(g.members, ()):
            add(g, h, EventType.CONTINUING, 1.0, 1.0)

    thr = config.overlap_threshold
    for s1, s2, target, cover in _pair_union_events(groups_i, groups_i1, thr):
        for s in (s1, s2):
            add(s, target, EventType.MERGING, _frac(s, target), cover)
    for s1, s2, source, cover in _pair_union_events(groups_i1, groups_i, thr):
        for s in (s1, s2):
            add(source, s, EventType.SPLITTING, cover, _frac(s, source))
    return sorted(found.values(), key=EventRecord.key)


def _frac(a: Group, b: Group) -> float:
    """Share of `a` found in `b`."""
    return len(a.members & b.members) / len(a.members)


def asur_run(groups: Sequence[Sequence[Group]], snapshots, config: AsurConfig = AsurConfig()) -> list[EventRecord]:
    events = []
    for t in range(len(groups) - 1):
        events.extend(asur_events(groups[t], groups[t + 1],
                                  snapshots[t].nodes, snapshots[t + 1].nodes, config))
    return events


@dataclass(frozen=True)
class Anomaly:
    timeframe_from: int
    group_from: str
    group_to: str
    labels: frozenset

    @property
    def kind(self) -> str:
        return "+".join(sorted(self.labels))

    def as_dict(self) -> dict:
        return {"timeframe_from": self.timeframe_from, "group_from": self.group_from,
                "group_to": self.group_to, "kind": self.kind}


_CONFLICTING = {EventType.CONTINUING, EventType.MERGING, EventType.SPLITTING}


def find_anomalies(events: Iterable[EventRecord]) -> list[Anomaly]:
    """Pairs of groups carrying two or more of continue / merge / split at once."""
    labels = defaultdict(set)
    for e in events:
        if e.group_from is not None and e.group_to is not None and e.event in _CONFLICTING:
            labels[e.timeframe_from, e.group_from, e.group_to].add(EventType(e.event).value)
    return [Anomaly(t, a, b, frozenset(ls))
            for (t, a, b), ls in sorted(labels.items()) if len(ls) > 1]

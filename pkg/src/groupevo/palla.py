"""
Joined-graph group matching (via CPM on the union of two snapshots), used as a second baseline.

Two consecutive snapshots are merged into one undirected graph and grouped
with CPM.  Groups of either timeframe that sit inside the same joined group
are candidate matches and are paired greedily by decreasing Jaccard overlap.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

import networkx as nx

from .community import Group, GroupingConfig, enumerate_k_cliques, groups_from_sets, percolate
from .ged import EventRecord, EventType
from .tsn import EITHER, SnapshotGraph, symmetrize


@dataclass(frozen=True, eq=False)
class JoinedGraph:
    index_pair: tuple
    graph: nx.Graph


def join_snapshots(g_i: SnapshotGraph, g_i1: SnapshotGraph, mode: str = EITHER) -> JoinedGraph:
    q = nx.compose(symmetrize(g_i, mode), symmetrize(g_i1, mode))
    return JoinedGraph((g_i.index, g_i1.index), q)


def joined_groups(joined: JoinedGraph, k: int) -> list[Group]:
    """CPM groups of the joined graph; ids carry the earlier timeframe."""
    sets = percolate(enumerate_k_cliques(joined.graph, k), k)
    return groups_from_sets(joined.index_pair[0], sets)


def jaccard(a: Group, b: Group) -> float:
    return len(a.members & b.members) / len(a.members | b.members)


@dataclass
class PallaResult:
    pairs: list                     # (group_i, group_i1, jaccard)
    events: list
    containment_rate: float         # share of groups from both sides placed in a joined group
    uncontained: list = field(default_factory=list)


def _assign(g: Group, joined: Sequence[Group], containment: float):
    scored = [(len(g.members & j.members) / len(g.members), j) for j in joined]
    scored = [c for c in scored if c[0] >= containment]
    if not scored:
        return None
    return min(scored, key=lambda c: (-c[0], c[1].id))[1]


def palla_match(groups_i: Sequence[Group], groups_i1: Sequence[Group],
                joined: Sequence[Group] | None, k: int | None = None,
                containment: float = 0.5) -> PallaResult:
    """Match groups of two timeframes through the joined-graph groups.

    Each group is placed in the joined group holding the largest share of its
    members, if that share reaches `containment`.  Within a joined group,
    cross-timeframe pairs are matched greedily by decreasing Jaccard overlap
    (ties by group id), each group at most once.  Matched pairs grow, shrink or
    continue by size; extra earlier groups in the same joined group merge into
    their best-overlapping later group, extra later groups split off their best
    earlier group; everything else is a death or a birth.
    """
    if joined is None:
        raise ValueError("joined grouping required")
    frames = {g.timeframe for g in groups_i} | {g.timeframe - 1 for g in groups_i1}
    if len(frames) > 1:
        raise ValueError("groups must come from two consecutive timeframes")
    t = frames.pop() if frames else 0

    if k is not None and any(len(j) < k for j in joined):
        raise ValueError(f"joined groups smaller than k={k}; were they extracted with the same k?")

    side_i = defaultdict(list)
    side_i1 = defaultdict(list)
    uncontained = []
    for groups, side in ((groups_i, side_i), (groups_i1, side_i1)):
        for g in groups:
            j = _assign(g, joined, containment)
            if j is None:
                uncontained.append(g)
            else:
                side[j.id].append(g)
    total = len(groups_i) + len(groups_i1)
    rate = 1.0 - len(uncontained) / total if total else 1.0

    pairs, events = [], []
    matched_i, matched_i1 = set(), set()
    for jid in sorted(set(side_i) & set(side_i1)):
        cands = sorted(((jaccard(a, b), a, b) for a in side_i[jid] for b in side_i1[jid]),
                       key=lambda c: (-c[0], c[1].id, c[2].id))
        for ov, a, b in cands:
            if a.id in matched_i or b.id in matched_i1:
                continue
            matched_i.add(a.id)
            matched_i1.add(b.id)
            pairs.append((a, b, ov))
            if len(a) == len(b):
                label = EventType.CONTINUING
            else:
                label = EventType.GROWING if len(b) > len(a) else EventType.SHRINKING
            events.append(EventRecord(t, a.id, t + 1, b.id, label, ov, ov))
        for a in side_i[jid]:
            if a.id not in matched_i:
                ov, b = min(((jaccard(a, b), b) for b in side_i1[jid]),
                            key=lambda c: (-c[0], c[1].id))
                events.append(EventRecord(t, a.id, t + 1, b.id, EventType.MERGING, ov, ov))
                matched_i.add(a.id)
        for b in side_i1[jid]:
            if b.id not in matched_i1:
                ov, a = min(((jaccard(a, b), a) for a in side_i[jid]),
                            key=lambda c: (-c[0], c[1].id))
                events.append(EventRecord(t, a.id, t + 1, b.id, EventType.SPLITTING, ov, ov))
                matched_i1.add(b.id)
    for a in groups_i:
        if a.id not in matched_i:
            events.append(EventRecord(t, a.id, t + 1, None, EventType.DISSOLVING))
    for b in groups_i1:
        if b.id not in matched_i1:
            events.append(EventRecord(t, None, t + 1, b.id, EventType.FORMING))
    events.sort(key=EventRecord.key)
    return PallaResult(pairs, events, rate, uncontained)


def palla_run(groups: Sequence[Sequence[Group]], snapshots, grouping: GroupingConfig,
              containment: float = 0.5) -> list[PallaResult]:
    out = []
    for t in range(len(groups) - 1):
        jg = join_snapshots(snapshots[t], snapshots[t + 1], grouping.symmetrize_mode)
        out.append(palla_match(groups[t], groups[t + 1], joined_groups(jg, grouping.k),
                               grouping.k, containment))
    return out

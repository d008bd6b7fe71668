"""
Group evolution discovery (GED).

For every pair of groups in consecutive timeframes two importance-weighted
inclusions are computed, and a decision tree over the inclusions, the group
sizes and the number of matching partners assigns at most one event per pair.
Groups with no meaningful counterpart on the other side are dissolving or
forming.
"""

from __future__ import annotations

import enum
import warnings
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .community import Group
from .position import DEFAULT_EPSILON, group_sp
from .tsn import SnapshotGraph


class EventType(str, enum.Enum):
    FORMING = "forming"
    DISSOLVING = "dissolving"
    SHRINKING = "shrinking"
    GROWING = "growing"
    CONTINUING = "continuing"
    SPLITTING = "splitting"
    MERGING = "merging"
    NA1 = "NA1"
    NA2 = "NA2"

    def __str__(self):
        return self.value


# column order of summary tables
EVENT_COLUMNS = tuple(EventType)


@dataclass(frozen=True)
class GedConfig:
    """Thresholds of the decision tree.

    `literal_match_direction` switches rules b-e to the match counts as they
    are literally worded (G2's backward matches for shrink/split, G1's forward
    matches for grow/merge).  The default counts the matches of the side that
    fans out: a group splitting has several successors, a merged group several
    predecessors.
    """

    alpha: float = 0.5
    beta: float = 0.5
    absence_threshold: float = 0.10
    literal_match_direction: bool = False

    def __post_init__(self):
        for name in ("alpha", "beta", "absence_threshold"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name}={v} outside [0, 1]")
        if not (0.5 <= self.alpha <= 1.0 and 0.5 <= self.beta <= 1.0):
            warnings.warn(f"alpha={self.alpha}, beta={self.beta}: values in [0.5, 1] "
                          "are recommended", stacklevel=2)


@dataclass(frozen=True)
class EventRecord:
    timeframe_from: int
    group_from: str | None
    timeframe_to: int
    group_to: str | None
    event: str
    inclusion_forward: float = 0.0
    inclusion_backward: float = 0.0

    def key(self) -> tuple:
        return (self.timeframe_from, self.group_from or "", self.group_to or "", str(self.event))

    def as_dict(self) -> dict:
        return {
            "timeframe_from": self.timeframe_from,
            "group_from": self.group_from,
            "timeframe_to": self.timeframe_to,
            "group_to": self.group_to,
            "event": str(self.event),
            "inclusion_forward": self.inclusion_forward,
            "inclusion_backward": self.inclusion_backward,
        }


@dataclass
class Diagnostics:
    """Side channel for things a run should report but not fail on."""

    nonconverged: list = field(default_factory=list)   # (timeframe, group_id, residual)
    unrelated_pairs: list = field(default_factory=list)  # (timeframe, g1, g2, i12, i21)

    def extend(self, other: "Diagnostics"):
        self.nonconverged.extend(other.nonconverged)
        self.unrelated_pairs.extend(other.unrelated_pairs)


def inclusion(g1_members: Iterable, g2_members: Iterable, importance_g1: Mapping) -> float:
    """Inclusion of G1 in G2 weighted by G1's member importance.

    ``|G1 & G2| / |G1|`` times the share of G1's importance held by the common
    members.  Not symmetric.
    """
    g1 = set(g1_members)
    if not g1:
        raise ValueError("G1 is empty")
    common = g1.intersection(g2_members)
    total = shared = 0.0
    for x in g1:
        try:
            v = importance_g1[x]
        except KeyError:
            raise ValueError(f"no importance for member {x!r}") from None
        if not v > 0:
            raise ValueError(f"importance of {x!r} must be positive, got {v}")
        total += v
        if x in common:
            shared += v
    return (len(common) / len(g1)) * (shared / total)


ImportanceProvider = Callable[[Group], Mapping]


def _is_match(i_early_late: float, i_late_early: float, config: GedConfig) -> bool:
    return i_early_late >= config.alpha or i_late_early >= config.beta


def count_matches(g: Group, candidates: Sequence[Group], config: GedConfig,
                  importance: ImportanceProvider) -> int:
    """Number of adjacent-timeframe groups that match `g`.

    Groups H (earlier) and G (later) match when I(H, G) >= alpha or
    I(G, H) >= beta.  Which of `g` and the candidates is earlier is read from
    their timeframes.
    """
    n = 0
    for h in candidates:
        if h.timeframe < g.timeframe:
            early, late = h, g
        elif h.timeframe > g.timeframe:
            early, late = g, h
        else:
            raise ValueError("candidates must come from an adjacent timeframe")
        i_el = inclusion(early.members, late.members, importance(early))
        i_le = inclusion(late.members, early.members, importance(late))
        n += _is_match(i_el, i_le, config)
    return n


def classify_pair(g1: Group, g2: Group, i12: float, i21: float,
                  matches_backward: int, matches_forward: int,
                  config: GedConfig = GedConfig()) -> EventType | None:
    """Event for the pair (G1 at T_i, G2 at T_i+1), or None.

    `matches_backward` counts the T_i groups matching G2, `matches_forward`
    the T_i+1 groups matching G1.
    """
    return _classify(len(g1), len(g2), i12, i21, matches_backward, matches_forward, config)


def _classify(n1, n2, i12, i21, back, fwd, config) -> EventType | None:
    a = i12 >= config.alpha
    b = i21 >= config.beta
    if a and b:
        if n1 == n2:
            return EventType.CONTINUING
        return EventType.SHRINKING if n1 > n2 else EventType.GROWING
    if not a and b:
        if n1 < n2:
            return EventType.NA2
        m = back if config.literal_match_direction else fwd
        if m == 1:
            return EventType.SHRINKING
        return EventType.SPLITTING if m > 1 else None
    if a and not b:
        if n1 > n2:
            return EventType.NA1
        m = fwd if config.literal_match_direction else back
        if m == 1:
            return EventType.GROWING
        return EventType.MERGING if m > 1 else None
    return None


@dataclass(frozen=True, eq=False)
class BoundaryInclusions:
    """Both inclusion matrices across one timeframe boundary.

    ``forward[a, b] = I(groups_i[a], groups_i1[b])`` and
    ``backward[a, b] = I(groups_i1[b], groups_i[a])``.  They do not depend on
    the thresholds, so a parameter sweep computes them once.
    """

    timeframe: int
    groups_i: tuple
    groups_i1: tuple
    forward: np.ndarray
    backward: np.ndarray


def boundary_inclusions(timeframe: int, groups_i: Sequence[Group], groups_i1: Sequence[Group],
                        importance: ImportanceProvider) -> BoundaryInclusions:
    fwd = np.zeros((len(groups_i), len(groups_i1)))
    bwd = np.zeros_like(fwd)
    where = defaultdict(list)
    for b, h in enumerate(groups_i1):
        for m in h.members:
            where[m].append(b)
    for a, g in enumerate(groups_i):
        partners = sorted({b for m in g.members for b in where.get(m, ())})
        if not partners:
            continue
        imp_g = importance(g)
        for b in partners:
            h = groups_i1[b]
            fwd[a, b] = inclusion(g.members, h.members, imp_g)
            bwd[a, b] = inclusion(h.members, g.members, importance(h))
    return BoundaryInclusions(timeframe, tuple(groups_i), tuple(groups_i1), fwd, bwd)


def classify_boundary(bi: BoundaryInclusions, config: GedConfig = GedConfig(),
                      diagnostics: Diagnostics | None = None) -> list[EventRecord]:
    t = bi.timeframe
    fwd, bwd = bi.forward, bi.backward
    match = (fwd >= config.alpha) | (bwd >= config.beta)
    n_fwd = match.sum(axis=1)
    n_back = match.sum(axis=0)
    events = []

    if config.alpha > 0 and config.beta > 0:
        pairs = zip(*np.nonzero((fwd > 0) | (bwd > 0)))
    else:
        pairs = np.ndindex(fwd.shape)
    for a, b in pairs:
        g1, g2 = bi.groups_i[a], bi.groups_i1[b]
        i12, i21 = float(fwd[a, b]), float(bwd[a, b])
        label = _classify(len(g1), len(g2), i12, i21, int(n_back[b]), int(n_fwd[a]), config)
        if label is not None:
            events.append(EventRecord(t, g1.id, t + 1, g2.id, label, i12, i21))
        elif diagnostics is not None and max(i12, i21) >= config.absence_threshold:
            diagnostics.unrelated_pairs.append((t, g1.id, g2.id, i12, i21))

    thr = config.absence_threshold
    absent = (fwd < thr) & (bwd < thr)
    for a, g1 in enumerate(bi.groups_i):
        if absent[a].all():
            events.append(EventRecord(t, g1.id, t + 1, None, EventType.DISSOLVING,
                                      _max(fwd[a]), _max(bwd[a])))
    for b, g2 in enumerate(bi.groups_i1):
        if absent[:, b].all():
            events.append(EventRecord(t, None, t + 1, g2.id, EventType.FORMING,
                                      _max(fwd[:, b]), _max(bwd[:, b])))
    events.sort(key=EventRecord.key)
    return events


def _max(v: np.ndarray) -> float:
    return float(v.max()) if v.size else 0.0


def sp_importance(snapshots: Mapping[int, SnapshotGraph] | Sequence[SnapshotGraph],
                  epsilon: float = DEFAULT_EPSILON,
                  diagnostics: Diagnostics | None = None) -> ImportanceProvider:
    """Importance provider computing group-induced social position, memoized per group."""
    cache: dict = {}

    def provider(g: Group) -> Mapping:
        key = (g.timeframe, g.id)
        if key not in cache:
            sp = group_sp(snapshots[g.timeframe], g, epsilon)
            if not sp.converged and diagnostics is not None:
                diagnostics.nonconverged.append((g.timeframe, g.id, sp.residual))
            cache[key] = sp.values
        return cache[key]

    return provider


def classify_timeframe_pair(groups_i: Sequence[Group], groups_i1: Sequence[Group],
                            snapshots, config: GedConfig = GedConfig(),
                            epsilon: float = DEFAULT_EPSILON,
                            importance: ImportanceProvider | None = None,
                            diagnostics: Diagnostics | None = None) -> list[EventRecord]:
    """All GED events between two consecutive timeframes.

    `snapshots` is indexable by timeframe (a `TemporalNetwork`, list or dict).
    By default each group's importance is its social position in the
    group-induced subgraph.
    """
    frames = {g.timeframe for g in groups_i} | {g.timeframe - 1 for g in groups_i1}
    if len(frames) > 1:
        raise ValueError("groups must come from two consecutive timeframes")
    t = frames.pop() if frames else 0
    if importance is None:
        importance = sp_importance(snapshots, epsilon, diagnostics)
    bi = boundary_inclusions(t, groups_i, groups_i1, importance)
    return classify_boundary(bi, config, diagnostics)


# --- evolution chains --------------------------------------------------------

@dataclass(frozen=True)
class EvolutionChain:
    seed_group: str
    seed_timeframe: int
    events: tuple

    def __len__(self):
        return len(self.events)

    def as_dict(self) -> dict:
        return {"seed_group": self.seed_group, "seed_timeframe": self.seed_timeframe,
                "events": [e.as_dict() for e in self.events]}


_TERMINAL = (EventType.FORMING, EventType.DISSOLVING)


def build_chains(events: Iterable[EventRecord]) -> list[EvolutionChain]:
    """Trace every group lifetime through the event list.

    A chain starts at a forming event or at a group with no predecessor and
    follows pairwise events forward.  A split forks into one chain per branch
    (sharing the prefix); a merge target is reached by the chains of all
    merging groups.  Chains stop at a dissolving event or when no event leaves
    the current group.
    """
    events = sorted(events, key=EventRecord.key)
    out_links = defaultdict(list)
    dissolving = defaultdict(list)
    forming = {}
    has_pred = set()
    nodes = set()
    for e in events:
        src = (e.timeframe_from, e.group_from)
        dst = (e.timeframe_to, e.group_to)
        if e.event == EventType.FORMING:
            forming[dst] = e
            nodes.add(dst)
        elif e.event == EventType.DISSOLVING or e.group_to is None:
            dissolving[src].append(e)
            nodes.add(src)
        else:
            out_links[src].append(e)
            has_pred.add(dst)
            nodes.update((src, dst))

    chains = []
    for seed in sorted(n for n in nodes if n not in has_pred):
        prefix = [forming[seed]] if seed in forming else []
        stack = [(seed, prefix)]
        while stack:
            node, path = stack.pop()
            nxt = out_links.get(node)
            if not nxt:
                chains.append(EvolutionChain(seed[1], seed[0], tuple(path + dissolving.get(node, []))))
                continue
            for e in reversed(nxt):
                stack.append(((e.timeframe_to, e.group_to), path + [e]))
    return chains


def count_events(events: Iterable[EventRecord]) -> dict:
    """Per-type counts in summary column order, plus ``total``."""
    counts = {str(t): 0 for t in EVENT_COLUMNS}
    for e in events:
        counts[str(e.event)] = counts.get(str(e.event), 0) + 1
    counts["total"] = sum(counts.values())
    return counts

"""
Temporal social network construction.

An interaction log (sender, recipient, timestamp) is bucketed into a sequence of
possibly overlapping, half-open time windows.  Each window becomes a directed
snapshot whose edge weights are the share of a sender's messages that went to
each recipient.
"""

from __future__ import annotations

import csv
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Hashable, Iterable, Mapping, Sequence

import networkx as nx

Node = Hashable

EITHER = "either-direction"
BOTH = "both-directions"
SYMMETRIZE_MODES = (EITHER, BOTH)


@dataclass(frozen=True, order=True)
class InteractionRecord:
    """One directed interaction, e.g. an email from `sender` to `recipient`."""

    sender: Node
    recipient: Node
    timestamp: datetime


@dataclass(frozen=True)
class WindowConfig:
    """Sliding window layout over ``[horizon_start, horizon_end)``."""

    horizon_start: datetime
    horizon_end: datetime
    window_length: timedelta = timedelta(days=90)
    window_step: timedelta = timedelta(days=45)

    def __post_init__(self):
        object.__setattr__(self, "horizon_start", _as_utc(self.horizon_start))
        object.__setattr__(self, "horizon_end", _as_utc(self.horizon_end))
        if self.window_length <= timedelta(0):
            raise ValueError("window_length must be positive")
        if not timedelta(0) < self.window_step <= self.window_length:
            raise ValueError("window_step must satisfy 0 < step <= window_length")
        if self.horizon_end - self.horizon_start < self.window_length:
            raise ValueError("horizon shorter than window")

    @classmethod
    def from_days(cls, start: datetime, horizon_days: float,
                  length_days: float = 90, step_days: float = 45) -> "WindowConfig":
        start = _as_utc(start)
        return cls(start, start + timedelta(days=horizon_days),
                   timedelta(days=length_days), timedelta(days=step_days))

    @classmethod
    def covering(cls, records: Iterable[InteractionRecord],
                 length_days: float = 90, step_days: float = 45) -> "WindowConfig":
        """Smallest horizon starting at the first record whose last window holds the last record."""
        times = [_as_utc(r.timestamp) for r in records]
        if not times:
            raise ValueError("no interactions")
        start = min(times)
        span = max(times) - start
        length, step = timedelta(days=length_days), timedelta(days=step_days)
        n = 1 if span < length else (span - length) // step + 2
        return cls(start, start + (n - 1) * step + length, length, step)

    @property
    def n_windows(self) -> int:
        span = self.horizon_end - self.horizon_start
        return (span - self.window_length) // self.window_step + 1

    def bounds(self, i: int) -> tuple[datetime, datetime]:
        if not 0 <= i < self.n_windows:
            raise IndexError(i)
        start = self.horizon_start + i * self.window_step
        return start, start + self.window_length

    def windows_containing(self, t: datetime) -> range:
        """Indices of every window whose half-open interval holds `t`."""
        off = t - self.horizon_start
        if off < timedelta(0):
            return range(0)
        hi = min(self.n_windows - 1, off // self.window_step)
        # smallest i with off < i*step + length
        lo = max(0, (off - self.window_length) // self.window_step + 1)
        return range(lo, hi + 1)


@dataclass(frozen=True)
class SnapshotGraph:
    """Directed weighted graph of one timeframe.

    `edges` maps ``(source, target)`` to a weight in (0, 1]; the outgoing
    weights of any node with out-edges sum to one.
    """

    index: int
    nodes: frozenset
    edges: Mapping[tuple, float] = field(default_factory=dict)

    def __post_init__(self):
        for (x, y) in self.edges:
            if x == y:
                raise ValueError(f"self-loop on {x!r}")
            if x not in self.nodes or y not in self.nodes:
                raise ValueError(f"edge ({x!r}, {y!r}) has an endpoint outside the node set")

    def out_weights(self) -> dict:
        """Adjacency view ``{source: {target: weight}}``."""
        out: dict = defaultdict(dict)
        for (x, y), w in self.edges.items():
            out[x][y] = w
        return dict(out)

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(sorted(self.nodes))
        g.add_weighted_edges_from((x, y, w) for (x, y), w in self.edges.items())
        return g


@dataclass(frozen=True)
class TemporalNetwork:
    config: WindowConfig
    snapshots: tuple

    def __post_init__(self):
        for i, s in enumerate(self.snapshots):
            if s.index != i:
                raise ValueError("snapshots must be indexed contiguously from 0")

    def __len__(self):
        return len(self.snapshots)

    def __getitem__(self, i) -> SnapshotGraph:
        return self.snapshots[i]

    def __iter__(self):
        return iter(self.snapshots)


def edge_weight(x: Node, y: Node, window_records: Iterable[InteractionRecord]) -> float:
    """Fraction of the messages `x` sent in the window that went to `y`."""
    sent = to_y = 0
    for r in window_records:
        if r.sender == x and r.recipient != x:
            sent += 1
            to_y += r.recipient == y
    if sent == 0:
        raise ValueError(f"{x!r} sent nothing in this window")
    return to_y / sent


def snapshot_from_records(index: int, records: Iterable[InteractionRecord]) -> SnapshotGraph:
    pair_counts: Counter = Counter()
    for r in records:
        if r.sender != r.recipient:
            pair_counts[r.sender, r.recipient] += 1
    sent: Counter = Counter()
    for (x, _), c in pair_counts.items():
        sent[x] += c
    nodes = frozenset(n for pair in pair_counts for n in pair)
    edges = {pair: pair_counts[pair] / sent[pair[0]] for pair in sorted(pair_counts)}
    return SnapshotGraph(index, nodes, edges)


def build_timeframes(records: Sequence[InteractionRecord], config: WindowConfig) -> TemporalNetwork:
    """Bucket `records` into the windows of `config` and build one snapshot per window.

    Self-loops are dropped and records outside every window are ignored.
    The result does not depend on the order of `records`.
    """
    records = [r for r in records if r.sender != r.recipient]
    if not records:
        raise ValueError("no interactions")
    buckets: list[list[InteractionRecord]] = [[] for _ in range(config.n_windows)]
    for r in records:
        for i in config.windows_containing(_as_utc(r.timestamp)):
            buckets[i].append(r)
    snapshots = tuple(snapshot_from_records(i, b) for i, b in enumerate(buckets))
    return TemporalNetwork(config, snapshots)


def symmetrize(g: SnapshotGraph, mode: str = EITHER) -> nx.Graph:
    """Undirected, unweighted view of a snapshot.

    ``either-direction`` keeps {x, y} when at least one of (x, y), (y, x) is
    present; ``both-directions`` requires both.
    """
    if mode not in SYMMETRIZE_MODES:
        raise ValueError(f"unknown symmetrize mode {mode!r}")
    u = nx.Graph()
    u.add_nodes_from(sorted(g.nodes))
    for (x, y) in g.edges:
        if mode == EITHER or (y, x) in g.edges:
            u.add_edge(x, y)
    return u


# --- CSV ingestion -----------------------------------------------------------

def _as_utc(t: datetime) -> datetime:
    if t.tzinfo is None:
        return t.replace(tzinfo=timezone.utc)
    return t.astimezone(timezone.utc)


def parse_timestamp(s: str) -> datetime:
    s = s.strip()
    if s.endswith(("Z", "z")):
        s = s[:-1] + "+00:00"
    return _as_utc(datetime.fromisoformat(s))


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def read_interactions(path) -> list[InteractionRecord]:
    """Read a ``sender,recipient,timestamp`` CSV.

    Timestamps are either all epoch seconds or all ISO-8601 within one file;
    the format is detected from the first data row.
    """
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        missing = {"sender", "recipient", "timestamp"} - set(reader.fieldnames or ())
        if missing:
            raise ValueError(f"{path}: missing column(s) {sorted(missing)}")
        rows = list(reader)
    if not rows:
        return []
    epoch = _is_number(rows[0]["timestamp"])
    out = []
    for lineno, row in enumerate(rows, start=2):
        ts = row["timestamp"]
        try:
            if epoch:
                t = datetime.fromtimestamp(float(ts), tz=timezone.utc)
            else:
                t = parse_timestamp(ts)
        except (ValueError, OverflowError) as exc:
            raise ValueError(f"{path}:{lineno}: bad timestamp {ts!r} "
                             f"(file uses {'epoch' if epoch else 'ISO-8601'})") from exc
        out.append(InteractionRecord(row["sender"], row["recipient"], t))
    return out


def write_interactions(records: Iterable[InteractionRecord], path, epoch: bool = True) -> Path:
    path = Path(path)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["sender", "recipient", "timestamp"])
        for r in records:
            t = _as_utc(r.timestamp)
            w.writerow([r.sender, r.recipient,
                        int(t.timestamp()) if epoch else t.isoformat()])
    return path
